#include "ffdist/distance.hpp"

#include <bit>
#include <cmath>

#include "ffdist/error.hpp"

namespace ffdist {

namespace {

void require_k(const Space& space, unsigned k) {
  if (k < 1 || k > space.dim()) {
    throw InvalidArgument("k = " + std::to_string(k) + " outside [1, " + std::to_string(space.dim()) + "]");
  }
}

Rational power(std::uint64_t q, int e) {
  Integer v = 1;
  for (int i = 0; i < std::abs(e); ++i) v *= static_cast<unsigned long>(q);
  return e >= 0 ? Rational(v) : Rational(Integer(1), v);
}

Rational as_rational(std::uint64_t n) { return Rational(static_cast<unsigned long>(n)); }

// Digit vectors of every member.
std::vector<std::vector<std::uint32_t>> member_digits(const PointSet& set) {
  const Space& space = set.space();
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(set.size());
  for (auto i : set.indices()) {
    std::vector<std::uint32_t> x(space.dim());
    space.decode(i, x);
    out.push_back(std::move(x));
  }
  return out;
}

// ||x - y||_k as an element index.
std::uint32_t pair_radius(const Field& f, const std::vector<std::uint32_t>& x,
                          const std::vector<std::uint32_t>& y, unsigned k) {
  FieldElement norm{0};
  unsigned zeros = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const FieldElement diff = f.sub({x[i]}, {y[i]});
    zeros += diff.index == 0;
    norm = f.add(norm, f.square(diff));
  }
  return zeros + 1 <= k ? norm.index : 0;
}

std::uint32_t zero_mask(std::span<const std::uint32_t> x) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) mask |= 1u << i;
  }
  return mask;
}

std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

Rational spectral_sum(const FunctionTable& energy, const FourierTable& sphere, std::uint64_t q,
                      unsigned d) {
  Cyclotomic acc(energy.front().prime());
  for (std::size_t m = 0; m < energy.size(); ++m) {
    if (energy[m].is_zero() || sphere.values[m].is_zero()) continue;
    acc += sphere.values[m] * energy[m];
  }
  return acc.rational_value() * power(q, 2 * static_cast<int>(d));
}

}  // namespace

std::vector<FieldElement> distance_set(const PointSet& set, unsigned k) {
  require_k(set.space(), k);
  if (set.empty()) throw InvalidArgument("distance_set: E is empty");
  const Field& f = set.space().field();
  const auto xs = member_digits(set);
  std::vector<bool> hit(f.q(), false);
  for (const auto& x : xs) {
    for (const auto& y : xs) hit[pair_radius(f, x, y, k)] = true;
  }
  std::vector<FieldElement> out;
  for (std::uint32_t t = 0; t < f.q(); ++t) {
    if (hit[t]) out.push_back({t});
  }
  return out;
}

std::vector<std::uint64_t> nu_direct_all(const PointSet& set, unsigned k) {
  require_k(set.space(), k);
  const Field& f = set.space().field();
  const auto xs = member_digits(set);
  std::vector<std::uint64_t> counts(f.q(), 0);
  for (const auto& x : xs) {
    for (const auto& y : xs) ++counts[pair_radius(f, x, y, k)];
  }
  return counts;
}

std::uint64_t nu_direct(const PointSet& set, FieldElement t, unsigned k) {
  return nu_direct_all(set, k).at(t.index);
}

Rational nu_spectral(const CharacterTable& chars, const PointSet& set, FieldElement t, unsigned k) {
  const Space& space = set.space();
  require_k(space, k);
  const FtMode mode = t.index == 0 ? FtMode::brute : FtMode::closed;
  const auto sphere = sphere_ft_table(chars, space, {k, t}, mode);
  return spectral_sum(spectral_energy(chars, set), sphere, space.field().q(), space.dim());
}

NuReport nu(const CharacterTable& chars, const PointSet& set, FieldElement t, unsigned k) {
  NuReport r{t, nu_direct(set, t, k), nu_spectral(chars, set, t, k), false};
  r.equal = r.spectral == as_rational(r.direct);
  return r;
}

std::vector<NuReport> nu_spectrum(const CharacterTable& chars, const PointSet& set, unsigned k,
                                  const std::vector<FourierTable>* radii) {
  const Space& space = set.space();
  require_k(space, k);
  std::vector<FourierTable> own;
  if (radii == nullptr) {
    own = sphere_ft_all_radii(chars, space, k, FtMode::closed);
    radii = &own;
  }
  const auto energy = spectral_energy(chars, set);
  const auto direct = nu_direct_all(set, k);
  std::vector<NuReport> out;
  for (std::uint32_t t = 0; t < space.field().q(); ++t) {
    NuReport r{{t}, direct[t], spectral_sum(energy, (*radii)[t], space.field().q(), space.dim()), false};
    r.equal = r.spectral == as_rational(r.direct);
    out.push_back(std::move(r));
  }
  return out;
}

Rational nu_from_decomposition(const CharacterTable& chars, const PointSet& set, FieldElement t,
                               unsigned k) {
  const Space& space = set.space();
  const auto a = a_term_table(chars, space, t, k);
  const auto energy = spectral_energy(chars, set);
  Cyclotomic acc(chars.p());
  for (std::uint64_t mi = 0; mi < space.size(); ++mi) {
    Cyclotomic ab = a[mi];
    ab += Cyclotomic::from_rational(chars.p(),
                                    Rational(static_cast<long>(b_term(space, space.point(mi), k))));
    acc += energy[mi] * ab;
  }
  return acc.rational_value() * power(space.field().q(), static_cast<int>(space.dim()) - 1);
}

BoundReport bounds(const CharacterTable& chars, const PointSet& set, FieldElement t, unsigned k) {
  const Space& space = set.space();
  require_k(space, k);
  if (t.index == 0) throw InvalidArgument("bounds: radius t must be nonzero");
  const unsigned d = space.dim();
  const std::uint64_t q = space.field().q();
  const unsigned p = chars.p();
  const Rational size = as_rational(set.size());

  BoundReport r{.t = t, .size = set.size(), .a_sum = Cyclotomic(p)};
  const auto energy = spectral_energy(chars, set);
  const auto a = a_term_table(chars, space, t, k);

  for (std::uint64_t mi = 0; mi < space.size(); ++mi) {
    r.a_pointwise_max = std::max(r.a_pointwise_max, std::abs(a[mi].to_complex()));
    if (!energy[mi].is_zero()) r.a_sum += energy[mi] * a[mi];
  }
  const double three_d = std::pow(3.0, d);
  r.a_sum_abs = std::abs(r.a_sum.to_complex());
  r.a_bound = 2.0 * three_d * std::pow(double(q), -(double(d) - 1.0) / 2.0) * double(set.size());
  r.a_within_bound = r.a_sum_abs <= r.a_bound * (1.0 + 1e-6);
  r.a_pointwise_bound = 2.0 * three_d * std::pow(double(q), (double(d) + 1.0) / 2.0);

  // B(m) depends on m only through its zero set, and each zero-set class is
  // closed under F_p^* scaling, so its energy total is rational.
  std::vector<Cyclotomic> by_zeros(std::size_t{1} << d, Cyclotomic(p));
  std::vector<std::uint32_t> m(d);
  for (std::uint64_t mi = 0; mi < space.size(); ++mi) {
    space.decode(mi, m);
    by_zeros[zero_mask(m)] += energy[mi];
  }
  std::vector<Rational> weight(by_zeros.size());
  for (std::size_t j = 0; j < by_zeros.size(); ++j) weight[j] = by_zeros[j].rational_value();

  const std::uint32_t full = (1u << d) - 1;
  const auto qm1 = static_cast<std::int64_t>(q) - 1;
  for (std::uint32_t zm = 0; zm <= full; ++zm) {
    const unsigned w = static_cast<unsigned>(std::popcount(zm));
    const Rational& wt = weight[zm];
    for (std::uint32_t im = 0; im <= full; ++im) {
      const unsigned isize = static_cast<unsigned>(std::popcount(im));
      const unsigned alpha = d - isize;
      const unsigned beta = static_cast<unsigned>(std::popcount(im & zm));
      const unsigned rr = isize - beta;
      const Rational term = wt * Rational(static_cast<long>((rr % 2 == 0 ? 1 : -1) * ipow(qm1, beta)));
      if (alpha < k) r.b_sum += term;
      else r.b_aux -= term;
      r.b_main += term;
      if (w == d) {
        r.b_m3 += term;
      } else if (beta < w) {
        r.b_m1 += term;
        r.b_m1_majorant += wt * Rational(static_cast<long>(ipow(qm1, beta)));
      } else {
        r.b_m2 += term;
      }
    }
    if (w < d) {
      // (q-1)^w sum_r sum_{T in [d]\J, |T| = r} (-1)^r, enumerating T.
      const std::uint32_t rest = full & ~zm;
      std::int64_t kernel = 0;
      std::uint32_t tm = rest;
      while (true) {
        kernel += std::popcount(tm) % 2 == 0 ? 1 : -1;
        if (tm == 0) break;
        tm = (tm - 1) & rest;
      }
      r.b_m2_binomial += wt * Rational(static_cast<long>(ipow(qm1, w) * kernel));
    }
  }
  r.b_aux_abs = abs(r.b_aux);
  r.b_m1_abs = abs(r.b_m1);
  r.reassembled = r.b_sum == r.b_main + r.b_aux && r.b_main == r.b_m1 + r.b_m2 + r.b_m3;

  r.aux_reference = power(q, -static_cast<int>(k)) * size;
  r.m1_reference = power(q, -static_cast<int>(d) - 1) * size * size;
  r.m3_reference = power(q, -static_cast<int>(d)) * size * size;
  r.lower_reference = r.m3_reference - r.aux_reference;
  if (sgn(r.lower_reference) > 0) r.lower_ratio = Rational(r.b_sum / r.lower_reference).get_d();

  r.nu_direct = nu_direct(set, t, k);
  Cyclotomic total = r.a_sum + Cyclotomic::from_rational(p, r.b_sum);
  r.nu_decomposed = total.rational_value() * power(q, static_cast<int>(d) - 1);
  r.nu_equal = r.nu_decomposed == as_rational(r.nu_direct);
  return r;
}

std::int64_t alternating_binomial_sum(unsigned n) {
  std::vector<std::int64_t> row{1};
  for (unsigned i = 0; i < n; ++i) {
    std::vector<std::int64_t> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  std::int64_t total = 0;
  for (std::size_t r = 0; r < row.size(); ++r) total += (r % 2 == 0 ? 1 : -1) * row[r];
  return total;
}

PointSet sharpness_example(const Space& space, unsigned k) {
  require_k(space, k);
  const unsigned d = space.dim();
  std::vector<std::uint64_t> idx;
  std::vector<std::uint32_t> x(d);
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    space.decode(i, x);
    bool tail_zero = true;
    for (unsigned j = d - k; j < d; ++j) tail_zero = tail_zero && x[j] == 0;
    if (tail_zero) idx.push_back(i);
  }
  return PointSet(space, std::move(idx));
}

}  // namespace ffdist
