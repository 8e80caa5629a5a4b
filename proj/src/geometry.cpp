#include "ffdist/geometry.hpp"

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

Rational inverse_power(std::uint64_t q, unsigned e) {
  Integer den = 1;
  for (unsigned i = 0; i < e; ++i) den *= static_cast<unsigned long>(q);
  return Rational(Integer(1), den);
}

std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

unsigned zero_count(std::span<const std::uint32_t> x) {
  unsigned z = 0;
  for (auto c : x) z += c == 0;
  return z;
}

FieldElement quadratic_norm(const Field& f, std::span<const std::uint32_t> x) {
  FieldElement acc{0};
  for (auto c : x) acc = f.add(acc, f.square({c}));
  return acc;
}

FieldElement k_norm_digits(const Field& f, std::span<const std::uint32_t> x, unsigned k) {
  return zero_count(x) <= k - 1 ? quadratic_norm(f, x) : FieldElement{0};
}

// Zero-set mask of a digit vector.
std::uint32_t zero_mask(std::span<const std::uint32_t> x) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) mask |= 1u << i;
  }
  return mask;
}

// s = 0 branch: sum over |I| = size of (q-1)^{Z(m_I)} (-1)^{|I| - Z(m_I)},
// with Z(m_I) counting zeros of m inside I (0 for I empty).
std::int64_t zero_frequency_sum(unsigned d, std::uint32_t mzeros, unsigned size, std::int64_t q) {
  std::int64_t total = 0;
  for (const auto& subset : subsets_of_size(d, size)) {
    const unsigned z = static_cast<unsigned>(std::popcount(subset.mask & mzeros));
    const std::int64_t sign = (size - z) % 2 == 0 ? 1 : -1;
    total += sign * ipow(q - 1, z);
  }
  return total;
}

// Per-field closed-form ingredients: factor[s][u] = eta(s) G_1 chi(-u^2/4s) - 1.
class ClosedForm {
 public:
  ClosedForm(const CharacterTable& chars, const Space& space)
      : chars_(chars), space_(space), q_(space.field().q()) {
    const Field& f = space.field();
    const unsigned p = chars.p();
    const FieldElement four = f.from_int(4);
    const Cyclotomic one = Cyclotomic::from_rational(p, 1);
    factor_.reserve(std::size_t{q_} * q_);
    for (std::uint32_t s = 0; s < q_; ++s) {
      const Cyclotomic eta_g = chars.gauss1() * Rational(f.quad_char({s}));
      for (std::uint32_t u = 0; u < q_; ++u) {
        if (s == 0) {
          factor_.emplace_back(p);
          continue;
        }
        const FieldElement arg = f.neg(f.div(f.square({u}), f.mul(four, {s})));
        factor_.push_back(eta_g.times_root(chars.exponent(arg)) - one);
      }
    }
  }

  const Cyclotomic& factor(std::uint32_t s, std::uint32_t u) const {
    return factor_[std::size_t{s} * q_ + u];
  }

  // prod[mask] = product over i in mask of factor(s, m_i), for all 2^d masks.
  void subset_products(std::uint32_t s, std::span<const std::uint32_t> m,
                       std::vector<Cyclotomic>& prod) const {
    const unsigned d = space_.dim();
    prod.assign(std::size_t{1} << d, Cyclotomic(chars_.p()));
    prod[0] = Cyclotomic::from_rational(chars_.p(), 1);
    for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
      const unsigned low = static_cast<unsigned>(std::countr_zero(mask));
      prod[mask] = prod[mask & (mask - 1)] * factor(s, m[low]);
    }
  }

  // sum over s != 0 of chi(-st) P(m, s) for every t, where P sums the subset
  // products over |I| >= d - k + 1. Result indexed by t.
  std::vector<Cyclotomic> a_terms(std::span<const std::uint32_t> m, unsigned k) const {
    const Field& f = space_.field();
    const unsigned d = space_.dim();
    const unsigned p = chars_.p();
    std::vector<Cyclotomic> out(q_, Cyclotomic(p));
    std::vector<Cyclotomic> prod;
    for (std::uint32_t s = 1; s < q_; ++s) {
      subset_products(s, m, prod);
      Cyclotomic inner(p);
      for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
        if (static_cast<unsigned>(std::popcount(mask)) + k >= d + 1) inner += prod[mask];
      }
      for (std::uint32_t t = 1; t < q_; ++t) {
        const unsigned e = f.trace_of_product({s}, {t});
        out[t] += inner.times_root(-static_cast<std::int64_t>(e));
      }
    }
    return out;
  }

 private:
  const CharacterTable& chars_;
  const Space& space_;
  std::uint32_t q_;
  std::vector<Cyclotomic> factor_;
};

std::vector<std::uint32_t> digits_of(const Space& space, const Point& x) {
  space.check_point(x);
  std::vector<std::uint32_t> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].index;
  return out;
}

std::int64_t b_term_digits(unsigned d, std::span<const std::uint32_t> m, unsigned k, std::int64_t q) {
  std::int64_t total = 0;
  const std::uint32_t mz = zero_mask(m);
  for (unsigned alpha = 0; alpha < k; ++alpha) total += zero_frequency_sum(d, mz, d - alpha, q);
  return total;
}

// Brute transforms of every sphere S_k^t at once: hist[m][t][e] counts
// x with ||x||_k = t and -Tr(m.x) = e.
std::vector<FourierTable> brute_all_radii(const CharacterTable& chars, const Space& space,
                                          unsigned k) {
  const Field& f = space.field();
  const unsigned p = chars.p();
  const unsigned d = space.dim();
  const std::uint32_t q = f.q();
  const std::uint64_t n = space.size();
  std::vector<std::uint32_t> radius(n);
  std::vector<std::uint32_t> x(d), m(d);
  for (std::uint64_t xi = 0; xi < n; ++xi) {
    space.decode(xi, x);
    radius[xi] = k_norm_digits(f, x, k).index;
  }
  const Rational norm = inverse_power(q, d);
  std::vector<FourierTable> out(q, FourierTable{space, {}});
  for (auto& table : out) table.values.reserve(n);
  std::vector<std::int64_t> hist(std::size_t{q} * p);
  for (std::uint64_t mi = 0; mi < n; ++mi) {
    space.decode(mi, m);
    std::fill(hist.begin(), hist.end(), 0);
    for (std::uint64_t xi = 0; xi < n; ++xi) {
      space.decode(xi, x);
      unsigned e = 0;
      for (unsigned i = 0; i < d; ++i) e += f.trace_of_product({x[i]}, {m[i]});
      hist[std::size_t{radius[xi]} * p + (p - e % p) % p] += 1;
    }
    for (std::uint32_t t = 0; t < q; ++t) {
      out[t].values.push_back(Cyclotomic::from_exponent_counts(
          p, std::span<const std::int64_t>(&hist[std::size_t{t} * p], p), norm));
    }
  }
  return out;
}

}  // namespace

unsigned IndexSubset::size() const noexcept { return static_cast<unsigned>(std::popcount(mask)); }

std::vector<unsigned> IndexSubset::members() const {
  std::vector<unsigned> out;
  for (unsigned i = 0; i < d; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::vector<IndexSubset> subsets_of_size(unsigned d, unsigned r) {
  if (d > 31) throw InvalidArgument("subsets: dimension too large");
  std::vector<IndexSubset> out;
  if (r > d) return out;
  std::vector<unsigned> pick(r);
  for (unsigned i = 0; i < r; ++i) pick[i] = i;
  while (true) {
    std::uint32_t mask = 0;
    for (auto i : pick) mask |= 1u << i;
    out.push_back({d, mask});
    int i = static_cast<int>(r) - 1;
    while (i >= 0 && pick[i] == d - r + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

std::vector<IndexSubset> all_subsets(unsigned d) {
  std::vector<IndexSubset> out;
  for (unsigned r = 0; r <= d; ++r) {
    auto layer = subsets_of_size(d, r);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

FieldElement k_norm(const Space& space, const Point& x, unsigned k) {
  require_k(space, k);
  return k_norm_digits(space.field(), digits_of(space, x), k);
}

PointSet stratum(const Space& space, unsigned alpha) {
  if (alpha > space.dim()) throw InvalidArgument("stratum: alpha outside [0, d]");
  std::vector<std::uint64_t> idx;
  std::vector<std::uint32_t> x(space.dim());
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    space.decode(i, x);
    if (zero_count(x) == alpha) idx.push_back(i);
  }
  return PointSet(space, std::move(idx));
}

PointSet slice(const Space& space, IndexSubset subset) {
  if (subset.d != space.dim() || (subset.d < 32 && (subset.mask >> subset.d) != 0)) {
    throw InvalidArgument("slice: subset is not inside [d]");
  }
  const std::uint32_t zeros = ~subset.mask & ((1u << space.dim()) - 1);
  std::vector<std::uint64_t> idx;
  std::vector<std::uint32_t> x(space.dim());
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    space.decode(i, x);
    if (zero_mask(x) == zeros) idx.push_back(i);
  }
  return PointSet(space, std::move(idx));
}

PointSet sphere_points(const Space& space, SphereSpec spec) {
  require_k(space, spec.k);
  if (spec.t.index >= space.field().q()) throw InvalidArgument("sphere: radius out of range");
  std::vector<std::uint64_t> idx;
  std::vector<std::uint32_t> x(space.dim());
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    space.decode(i, x);
    if (k_norm_digits(space.field(), x, spec.k) == spec.t) idx.push_back(i);
  }
  return PointSet(space, std::move(idx));
}

Cyclotomic stratum_character_sum(const CharacterTable& chars, const Space& space, unsigned alpha,
                       FieldElement s, const Point& m) {
  const unsigned d = space.dim();
  if (alpha > d) throw InvalidArgument("stratum_character_sum: alpha outside [0, d]");
  const auto md = digits_of(space, m);
  const unsigned p = chars.p();
  const std::int64_t q = space.field().q();
  if (s.index == 0) {
    return Cyclotomic::from_rational(p, Rational(static_cast<long>(
                                            zero_frequency_sum(d, zero_mask(md), d - alpha, q))));
  }
  ClosedForm cf(chars, space);
  Cyclotomic total(p);
  for (const auto& subset : subsets_of_size(d, d - alpha)) {
    Cyclotomic prod = Cyclotomic::from_rational(p, 1);
    for (auto i : subset.members()) prod *= cf.factor(s.index, md[i]);
    total += prod;
  }
  return total;
}

Cyclotomic a_term(const CharacterTable& chars, const Space& space, const Point& m,
                  FieldElement t, unsigned k) {
  require_k(space, k);
  if (t.index == 0) throw InvalidArgument("a_term: radius t must be nonzero");
  ClosedForm cf(chars, space);
  return cf.a_terms(digits_of(space, m), k)[t.index];
}

std::vector<Cyclotomic> a_term_table(const CharacterTable& chars, const Space& space,
                                     FieldElement t, unsigned k) {
  require_k(space, k);
  if (t.index == 0) throw InvalidArgument("a_term: radius t must be nonzero");
  ClosedForm cf(chars, space);
  std::vector<Cyclotomic> out;
  out.reserve(space.size());
  std::vector<std::uint32_t> m(space.dim());
  for (std::uint64_t mi = 0; mi < space.size(); ++mi) {
    space.decode(mi, m);
    out.push_back(cf.a_terms(m, k)[t.index]);
  }
  return out;
}

std::int64_t b_term(const Space& space, const Point& m, unsigned k) {
  require_k(space, k);
  return b_term_digits(space.dim(), digits_of(space, m), k, space.field().q());
}

AExpansion a_term_expanded(const CharacterTable& chars, const Space& space, const Point& m,
                           FieldElement t, unsigned k) {
  require_k(space, k);
  if (t.index == 0) throw InvalidArgument("a_term_expanded: radius t must be nonzero");
  const Field& f = space.field();
  const unsigned p = chars.p();
  const unsigned d = space.dim();
  const auto md = digits_of(space, m);
  const FieldElement four = f.from_int(4);
  const double root_q = std::sqrt(static_cast<double>(f.q()));

  // Inner sums depend only on J.
  std::vector<Cyclotomic> inner(std::size_t{1} << d, Cyclotomic(p));
  std::vector<Cyclotomic> g_pow(d + 1, Cyclotomic::from_rational(p, 1));
  for (unsigned j = 1; j <= d; ++j) g_pow[j] = g_pow[j - 1] * chars.gauss1();
  for (std::uint32_t jm = 0; jm < (1u << d); ++jm) {
    FieldElement norm_j{0};
    for (unsigned i = 0; i < d; ++i) {
      if ((jm >> i) & 1u) norm_j = f.add(norm_j, f.square({md[i]}));
    }
    const unsigned size = static_cast<unsigned>(std::popcount(jm));
    std::vector<std::int64_t> counts(p, 0);
    for (std::uint32_t s = 1; s < f.q(); ++s) {
      const FieldElement se{s};
      const FieldElement arg =
          f.sub(f.neg(f.mul(se, t)), f.div(norm_j, f.mul(four, se)));
      const int sign = size % 2 == 0 ? 1 : f.quad_char(se);
      counts[chars.exponent(arg)] += sign;
    }
    inner[jm] = Cyclotomic::from_exponent_counts(p, counts);
  }

  AExpansion out{Cyclotomic(p)};
  for (unsigned alpha = 0; alpha < k; ++alpha) {
    for (const auto& subset : subsets_of_size(d, d - alpha)) {
      // Every J inside I, via submask enumeration.
      std::uint32_t jm = subset.mask;
      while (true) {
        const unsigned size = static_cast<unsigned>(std::popcount(jm));
        const unsigned beta = subset.size() - size;
        Cyclotomic term = g_pow[size] * inner[jm];
        out.value += beta % 2 == 0 ? term : -term;
        const double mag = std::abs(inner[jm].to_complex());
        out.majorant += std::pow(root_q, size) * mag;
        out.worst_inner = std::max(out.worst_inner, mag);
        ++out.terms;
        if (jm == 0) break;
        jm = (jm - 1) & subset.mask;
      }
    }
  }
  return out;
}

Cyclotomic sphere_ft(const CharacterTable& chars, const Space& space, const Point& m,
                     SphereSpec spec, FtMode mode) {
  require_k(space, spec.k);
  const auto md = digits_of(space, m);
  const Field& f = space.field();
  const unsigned p = chars.p();
  const unsigned d = space.dim();
  if (mode == FtMode::closed) {
    if (spec.t.index == 0) throw InvalidArgument("sphere_ft: closed form requires t != 0");
    ClosedForm cf(chars, space);
    Cyclotomic a = cf.a_terms(md, spec.k)[spec.t.index];
    a += Cyclotomic::from_rational(p, Rational(static_cast<long>(b_term_digits(d, md, spec.k, f.q()))));
    return a * inverse_power(f.q(), d + 1);
  }
  std::vector<std::int64_t> counts(p, 0);
  std::vector<std::uint32_t> x(d);
  for (std::uint64_t xi = 0; xi < space.size(); ++xi) {
    space.decode(xi, x);
    if (k_norm_digits(f, x, spec.k) != spec.t) continue;
    unsigned e = 0;
    for (unsigned i = 0; i < d; ++i) e += f.trace_of_product({x[i]}, {md[i]});
    counts[(p - e % p) % p] += 1;
  }
  return Cyclotomic::from_exponent_counts(p, counts, inverse_power(f.q(), d));
}

std::vector<FourierTable> sphere_ft_all_radii(const CharacterTable& chars, const Space& space,
                                              unsigned k, FtMode mode) {
  require_k(space, k);
  std::vector<FourierTable> out = brute_all_radii(chars, space, k);
  if (mode == FtMode::brute) return out;
  const Field& f = space.field();
  const unsigned d = space.dim();
  const unsigned p = chars.p();
  const Rational norm = inverse_power(f.q(), d + 1);
  ClosedForm cf(chars, space);
  std::vector<std::uint32_t> m(d);
  for (std::uint64_t mi = 0; mi < space.size(); ++mi) {
    space.decode(mi, m);
    const auto a = cf.a_terms(m, k);
    const Cyclotomic b =
        Cyclotomic::from_rational(p, Rational(static_cast<long>(b_term_digits(d, m, k, f.q()))));
    for (std::uint32_t t = 1; t < f.q(); ++t) out[t].values[mi] = (a[t] + b) * norm;
  }
  return out;
}

FourierTable sphere_ft_table(const CharacterTable& chars, const Space& space, SphereSpec spec,
                             FtMode mode) {
  require_k(space, spec.k);
  if (mode == FtMode::closed && spec.t.index == 0) {
    throw InvalidArgument("sphere_ft: closed form requires t != 0");
  }
  if (mode == FtMode::brute) {
    return FourierTable{space, dft_indicator(chars, sphere_points(space, spec)).values};
  }
  const Field& f = space.field();
  const unsigned d = space.dim();
  const unsigned p = chars.p();
  const Rational norm = inverse_power(f.q(), d + 1);
  ClosedForm cf(chars, space);
  FourierTable out{space, {}};
  out.values.reserve(space.size());
  std::vector<std::uint32_t> m(d);
  for (std::uint64_t mi = 0; mi < space.size(); ++mi) {
    space.decode(mi, m);
    Cyclotomic v = cf.a_terms(m, spec.k)[spec.t.index];
    v += Cyclotomic::from_rational(p, Rational(static_cast<long>(b_term_digits(d, m, spec.k, f.q()))));
    out.values.push_back(v * norm);
  }
  return out;
}

}  // namespace ffdist
