#include "ffdist/fourier.hpp"

#include <algorithm>

#include "ffdist/error.hpp"

namespace ffdist {

namespace {

Rational inverse_power(std::uint64_t q, unsigned e) {
  Integer den = 1;
  for (unsigned i = 0; i < e; ++i) den *= static_cast<unsigned long>(q);
  return Rational(Integer(1), den);
}

// Exponent of chi(x.m) for point digit vectors.
unsigned dot_exponent(const Field& f, std::span<const std::uint32_t> x,
                      std::span<const std::uint32_t> m) {
  unsigned e = 0;
  for (std::size_t i = 0; i < x.size(); ++i) e += f.trace_of_product({x[i]}, {m[i]});
  return e % f.p();
}

}  // namespace

PointSet::PointSet(Space space, std::vector<std::uint64_t> indices)
    : space_(std::move(space)), indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InvalidArgument("point set: duplicate members");
  }
  if (!indices_.empty() && indices_.back() >= space_.size()) {
    throw InvalidArgument("point set: member outside F_q^d");
  }
}

PointSet PointSet::from_points(const Space& space, const std::vector<Point>& points) {
  std::vector<std::uint64_t> idx;
  idx.reserve(points.size());
  for (const auto& x : points) idx.push_back(space.index(x));
  return PointSet(space, std::move(idx));
}

PointSet PointSet::full(const Space& space) {
  std::vector<std::uint64_t> idx(space.size());
  for (std::uint64_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return PointSet(space, std::move(idx));
}

bool PointSet::contains(std::uint64_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

std::vector<Point> PointSet::points() const {
  std::vector<Point> out;
  out.reserve(indices_.size());
  for (auto i : indices_) out.push_back(space_.point(i));
  return out;
}

FourierTable dft(const CharacterTable& chars, const Space& space, const FunctionTable& f) {
  if (f.size() != space.size()) throw InvalidArgument("dft: function must cover all of F_q^d");
  const Field& field = space.field();
  const unsigned p = chars.p();
  const unsigned d = space.dim();
  const Rational norm = inverse_power(field.q(), d);
  std::vector<std::uint32_t> x(d), m(d);
  FourierTable out{space, FunctionTable(space.size(), Cyclotomic(p))};
  for (std::uint64_t mi = 0; mi < space.size(); ++mi) {
    space.decode(mi, m);
    Cyclotomic acc(p);
    for (std::uint64_t xi = 0; xi < space.size(); ++xi) {
      if (f[xi].is_zero()) continue;
      space.decode(xi, x);
      acc += f[xi].times_root(-static_cast<std::int64_t>(dot_exponent(field, x, m)));
    }
    acc *= norm;
    out.values[mi] = std::move(acc);
  }
  return out;
}

FunctionTable inverse_dft(const CharacterTable& chars, const FourierTable& table) {
  const Space& space = table.space;
  if (table.values.size() != space.size()) {
    throw InvalidArgument("inverse_dft: table does not cover every frequency");
  }
  const Field& field = space.field();
  const unsigned p = chars.p();
  const unsigned d = space.dim();
  std::vector<std::uint32_t> x(d), m(d);
  FunctionTable out(space.size(), Cyclotomic(p));
  for (std::uint64_t xi = 0; xi < space.size(); ++xi) {
    space.decode(xi, x);
    Cyclotomic acc(p);
    for (std::uint64_t mi = 0; mi < space.size(); ++mi) {
      if (table.values[mi].is_zero()) continue;
      space.decode(mi, m);
      acc += table.values[mi].times_root(dot_exponent(field, x, m));
    }
    out[xi] = std::move(acc);
  }
  return out;
}

FunctionTable indicator(const PointSet& set) {
  const unsigned p = set.space().field().p();
  FunctionTable f(set.space().size(), Cyclotomic(p));
  for (auto i : set.indices()) f[i] = Cyclotomic::from_rational(p, 1);
  return f;
}

namespace {

// Histogram h_m[e] = #{x in E : -Tr(x.m) = e} for every m, flattened.
std::vector<std::int64_t> exponent_histograms(const PointSet& set) {
  const Space& space = set.space();
  const Field& field = space.field();
  const unsigned p = field.p();
  const unsigned d = space.dim();
  std::vector<std::vector<std::uint32_t>> members;
  members.reserve(set.size());
  for (auto i : set.indices()) {
    std::vector<std::uint32_t> x(d);
    space.decode(i, x);
    members.push_back(std::move(x));
  }
  std::vector<std::int64_t> hist(space.size() * p, 0);
  std::vector<std::uint32_t> m(d);
  for (std::uint64_t mi = 0; mi < space.size(); ++mi) {
    space.decode(mi, m);
    std::int64_t* h = &hist[mi * p];
    for (const auto& x : members) h[(p - dot_exponent(field, x, m)) % p] += 1;
  }
  return hist;
}

}  // namespace

FourierTable dft_indicator(const CharacterTable& chars, const PointSet& set) {
  const Space& space = set.space();
  const unsigned p = chars.p();
  const Rational norm = inverse_power(space.field().q(), space.dim());
  const auto hist = exponent_histograms(set);
  FourierTable out{space, {}};
  out.values.reserve(space.size());
  for (std::uint64_t mi = 0; mi < space.size(); ++mi) {
    out.values.push_back(Cyclotomic::from_exponent_counts(
        p, std::span<const std::int64_t>(&hist[mi * p], p), norm));
  }
  return out;
}

FunctionTable spectral_energy(const CharacterTable& chars, const PointSet& set) {
  const Space& space = set.space();
  const unsigned p = chars.p();
  const Rational norm = inverse_power(space.field().q(), 2 * space.dim());
  const auto hist = exponent_histograms(set);
  FunctionTable out;
  out.reserve(space.size());
  std::vector<std::int64_t> corr(p);
  // |sum_j h_j zeta^j|^2 = sum_r (sum_j h_{j+r} h_j) zeta^r.
  for (std::uint64_t mi = 0; mi < space.size(); ++mi) {
    const std::int64_t* h = &hist[mi * p];
    for (unsigned r = 0; r < p; ++r) {
      std::int64_t acc = 0;
      for (unsigned j = 0; j < p; ++j) acc += h[(j + r) % p] * h[j];
      corr[r] = acc;
    }
    out.push_back(Cyclotomic::from_exponent_counts(p, corr, norm));
  }
  return out;
}

std::pair<Rational, Rational> plancherel_check(const CharacterTable& chars, const PointSet& set) {
  const auto table = dft_indicator(chars, set);
  Cyclotomic total(chars.p());
  for (const auto& v : table.values) total += v * v.conj();
  const Space& space = set.space();
  return {total.rational_value(),
          Rational(static_cast<unsigned long>(set.size())) * inverse_power(space.field().q(), space.dim())};
}

}  // namespace ffdist
