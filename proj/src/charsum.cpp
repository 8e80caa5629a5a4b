#include "ffdist/charsum.hpp"

#include <cmath>
#include <sstream>

#include "ffdist/error.hpp"

namespace ffdist {

namespace {

Cyclotomic direct_gauss_sum(const Field& field, FieldElement a) {
  std::vector<std::int64_t> counts(field.p(), 0);
  for (std::uint32_t c = 1; c < field.q(); ++c) {
    counts[field.trace_of_product(a, {c})] += field.quad_char({c});
  }
  return Cyclotomic::from_exponent_counts(field.p(), counts);
}

FieldElement four(const Field& field) { return field.from_int(4); }

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

CharacterTable::CharacterTable(FieldPtr field)
    : field_(std::move(field)), gauss1_(direct_gauss_sum(*field_, FieldElement{1})) {}

Cyclotomic CharacterTable::chi(FieldElement c) const {
  return Cyclotomic::root(p(), exponent(c));
}

Cyclotomic CharacterTable::chi(FieldElement b, FieldElement c) const {
  return Cyclotomic::root(p(), field_->trace_of_product(b, c));
}

Cyclotomic gauss_sum(const CharacterTable& chars, FieldElement a) {
  return direct_gauss_sum(chars.field(), a);
}

std::complex<double> gauss_closed_form(const Field& field) {
  const double root_q = std::sqrt(static_cast<double>(field.q()));
  const double sign = (field.s() - 1) % 2 == 0 ? 1.0 : -1.0;
  if (field.p() % 4 == 1) return {sign * root_q, 0.0};
  static const std::complex<double> kUnitPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return sign * root_q * kUnitPowers[field.s() % 4];
}

GaussIdentityRecord gauss_identities(const CharacterTable& chars, FieldElement a, FieldElement b,
                                     const Point& v) {
  const Field& f = chars.field();
  if (a.index == 0) throw InvalidArgument("gauss_identities: a must be nonzero");
  if (v.empty()) throw InvalidArgument("gauss_identities: v must have at least one coordinate");
  const unsigned p = f.p();
  const Cyclotomic eta_g1 = chars.gauss1() * Rational(f.quad_char(a));

  GaussIdentityRecord rec;

  std::vector<std::int64_t> h1(p, 0), h2(p, 0);
  for (std::uint32_t s = 0; s < f.q(); ++s) {
    const FieldElement sq = f.square({s});
    h1[f.trace_of_product(a, sq)] += 1;
    h2[f.trace(f.add(f.mul(a, sq), f.mul(b, {s})))] += 1;
  }
  rec.quadratic = Cyclotomic::from_exponent_counts(p, h1) == eta_g1;

  const FieldElement four_a = f.mul(four(f), a);
  const FieldElement shift = f.neg(f.div(f.square(b), four_a));
  rec.completed_square = Cyclotomic::from_exponent_counts(p, h2) == eta_g1 * chars.chi(shift);

  const unsigned d = static_cast<unsigned>(v.size());
  Space space(chars.field_ptr(), d);
  space.check_point(v);
  std::vector<std::int64_t> h3(p, 0);
  std::vector<std::uint32_t> u(d);
  for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
    space.decode(idx, u);
    unsigned e = 0;
    for (unsigned i = 0; i < d; ++i) {
      const FieldElement ui{u[i]};
      e += f.trace(f.add(f.mul(a, f.square(ui)), f.mul(v[i], ui)));
    }
    h3[e % p] += 1;
  }
  Cyclotomic rhs = Cyclotomic::from_rational(p, 1);
  for (unsigned i = 0; i < d; ++i) rhs *= eta_g1;
  rhs *= chars.chi(f.div(space.norm(v), f.neg(four_a)));
  rec.multidimensional = Cyclotomic::from_exponent_counts(p, h3) == rhs;
  return rec;
}

Cyclotomic kloosterman(const CharacterTable& chars, FieldElement a, FieldElement b) {
  const Field& f = chars.field();
  if (a.index == 0 || b.index == 0) throw InvalidArgument("kloosterman: a and b must be nonzero");
  std::vector<std::int64_t> counts(f.p(), 0);
  for (std::uint32_t s = 1; s < f.q(); ++s) {
    const FieldElement se{s};
    counts[f.trace(f.add(f.mul(a, se), f.mul(b, f.inv(se))))] += 1;
  }
  return Cyclotomic::from_exponent_counts(f.p(), counts);
}

std::vector<IdentityCheck> verify_identities(const FieldPtr& field, unsigned d, std::uint64_t cap) {
  const Field& f = *field;
  const CharacterTable chars(field);
  const std::uint32_t q = f.q();
  const unsigned p = f.p();
  std::vector<IdentityCheck> checks;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  };

  bool mult = true;
  std::uint32_t squares = 0;
  for (std::uint32_t a = 1; a < q; ++a) {
    if (f.quad_char({a}) == 1) ++squares;
    for (std::uint32_t b = 1; b < q; ++b) {
      mult = mult && f.quad_char({a}) * f.quad_char({b}) == f.quad_char(f.mul({a}, {b}));
    }
  }
  add("eta_multiplicative", mult);
  add("eta_balanced", squares == (q - 1) / 2, std::to_string(squares) + " squares");

  std::vector<std::uint32_t> fiber(p, 0);
  for (std::uint32_t a = 0; a < q; ++a) ++fiber[f.trace({a})];
  bool fibers_ok = true;
  for (auto n : fiber) fibers_ok = fibers_ok && n == q / p;
  add("trace_fibers", fibers_ok);

  bool orth = true;
  for (std::uint32_t b = 0; b < q; ++b) {
    std::vector<std::int64_t> counts(p, 0);
    for (std::uint32_t c = 0; c < q; ++c) counts[f.trace_of_product({b}, {c})] += 1;
    const auto sum = Cyclotomic::from_exponent_counts(p, counts);
    orth = orth && sum == Cyclotomic::from_rational(p, b == 0 ? Rational(q) : Rational(0));
  }
  std::int64_t eta_total = 0;
  for (std::uint32_t c = 1; c < q; ++c) eta_total += f.quad_char({c});
  add("additive_orthogonality", orth);
  add("eta_orthogonality", eta_total == 0);

  const Cyclotomic& g1 = chars.gauss1();
  const int eta_m1 = f.quad_char(f.neg(f.one()));
  add("gauss_square", g1 * g1 == Cyclotomic::from_rational(p, Rational(eta_m1 * std::int64_t{q})),
      g1.to_string());
  const double mag_err = std::abs(std::abs(g1.to_complex()) - std::sqrt(double(q)));
  add("gauss_magnitude", mag_err <= 1e-6, fmt_double(mag_err));
  const double closed_err = std::abs(gauss_closed_form(f) - g1.to_complex());
  add("gauss_closed_form", closed_err <= 1e-6, fmt_double(closed_err));

  bool scaled = true;
  for (std::uint32_t a = 0; a < q; ++a) {
    scaled = scaled && gauss_sum(chars, {a}) == g1 * Rational(f.quad_char({a}));
  }
  add("gauss_scaling", scaled);

  Space space(field, d, cap);
  bool q1 = true, q2 = true, q3 = true;
  for (std::uint32_t a = 1; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      Point v = space.origin();
      v[0] = {b};
      const auto rec = gauss_identities(chars, {a}, {b}, v);
      q1 = q1 && rec.quadratic;
      q2 = q2 && rec.completed_square;
      q3 = q3 && rec.multidimensional;
    }
  }
  // Identity (3) costs q^d per v; walk every v while the total stays small,
  // otherwise a fixed stride through F_q^d.
  constexpr std::uint64_t kBudget = 50'000'000;
  const std::uint64_t per_v = space.size() * (q - 1);
  std::uint64_t stride = 1;
  while (per_v * (space.size() / stride) > kBudget && stride < space.size()) stride *= 2;
  for (std::uint32_t a = 1; a < q; ++a) {
    for (std::uint64_t vi = 0; vi < space.size(); vi += stride) {
      q3 = q3 && gauss_identities(chars, {a}, f.zero(), space.point(vi)).multidimensional;
    }
  }
  add("quadratic_sum", q1);
  add("completed_square_sum", q2);
  add("multidimensional_quadratic_sum", q3,
      "d=" + std::to_string(d) + (stride > 1 ? " stride=" + std::to_string(stride) : ""));

  double worst = 0.0;
  for (std::uint32_t a = 1; a < q; ++a) {
    for (std::uint32_t b = 1; b < q; ++b) {
      worst = std::max(worst, std::abs(kloosterman(chars, {a}, {b}).to_complex()));
    }
  }
  const double weil = 2.0 * std::sqrt(double(q));
  add("weil_bound", worst <= weil + 1e-6, fmt_double(worst) + " <= " + fmt_double(weil));
  return checks;
}

}  // namespace ffdist
