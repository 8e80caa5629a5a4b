#include "ffdist/cyclotomic.hpp"

#include <cmath>
#include <numbers>

#include "ffdist/error.hpp"

namespace ffdist {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

namespace {

void require_odd_prime(unsigned p) {
  if (p % 2 == 0 || !is_prime(p)) {
    throw InvalidArgument("cyclotomic: p = " + std::to_string(p) + " is not an odd prime");
  }
}

unsigned mod_p(std::int64_t e, unsigned p) {
  auto r = e % static_cast<std::int64_t>(p);
  return static_cast<unsigned>(r < 0 ? r + p : r);
}

}  // namespace

Cyclotomic::Cyclotomic(unsigned p) : p_(p) {
  require_odd_prime(p);
  c_.assign(p, Rational(0));
}

Cyclotomic Cyclotomic::canon(unsigned p, std::vector<Rational> raw) {
  require_odd_prime(p);
  if (raw.size() != p) {
    throw InvalidArgument("cyclotomic: expected " + std::to_string(p) + " coefficients, got " +
                          std::to_string(raw.size()));
  }
  Cyclotomic out(Unchecked{}, p, std::move(raw));
  out.reduce();
  return out;
}

Cyclotomic Cyclotomic::from_rational(unsigned p, const Rational& r) {
  Cyclotomic out(p);
  out.c_[0] = r;
  return out;
}

Cyclotomic Cyclotomic::root(unsigned p, std::int64_t e) {
  Cyclotomic out(p);
  unsigned j = mod_p(e, p);
  if (j == p - 1) {
    for (unsigned i = 0; i + 1 < p; ++i) out.c_[i] = -1;
  } else {
    out.c_[j] = 1;
  }
  return out;
}

Cyclotomic Cyclotomic::from_exponent_counts(unsigned p, std::span<const std::int64_t> counts,
                                            const Rational& scale) {
  require_odd_prime(p);
  if (counts.size() != p) {
    throw InvalidArgument("cyclotomic: exponent histogram must have p entries");
  }
  std::vector<Rational> c(p);
  std::int64_t top = counts[p - 1];
  for (unsigned j = 0; j + 1 < p; ++j) {
    std::int64_t v = counts[j] - top;
    if (v != 0) {
      c[j] = Rational(static_cast<long>(v)) * scale;
    }
  }
  return Cyclotomic(Unchecked{}, p, std::move(c));
}

void Cyclotomic::reduce() {
  Rational& top = c_[p_ - 1];
  if (sgn(top) == 0) return;
  Rational t = top;
  for (auto& x : c_) x -= t;
}

void Cyclotomic::require_same_prime(const Cyclotomic& o) const {
  if (o.p_ != p_) {
    throw InvalidArgument("cyclotomic: mismatched primes " + std::to_string(p_) + " and " +
                          std::to_string(o.p_));
  }
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

bool Cyclotomic::is_rational() const {
  for (unsigned j = 1; j < p_; ++j) {
    if (sgn(c_[j]) != 0) return false;
  }
  return true;
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) {
    throw IdentityViolation("cyclotomic: value " + to_string() + " is not rational");
  }
  return c_[0];
}

Cyclotomic Cyclotomic::conj() const {
  std::vector<Rational> c(p_);
  c[0] = c_[0];
  for (unsigned j = 1; j < p_; ++j) c[p_ - j] = c_[j];
  Cyclotomic out(Unchecked{}, p_, std::move(c));
  out.reduce();
  return out;
}

Cyclotomic Cyclotomic::times_root(std::int64_t e) const {
  unsigned shift = mod_p(e, p_);
  if (shift == 0) return *this;
  std::vector<Rational> c(p_);
  for (unsigned j = 0; j < p_; ++j) c[(j + shift) % p_] = c_[j];
  Cyclotomic out(Unchecked{}, p_, std::move(c));
  out.reduce();
  return out;
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> z = 0.0;
  for (unsigned j = 0; j < p_; ++j) {
    if (sgn(c_[j]) == 0) continue;
    double angle = 2.0 * std::numbers::pi * j / p_;
    z += c_[j].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return z;
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (unsigned j = 0; j + 1 < p_; ++j) {
    if (j) out += ';';
    out += ffdist::to_string(c_[j]);
  }
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  require_same_prime(o);
  for (unsigned j = 0; j < p_; ++j) {
    if (sgn(o.c_[j]) != 0) c_[j] += o.c_[j];
  }
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  require_same_prime(o);
  for (unsigned j = 0; j < p_; ++j) {
    if (sgn(o.c_[j]) != 0) c_[j] -= o.c_[j];
  }
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  *this = *this * o;
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
  if (sgn(r) == 0) {
    for (auto& x : c_) x = 0;
    return *this;
  }
  for (auto& x : c_) {
    if (sgn(x) != 0) x *= r;
  }
  return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  a.require_same_prime(b);
  const unsigned p = a.p_;
  std::vector<Rational> c(p);
  Rational tmp;
  for (unsigned i = 0; i < p; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (unsigned j = 0; j < p; ++j) {
      if (sgn(b.c_[j]) == 0) continue;
      unsigned k = i + j;
      if (k >= p) k -= p;
      mpq_mul(tmp.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
      c[k] += tmp;
    }
  }
  Cyclotomic out(Cyclotomic::Unchecked{}, p, std::move(c));
  out.reduce();
  return out;
}

Cyclotomic operator-(const Cyclotomic& a) {
  Cyclotomic out = a;
  for (auto& x : out.c_) x = -x;
  return out;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  return a.p_ == b.p_ && a.c_ == b.c_;
}

std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace ffdist
