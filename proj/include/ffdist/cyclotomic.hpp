#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ffdist {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact element of the cyclotomic field Q(zeta_p) for an odd prime p.
///
/// Stored as p rational coefficients c_0..c_{p-1} of sum c_j zeta^j, kept in
/// canonical form c_{p-1} = 0 via 1 + zeta + ... + zeta^{p-1} = 0. In that
/// form two values are equal iff their coefficient vectors are equal.
/// Values are immutable from the outside; every operation returns a
/// canonical result.
class Cyclotomic {
 public:
  /// The zero of Q(zeta_p).
  explicit Cyclotomic(unsigned p);

  /// Reduces an arbitrary length-p coefficient vector to canonical form.
  static Cyclotomic canon(unsigned p, std::vector<Rational> raw);
  static Cyclotomic from_rational(unsigned p, const Rational& r);
  /// zeta^e, exponent taken mod p.
  static Cyclotomic root(unsigned p, std::int64_t e);
  /// scale * sum_j counts[j] zeta^j. Fast path for character sums, which
  /// are naturally histograms of exponents.
  static Cyclotomic from_exponent_counts(unsigned p, std::span<const std::int64_t> counts,
                                         const Rational& scale = Rational(1));

  unsigned prime() const noexcept { return p_; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// The value as a rational; throws IdentityViolation if it is not rational.
  Rational rational_value() const;

  Cyclotomic conj() const;
  /// this * zeta^e, a coefficient rotation.
  Cyclotomic times_root(std::int64_t e) const;

  std::complex<double> to_complex() const;
  /// "c0;c1;...;c_{p-2}" with each c_j as an exact rational.
  std::string to_string() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& r);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
  friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }
  friend Cyclotomic operator-(const Cyclotomic& a);
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

 private:
  struct Unchecked {};
  Cyclotomic(Unchecked, unsigned p, std::vector<Rational> c) : p_(p), c_(std::move(c)) {}
  void reduce();
  void require_same_prime(const Cyclotomic& o) const;

  unsigned p_;
  std::vector<Rational> c_;
};

inline Cyclotomic mul(const Cyclotomic& a, const Cyclotomic& b) { return a * b; }
inline std::complex<double> to_complex(const Cyclotomic& a) { return a.to_complex(); }

std::string to_string(const Rational& r);

}  // namespace ffdist
