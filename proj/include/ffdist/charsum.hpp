#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ffdist/cyclotomic.hpp"
#include "ffdist/field.hpp"

namespace ffdist {

/// The canonical additive character chi_1(c) = zeta_p^{Tr(c)} of a field,
/// with chi_b(c) = chi_1(bc). Also caches the Gauss sum G_1, which every
/// closed form downstream reuses.
class CharacterTable {
 public:
  explicit CharacterTable(FieldPtr field);

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  unsigned p() const noexcept { return field_->p(); }

  /// Exponent e with chi_1(c) = zeta^e.
  unsigned exponent(FieldElement c) const { return field_->trace(c); }
  Cyclotomic chi(FieldElement c) const;
  Cyclotomic chi(FieldElement b, FieldElement c) const;
  const Cyclotomic& gauss1() const noexcept { return gauss1_; }

 private:
  FieldPtr field_;
  Cyclotomic gauss1_;
};

/// G_a = sum over c != 0 of eta(c) chi_a(c). G_0 = 0.
Cyclotomic gauss_sum(const CharacterTable& chars, FieldElement a);

/// Closed form of G_1: (-1)^{s-1} sqrt(q) when p = 1 mod 4, and
/// (-1)^{s-1} i^s sqrt(q) when p = 3 mod 4.
std::complex<double> gauss_closed_form(const Field& field);

/// Exact comparison of the three quadratic-sum identities at (a, b, v):
///   (1) sum_s chi(a s^2)                  = eta(a) G_1
///   (2) sum_s chi(a s^2 + b s)            = eta(a) G_1 chi(-b^2 / 4a)
///   (3) sum_u chi(a ||u|| + v.u)          = eta(a)^d G_1^d chi(||v|| / (-4a))
/// with d = v.size(). Left sides are direct sums.
struct GaussIdentityRecord {
  bool quadratic = false;
  bool completed_square = false;
  bool multidimensional = false;
  bool all() const { return quadratic && completed_square && multidimensional; }
};

/// Throws InvalidArgument when a = 0.
GaussIdentityRecord gauss_identities(const CharacterTable& chars, FieldElement a, FieldElement b,
                                     const Point& v);

/// K(chi; a, b) = sum over s != 0 of chi(a s + b / s). Throws when a or b is 0.
Cyclotomic kloosterman(const CharacterTable& chars, FieldElement a, FieldElement b);

/// One named check of verify_identities.
struct IdentityCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Every field-level invariant for `field`: quadratic-character and trace
/// structure, orthogonality, Gauss-sum identities, the quadratic-sum
/// identities (identity (3) over all of F_q^d), and the Weil bound.
std::vector<IdentityCheck> verify_identities(const FieldPtr& field, unsigned d = 2,
                                             std::uint64_t cap = kDefaultCap);

}  // namespace ffdist
