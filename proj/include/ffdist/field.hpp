#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace ffdist {

/// An element of GF(q), identified by its rank in the canonical enumeration:
/// the base-p value sum c_j p^j of its polynomial coefficients c_0..c_{s-1}.
struct FieldElement {
  std::uint32_t index = 0;

  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

/// GF(p^s) for an odd prime p, realised as GF(p)[X]/(modulus).
///
/// Multiplication goes through discrete log tables built from the first
/// primitive element in index order, so a Field is O(q) in memory. Fields
/// are immutable after construction.
class Field {
 public:
  /// make_field: the modulus is the lexicographically smallest monic
  /// irreducible of degree s, comparing the constant coefficient first.
  static Field make(unsigned p, unsigned s);
  /// User-supplied monic modulus, s+1 coefficients constant-first.
  static Field with_modulus(unsigned p, std::vector<unsigned> modulus);
  /// Factors q; throws unless q is an odd prime power.
  static Field from_order(std::uint64_t q);

  unsigned p() const noexcept { return p_; }
  unsigned s() const noexcept { return s_; }
  std::uint32_t q() const noexcept { return q_; }
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return {1}; }
  FieldElement element(std::uint64_t index) const;
  /// The image of an integer in the prime subfield.
  FieldElement from_int(std::int64_t n) const;
  FieldElement from_coeffs(std::span<const unsigned> coeffs) const;
  std::vector<unsigned> coeffs(FieldElement a) const;
  std::vector<FieldElement> elements() const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement neg(FieldElement a) const { return {neg_[a.index]}; }
  FieldElement mul(FieldElement a, FieldElement b) const;
  /// Throws InvalidArgument on zero.
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  FieldElement square(FieldElement a) const { return mul(a, a); }

  /// Absolute trace to GF(p), as a residue in [0, p).
  unsigned trace(FieldElement a) const { return trace_[a.index]; }
  /// Tr(a*b); table-backed for small fields.
  unsigned trace_of_product(FieldElement a, FieldElement b) const;
  /// Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
  int quad_char(FieldElement a) const;

  FieldElement primitive_element() const noexcept { return {exp_[1]}; }

 private:
  Field() = default;
  void build_tables();

  unsigned p_ = 0;
  unsigned s_ = 0;
  std::uint32_t q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<std::uint32_t> exp_;  // exp_[i] = g^i, i in [0, q-1)
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<std::uint32_t> neg_;
  std::vector<unsigned> trace_;
  std::vector<std::uint16_t> add_table_;    // q*q when q is small
  std::vector<std::uint16_t> trace_table_;  // q*q when q is small
};

using FieldPtr = std::shared_ptr<const Field>;

/// A point of F_q^d.
using Point = std::vector<FieldElement>;

struct VectorOps {
  FieldElement dot;
  FieldElement norm;  // norm of the first argument
  unsigned zeros;     // zero coordinates of the first argument
};

inline constexpr std::uint64_t kDefaultCap = 1'000'000;

/// F_q^d with its canonical enumeration. Point index i is the base-q numeral
/// of the coordinates, first coordinate most significant, so indices follow
/// lexicographic order. Cheap to copy.
class Space {
 public:
  /// Throws CapExceeded when q^d > cap.
  Space(FieldPtr field, unsigned d, std::uint64_t cap = kDefaultCap);

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  unsigned dim() const noexcept { return d_; }
  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t cap() const noexcept { return cap_; }

  Point point(std::uint64_t index) const;
  /// Writes the coordinate indices of point `index` into `out` (size d).
  void decode(std::uint64_t index, std::span<std::uint32_t> out) const;
  std::uint64_t index(const Point& x) const;
  Point origin() const { return Point(d_, FieldElement{0}); }

  FieldElement dot(const Point& x, const Point& y) const;
  FieldElement norm(const Point& x) const;
  unsigned zeros(const Point& x) const;
  VectorOps vector_ops(const Point& x, const Point& y) const;
  Point sub(const Point& x, const Point& y) const;

  /// Throws InvalidArgument unless x has d coordinates from this field.
  void check_point(const Point& x) const;

 private:
  FieldPtr field_;
  unsigned d_;
  std::uint64_t size_;
  std::uint64_t cap_;
};

/// All q^d points in canonical order; throws CapExceeded past the cap.
std::vector<Point> enumerate_vectors(const FieldPtr& field, unsigned d,
                                     std::uint64_t cap = kDefaultCap);

}  // namespace ffdist
