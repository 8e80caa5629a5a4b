#pragma once

#include <cstdint>
#include <vector>

#include "ffdist/charsum.hpp"
#include "ffdist/cyclotomic.hpp"
#include "ffdist/field.hpp"
#include "ffdist/fourier.hpp"

namespace ffdist {

/// A subset of the coordinate positions {0, ..., d-1}, as a bitmask.
struct IndexSubset {
  unsigned d = 0;
  std::uint32_t mask = 0;

  unsigned size() const noexcept;
  bool contains(unsigned i) const noexcept { return (mask >> i) & 1u; }
  std::vector<unsigned> members() const;

  friend bool operator==(const IndexSubset&, const IndexSubset&) = default;
};

/// Subsets of size r of {0..d-1} in lexicographic order of their members.
std::vector<IndexSubset> subsets_of_size(unsigned d, unsigned r);
/// All subsets, by increasing size, then lexicographically.
std::vector<IndexSubset> all_subsets(unsigned d);

/// The sphere {x : ||x||_k = t}.
struct SphereSpec {
  unsigned k = 1;
  FieldElement t;
};

/// ||x||_k: the quadratic norm when x has at most k-1 zero coordinates,
/// 0 otherwise. Throws unless 1 <= k <= d.
FieldElement k_norm(const Space& space, const Point& x, unsigned k);

/// N_alpha: the points with exactly alpha zero coordinates.
PointSet stratum(const Space& space, unsigned alpha);
/// F_I: the points whose nonzero coordinates are exactly I.
PointSet slice(const Space& space, IndexSubset subset);
PointSet sphere_points(const Space& space, SphereSpec spec);

/// sum over x in N_alpha of chi(s ||x|| - m.x), by the product formula over
/// slices. For s = 0 an empty I contributes 1.
Cyclotomic stratum_character_sum(const CharacterTable& chars, const Space& space, unsigned alpha,
                       FieldElement s, const Point& m);

/// A(m, t) of the sphere transform; requires t != 0.
Cyclotomic a_term(const CharacterTable& chars, const Space& space, const Point& m,
                  FieldElement t, unsigned k);
/// A(m, t) for every m, in point-index order.
std::vector<Cyclotomic> a_term_table(const CharacterTable& chars, const Space& space,
                                     FieldElement t, unsigned k);
/// B(m): sum over alpha < k and |I| = d - alpha of
/// (q-1)^{Z(m_I)} (-1)^{d-alpha-Z(m_I)}.
std::int64_t b_term(const Space& space, const Point& m, unsigned k);

/// A(m, t) with each product over I expanded into subsets J of I, so every
/// term is G_1^{|J|} times a generalised Kloosterman sum in s.
struct AExpansion {
  Cyclotomic value;
  /// sum over (I, J) of |G_1|^{|J|} |sum_s eta^{|J|}(s) chi(-st - ||m_J||/4s)|.
  double majorant = 0.0;
  /// Largest |sum_s ...| seen; the Weil bound caps it at 2 sqrt(q).
  double worst_inner = 0.0;
  /// Number of (I, J) pairs visited, at most 3^d.
  std::uint64_t terms = 0;
};
AExpansion a_term_expanded(const CharacterTable& chars, const Space& space, const Point& m,
                           FieldElement t, unsigned k);

enum class FtMode { closed, brute };

/// Fourier transform of the sphere indicator at m. Closed mode evaluates
/// q^{-d-1}(A(m,t) + B(m)) and throws for t = 0; brute mode transforms the
/// enumerated sphere.
Cyclotomic sphere_ft(const CharacterTable& chars, const Space& space, const Point& m,
                     SphereSpec spec, FtMode mode);
/// sphere_ft at every m.
FourierTable sphere_ft_table(const CharacterTable& chars, const Space& space, SphereSpec spec,
                             FtMode mode);
/// One table per radius t (indexed by t.index). In closed mode the t = 0
/// table is still computed by brute force.
std::vector<FourierTable> sphere_ft_all_radii(const CharacterTable& chars, const Space& space,
                                              unsigned k, FtMode mode);

}  // namespace ffdist
