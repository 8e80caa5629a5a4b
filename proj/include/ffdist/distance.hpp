#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffdist/charsum.hpp"
#include "ffdist/cyclotomic.hpp"
#include "ffdist/field.hpp"
#include "ffdist/fourier.hpp"
#include "ffdist/geometry.hpp"

namespace ffdist {

/// D_k(E) = {||x - y||_k : x, y in E}, sorted by element index.
/// Throws on empty E or k outside [1, d].
std::vector<FieldElement> distance_set(const PointSet& set, unsigned k);

/// nu_E(t) counted two ways: directly over ordered pairs, and spectrally as
/// q^{2d} sum_m S^(m) |E^(m)|^2.
struct NuReport {
  FieldElement t;
  std::uint64_t direct = 0;
  Rational spectral{};
  bool equal = false;
};

/// Ordered-pair counts indexed by radius.
std::vector<std::uint64_t> nu_direct_all(const PointSet& set, unsigned k);
std::uint64_t nu_direct(const PointSet& set, FieldElement t, unsigned k);
/// Spectral count for one radius; closed sphere transform for t != 0.
Rational nu_spectral(const CharacterTable& chars, const PointSet& set, FieldElement t, unsigned k);
NuReport nu(const CharacterTable& chars, const PointSet& set, FieldElement t, unsigned k);

/// Reports for every radius. `radii` may carry precomputed sphere tables
/// from sphere_ft_all_radii for the same space and k.
std::vector<NuReport> nu_spectrum(const CharacterTable& chars, const PointSet& set, unsigned k,
                                  const std::vector<FourierTable>* radii = nullptr);

/// q^{d-1} sum_m |E^(m)|^2 (A(m,t) + B(m)); t != 0.
Rational nu_from_decomposition(const CharacterTable& chars, const PointSet& set, FieldElement t,
                               unsigned k);

/// Diagnostics for the two sums controlling nu_E(t) at t != 0.
///
/// The A side is compared against 2 * 3^d * q^{-(d-1)/2} |E|: each of the at
/// most 3^d nested pairs J in I in [d] contributes at most 2 q^{(d+1)/2} to
/// |A(m,t)|, and sum_m |E^(m)|^2 = q^{-d}|E|.
///
/// The B side is split as B_main + B_aux (all alpha, minus alpha >= k), and
/// B_main as B_m1 + B_m2 + B_m3 by the zero count w of m and beta = Z(m_I):
/// beta < w, beta = w (m != 0), and m = 0. B_m2 is computed twice, literally
/// and through the subset sums over T in [d] \ J that collapse to
/// (1 - 1)^{d-w}.
struct BoundReport {
  FieldElement t;
  std::uint64_t size = 0;

  Cyclotomic a_sum;
  double a_sum_abs = 0.0;
  double a_bound = 0.0;
  bool a_within_bound = false;
  double a_pointwise_max = 0.0;
  double a_pointwise_bound = 0.0;

  Rational b_sum{};
  Rational b_main{};
  Rational b_aux{};
  Rational b_aux_abs{};
  Rational b_m1{};
  Rational b_m1_abs{};
  /// The B_m1 sum with every sign made positive.
  Rational b_m1_majorant{};
  Rational b_m2{};
  Rational b_m2_binomial{};
  Rational b_m3{};
  bool reassembled = false;

  Rational aux_reference{};    // q^{-k} |E|
  Rational m1_reference{};     // q^{-d-1} |E|^2
  Rational m3_reference{};     // q^{-d} |E|^2
  Rational lower_reference{};  // q^{-d} |E|^2 - q^{-k} |E|
  /// b_sum / lower_reference; empty when the reference is not positive.
  std::optional<double> lower_ratio{};

  std::uint64_t nu_direct = 0;
  Rational nu_decomposed{};
  bool nu_equal = false;

  bool ok() const {
    return a_within_bound && reassembled && nu_equal && sgn(b_m2) == 0 && sgn(b_m2_binomial) == 0;
  }
};

/// Throws InvalidArgument for t = 0.
BoundReport bounds(const CharacterTable& chars, const PointSet& set, FieldElement t, unsigned k);

/// sum_{r=0}^{n} (-1)^r C(n, r): 1 for n = 0, else 0.
std::int64_t alternating_binomial_sum(unsigned n);

/// F_q^{d-k} x {0}^k, whose k-distance set is {0}.
PointSet sharpness_example(const Space& space, unsigned k);

}  // namespace ffdist
