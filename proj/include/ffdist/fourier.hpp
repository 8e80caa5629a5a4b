#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ffdist/charsum.hpp"
#include "ffdist/cyclotomic.hpp"
#include "ffdist/field.hpp"

namespace ffdist {

/// A finite subset of F_q^d, stored as sorted distinct point indices.
class PointSet {
 public:
  /// Throws InvalidArgument on duplicate or out-of-range indices.
  PointSet(Space space, std::vector<std::uint64_t> indices);
  static PointSet from_points(const Space& space, const std::vector<Point>& points);
  static PointSet full(const Space& space);

  const Space& space() const noexcept { return space_; }
  const std::vector<std::uint64_t>& indices() const noexcept { return indices_; }
  std::uint64_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(std::uint64_t index) const;
  std::vector<Point> points() const;

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.space_.dim() == b.space_.dim() && a.space_.field().q() == b.space_.field().q() &&
           a.indices_ == b.indices_;
  }

 private:
  Space space_;
  std::vector<std::uint64_t> indices_;
};

/// A function on F_q^d (or its transform), indexed by point index.
using FunctionTable = std::vector<Cyclotomic>;

/// f^(m) for every frequency m of a space.
struct FourierTable {
  Space space;
  FunctionTable values;

  const Cyclotomic& at(const Point& m) const { return values[space.index(m)]; }
};

/// f^(m) = q^{-d} sum_x f(x) chi(-x.m). `f` must cover all q^d points.
FourierTable dft(const CharacterTable& chars, const Space& space, const FunctionTable& f);
/// f(x) = sum_m chi(m.x) f^(m). Throws on an incomplete table.
FunctionTable inverse_dft(const CharacterTable& chars, const FourierTable& table);

FunctionTable indicator(const PointSet& set);
/// Transform of an indicator, via exponent histograms.
FourierTable dft_indicator(const CharacterTable& chars, const PointSet& set);
/// |E^(m)|^2 = E^(m) conj(E^(m)) for every m, exact.
FunctionTable spectral_energy(const CharacterTable& chars, const PointSet& set);

/// (sum_m |E^(m)|^2, q^{-d} |E|). Throws IdentityViolation if the left side
/// is not rational.
std::pair<Rational, Rational> plancherel_check(const CharacterTable& chars, const PointSet& set);

}  // namespace ffdist
