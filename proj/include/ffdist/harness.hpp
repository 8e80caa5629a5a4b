#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ffdist/cyclotomic.hpp"
#include "ffdist/field.hpp"
#include "ffdist/fourier.hpp"

namespace ffdist {

enum class OutputFormat { json, csv };

struct ExperimentConfig {
  unsigned p = 3;
  unsigned s = 1;
  unsigned d = 2;
  unsigned k = 1;
  /// Threshold multiplier C in |E| >= C q^{max{(d+1)/2, d-k}}.
  Rational threshold_multiplier = 4;
  std::uint64_t seed = 0;
  unsigned trials = 1;
  /// Explicit |E| values; empty selects the auto grid.
  std::vector<std::uint64_t> sizes;
  OutputFormat format = OutputFormat::json;
  /// Also emit floating-point embeddings next to exact values.
  bool numeric = false;
  std::uint64_t cap = kDefaultCap;
  /// Replace every sample by the sharpness example F_q^{d-k} x {0}.
  bool sharpness = false;
  /// Emit per-trial runtime_ms. Off by default so output is reproducible.
  bool timing = false;

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;
};

/// Independent RNG stream id for one trial.
std::uint64_t substream_id(std::uint64_t seed, std::uint64_t trial);

/// Uniform integer in [0, n) from a 64-bit engine; portable across
/// standard libraries, unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

/// Uniform size-element subset of F_q^d, chosen by a partial Fisher-Yates
/// shuffle of the index space seeded from substream_id(seed, trial).
PointSet sample_set(const Space& space, std::uint64_t seed, std::uint64_t size,
                    std::uint64_t trial);

/// 2 * max{(d+1)/2, d-k}, kept doubled so it stays an integer.
unsigned doubled_threshold_exponent(unsigned d, unsigned k);
/// ceil(C q^{max{(d+1)/2, d-k}}), exact.
std::uint64_t threshold_size(std::uint64_t q, unsigned d, unsigned k, const Rational& c);
/// Threshold size scaled by 1/8, 1/4, 1/2, 1, 2, clipped to [1, q^d].
std::vector<std::uint64_t> auto_size_grid(std::uint64_t q, unsigned d, unsigned k,
                                          const Rational& c);

struct SweepRecord {
  std::uint64_t q = 0;
  unsigned d = 0;
  unsigned k = 0;
  std::uint64_t size = 0;
  unsigned trial = 0;
  std::uint64_t substream = 0;
  bool full_coverage = false;
  std::vector<FieldElement> missing_radii;
  double runtime_ms = 0.0;
  bool cross_checked = false;
};

struct SweepSummary {
  std::uint64_t size = 0;
  unsigned trials = 0;
  unsigned covered = 0;
  Rational fraction;
};

struct SweepResult {
  std::uint64_t threshold_size = 0;
  unsigned doubled_exponent = 0;
  /// Even d: the sharp exponent there is open, so results are exploratory.
  bool conjectural = false;
  std::vector<SweepRecord> records;
  std::vector<SweepSummary> summaries;
  /// Every cross-checked trial agreed with the spectral count.
  bool cross_check_ok = true;
};

/// Samples E for each grid size and trial and records whether
/// D_k(E) = F_q. Roughly one trial in twenty is re-derived through the
/// spectral pair count.
SweepResult threshold_sweep(const ExperimentConfig& config);

}  // namespace ffdist
