#include "ffdist/harness.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <numeric>

#include "ffdist/distance.hpp"
#include "ffdist/error.hpp"

namespace ffdist {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kCrossCheckSalt = 0x63726f7373636b31ULL;

Integer ipow(std::uint64_t q, unsigned e) {
  Integer v = 1;
  for (unsigned i = 0; i < e; ++i) v *= static_cast<unsigned long>(q);
  return v;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (p % 2 == 0 || !is_prime(p)) throw InvalidArgument("config: p must be an odd prime");
  if (s < 1) throw InvalidArgument("config: s must be >= 1");
  if (d < 2) throw InvalidArgument("config: d must be >= 2");
  if (k < 1 || k > d) throw InvalidArgument("config: k must lie in [1, d]");
  if (trials < 1) throw InvalidArgument("config: trials must be >= 1");
  if (sgn(threshold_multiplier) <= 0) throw InvalidArgument("config: C must be positive");
  for (auto n : sizes) {
    if (n < 1) throw InvalidArgument("config: sizes must be >= 1");
  }
}

std::uint64_t substream_id(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x5bd1e995ULL));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("uniform_below: empty range");
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

PointSet sample_set(const Space& space, std::uint64_t seed, std::uint64_t size,
                    std::uint64_t trial) {
  const std::uint64_t n = space.size();
  if (size > n) {
    throw InvalidArgument("sample_set: size " + std::to_string(size) + " exceeds q^d = " +
                          std::to_string(n));
  }
  std::vector<std::uint64_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::uint64_t{0});
  std::mt19937_64 rng(substream_id(seed, trial));
  for (std::uint64_t i = 0; i < size; ++i) {
    std::swap(pool[i], pool[i + uniform_below(rng, n - i)]);
  }
  pool.resize(size);
  return PointSet(space, std::move(pool));
}

unsigned doubled_threshold_exponent(unsigned d, unsigned k) {
  return std::max(d + 1, 2 * (d - k));
}

std::uint64_t threshold_size(std::uint64_t q, unsigned d, unsigned k, const Rational& c) {
  const unsigned twice = doubled_threshold_exponent(d, k);
  const Integer& num = c.get_num();
  const Integer& den = c.get_den();
  Integer n;
  if (twice % 2 == 0) {
    n = ceil_div(num * ipow(q, twice / 2), den);
  } else {
    // Smallest n with (n * den)^2 >= num^2 q^twice.
    const Integer x = num * num * ipow(q, twice);
    Integer r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    if (r * r < x) r += 1;
    n = ceil_div(r, den);
  }
  if (!n.fits_ulong_p()) throw InvalidArgument("threshold size overflows");
  return n.get_ui();
}

std::vector<std::uint64_t> auto_size_grid(std::uint64_t q, unsigned d, unsigned k,
                                          const Rational& c) {
  const std::uint64_t total = ipow(q, d).get_ui();
  const std::uint64_t base = threshold_size(q, d, k, c);
  std::vector<std::uint64_t> grid;
  for (std::uint64_t div : {8, 4, 2}) grid.push_back((base + div - 1) / div);
  grid.push_back(base);
  grid.push_back(2 * base);
  for (auto& n : grid) n = std::clamp<std::uint64_t>(n, 1, total);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

SweepResult threshold_sweep(const ExperimentConfig& config) {
  config.validate();
  auto field = std::make_shared<const Field>(Field::make(config.p, config.s));
  const Space space(field, config.d, config.cap);
  const std::uint64_t q = field->q();
  const unsigned k = config.k;

  SweepResult result;
  result.threshold_size = threshold_size(q, config.d, k, config.threshold_multiplier);
  result.doubled_exponent = doubled_threshold_exponent(config.d, k);
  result.conjectural = config.d % 2 == 0;

  std::vector<std::uint64_t> grid;
  std::optional<PointSet> forced;
  if (config.sharpness) {
    forced = sharpness_example(space, k);
    grid = {forced->size()};
  } else {
    grid = config.sizes.empty() ? auto_size_grid(q, config.d, k, config.threshold_multiplier)
                                : config.sizes;
    for (auto n : grid) {
      if (n > space.size()) throw InvalidArgument("sweep: size exceeds q^d");
    }
  }

  std::unique_ptr<CharacterTable> chars;
  std::vector<FourierTable> radii;

  for (auto size : grid) {
    SweepSummary summary{size, config.trials, 0, 0};
    for (unsigned trial = 0; trial < config.trials; ++trial) {
      const auto start = std::chrono::steady_clock::now();
      SweepRecord rec;
      rec.q = q;
      rec.d = config.d;
      rec.k = k;
      rec.size = size;
      rec.trial = trial;
      rec.substream = substream_id(config.seed, trial);
      const PointSet set = forced ? *forced : sample_set(space, config.seed, size, trial);
      const auto dist = distance_set(set, k);
      std::vector<bool> hit(q, false);
      for (auto t : dist) hit[t.index] = true;
      for (std::uint32_t t = 0; t < q; ++t) {
        if (!hit[t]) rec.missing_radii.push_back({t});
      }
      rec.full_coverage = rec.missing_radii.empty();

      if (splitmix64(rec.substream ^ kCrossCheckSalt) % 20 == 0) {
        if (!chars) {
          chars = std::make_unique<CharacterTable>(field);
          radii = sphere_ft_all_radii(*chars, space, k, FtMode::closed);
        }
        for (const auto& report : nu_spectrum(*chars, set, k, &radii)) {
          const bool positive = report.direct > 0;
          if (!report.equal || positive != hit[report.t.index]) result.cross_check_ok = false;
        }
        rec.cross_checked = true;
      }
      rec.runtime_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      summary.covered += rec.full_coverage;
      result.records.push_back(std::move(rec));
    }
    summary.fraction = Rational(summary.covered, summary.trials);
    summary.fraction.canonicalize();
    result.summaries.push_back(summary);
  }
  return result;
}

}  // namespace ffdist
