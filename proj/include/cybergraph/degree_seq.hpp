#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cybergraph/dist_fit.hpp"
#include "cybergraph/errors.hpp"
#include "cybergraph/rng.hpp"

namespace cybergraph {

/// Havel-Hakimi test: repeatedly remove the largest entry v and decrement
/// the next v largest. Realizable as a simple graph iff this reaches all zeros.
inline bool is_graphical(std::span<const std::size_t> sequence) {
  std::vector<std::size_t> s(sequence.begin(), sequence.end());
  if (std::accumulate(s.begin(), s.end(), std::size_t{0}) % 2 != 0) return false;
  std::sort(s.begin(), s.end(), std::greater<>());
  while (!s.empty() && s.front() > 0) {
    const std::size_t v = s.front();
    s.erase(s.begin());
    if (v > s.size()) return false;
    for (std::size_t i = 0; i < v; ++i) {
      if (s[i] == 0) return false;
      --s[i];
    }
    std::sort(s.begin(), s.end(), std::greater<>());
  }
  return true;
}

/// Target degree per node, realizable as a simple graph.
struct DegreeSequence {
  std::vector<std::size_t> degrees;
  std::size_t target_edges = 0;

  std::size_t node_count() const { return degrees.size(); }
  std::size_t degree_sum() const { return std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}); }

  /// Builds from raw degrees; the edge count is half the sum.
  static DegreeSequence from_degrees(std::vector<std::size_t> degrees) {
    DegreeSequence s;
    s.degrees = std::move(degrees);
    const std::size_t sum = s.degree_sum();
    if (sum % 2 != 0) throw InputError("degree sum " + std::to_string(sum) + " is odd");
    s.target_edges = sum / 2;
    return s;
  }
};

struct SequenceRequest {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d_max = 10;
  DistributionSpec spec = DistributionSpec::lognormal(1.371, 1.986);
  std::uint64_t seed = 0;
  std::size_t max_attempts = 100'000;
  /// Nudge draws toward the target sum instead of rejecting them.
  bool repair = false;

  void validate() const {
    if (n < 2) throw InputError("need at least 2 nodes");
    if (d_max < 1) throw InputError("maximum degree must be >= 1");
    if (m + 1 < n) throw InputError("m must be at least n-1 for a connected graph");
    if (2 * m > n * d_max) throw InputError("m exceeds n * d_max / 2");
    if (2 * m < n) throw InputError("m below n / 2 leaves a node without edges");
    spec.validate();
  }
};

/// Stream id used for sequence sampling so a given seed's sequence does not
/// overlap the generator's streams.
inline constexpr std::uint64_t kSequenceStream = 0x5e9u;

/// Draws n i.i.d. degrees from 1..d_max weighted by frequency_of(spec) until
/// the draw sums to 2m and is graphical. Throws AlgorithmError after
/// max_attempts draws.
inline DegreeSequence sample_sequence(const SequenceRequest& req, Rng& rng) {
  req.validate();
  const auto probs = frequency_of(req.spec, req.d_max);
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());

  auto draw_degree = [&] {
    const double u = rng.uniform01();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    return static_cast<std::size_t>(it - cdf.begin()) + 1;
  };

  const std::size_t target = 2 * req.m;
  std::vector<std::size_t> s(req.n);
  for (std::size_t attempt = 1; attempt <= req.max_attempts; ++attempt) {
    std::size_t sum = 0;
    for (auto& d : s) {
      d = draw_degree();
      sum += d;
    }
    if (req.repair) {
      while (sum != target) {
        auto& d = s[rng.below(s.size())];
        if (sum < target && d < req.d_max) {
          ++d;
          ++sum;
        } else if (sum > target && d > 1) {
          --d;
          --sum;
        }
      }
    } else if (sum != target) {
      continue;
    }
    if (is_graphical(s)) return DegreeSequence{s, req.m};
  }
  throw AlgorithmError("no valid degree sequence for n=" + std::to_string(req.n) + ", m=" + std::to_string(req.m) +
                       " after " + std::to_string(req.max_attempts) + " attempts");
}

inline DegreeSequence sample_sequence(const SequenceRequest& req) {
  Rng rng = Rng::stream(req.seed, kSequenceStream);
  return sample_sequence(req, rng);
}

}  // namespace cybergraph
