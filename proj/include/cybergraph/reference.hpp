#pragma once

#include <cstddef>
#include <vector>

#include "cybergraph/dist_fit.hpp"

// Reference smart-grid communication system. Only its degree histogram and
// published global characteristics are available, not the edge list, so
// everything except n, m and rho is a constant here rather than recomputed.
namespace cybergraph::reference {

inline DegreeCountVector degree_counts() {
  return DegreeCountVector({162, 101, 30, 25, 11, 4, 3, 4, 2, 1});
}

inline constexpr std::size_t kNodes = 343;
inline constexpr std::size_t kEdges = 357;
inline constexpr double kDensity = 1.04;
inline constexpr std::size_t kDiameter = 28;
inline constexpr double kAvgShortestPath = 11.47;
inline constexpr double kClustering = 0.05;
inline constexpr double kAssortativity = -0.22;
inline constexpr double kSpectralGap = 1.16e-3;

/// Fitted lognormal law used for synthetic sequences.
inline DistributionSpec default_law() { return DistributionSpec::lognormal(1.371, 1.986); }

}  // namespace cybergraph::reference
