#pragma once

#include "cybergraph/assignment.hpp"
#include "cybergraph/baselines.hpp"
#include "cybergraph/degree_seq.hpp"
#include "cybergraph/dist_fit.hpp"
#include "cybergraph/errors.hpp"
#include "cybergraph/generator.hpp"
#include "cybergraph/graph.hpp"
#include "cybergraph/io.hpp"
#include "cybergraph/metrics.hpp"
#include "cybergraph/reference.hpp"
#include "cybergraph/rng.hpp"

namespace cybergraph {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace cybergraph
