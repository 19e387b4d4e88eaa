#pragma once

#include <cstdint>

#include "kcmpc/geometry.hpp"

namespace kcmpc {

/// Random projection x -> (1/sqrt(d')) * M x with i.i.d. standard Gaussian M.
/// Linear, so distance 0 is preserved exactly; pairwise distances distort by
/// (1 +- 1/2) with high probability at d' = ceil(32 ln n).
Dataset jl_transform(const Dataset& P, std::size_t target_dim, std::uint64_t seed);

} // namespace kcmpc
