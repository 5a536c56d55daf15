#pragma once

#include <span>
#include <vector>

#include "arcfit/spline_longest.hpp"

namespace arcfit {

/// Greedy C0 window selection: at each start, the default pair (split at the
/// full window end) competes against every interior split by the number of
/// points the two chained arcs would cover; the winner fixes the next start.
/// Nonzero entries always chain: next start = previous start + g - 1.
std::vector<int> select_g_c0(std::span<const int> m);

/// One constrained arc per selected window; consecutive arcs share endpoints
/// exactly. A chain ending one point early is completed with a segment.
/// Windows whose re-fit exceeds epsilon are split at their midpoint.
SplineBuild build_spline_c0(std::span<const Point2> pts, std::span<const int> g,
                            double epsilon, const MinimizeOptions* fit_opts = nullptr);

}  // namespace arcfit
