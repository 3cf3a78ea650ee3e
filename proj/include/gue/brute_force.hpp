#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gue/counting.hpp"
#include "gue/kernels.hpp"

namespace gue {

/// Half-width of the integration box |x_i| <= L used by the small-n oracles.
inline constexpr double kBruteForceBox = 8.0;

/// Integrates f(labels) p_n(x_1..x_n) over the box by tensor Gauss-Legendre
/// quadrature, with p_n = det{K_n(x_i, x_j)} / n!. The line is split at every
/// realized window endpoint so the integrand is smooth on each tensor cell;
/// labels[i] is the window containing x_i, or -1. Only n in {1, 2, 3}.
double brute_force_expectation(int n, const std::vector<ScaledWindow>& windows,
                               const std::function<double(std::span<const int>)>& f, int points_per_segment = 40);

/// Joint occupancy table by direct integration of the determinantal density.
/// Table bounds are lmax_i = n.
CountingDistribution brute_force_joint_pmf(int n, const std::vector<ScaledWindow>& windows,
                                           int points_per_segment = 40);

}  // namespace gue
