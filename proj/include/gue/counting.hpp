#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gue/kernels.hpp"

namespace gue {

/// Joint occupancy table P(N(Delta_1) = l_1, ..., N(Delta_p) = l_p) for
/// 0 <= l_i <= lmax_i, stored row-major with the last window varying fastest.
struct CountingDistribution {
    std::vector<ScaledWindow> windows;
    std::vector<int> lmax;
    std::vector<double> joint;
    std::vector<std::vector<double>> marginals;
    std::vector<double> defect;  // joint - prod marginals

    /// Entries that fell outside [-1e-8, 1 + 1e-8] before clipping to [0, 1].
    int clipped = 0;
    /// 1 - sum(joint): probability of occupancies beyond the table.
    double remainder = 0.0;

    std::size_t window_count() const { return lmax.size(); }
    std::size_t cell_count() const { return joint.size(); }
    std::size_t flat_index(std::span<const int> occupancy) const;
    std::vector<int> occupancy_of(std::size_t flat) const;

    double joint_at(std::span<const int> occupancy) const { return joint[flat_index(occupancy)]; }
    double defect_at(std::span<const int> occupancy) const { return defect[flat_index(occupancy)]; }

    double joint_sum() const;
    /// Sum of the joint table over every coordinate except window i.
    std::vector<double> marginal_of_joint(std::size_t i) const;
    /// max |defect| over cells with every l_i <= cap.
    double max_abs_defect(int cap) const;

    /// Fills defect from joint and marginals.
    void fill_defect();
};

inline constexpr double kProbabilitySlack = 1e-8;

/// Clips to [0, 1]; bumps `clipped` when the raw value is outside the slack band.
double clip_probability(double p, int& clipped);

}  // namespace gue
