#include "gue/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gue {

double clip_probability(double p, int& clipped) {
    if (p < -kProbabilitySlack || p > 1.0 + kProbabilitySlack || !std::isfinite(p)) ++clipped;
    if (!std::isfinite(p)) return 0.0;
    return std::clamp(p, 0.0, 1.0);
}

std::size_t CountingDistribution::flat_index(std::span<const int> occupancy) const {
    if (occupancy.size() != lmax.size()) {
        throw std::invalid_argument("CountingDistribution: occupancy vector has wrong length");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < lmax.size(); ++i) {
        if (occupancy[i] < 0 || occupancy[i] > lmax[i]) {
            throw std::out_of_range("CountingDistribution: occupancy outside table");
        }
        idx = idx * static_cast<std::size_t>(lmax[i] + 1) + static_cast<std::size_t>(occupancy[i]);
    }
    return idx;
}

std::vector<int> CountingDistribution::occupancy_of(std::size_t flat) const {
    std::vector<int> occ(lmax.size());
    for (std::size_t i = lmax.size(); i-- > 0;) {
        const auto base = static_cast<std::size_t>(lmax[i] + 1);
        occ[i] = static_cast<int>(flat % base);
        flat /= base;
    }
    return occ;
}

double CountingDistribution::joint_sum() const {
    double s = 0.0;
    for (double v : joint) s += v;
    return s;
}

std::vector<double> CountingDistribution::marginal_of_joint(std::size_t i) const {
    std::vector<double> out(static_cast<std::size_t>(lmax.at(i) + 1), 0.0);
    for (std::size_t c = 0; c < joint.size(); ++c) {
        out[occupancy_of(c)[i]] += joint[c];
    }
    return out;
}

double CountingDistribution::max_abs_defect(int cap) const {
    double worst = 0.0;
    for (std::size_t c = 0; c < defect.size(); ++c) {
        const auto occ = occupancy_of(c);
        if (std::any_of(occ.begin(), occ.end(), [cap](int l) { return l > cap; })) continue;
        worst = std::max(worst, std::abs(defect[c]));
    }
    return worst;
}

void CountingDistribution::fill_defect() {
    defect.assign(joint.size(), 0.0);
    for (std::size_t c = 0; c < joint.size(); ++c) {
        const auto occ = occupancy_of(c);
        double prod = 1.0;
        for (std::size_t i = 0; i < occ.size(); ++i) prod *= marginals[i][occ[i]];
        defect[c] = joint[c] - prod;
    }
    if (lmax.size() == 1) std::fill(defect.begin(), defect.end(), 0.0);
}

}  // namespace gue
