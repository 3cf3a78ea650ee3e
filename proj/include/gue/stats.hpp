#pragma once

#include <functional>
#include <vector>

namespace gue {

struct KsTest {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// sup |F_emp - F| for a continuous reference CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
/// distribution (Stephens' small-sample correction).
KsTest ks_two_sample(std::vector<double> a, std::vector<double> b);

/// P(K > lambda) for the limiting Kolmogorov distribution.
double kolmogorov_survival(double lambda);

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_survival(double statistic, int dof);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    /// Categories kept per axis after pooling (last category is ">= that value").
    std::vector<int> categories;
    int lumped_cells = 0;
};

/// Pearson test of mutual independence of p integer-valued coordinates.
/// Values >= lmax_i are pooled into a tail bin; axes are then collapsed from
/// the top while any cell has expected count < 5, and if that is not enough
/// the remaining sparse cells are merged into one.
ChiSquareResult chi_square_independence(const std::vector<std::vector<int>>& observations, const std::vector<int>& lmax);

}  // namespace gue
