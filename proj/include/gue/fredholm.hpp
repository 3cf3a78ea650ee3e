#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gue/counting.hpp"
#include "gue/kernels.hpp"
#include "gue/specfun.hpp"

namespace gue {

using cdouble = std::complex<double>;

/// Default Nystrom points per interval: 40 in the bulk, 60 at the edges.
int default_quadrature_points(const ScaledWindow& w);

/// Nystrom discretization of S_n(x, y; lambda, Delta_n) over a disjoint union
/// of realized windows. All nodes lie inside the windows, so the matrix is the
/// bounded kernel restricted to the union on both sides.
class MultiWindowOperator {
public:
    /// Throws std::invalid_argument on overlapping or zero-measure windows,
    /// or m < 4.
    static MultiWindowOperator discretize(int n, std::vector<ScaledWindow> windows, int m);
    static MultiWindowOperator discretize(int n, std::vector<ScaledWindow> windows, std::vector<int> m_per_window);
    /// 40 points per bulk interval, 60 per edge interval.
    static MultiWindowOperator discretize(int n, std::vector<ScaledWindow> windows);

    int n() const { return n_; }
    const std::vector<ScaledWindow>& windows() const { return windows_; }
    std::size_t window_count() const { return windows_.size(); }
    std::size_t dimension() const { return static_cast<std::size_t>(nodes_.size()); }
    std::size_t block_offset(std::size_t i) const { return offsets_[i]; }
    std::size_t block_size(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }
    std::size_t block_of(std::size_t node) const { return owner_[node]; }

    const Eigen::VectorXd& nodes() const { return nodes_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    /// A[a, b] = K_n(x_a, x_b), exactly symmetric.
    const Eigen::MatrixXd& kernel_matrix() const { return kernel_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    /// B(lambda) = diag(lambda_block * w) A
    Eigen::MatrixXcd weighted(std::span<const cdouble> lambda) const;
    Eigen::MatrixXd weighted(std::span<const double> lambda) const;
    /// diag(sqrt(lambda w)) A diag(sqrt(lambda w)); requires lambda >= 0.
    Eigen::MatrixXd symmetrized(std::span<const double> lambda) const;

    /// The single-window operator on block i, sharing nodes and kernel values.
    MultiWindowOperator block(std::size_t i) const;

private:
    MultiWindowOperator() = default;

    int n_ = 0;
    std::vector<ScaledWindow> windows_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> owner_;
    Eigen::VectorXd nodes_;
    Eigen::VectorXd weights_;
    Eigen::MatrixXd kernel_;
    std::vector<std::string> warnings_;
};

/// det(I - z B(lambda)) by partial-pivot LU.
cdouble fredholm_det(const MultiWindowOperator& op, cdouble z, std::span<const cdouble> lambda);
double fredholm_det(const MultiWindowOperator& op, double z, std::span<const double> lambda);

/// P(no eigenvalue in any window) = det(I - B(1)).
double gap_probability(const MultiWindowOperator& op);

/// Eigenvalues of the symmetrized operator, ascending. lambda >= 0.
Eigen::VectorXd operator_eigenvalues(const MultiWindowOperator& op, std::span<const double> lambda);

struct TraceSplit {
    std::vector<double> total;                   // T(k), k = 1..kmax
    std::vector<std::vector<double>> per_window;  // T_i(k)
    std::vector<double> remainder;               // s(k) = T(k) - sum_i T_i(k); s(1) = 0
};

TraceSplit trace_powers(const MultiWindowOperator& op, std::span<const double> lambda, int kmax);

/// D'(z)/D(z) = -trace((I - zB)^{-1} B). Throws std::domain_error when
/// I - zB is numerically singular (z at an inverse eigenvalue).
cdouble log_derivative(const MultiWindowOperator& op, std::span<const cdouble> lambda, cdouble z);

/// Fredholm defect d_n(z, lambda) = D_n(z, lambda) - prod_i D_{i,n}(z, lambda_i).
cdouble independence_defect_det(const MultiWindowOperator& op, cdouble z, std::span<const cdouble> lambda);
cdouble independence_defect_det(int n, const std::vector<ScaledWindow>& windows, cdouble z,
                                std::span<const cdouble> lambda);

struct ContourOptions {
    double radius = 0.5;
    /// Points per variable; 0 picks 64, halved while q^p exceeds 8192 as long
    /// as q stays above 2 (lmax + 1).
    int points = 0;
    int max_retries = 3;
};

int contour_points_for(std::size_t windows, int lmax, const ContourOptions& opts);

/// Joint and marginal occupancy tables via Cauchy-contour extraction of
/// lambda-derivatives of det(I - S_n(lambda)) at lambda = 1.
CountingDistribution counting_joint_pmf(const MultiWindowOperator& op, std::vector<int> lmax,
                                        const ContourOptions& opts = {});
CountingDistribution counting_joint_pmf(int n, const std::vector<ScaledWindow>& windows, std::vector<int> lmax,
                                        int m, const ContourOptions& opts = {});

/// Occupancy distribution of a single window from the eigenvalues of the
/// symmetrized operator (generating function prod (1 - lambda mu_k)).
std::vector<double> single_window_pmf_from_spectrum(const MultiWindowOperator& op, int lmax);

struct HadamardReport {
    bool passed = true;
    int draws = 0;
    double worst_ratio = 0.0;  // max |det| / bound
};

/// Draws random k-point configurations in the realized windows and checks
/// |det S(x_i, x_j)| <= prod_i sqrt(sum_j |S(x_i, x_j)|^2).
HadamardReport hadamard_bound_check(const MultiWindowOperator& op, std::span<const double> lambda, int k,
                                    int draws = 200, std::uint64_t seed = 1);

/// Sup over each block pair (m, l) of the discretized iterated kernel |S_n|^(k),
/// k = 1..kmax. Entry [k-1](m, l).
std::vector<Eigen::MatrixXd> iterated_kernel_sup(const MultiWindowOperator& op, std::span<const double> lambda,
                                                 int kmax);

}  // namespace gue
