#pragma once

#include <string>
#include <vector>

namespace gue {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x < hi; }  // half-open [lo, hi)
};

/// A spectral window mu + Delta / n^kappa.
///
/// The base set Delta is a finite union of bounded, pairwise disjoint intervals
/// (kept sorted). kappa defaults to 2/3 at the edges mu = +-2 and to 1 in the
/// bulk; an explicit override is allowed, and kappa = 0 means "raw" (the base
/// set is used unscaled at every n).
class ScaledWindow {
public:
    ScaledWindow(double center, std::vector<Interval> base);
    ScaledWindow(double center, std::vector<Interval> base, double kappa);

    static ScaledWindow left_edge(Interval base) { return ScaledWindow(-2.0, {base}); }
    static ScaledWindow right_edge(Interval base) { return ScaledWindow(2.0, {base}); }
    static ScaledWindow bulk(double center, Interval base) { return ScaledWindow(center, {base}); }
    static ScaledWindow raw(Interval base) { return ScaledWindow(0.0, {base}, 0.0); }

    double center() const { return center_; }
    double kappa() const { return kappa_; }
    const std::vector<Interval>& base() const { return base_; }

    bool is_left_edge() const { return center_ == -2.0 && kappa_ == 2.0 / 3.0; }
    bool is_right_edge() const { return center_ == 2.0 && kappa_ == 2.0 / 3.0; }
    bool is_bulk() const { return kappa_ == 1.0; }

    /// n^kappa
    double scale(int n) const;
    std::vector<Interval> realize(int n) const;
    /// |Delta| n^{-kappa}
    double realized_measure(int n) const;
    double base_measure() const;
    Interval bounding_box() const { return {base_.front().lo, base_.back().hi}; }

    std::string describe() const;

private:
    double center_;
    double kappa_;
    std::vector<Interval> base_;
};

/// Default exponent: 2/3 at mu = +-2, 1 otherwise.
double default_kappa(double center);

/// True if the realized windows are pairwise disjoint at this n.
bool windows_disjoint(const std::vector<ScaledWindow>& windows, int n);

/// Smallest n' >= 1 such that the windows are disjoint for every n in
/// [n', n_max]; returns -1 if they overlap at n_max.
int disjointness_threshold(const std::vector<ScaledWindow>& windows, int n_max = 1 << 20);

/// Semicircle density sqrt(4 - mu^2) / (2 pi); zero outside (-2, 2).
double semicircle_density(double mu);

/// Below this separation K_n switches from Christoffel-Darboux to the direct sum.
double kernel_diagonal_threshold(double x, double y);

/// K_n(x, y) = sum_{k<n} psi_k(x) psi_k(y).
double kn(int n, double x, double y);
/// K_n from precomputed psi_0..psi_n at both points.
double kn_from_psi(const std::vector<double>& psi_x, const std::vector<double>& psi_y, double x, double y);
double kn_sum_form(int n, double x, double y);
double kn_christoffel_darboux(int n, double x, double y);

double sine_kernel(double rho, double x, double y);
double airy_kernel(double x, double y);

/// n^{-kappa} K_n(mu + u/n^kappa, mu + v/n^kappa)
double scaled_kn(int n, const ScaledWindow& w, double u, double v);

/// The n -> infinity limit of scaled_kn: sine kernel with rho(mu) in the bulk,
/// Airy kernel at mu = 2 and the reflected Airy kernel at mu = -2.
double limit_kernel(const ScaledWindow& w, double u, double v);

/// Max |K_n| over a grid x grid lattice of the two realized windows.
/// Requires grid >= 16.
double kernel_sup(int n, const ScaledWindow& w1, const ScaledWindow& w2, int grid = 64);

/// Max over a grid x grid lattice of the bounding box of |scaled_kn - limit_kernel|.
double scaled_kernel_sup_error(int n, const ScaledWindow& w, int grid = 64);

}  // namespace gue
