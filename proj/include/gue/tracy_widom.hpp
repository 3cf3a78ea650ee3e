#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gue {

/// Tabulated CDF on a strictly increasing grid.
struct CdfTable {
    std::vector<double> grid;
    std::vector<double> values;
    std::string route;
    int resolution = 0;

    /// Linear interpolation, clamped to the end values outside the grid.
    double operator()(double s) const;
    bool monotone() const;
};

inline constexpr double kTwMinArgument = -12.0;
inline constexpr double kTwMaxArgument = 8.0;
inline constexpr int kTwDefaultPoints = 200;

/// F+(s) = det(I - K_Ai) on L^2(s, inf), Nystrom with m Gauss-Legendre points
/// after x = s + 10 (1 + t) / (1 - t). Throws std::out_of_range outside [-12, 8].
double tw_cdf_plus(double s, int m = kTwDefaultPoints);

/// F-(s) = 1 - F+(-s).
double tw_cdf_minus(double s, int m = kTwDefaultPoints);

std::vector<double> uniform_grid(double lo, double hi, double step);

CdfTable tw_plus_table(const std::vector<double>& grid, int m = kTwDefaultPoints);
/// Evaluated as 1 - F+(-s) pointwise.
CdfTable tw_minus_table(const std::vector<double>& grid, int m = kTwDefaultPoints);

class PainleveBlowUp : public std::runtime_error {
public:
    PainleveBlowUp(double x, double q);
    double x;
    double q;
};

/// Hastings-McLeod solution on a uniform grid of x from x0 down to xmin,
/// with the running tails m0(x) = int_x^inf q^2 and m1(x) = int_x^inf y q^2.
struct PainleveSolution {
    double anchor = 0.0;
    double step = 0.0;
    std::vector<double> x;  // descending from anchor
    std::vector<double> q;
    std::vector<double> qp;
    std::vector<double> m0;
    std::vector<double> m1;
    int accepted_steps = 0;
    int rejected_steps = 0;

    /// F+(s) = exp(-int_s^inf (x - s) q(x)^2 dx) at a grid point s.
    double cdf_at(std::size_t i) const;
    /// Linear interpolation of cdf_at in x.
    double cdf(double s) const;
    /// max |q'' - x q - 2 q^3| over the interior, q'' from a fourth-order
    /// central difference of q'.
    double max_residual() const;
};

/// Adaptive Dormand-Prince 5(4) integration of q'' = x q + 2 q^3 downward
/// from amplitude * (Ai, Ai')(x0); amplitude 1 is Hastings-McLeod. Requires
/// xmin >= -8 and x0 in [6, 10]. Throws PainleveBlowUp when |q| exceeds 1e3.
PainleveSolution painleve_q(double xmin, double x0 = 8.0, double output_step = 0.01, double tolerance = 1e-12,
                            double amplitude = 1.0);

/// CDF of U = -(L- + L+)/2 with L- ~ F-, L+ ~ F+ independent, by
/// convolution of central-difference densities (step 0.02). Table on [-8, 8].
/// Throws std::runtime_error if more than 1e-5 of the mass falls off the grid.
CdfTable condition_limit_table(int m = kTwDefaultPoints, double step = 0.02);

/// Cached condition_limit_table(); t in [-8, 8].
double condition_limit_cdf(double t);

/// Default F+ grid [-10, 6].
inline constexpr double kTwGridMin = -10.0;
inline constexpr double kTwGridMax = 6.0;

}  // namespace gue
