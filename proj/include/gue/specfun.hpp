#pragma once

#include <optional>
#include <vector>

namespace gue {

/// Gauss-Legendre rule mapped onto a finite interval (a, b).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = -1.0;
    double b = 1.0;

    std::size_t size() const { return nodes.size(); }
};

/// m-point Gauss-Legendre rule on (a, b). Nodes come from Newton iteration on
/// the Legendre three-term recurrence. Throws std::invalid_argument for m < 1
/// or a non-finite / empty interval.
QuadratureRule gauss_legendre(int m, double a, double b);

struct AiryValue {
    double ai;
    double aip;
};

/// Ai(x) and Ai'(x). Maclaurin series near the origin (summed in long double),
/// asymptotic expansions in both tails. Absolute error below 1e-10 on [-15, 15].
AiryValue airy(double x);
double airy_ai(double x);
double airy_ai_prime(double x);

/// Crossover points between the Maclaurin series and the asymptotic forms.
inline constexpr double kAiryPositiveSwitch = 6.0;
inline constexpr double kAiryNegativeSwitch = -8.0;

/// Series and asymptotic branches exposed separately so the crossover can be
/// validated by overlap.
AiryValue airy_maclaurin(double x);
AiryValue airy_asymptotic(double x);

struct HermiteEvaluation {
    int n = 1;
    int k = 0;
    double value = 0.0;
    std::optional<double> derivative;
};

/// psi_k^(n)(x) = (n/2)^{1/4} phi_k(sqrt(n/2) x), where phi_k are the
/// orthonormal Hermite functions. Valid for 0 <= k <= n.
HermiteEvaluation hermite_psi(int n, int k, double x, bool with_derivative = false);

/// Orthonormal Hermite functions phi_0..phi_kmax at u.
///
/// The upward recurrence runs on rescaled values with a separately tracked
/// log-magnitude, so exp(-u^2/2) never underflows before the polynomial part
/// has grown. Entries that are genuinely below the double range come out as 0.
std::vector<double> hermite_functions(int kmax, double u);

/// psi_0^(n)..psi_kmax^(n) at x.
std::vector<double> hermite_psi_all(int n, int kmax, double x);

}  // namespace gue
