#include "gue/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gue {

QuadratureRule gauss_legendre(int m, double a, double b) {
    if (m < 1) {
        throw std::invalid_argument("gauss_legendre: node count must be >= 1, got " + std::to_string(m));
    }
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw std::invalid_argument("gauss_legendre: invalid interval");
    }

    QuadratureRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(m);
    rule.weights.resize(m);

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int pairs = (m + 1) / 2;

    for (int i = 0; i < pairs; ++i) {
        // Tricomi-style initial guess for the i-th largest root
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        bool converged = false;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pm = (m == 1) ? x : p1;
            const double pm1 = (m == 1) ? 1.0 : p0;
            dp = m * (x * pm - pm1) / (x * x - 1.0);
            const double dx = pm / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16 * (1.0 + std::abs(x))) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw std::runtime_error("gauss_legendre: Newton iteration did not converge for m=" + std::to_string(m));
        }
        // refresh derivative at the converged root
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= m; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (m == 1) {
            x = 0.0;
            dp = 1.0;
        } else {
            dp = m * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        const int lo = i;
        const int hi = m - 1 - i;
        rule.nodes[lo] = mid - half * x;
        rule.nodes[hi] = mid + half * x;
        rule.weights[lo] = half * w;
        rule.weights[hi] = half * w;
    }
    if (m % 2 == 1) {
        rule.nodes[m / 2] = mid;
    }
    return rule;
}

namespace {

constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
constexpr long double kAip0 = 0.258819403792806798405183560189203963L;  // -Ai'(0)

double pow_quarter(double x) { return std::sqrt(std::sqrt(x)); }

}  // namespace

AiryValue airy_maclaurin(double xd) {
    const long double x = xd;
    const long double x3 = x * x * x;

    // f, g: the two power series with Ai = c1 f - c2 g
    long double f = 1.0L, tf = 1.0L;
    long double g = x, tg = x;
    long double fp = 0.0L, tfp = x * x / 2.0L;
    long double gp = 1.0L, tgp = 1.0L;
    fp = tfp;

    for (int k = 0; k < 400; ++k) {
        const long double k3 = 3.0L * k;
        tf *= x3 / ((k3 + 2.0L) * (k3 + 3.0L));
        tg *= x3 / ((k3 + 3.0L) * (k3 + 4.0L));
        tgp *= x3 / ((k3 + 1.0L) * (k3 + 3.0L));
        f += tf;
        g += tg;
        gp += tgp;
        if (k >= 1) {
            tfp *= x3 / (k3 * (k3 + 2.0L));
            fp += tfp;
        }
        const long double scale = std::fabs(f) + std::fabs(g) + std::fabs(fp) + std::fabs(gp) + 1e-300L;
        const long double tail = std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp);
        if (k > 2 && tail < 1e-22L * scale) {
            break;
        }
    }
    return {static_cast<double>(kAi0 * f - kAip0 * g), static_cast<double>(kAi0 * fp - kAip0 * gp)};
}

AiryValue airy_asymptotic(double x) {
    const double t = std::abs(x);
    const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
    const double sqrtpi = std::sqrt(std::numbers::pi);

    // u_k, v_k coefficients up to optimal truncation
    constexpr int kMaxTerms = 60;
    double u[kMaxTerms];
    double v[kMaxTerms];
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k < kMaxTerms; ++k) {
        u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
    }

    if (x > 0.0) {
        double su = 0.0, sv = 0.0;
        double zk = 1.0;
        double prev = INFINITY;
        for (int k = 0; k < kMaxTerms; ++k) {
            const double term = u[k] * zk;
            if (std::abs(term) > prev) break;
            prev = std::abs(term);
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            su += sign * term;
            sv += sign * v[k] * zk;
            if (prev < 1e-18) break;
            zk /= zeta;
        }
        const double e = std::exp(-zeta) / (2.0 * sqrtpi);
        if (e == 0.0) return {0.0, 0.0};
        const double q = pow_quarter(t);
        return {e / q * su, -e * q * sv};
    }

    // oscillatory side: even and odd partial sums
    double ue = 0.0, uo = 0.0, ve = 0.0, vo = 0.0;
    double zk = 1.0;
    double prev = INFINITY;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double term = u[k] * zk;
        if (std::abs(term) > prev) break;
        prev = std::abs(term);
        const int half = k / 2;
        const double sign = (half % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            ue += sign * term;
            ve += sign * v[k] * zk;
        } else {
            uo += sign * term;
            vo += sign * v[k] * zk;
        }
        if (prev < 1e-18) break;
        zk /= zeta;
    }
    const double phase = zeta - 0.25 * std::numbers::pi;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const double q = pow_quarter(t);
    return {(c * ue + s * uo) / (sqrtpi * q), q * (s * ve - c * vo) / sqrtpi};
}

AiryValue airy(double x) {
    if (x > kAiryPositiveSwitch || x < kAiryNegativeSwitch) {
        return airy_asymptotic(x);
    }
    return airy_maclaurin(x);
}

double airy_ai(double x) { return airy(x).ai; }
double airy_ai_prime(double x) { return airy(x).aip; }

std::vector<double> hermite_functions(int kmax, double u) {
    if (kmax < 0) {
        throw std::invalid_argument("hermite_functions: negative degree");
    }
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1);

    constexpr double kRescale = 1e150;
    const double log_rescale = std::log(kRescale);
    // phi_0 = pi^{-1/4} exp(-u^2/2); keep the exponent in log form
    double log_scale = -0.5 * u * u - 0.25 * std::log(std::numbers::pi);
    double factor = std::exp(log_scale);

    double prev = 0.0;
    double cur = 1.0;
    out[0] = factor;
    for (int k = 0; k < kmax; ++k) {
        const double next = std::sqrt(2.0 / (k + 1.0)) * u * cur - std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescale) {
            cur /= kRescale;
            prev /= kRescale;
            log_scale += log_rescale;
            factor = std::exp(log_scale);
        }
        out[k + 1] = cur * factor;
    }
    return out;
}

std::vector<double> hermite_psi_all(int n, int kmax, double x) {
    if (n < 1) {
        throw std::invalid_argument("hermite_psi_all: n must be >= 1");
    }
    const double half_n = 0.5 * n;
    auto phi = hermite_functions(kmax, std::sqrt(half_n) * x);
    const double norm = pow_quarter(half_n);
    for (auto& v : phi) v *= norm;
    return phi;
}

HermiteEvaluation hermite_psi(int n, int k, double x, bool with_derivative) {
    if (n < 1) {
        throw std::invalid_argument("hermite_psi: n must be >= 1");
    }
    if (k < 0 || k > n) {
        throw std::out_of_range("hermite_psi: degree k=" + std::to_string(k) + " outside [0, " + std::to_string(n) +
                                "]");
    }
    const double half_n = 0.5 * n;
    const double root = std::sqrt(half_n);
    const double u = root * x;
    const auto phi = hermite_functions(k, u);
    const double norm = pow_quarter(half_n);

    HermiteEvaluation ev;
    ev.n = n;
    ev.k = k;
    ev.value = norm * phi[k];
    if (with_derivative) {
        const double lower = (k > 0) ? phi[k - 1] : 0.0;
        const double dphi = std::sqrt(2.0 * k) * lower - u * phi[k];
        ev.derivative = norm * root * dphi;
    }
    return ev;
}

}  // namespace gue
