#include "gue/tracy_widom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

#include <Eigen/Dense>

#include "gue/parallel.hpp"
#include "gue/specfun.hpp"

namespace gue {

double CdfTable::operator()(double s) const {
    if (grid.empty()) throw std::logic_error("CdfTable: empty table");
    if (s <= grid.front()) return values.front();
    if (s >= grid.back()) return values.back();
    const auto it = std::upper_bound(grid.begin(), grid.end(), s);
    const std::size_t j = static_cast<std::size_t>(it - grid.begin());
    const double t = (s - grid[j - 1]) / (grid[j] - grid[j - 1]);
    return values[j - 1] + t * (values[j] - values[j - 1]);
}

bool CdfTable::monotone() const {
    for (std::size_t j = 1; j < values.size(); ++j) {
        if (values[j] < values[j - 1]) return false;
    }
    return true;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(hi > lo) || !(step > 0.0)) throw std::invalid_argument("uniform_grid: need lo < hi and step > 0");
    const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step));
    std::vector<double> g(count + 1);
    for (std::size_t i = 0; i <= count; ++i) g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

double tw_cdf_plus(double s, int m) {
    if (!(s >= kTwMinArgument && s <= kTwMaxArgument)) {
        throw std::out_of_range("tw_cdf_plus: s = " + std::to_string(s) + " outside [-12, 8]");
    }
    if (m < 8) throw std::invalid_argument("tw_cdf_plus: m must be >= 8");
    const auto rule = gauss_legendre(m, -1.0, 1.0);
    std::vector<double> x(m), sw(m);
    std::vector<AiryValue> a(m);
    for (int i = 0; i < m; ++i) {
        const double t = rule.nodes[i];
        x[i] = s + 10.0 * (1.0 + t) / (1.0 - t);
        sw[i] = std::sqrt(rule.weights[i] * 20.0 / ((1.0 - t) * (1.0 - t)));
        a[i] = airy(x[i]);
    }
    Eigen::MatrixXd k(m, m);
    for (int i = 0; i < m; ++i) {
        k(i, i) = 1.0 - sw[i] * sw[i] * (a[i].aip * a[i].aip - x[i] * a[i].ai * a[i].ai);
        for (int j = i + 1; j < m; ++j) {
            const double v = (a[i].ai * a[j].aip - a[j].ai * a[i].aip) / (x[i] - x[j]);
            k(i, j) = k(j, i) = -sw[i] * sw[j] * v;
        }
    }
    return Eigen::PartialPivLU<Eigen::MatrixXd>(k).determinant();
}

double tw_cdf_minus(double s, int m) { return 1.0 - tw_cdf_plus(-s, m); }

namespace {

double clip_unit(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

CdfTable tw_plus_table(const std::vector<double>& grid, int m) {
    CdfTable t;
    t.grid = grid;
    t.values.resize(grid.size());
    t.route = "airy-determinant";
    t.resolution = m;
    parallel_for(grid.size(), [&](std::size_t i) { t.values[i] = clip_unit(tw_cdf_plus(grid[i], m)); });
    return t;
}

CdfTable tw_minus_table(const std::vector<double>& grid, int m) {
    CdfTable t;
    t.grid = grid;
    t.values.resize(grid.size());
    t.route = "airy-determinant-reflected";
    t.resolution = m;
    parallel_for(grid.size(), [&](std::size_t i) { t.values[i] = 1.0 - clip_unit(tw_cdf_plus(-grid[i], m)); });
    return t;
}

PainleveBlowUp::PainleveBlowUp(double x_, double q_)
    : std::runtime_error("painleve_q: |q| = " + std::to_string(std::abs(q_)) + " > 1e3 at x = " +
                         std::to_string(x_) + "; integration left the decaying solution, raise xmin"),
      x(x_),
      q(q_) {}

namespace {

using State = std::array<double, 4>;  // q, q', m0, m1

State rhs(double x, const State& y) {
    return {y[1], x * y[0] + 2.0 * y[0] * y[0] * y[0], -y[0] * y[0], -x * y[0] * y[0]};
}

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

struct StepResult {
    State y;
    double err;
};

StepResult dopri_step(double x, const State& y, double h, double tol) {
    auto comb = [&](std::initializer_list<std::pair<double, const State*>> terms) {
        State out = y;
        for (const auto& [c, k] : terms) {
            for (int i = 0; i < 4; ++i) out[i] += h * c * (*k)[i];
        }
        return out;
    };
    const State k1 = rhs(x, y);
    const State k2 = rhs(x + c2 * h, comb({{a21, &k1}}));
    const State k3 = rhs(x + c3 * h, comb({{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs(x + c4 * h, comb({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = rhs(x + c5 * h, comb({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = rhs(x + h, comb({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State y5 = comb({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = rhs(x + h, y5);
    double err = 0.0;
    // error is controlled on (q, q') relative to their size; the tails follow
    for (int i = 0; i < 2; ++i) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        err = std::max(err, std::abs(ei) / sc);
    }
    return {y5, err};
}

}  // namespace

PainleveSolution painleve_q(double xmin, double x0, double output_step, double tolerance, double amplitude) {
    if (xmin < -8.0) throw std::invalid_argument("painleve_q: xmin must be >= -8");
    if (x0 < 6.0 || x0 > 10.0) throw std::invalid_argument("painleve_q: anchor must lie in [6, 10]");
    if (!(xmin < x0)) throw std::invalid_argument("painleve_q: xmin must be below the anchor");
    if (!(output_step > 0.0)) throw std::invalid_argument("painleve_q: output step must be positive");

    auto ai = airy(x0);
    ai.ai *= amplitude;
    ai.aip *= amplitude;
    PainleveSolution sol;
    sol.anchor = x0;
    sol.step = output_step;
    State y{ai.ai, ai.aip, ai.aip * ai.aip - x0 * ai.ai * ai.ai,
            -(x0 * x0 * ai.ai * ai.ai - x0 * ai.aip * ai.aip + ai.ai * ai.aip) / 3.0};
    auto record = [&](double x) {
        sol.x.push_back(x);
        sol.q.push_back(y[0]);
        sol.qp.push_back(y[1]);
        sol.m0.push_back(y[2]);
        sol.m1.push_back(y[3]);
    };
    record(x0);

    const auto outputs = static_cast<std::size_t>(std::floor((x0 - xmin) / output_step + 1e-9));
    double x = x0;
    double h = -1e-3;
    for (std::size_t k = 1; k <= outputs; ++k) {
        const double target = x0 - output_step * static_cast<double>(k);
        while (x > target) {
            if (x + h < target) h = target - x;
            const auto trial = dopri_step(x, y, h, tolerance);
            if (trial.err <= 1.0) {
                x = (x + h < target + 1e-14) ? target : x + h;
                y = trial.y;
                ++sol.accepted_steps;
                if (std::abs(y[0]) > 1e3 || !std::isfinite(y[0])) throw PainleveBlowUp(x, y[0]);
            } else {
                ++sol.rejected_steps;
            }
            const double factor = trial.err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(trial.err, -0.2), 0.2, 5.0);
            h = std::max(h * factor, -0.1);
            if (std::abs(h) < 1e-12) throw std::runtime_error("painleve_q: step size underflow");
        }
        record(target);
    }
    return sol;
}

double PainleveSolution::cdf_at(std::size_t i) const { return std::exp(-(m1.at(i) - x.at(i) * m0.at(i))); }

double PainleveSolution::cdf(double s) const {
    if (s > anchor || s < x.back()) throw std::out_of_range("PainleveSolution::cdf: s outside the integrated range");
    const double pos = (anchor - s) / step;
    const auto i = std::min(static_cast<std::size_t>(pos), x.size() - 2);
    const double t = pos - static_cast<double>(i);
    return (1.0 - t) * cdf_at(i) + t * cdf_at(i + 1);
}

double PainleveSolution::max_residual() const {
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < x.size(); ++i) {
        // x is descending, so the stencil picks up a sign
        const double qpp = -(-qp[i + 2] + 8.0 * qp[i + 1] - 8.0 * qp[i - 1] + qp[i - 2]) / (12.0 * step);
        worst = std::max(worst, std::abs(qpp - x[i] * q[i] - 2.0 * q[i] * q[i] * q[i]));
    }
    return worst;
}

CdfTable condition_limit_table(int m, double step) {
    // L+ on [-10, 6]; L- = -L+ in law on [-6, 10]
    const auto g = uniform_grid(kTwGridMin, kTwGridMax, step);
    const auto fplus = tw_plus_table(g, m);
    const std::size_t np = g.size();
    std::vector<double> dens(np, 0.0);
    for (std::size_t i = 1; i + 1 < np; ++i) {
        dens[i] = (fplus.values[i + 1] - fplus.values[i - 1]) / (2.0 * step);
    }
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < np; ++i) mass += 0.5 * step * (dens[i] + dens[i + 1]);
    if (std::abs(1.0 - mass) > 1e-5) {
        throw std::runtime_error("condition_limit_table: F+ density grid misses " + std::to_string(1.0 - mass) +
                                 " of the mass");
    }

    // Z = L- + L+ = L+ - L+' ; f_Z(z) = int f(a) f(a - z) da on z = k step
    const auto nz = static_cast<long>(np) - 1;
    std::vector<double> zgrid, fz;
    for (long k = -nz; k <= nz; ++k) {
        double acc = 0.0;
        for (long i = 0; i < static_cast<long>(np); ++i) {
            const long j = i - k;
            if (j < 0 || j >= static_cast<long>(np)) continue;
            const double w = (i == 0 || i == static_cast<long>(np) - 1) ? 0.5 : 1.0;
            acc += w * dens[i] * dens[j];
        }
        zgrid.push_back(step * static_cast<double>(k));
        fz.push_back(acc * step);
    }
    std::vector<double> cz(fz.size(), 0.0);
    for (std::size_t i = 1; i < fz.size(); ++i) cz[i] = cz[i - 1] + 0.5 * step * (fz[i] + fz[i - 1]);
    if (std::abs(1.0 - cz.back()) > 1e-5) {
        throw std::runtime_error("condition_limit_table: convolved mass deficit " + std::to_string(1.0 - cz.back()));
    }
    CdfTable zt;
    zt.grid = zgrid;
    zt.values = cz;

    CdfTable t;
    t.grid = uniform_grid(-8.0, 8.0, step);
    t.values.resize(t.grid.size());
    t.route = "convolution";
    t.resolution = m;
    for (std::size_t i = 0; i < t.grid.size(); ++i) t.values[i] = clip_unit(1.0 - zt(-2.0 * t.grid[i]));
    return t;
}

double condition_limit_cdf(double t) {
    if (!(t >= -8.0 && t <= 8.0)) throw std::out_of_range("condition_limit_cdf: t outside [-8, 8]");
    static std::once_flag once;
    static CdfTable table;
    std::call_once(once, [] { table = condition_limit_table(); });
    return table(t);
}

}  // namespace gue
