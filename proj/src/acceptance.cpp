#include "gue/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "gue/brute_force.hpp"
#include "gue/fredholm.hpp"
#include "gue/kernels.hpp"
#include "gue/sampling.hpp"
#include "gue/specfun.hpp"
#include "gue/stats.hpp"
#include "gue/tracy_widom.hpp"

namespace gue {

namespace {

// Master seeds fixed before any of the sampling criteria were run.
constexpr std::uint64_t kSeedCountingPmf = 20261015;
constexpr std::uint64_t kSeedExtremes = 20261016;
constexpr std::uint64_t kSeedCondition = 20261017;

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::vector<ScaledWindow> three_windows() {
    return {ScaledWindow::left_edge({-1.0, 1.0}), ScaledWindow::bulk(0.0, {-1.0, 1.0}),
            ScaledWindow::right_edge({-1.0, 1.0})};
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] < v[i - 1])) return false;
    }
    return true;
}

std::string join(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt("%.3e", v[i]);
    return s + "]";
}

struct Check {
    bool ok = true;
    std::ostringstream detail;
    void expect(bool cond, const std::string& what) {
        if (!detail.str().empty()) detail << "; ";
        detail << what << (cond ? "" : " FAIL");
        ok = ok && cond;
    }
};

// 1. orthonormality and Christoffel-Darboux vs the sum form
Check criterion_orthonormality() {
    Check c;
    // composite Gauss-Legendre on |x| <= 10, 200 panels of 20 nodes
    QuadratureRule rule;
    for (int panel = 0; panel < 200; ++panel) {
        const auto g = gauss_legendre(20, -10.0 + 0.1 * panel, -9.9 + 0.1 * panel);
        rule.nodes.insert(rule.nodes.end(), g.nodes.begin(), g.nodes.end());
        rule.weights.insert(rule.weights.end(), g.weights.begin(), g.weights.end());
    }
    double worst_orth = 0.0;
    for (int n : {1, 2, 8, 32, 64}) {
        Eigen::MatrixXd psi(rule.size(), n);
        for (std::size_t a = 0; a < rule.size(); ++a) {
            const auto v = hermite_psi_all(n, n - 1, rule.nodes[a]);
            for (int k = 0; k < n; ++k) psi(static_cast<Eigen::Index>(a), k) = v[k];
        }
        const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.weights.size());
        const Eigen::MatrixXd gram = psi.transpose() * w.asDiagonal() * psi;
        worst_orth = std::max(worst_orth, (gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
    }
    c.expect(worst_orth < 1e-8, "max |<psi_j,psi_k> - delta| = " + fmt("%.2e", worst_orth) + " < 1e-8");

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.2, 2.2);
    const int ns[] = {8, 16, 32, 64};
    double worst_cd = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = ns[i % 4];
        double x = u(rng), y = u(rng);
        if (std::abs(x - y) < 1e-3) y += 1e-2;
        const double cd = kn_christoffel_darboux(n, x, y);
        const double sum = kn_sum_form(n, x, y);
        const double scale = std::sqrt(kn_sum_form(n, x, x) * kn_sum_form(n, y, y));
        worst_cd = std::max(worst_cd, std::abs(cd - sum) / scale);
    }
    c.expect(worst_cd < 1e-9, "CD vs sum max |diff|/sqrt(K(x,x)K(y,y)) = " + fmt("%.2e", worst_cd) + " < 1e-9");
    return c;
}

// 2. kernel convergence to the sine and Airy kernels
Check criterion_kernel_limits() {
    Check c;
    const auto bulk = ScaledWindow::bulk(0.0, {-1.0, 1.0});
    const auto edge = ScaledWindow::right_edge({-2.0, 2.0});
    std::vector<double> eb, ee;
    for (int n : {50, 100, 200, 400}) {
        eb.push_back(scaled_kernel_sup_error(n, bulk, 64));
        ee.push_back(scaled_kernel_sup_error(n, edge, 64));
    }
    c.expect(strictly_decreasing(eb) && eb.back() < 0.05, "sine sup-errors " + join(eb));
    c.expect(strictly_decreasing(ee) && ee.back() < 0.05, "Airy sup-errors " + join(ee));
    return c;
}

// 3. determinant vs trace expansion, log-derivative vs trace series and FD
Check criterion_fredholm() {
    Check c;
    const auto op = MultiWindowOperator::discretize(50, three_windows());
    const std::vector<cdouble> lam{{0.8, 0.1}, {1.0, 0.0}, {0.6, -0.2}};
    const Eigen::MatrixXcd b = op.weighted(std::span<const cdouble>(lam));
    std::vector<cdouble> t(61);
    Eigen::MatrixXcd power = b;
    for (int k = 1; k <= 60; ++k) {
        t[k] = power.trace();
        power = power * b;
    }
    const cdouble c3 = -(t[1] * t[1] * t[1] - 3.0 * t[1] * t[2] + 2.0 * t[3]) / 6.0;
    double worst_ratio = 0.0;
    std::vector<double> radial;
    for (double r : {0.1, 0.05, 0.025}) {
        for (int a = 0; a < 8; ++a) {
            const cdouble z = std::polar(r, 2.0 * M_PI * a / 8.0);
            const cdouble trunc = 1.0 - z * t[1] + 0.5 * z * z * (t[1] * t[1] - t[2]);
            const double err = std::abs(fredholm_det(op, z, lam) - trunc);
            worst_ratio = std::max(worst_ratio, err / (r * r * r));
            if (a == 0) radial.push_back(err);
        }
    }
    c.expect(worst_ratio <= 2.0 * std::abs(c3),
             "|D - trunc_2| / |z|^3 <= " + fmt("%.3e", worst_ratio) + " vs 2|c3| = " + fmt("%.3e", 2 * std::abs(c3)));
    const double halving = radial[1] / radial[2];
    c.expect(halving > 6.0 && halving < 10.0, "defect ratio on halving |z| = " + fmt("%.2f", halving));

    const cdouble z{0.05, 0.0};
    cdouble series = 0.0;
    for (int k = 1; k <= 10; ++k) series -= std::pow(z, k - 1) * t[k];
    const cdouble ld = log_derivative(op, lam, z);
    const double series_err = std::abs(ld - series);
    c.expect(series_err < 1e-8, "log-derivative vs trace series " + fmt("%.2e", series_err));
    const double h = 1e-6;
    const cdouble fd = (std::log(fredholm_det(op, z + h, lam)) - std::log(fredholm_det(op, z - h, lam))) / (2.0 * h);
    const double fd_err = std::abs(ld - fd);
    c.expect(fd_err < 1e-5, "log-derivative vs central difference " + fmt("%.2e", fd_err));
    return c;
}

// 4. contour-extracted pmf vs tensor quadrature of the eigenvalue density
Check criterion_oracle_equivalence() {
    Check c;
    for (int n : {2, 3}) {
        const auto w = three_windows();
        const auto bf = brute_force_joint_pmf(n, w);
        const auto fr = counting_joint_pmf(MultiWindowOperator::discretize(n, w), {n, n, n});
        double worst = 0.0;
        for (std::size_t k = 0; k < bf.joint.size(); ++k) worst = std::max(worst, std::abs(bf.joint[k] - fr.joint[k]));
        c.expect(worst < 1e-6, "n=" + std::to_string(n) + " max cell diff " + fmt("%.2e", worst));
    }
    return c;
}

// 5. deterministic defect decay for edge-, bulk, edge+
Check criterion_defect_decay() {
    Check c;
    std::vector<double> d;
    for (int n : {50, 100, 200, 400}) {
        const auto pmf = counting_joint_pmf(MultiWindowOperator::discretize(n, three_windows()), {4, 4, 4});
        d.push_back(pmf.max_abs_defect(2));
    }
    c.expect(strictly_decreasing(d), "max defect (l<=2) " + join(d));
    c.expect(d.back() < 0.01, "n=400 defect < 0.01");
    c.expect(std::abs(d.back() - kPinnedDefectN400) < 1e-8, "n=400 regression vs " + fmt("%.6e", kPinnedDefectN400));
    return c;
}

// 6. trace-split remainders for one bulk and one edge window
Check criterion_trace_split() {
    Check c;
    const std::vector<ScaledWindow> w{ScaledWindow::bulk(0.0, {-1.0, 1.0}), ScaledWindow::right_edge({-1.0, 1.0})};
    std::vector<double> s2, s3;
    const double one[2] = {1.0, 1.0};
    for (int n : {100, 200, 400, 800}) {
        const auto ts = trace_powers(MultiWindowOperator::discretize(n, w), one, 3);
        s2.push_back(std::abs(ts.remainder[1]));
        s3.push_back(std::abs(ts.remainder[2]));
    }
    c.expect(strictly_decreasing(s2), "|s_n(2)| " + join(s2));
    c.expect(strictly_decreasing(s3), "|s_n(3)| " + join(s3));
    return c;
}

// 7. Monte Carlo counting pmf vs Fredholm at n = 200
Check criterion_sampling_consistency() {
    Check c;
    const int n = 200;
    const int reps = 4000;
    const auto w = three_windows();
    const std::vector<int> lmax{4, 4, 4};
    const auto fr = counting_joint_pmf(MultiWindowOperator::discretize(n, w), lmax);
    const auto records = sample_records(n, reps, kSeedCountingPmf, w, SamplerRoute::tridiagonal);
    const auto emp = empirical_joint_pmf(records, w, lmax);

    // cells with expected count < 5 are pooled, together with the overflow beyond the table
    double pooled_p = std::max(0.0, fr.remainder);
    double pooled_e = std::max(0.0, emp.distribution.remainder);
    int compared = 0, pooled = 0;
    double worst_z = 0.0;
    const double total = static_cast<double>(reps);
    auto zscore = [&](double p, double e) {
        const double se = std::sqrt(std::max(p * (1.0 - p), 1e-300) / total);
        return std::abs(e - p) / se;
    };
    for (std::size_t k = 0; k < fr.joint.size(); ++k) {
        const double p = fr.joint[k];
        if (p * total < 5.0) {
            pooled_p += p;
            pooled_e += emp.distribution.joint[k];
            ++pooled;
            continue;
        }
        worst_z = std::max(worst_z, zscore(p, emp.distribution.joint[k]));
        ++compared;
    }
    if (pooled_p * total >= 5.0) {
        worst_z = std::max(worst_z, zscore(pooled_p, pooled_e));
        ++compared;
    }
    c.expect(worst_z < 3.0, std::to_string(compared) + " cells (" + std::to_string(pooled) +
                                " sparse pooled), max |emp - fredholm| / SE = " + fmt("%.2f", worst_z));

    std::vector<std::vector<int>> edges;
    for (const auto& r : records) edges.push_back({r.occupancy[0], r.occupancy[2]});
    const auto chi = chi_square_independence(edges, {4, 4});
    c.expect(chi.p_value > 0.01, "edge-/edge+ chi-square p = " + fmt("%.3f", chi.p_value) + " (dof " +
                                     std::to_string(chi.dof) + ")");
    return c;
}

// 8. extreme eigenvalues: correlation, Tracy-Widom marginals, reflection
Check criterion_extremes() {
    Check c;
    const int reps = 4000;
    const auto pairs = extreme_pairs(400, reps, kSeedExtremes);
    std::vector<double> mins, maxs, neg_mins;
    for (const auto& p : pairs) {
        mins.push_back(p.scaled_min);
        maxs.push_back(p.scaled_max);
        neg_mins.push_back(-p.scaled_min);
    }
    const double corr = pearson_correlation(mins, maxs);
    const double band = 3.0 / std::sqrt(static_cast<double>(reps));
    c.expect(std::abs(corr) < band, "corr = " + fmt("%.4f", corr) + " (band " + fmt("%.4f", band) + ")");

    const auto grid = uniform_grid(kTwGridMin, kTwGridMax, 0.02);
    const auto plus = tw_plus_table(grid);
    std::vector<double> neg_grid(grid.rbegin(), grid.rend());
    for (double& g : neg_grid) g = -g;
    const auto minus = tw_minus_table(neg_grid);
    const double ks_max = ks_statistic(maxs, [&](double s) { return plus(s); });
    const double ks_min = ks_statistic(mins, [&](double s) { return minus(s); });
    c.expect(ks_max < 0.05, "KS(max, F+) = " + fmt("%.4f", ks_max));
    c.expect(ks_min < 0.05, "KS(min, F-) = " + fmt("%.4f", ks_min));
    const auto refl = ks_two_sample(neg_mins, maxs);
    c.expect(refl.p_value > 0.01, "reflection KS p = " + fmt("%.3f", refl.p_value));
    return c;
}

// 9. condition number limit law and the Slutsky identity
Check criterion_condition() {
    Check c;
    const int n = 400;
    const auto stats = condition_statistics(n, 4000, kSeedCondition);
    const double ks = ks_statistic(stats.values, condition_limit_cdf);
    c.expect(ks < 0.06, "KS vs convolution law = " + fmt("%.4f", ks) + ", excluded " + std::to_string(stats.excluded));
    double worst = 0.0;
    for (std::size_t i = 0; i < stats.values.size(); ++i) {
        const auto d = decompose_condition(n, stats.lambda_min[i], stats.lambda_max[i]);
        worst = std::max(worst, std::abs(d.statistic - d.leading - d.remainder));
    }
    c.expect(worst < 1e-10, "Slutsky identity max residual " + fmt("%.2e", worst));
    return c;
}

// 10. Tracy-Widom routes, resolution doubling, reflection on emitted tables
Check criterion_tracy_widom() {
    Check c;
    const auto sol = painleve_q(-8.0, 8.0);
    double route = 0.0;
    for (double s : uniform_grid(-6.0, 4.0, 0.05)) route = std::max(route, std::abs(sol.cdf(s) - tw_cdf_plus(s)));
    c.expect(route < 1e-5, "Airy determinant vs Painleve " + fmt("%.2e", route));
    c.expect(sol.max_residual() < 1e-6, "Painleve ODE residual " + fmt("%.2e", sol.max_residual()));

    const auto coarse = uniform_grid(kTwGridMin, kTwGridMax, 0.25);
    const auto t200 = tw_plus_table(coarse, 200);
    const auto t400 = tw_plus_table(coarse, 400);
    double doubling = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) doubling = std::max(doubling, std::abs(t200.values[i] - t400.values[i]));
    c.expect(doubling < 1e-8, "m 200 -> 400 change " + fmt("%.2e", doubling));
    c.expect(std::abs(tw_cdf_plus(0.0, 400) - kPinnedTwPlusAtZero) < 1e-8, "F+(0) = " + fmt("%.14f", tw_cdf_plus(0.0)));

    std::vector<double> neg(coarse.rbegin(), coarse.rend());
    for (double& g : neg) g = -g;
    const auto minus = tw_minus_table(neg, 200);
    double refl = 0.0;
    for (std::size_t i = 0; i < neg.size(); ++i) {
        refl = std::max(refl, std::abs(minus.values[i] + t200.values[coarse.size() - 1 - i] - 1.0));
    }
    c.expect(refl <= 2.3e-16, "max |F-(s) + F+(-s) - 1| = " + fmt("%.1e", refl));
    c.expect(t200.monotone() && minus.monotone(), "tables monotone");
    return c;
}

// 11. sup-norm scaling, iterated kernels, Hadamard
Check criterion_bounds() {
    Check c;
    // a series is "bounded" when max/min over the n-grid stays below this
    constexpr double kSpread = 3.0;
    const auto bulk = ScaledWindow::bulk(0.0, {-1.0, 1.0});
    const auto edge = ScaledWindow::right_edge({-1.0, 1.0});
    const std::vector<int> ns{100, 200, 400, 800};
    std::vector<double> rb, re, rx;
    std::vector<std::vector<double>> beta(8);
    for (int n : ns) {
        rb.push_back(kernel_sup(n, bulk, bulk, 64) / n);
        re.push_back(kernel_sup(n, edge, edge, 64) / std::pow(n, 2.0 / 3.0));
        rx.push_back(kernel_sup(n, bulk, edge, 64) / std::pow(n, 1.0 - (1.0 + 2.0 / 3.0) / 2.0));
        const auto op = MultiWindowOperator::discretize(n, {bulk, edge});
        const double one[2] = {1.0, 1.0};
        const auto it = iterated_kernel_sup(op, one, 4);
        for (int k = 1; k <= 4; ++k) {
            beta[k - 1].push_back(std::pow(it[k - 1](0, 0) / n, 1.0 / k));
            beta[4 + k - 1].push_back(std::pow(it[k - 1](1, 1) / std::pow(n, 2.0 / 3.0), 1.0 / k));
        }
    }
    auto spread = [](const std::vector<double>& v) {
        return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
    };
    c.expect(spread(rb) < kSpread, "bulk sup/n " + join(rb));
    c.expect(spread(re) < kSpread, "edge sup/n^(2/3) " + join(re));
    c.expect(spread(rx) < kSpread, "cross sup/n^(1/6) " + join(rx));
    double worst_beta = 0.0;
    for (const auto& b : beta) worst_beta = std::max(worst_beta, spread(b));
    c.expect(worst_beta < kSpread, "iterated k<=4 beta spread " + fmt("%.3f", worst_beta));

    const auto op = MultiWindowOperator::discretize(100, three_windows());
    const double lam[3] = {1.0, 0.7, 1.0};
    int draws = 0;
    double worst_ratio = 0.0;
    bool ok = true;
    for (int k = 1; k <= 5; ++k) {
        const auto rep = hadamard_bound_check(op, lam, k, 200, 100 + k);
        draws += rep.draws;
        worst_ratio = std::max(worst_ratio, rep.worst_ratio);
        ok = ok && rep.passed;
    }
    c.expect(ok && draws >= 1000, "Hadamard on " + std::to_string(draws) + " minors, worst ratio " +
                                      fmt("%.3f", worst_ratio));
    return c;
}

struct Entry {
    const char* title;
    double budget;
    Check (*run)();
};

const Entry kEntries[kCriterionCount] = {
    {"orthonormality and kernel identities", 10.0, criterion_orthonormality},
    {"kernel convergence", 60.0, criterion_kernel_limits},
    {"Fredholm machinery", 10.0, criterion_fredholm},
    {"oracle equivalence n=2,3", 120.0, criterion_oracle_equivalence},
    {"deterministic defect decay", 600.0, criterion_defect_decay},
    {"trace-split decay", 300.0, criterion_trace_split},
    {"sampling consistency n=200", 600.0, criterion_sampling_consistency},
    {"extreme-eigenvalue independence n=400", 900.0, criterion_extremes},
    {"condition-number limit n=400", 900.0, criterion_condition},
    {"Tracy-Widom consistency", 300.0, criterion_tracy_widom},
    {"bound diagnostics", 300.0, criterion_bounds},
};

}  // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriterionCount) throw std::out_of_range("run_criterion: id must be 1..11");
    const auto& e = kEntries[id - 1];
    CriterionResult r;
    r.id = id;
    r.title = e.title;
    r.budget_seconds = e.budget;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const auto chk = e.run();
        r.passed = chk.ok;
        r.detail = chk.detail.str();
    } catch (const std::exception& ex) {
        r.passed = false;
        r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.budget_seconds) {
        r.passed = false;
        r.detail += "; over runtime budget";
    }
    return r;
}

std::string format_result(const CriterionResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "[%s] %2d %s (%.1f s / %.0f s): ", r.passed ? "PASS" : "FAIL", r.id,
                  r.title.c_str(), r.seconds, r.budget_seconds);
    return head + r.detail;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::ostream& log) {
    std::vector<int> todo = ids;
    if (todo.empty()) {
        for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
    }
    std::vector<CriterionResult> out;
    for (int id : todo) {
        out.push_back(run_criterion(id));
        log << format_result(out.back()) << std::endl;
    }
    return out;
}

}  // namespace gue
