#include "gue/selfcheck.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "gue/fredholm.hpp"
#include "gue/kernels.hpp"
#include "gue/sampling.hpp"
#include "gue/specfun.hpp"
#include "gue/tracy_widom.hpp"
#include "gue/window_spec.hpp"

namespace gue {

namespace {

QuickCheck check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    QuickCheck q;
    q.name = name;
    try {
        auto [ok, detail] = body();
        q.passed = ok;
        q.detail = detail;
    } catch (const std::exception& e) {
        q.detail = std::string("exception: ") + e.what();
    }
    return q;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

}  // namespace

std::vector<QuickCheck> run_quick_checks(std::ostream& log) {
    std::vector<QuickCheck> out;
    auto add = [&](QuickCheck q) {
        log << (q.passed ? "[PASS] " : "[FAIL] ") << q.name << (q.detail.empty() ? "" : ": " + q.detail) << "\n";
        out.push_back(std::move(q));
    };

    add(check("Ai(0), Ai'(0)", [] {
        const auto a = airy(0.0);
        const double e = std::max(std::abs(a.ai - 0.35502805388781723926), std::abs(a.aip + 0.25881940379280679841));
        return std::pair{e < 1e-14, num(e)};
    }));
    add(check("psi_0^(1) is the N(0,1) half-density", [] {
        const double v = hermite_psi(1, 0, 0.3).value;
        const double e = std::abs(v * v - std::exp(-0.09 / 2.0) / std::sqrt(2.0 * M_PI));
        return std::pair{e < 1e-15, num(e)};
    }));
    add(check("Gauss-Legendre integrates x^(2m-1) exactly", [] {
        const auto r = gauss_legendre(10, 0.0, 1.0);
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 18);
        return std::pair{std::abs(s - 1.0 / 19.0) < 1e-15, num(s - 1.0 / 19.0)};
    }));
    add(check("K_n(x,x) > 0", [] {
        const double v = kn(30, 0.4, 0.4);
        return std::pair{v > 0.0, num(v)};
    }));
    add(check("window spec round trip", [] {
        const auto w = parse_windows("edge-:(-1,1);bulk@0:(-1,1);edge+:(-1,1)");
        const std::string d = describe_windows(w);
        return std::pair{d == "edge-:(-1,1);bulk@0:(-1,1);edge+:(-1,1)", d};
    }));
    add(check("det at z = 0 is 1", [] {
        const auto op = MultiWindowOperator::discretize(10, {ScaledWindow::bulk(0.0, {-1.0, 1.0})});
        const double lam[1] = {1.0};
        return std::pair{fredholm_det(op, 0.0, lam) == 1.0, std::string()};
    }));
    add(check("single window defect is zero", [] {
        const auto pmf = counting_joint_pmf(10, {ScaledWindow::bulk(0.0, {-1.0, 1.0})}, {3}, 20);
        return std::pair{pmf.max_abs_defect(3) == 0.0, std::string()};
    }));
    add(check("window covering (-3,3) counts every eigenvalue", [] {
        const auto s = sample_gue_dense(40, 7);
        const auto r = count_in_windows(s, {ScaledWindow::raw({-3.0, 3.0})});
        return std::pair{r.occupancy[0] == 40, std::to_string(r.occupancy[0])};
    }));
    add(check("empty window counts nothing", [] {
        const auto s = sample_gue_tridiag(40, 7);
        const auto r = count_in_windows(s, {ScaledWindow::raw({0.5, 0.5})});
        return std::pair{r.occupancy[0] == 0, std::to_string(r.occupancy[0])};
    }));
    add(check("sampler determinism", [] {
        return std::pair{sample_gue_dense(30, 11).eigenvalues == sample_gue_dense(30, 11).eigenvalues &&
                             sample_gue_tridiag(30, 11).eigenvalues == sample_gue_tridiag(30, 11).eigenvalues,
                         std::string()};
    }));
    add(check("trace identity", [] {
        const auto h = sample_gue_matrix(25, 3);
        const auto s = sample_gue_dense(25, 3);
        double sum = 0.0;
        for (double v : s.eigenvalues) sum += v;
        const double e = std::abs(sum - h.trace().real());
        return std::pair{e < 1e-10, num(e)};
    }));
    add(check("Slutsky identity", [] {
        const auto d = decompose_condition(100, -1.97, 2.02);
        const double e = std::abs(d.statistic - d.leading - d.remainder);
        return std::pair{e < 1e-10, num(e)};
    }));
    add(check("F-(s) + F+(-s) = 1", [] {
        const double e = std::abs(tw_cdf_minus(0.7, 60) + tw_cdf_plus(-0.7, 60) - 1.0);
        return std::pair{e < 1e-15, num(e)};
    }));
    add(check("F+(6) > 1 - 1e-6", [] {
        const double v = tw_cdf_plus(6.0, 60);
        return std::pair{v > 1.0 - 1e-6, num(1.0 - v)};
    }));
    return out;
}

}  // namespace gue
