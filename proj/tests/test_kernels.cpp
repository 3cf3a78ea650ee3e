#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "gue/kernels.hpp"
#include "gue/specfun.hpp"

using namespace gue;

TEST_CASE("window exponents and realized measure") {
    CHECK(ScaledWindow::left_edge({-1, 1}).kappa() == doctest::Approx(2.0 / 3.0));
    CHECK(ScaledWindow::right_edge({-1, 1}).kappa() == doctest::Approx(2.0 / 3.0));
    CHECK(ScaledWindow::bulk(0.7, {-1, 1}).kappa() == 1.0);
    const ScaledWindow w(0.5, {{-1.0, 0.0}, {1.0, 3.0}});
    for (int n : {1, 7, 100}) {
        const auto r = w.realize(n);
        double len = 0.0;
        for (const auto& iv : r) len += iv.length();
        CHECK(len == doctest::Approx(3.0 / n).epsilon(1e-14));
        CHECK(w.realized_measure(n) == doctest::Approx(3.0 / n).epsilon(1e-14));
    }
    CHECK_THROWS_AS(ScaledWindow(0.0, {{0.0, 2.0}, {1.0, 3.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ScaledWindow(0.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(ScaledWindow(2.5, {{0.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("distinct centers become disjoint for large n") {
    const std::vector<ScaledWindow> w{ScaledWindow::left_edge({-5, 5}), ScaledWindow::bulk(0.0, {-5, 5}),
                                      ScaledWindow::right_edge({-5, 5})};
    CHECK_FALSE(windows_disjoint(w, 2));
    const int t = disjointness_threshold(w, 4096);
    REQUIRE(t > 2);
    for (int n = t; n < t + 50; ++n) CHECK(windows_disjoint(w, n));
    CHECK_FALSE(windows_disjoint(w, t - 1));
}

TEST_CASE("kn symmetry and the semicircle at the origin") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng), y = u(rng);
        CHECK(std::abs(kn(37, x, y) - kn(37, y, x)) < 1e-12);
    }
    CHECK(std::abs(kn(400, 0.0, 0.0) / 400.0 - 1.0 / std::numbers::pi) < 0.01);
}

TEST_CASE("Christoffel-Darboux equals the direct sum") {
    const double cd = kn_christoffel_darboux(50, 0.3, 0.7);
    const double sum = kn_sum_form(50, 0.3, 0.7);
    CHECK(std::abs(cd - sum) <= 1e-9 * std::abs(sum));
    // near the diagonal kn uses the sum form
    CHECK(kn(50, 0.3, 0.3 + 1e-9) == doctest::Approx(kn_sum_form(50, 0.3, 0.3 + 1e-9)).epsilon(1e-13));
}

TEST_CASE("kernel Gram matrix is positive semidefinite") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.2, 2.2);
    for (int n : {5, 40, 100}) {
        Eigen::MatrixXd g(20, 20);
        std::vector<double> x(20);
        for (double& v : x) v = u(rng);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) g(i, j) = kn(n, x[i], x[j]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9);
    }
}

TEST_CASE("reproducing property") {
    const int n = 12;
    const auto r = gauss_legendre(300, -4.0, 4.0);
    for (auto [x, y] : {std::pair{0.1, -0.4}, std::pair{1.2, 1.9}, std::pair{-2.0, 0.5}}) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * kn(n, x, r.nodes[i]) * kn(n, r.nodes[i], y);
        CHECK(std::abs(s - kn(n, x, y)) < 1e-6);
    }
}

TEST_CASE("diagonal converges to the semicircle") {
    std::vector<double> err;
    for (int n : {50, 100, 200, 400}) {
        double worst = 0.0;
        for (double x = -1.5; x <= 1.5; x += 0.1) {
            worst = std::max(worst, std::abs(kn(n, x, x) / n - semicircle_density(x)));
        }
        err.push_back(worst);
    }
    for (std::size_t i = 1; i < err.size(); ++i) CHECK(err[i] < err[i - 1]);
}

TEST_CASE("sine kernel") {
    CHECK(sine_kernel(0.3, 1.1, 1.1) == 0.3);
    const double rho = 1.0 / std::numbers::pi;
    CHECK(sine_kernel(rho, 1.0, 0.0) == doctest::Approx(std::sin(1.0) / std::numbers::pi).epsilon(1e-14));
    // x - y = pi puts the argument at sin(pi)
    CHECK(std::abs(sine_kernel(rho, std::numbers::pi, 0.0)) < 1e-16);
    CHECK(sine_kernel(rho, 0.2, 1.7) == sine_kernel(rho, 1.7, 0.2));
    CHECK_THROWS_AS(sine_kernel(0.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("Airy kernel") {
    const double aip0 = airy_ai_prime(0.0);
    CHECK(airy_kernel(0.0, 0.0) == doctest::Approx(aip0 * aip0).epsilon(1e-14));
    CHECK(airy_kernel(0.4, -1.3) == doctest::Approx(airy_kernel(-1.3, 0.4)).epsilon(1e-15));
    const auto a = airy(1.0);
    const double diag = a.aip * a.aip - a.ai * a.ai;
    const double e5 = std::abs(airy_kernel(1.0, 1.0 + 1e-5) - diag);
    const double e6 = std::abs(airy_kernel(1.0, 1.0 + 1e-6) - diag);
    CHECK(e5 < 1e-5);
    CHECK(e6 < e5);
}

TEST_CASE("scaled kernel approaches its limit") {
    const auto bulk = ScaledWindow::bulk(0.0, {-1, 1});
    const auto edge = ScaledWindow::right_edge({-2, 2});
    const auto left = ScaledWindow::left_edge({-2, 2});
    double pb = 1e9, pe = 1e9, pl = 1e9;
    for (int n : {50, 100, 200, 400}) {
        const double eb = scaled_kernel_sup_error(n, bulk, 32);
        const double ee = scaled_kernel_sup_error(n, edge, 32);
        const double el = scaled_kernel_sup_error(n, left, 32);
        CHECK(eb < pb);
        CHECK(ee < pe);
        CHECK(el < pl);
        pb = eb;
        pe = ee;
        pl = el;
    }
    CHECK(pb < 0.05);
    CHECK(pe < 0.05);
    CHECK(scaled_kn(100, bulk, 0.3, 0.3) > 0.0);
    CHECK_THROWS_AS(limit_kernel(ScaledWindow::raw({0, 1}), 0.1, 0.2), std::invalid_argument);
}

TEST_CASE("kernel_sup") {
    const ScaledWindow point(0.0, {{0.25, 0.25}});
    CHECK(kernel_sup(30, point, point, 16) == doctest::Approx(std::abs(kn(30, 0.25 / 30.0, 0.25 / 30.0))).epsilon(1e-12));
    CHECK(kernel_sup(30, point, point, 16) > 0.0);
    CHECK_THROWS_AS(kernel_sup(30, point, point, 8), std::invalid_argument);
    const auto bulk = ScaledWindow::bulk(0.0, {-1, 1});
    const auto edge = ScaledWindow::right_edge({-1, 1});
    std::vector<double> same, cross;
    for (int n : {100, 200, 400, 800}) {
        same.push_back(kernel_sup(n, bulk, bulk, 32) / n);
        cross.push_back(kernel_sup(n, bulk, edge, 32) / std::pow(n, 1.0 / 6.0));
    }
    for (const auto* v : {&same, &cross}) {
        const auto [lo, hi] = std::minmax_element(v->begin(), v->end());
        CHECK(*hi / *lo < 3.0);
    }
}
