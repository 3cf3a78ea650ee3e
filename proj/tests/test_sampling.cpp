#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numeric>
#include <numbers>
#include <random>

#include "gue/parallel.hpp"
#include "gue/sampling.hpp"
#include "gue/stats.hpp"

using namespace gue;

namespace {

double semicircle_cdf(double x) {
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return 1.0;
    return 0.5 + (x * std::sqrt(4.0 - x * x) / 4.0 + std::asin(x / 2.0)) / std::numbers::pi;
}

std::vector<EigenSample> draws(int n, int reps, std::uint64_t seed, SamplerRoute route) {
    std::vector<EigenSample> out(reps);
    parallel_for(out.size(), [&](std::size_t r) { out[r] = sample_gue(n, replicate_seed(seed, r), route); });
    return out;
}

}  // namespace

TEST_CASE("route names") {
    CHECK(parse_route("dense") == SamplerRoute::dense);
    CHECK(parse_route("tridiag") == SamplerRoute::tridiagonal);
    CHECK(to_string(SamplerRoute::tridiagonal) == "tridiag");
    CHECK_THROWS_AS(parse_route("qr"), std::invalid_argument);
    CHECK_THROWS_AS(sample_gue_dense(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_gue_tridiag(0, 1), std::invalid_argument);
}

TEST_CASE("n = 1 is a standard normal on both routes") {
    for (auto route : {SamplerRoute::dense, SamplerRoute::tridiagonal}) {
        const auto d = draws(1, 10000, 31, route);
        double s = 0.0, s2 = 0.0;
        for (const auto& e : d) {
            s += e.eigenvalues[0];
            s2 += e.eigenvalues[0] * e.eigenvalues[0];
        }
        const double var = s2 / 1e4 - (s / 1e4) * (s / 1e4);
        CHECK(std::abs(var - 1.0) < 0.05);
    }
}

TEST_CASE("dense matrix structure and trace identity") {
    const auto h = sample_gue_matrix(30, 5);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    const auto s = sample_gue_dense(30, 5);
    double sum = 0.0;
    for (double v : s.eigenvalues) sum += v;
    CHECK(std::abs(sum - h.trace().real()) < 1e-10);
}

TEST_CASE("samples are sorted, sized and deterministic") {
    for (auto route : {SamplerRoute::dense, SamplerRoute::tridiagonal}) {
        const auto a = sample_gue(64, 99, route);
        const auto b = sample_gue(64, 99, route);
        CHECK(a.eigenvalues == b.eigenvalues);
        CHECK(a.eigenvalues.size() == 64);
        CHECK(std::is_sorted(a.eigenvalues.begin(), a.eigenvalues.end()));
        CHECK(a.route == route);
        CHECK(sample_gue(64, 100, route).eigenvalues != a.eigenvalues);
    }
}

TEST_CASE("spectrum stays inside (-2.5, 2.5) for n >= 100") {
    int violations = 0;
    for (const auto& s : draws(100, 1000, 12, SamplerRoute::tridiagonal)) {
        if (s.eigenvalues.front() <= -2.5 || s.eigenvalues.back() >= 2.5) ++violations;
    }
    CHECK(violations <= 1);
}

TEST_CASE("semicircle law at n = 500") {
    const auto s = sample_gue_dense(500, 2026);
    CHECK(ks_statistic(s.eigenvalues, semicircle_cdf) < 0.05);
}

TEST_CASE("tridiagonal eigenvalues match a dense solve") {
    const auto t = sample_gue_tridiagonal_matrix(40, 3);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(40, 40);
    for (int i = 0; i < 40; ++i) m(i, i) = t.diag[i];
    for (int i = 0; i < 39; ++i) m(i, i + 1) = m(i + 1, i) = t.offdiag[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const auto ev = tridiagonal_eigenvalues(t);
    for (int i = 0; i < 40; ++i) CHECK(std::abs(ev[i] - es.eigenvalues()[i]) < 1e-12);
}

TEST_CASE("Sturm count is monotone and agrees with the eigenvalues") {
    const auto t = sample_gue_tridiagonal_matrix(80, 17);
    const auto ev = tridiagonal_eigenvalues(t);
    int prev = 0;
    for (double x = -3.0; x <= 3.0; x += 0.01) {
        const int c = sturm_count(t, x);
        CHECK(c >= prev);
        prev = c;
        const auto expected = std::lower_bound(ev.begin(), ev.end(), x) - ev.begin();
        CHECK(c == expected);
    }
}

TEST_CASE("dense and tridiagonal routes agree in law") {
    for (int n : {20, 50}) {
        const auto d = draws(n, 10000, 500 + n, SamplerRoute::dense);
        const auto t = draws(n, 10000, 900 + n, SamplerRoute::tridiagonal);
        std::vector<double> dmax, tmax, dmin, tmin, dcount, tcount;
        const auto bulk = std::vector<ScaledWindow>{ScaledWindow::bulk(0.0, {-2.0, 2.0})};
        for (const auto& s : d) {
            dmax.push_back(s.eigenvalues.back());
            dmin.push_back(s.eigenvalues.front());
            dcount.push_back(count_in_windows(s, bulk).occupancy[0]);
        }
        for (const auto& s : t) {
            tmax.push_back(s.eigenvalues.back());
            tmin.push_back(s.eigenvalues.front());
            tcount.push_back(count_in_windows(s, bulk).occupancy[0]);
        }
        CAPTURE(n);
        CHECK(ks_two_sample(dmax, tmax).p_value > 0.01);
        CHECK(ks_two_sample(dmin, tmin).p_value > 0.01);
        CHECK(ks_two_sample(dcount, tcount).p_value > 0.01);
    }
}

TEST_CASE("tridiagonal route is cheaper than dense") {
    auto time = [](auto f) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    const double dense = time([] {
        for (int i = 0; i < 3; ++i) sample_gue_dense(400, i);
    });
    const double tri = time([] {
        for (int i = 0; i < 3; ++i) sample_gue_tridiag(400, i);
    });
    CHECK(tri < dense);
}

TEST_CASE("counting in windows") {
    const auto s = sample_gue_tridiag(150, 8);
    CHECK(count_in_windows(s, {ScaledWindow::raw({-3.0, 3.0})}).occupancy[0] == 150);
    CHECK(count_in_windows(s, {ScaledWindow::raw({1.0, 1.0})}).occupancy[0] == 0);
    // [a, b) convention
    const double x = s.eigenvalues[70];
    CHECK(count_in_windows(s, {ScaledWindow::raw({x, x + 1e-12})}).occupancy[0] == 1);
    CHECK(count_in_windows(s, {ScaledWindow::raw({x - 1e-12, x})}).occupancy[0] == 0);

    const auto edge = ScaledWindow::right_edge({-4.0, 0.0});
    for (const auto& e : draws(200, 300, 41, SamplerRoute::tridiagonal)) {
        const auto r = count_in_windows(e, {edge});
        // with the top eigenvalue below the right end, the window is occupied
        // exactly when that eigenvalue reaches it
        if (r.scaled_max < 0.0) CHECK((r.occupancy[0] >= 1) == (r.scaled_max >= -4.0));
        CHECK(r.occupancy[0] <= 200);
    }
}

TEST_CASE("empirical pmf") {
    const std::vector<ScaledWindow> one{ScaledWindow::bulk(0.0, {-1.0, 1.0})};
    const auto few = sample_records(100, 999, 1, one, SamplerRoute::tridiagonal);
    CHECK_THROWS_AS(empirical_joint_pmf(few, one, {3}), std::invalid_argument);

    const auto recs = sample_records(100, 2000, 1, one, SamplerRoute::tridiagonal);
    const auto e = empirical_joint_pmf(recs, one, {3});
    CHECK(e.samples == 2000);
    CHECK(e.distribution.max_abs_defect(3) == 0.0);
    CHECK(std::abs(e.distribution.joint_sum() + e.distribution.remainder - 1.0) < 1e-12);
    for (std::size_t c = 0; c < e.distribution.joint.size(); ++c) {
        const double p = e.distribution.joint[c];
        CHECK(e.joint_standard_error[c] == doctest::Approx(std::sqrt(p * (1 - p) / 2000)));
    }
}

TEST_CASE("condition statistics") {
    const auto c = condition_statistics(200, 10000, 4);
    CHECK(c.excluded == 0);
    CHECK(c.values.size() == 10000);
    for (std::size_t i = 0; i < c.values.size(); i += 97) {
        const auto d = decompose_condition(200, c.lambda_min[i], c.lambda_max[i]);
        CHECK(d.statistic == c.values[i]);
        CHECK(std::abs(d.statistic - d.leading - d.remainder) < 1e-10);
    }
}

TEST_CASE("extreme pairs") {
    const auto p = extreme_pairs(100, 2000, 6);
    REQUIRE(p.size() == 2000);
    std::vector<double> a, b;
    for (const auto& x : p) {
        a.push_back(x.scaled_min);
        b.push_back(x.scaled_max);
    }
    // TW mean is -1.7711; finite-n bias at n = 100 is a few hundredths
    const double mean_min = std::accumulate(a.begin(), a.end(), 0.0) / 2000.0;
    const double mean_max = std::accumulate(b.begin(), b.end(), 0.0) / 2000.0;
    CHECK(std::abs(mean_max + 1.7711) < 0.2);
    CHECK(std::abs(mean_min - 1.7711) < 0.2);
    CHECK(std::abs(pearson_correlation(a, b)) < 0.15);
    CHECK(extreme_pairs(100, 5, 6)[3].scaled_max == p[3].scaled_max);
}
