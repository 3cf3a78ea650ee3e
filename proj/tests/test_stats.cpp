#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gue/parallel.hpp"
#include "gue/stats.hpp"

using namespace gue;

TEST_CASE("Kolmogorov distribution reference points") {
    // P(K > 1.358) = 0.05, P(K > 1.628) = 0.01
    CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(kolmogorov_survival(1.6276) == doctest::Approx(0.01).epsilon(1e-3));
    CHECK(kolmogorov_survival(0.0) == 1.0);
}

TEST_CASE("one-sample KS") {
    CHECK(ks_statistic({0.5}, [](double x) { return x; }) == doctest::Approx(0.5));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> s(5000);
    for (double& v : s) v = u(rng);
    CHECK(ks_statistic(s, [](double x) { return std::clamp(x, 0.0, 1.0); }) < 0.03);
    CHECK(ks_statistic(s, [](double x) { return std::clamp(x * x, 0.0, 1.0); }) > 0.2);
}

TEST_CASE("two-sample KS") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> a(3000), b(3000), c(3000);
    for (auto* v : {&a, &b}) {
        for (double& x : *v) x = g(rng);
    }
    for (double& x : c) x = g(rng) + 0.3;
    CHECK(ks_two_sample(a, a).statistic == 0.0);
    CHECK(ks_two_sample(a, b).p_value > 0.001);
    CHECK(ks_two_sample(a, c).p_value < 1e-6);
}

TEST_CASE("chi-square survival") {
    CHECK(chi_square_survival(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_square_survival(9.487729036781154, 4) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_square_survival(0.0, 3) == 1.0);
}

TEST_CASE("Pearson correlation") {
    const std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8}, c{4, 3, 2, 1};
    CHECK(pearson_correlation(a, b) == doctest::Approx(1.0));
    CHECK(pearson_correlation(a, c) == doctest::Approx(-1.0));
    CHECK_THROWS(pearson_correlation(a, {1.0}));
}

TEST_CASE("chi-square independence: synthetic multinomial null") {
    // independent coordinates: rejection at 1% in at most 5 of 100 repetitions
    int rejected = 0;
    std::discrete_distribution<int> d1({0.5, 0.3, 0.15, 0.05}), d2({0.2, 0.4, 0.3, 0.1}), d3({0.6, 0.4});
    for (int rep = 0; rep < 100; ++rep) {
        std::mt19937_64 rng(replicate_seed(77, rep));
        std::vector<std::vector<int>> obs(2000);
        for (auto& o : obs) o = {d1(rng), d2(rng), d3(rng)};
        if (chi_square_independence(obs, {3, 3, 1}).p_value < 0.01) ++rejected;
    }
    CHECK(rejected <= 5);
}

TEST_CASE("chi-square independence detects dependence and pools sparse cells") {
    std::mt19937_64 rng(2);
    std::poisson_distribution<int> pois(1.0);
    std::vector<std::vector<int>> obs(3000);
    for (auto& o : obs) {
        const int a = pois(rng);
        o = {a, a + pois(rng)};
    }
    const auto r = chi_square_independence(obs, {6, 6});
    CHECK(r.p_value < 1e-6);
    CHECK(r.dof >= 1);
    // tail pooling: no category beyond lmax
    for (int c : r.categories) CHECK(c <= 7);
}

TEST_CASE("replicate seeds") {
    CHECK(replicate_seed(1, 0) != replicate_seed(1, 1));
    CHECK(replicate_seed(1, 5) == replicate_seed(1, 5));
    CHECK(replicate_seed(2, 0) != replicate_seed(1, 0));
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS(parallel_for(10, [](std::size_t i) {
        if (i == 7) throw std::runtime_error("boom");
    }));
}
