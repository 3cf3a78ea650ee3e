#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gue/specfun.hpp"

using namespace gue;

namespace {

// mpmath, 50 digits (tests/oracles/gen_reference.py)
struct AiryRow {
    double x, ai, aip;
};
const AiryRow kAiry[] = {
    {-15, 0.27821749087082892953, 0.27237420430864202083},
    {-12.5, -0.27627456138116024823, -0.41933133041950516441},
    {-10, 0.040241238486443190689, 0.9962650441327900559},
    {-8.5, -0.33029023763020887902, -0.032313348284639135873},
    {-8, -0.052705050356386202622, 0.93556093819830655103},
    {-7, 0.18428083525050563728, -0.77100816841012654773},
    {-6.5, -0.23802030199711580359, -0.674952492513202173},
    {-6, -0.32914517362982310523, 0.34593548728134289493},
    {-5.9, -0.28512277955518009118, 0.5296285725630017807},
    {-3, -0.37881429367765807435, 0.31458376921659881365},
    {-1, 0.5355608832923521188, -0.010160567116645209395},
    {-0.25, 0.41872461427545292423, -0.24638918992017597303},
    {0, 0.35502805388781723926, -0.25881940379280679841},
    {0.5, 0.23169360648083348977, -0.22491053266468389314},
    {2, 0.034924130423274379135, -0.053090384433653631704},
    {4, 0.00095156385120480187362, -0.0019586409502041789001},
    {5.9, 0.000012747094509184476376, -0.000031481297117112737521},
    {6, 9.9476943602528895702e-6, -0.000024765200397034954754},
    {6.1, 7.7477310324484344432e-6, -0.000019440985375102970918},
    {7.5, 1.9172560675134307516e-7, -5.3127139597205446848e-7},
    {9, 2.4711684308724898433e-9, -7.4806413896589464128e-9},
    {10, 1.1047532552898685934e-10, -3.5206336767389236366e-10},
    {12, 1.393184688875360839e-13, -4.854736554985308463e-13},
    {15, 2.164962520737992299e-18, -8.4205679540177727661e-18},
};

struct PsiRow {
    int n, k;
    double x, value;
};
const PsiRow kPsi[] = {
    {55, 12, -0.310634, -0.12405064398144289533},
    {3, 0, -2.444634, 0.0094004968012841798165},
    {50, 33, 1.704481, 0.31435703708678227274},
    {102, 73, 0.793554, -0.095142774143727486409},
    {162, 100, 1.719289, 0.002347770703272904864},
    {128, 14, 2.541909, 2.7276984041652388589e-75},
    {142, 46, -2.280742, 3.9331327017118558654e-44},
    {169, 69, -2.252542, -1.0949669566230802624e-42},
    {174, 60, -1.195811, 0.63740561481359935126},
    {101, 22, 1.808017, 2.0435979066199482845e-19},
    {12, 11, 1.636558, 0.63662104482330834281},
    {1, 1, -0.388933, -0.23654077567095644449},
    {4, 4, 0.832938, -0.54204224916742760054},
    {128, 14, -2.005403, 7.3991374810707901096e-43},
    {18, 6, 0.17425, 0.22317215491980499003},
    {113, 71, 1.977135, 2.0443435646710909891e-8},
    {53, 30, -2.504469, 1.3372524921517186292e-15},
    {144, 47, 0.427425, -0.030937605467475005222},
    {183, 63, -0.625231, 0.759126983729316761},
    {184, 34, -2.091736, 6.3978135007983737105e-58},
};

}  // namespace

TEST_CASE("gauss_legendre closed forms") {
    const auto r1 = gauss_legendre(1, -1.0, 1.0);
    CHECK(r1.nodes[0] == doctest::Approx(0.0));
    CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    const auto r2 = gauss_legendre(2, -1.0, 1.0);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre invariants and exactness") {
    const auto r = gauss_legendre(16, 0.0, 1.0);
    double s5 = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s5 += r.weights[i] * std::pow(r.nodes[i], 5);
    CHECK(std::abs(s5 - 1.0 / 6.0) < 1e-14);

    for (int m : {3, 17, 64, 301}) {
        const auto q = gauss_legendre(m, -2.0, 5.0);
        double sum = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            CHECK(q.weights[i] > 0.0);
            CHECK(q.nodes[i] > -2.0);
            CHECK(q.nodes[i] < 5.0);
            if (i) CHECK(q.nodes[i] > q.nodes[i - 1]);
            sum += q.weights[i];
        }
        CHECK(std::abs(sum - 7.0) < 7.0 * 1e-12);
        // degree 2m-1 on (-1, 1): odd monomial integrates to zero, x^(2m-2) to 2/(2m-1)
        const auto u = gauss_legendre(m, -1.0, 1.0);
        double even = 0.0, odd = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            even += u.weights[i] * std::pow(u.nodes[i], 2 * m - 2);
            odd += u.weights[i] * std::pow(u.nodes[i], 2 * m - 1);
        }
        CHECK(std::abs(even - 2.0 / (2 * m - 1)) < 1e-12);
        CHECK(std::abs(odd) < 1e-13);
    }
}

TEST_CASE("gauss_legendre rejects bad input") {
    CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_legendre(4, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_legendre(4, 0.0, INFINITY), std::invalid_argument);
}

TEST_CASE("airy against extended precision") {
    for (const auto& row : kAiry) {
        const auto a = airy(row.x);
        CAPTURE(row.x);
        CHECK(std::abs(a.ai - row.ai) < 1e-10);
        CHECK(std::abs(a.aip - row.aip) < 1e-10);
        CHECK(airy_ai(row.x) == a.ai);
        CHECK(airy_ai_prime(row.x) == a.aip);
    }
    CHECK(airy_ai(10.0) < 1e-9);
    CHECK(airy_ai(40.0) >= 0.0);
    CHECK(std::isfinite(airy_ai(-200.0)));
}

TEST_CASE("airy closed forms at the origin") {
    const double ai0 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
    const double aip0 = -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
    CHECK(airy_ai(0.0) == doctest::Approx(ai0).epsilon(1e-14));
    CHECK(airy_ai_prime(0.0) == doctest::Approx(aip0).epsilon(1e-14));
}

TEST_CASE("airy branches overlap at the crossovers") {
    for (double x : {kAiryPositiveSwitch, kAiryNegativeSwitch}) {
        const auto s = airy_maclaurin(x);
        const auto a = airy_asymptotic(x);
        CAPTURE(x);
        CHECK(std::abs(s.ai - a.ai) < 1e-9);
        CHECK(std::abs(s.aip - a.aip) < 1e-9);
    }
}

TEST_CASE("airy ODE residual") {
    // h balances O(h^2 x^2 Ai) truncation against O(eps / h^2) rounding
    const double h = 1e-4;
    double worst = 0.0;
    for (double x = -10.0; x <= 6.0; x += 0.05) {
        const double d2 = (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
        worst = std::max(worst, std::abs(d2 - x * airy_ai(x)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("hermite_psi against extended precision") {
    for (const auto& row : kPsi) {
        const double v = hermite_psi(row.n, row.k, row.x).value;
        CAPTURE(row.n);
        CAPTURE(row.k);
        CHECK(std::abs(v - row.value) <= 1e-9 * std::abs(row.value));
    }
}

TEST_CASE("hermite_psi special values") {
    for (int n : {1, 2, 7, 100}) CHECK(hermite_psi(n, 1, 0.0).value == 0.0);
    CHECK(hermite_psi(2, 0, 0.0).value == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-15));
    CHECK_THROWS_AS(hermite_psi(5, 6, 0.0), std::out_of_range);
    CHECK_THROWS_AS(hermite_psi(5, -1, 0.0), std::out_of_range);
}

TEST_CASE("hermite_psi derivative matches central difference") {
    const double h = 1e-6;
    for (double x : {-1.3, 0.2, 1.9}) {
        const auto e = hermite_psi(40, 17, x, true);
        REQUIRE(e.derivative.has_value());
        const double fd = (hermite_psi(40, 17, x + h).value - hermite_psi(40, 17, x - h).value) / (2 * h);
        CHECK(*e.derivative == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("hermite normalisation n = 8") {
    const auto r = gauss_legendre(200, -10.0, 10.0);
    for (int k = 0; k < 8; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double v = hermite_psi(8, k, r.nodes[i]).value;
            s += r.weights[i] * v * v;
        }
        CHECK(std::abs(s - 1.0) < 1e-10);
    }
}

TEST_CASE("hermite functions survive at the spectral edge for large n") {
    // phi_0 alone underflows here; the recurrence must not
    const auto v = hermite_psi_all(1600, 1600, 2.0);
    CHECK(std::isfinite(v[1600]));
    CHECK(std::abs(v[1600]) > 1e-3);
    CHECK(hermite_psi_all(30, 30, 50.0)[30] == 0.0);
}

TEST_CASE("psi bounded-ratio diagnostic on bulk and edge compacts") {
    double bulk_lo = 1e300, bulk_hi = 0.0, edge_lo = 1e300, edge_hi = 0.0;
    for (int n : {100, 200, 400, 800}) {
        double b = 0.0, e = 0.0;
        for (double u = -1.0; u <= 1.0; u += 0.05) {
            b = std::max(b, std::abs(hermite_psi(n, n, u / n).value));
            e = std::max(e, std::abs(hermite_psi(n, n, 2.0 + u / std::pow(n, 2.0 / 3.0)).value));
        }
        e /= std::pow(n, 1.0 / 6.0);
        bulk_lo = std::min(bulk_lo, b);
        bulk_hi = std::max(bulk_hi, b);
        edge_lo = std::min(edge_lo, e);
        edge_hi = std::max(edge_hi, e);
    }
    CHECK(bulk_hi / bulk_lo < 1.5);
    CHECK(edge_hi / edge_lo < 1.5);
}
