#include "gue/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace gue {

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

double kolmogorov_survival(double lambda) {
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-18) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

KsTest ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double ne = na * nb / (na + nb);
    const double root = std::sqrt(ne);
    return {d, kolmogorov_survival((root + 0.12 + 0.11 / root) * d)};
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("pearson_correlation: need paired samples");
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

double chi_square_survival(double statistic, int dof) {
    if (dof <= 0) return 1.0;
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

namespace {

struct Contingency {
    std::vector<int> dims;
    std::vector<double> observed;
    std::vector<std::vector<double>> marginals;
    double total = 0.0;

    std::size_t cells() const { return observed.size(); }
    std::vector<int> coords(std::size_t flat) const {
        std::vector<int> c(dims.size());
        for (std::size_t i = dims.size(); i-- > 0;) {
            c[i] = static_cast<int>(flat % static_cast<std::size_t>(dims[i]));
            flat /= static_cast<std::size_t>(dims[i]);
        }
        return c;
    }
    double expected(std::size_t flat) const {
        const auto c = coords(flat);
        double e = total;
        for (std::size_t i = 0; i < dims.size(); ++i) e *= marginals[i][c[i]] / total;
        return e;
    }
};

Contingency tabulate(const std::vector<std::vector<int>>& obs, const std::vector<int>& dims) {
    Contingency t;
    t.dims = dims;
    std::size_t cells = 1;
    for (int d : dims) cells *= static_cast<std::size_t>(d);
    t.observed.assign(cells, 0.0);
    t.marginals.resize(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) t.marginals[i].assign(static_cast<std::size_t>(dims[i]), 0.0);
    for (const auto& row : obs) {
        std::size_t flat = 0;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            const int c = std::clamp(row[i], 0, dims[i] - 1);
            flat = flat * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(c);
            t.marginals[i][c] += 1.0;
        }
        t.observed[flat] += 1.0;
    }
    t.total = static_cast<double>(obs.size());
    return t;
}

}  // namespace

ChiSquareResult chi_square_independence(const std::vector<std::vector<int>>& observations,
                                        const std::vector<int>& lmax) {
    if (observations.empty()) throw std::invalid_argument("chi_square_independence: no observations");
    for (const auto& row : observations) {
        if (row.size() != lmax.size()) throw std::invalid_argument("chi_square_independence: ragged observations");
    }
    std::vector<int> dims;
    for (int l : lmax) dims.push_back(std::max(1, l + 1));

    Contingency table = tabulate(observations, dims);
    for (;;) {
        double min_expected = INFINITY;
        for (std::size_t c = 0; c < table.cells(); ++c) min_expected = std::min(min_expected, table.expected(c));
        if (min_expected >= 5.0) break;
        int axis = -1;
        double smallest = INFINITY;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            if (dims[i] <= 2) continue;
            const double top = table.marginals[i][static_cast<std::size_t>(dims[i] - 1)];
            if (top < smallest) {
                smallest = top;
                axis = static_cast<int>(i);
            }
        }
        if (axis < 0) break;
        --dims[static_cast<std::size_t>(axis)];
        table = tabulate(observations, dims);
    }

    ChiSquareResult res;
    res.categories = dims;
    double lumped_o = 0.0, lumped_e = 0.0;
    for (std::size_t c = 0; c < table.cells(); ++c) {
        const double e = table.expected(c);
        const double o = table.observed[c];
        if (e < 5.0) {
            lumped_o += o;
            lumped_e += e;
            ++res.lumped_cells;
            continue;
        }
        res.statistic += (o - e) * (o - e) / e;
    }
    if (lumped_e > 0.0) res.statistic += (lumped_o - lumped_e) * (lumped_o - lumped_e) / lumped_e;

    int cells = 1, sum_free = 0;
    for (int d : dims) {
        cells *= d;
        sum_free += d - 1;
    }
    res.dof = cells - 1 - sum_free - std::max(0, res.lumped_cells - 1);
    res.p_value = chi_square_survival(res.statistic, res.dof);
    return res;
}

}  // namespace gue
