#include "gue/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "gue/parallel.hpp"

namespace gue {

std::string to_string(SamplerRoute route) { return route == SamplerRoute::dense ? "dense" : "tridiag"; }

SamplerRoute parse_route(const std::string& text) {
    if (text == "dense") return SamplerRoute::dense;
    if (text == "tridiag" || text == "tridiagonal") return SamplerRoute::tridiagonal;
    throw std::invalid_argument("unknown sampler route '" + text + "' (expected dense|tridiag)");
}

Eigen::MatrixXcd sample_gue_matrix(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_gue_matrix: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sd_diag = std::sqrt(1.0 / n);
    const double sd_part = std::sqrt(0.5 / n);
    Eigen::MatrixXcd h(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = sd_diag * gauss(rng);
        for (int j = i + 1; j < n; ++j) {
            const double re = sd_part * gauss(rng);
            const double im = sd_part * gauss(rng);
            h(i, j) = {re, im};
            h(j, i) = {re, -im};
        }
    }
    return h;
}

EigenSample sample_gue_dense(int n, std::uint64_t seed) {
    const Eigen::MatrixXcd h = sample_gue_matrix(n, seed);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("sample_gue_dense: eigensolver did not converge (n=" + std::to_string(n) +
                                 ", seed=" + std::to_string(seed) + ")");
    }
    EigenSample s;
    s.n = n;
    s.seed = seed;
    s.route = SamplerRoute::dense;
    s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return s;
}

Tridiagonal sample_gue_tridiagonal_matrix(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_gue_tridiag: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Tridiagonal t;
    t.diag.resize(n);
    t.offdiag.resize(n - 1);
    const double sd = std::sqrt(1.0 / n);
    for (int i = 0; i < n; ++i) t.diag[i] = sd * gauss(rng);
    // chi_{2a} = sqrt(2 Gamma(a, 1)); divided by sqrt(2n)
    for (int k = 1; k < n; ++k) {
        std::gamma_distribution<double> gamma(static_cast<double>(n - k), 1.0);
        t.offdiag[k - 1] = std::sqrt(gamma(rng) / n);
    }
    return t;
}

std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t) {
    const int n = static_cast<int>(t.diag.size());
    std::vector<double> d = t.diag;
    std::vector<double> e(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) e[i] = t.offdiag[i];

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (++iter > 60) {
                    throw std::runtime_error("tridiagonal_eigenvalues: QL did not converge at index " +
                                             std::to_string(l));
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

int sturm_count(const Tridiagonal& t, double shift) {
    const std::size_t n = t.diag.size();
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double b2 = (i == 0) ? 0.0 : t.offdiag[i - 1] * t.offdiag[i - 1];
        q = t.diag[i] - shift - (i == 0 ? 0.0 : b2 / q);
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++count;
    }
    return count;
}

EigenSample sample_gue_tridiag(int n, std::uint64_t seed) {
    EigenSample s;
    s.n = n;
    s.seed = seed;
    s.route = SamplerRoute::tridiagonal;
    s.eigenvalues = tridiagonal_eigenvalues(sample_gue_tridiagonal_matrix(n, seed));
    return s;
}

EigenSample sample_gue(int n, std::uint64_t seed, SamplerRoute route) {
    return route == SamplerRoute::dense ? sample_gue_dense(n, seed) : sample_gue_tridiag(n, seed);
}

CountRecord count_in_windows(const EigenSample& sample, const std::vector<ScaledWindow>& windows) {
    const auto& ev = sample.eigenvalues;
    if (ev.empty()) throw std::invalid_argument("count_in_windows: empty sample");
    CountRecord rec;
    for (const auto& w : windows) {
        int count = 0;
        for (const auto& iv : w.realize(sample.n)) {
            const auto lo = std::lower_bound(ev.begin(), ev.end(), iv.lo);
            const auto hi = std::lower_bound(ev.begin(), ev.end(), iv.hi);
            count += static_cast<int>(hi - lo);
        }
        rec.occupancy.push_back(count);
    }
    const double scale = std::pow(static_cast<double>(sample.n), 2.0 / 3.0);
    const double lmin = ev.front();
    const double lmax = ev.back();
    rec.scaled_min = scale * (lmin + 2.0);
    rec.scaled_max = scale * (lmax - 2.0);
    rec.condition = scale * (lmax / lmin + 1.0);
    return rec;
}

std::vector<CountRecord> sample_records(int n, int reps, std::uint64_t seed, const std::vector<ScaledWindow>& windows,
                                        SamplerRoute route) {
    if (reps < 1) throw std::invalid_argument("sample_records: reps must be >= 1");
    std::vector<CountRecord> out(static_cast<std::size_t>(reps));
    parallel_for(out.size(), [&](std::size_t r) {
        out[r] = count_in_windows(sample_gue(n, replicate_seed(seed, r), route), windows);
    });
    return out;
}

EmpiricalSummary empirical_joint_pmf(const std::vector<CountRecord>& records, const std::vector<ScaledWindow>& windows,
                                     const std::vector<int>& lmax) {
    if (records.size() < kMinEmpiricalRecords) {
        throw std::invalid_argument("empirical_joint_pmf: need at least " + std::to_string(kMinEmpiricalRecords) +
                                    " records, got " + std::to_string(records.size()));
    }
    if (lmax.size() != windows.size()) throw std::invalid_argument("empirical_joint_pmf: one lmax per window");

    EmpiricalSummary out;
    out.samples = records.size();
    auto& dist = out.distribution;
    dist.windows = windows;
    dist.lmax = lmax;
    std::size_t cells = 1;
    for (int l : lmax) cells *= static_cast<std::size_t>(l + 1);
    dist.joint.assign(cells, 0.0);
    dist.marginals.resize(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) dist.marginals[i].assign(static_cast<std::size_t>(lmax[i] + 1), 0.0);

    const double total = static_cast<double>(records.size());
    std::vector<std::vector<int>> observations;
    observations.reserve(records.size());
    for (const auto& rec : records) {
        if (rec.occupancy.size() != windows.size()) throw std::invalid_argument("empirical_joint_pmf: record shape");
        observations.push_back(rec.occupancy);
        bool inside = true;
        for (std::size_t i = 0; i < windows.size(); ++i) {
            if (rec.occupancy[i] <= lmax[i]) {
                dist.marginals[i][rec.occupancy[i]] += 1.0 / total;
            } else {
                inside = false;
            }
        }
        if (inside) dist.joint[dist.flat_index(rec.occupancy)] += 1.0 / total;
    }
    dist.remainder = 1.0 - dist.joint_sum();
    dist.fill_defect();

    out.joint_standard_error.resize(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        const double p = dist.joint[c];
        out.joint_standard_error[c] = std::sqrt(p * (1.0 - p) / total);
    }
    out.independence = chi_square_independence(observations, lmax);
    return out;
}

std::vector<ExtremePair> extreme_pairs(int n, int reps, std::uint64_t seed, SamplerRoute route) {
    const auto records = sample_records(n, reps, seed, {}, route);
    std::vector<ExtremePair> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back({r.scaled_min, r.scaled_max});
    return out;
}

ConditionDecomposition decompose_condition(int n, double lambda_min, double lambda_max) {
    const double scale = std::pow(static_cast<double>(n), 2.0 / 3.0);
    const double sum = scale * (lambda_max - 2.0) + scale * (lambda_min + 2.0);
    return {scale * (lambda_max / lambda_min + 1.0), -0.5 * sum, (lambda_min + 2.0) / (2.0 * lambda_min) * sum};
}

ConditionStatistics condition_statistics(int n, int reps, std::uint64_t seed, SamplerRoute route) {
    if (reps < 1) throw std::invalid_argument("condition_statistics: reps must be >= 1");
    std::vector<std::pair<double, double>> extremes(static_cast<std::size_t>(reps));
    parallel_for(extremes.size(), [&](std::size_t r) {
        const auto s = sample_gue(n, replicate_seed(seed, r), route);
        extremes[r] = {s.eigenvalues.front(), s.eigenvalues.back()};
    });
    ConditionStatistics out;
    for (const auto& [lmin, lmax] : extremes) {
        if (lmin >= 0.0) {
            ++out.excluded;
            continue;
        }
        out.values.push_back(decompose_condition(n, lmin, lmax).statistic);
        out.lambda_min.push_back(lmin);
        out.lambda_max.push_back(lmax);
    }
    return out;
}

}  // namespace gue
