#include "gue/brute_force.hpp"

#include <algorithm>
#include <stdexcept>

#include "gue/specfun.hpp"

namespace gue {

namespace {

struct LabelledNodes {
    std::vector<double> x;
    std::vector<double> w;
    std::vector<int> label;
};

LabelledNodes segment_nodes(int n, const std::vector<ScaledWindow>& windows, int pps) {
    std::vector<double> cuts = {-kBruteForceBox, kBruteForceBox};
    for (const auto& win : windows) {
        for (const auto& iv : win.realize(n)) {
            for (double e : {iv.lo, iv.hi}) {
                if (e > -kBruteForceBox && e < kBruteForceBox) cuts.push_back(e);
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    LabelledNodes out;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double mid = 0.5 * (cuts[s] + cuts[s + 1]);
        int label = -1;
        for (std::size_t i = 0; i < windows.size() && label < 0; ++i) {
            for (const auto& iv : windows[i].realize(n)) {
                if (iv.contains(mid)) label = static_cast<int>(i);
            }
        }
        const auto rule = gauss_legendre(pps, cuts[s], cuts[s + 1]);
        out.x.insert(out.x.end(), rule.nodes.begin(), rule.nodes.end());
        out.w.insert(out.w.end(), rule.weights.begin(), rule.weights.end());
        out.label.insert(out.label.end(), rule.size(), label);
    }
    return out;
}

// Visits every node tuple with its labels and quadrature mass w_1..w_n p_n(x).
template <class Visit>
void for_each_tuple(int n, const std::vector<ScaledWindow>& windows, int points_per_segment, Visit&& visit) {
    if (n < 1 || n > 3) throw std::invalid_argument("brute_force: only n in {1, 2, 3} is supported");
    if (!windows_disjoint(windows, n)) throw std::invalid_argument("brute_force: windows overlap");

    const auto nodes = segment_nodes(n, windows, points_per_segment);
    const std::size_t m = nodes.x.size();

    std::vector<std::vector<double>> psi(m);
    for (std::size_t a = 0; a < m; ++a) psi[a] = hermite_psi_all(n, n, nodes.x[a]);
    std::vector<double> k(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
            const double v = kn_from_psi(psi[a], psi[b], nodes.x[a], nodes.x[b]);
            k[a * m + b] = v;
            k[b * m + a] = v;
        }
    }
    auto kk = [&](std::size_t a, std::size_t b) { return k[a * m + b]; };

    int labels[3] = {-1, -1, -1};
    if (n == 1) {
        for (std::size_t a = 0; a < m; ++a) {
            labels[0] = nodes.label[a];
            visit(std::span<const int>(labels, 1), nodes.w[a] * kk(a, a));
        }
    } else if (n == 2) {
        for (std::size_t a = 0; a < m; ++a) {
            labels[0] = nodes.label[a];
            for (std::size_t b = 0; b < m; ++b) {
                labels[1] = nodes.label[b];
                const double det = kk(a, a) * kk(b, b) - kk(a, b) * kk(b, a);
                visit(std::span<const int>(labels, 2), nodes.w[a] * nodes.w[b] * det / 2.0);
            }
        }
    } else {
        for (std::size_t a = 0; a < m; ++a) {
            labels[0] = nodes.label[a];
            for (std::size_t b = 0; b < m; ++b) {
                labels[1] = nodes.label[b];
                const double wab = nodes.w[a] * nodes.w[b] / 6.0;
                const double kaa = kk(a, a), kab = kk(a, b), kbb = kk(b, b);
                for (std::size_t c = 0; c < m; ++c) {
                    labels[2] = nodes.label[c];
                    const double kac = kk(a, c), kbc = kk(b, c), kcc = kk(c, c);
                    const double det = kaa * (kbb * kcc - kbc * kbc) - kab * (kab * kcc - kbc * kac) +
                                       kac * (kab * kbc - kbb * kac);
                    visit(std::span<const int>(labels, 3), wab * nodes.w[c] * det);
                }
            }
        }
    }
}

}  // namespace

double brute_force_expectation(int n, const std::vector<ScaledWindow>& windows,
                               const std::function<double(std::span<const int>)>& f, int points_per_segment) {
    double total = 0.0;
    for_each_tuple(n, windows, points_per_segment,
                   [&](std::span<const int> labels, double mass) { total += mass * f(labels); });
    return total;
}

CountingDistribution brute_force_joint_pmf(int n, const std::vector<ScaledWindow>& windows, int points_per_segment) {
    CountingDistribution dist;
    dist.windows = windows;
    dist.lmax.assign(windows.size(), n);
    std::size_t cells = 1;
    for (std::size_t i = 0; i < windows.size(); ++i) cells *= static_cast<std::size_t>(n + 1);
    std::vector<double> raw(cells, 0.0);

    std::vector<int> occ(windows.size());
    for_each_tuple(n, windows, points_per_segment, [&](std::span<const int> labels, double mass) {
        std::fill(occ.begin(), occ.end(), 0);
        for (int l : labels) {
            if (l >= 0) ++occ[static_cast<std::size_t>(l)];
        }
        raw[dist.flat_index(occ)] += mass;
    });

    dist.joint.resize(cells);
    for (std::size_t c = 0; c < cells; ++c) dist.joint[c] = clip_probability(raw[c], dist.clipped);
    dist.remainder = 1.0 - dist.joint_sum();
    dist.marginals.resize(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) dist.marginals[i] = dist.marginal_of_joint(i);
    dist.fill_defect();
    return dist;
}

}  // namespace gue
