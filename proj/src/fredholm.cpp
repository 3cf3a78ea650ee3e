#include "gue/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gue {

int default_quadrature_points(const ScaledWindow& w) {
    return (w.is_left_edge() || w.is_right_edge()) ? 60 : 40;
}

MultiWindowOperator MultiWindowOperator::discretize(int n, std::vector<ScaledWindow> windows, int m) {
    std::vector<int> per(windows.size(), m);
    return discretize(n, std::move(windows), std::move(per));
}

MultiWindowOperator MultiWindowOperator::discretize(int n, std::vector<ScaledWindow> windows) {
    std::vector<int> per;
    per.reserve(windows.size());
    for (const auto& w : windows) per.push_back(default_quadrature_points(w));
    return discretize(n, std::move(windows), std::move(per));
}

MultiWindowOperator MultiWindowOperator::discretize(int n, std::vector<ScaledWindow> windows,
                                                    std::vector<int> m_per_window) {
    if (n < 1) throw std::invalid_argument("discretize: n must be >= 1");
    if (windows.empty()) throw std::invalid_argument("discretize: no windows");
    if (m_per_window.size() != windows.size()) {
        throw std::invalid_argument("discretize: one point count per window required");
    }
    for (int m : m_per_window) {
        if (m < 4) throw std::invalid_argument("discretize: need at least 4 quadrature points per interval");
    }
    if (!windows_disjoint(windows, n)) {
        throw std::invalid_argument("discretize: realized windows overlap at n=" + std::to_string(n));
    }

    MultiWindowOperator op;
    op.n_ = n;
    op.windows_ = std::move(windows);

    std::vector<double> nodes;
    std::vector<double> weights;
    op.offsets_.push_back(0);
    for (std::size_t i = 0; i < op.windows_.size(); ++i) {
        const auto& w = op.windows_[i];
        const int m = m_per_window[i];
        for (const auto& iv : w.realize(n)) {
            if (!(iv.length() > 0.0)) {
                throw std::invalid_argument("discretize: zero-measure interval in window " + w.describe());
            }
            const auto rule = gauss_legendre(m, iv.lo, iv.hi);
            nodes.insert(nodes.end(), rule.nodes.begin(), rule.nodes.end());
            weights.insert(weights.end(), rule.weights.begin(), rule.weights.end());
            op.owner_.insert(op.owner_.end(), rule.size(), i);
        }
        op.offsets_.push_back(nodes.size());

        const double rho = semicircle_density(w.center());
        const double oscillations = rho * std::pow(static_cast<double>(n), 1.0 - w.kappa()) * w.base_measure();
        if (m < oscillations) {
            std::ostringstream msg;
            msg << "window " << w.describe() << ": " << m << " points per interval may not resolve ~" << oscillations
                << " kernel oscillations";
            op.warnings_.push_back(msg.str());
        }
    }

    const auto dim = static_cast<Eigen::Index>(nodes.size());
    op.nodes_ = Eigen::Map<const Eigen::VectorXd>(nodes.data(), dim);
    op.weights_ = Eigen::Map<const Eigen::VectorXd>(weights.data(), dim);

    std::vector<std::vector<double>> psi(nodes.size());
    for (std::size_t a = 0; a < nodes.size(); ++a) psi[a] = hermite_psi_all(n, n, nodes[a]);

    op.kernel_.resize(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        for (Eigen::Index b = a; b < dim; ++b) {
            const double v = kn_from_psi(psi[a], psi[b], nodes[a], nodes[b]);
            op.kernel_(a, b) = v;
            op.kernel_(b, a) = v;
        }
    }
    return op;
}

Eigen::MatrixXcd MultiWindowOperator::weighted(std::span<const cdouble> lambda) const {
    if (lambda.size() != windows_.size()) throw std::invalid_argument("weighted: one lambda per window required");
    const auto dim = static_cast<Eigen::Index>(dimension());
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        const cdouble s = lambda[owner_[a]] * weights_[a];
        out.row(a) = s * kernel_.row(a).cast<cdouble>();
    }
    return out;
}

Eigen::MatrixXd MultiWindowOperator::weighted(std::span<const double> lambda) const {
    if (lambda.size() != windows_.size()) throw std::invalid_argument("weighted: one lambda per window required");
    const auto dim = static_cast<Eigen::Index>(dimension());
    Eigen::MatrixXd out(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) out.row(a) = (lambda[owner_[a]] * weights_[a]) * kernel_.row(a);
    return out;
}

Eigen::MatrixXd MultiWindowOperator::symmetrized(std::span<const double> lambda) const {
    if (lambda.size() != windows_.size()) throw std::invalid_argument("symmetrized: one lambda per window required");
    const auto dim = static_cast<Eigen::Index>(dimension());
    Eigen::VectorXd root(dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        const double l = lambda[owner_[a]];
        if (l < 0.0) throw std::invalid_argument("symmetrized: lambda must be nonnegative");
        root[a] = std::sqrt(l * weights_[a]);
    }
    return root.asDiagonal() * kernel_ * root.asDiagonal();
}

MultiWindowOperator MultiWindowOperator::block(std::size_t i) const {
    MultiWindowOperator op;
    op.n_ = n_;
    op.windows_ = {windows_.at(i)};
    const auto off = static_cast<Eigen::Index>(offsets_[i]);
    const auto len = static_cast<Eigen::Index>(block_size(i));
    op.offsets_ = {0, block_size(i)};
    op.owner_.assign(block_size(i), 0);
    op.nodes_ = nodes_.segment(off, len);
    op.weights_ = weights_.segment(off, len);
    op.kernel_ = kernel_.block(off, off, len, len);
    return op;
}

cdouble fredholm_det(const MultiWindowOperator& op, cdouble z, std::span<const cdouble> lambda) {
    if (z == cdouble(0.0)) return 1.0;
    Eigen::MatrixXcd m = -z * op.weighted(lambda);
    m.diagonal().array() += 1.0;
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
}

double fredholm_det(const MultiWindowOperator& op, double z, std::span<const double> lambda) {
    if (z == 0.0) return 1.0;
    Eigen::MatrixXd m = -z * op.weighted(lambda);
    m.diagonal().array() += 1.0;
    return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

double gap_probability(const MultiWindowOperator& op) {
    const std::vector<double> ones(op.window_count(), 1.0);
    return fredholm_det(op, 1.0, ones);
}

Eigen::VectorXd operator_eigenvalues(const MultiWindowOperator& op, std::span<const double> lambda) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.symmetrized(lambda), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

TraceSplit trace_powers(const MultiWindowOperator& op, std::span<const double> lambda, int kmax) {
    if (kmax < 1) throw std::invalid_argument("trace_powers: kmax must be >= 1");
    const std::size_t p = op.window_count();
    const Eigen::MatrixXd b = op.weighted(lambda);

    TraceSplit out;
    out.total.resize(kmax);
    out.remainder.resize(kmax);
    out.per_window.assign(p, std::vector<double>(kmax));

    for (std::size_t i = 0; i < p; ++i) {
        const auto off = static_cast<Eigen::Index>(op.block_offset(i));
        const auto len = static_cast<Eigen::Index>(op.block_size(i));
        const Eigen::MatrixXd bi = b.block(off, off, len, len);
        Eigen::MatrixXd power = bi;
        for (int k = 0; k < kmax; ++k) {
            if (k > 0) power = power * bi;
            out.per_window[i][k] = power.trace();
        }
    }

    Eigen::MatrixXd power = b;
    for (int k = 0; k < kmax; ++k) {
        double split = 0.0;
        for (std::size_t i = 0; i < p; ++i) split += out.per_window[i][k];
        if (k == 0) {
            out.total[0] = split;
            out.remainder[0] = 0.0;
            continue;
        }
        power = power * b;
        out.total[k] = power.trace();
        out.remainder[k] = out.total[k] - split;
    }
    return out;
}

cdouble log_derivative(const MultiWindowOperator& op, std::span<const cdouble> lambda, cdouble z) {
    const Eigen::MatrixXcd b = op.weighted(lambda);
    Eigen::MatrixXcd m = -z * b;
    m.diagonal().array() += 1.0;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    if (!(lu.rcond() > 1e-14)) {
        throw std::domain_error("log_derivative: I - zB is singular (determinant vanishes at this z)");
    }
    return -lu.solve(b).trace();
}

cdouble independence_defect_det(const MultiWindowOperator& op, cdouble z, std::span<const cdouble> lambda) {
    const cdouble joint = fredholm_det(op, z, lambda);
    if (op.window_count() == 1) return 0.0;
    cdouble prod = 1.0;
    for (std::size_t i = 0; i < op.window_count(); ++i) {
        const cdouble li[1] = {lambda[i]};
        prod *= fredholm_det(op.block(i), z, li);
    }
    return joint - prod;
}

cdouble independence_defect_det(int n, const std::vector<ScaledWindow>& windows, cdouble z,
                                std::span<const cdouble> lambda) {
    return independence_defect_det(MultiWindowOperator::discretize(n, windows), z, lambda);
}

int contour_points_for(std::size_t windows, int lmax, const ContourOptions& opts) {
    if (opts.points > 0) {
        if (opts.points <= lmax) throw std::invalid_argument("contour points must exceed lmax");
        return opts.points;
    }
    int q = 64;
    auto total = [&](int qq) {
        double t = 1.0;
        for (std::size_t i = 0; i < windows; ++i) t *= qq;
        return t;
    };
    while (total(q) > 8192.0 && q / 2 > 2 * (lmax + 1)) q /= 2;
    return q;
}

namespace {

// Taylor coefficients of D around lambda = 1 on a tensor grid of circles.
// Returns c[l] for l in the table shape (row-major, last fastest).
std::vector<cdouble> contour_coefficients(const MultiWindowOperator& op, const std::vector<int>& lmax, int q,
                                          double radius, double& min_abs_det) {
    const std::size_t p = op.window_count();
    const auto dim = static_cast<Eigen::Index>(op.dimension());

    // W A, rows scaled by the quadrature weights
    Eigen::MatrixXd wa = op.weights().asDiagonal() * op.kernel_matrix();

    std::vector<cdouble> roots(q);
    for (int j = 0; j < q; ++j) roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / q);

    std::size_t points = 1;
    for (std::size_t i = 0; i < p; ++i) points *= static_cast<std::size_t>(q);

    std::vector<cdouble> values(points);
    std::vector<int> idx(p, 0);
    std::vector<cdouble> lambda(p);
    Eigen::MatrixXcd m(dim, dim);
    for (std::size_t flat = 0; flat < points; ++flat) {
        std::size_t rest = flat;
        for (std::size_t i = p; i-- > 0;) {
            idx[i] = static_cast<int>(rest % q);
            rest /= q;
        }
        for (std::size_t i = 0; i < p; ++i) lambda[i] = 1.0 + radius * roots[idx[i]];
        for (Eigen::Index a = 0; a < dim; ++a) {
            m.row(a) = (-lambda[op.block_of(a)]) * wa.row(a).cast<cdouble>();
        }
        m.diagonal().array() += 1.0;
        values[flat] = Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
    }
    min_abs_det = INFINITY;
    for (const auto& v : values) min_abs_det = std::min(min_abs_det, std::abs(v));

    // separable inverse DFT, one axis at a time
    std::vector<std::size_t> shape(p, static_cast<std::size_t>(q));
    for (std::size_t axis = 0; axis < p; ++axis) {
        const std::size_t out_len = static_cast<std::size_t>(lmax[axis] + 1);
        std::size_t inner = 1;
        for (std::size_t i = axis + 1; i < p; ++i) inner *= shape[i];
        std::size_t outer = 1;
        for (std::size_t i = 0; i < axis; ++i) outer *= shape[i];

        std::vector<cdouble> next(outer * out_len * inner);
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t l = 0; l < out_len; ++l) {
                const double rl = std::pow(radius, -static_cast<double>(l));
                for (std::size_t in = 0; in < inner; ++in) {
                    cdouble acc = 0.0;
                    for (int j = 0; j < q; ++j) {
                        acc += values[(o * shape[axis] + j) * inner + in] *
                               std::conj(roots[(static_cast<std::size_t>(j) * l) % q]);
                    }
                    next[(o * out_len + l) * inner + in] = acc * rl / static_cast<double>(q);
                }
            }
        }
        values = std::move(next);
        shape[axis] = out_len;
    }
    return values;
}

// A determinant that vanished (or overflowed) somewhere on the contour.
constexpr double kDegenerateDet = 1e-280;

bool contour_values_usable(const std::vector<cdouble>& coeffs, double min_abs_det) {
    if (!(min_abs_det > kDegenerateDet)) return false;
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](const cdouble& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

std::vector<double> extract_table(const MultiWindowOperator& op, const std::vector<int>& lmax,
                                  const ContourOptions& opts, int& clipped) {
    const std::size_t p = op.window_count();
    int table_lmax = 0;
    for (int l : lmax) table_lmax = std::max(table_lmax, l);
    const int q = contour_points_for(p, table_lmax, opts);

    double radius = opts.radius;
    std::vector<cdouble> coeffs;
    for (int attempt = 0;; ++attempt) {
        double min_abs_det = 0.0;
        coeffs = contour_coefficients(op, lmax, q, radius, min_abs_det);
        if (contour_values_usable(coeffs, min_abs_det)) break;
        if (attempt >= opts.max_retries) {
            throw std::runtime_error("counting_joint_pmf: determinant degenerate on every contour radius tried");
        }
        radius *= 0.5;
    }

    CountingDistribution shape;
    shape.lmax = lmax;
    std::vector<double> table(coeffs.size());
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
        const auto occ = shape.occupancy_of(c);
        int total = 0;
        bool beyond_degree = false;
        for (std::size_t i = 0; i < p; ++i) {
            total += occ[i];
            if (static_cast<std::size_t>(occ[i]) > op.block_size(i)) beyond_degree = true;
        }
        if (beyond_degree) {
            table[c] = 0.0;  // D has degree <= block size in lambda_i
            continue;
        }
        const double sign = (total % 2 == 0) ? 1.0 : -1.0;
        table[c] = clip_probability(sign * coeffs[c].real(), clipped);
    }
    return table;
}

}  // namespace

CountingDistribution counting_joint_pmf(const MultiWindowOperator& op, std::vector<int> lmax,
                                        const ContourOptions& opts) {
    if (lmax.size() != op.window_count()) throw std::invalid_argument("counting_joint_pmf: one lmax per window");
    for (int l : lmax) {
        if (l < 0) throw std::invalid_argument("counting_joint_pmf: lmax must be >= 0");
    }

    CountingDistribution dist;
    dist.windows = op.windows();
    dist.lmax = lmax;
    dist.joint = extract_table(op, lmax, opts, dist.clipped);
    dist.remainder = 1.0 - dist.joint_sum();

    dist.marginals.resize(op.window_count());
    if (op.window_count() == 1) {
        dist.marginals[0] = dist.joint;
    } else {
        for (std::size_t i = 0; i < op.window_count(); ++i) {
            dist.marginals[i] = extract_table(op.block(i), {lmax[i]}, opts, dist.clipped);
        }
    }
    dist.fill_defect();
    return dist;
}

CountingDistribution counting_joint_pmf(int n, const std::vector<ScaledWindow>& windows, std::vector<int> lmax, int m,
                                        const ContourOptions& opts) {
    return counting_joint_pmf(MultiWindowOperator::discretize(n, windows, m), std::move(lmax), opts);
}

std::vector<double> single_window_pmf_from_spectrum(const MultiWindowOperator& op, int lmax) {
    const std::vector<double> ones(op.window_count(), 1.0);
    const Eigen::VectorXd mu = operator_eigenvalues(op, ones);
    // coefficients of prod_k (1 - mu_k + mu_k t): P(N = l) = [t^l]
    std::vector<double> poly(1, 1.0);
    for (Eigen::Index k = 0; k < mu.size(); ++k) {
        const double m = std::clamp(mu[k], 0.0, 1.0);
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j] += poly[j] * (1.0 - m);
            next[j + 1] += poly[j] * m;
        }
        poly = std::move(next);
    }
    poly.resize(static_cast<std::size_t>(lmax) + 1, 0.0);
    return poly;
}

HadamardReport hadamard_bound_check(const MultiWindowOperator& op, std::span<const double> lambda, int k, int draws,
                                    std::uint64_t seed) {
    if (k < 1 || k > 8) throw std::invalid_argument("hadamard_bound_check: k must be in [1, 8]");
    const int n = op.n();

    std::vector<Interval> pieces;
    std::vector<std::size_t> piece_owner;
    std::vector<double> lengths;
    for (std::size_t i = 0; i < op.window_count(); ++i) {
        for (const auto& iv : op.windows()[i].realize(n)) {
            pieces.push_back(iv);
            piece_owner.push_back(i);
            lengths.push_back(iv.length());
        }
    }
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(lengths.begin(), lengths.end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    HadamardReport report;
    Eigen::MatrixXd s(k, k);
    std::vector<double> xs(k);
    std::vector<double> ls(k);
    for (int d = 0; d < draws; ++d) {
        for (int i = 0; i < k; ++i) {
            const std::size_t pc = pick(rng);
            xs[i] = pieces[pc].lo + unit(rng) * pieces[pc].length();
            ls[i] = lambda[piece_owner[pc]];
        }
        std::vector<std::vector<double>> psi(k);
        for (int i = 0; i < k; ++i) psi[i] = hermite_psi_all(n, n, xs[i]);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) s(i, j) = ls[i] * kn_from_psi(psi[i], psi[j], xs[i], xs[j]);
        }
        const double det = std::abs(s.determinant());
        double bound = 1.0;
        for (int i = 0; i < k; ++i) bound *= s.row(i).norm();
        const double ratio = bound > 0.0 ? det / bound : (det > 0.0 ? INFINITY : 0.0);
        report.worst_ratio = std::max(report.worst_ratio, ratio);
        if (det > bound * (1.0 + 1e-12)) report.passed = false;
        ++report.draws;
    }
    return report;
}

std::vector<Eigen::MatrixXd> iterated_kernel_sup(const MultiWindowOperator& op, std::span<const double> lambda,
                                                 int kmax) {
    if (kmax < 1) throw std::invalid_argument("iterated_kernel_sup: kmax must be >= 1");
    const auto dim = static_cast<Eigen::Index>(op.dimension());
    const std::size_t p = op.window_count();

    Eigen::MatrixXd abs_s(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        abs_s.row(a) = std::abs(lambda[op.block_of(a)]) * op.kernel_matrix().row(a).cwiseAbs();
    }
    // |S|^(k) = |S| W |S|^(k-1)
    const Eigen::MatrixXd sw = abs_s * op.weights().asDiagonal();

    std::vector<Eigen::MatrixXd> out;
    Eigen::MatrixXd current = abs_s;
    for (int k = 1; k <= kmax; ++k) {
        if (k > 1) current = sw * current;
        Eigen::MatrixXd sup = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
        for (std::size_t m = 0; m < p; ++m) {
            for (std::size_t l = 0; l < p; ++l) {
                sup(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(l)) =
                    current
                        .block(static_cast<Eigen::Index>(op.block_offset(m)),
                               static_cast<Eigen::Index>(op.block_offset(l)),
                               static_cast<Eigen::Index>(op.block_size(m)), static_cast<Eigen::Index>(op.block_size(l)))
                        .maxCoeff();
            }
        }
        out.push_back(std::move(sup));
    }
    return out;
}

}  // namespace gue
