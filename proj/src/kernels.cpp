#include "gue/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gue/specfun.hpp"

namespace gue {

double default_kappa(double center) { return (center == -2.0 || center == 2.0) ? 2.0 / 3.0 : 1.0; }

ScaledWindow::ScaledWindow(double center, std::vector<Interval> base)
    : ScaledWindow(center, std::move(base), default_kappa(center)) {}

ScaledWindow::ScaledWindow(double center, std::vector<Interval> base, double kappa)
    : center_(center), kappa_(kappa), base_(std::move(base)) {
    if (!std::isfinite(center_) || !std::isfinite(kappa_) || kappa_ < 0.0) {
        throw std::invalid_argument("ScaledWindow: center and kappa must be finite, kappa >= 0");
    }
    if (kappa_ > 0.0 && (center_ < -2.0 || center_ > 2.0)) {
        throw std::invalid_argument("ScaledWindow: center must lie in [-2, 2]");
    }
    if (base_.empty()) {
        throw std::invalid_argument("ScaledWindow: empty base set");
    }
    std::sort(base_.begin(), base_.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < base_.size(); ++i) {
        const auto& iv = base_[i];
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi) {
            throw std::invalid_argument("ScaledWindow: base intervals must be bounded with lo <= hi");
        }
        if (i > 0 && base_[i - 1].hi > iv.lo) {
            throw std::invalid_argument("ScaledWindow: base intervals overlap");
        }
    }
}

double ScaledWindow::scale(int n) const { return std::pow(static_cast<double>(n), kappa_); }

std::vector<Interval> ScaledWindow::realize(int n) const {
    const double s = scale(n);
    std::vector<Interval> out;
    out.reserve(base_.size());
    for (const auto& iv : base_) {
        out.push_back({center_ + iv.lo / s, center_ + iv.hi / s});
    }
    return out;
}

double ScaledWindow::base_measure() const {
    double total = 0.0;
    for (const auto& iv : base_) total += iv.length();
    return total;
}

double ScaledWindow::realized_measure(int n) const { return base_measure() / scale(n); }

std::string ScaledWindow::describe() const {
    std::ostringstream os;
    if (kappa_ == 0.0) {
        os << "raw";
    } else if (is_left_edge()) {
        os << "edge-";
    } else if (is_right_edge()) {
        os << "edge+";
    } else {
        os << "bulk@" << center_;
    }
    os << ':';
    for (std::size_t i = 0; i < base_.size(); ++i) {
        if (i) os << 'U';
        os << '(' << base_[i].lo << ',' << base_[i].hi << ')';
    }
    if (kappa_ != default_kappa(center_) && kappa_ != 0.0) os << "^" << kappa_;
    return os.str();
}

bool windows_disjoint(const std::vector<ScaledWindow>& windows, int n) {
    std::vector<Interval> all;
    for (const auto& w : windows) {
        auto r = w.realize(n);
        all.insert(all.end(), r.begin(), r.end());
    }
    std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < all.size(); ++i) {
        if (all[i - 1].hi > all[i].lo) return false;
    }
    return true;
}

int disjointness_threshold(const std::vector<ScaledWindow>& windows, int n_max) {
    if (!windows_disjoint(windows, n_max)) return -1;
    int n = n_max;
    while (n > 1 && windows_disjoint(windows, n - 1)) --n;
    return n;
}

double semicircle_density(double mu) {
    if (mu <= -2.0 || mu >= 2.0) return 0.0;
    return std::sqrt(4.0 - mu * mu) / (2.0 * std::numbers::pi);
}

double kernel_diagonal_threshold(double x, double y) { return 1e-4 * (1.0 + std::abs(x) + std::abs(y)); }

double kn_from_psi(const std::vector<double>& psi_x, const std::vector<double>& psi_y, double x, double y) {
    const std::size_t n = psi_x.size() - 1;
    if (std::abs(x - y) > kernel_diagonal_threshold(x, y)) {
        return (psi_x[n] * psi_y[n - 1] - psi_y[n] * psi_x[n - 1]) / (x - y);
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += psi_x[k] * psi_y[k];
    return sum;
}

double kn(int n, double x, double y) {
    if (n < 1) throw std::invalid_argument("kn: n must be >= 1");
    const auto px = hermite_psi_all(n, n, x);
    const auto py = hermite_psi_all(n, n, y);
    return kn_from_psi(px, py, x, y);
}

double kn_sum_form(int n, double x, double y) {
    const auto px = hermite_psi_all(n, n - 1, x);
    const auto py = hermite_psi_all(n, n - 1, y);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += px[k] * py[k];
    return sum;
}

double kn_christoffel_darboux(int n, double x, double y) {
    const auto px = hermite_psi_all(n, n, x);
    const auto py = hermite_psi_all(n, n, y);
    return (px[n] * py[n - 1] - py[n] * px[n - 1]) / (x - y);
}

double sine_kernel(double rho, double x, double y) {
    if (!(rho > 0.0)) throw std::invalid_argument("sine_kernel: rho must be positive");
    const double d = x - y;
    if (d == 0.0) return rho;
    return std::sin(std::numbers::pi * rho * d) / (std::numbers::pi * d);
}

double airy_kernel(double x, double y) {
    const double d = x - y;
    if (std::abs(d) < 1e-6 * (1.0 + std::abs(x) + std::abs(y))) {
        // symmetric in (x, y): the midpoint diagonal is second-order accurate
        const double c = 0.5 * (x + y);
        const auto a = airy(c);
        return a.aip * a.aip - c * a.ai * a.ai;
    }
    const auto ax = airy(x);
    const auto ay = airy(y);
    return (ax.ai * ay.aip - ay.ai * ax.aip) / d;
}

double scaled_kn(int n, const ScaledWindow& w, double u, double v) {
    const double s = w.scale(n);
    return kn(n, w.center() + u / s, w.center() + v / s) / s;
}

double limit_kernel(const ScaledWindow& w, double u, double v) {
    if (w.is_right_edge()) return airy_kernel(u, v);
    if (w.is_left_edge()) return airy_kernel(-u, -v);
    if (w.is_bulk() && w.center() > -2.0 && w.center() < 2.0) {
        return sine_kernel(semicircle_density(w.center()), u, v);
    }
    throw std::invalid_argument("limit_kernel: window has no universal limit (" + w.describe() + ")");
}

namespace {

std::vector<double> lattice(const std::vector<Interval>& intervals, int grid) {
    std::vector<double> pts;
    const int per = std::max(2, grid / static_cast<int>(intervals.size()));
    for (const auto& iv : intervals) {
        if (iv.length() == 0.0) {
            pts.push_back(iv.lo);
            continue;
        }
        for (int i = 0; i < per; ++i) pts.push_back(iv.lo + iv.length() * i / (per - 1));
    }
    return pts;
}

}  // namespace

double kernel_sup(int n, const ScaledWindow& w1, const ScaledWindow& w2, int grid) {
    if (grid < 16) throw std::invalid_argument("kernel_sup: grid must be >= 16");
    const auto xs = lattice(w1.realize(n), grid);
    const auto ys = lattice(w2.realize(n), grid);
    std::vector<std::vector<double>> py;
    py.reserve(ys.size());
    for (double y : ys) py.push_back(hermite_psi_all(n, n, y));
    double best = 0.0;
    for (double x : xs) {
        const auto px = hermite_psi_all(n, n, x);
        for (std::size_t j = 0; j < ys.size(); ++j) {
            best = std::max(best, std::abs(kn_from_psi(px, py[j], x, ys[j])));
        }
    }
    return best;
}

double scaled_kernel_sup_error(int n, const ScaledWindow& w, int grid) {
    const auto box = w.bounding_box();
    const auto pts = lattice({box}, grid);
    const double s = w.scale(n);
    std::vector<std::vector<double>> psi;
    psi.reserve(pts.size());
    for (double u : pts) psi.push_back(hermite_psi_all(n, n, w.center() + u / s));
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i; j < pts.size(); ++j) {
            const double x = w.center() + pts[i] / s;
            const double y = w.center() + pts[j] / s;
            const double scaled = kn_from_psi(psi[i], psi[j], x, y) / s;
            worst = std::max(worst, std::abs(scaled - limit_kernel(w, pts[i], pts[j])));
        }
    }
    return worst;
}

}  // namespace gue
