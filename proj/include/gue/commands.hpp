#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gue/kernels.hpp"
#include "gue/sampling.hpp"

namespace gue {

/// Bad or missing arguments; the CLI maps this to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct KernelLimitsParams {
    std::vector<int> ns;
    std::vector<ScaledWindow> windows;
    int grid = 64;
};

struct GapProbParams {
    int n = 0;
    std::vector<ScaledWindow> windows;
    std::vector<int> lmax;  // one entry is broadcast to every window
    int quad_points = 0;    // 0: per-window defaults
};

struct IndependenceParams {
    std::vector<int> ns;
    std::vector<ScaledWindow> windows;
    std::vector<int> lmax;
    int quad_points = 0;
    int defect_cap = 2;
};

struct SampleParams {
    int n = 0;
    int reps = 0;
    std::optional<std::uint64_t> seed;
    std::vector<ScaledWindow> windows;
    std::vector<int> lmax;
    SamplerRoute route = SamplerRoute::tridiagonal;
};

struct TracyWidomParams {
    double lo = -10.0;
    double hi = 6.0;
    double step = 0.02;
    int m = 200;
};

/// Each command writes its data files plus manifest.json into `out` and
/// returns the process exit status.
int cmd_kernel_limits(const KernelLimitsParams& p, const std::filesystem::path& out);
int cmd_gap_prob(const GapProbParams& p, const std::filesystem::path& out);
int cmd_independence(const IndependenceParams& p, const std::filesystem::path& out);
int cmd_sample(const SampleParams& p, const std::filesystem::path& out);
int cmd_tracy_widom(const TracyWidomParams& p, const std::filesystem::path& out);
/// "quick" runs the fast sanity checks, "full" the acceptance suite.
int cmd_selfcheck(const std::string& level, const std::filesystem::path& out);

/// "lo:hi:step"
TracyWidomParams parse_grid_spec(const std::string& text, int m);

}  // namespace gue
