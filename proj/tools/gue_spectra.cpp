// gue_spectra: counting statistics, Fredholm determinants and Tracy-Widom
// tables for the Gaussian Unitary Ensemble.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gue/commands.hpp"
#include "gue/sampling.hpp"
#include "gue/window_spec.hpp"

namespace {

const char* kColumns = R"txt(Output files (CSV: comma separated, header row, 17 significant digits):
  kernel-limits  kernel_limits.csv    n, sup_error_1..p (grid sup |scaled K_n - limit kernel| per window)
  gap-prob       gap_prob.json        joint / marginal / defect occupancy tables
  independence   independence.csv     n, max_abs_defect (l <= cap), abs_defect_det (|d_n(1, 1..1)|)
  sample         records.csv          replicate, count_1..p, scaled_min, scaled_max, condition
                 summary.json         chi-square, KS and correlation summaries
  tracy-widom    tw_plus.csv          s, F (F+ Airy determinant)
                 tw_minus.csv         s, F (F-(s) = 1 - F+(-s))
                 condition_limit.csv  t, F (CDF of -(L- + L+)/2)
  selfcheck      selfcheck.json       per-check report
Every command also writes manifest.json (parameters, seed, version, timestamps, SHA-256 of outputs).
Windows: "edge-:(a,b);bulk@0:(a,b);edge+:(a,b)", "raw:(a,b)", unions "(a,b)U(c,d)", exponent override "^k".
Environment: GUE_SPECTRA_THREADS caps the worker count.
Config: --config FILE with key=value lines; command-line flags take precedence.)txt";

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    s = s.substr(b, e - b + 1);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) s = s.substr(1, s.size() - 2);
    return s;
}

bool mentions(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Removes --config FILE from the arguments and appends --key value for each
// key=value line whose key was not given on the command line.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args;
    std::string path;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) {
            path = argv[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            path = a.substr(9);
        } else {
            args.push_back(a);
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw CLI::FileError::Missing(path);
    std::string line;
    std::vector<std::string> extra;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw CLI::ConversionError("config line without '=': " + line);
        const std::string flag = "--" + trim(line.substr(0, eq));
        if (mentions(args, flag)) continue;
        extra.push_back(flag);
        extra.push_back(trim(line.substr(eq + 1)));
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GUE eigenvalue counting statistics and Tracy-Widom tools"};
    app.footer(kColumns);
    app.require_subcommand(1);
    std::string out = "out";
    app.add_option("--out", out, "output directory")->capture_default_str();

    std::string windows_text;
    std::vector<int> ns, lmax;
    int n = 0, reps = 0, quad_points = 0, grid = 64, cap = 2;
    std::uint64_t seed = 0;
    std::string route = "tridiag", grid_spec, level = "quick";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", "key=value configuration file (command-line flags take precedence)");
        sub->add_option("--out", out, "output directory");
    };

    auto* kl = app.add_subcommand("kernel-limits", "sup-error of the scaled kernel against its sine/Airy limit");
    common(kl);
    kl->add_option("--n", ns, "list of matrix sizes")->delimiter(',');
    kl->add_option("--windows", windows_text, "window list")->default_val("bulk@0:(-1,1);edge+:(-2,2)");
    kl->add_option("--grid", grid, "lattice points per axis (>= 16)")->capture_default_str();

    auto* gp = app.add_subcommand("gap-prob", "joint/marginal occupancy tables from the Fredholm determinant");
    common(gp);
    gp->add_option("--n", n, "matrix size")->required();
    gp->add_option("--windows", windows_text, "window list")->required();
    gp->add_option("--lmax", lmax, "table bound, one value or one per window")->delimiter(',');
    gp->add_option("--quad-points", quad_points, "Nystrom points per interval (0: 40 bulk / 60 edge)");

    auto* ind = app.add_subcommand("independence", "max independence defect per n");
    common(ind);
    ind->add_option("--n", ns, "list of matrix sizes")->delimiter(',');
    ind->add_option("--windows", windows_text, "window list")->required();
    ind->add_option("--lmax", lmax, "table bound, one value or one per window")->delimiter(',');
    ind->add_option("--quad-points", quad_points, "Nystrom points per interval (0: 40 bulk / 60 edge)");
    ind->add_option("--defect-cap", cap, "largest occupancy in the max-defect column")->capture_default_str();

    auto* sm = app.add_subcommand("sample", "Monte Carlo GUE spectra and counting records");
    common(sm);
    sm->add_option("--n", n, "matrix size")->required();
    sm->add_option("--reps", reps, "replicates")->required();
    auto* seed_opt = sm->add_option("--seed", seed, "master seed (mandatory)");
    sm->add_option("--windows", windows_text, "window list");
    sm->add_option("--lmax", lmax, "table bound, one value or one per window")->delimiter(',');
    sm->add_option("--route", route, "dense|tridiag")->capture_default_str();

    auto* tw = app.add_subcommand("tracy-widom", "F+, F- and condition-number limit CDF tables");
    common(tw);
    tw->add_option("--grid", grid_spec, "lo:hi:step for the F+ table")->default_val("-10:6:0.02");
    tw->add_option("--quad-points", quad_points, "Gauss-Legendre points (default 200)");

    auto* sc = app.add_subcommand("selfcheck", "sanity checks (quick) or the acceptance suite (full)");
    common(sc);
    sc->add_option("--level", level, "quick|full")->capture_default_str();

    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const auto windows = windows_text.empty() ? std::vector<gue::ScaledWindow>{} : gue::parse_windows(windows_text);
        if (*kl) return gue::cmd_kernel_limits({ns, windows, grid}, out);
        if (*gp) return gue::cmd_gap_prob({n, windows, lmax, quad_points}, out);
        if (*ind) return gue::cmd_independence({ns, windows, lmax, quad_points, cap}, out);
        if (*sm) {
            gue::SampleParams p{n, reps, std::nullopt, windows, lmax, gue::parse_route(route)};
            if (seed_opt->count() > 0) p.seed = seed;
            return gue::cmd_sample(p, out);
        }
        if (*tw) return gue::cmd_tracy_widom(gue::parse_grid_spec(grid_spec, quad_points > 0 ? quad_points : 200), out);
        if (*sc) return gue::cmd_selfcheck(level, out);
    } catch (const gue::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
