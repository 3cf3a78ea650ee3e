#include "gue/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "gue/acceptance.hpp"
#include "gue/fredholm.hpp"
#include "gue/manifest.hpp"
#include "gue/selfcheck.hpp"
#include "gue/stats.hpp"
#include "gue/tracy_widom.hpp"
#include "gue/window_spec.hpp"

namespace gue {

using nlohmann::json;

namespace {

std::vector<int> broadcast_lmax(const std::vector<int>& lmax, std::size_t p) {
    if (lmax.empty()) return std::vector<int>(p, 3);
    if (lmax.size() == 1) return std::vector<int>(p, lmax[0]);
    if (lmax.size() != p) throw UsageError("--lmax needs one value or one per window");
    for (int l : lmax) {
        if (l < 0) throw UsageError("--lmax must be nonnegative");
    }
    return lmax;
}

std::vector<std::string> window_names(const std::vector<ScaledWindow>& w) {
    std::vector<std::string> out;
    for (const auto& x : w) out.push_back(x.describe());
    return out;
}

MultiWindowOperator make_operator(int n, const std::vector<ScaledWindow>& windows, int m) {
    auto op = m > 0 ? MultiWindowOperator::discretize(n, windows, m) : MultiWindowOperator::discretize(n, windows);
    for (const auto& w : op.warnings()) std::cerr << "warning: " << w << "\n";
    return op;
}

json distribution_json(const CountingDistribution& d) {
    json j;
    j["lmax"] = d.lmax;
    j["joint"] = d.joint;
    j["marginals"] = d.marginals;
    j["defect"] = d.defect;
    j["remainder"] = d.remainder;
    j["clipped"] = d.clipped;
    j["layout"] = "row-major over (l_1, ..., l_p), last window fastest";
    return j;
}

std::string table_csv(const CdfTable& t, const char* column) {
    std::string s = std::string(column) + ",F\n";
    for (std::size_t i = 0; i < t.grid.size(); ++i) s += format_double(t.grid[i]) + "," + format_double(t.values[i]) + "\n";
    return s;
}

void require_windows(const std::vector<ScaledWindow>& w) {
    if (w.empty()) throw UsageError("--windows is required");
}

}  // namespace

TracyWidomParams parse_grid_spec(const std::string& text, int m) {
    TracyWidomParams p;
    p.m = m;
    if (text.empty()) return p;
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("grid spec '" + text + "': expected lo:hi:step");
        }
    }
    if (parts.size() != 3 || !(parts[0] < parts[1]) || !(parts[2] > 0.0)) {
        throw UsageError("grid spec '" + text + "': expected lo:hi:step with lo < hi, step > 0");
    }
    p.lo = parts[0];
    p.hi = parts[1];
    p.step = parts[2];
    return p;
}

int cmd_kernel_limits(const KernelLimitsParams& p, const std::filesystem::path& out) {
    if (p.ns.empty()) throw UsageError("kernel-limits: the n-list is empty");
    require_windows(p.windows);
    RunManifest man;
    man.command = "kernel-limits";
    man.parameters = {{"n", p.ns}, {"windows", window_names(p.windows)}, {"grid", p.grid}};

    std::string csv = "n";
    for (std::size_t i = 0; i < p.windows.size(); ++i) csv += ",sup_error_" + std::to_string(i + 1);
    csv += "\n";
    for (int n : p.ns) {
        csv += std::to_string(n);
        for (const auto& w : p.windows) csv += "," + format_double(scaled_kernel_sup_error(n, w, p.grid));
        csv += "\n";
    }
    write_text(out, "kernel_limits.csv", csv);
    man.add_output(out, "kernel_limits.csv");
    man.write(out);
    return 0;
}

int cmd_gap_prob(const GapProbParams& p, const std::filesystem::path& out) {
    require_windows(p.windows);
    if (p.n < 1) throw UsageError("gap-prob: --n must be >= 1");
    const auto lmax = broadcast_lmax(p.lmax, p.windows.size());
    RunManifest man;
    man.command = "gap-prob";
    man.parameters = {{"n", p.n}, {"windows", window_names(p.windows)}, {"lmax", lmax}, {"quad_points", p.quad_points}};

    const auto op = make_operator(p.n, p.windows, p.quad_points);
    const auto dist = counting_joint_pmf(op, lmax);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = p.n;
    j["windows"] = window_names(p.windows);
    j["quad_points"] = p.quad_points;
    j["dimension"] = op.dimension();
    j["gap_probability"] = gap_probability(op);
    j["distribution"] = distribution_json(dist);
    j["warnings"] = op.warnings();
    write_text(out, "gap_prob.json", j.dump(2) + "\n");
    man.add_output(out, "gap_prob.json");
    man.write(out);
    return 0;
}

int cmd_independence(const IndependenceParams& p, const std::filesystem::path& out) {
    if (p.ns.empty()) throw UsageError("independence: the n-list is empty");
    require_windows(p.windows);
    const auto lmax = broadcast_lmax(p.lmax, p.windows.size());
    for (int n : p.ns) {
        if (!windows_disjoint(p.windows, n)) {
            throw UsageError("independence: windows overlap at n = " + std::to_string(n) +
                             " (below the disjointness threshold)");
        }
    }
    RunManifest man;
    man.command = "independence";
    man.parameters = {{"n", p.ns},           {"windows", window_names(p.windows)}, {"lmax", lmax},
                      {"quad_points", p.quad_points}, {"defect_cap", p.defect_cap}};
    // independence is only established with a window at each edge
    const bool has_left = std::any_of(p.windows.begin(), p.windows.end(), [](const ScaledWindow& w) { return w.is_left_edge(); });
    const bool has_right = std::any_of(p.windows.begin(), p.windows.end(), [](const ScaledWindow& w) { return w.is_right_edge(); });
    man.parameters["exploratory"] = !(has_left && has_right);
    if (!(has_left && has_right)) {
        std::cerr << "note: no window at both spectral edges; defects are exploratory\n";
    }

    std::string csv = "n,max_abs_defect,abs_defect_det\n";
    for (int n : p.ns) {
        const auto op = make_operator(n, p.windows, p.quad_points);
        const auto dist = counting_joint_pmf(op, lmax);
        const std::vector<cdouble> ones(p.windows.size(), 1.0);
        const double dd = std::abs(independence_defect_det(op, 1.0, ones));
        csv += std::to_string(n) + "," + format_double(dist.max_abs_defect(p.defect_cap)) + "," + format_double(dd) + "\n";
    }
    write_text(out, "independence.csv", csv);
    man.add_output(out, "independence.csv");
    man.write(out);
    return 0;
}

int cmd_sample(const SampleParams& p, const std::filesystem::path& out) {
    if (!p.seed) throw UsageError("sample: --seed is mandatory");
    if (p.n < 1 || p.reps < 1) throw UsageError("sample: --n and --reps must be >= 1");
    const auto lmax = broadcast_lmax(p.lmax, p.windows.size());
    RunManifest man;
    man.command = "sample";
    man.seed = *p.seed;
    man.parameters = {{"n", p.n},           {"reps", p.reps},          {"seed", *p.seed},
                      {"windows", window_names(p.windows)}, {"lmax", lmax}, {"route", to_string(p.route)}};

    const auto records = sample_records(p.n, p.reps, *p.seed, p.windows, p.route);
    std::string csv = "replicate";
    for (std::size_t i = 0; i < p.windows.size(); ++i) csv += ",count_" + std::to_string(i + 1);
    csv += ",scaled_min,scaled_max,condition\n";
    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto& rec = records[r];
        csv += std::to_string(r);
        for (int c : rec.occupancy) csv += "," + std::to_string(c);
        csv += "," + format_double(rec.scaled_min) + "," + format_double(rec.scaled_max) + "," +
               format_double(rec.condition) + "\n";
    }
    write_text(out, "records.csv", csv);

    json s;
    s["schema_version"] = kSchemaVersion;
    s["n"] = p.n;
    s["reps"] = p.reps;
    s["seed"] = *p.seed;
    s["route"] = to_string(p.route);
    s["windows"] = window_names(p.windows);
    std::vector<double> mins, maxs, conds;
    int excluded = 0;
    for (const auto& r : records) {
        mins.push_back(r.scaled_min);
        maxs.push_back(r.scaled_max);
        if (r.scaled_min < std::pow(p.n, 2.0 / 3.0) * 2.0) {
            conds.push_back(r.condition);
        } else {
            ++excluded;
        }
    }
    if (p.reps >= 2) s["extremes"]["pearson_correlation"] = pearson_correlation(mins, maxs);
    const auto grid = uniform_grid(kTwGridMin, kTwGridMax, 0.02);
    const auto plus = tw_plus_table(grid);
    s["extremes"]["ks_max_vs_tw_plus"] = ks_statistic(maxs, [&](double x) { return plus(x); });
    s["extremes"]["ks_min_vs_tw_minus"] = ks_statistic(mins, [&](double x) { return 1.0 - plus(-x); });
    std::vector<double> neg;
    for (double v : mins) neg.push_back(-v);
    const auto refl = ks_two_sample(neg, maxs);
    s["extremes"]["reflection_ks"] = {{"statistic", refl.statistic}, {"p_value", refl.p_value}};
    s["condition"]["excluded"] = excluded;
    if (!conds.empty()) {
        s["condition"]["ks_vs_limit"] = ks_statistic(conds, [](double t) { return condition_limit_cdf(std::clamp(t, -8.0, 8.0)); });
    }
    if (!p.windows.empty() && records.size() >= kMinEmpiricalRecords) {
        const auto emp = empirical_joint_pmf(records, p.windows, lmax);
        s["counting"] = distribution_json(emp.distribution);
        s["counting"]["standard_error"] = emp.joint_standard_error;
        s["counting"]["chi_square"] = {{"statistic", emp.independence.statistic},
                                       {"dof", emp.independence.dof},
                                       {"p_value", emp.independence.p_value},
                                       {"categories", emp.independence.categories},
                                       {"lumped_cells", emp.independence.lumped_cells}};
    }
    write_text(out, "summary.json", s.dump(2) + "\n");
    man.add_output(out, "records.csv");
    man.add_output(out, "summary.json");
    man.write(out);
    return 0;
}

int cmd_tracy_widom(const TracyWidomParams& p, const std::filesystem::path& out) {
    if (p.lo < -12.0 || p.hi > 8.0) throw UsageError("tracy-widom: grid must lie inside [-12, 8]");
    if (p.m < 8) throw UsageError("tracy-widom: --quad-points must be >= 8");
    RunManifest man;
    man.command = "tracy-widom";
    man.parameters = {{"lo", p.lo}, {"hi", p.hi}, {"step", p.step}, {"m", p.m}};

    const auto grid = uniform_grid(p.lo, p.hi, p.step);
    std::vector<double> neg(grid.rbegin(), grid.rend());
    for (double& g : neg) g = -g;
    write_text(out, "tw_plus.csv", table_csv(tw_plus_table(grid, p.m), "s"));
    write_text(out, "tw_minus.csv", table_csv(tw_minus_table(neg, p.m), "s"));
    write_text(out, "condition_limit.csv", table_csv(condition_limit_table(p.m, p.step), "t"));
    for (const char* f : {"tw_plus.csv", "tw_minus.csv", "condition_limit.csv"}) man.add_output(out, f);
    man.write(out);
    return 0;
}

int cmd_selfcheck(const std::string& level, const std::filesystem::path& out) {
    RunManifest man;
    man.command = "selfcheck";
    man.parameters = {{"level", level}};
    json report;
    report["schema_version"] = kSchemaVersion;
    report["level"] = level;
    bool ok = true;
    if (level == "quick") {
        const auto t0 = std::chrono::steady_clock::now();
        const auto checks = run_quick_checks(std::cout);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& c : checks) {
            report["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            ok = ok && c.passed;
        }
        report["seconds"] = secs;
        if (secs >= 60.0) {
            std::cout << "[FAIL] quick level took " << secs << " s (limit 60 s)\n";
            ok = false;
        }
    } else if (level == "full") {
        for (const auto& r : run_acceptance({}, std::cout)) {
            report["criteria"].push_back({{"id", r.id},
                                          {"title", r.title},
                                          {"passed", r.passed},
                                          {"detail", r.detail},
                                          {"seconds", r.seconds},
                                          {"budget_seconds", r.budget_seconds}});
            ok = ok && r.passed;
        }
    } else {
        throw UsageError("selfcheck: level must be quick or full");
    }
    report["passed"] = ok;
    write_text(out, "selfcheck.json", report.dump(2) + "\n");
    man.add_output(out, "selfcheck.json");
    man.write(out);
    return ok ? 0 : 1;
}

}  // namespace gue
