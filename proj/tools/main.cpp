// Command-line front end: every experiment the library supports, emitted as
// deterministic CSV or JSON tables suitable for direct plotting.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gapmodes/asymptotics.hpp"
#include "gapmodes/delta_kick.hpp"
#include "gapmodes/finite_kick.hpp"
#include "gapmodes/floquet.hpp"
#include "gapmodes/ode.hpp"
#include "gapmodes/root_find.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kPi = 3.14159265358979323846;

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Cell {
    bool numeric;
    double num;
    std::string text;

    Cell(double v) : numeric(true), num(v), text(fmt12(v)) {}
    Cell(int v) : numeric(true), num(v), text(fmt12(v)) {}
    Cell(std::string s) : numeric(false), num(0.0), text(std::move(s)) {}
};

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_meta(const std::string& k, double v) { meta.emplace_back(k, fmt12(v)); }
    void add_meta(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }
};

std::string g_cmdline;  // verbatim invocation, echoed into every output

void write_csv(const Table& t, std::ostream& os) {
    os << "# " << g_cmdline << "\n";
    os << "# version: " << kVersion << "\n";
    for (const auto& [k, v] : t.meta) os << "# " << k << " = " << v << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i].text << (i + 1 < row.size() ? "," : "\n");
}

void write_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json j;
    j["meta"]["command"] = g_cmdline;
    j["meta"]["version"] = kVersion;
    for (const auto& [k, v] : t.meta) j["meta"][k] = v;
    j["meta"]["columns"] = t.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& c : row) {
            if (!c.numeric) {
                r.push_back(c.text);
            } else if (std::isfinite(c.num)) {
                r.push_back(std::strtod(c.text.c_str(), nullptr));  // 12-digit value
            } else {
                r.push_back(c.text);  // "nan"/"inf" are not valid JSON numbers
            }
        }
        j["rows"].push_back(std::move(r));
    }
    os << j.dump(2) << "\n";
}

void emit(const Table& t, const std::string& output, const std::string& format) {
    auto write = [&](std::ostream& os) {
        if (format == "json")
            write_json(t, os);
        else
            write_csv(t, os);
    };
    if (output.empty()) {
        write(std::cout);
    } else {
        std::ofstream os(output);
        if (!os) throw gapmodes::Error("cannot open output file: " + output);
        write(os);
    }
}

const char* error_kind(const std::exception& e) {
    using namespace gapmodes;
    if (dynamic_cast<const NoGapModeError*>(&e)) return "no-gap-mode";
    if (dynamic_cast<const NotInGapError*>(&e)) return "not-in-gap";
    if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
    if (dynamic_cast<const IntegrationError*>(&e)) return "integration";
    if (dynamic_cast<const NearDegenerateError*>(&e)) return "near-degenerate";
    if (dynamic_cast<const PoleError*>(&e)) return "pole";
    if (dynamic_cast<const RootNotFoundError*>(&e)) return "root-not-found";
    if (dynamic_cast<const EdgeNotFoundError*>(&e)) return "edge-not-found";
    if (dynamic_cast<const NoModeFoundError*>(&e)) return "no-mode-found";
    if (dynamic_cast<const EnvelopeFitError*>(&e)) return "envelope-fit";
    if (dynamic_cast<const InconsistentModeError*>(&e)) return "inconsistent-mode";
    return "internal";
}

std::string stability_name(const gapmodes::StabilityClass& c) {
    if (c.stable()) return "stable";
    if (c.edge()) return "edge";
    return "unstable";
}

Table profile_table(const gapmodes::GapMode& mode) {
    Table t;
    t.add_meta("delta", mode.params.delta);
    t.add_meta("epsilon", mode.params.epsilon);
    t.add_meta("kick", gapmodes::kick_name(mode.kick));
    t.add_meta("lambda", mode.lambda);
    t.add_meta("gap", mode.gap_index);
    t.add_meta("measured_decay", mode.measured_decay);
    if (mode.delta1) t.add_meta("delta1", *mode.delta1);
    t.columns = {"t", "x"};
    for (std::size_t i = 0; i < mode.t.size(); ++i)
        t.rows.push_back({Cell(mode.t[i]), Cell(mode.x[i])});
    return t;
}

// Bounded reference solution at a stable delta, for gap-vs-edge comparisons.
Table quasiperiodic_table(gapmodes::MathieuParams params, double half_window,
                          int samples) {
    Table t;
    t.add_meta("delta", params.delta);
    t.add_meta("epsilon", params.epsilon);
    t.add_meta("kick", "none");
    t.columns = {"t", "x"};
    std::vector<double> xs(samples);
    gapmodes::State s{1.0, 0.0, 0.0};
    std::vector<std::pair<int, double>> order;
    for (int k = 0; k < samples; ++k)
        order.emplace_back(k, -half_window + 2.0 * half_window * k / (samples - 1));
    // walk outward from 0 in both directions
    std::vector<std::pair<int, double>> plus, minus;
    for (auto& [k, tt] : order) (tt >= 0 ? plus : minus).emplace_back(k, tt);
    std::sort(minus.begin(), minus.end(),
              [](auto a, auto b) { return a.second > b.second; });
    for (auto& [k, tt] : plus) {
        s = gapmodes::propagate(params, gapmodes::NoKick{}, s, tt);
        xs[k] = s.x;
    }
    s = gapmodes::State{1.0, 0.0, 0.0};
    for (auto& [k, tt] : minus) {
        s = gapmodes::propagate(params, gapmodes::NoKick{}, s, tt);
        xs[k] = s.x;
    }
    double peak = 0.0;
    for (double v : xs) peak = std::max(peak, std::abs(v));
    for (int k = 0; k < samples; ++k) {
        t.rows.push_back({Cell(order[k].second), Cell(xs[k] / peak)});
    }
    return t;
}

struct FigureFile {
    std::string name;
    Table table;
};

std::vector<FigureFile> make_figure(const std::string& which) {
    using namespace gapmodes;
    std::vector<FigureFile> files;
    const double eps = 0.5;  // not prescribed for these figures; wide tongues
    const int samples = 4001;
    const double window = 40.0 * kPi;

    if (which == "fig1") {
        const double delta = solve_delta(0.7, eps, 1);
        Table t = profile_table(build_profile(delta, eps, 0.7, window, samples));
        t.add_meta("note", "epsilon assumed 0.5 (not prescribed)");
        files.push_back({"fig1.csv", std::move(t)});
    } else if (which == "fig2") {
        const double delta = solve_delta(0.7, eps, 1);
        Table gap = profile_table(build_profile(delta, eps, 0.7, window, samples));
        gap.add_meta("note", "localized gap mode");
        files.push_back({"fig2_gap.csv", std::move(gap)});
        const GapEdges edges = gap_edges(eps, 1);
        Table edge = quasiperiodic_table({edges.upper + 0.02, eps}, window, samples);
        edge.add_meta("note", "quasiperiodic mode just outside the tongue");
        files.push_back({"fig2_edge.csv", std::move(edge)});
    } else if (which == "fig3") {
        for (int n = 1; n <= 3; ++n) {
            // Even tongues bind at negative strength when the kick sits at the
            // cosine maximum, so tongue 2 carries the |strength| = 1 mode with
            // the sign it actually admits.
            const double strength = (n % 2 == 0) ? -1.0 : 1.0;
            double delta;
            if (strength > 0.0) {
                delta = solve_delta(strength, eps, n);
            } else {
                const GapEdges e = gap_edges(eps, n);
                const double inset = 1e-5 * e.width();
                delta = find_root(
                    [&](double d) {
                        return lambda_required({d, eps}) - strength;
                    },
                    e.lower + inset, e.upper - inset, 1e-10);
            }
            Table t = profile_table(build_profile(delta, eps, strength, window, samples));
            t.add_meta("note", "epsilon assumed 0.5 (not prescribed)");
            if (strength < 0.0)
                t.add_meta("sign_note",
                           "even tongue: bound mode exists at negative strength");
            files.push_back({"fig3_n" + std::to_string(n) + ".csv", std::move(t)});
        }
    } else if (which == "fig4") {
        Table t;
        const double d_dirac = solve_delta(1.0, eps, 1);
        t.add_meta("epsilon", eps);
        t.add_meta("lambda", 1.0);
        t.add_meta("width", 0.25);
        t.add_meta("delta_dirac", d_dirac);
        t.columns = {"kick", "width", "delta"};
        for (const KickSpec kick :
             {KickSpec(GaussianKick{1.0, 0.25}), KickSpec(LorentzianKick{1.0, 0.25})}) {
            const GapMode m = solve_bvp(make_shooting(eps, kick), 1);
            t.rows.push_back({Cell(kick_name(kick)), Cell(0.25), Cell(m.params.delta)});
        }
        files.push_back({"fig4.csv", std::move(t)});
    } else if (which == "fig5") {
        Table t;
        const double d_dirac = solve_delta(1.0, eps, 1);
        t.add_meta("epsilon", eps);
        t.add_meta("lambda", 1.0);
        t.add_meta("delta_dirac", d_dirac);
        t.columns = {"width", "delta"};
        for (const auto& wp :
             width_sweep(eps, 1.0, 1, {0.4, 0.2, 0.1, 0.05, 0.025}))
            t.rows.push_back({Cell(wp.width), Cell(wp.delta)});
        files.push_back({"fig5.csv", std::move(t)});
    } else if (which == "d1curve") {
        Table t;
        const double e = 0.05;
        t.add_meta("epsilon", e);
        t.columns = {"lambda", "delta", "delta1_numeric", "delta1_formula"};
        std::vector<double> lambdas;
        for (int i = 1; i <= 100; ++i) lambdas.push_back(0.1 * i);
        for (const auto& fp : spectral_flow(e, 1, lambdas)) {
            const double d1 = (fp.delta - 0.25) / e;
            t.rows.push_back({Cell(fp.lambda), Cell(fp.delta), Cell(d1),
                              Cell(delta1_of_lambda(fp.lambda))});
        }
        files.push_back({"d1curve.csv", std::move(t)});
    } else {
        throw PreconditionError("unknown figure: " + which);
    }
    return files;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) {
        if (i) g_cmdline += ' ';
        g_cmdline += argv[i];
    }

    CLI::App app{"Arnold-tongue stability and gap-mode toolkit for the kicked "
                 "Mathieu equation"};
    app.require_subcommand(1);

    std::string output, format = "csv";
    app.add_option("-o,--output", output, "Output file (default: stdout)")
        ->capture_default_str();
    app.add_option("-f,--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    double delta = 0.0, epsilon = 0.0, lambda = 0.0, tol = 1e-10;
    double half_window = 40.0 * kPi;
    int gap = 1, samples = 4001;

    auto* chart = app.add_subcommand("chart", "Stability classification grid");
    double d_min = 0.0, d_max = 2.5, e_min = 0.0, e_max = 0.5, edge_tol = 1e-9;
    int d_steps = 126, e_steps = 26;
    chart->add_option("--delta-min", d_min)->capture_default_str();
    chart->add_option("--delta-max", d_max)->capture_default_str();
    chart->add_option("--delta-steps", d_steps)->check(CLI::PositiveNumber)->capture_default_str();
    chart->add_option("--epsilon-min", e_min)->check(CLI::NonNegativeNumber)->capture_default_str();
    chart->add_option("--epsilon-max", e_max)->check(CLI::NonNegativeNumber)->capture_default_str();
    chart->add_option("--epsilon-steps", e_steps)->check(CLI::PositiveNumber)->capture_default_str();
    chart->add_option("--edge-tol", edge_tol)->check(CLI::PositiveNumber)->capture_default_str();

    auto* edges_cmd = app.add_subcommand("edges", "Tongue edges at fixed epsilon");
    edges_cmd->add_option("--epsilon", epsilon, "Modulation amplitude")
        ->required()
        ->check(CLI::NonNegativeNumber);
    edges_cmd->add_option("--gap", gap, "Tongue index")->required()->check(CLI::PositiveNumber);
    edges_cmd->add_option("--tol", tol)->check(CLI::PositiveNumber)->capture_default_str();

    auto* lambda_cmd =
        app.add_subcommand("lambda", "Required kick strength at (delta, epsilon)");
    lambda_cmd->add_option("--delta", delta)->required();
    lambda_cmd->add_option("--epsilon", epsilon)->required()->check(CLI::NonNegativeNumber);

    auto* solve = app.add_subcommand("solve", "Gap-mode eigenvalue for a point kick");
    solve->add_option("--lambda", lambda)->required();
    solve->add_option("--epsilon", epsilon)->required()->check(CLI::PositiveNumber);
    solve->add_option("--gap", gap)->required()->check(CLI::PositiveNumber);
    solve->add_option("--tol", tol)->check(CLI::PositiveNumber)->capture_default_str();

    auto* profile = app.add_subcommand("profile", "Sampled gap-mode profile");
    profile->add_option("--lambda", lambda)->required();
    profile->add_option("--epsilon", epsilon)->required()->check(CLI::PositiveNumber);
    profile->add_option("--gap", gap)->required()->check(CLI::PositiveNumber);
    profile->add_option("--half-window", half_window)->check(CLI::PositiveNumber)->capture_default_str();
    profile->add_option("--samples", samples)->check(CLI::PositiveNumber)->capture_default_str();

    auto* flow = app.add_subcommand("flow", "Spectral flow delta(lambda) across a tongue");
    std::vector<double> lambdas;
    double l_min = 0.1, l_max = 10.0;
    int l_steps = 100;
    flow->add_option("--epsilon", epsilon)->required()->check(CLI::PositiveNumber);
    flow->add_option("--gap", gap)->required()->check(CLI::PositiveNumber);
    flow->add_option("--lambdas", lambdas, "Explicit ascending lambda list")->delimiter(',');
    flow->add_option("--lambda-min", l_min)->capture_default_str();
    flow->add_option("--lambda-max", l_max)->capture_default_str();
    flow->add_option("--lambda-steps", l_steps)->check(CLI::PositiveNumber)->capture_default_str();

    auto* asym = app.add_subcommand("asym", "Numeric delta1 vs the small-eps formula");
    std::vector<double> eps_list, lam_list;
    asym->add_option("--epsilons", eps_list)->required()->delimiter(',');
    asym->add_option("--lambdas", lam_list)->required()->delimiter(',');

    auto* bvp = app.add_subcommand("bvp", "Finite-width-kick mode by shooting");
    std::string kick_kind = "gaussian";
    double width = 0.25, shear = 1.0;
    int bvp_samples = -1;
    bvp->add_option("--epsilon", epsilon)->required()->check(CLI::PositiveNumber);
    bvp->add_option("--gap", gap)->required()->check(CLI::PositiveNumber);
    bvp->add_option("--kick", kick_kind)
        ->check(CLI::IsMember({"gaussian", "lorentzian", "tae"}))
        ->capture_default_str();
    bvp->add_option("--lambda", lambda, "Kick strength (gaussian/lorentzian)")->capture_default_str();
    bvp->add_option("--width", width)->check(CLI::PositiveNumber)->capture_default_str();
    bvp->add_option("--shear", shear, "Shear parameter (tae)")->check(CLI::PositiveNumber)->capture_default_str();
    bvp->add_option("--samples", bvp_samples)->capture_default_str();

    auto* sweep = app.add_subcommand("width-sweep", "Gaussian-kick spectrum vs width");
    std::vector<double> widths = {0.4, 0.2, 0.1, 0.05, 0.025};
    sweep->add_option("--epsilon", epsilon)->required()->check(CLI::PositiveNumber);
    sweep->add_option("--lambda", lambda)->required();
    sweep->add_option("--gap", gap)->required()->check(CLI::PositiveNumber);
    sweep->add_option("--widths", widths, "Descending widths")->delimiter(',')->capture_default_str();

    auto* figure = app.add_subcommand("figure", "Regenerate the data behind a figure");
    std::string which, out_dir;
    if (const char* env = std::getenv("GAPMODES_OUT_DIR")) out_dir = env;
    if (out_dir.empty()) out_dir = ".";
    figure->add_option("which", which, "fig1|fig2|fig3|fig4|fig5|d1curve")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5", "d1curve"}));
    figure->add_option("--out-dir", out_dir, "Output directory (default: $GAPMODES_OUT_DIR or .)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        using namespace gapmodes;
        Table t;

        if (chart->parsed()) {
            t.add_meta("edge_tol", edge_tol);
            t.columns = {"delta", "epsilon", "stability", "gap_index"};
            for (const auto& e :
                 stability_chart(d_min, d_max, e_min, e_max, d_steps, e_steps, edge_tol))
                t.rows.push_back({Cell(e.delta), Cell(e.epsilon),
                                  Cell(stability_name(e.cls)),
                                  Cell(e.cls.unstable() ? e.cls.gap_index : -1)});
            emit(t, output, format);
        } else if (edges_cmd->parsed()) {
            double eff = epsilon;
            if (epsilon == 0.0) {
                eff = 1e-4;  // degenerate tongue; report the small-eps limit
                t.add_meta("epsilon_effective", eff);
            }
            const GapEdges ge = gap_edges(eff, gap, tol);
            t.add_meta("epsilon", epsilon);
            t.add_meta("gap", gap);
            t.columns = {"epsilon", "gap", "delta_lower", "delta_upper"};
            t.rows.push_back({Cell(epsilon), Cell(gap), Cell(ge.lower), Cell(ge.upper)});
            emit(t, output, format);
        } else if (lambda_cmd->parsed()) {
            const double lam = lambda_required({delta, epsilon});
            const double w = wronskian_check({delta, epsilon});
            t.columns = {"delta", "epsilon", "lambda", "wronskian"};
            t.rows.push_back({Cell(delta), Cell(epsilon), Cell(lam), Cell(w)});
            emit(t, output, format);
        } else if (solve->parsed()) {
            const double d = solve_delta(lambda, epsilon, gap, tol);
            t.columns = {"lambda", "epsilon", "gap", "delta", "delta1"};
            const double d1 = (gap == 1)
                                  ? (d - 0.25) / epsilon
                                  : std::numeric_limits<double>::quiet_NaN();
            t.rows.push_back({Cell(lambda), Cell(epsilon), Cell(gap), Cell(d), Cell(d1)});
            emit(t, output, format);
        } else if (profile->parsed()) {
            const double d = solve_delta(lambda, epsilon, gap, tol);
            t = profile_table(build_profile(d, epsilon, lambda, half_window, samples));
            emit(t, output, format);
        } else if (flow->parsed()) {
            if (lambdas.empty())
                for (int i = 0; i < l_steps; ++i)
                    lambdas.push_back(l_min + (l_max - l_min) * i /
                                      std::max(1, l_steps - 1));
            t.add_meta("epsilon", epsilon);
            t.add_meta("gap", gap);
            t.columns = {"lambda", "delta"};
            for (const auto& fp : spectral_flow(epsilon, gap, lambdas))
                t.rows.push_back({Cell(fp.lambda), Cell(fp.delta)});
            emit(t, output, format);
        } else if (asym->parsed()) {
            t.columns = {"epsilon", "lambda", "delta1_numeric", "delta1_formula", "error"};
            for (const auto& r : compare_asymptotic(eps_list, lam_list))
                t.rows.push_back({Cell(r.epsilon), Cell(r.lambda), Cell(r.delta1_numeric),
                                  Cell(r.delta1_formula), Cell(r.error)});
            emit(t, output, format);
        } else if (bvp->parsed()) {
            KickSpec kick = GaussianKick{lambda, width};
            if (kick_kind == "lorentzian") kick = LorentzianKick{lambda, width};
            if (kick_kind == "tae") kick = TaeShearKick{shear};
            const ShootingProblem problem = make_shooting(epsilon, kick, tol);
            const GapMode m = solve_bvp(problem, gap, bvp_samples);
            t = profile_table(m);
            t.add_meta("match_periods", problem.periods());
            emit(t, output, format);
        } else if (sweep->parsed()) {
            const double d_dirac = solve_delta(lambda, epsilon, gap, tol);
            t.add_meta("epsilon", epsilon);
            t.add_meta("lambda", lambda);
            t.add_meta("gap", gap);
            t.add_meta("delta_dirac", d_dirac);
            t.columns = {"width", "delta", "abs_diff_from_dirac"};
            for (const auto& wp : width_sweep(epsilon, lambda, gap, widths, tol))
                t.rows.push_back(
                    {Cell(wp.width), Cell(wp.delta), Cell(std::abs(wp.delta - d_dirac))});
            emit(t, output, format);
        } else if (figure->parsed()) {
            std::filesystem::create_directories(out_dir);
            for (auto& f : make_figure(which)) {
                const auto path = std::filesystem::path(out_dir) / f.name;
                emit(f.table, path.string(), format);
                std::cout << "wrote " << path.string() << "\n";
            }
        }
        return 0;
    } catch (const std::exception& e) {
        nlohmann::ordered_json err;
        err["error"]["type"] = error_kind(e);
        err["error"]["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
