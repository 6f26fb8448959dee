#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "epikit/analysis.hpp"
#include "epikit/closed_forms.hpp"
#include "epikit/integrate.hpp"
#include "epikit/model.hpp"

namespace {

// 9 significant digits everywhere: deterministic, golden-file friendly
std::string g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string fixed_cell(double v, int decimals) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string pad(const std::string& cell, std::size_t width) {
    std::string out = cell;
    while (out.size() < width)
        out.push_back(' ');
    return out;
}

struct CommonFlags {
    double r0 = 0.0;
    double i0 = 1e-6;
    double s0 = 0.0;
    bool s0_given = false;
    bool i0_given = false;
    std::optional<double> a;

    epikit::ModelParams params() const {
        double s = s0, i = i0;
        if (s0_given && !i0_given)
            i = 1.0 - s;
        else if (!s0_given)
            s = 1.0 - i;
        return epikit::make_params_s0(r0, s, i, a.value_or(1.0));
    }
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_a = false) {
    cmd->add_option("--r0", f.r0, "basic reproduction number")->required();
    cmd->add_option("--i0", f.i0, "initial infected proportion (default 1e-6)")
        ->each([&f](const std::string&) { f.i0_given = true; });
    cmd->add_option("--s0", f.s0, "initial susceptible proportion (default 1-i0)")
        ->each([&f](const std::string&) { f.s0_given = true; });
    if (with_a) {
        f.a.reset();
        cmd->add_option("--a", f.a, "removal rate; adds a physical-time column t");
    }
}

void emit_csv_row(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k)
            line.push_back(',');
        line += cells[k];
    }
    std::cout << line << '\n';
}

int run_simulate(const CommonFlags& f, const std::string& model_str, const epikit::IntegratorConfig& config,
                 long out_every) {
    epikit::ModelKind kind = epikit::ModelKind::SIR;
    if (model_str == "si")
        kind = epikit::ModelKind::SI;
    else if (model_str == "modified")
        kind = epikit::ModelKind::ModifiedSIR;
    if (kind == epikit::ModelKind::ModifiedSIR && !(f.r0 > 1.0))
        throw epikit::ConfigError("modified model requires r0 > 1");

    const epikit::ModelParams p = f.params();
    const epikit::Trajectory traj = epikit::integrate(p, kind, config);

    const bool with_t = f.a.has_value();
    std::vector<std::string> header{"tau", "S", "I", "R"};
    if (with_t)
        header.push_back("t");
    emit_csv_row(header);
    const std::size_t n = traj.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (k % static_cast<std::size_t>(out_every) != 0 && k != n - 1)
            continue;
        const epikit::State& st = traj.states[k];
        std::vector<std::string> cells{g9(st.tau), g9(st.s), g9(st.i), g9(st.r)};
        if (with_t) {
            // the SI model is integrated in physical time already
            const double t = (kind == epikit::ModelKind::SI) ? st.tau : st.tau / *f.a;
            cells.push_back(g9(t));
        }
        emit_csv_row(cells);
    }
    return 0;
}

int run_peak(const CommonFlags& f, bool with_time, const epikit::IntegratorConfig& config) {
    const epikit::ModelParams p = f.params();
    epikit::PeakReport rep = epikit::peak_values(p);
    if (with_time) {
        if (!(p.i0 > 0.0))
            throw epikit::ConfigError("--with-time needs i0 > 0 to integrate");
        const epikit::Trajectory traj = epikit::integrate(p, epikit::ModelKind::SIR, config);
        rep.tau_star = epikit::locate_event(traj, epikit::Event::peak_of_i()).tau;
    }
    std::cout << "S_star = " << g9(rep.s_star) << '\n'
              << "I_star = " << g9(rep.i_star) << '\n'
              << "R_star = " << g9(rep.r_star) << '\n';
    if (rep.tau_star)
        std::cout << "tau_star = " << g9(*rep.tau_star) << '\n';
    return 0;
}

int run_final_size(const CommonFlags& f, const std::string& method_str) {
    const epikit::SolveMethod method =
        method_str == "fixed-point" ? epikit::SolveMethod::FixedPoint : epikit::SolveMethod::Bisection;
    const epikit::FinalSizeReport rep = epikit::final_size(f.params(), method);
    std::cout << "R_inf = " << g9(rep.r_inf) << '\n'
              << "S_inf = " << g9(rep.s_inf) << '\n'
              << "method = " << method_str << '\n'
              << "iterations = " << rep.iterations << '\n'
              << "residual = " << g9(rep.residual) << '\n';
    return 0;
}

int run_sweep(double r0_min, double r0_max, double step, double s0) {
    if (!(step > 0.0) || !(r0_max >= r0_min))
        throw epikit::ConfigError("sweep needs step > 0 and r0-max >= r0-min");
    std::vector<double> grid;
    for (long k = 0;; ++k) {
        const double r0 = r0_min + static_cast<double>(k) * step;
        if (r0 > r0_max + 1e-9 * step)
            break;
        grid.push_back(r0);
    }
    const auto points = epikit::final_size_sweep(grid, s0);
    emit_csv_row({"r0", "R_inf"});
    for (const auto& pt : points)
        emit_csv_row({g9(pt.r0), g9(pt.r_inf)});
    return 0;
}

int run_fastest(const CommonFlags& f) {
    const epikit::FastestReport rep = epikit::fastest_new_infections(f.params());
    std::cout << "S = " << g9(rep.s) << '\n'
              << "I = " << g9(rep.i) << '\n'
              << "rate = " << g9(rep.rate) << '\n';
    return 0;
}

int run_compare(double r0, double i0, const epikit::IntegratorConfig& config, long out_every) {
    const epikit::CompareTable table = epikit::compare_models(r0, i0, config);
    emit_csv_row({"tau", "I_sir", "I_modified"});
    const std::size_t n = table.rows.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (k % static_cast<std::size_t>(out_every) != 0 && k != n - 1)
            continue;
        const epikit::CompareRow& row = table.rows[k];
        emit_csv_row({g9(row.tau), g9(row.i_sir), g9(row.i_modified)});
    }
    std::cerr << "max_abs_diff = " << g9(table.max_abs_diff) << '\n'
              << "R_final_sir = " << g9(table.r_final_sir) << '\n'
              << "R_final_modified = " << g9(table.r_final_modified) << '\n';
    return 0;
}

int run_table1(bool raw) {
    const double grid[] = {2.0, 3.0, 6.0};
    if (raw) {
        emit_csv_row({"r0", "S_star", "I_star", "R_star", "S_inf", "R_inf"});
    } else {
        std::cout << pad("r0", 4) << pad("S*", 6) << pad("I*", 6) << pad("R*", 6) << pad("S_inf", 7)
                  << "R_inf" << '\n';
    }
    for (double r0 : grid) {
        const epikit::ModelParams p = epikit::make_params_s0(r0, 1.0, 0.0);
        const epikit::PeakReport peak = epikit::peak_values(p);
        const epikit::FinalSizeReport fin = epikit::final_size(p, epikit::SolveMethod::Bisection);
        if (raw) {
            emit_csv_row({g9(r0), g9(peak.s_star), g9(peak.i_star), g9(peak.r_star), g9(fin.s_inf),
                          g9(fin.r_inf)});
        } else {
            const int end_decimals = (r0 == 6.0) ? 3 : 2; // the table quotes 0.003/0.997 for r0=6
            std::cout << pad(g9(r0), 4) << pad(fixed_cell(peak.s_star, 2), 6)
                      << pad(fixed_cell(peak.i_star, 2), 6) << pad(fixed_cell(peak.r_star, 2), 6)
                      << pad(fixed_cell(fin.s_inf, end_decimals), 7)
                      << fixed_cell(fin.r_inf, end_decimals) << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SIR epidemic model toolkit: integration, analytics and exactly solvable relatives"};
    app.require_subcommand(1);
    // --h is the integration step, so the help flag keeps only its long form
    app.set_help_flag("--help", "print this help and exit");

    epikit::IntegratorConfig config;
    long out_every = 10;

    CommonFlags sim_flags;
    std::string model_str = "sir";
    CLI::App* sim = app.add_subcommand("simulate", "integrate a model and emit CSV (tau,S,I,R)");
    sim->add_option("--model", model_str, "sir | si | modified (default sir)")
        ->check(CLI::IsMember({"sir", "si", "modified"}));
    add_common(sim, sim_flags, /*with_a=*/true);
    sim->add_option("--h", config.h, "integration step (default 1e-3)");
    sim->add_option("--tau-max", config.tau_max, "time horizon (default 100)");
    sim->add_option("--out-every", out_every, "emit every Nth step (default 10)")
        ->check(CLI::PositiveNumber);

    CommonFlags peak_flags;
    bool with_time = false;
    CLI::App* peak = app.add_subcommand("peak", "peak values S*, I*, R*");
    add_common(peak, peak_flags);
    peak->add_flag("--with-time", with_time, "also locate the peak time on an integrated run");
    peak->add_option("--h", config.h, "integration step for --with-time");
    peak->add_option("--tau-max", config.tau_max, "time horizon for --with-time");

    CommonFlags fs_flags;
    std::string method_str = "bisection";
    CLI::App* fs = app.add_subcommand("final-size", "limiting sizes R_inf and S_inf");
    add_common(fs, fs_flags);
    fs->add_option("--method", method_str, "bisection | fixed-point (default bisection)")
        ->check(CLI::IsMember({"bisection", "fixed-point"}));

    double r0_min = 0.0, r0_max = 0.0, step = 0.0;
    double sweep_s0 = 1.0 - 1e-6;
    CLI::App* sweep = app.add_subcommand("sweep", "R_inf over an r0 grid as CSV");
    sweep->add_option("--r0-min", r0_min)->required();
    sweep->add_option("--r0-max", r0_max)->required();
    sweep->add_option("--step", step)->required();
    sweep->add_option("--s0", sweep_s0, "initial susceptible proportion (default 1-1e-6)");

    CommonFlags fast_flags;
    CLI::App* fast = app.add_subcommand("fastest", "fastest increase of new infections");
    add_common(fast, fast_flags);

    double cmp_r0 = 0.0, cmp_i0 = 1e-6;
    CLI::App* cmp = app.add_subcommand("compare", "SIR vs modified closed form as CSV");
    cmp->add_option("--r0", cmp_r0)->required();
    cmp->add_option("--i0", cmp_i0, "initial infected proportion (default 1e-6)");
    cmp->add_option("--h", config.h, "integration step (default 1e-3)");
    cmp->add_option("--tau-max", config.tau_max, "time horizon (default 100)");
    cmp->add_option("--out-every", out_every, "emit every Nth step (default 10)")
        ->check(CLI::PositiveNumber);

    bool raw = false;
    CLI::App* tab = app.add_subcommand("table1", "peak and end values for r0 = 2, 3, 6 (S0 = 1)");
    tab->add_flag("--raw", raw, "unrounded values as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (sim->parsed())
            return run_simulate(sim_flags, model_str, config, out_every);
        if (peak->parsed())
            return run_peak(peak_flags, with_time, config);
        if (fs->parsed())
            return run_final_size(fs_flags, method_str);
        if (sweep->parsed())
            return run_sweep(r0_min, r0_max, step, sweep_s0);
        if (fast->parsed())
            return run_fastest(fast_flags);
        if (cmp->parsed())
            return run_compare(cmp_r0, cmp_i0, config, out_every);
        if (tab->parsed())
            return run_table1(raw);
    } catch (const epikit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
