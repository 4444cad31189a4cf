#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "wherald/analytic.hpp"
#include "wherald/encoding.hpp"
#include "wherald/plot.hpp"
#include "wherald/random_states.hpp"
#include "wherald/robustness.hpp"
#include "wherald/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerification = 2;

unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("WHERALD_THREADS")) {
        const unsigned long cap = std::strtoul(env, nullptr, 10);
        if (cap >= 1 && cap < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

std::string resolve_out(const std::string& flag_out, const wherald::sweep::SweepConfig& cfg) {
    if (!flag_out.empty()) return flag_out;
    if (!cfg.out_path.empty()) return cfg.out_path;
    throw wherald::sweep::config_error("no output path: pass --out or set \"out\" in the config");
}

void write_records(const std::string& path, const std::vector<wherald::sweep::SweepRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw wherald::sweep::config_error("cannot open output file: " + path);
    wherald::csv::write(out, wherald::sweep::to_table(records));
    if (!out) throw wherald::sweep::config_error("failed writing output file: " + path);
}

int cmd_analytic(const std::string& config_path, const std::string& out_flag) {
    auto cfg = wherald::sweep::load_config(config_path);
    cfg.mode = wherald::sweep::RunMode::analytic;
    const auto records = wherald::sweep::run_sweep(cfg, worker_count());
    const std::string path = resolve_out(out_flag, cfg);
    write_records(path, records);
    std::cout << "wrote " << records.size() << " rows to " << path << "\n";
    return kExitOk;
}

int cmd_montecarlo(const std::string& config_path, const std::string& out_flag, bool seed_set,
                   std::uint64_t seed, double threshold) {
    auto cfg = wherald::sweep::load_config(config_path);
    if (cfg.mode == wherald::sweep::RunMode::analytic) cfg.mode = wherald::sweep::RunMode::montecarlo;
    if (seed_set) cfg.mc.seed = seed;
    const auto records = wherald::sweep::run_sweep(cfg, worker_count());
    const std::string path = resolve_out(out_flag, cfg);
    write_records(path, records);
    std::cout << "wrote " << records.size() << " rows to " << path << "\n";

    std::size_t failures = 0;
    for (const auto& r : records) {
        if (!r.z_p || !r.z_f) continue;
        if (std::abs(*r.z_p) > threshold || std::abs(*r.z_f) > threshold) {
            ++failures;
            std::cerr << "z-score beyond " << threshold << " sigma: n_modes=" << r.n_modes
                      << " herald=" << to_string(r.herald) << " lambda=" << r.lambda
                      << " eta=" << r.eta << " z_p=" << *r.z_p << " z_f=" << *r.z_f << "\n";
        }
    }
    if (failures > 0) {
        std::cerr << failures << " grid point(s) failed the " << threshold << " sigma check\n";
        return kExitVerification;
    }
    return kExitOk;
}

int cmd_gate_check(const std::string& config_path, std::vector<std::size_t> n_modes,
                   std::size_t trials, std::uint64_t seed) {
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw wherald::sweep::config_error("cannot open config file: " + config_path);
        nlohmann::json j;
        in >> j;
        if (j.contains("n_modes")) {
            n_modes.clear();
            for (const auto& v : j.at("n_modes")) n_modes.push_back(v.get<std::size_t>());
        }
        trials = j.value("trials", trials);
        seed = j.value("seed", seed);
    }
    if (n_modes.empty()) n_modes = {4, 16};

    constexpr double kTol = 1e-10;
    bool ok = true;
    for (std::size_t n : n_modes) {
        wherald::RngStream rng(seed, n);
        double worst = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const wherald::LogicalQubit q = wherald::random_qubit(rng);
            const wherald::CMat u2 = wherald::random_unitary2(rng);
            const auto gate = wherald::encoded_gate(u2, n);
            const auto decoded = wherald::decode(wherald::apply_unitary(gate, wherald::encode(q, n)));
            const wherald::cplx e0 = u2(0, 0) * q.alpha() + u2(0, 1) * q.beta();
            const wherald::cplx e1 = u2(1, 0) * q.alpha() + u2(1, 1) * q.beta();
            const double fid = std::norm(std::conj(e0) * decoded.amp(0) + std::conj(e1) * decoded.amp(1));
            worst = std::max(worst, std::abs(fid - 1.0));
        }
        const bool pass = worst <= kTol;
        ok = ok && pass;
        std::cout << (pass ? "PASS" : "FAIL") << " gate-check n_modes=" << n << " trials=" << trials
                  << " max_fidelity_deviation=" << worst << "\n";
    }
    return ok ? kExitOk : kExitVerification;
}

int cmd_robustness(std::size_t n_max) {
    if (n_max < 2 || n_max > 10)
        throw wherald::sweep::config_error("robustness: n-max must lie in [2,10]");
    constexpr double kTol = 1e-12;
    bool ok = true;
    auto report = [&](const char* name, std::size_t n, double err) {
        const bool pass = err <= kTol;
        ok = ok && pass;
        std::cout << (pass ? "PASS" : "FAIL") << " " << name << " n=" << n << " max_error=" << err
                  << "\n";
    };
    for (std::size_t n = 2; n <= n_max; ++n) {
        report("ghz_partial_trace", n, wherald::ghz_partial_trace_error(n));
        report("w_partial_trace", n, wherald::w_partial_trace_error(n));
        report("w_permutation_invariance", n, wherald::w_permutation_error(n));
    }
    return ok ? kExitOk : kExitVerification;
}

int cmd_plot(const std::string& in_path, const wherald::plot::PlotSpec& spec, const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw wherald::sweep::config_error("cannot open CSV file: " + in_path);
    const wherald::csv::Table table = wherald::csv::read(in);
    const std::string svg = wherald::plot::render_svg(table, spec);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw wherald::sweep::config_error("cannot open output file: " + out_path);
    out << svg;
    std::cout << "wrote plot to " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "wherald: analytic and Monte Carlo evaluation of QFT fan-out W-state "
        "error heralding for a dual-rail photonic qubit"};
    app.require_subcommand(1);

    std::string config_path, out_flag, plot_in, plot_out = "plot.svg";
    std::uint64_t seed = 1;
    double threshold = 4.0;
    std::size_t trials = 100, n_max = 8;
    std::vector<std::size_t> n_modes;
    wherald::plot::PlotSpec spec;

    auto* analytic = app.add_subcommand("analytic", "evaluate closed-form herald curves over a grid");
    analytic->add_option("--config", config_path, "JSON sweep config")->required();
    analytic->add_option("--out", out_flag, "output CSV path (overrides config)");

    auto* montecarlo = app.add_subcommand("montecarlo", "sampled simulation with z-scores vs analytic");
    montecarlo->add_option("--config", config_path, "JSON sweep config")->required();
    montecarlo->add_option("--out", out_flag, "output CSV path (overrides config)");
    auto* seed_opt = montecarlo->add_option("--seed", seed, "master seed (overrides config)");
    montecarlo->add_option("--threshold", threshold, "z-score failure threshold in sigmas");

    auto* gate = app.add_subcommand("gate-check", "encoded-gate round-trip property check");
    gate->add_option("--config", config_path, "optional JSON config {n_modes, trials, seed}");
    gate->add_option("--n-modes", n_modes, "mode counts to test");
    gate->add_option("--trials", trials, "random unitaries per mode count");
    gate->add_option("--seed", seed, "RNG seed");

    auto* robust = app.add_subcommand("robustness", "GHZ/W partial-trace and permutation identities");
    robust->add_option("--n-max", n_max, "largest qubit count");

    auto* plot = app.add_subcommand("plot", "render a CSV as an SVG line chart");
    plot->add_option("--in", plot_in, "input CSV")->required();
    plot->add_option("--x", spec.x_col, "x-axis column")->required();
    plot->add_option("--y", spec.y_col, "y-axis column")->required();
    plot->add_option("--series", spec.series_col, "series key column");
    plot->add_option("--title", spec.title, "chart title");
    plot->add_option("--out", plot_out, "output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (app.got_subcommand(analytic)) return cmd_analytic(config_path, out_flag);
        if (app.got_subcommand(montecarlo))
            return cmd_montecarlo(config_path, out_flag, seed_opt->count() > 0, seed, threshold);
        if (app.got_subcommand(gate)) return cmd_gate_check(config_path, n_modes, trials, seed);
        if (app.got_subcommand(robust)) return cmd_robustness(n_max);
        if (app.got_subcommand(plot)) return cmd_plot(plot_in, spec, plot_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
