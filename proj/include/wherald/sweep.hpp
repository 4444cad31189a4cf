#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wherald/analytic.hpp"
#include "wherald/csv.hpp"
#include "wherald/herald.hpp"
#include "wherald/montecarlo.hpp"
#include "wherald/noise.hpp"
#include "wherald/qubit.hpp"

namespace wherald {
namespace sweep {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode { analytic, montecarlo, both };

/// One value on the dephasing axis: the channel parameter lambda plus,
/// when available, the sampleable distribution it came from.
struct DephasingPoint {
    std::shared_ptr<const PhaseDistribution> dist;  // null for a bare-lambda axis
    double lambda = 1.0;
    std::string family;
    std::optional<double> delta;
    std::optional<double> t2;
};

struct LossPoint {
    double eta = 0.0;
    std::optional<double> t1;
};

struct McSettings {
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    std::size_t shards = 1;
    bool click_sampling = false;
};

struct SweepConfig {
    RunMode mode = RunMode::analytic;
    std::vector<HeraldMode> heralds;
    std::vector<std::size_t> n_modes;
    std::vector<LogicalQubit> qubits;
    std::vector<DephasingPoint> dephasing;
    std::vector<LossPoint> loss;
    std::optional<double> t_p;
    McSettings mc;
    std::string out_path;
};

/// One CSV row: swept parameters plus analytic and/or Monte Carlo results.
struct SweepRecord {
    std::size_t n_modes = 2;
    HeraldMode herald = HeraldMode::absence;
    std::string family;
    double lambda = 1.0;
    std::optional<double> delta;
    double eta = 0.0;
    std::optional<double> t_p, t1, t2;
    LogicalQubit qubit{1.0, 0.0};
    std::optional<double> analytic_p, analytic_f;
    std::optional<std::size_t> mc_samples;
    std::optional<double> mc_p_mean, mc_p_se, mc_f_mean, mc_f_se, z_p, z_f;
    std::string status = "ok";
};

namespace detail {

// Numeric axis: a number, a list of numbers, or {"start","stop","count"}.
inline std::vector<double> parse_axis(const nlohmann::json& j, const std::string& name) {
    std::vector<double> out;
    if (j.is_number()) {
        out.push_back(j.get<double>());
    } else if (j.is_array()) {
        for (const auto& v : j) out.push_back(v.get<double>());
    } else if (j.is_object()) {
        const double start = j.at("start").get<double>();
        const double stop = j.at("stop").get<double>();
        const std::size_t count = j.at("count").get<std::size_t>();
        if (count == 0) throw config_error("axis '" + name + "': count must be >= 1");
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(count == 1 ? start
                                     : start + (stop - start) * static_cast<double>(i) /
                                                   static_cast<double>(count - 1));
    } else {
        throw config_error("axis '" + name + "': expected number, list, or range object");
    }
    if (out.empty()) throw config_error("axis '" + name + "' is empty");
    return out;
}

inline LogicalQubit parse_qubit(const nlohmann::json& j) {
    if (j.contains("theta"))
        return LogicalQubit::from_bloch(j.at("theta").get<double>(), j.value("phi", 0.0));
    const auto a = j.at("alpha");
    const auto b = j.at("beta");
    return LogicalQubit({a.at(0).get<double>(), a.at(1).get<double>()},
                        {b.at(0).get<double>(), b.at(1).get<double>()});
}

}  // namespace detail

inline SweepConfig parse_config(const nlohmann::json& j) {
    SweepConfig cfg;
    try {
        const std::string mode = j.value("mode", "analytic");
        if (mode == "analytic")
            cfg.mode = RunMode::analytic;
        else if (mode == "montecarlo")
            cfg.mode = RunMode::montecarlo;
        else if (mode == "both")
            cfg.mode = RunMode::both;
        else
            throw config_error("unknown mode '" + mode + "'");

        auto herald_names = j.value("herald", nlohmann::json("absence"));
        if (herald_names.is_string()) herald_names = nlohmann::json::array({herald_names});
        for (const auto& h : herald_names) {
            const std::string name = h.get<std::string>();
            if (name == "absence")
                cfg.heralds.push_back(HeraldMode::absence);
            else if (name == "presence")
                cfg.heralds.push_back(HeraldMode::presence);
            else
                throw config_error("unknown herald mode '" + name + "'");
        }

        for (double v : detail::parse_axis(j.at("n_modes"), "n_modes")) {
            if (v < 2 || v != std::floor(v)) throw config_error("n_modes values must be integers >= 2");
            cfg.n_modes.push_back(static_cast<std::size_t>(v));
        }

        auto qubits = j.contains("qubits") ? j.at("qubits") : nlohmann::json::array({j.at("qubit")});
        if (!qubits.is_array()) qubits = nlohmann::json::array({qubits});
        for (const auto& q : qubits) cfg.qubits.push_back(detail::parse_qubit(q));
        if (cfg.qubits.empty()) throw config_error("axis 'qubits' is empty");

        if (j.contains("t_p")) cfg.t_p = j.at("t_p").get<double>();

        const auto& deph = j.at("dephasing");
        if (deph.contains("delta")) {
            for (double d : detail::parse_axis(deph.at("delta"), "dephasing.delta")) {
                DephasingPoint p;
                p.dist = std::make_shared<GaussianPhase>(0.0, d);
                p.lambda = lambda_of(*p.dist).lambda;
                p.family = "gaussian";
                p.delta = d;
                cfg.dephasing.push_back(std::move(p));
            }
        } else if (deph.contains("t2")) {
            if (!cfg.t_p) throw config_error("dephasing.t2 axis requires t_p");
            for (double t2 : detail::parse_axis(deph.at("t2"), "dephasing.t2")) {
                const ChannelParams cp = timing_to_params({*cfg.t_p, 1.0, t2});
                DephasingPoint p;
                p.dist = std::make_shared<GaussianPhase>(0.0, cp.delta);
                p.lambda = lambda_of(*p.dist).lambda;
                p.family = "gaussian";
                p.delta = cp.delta;
                p.t2 = t2;
                cfg.dephasing.push_back(std::move(p));
            }
        } else if (deph.contains("lambda")) {
            for (double l : detail::parse_axis(deph.at("lambda"), "dephasing.lambda")) {
                if (l < 0.0 || l > 1.0) throw config_error("lambda values must lie in [0,1]");
                DephasingPoint p;
                p.lambda = l;
                cfg.dephasing.push_back(std::move(p));
            }
        } else if (deph.contains("distributions")) {
            const auto& list = deph.at("distributions");
            if (!list.is_array() || list.empty()) throw config_error("dephasing.distributions is empty");
            for (const auto& d : list) {
                DephasingPoint p;
                p.dist = distribution_from_json(d);
                p.lambda = lambda_of(*p.dist).lambda;
                p.family = p.dist->family();
                if (p.family == "gaussian") p.delta = d.at("delta").get<double>();
                cfg.dephasing.push_back(std::move(p));
            }
        } else {
            throw config_error("dephasing: expected one of delta | t2 | lambda | distributions");
        }

        const auto& loss = j.at("loss");
        if (loss.contains("eta")) {
            for (double e : detail::parse_axis(loss.at("eta"), "loss.eta")) {
                if (e < 0.0 || e > 1.0) throw config_error("eta values must lie in [0,1]");
                cfg.loss.push_back({e, std::nullopt});
            }
        } else if (loss.contains("t1")) {
            if (!cfg.t_p) throw config_error("loss.t1 axis requires t_p");
            for (double t1 : detail::parse_axis(loss.at("t1"), "loss.t1")) {
                const ChannelParams cp = timing_to_params({*cfg.t_p, t1, 1.0});
                cfg.loss.push_back({cp.eta, t1});
            }
        } else {
            throw config_error("loss: expected one of eta | t1");
        }

        if (j.contains("mc")) {
            const auto& m = j.at("mc");
            cfg.mc.samples = m.value("samples", cfg.mc.samples);
            cfg.mc.seed = m.value("seed", cfg.mc.seed);
            cfg.mc.shards = m.value("shards", cfg.mc.shards);
            cfg.mc.click_sampling = m.value("click_sampling", cfg.mc.click_sampling);
        }
        if (cfg.mc.samples < 1 || cfg.mc.shards < 1)
            throw config_error("mc.samples and mc.shards must be >= 1");

        if (cfg.mode != RunMode::analytic)
            for (const auto& p : cfg.dephasing)
                if (!p.dist)
                    throw config_error("montecarlo mode cannot sample from a bare-lambda axis");

        cfg.out_path = j.value("out", "");
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("bad config: ") + e.what());
    }
    return cfg;
}

inline SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return parse_config(j);
}

/// Evaluate every grid point. Grid order (and therefore RNG stream
/// assignment) is fixed: n_modes, herald, dephasing, loss, qubit.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, unsigned workers = 1) {
    std::vector<SweepRecord> records;
    std::size_t point_index = 0;
    for (std::size_t n : cfg.n_modes)
        for (HeraldMode herald : cfg.heralds)
            for (const auto& deph : cfg.dephasing)
                for (const auto& loss : cfg.loss)
                    for (const auto& qubit : cfg.qubits) {
                        SweepRecord rec;
                        rec.n_modes = n;
                        rec.herald = herald;
                        rec.family = deph.family;
                        rec.lambda = deph.lambda;
                        rec.delta = deph.delta;
                        rec.eta = loss.eta;
                        rec.t_p = deph.t2 || loss.t1 ? cfg.t_p : std::nullopt;
                        rec.t1 = loss.t1;
                        rec.t2 = deph.t2;
                        rec.qubit = qubit;

                        rec.analytic_p = herald == HeraldMode::absence
                                             ? analytic::p_herald_absence(deph.lambda, loss.eta, n)
                                             : analytic::p_herald_presence(deph.lambda, loss.eta, n);
                        rec.analytic_f = herald == HeraldMode::absence
                                             ? analytic::f_herald_absence(deph.lambda, loss.eta, qubit, n)
                                             : analytic::f_herald_presence(deph.lambda, qubit, n);

                        if (cfg.mode != RunMode::analytic) {
                            mc::McConfig mcc;
                            mcc.n_modes = n;
                            mcc.qubit = qubit;
                            mcc.dist = deph.dist;
                            mcc.eta = loss.eta;
                            mcc.mode = herald;
                            mcc.samples = cfg.mc.samples;
                            mcc.seed = cfg.mc.seed;
                            mcc.shards = cfg.mc.shards;
                            mcc.stream_base = point_index * cfg.mc.shards;
                            mcc.click_sampling = cfg.mc.click_sampling;
                            try {
                                const mc::McEstimate est = mc::run(mcc, workers);
                                const mc::ComparisonReport cmp =
                                    mc::compare(est, *rec.analytic_p, *rec.analytic_f);
                                rec.mc_samples = est.samples;
                                rec.mc_p_mean = est.p_mean;
                                rec.mc_p_se = est.p_se;
                                rec.mc_f_mean = est.f_mean;
                                rec.mc_f_se = est.f_se;
                                rec.z_p = cmp.z_p;
                                rec.z_f = cmp.z_f;
                            } catch (const degenerate_outcome_error&) {
                                rec.status = "degenerate";
                            }
                        }
                        records.push_back(std::move(rec));
                        ++point_index;
                    }
    return records;
}

inline const std::vector<std::string>& schema() {
    static const std::vector<std::string> cols{
        "n_modes", "herald",    "family",    "lambda",    "delta",     "eta",
        "t_p",     "t1",        "t2",        "alpha_re",  "alpha_im",  "beta_re",
        "beta_im", "analytic_p", "analytic_f", "mc_samples", "mc_p_mean", "mc_p_se",
        "mc_f_mean", "mc_f_se", "z_p",       "z_f",       "status"};
    return cols;
}

inline csv::Table to_table(const std::vector<SweepRecord>& records) {
    auto opt_cell = [](const std::optional<double>& v) {
        return v ? csv::format_double(*v) : std::string();
    };
    csv::Table t;
    t.header = schema();
    for (const auto& r : records) {
        std::vector<std::string> row;
        row.push_back(std::to_string(r.n_modes));
        row.push_back(to_string(r.herald));
        row.push_back(r.family);
        row.push_back(csv::format_double(r.lambda));
        row.push_back(opt_cell(r.delta));
        row.push_back(csv::format_double(r.eta));
        row.push_back(opt_cell(r.t_p));
        row.push_back(opt_cell(r.t1));
        row.push_back(opt_cell(r.t2));
        row.push_back(csv::format_double(r.qubit.alpha().real()));
        row.push_back(csv::format_double(r.qubit.alpha().imag()));
        row.push_back(csv::format_double(r.qubit.beta().real()));
        row.push_back(csv::format_double(r.qubit.beta().imag()));
        row.push_back(opt_cell(r.analytic_p));
        row.push_back(opt_cell(r.analytic_f));
        row.push_back(r.mc_samples ? std::to_string(*r.mc_samples) : std::string());
        row.push_back(opt_cell(r.mc_p_mean));
        row.push_back(opt_cell(r.mc_p_se));
        row.push_back(opt_cell(r.mc_f_mean));
        row.push_back(opt_cell(r.mc_f_se));
        row.push_back(opt_cell(r.z_p));
        row.push_back(opt_cell(r.z_f));
        row.push_back(r.status);
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline std::vector<SweepRecord> from_table(const csv::Table& t) {
    if (t.header != schema()) throw std::invalid_argument("sweep: unexpected CSV schema");
    auto opt = [](const std::string& s) -> std::optional<double> {
        if (s.empty()) return std::nullopt;
        return csv::parse_double(s);
    };
    std::vector<SweepRecord> records;
    for (const auto& row : t.rows) {
        SweepRecord r;
        std::size_t c = 0;
        r.n_modes = static_cast<std::size_t>(std::stoull(row[c++]));
        r.herald = row[c++] == "presence" ? HeraldMode::presence : HeraldMode::absence;
        r.family = row[c++];
        r.lambda = csv::parse_double(row[c++]);
        r.delta = opt(row[c++]);
        r.eta = csv::parse_double(row[c++]);
        r.t_p = opt(row[c++]);
        r.t1 = opt(row[c++]);
        r.t2 = opt(row[c++]);
        const double ar = csv::parse_double(row[c++]);
        const double ai = csv::parse_double(row[c++]);
        const double br = csv::parse_double(row[c++]);
        const double bi = csv::parse_double(row[c++]);
        r.qubit = LogicalQubit({ar, ai}, {br, bi});
        r.analytic_p = opt(row[c++]);
        r.analytic_f = opt(row[c++]);
        const std::string& samples = row[c++];
        if (!samples.empty()) r.mc_samples = static_cast<std::size_t>(std::stoull(samples));
        r.mc_p_mean = opt(row[c++]);
        r.mc_p_se = opt(row[c++]);
        r.mc_f_mean = opt(row[c++]);
        r.mc_f_se = opt(row[c++]);
        r.z_p = opt(row[c++]);
        r.z_f = opt(row[c++]);
        r.status = row[c++];
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace sweep
}  // namespace wherald
