#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <thread>
#include <vector>

#include "wherald/channels.hpp"
#include "wherald/encoding.hpp"
#include "wherald/herald.hpp"
#include "wherald/noise.hpp"
#include "wherald/rng.hpp"

namespace wherald {
namespace mc {

struct McConfig {
    std::size_t n_modes = 2;
    LogicalQubit qubit{1.0, 0.0};
    std::shared_ptr<const PhaseDistribution> dist;
    double eta = 0.0;
    HeraldMode mode = HeraldMode::absence;
    std::size_t samples = 1;
    std::uint64_t seed = 0;
    std::size_t shards = 1;
    // Stream indices are seed_stream_base + shard, so sweeps can hand each
    // grid point a disjoint block of streams.
    std::uint64_t stream_base = 0;
    // Sample detector clicks instead of carrying exact per-sample weights.
    bool click_sampling = false;
};

struct McEstimate {
    double p_mean;
    double p_se;
    double f_mean;
    double f_se;
    std::size_t samples;
};

struct ComparisonReport {
    double z_p;
    double z_f;
    double threshold;
    bool pass;
};

namespace detail {

struct ShardSums {
    std::size_t n = 0;
    double p = 0, p2 = 0;        // herald probability and its square
    double x = 0, x2 = 0;        // ratio-estimator numerator
    double y = 0, y2 = 0, xy = 0;  // ratio-estimator denominator and cross term
};

inline void run_shard(const McConfig& cfg, std::size_t shard, std::size_t n_samples,
                      const cvec& encoded, const CMat& qft_adj, ShardSums& out) {
    const std::size_t n = cfg.n_modes;
    RngStream rng(cfg.seed, cfg.stream_base + shard);
    const cplx a_conj = std::conj(cfg.qubit.alpha());
    const cplx b_conj = std::conj(cfg.qubit.beta());
    const double eta = cfg.eta;

    KahanSum sp, sp2, sx, sx2, sy, sy2, sxy;
    std::vector<double> theta(n);
    cvec kicked(n), decoded(n);

    for (std::size_t i = 0; i < n_samples; ++i) {
        for (auto& t : theta) t = cfg.dist->sample(rng);
        for (std::size_t j = 0; j < n; ++j) kicked[j] = std::polar(1.0, theta[j]) * encoded[j];
        for (std::size_t m = 0; m < n; ++m) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += qft_adj(m, j) * kicked[j];
            decoded[m] = acc;
        }

        // Exact post-loss sectored state of this sample: vacuum weight eta,
        // photon sector (1 - eta)|decoded><decoded|.
        const double s = std::norm(decoded[0]) + std::norm(decoded[1]);
        const double g = std::norm(a_conj * decoded[0] + b_conj * decoded[1]);

        double p, x, y;
        if (cfg.click_sampling) {
            // One detector outcome per sample: mode m with prob (1-eta)|d_m|^2, else no click.
            const double u = rng.uniform01();
            double acc = 0.0;
            std::size_t click = n;  // n = no click
            for (std::size_t m = 0; m < n; ++m) {
                acc += (1.0 - eta) * std::norm(decoded[m]);
                if (u < acc) {
                    click = m;
                    break;
                }
            }
            const bool in_logical = click < 2;
            const bool heralded = cfg.mode == HeraldMode::presence ? in_logical : (in_logical || click == n);
            p = heralded ? 1.0 : 0.0;
            // Fidelity contributions come only from photon-in-logical-modes events.
            x = in_logical && s > 0.0 ? g / s : 0.0;
            y = in_logical ? 1.0 : 0.0;
        } else {
            p = cfg.mode == HeraldMode::presence ? (1.0 - eta) * s : eta + (1.0 - eta) * s;
            x = g;
            y = s;
        }
        sp.add(p);
        sp2.add(p * p);
        sx.add(x);
        sx2.add(x * x);
        sy.add(y);
        sy2.add(y * y);
        sxy.add(x * y);
    }

    out.n = n_samples;
    out.p = sp.value();
    out.p2 = sp2.value();
    out.x = sx.value();
    out.x2 = sx2.value();
    out.y = sy.value();
    out.y2 = sy2.value();
    out.xy = sxy.value();
}

inline double sample_var(double sum, double sum_sq, std::size_t n) {
    if (n < 2) return 0.0;
    const double mean = sum / static_cast<double>(n);
    const double v = (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
    return v > 0.0 ? v : 0.0;
}

}  // namespace detail

/// Per-sample exact propagation of encode -> kick -> decode -> loss -> herald,
/// aggregated over cfg.samples draws. The shard plan (cfg.shards) fixes the
/// stream of every sample, so results are bit-identical for any worker count.
///
/// The heralded fidelity is the ratio estimator E[p_i F_i] / E[p_i] with a
/// delta-method standard error; for absence heralding the photon-sector ratio
/// is scaled by (1 - eta), mirroring F_Ha = (1 - eta) F_Hp.
inline McEstimate run(const McConfig& cfg, unsigned workers = 1) {
    if (!cfg.dist) throw std::invalid_argument("mc::run: no distribution");
    if (cfg.samples < 1) throw std::invalid_argument("mc::run: need at least one sample");
    if (cfg.shards < 1) throw std::invalid_argument("mc::run: need at least one shard");
    if (cfg.eta < 0.0 || cfg.eta > 1.0) throw std::invalid_argument("mc::run: eta outside [0,1]");

    const cvec encoded = encode(cfg.qubit, cfg.n_modes).amps();
    const CMat qft_adj = qft_matrix(cfg.n_modes).adjoint().mat();

    const std::size_t shards = cfg.shards;
    std::vector<detail::ShardSums> sums(shards);
    auto shard_samples = [&](std::size_t k) {
        return cfg.samples / shards + (k < cfg.samples % shards ? 1 : 0);
    };

    if (workers <= 1 || shards == 1) {
        for (std::size_t k = 0; k < shards; ++k)
            detail::run_shard(cfg, k, shard_samples(k), encoded, qft_adj, sums[k]);
    } else {
        const unsigned w = std::min<unsigned>(workers, static_cast<unsigned>(shards));
        std::vector<std::thread> pool;
        pool.reserve(w);
        for (unsigned t = 0; t < w; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t k = t; k < shards; k += w)
                    detail::run_shard(cfg, k, shard_samples(k), encoded, qft_adj, sums[k]);
            });
        for (auto& th : pool) th.join();
    }

    // Merge shard partials in index order: associative and deterministic.
    detail::ShardSums tot;
    KahanSum mp, mp2, mx, mx2, my, my2, mxy;
    for (const auto& s : sums) {
        tot.n += s.n;
        mp.add(s.p);
        mp2.add(s.p2);
        mx.add(s.x);
        mx2.add(s.x2);
        my.add(s.y);
        my2.add(s.y2);
        mxy.add(s.xy);
    }
    tot.p = mp.value();
    tot.p2 = mp2.value();
    tot.x = mx.value();
    tot.x2 = mx2.value();
    tot.y = my.value();
    tot.y2 = my2.value();
    tot.xy = mxy.value();

    const double nd = static_cast<double>(tot.n);
    const double p_mean = tot.p / nd;
    const double p_se = std::sqrt(detail::sample_var(tot.p, tot.p2, tot.n) / nd);

    if (p_mean <= 0.0)
        throw degenerate_outcome_error("mc::run: zero heralded weight across all samples");

    const double scale = cfg.mode == HeraldMode::absence ? 1.0 - cfg.eta : 1.0;
    double f_mean, f_se;
    if (tot.y <= 0.0) {
        if (scale == 0.0) {  // absence at eta = 1: fidelity is exactly the vacuum overlap
            f_mean = 0.0;
            f_se = 0.0;
        } else {
            throw degenerate_outcome_error("mc::run: no heralded photon weight, fidelity undefined");
        }
    } else {
        const double xm = tot.x / nd, ym = tot.y / nd;
        const double r = xm / ym;
        const double sxx = detail::sample_var(tot.x, tot.x2, tot.n);
        const double syy = detail::sample_var(tot.y, tot.y2, tot.n);
        const double sxy = tot.n < 2 ? 0.0 : (tot.xy - nd * xm * ym) / (nd - 1.0);
        const double var_r = (sxx - 2.0 * r * sxy + r * r * syy) / (nd * ym * ym);
        f_mean = scale * r;
        f_se = scale * std::sqrt(var_r > 0.0 ? var_r : 0.0);
    }

    return {p_mean, p_se, f_mean, f_se, tot.n};
}

/// z-scores of the estimate against analytic reference values.
inline ComparisonReport compare(const McEstimate& est, double analytic_p, double analytic_f,
                                double threshold = 4.0) {
    auto z = [](double mean, double se, double ref) {
        const double diff = mean - ref;
        if (se > 0.0) return diff / se;
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    };
    ComparisonReport r;
    r.z_p = z(est.p_mean, est.p_se, analytic_p);
    r.z_f = z(est.f_mean, est.f_se, analytic_f);
    r.threshold = threshold;
    r.pass = std::abs(r.z_p) <= threshold && std::abs(r.z_f) <= threshold;
    return r;
}

}  // namespace mc
}  // namespace wherald
