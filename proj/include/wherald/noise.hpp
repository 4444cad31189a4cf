#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wherald/linalg.hpp"
#include "wherald/rng.hpp"

namespace wherald {

/// Per-mode phase-noise family. Draws are i.i.d. across modes and calls; each
/// member supplies its exact characteristic-function value phi_p(1) = E[e^{i theta}],
/// which is all the averaged channel depends on. Open for extension: new members
/// just implement sample() and char_at_one() (closed form or quadrature).
class PhaseDistribution {
public:
    virtual ~PhaseDistribution() = default;
    virtual double sample(RngStream& rng) const = 0;
    virtual cplx char_at_one() const = 0;
    virtual std::string family() const = 0;
    virtual nlohmann::json descriptor() const = 0;
};

class GaussianPhase final : public PhaseDistribution {
public:
    GaussianPhase(double mu, double delta) : mu_(mu), delta_(delta) {
        if (!(delta >= 0.0)) throw std::invalid_argument("GaussianPhase: delta must be >= 0");
    }
    double sample(RngStream& rng) const override { return mu_ + delta_ * rng.normal(); }
    cplx char_at_one() const override {
        return std::polar(std::exp(-0.5 * delta_ * delta_), mu_);
    }
    std::string family() const override { return "gaussian"; }
    nlohmann::json descriptor() const override {
        return {{"family", "gaussian"}, {"mu", mu_}, {"delta", delta_}};
    }
    double mu() const { return mu_; }
    double delta() const { return delta_; }

private:
    double mu_, delta_;
};

/// Uniform on [center - half_width, center + half_width].
class UniformPhase final : public PhaseDistribution {
public:
    UniformPhase(double center, double half_width) : center_(center), half_width_(half_width) {
        if (!(half_width >= 0.0)) throw std::invalid_argument("UniformPhase: half_width must be >= 0");
    }
    double sample(RngStream& rng) const override {
        return center_ - half_width_ + 2.0 * half_width_ * rng.uniform01();
    }
    cplx char_at_one() const override {
        return std::polar(sinc(half_width_), center_);
    }
    std::string family() const override { return "uniform"; }
    nlohmann::json descriptor() const override {
        return {{"family", "uniform"}, {"center", center_}, {"half_width", half_width_}};
    }
    double center() const { return center_; }
    double half_width() const { return half_width_; }

    static double sinc(double a) {
        if (std::abs(a) < 1e-8) return 1.0 - a * a / 6.0;
        return std::sin(a) / a;
    }

private:
    double center_, half_width_;
};

/// theta0 with probability p, theta1 otherwise.
class TwoPointPhase final : public PhaseDistribution {
public:
    TwoPointPhase(double theta0, double theta1, double p) : theta0_(theta0), theta1_(theta1), p_(p) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("TwoPointPhase: p outside [0,1]");
    }
    double sample(RngStream& rng) const override { return rng.uniform01() < p_ ? theta0_ : theta1_; }
    cplx char_at_one() const override {
        return p_ * std::polar(1.0, theta0_) + (1.0 - p_) * std::polar(1.0, theta1_);
    }
    std::string family() const override { return "two_point"; }
    nlohmann::json descriptor() const override {
        return {{"family", "two_point"}, {"theta0", theta0_}, {"theta1", theta1_}, {"p", p_}};
    }

private:
    double theta0_, theta1_, p_;
};

class DegeneratePhase final : public PhaseDistribution {
public:
    explicit DegeneratePhase(double theta) : theta_(theta) {}
    double sample(RngStream&) const override { return theta_; }
    cplx char_at_one() const override { return std::polar(1.0, theta_); }
    std::string family() const override { return "degenerate"; }
    nlohmann::json descriptor() const override {
        return {{"family", "degenerate"}, {"theta", theta_}};
    }

private:
    double theta_;
};

struct DistributionSummary {
    double lambda;  // |phi_p(1)|^2, the surviving off-diagonal weight
};

inline DistributionSummary lambda_of(const PhaseDistribution& dist) {
    return {std::norm(dist.char_at_one())};
}

/// Channel timing: propagation time plus the loss (T1) and dephasing (T2)
/// characteristic times. T1 or T2 may be +infinity to switch a channel off.
struct ChannelTiming {
    double t_p;
    double t1;
    double t2;
};

struct ChannelParams {
    double delta;  // Gaussian phase std-dev, delta^2 = t_p / T2
    double eta;    // loss probability, 1 - e^{-t_p / T1}
};

inline ChannelParams timing_to_params(const ChannelTiming& t) {
    if (!(t.t_p >= 0.0)) throw std::invalid_argument("timing_to_params: t_p must be >= 0");
    if (!(t.t1 > 0.0) || !(t.t2 > 0.0))
        throw std::invalid_argument("timing_to_params: T1 and T2 must be positive");
    return {std::sqrt(t.t_p / t.t2), 1.0 - std::exp(-t.t_p / t.t1)};
}

/// N i.i.d. draws; deterministic given the stream state. Phases are not
/// wrapped mod 2 pi (the channel is periodic, larger values are legal).
inline std::vector<double> sample_phase_vector(const PhaseDistribution& dist, std::size_t n,
                                               RngStream& rng) {
    std::vector<double> theta(n);
    for (auto& t : theta) t = dist.sample(rng);
    return theta;
}

inline std::shared_ptr<const PhaseDistribution> distribution_from_json(const nlohmann::json& j) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "gaussian")
        return std::make_shared<GaussianPhase>(j.value("mu", 0.0), j.at("delta").get<double>());
    if (family == "uniform")
        return std::make_shared<UniformPhase>(j.value("center", 0.0),
                                              j.at("half_width").get<double>());
    if (family == "two_point")
        return std::make_shared<TwoPointPhase>(j.at("theta0").get<double>(),
                                               j.at("theta1").get<double>(), j.at("p").get<double>());
    if (family == "degenerate")
        return std::make_shared<DegeneratePhase>(j.at("theta").get<double>());
    throw std::invalid_argument("unknown distribution family: " + family);
}

}  // namespace wherald
