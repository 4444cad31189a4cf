#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "wherald/noise.hpp"
#include "wherald/qubit.hpp"

namespace wherald {
namespace analytic {

namespace detail {

inline void check_args(double lambda, double eta, std::size_t n) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("analytic: lambda outside [0,1]");
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("analytic: eta outside [0,1]");
    if (n < 2) throw std::invalid_argument("analytic: need at least 2 modes");
}

// Weight of the decoded state inside the logical modes: lambda + (2/N)(1 - lambda).
inline double logical_weight(double lambda, std::size_t n) {
    return lambda + (2.0 / static_cast<double>(n)) * (1.0 - lambda);
}

}  // namespace detail

/// P_Ha = eta + (1 - eta) [lambda + (2/N)(1 - lambda)]
inline double p_herald_absence(double lambda, double eta, std::size_t n) {
    detail::check_args(lambda, eta, n);
    return eta + (1.0 - eta) * detail::logical_weight(lambda, n);
}

/// P_Hp = (1 - eta) [lambda + (2/N)(1 - lambda)]
inline double p_herald_presence(double lambda, double eta, std::size_t n) {
    detail::check_args(lambda, eta, n);
    return (1.0 - eta) * detail::logical_weight(lambda, n);
}

/// F_Hp = (N lambda + (1 - lambda)(1 + 2|alpha beta|^2)) / ((N - 2) lambda + 2)
inline double f_herald_presence(double lambda, const LogicalQubit& q, std::size_t n) {
    detail::check_args(lambda, 0.0, n);
    const double ab2 = std::norm(q.alpha()) * std::norm(q.beta());
    const double nn = static_cast<double>(n);
    return (nn * lambda + (1.0 - lambda) * (1.0 + 2.0 * ab2)) / ((nn - 2.0) * lambda + 2.0);
}

/// F_Ha = (1 - eta) F_Hp
inline double f_herald_absence(double lambda, double eta, const LogicalQubit& q, std::size_t n) {
    detail::check_args(lambda, eta, n);
    return (1.0 - eta) * f_herald_presence(lambda, q, n);
}

/// Bloch-variable entry points; phi never enters (only |alpha beta|^2 does).
inline double f_herald_presence_bloch(double lambda, double theta, std::size_t n) {
    detail::check_args(lambda, 0.0, n);
    const double s2 = std::sin(theta) * std::sin(theta);
    const double nn = static_cast<double>(n);
    return (lambda + (1.0 - lambda) * (2.0 + s2) / (2.0 * nn)) / detail::logical_weight(lambda, n);
}

inline double f_herald_absence_bloch(double lambda, double eta, double theta, std::size_t n) {
    detail::check_args(lambda, eta, n);
    return (1.0 - eta) * f_herald_presence_bloch(lambda, theta, n);
}

/// One grid point of the T1/T2-parameterized heralding curves.
struct CurveRow {
    double t_p;
    double t1;
    double t2;
    double t_over_t2;
    std::size_t n_modes;
    double p_absence;
    double f_absence;
    double p_presence;
    double f_presence;
};

/// Evaluate the timing-parameterized forms on a grid, one row per
/// (timing point, mode count), for CSV or plot emission.
inline std::vector<CurveRow> curves_vs_t2(const std::vector<ChannelTiming>& grid,
                                          const std::vector<std::size_t>& n_list,
                                          const LogicalQubit& q) {
    std::vector<CurveRow> rows;
    rows.reserve(grid.size() * n_list.size());
    for (const auto& t : grid) {
        const ChannelParams cp = timing_to_params(t);
        const double lambda = std::exp(-t.t_p / t.t2);
        for (std::size_t n : n_list) {
            CurveRow r;
            r.t_p = t.t_p;
            r.t1 = t.t1;
            r.t2 = t.t2;
            r.t_over_t2 = t.t_p / t.t2;
            r.n_modes = n;
            r.p_absence = p_herald_absence(lambda, cp.eta, n);
            r.f_absence = f_herald_absence(lambda, cp.eta, q, n);
            r.p_presence = p_herald_presence(lambda, cp.eta, n);
            r.f_presence = f_herald_presence(lambda, q, n);
            rows.push_back(r);
        }
    }
    return rows;
}

}  // namespace analytic
}  // namespace wherald
