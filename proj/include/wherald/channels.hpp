#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "wherald/fock.hpp"

namespace wherald {

/// Exact per-sample noise action: amps_j -> e^{i theta_j} amps_j.
inline PurePhotonState apply_phase_kick(const PurePhotonState& s, std::span<const double> theta) {
    if (theta.size() != s.dim()) throw std::invalid_argument("apply_phase_kick: phase vector length mismatch");
    cvec amps = s.amps();
    for (std::size_t j = 0; j < amps.size(); ++j) amps[j] *= std::polar(1.0, theta[j]);
    return PurePhotonState(s.dim(), std::move(amps));
}

/// The distribution-averaged channel: lambda |w><w| + (1 - lambda) diag(|w><w|).
/// Equivalently a dephasing channel scaling every off-diagonal entry by lambda.
inline SectoredDensity averaged_channel(const PurePhotonState& w, double lambda) {
    if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("averaged_channel: lambda outside [0,1]");
    const std::size_t n = w.dim();
    CMat rho = CMat::outer(w.amps(), w.amps());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) rho(i, j) *= lambda;
    return SectoredDensity(0.0, std::move(rho));
}

/// Gaussian phase noise of std-dev delta: lambda = e^{-delta^2}.
inline SectoredDensity gaussian_averaged_channel(const PurePhotonState& w, double delta) {
    if (!(delta >= 0.0)) throw std::invalid_argument("gaussian_averaged_channel: delta must be >= 0");
    return averaged_channel(w, std::exp(-delta * delta));
}

}  // namespace wherald
