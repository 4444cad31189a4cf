#pragma once

#include <stdexcept>
#include <vector>

#include "wherald/fock.hpp"
#include "wherald/qubit.hpp"

namespace wherald {

enum class HeraldMode { presence, absence };

inline const char* to_string(HeraldMode m) {
    return m == HeraldMode::presence ? "presence" : "absence";
}

/// Thrown when the heralding outcome has zero probability and the
/// post-selected state is undefined (e.g. presence heralding at eta = 1).
struct degenerate_outcome_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HeraldReport {
    double herald_prob;
    SectoredDensity post_state;  // dim-2 logical sector plus vacuum
    double fidelity;
};

/// Post-select the decoded, post-loss state d_out against input qubit q.
///
/// presence: exactly one photon between modes 0 and 1. The post-state is the
/// normalized 2x2 block of rho1, vacuum-free.
///
/// absence: no photon in modes 2..N-1, which a lost photon also satisfies.
/// The post-state mixes the normalized 2x2 block (weight 1 - vac) with the
/// vacuum (weight vac), so its fidelity carries the vacuum's zero overlap and
/// F_absence = (1 - vac) * F_presence.
inline HeraldReport herald(const SectoredDensity& d_out, const LogicalQubit& q, HeraldMode mode) {
    if (d_out.dim() < 2) throw std::invalid_argument("herald: need at least 2 modes");
    const CMat& rho = d_out.rho1();
    CMat block(2, 2);
    block(0, 0) = rho(0, 0);
    block(0, 1) = rho(0, 1);
    block(1, 0) = rho(1, 0);
    block(1, 1) = rho(1, 1);
    const double block_tr = (block(0, 0) + block(1, 1)).real();
    const double vac = d_out.vac_prob();

    // <L| block |L> with |L> = (alpha, beta)
    const cplx a = q.alpha(), b = q.beta();
    const double overlap =
        (std::conj(a) * (block(0, 0) * a + block(0, 1) * b) +
         std::conj(b) * (block(1, 0) * a + block(1, 1) * b))
            .real();

    if (mode == HeraldMode::presence) {
        if (block_tr <= 0.0)
            throw degenerate_outcome_error("herald: presence outcome has zero probability");
        CMat post = block;
        post *= cplx{1.0 / block_tr, 0.0};
        return {block_tr, SectoredDensity(0.0, std::move(post)), overlap / block_tr};
    }

    const double p = vac + block_tr;
    if (p <= 0.0) throw degenerate_outcome_error("herald: absence outcome has zero probability");
    if (block_tr <= 0.0)  // only the lost-photon branch survives
        return {p, SectoredDensity(1.0, CMat(2, 2)), 0.0};
    CMat post = block;
    post *= cplx{(1.0 - vac) / block_tr, 0.0};
    return {p, SectoredDensity(vac, std::move(post)), (1.0 - vac) * overlap / block_tr};
}

/// Per-mode single-photon detection probabilities of the output state;
/// the final slot is the no-click probability. Sums to 1.
inline std::vector<double> detection_distribution(const SectoredDensity& d_out) {
    const std::size_t n = d_out.dim();
    std::vector<double> probs(n + 1);
    for (std::size_t m = 0; m < n; ++m) probs[m] = d_out.rho1()(m, m).real();
    probs[n] = d_out.vac_prob();
    return probs;
}

}  // namespace wherald
