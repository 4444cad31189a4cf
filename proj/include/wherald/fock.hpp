#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>

#include "wherald/linalg.hpp"
#include "wherald/qubit.hpp"

namespace wherald {

// Algebra tolerances: 1e-12 for state algebra, 1e-10 for unitarity of
// constructed matrices. Construction gates are looser (1e-9) so that inputs
// assembled from user data are accepted and then held to the tight invariants.
inline constexpr double kStateTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kInputTol = 1e-9;

/// One photon across N modes: length-N vector of mode amplitudes.
class PurePhotonState {
public:
    PurePhotonState(std::size_t dim, cvec amps) : dim_(dim), amps_(std::move(amps)) {
        if (dim_ < 2) throw std::invalid_argument("PurePhotonState: need at least 2 modes");
        if (amps_.size() != dim_) throw std::invalid_argument("PurePhotonState: amplitude length mismatch");
        const double n2 = norm_sq(amps_);
        if (std::abs(n2 - 1.0) > kInputTol)
            throw std::invalid_argument("PurePhotonState: amplitudes not normalized");
        if (std::abs(n2 - 1.0) > 1e-13) {  // renormalize, but keep exact inputs bit-stable
            const double inv = 1.0 / std::sqrt(n2);
            for (auto& a : amps_) a *= inv;
        }
    }

    std::size_t dim() const { return dim_; }
    const cvec& amps() const { return amps_; }
    cplx amp(std::size_t j) const { return amps_[j]; }

private:
    std::size_t dim_;
    cvec amps_;
};

/// Mixed state of at most one photon: vacuum population plus the
/// single-photon-sector density operator. vac_prob + tr(rho1) = 1.
class SectoredDensity {
public:
    SectoredDensity(double vac_prob, CMat rho1) : vac_prob_(vac_prob), rho1_(std::move(rho1)) {
        if (rho1_.rows() != rho1_.cols())
            throw std::invalid_argument("SectoredDensity: rho1 must be square");
        if (vac_prob_ < -kInputTol || vac_prob_ > 1.0 + kInputTol)
            throw std::invalid_argument("SectoredDensity: vacuum population outside [0,1]");
        if (rho1_.hermiticity_error() > kInputTol)
            throw std::invalid_argument("SectoredDensity: rho1 not Hermitian");
        const double tr = rho1_.trace().real();
        if (std::abs(vac_prob_ + tr - 1.0) > kInputTol)
            throw std::invalid_argument("SectoredDensity: vac_prob + tr(rho1) != 1");
    }

    static SectoredDensity from_pure(const PurePhotonState& s) {
        return SectoredDensity(0.0, CMat::outer(s.amps(), s.amps()));
    }

    std::size_t dim() const { return rho1_.rows(); }
    double vac_prob() const { return vac_prob_; }
    const CMat& rho1() const { return rho1_; }

private:
    double vac_prob_;
    CMat rho1_;
};

/// N x N unitary acting on mode creation operators.
class ModeUnitary {
public:
    explicit ModeUnitary(CMat mat) : mat_(std::move(mat)) {
        if (mat_.rows() != mat_.cols()) throw std::invalid_argument("ModeUnitary: must be square");
        if (mat_.unitarity_error() > kUnitaryTol)
            throw std::invalid_argument("ModeUnitary: matrix is not unitary");
    }

    /// For matrices unitary by construction (e.g. exact DFT entries); skips the O(N^3) check.
    static ModeUnitary unchecked(CMat mat) { return ModeUnitary(std::move(mat), 0); }

    std::size_t dim() const { return mat_.rows(); }
    const CMat& mat() const { return mat_; }
    ModeUnitary adjoint() const { return ModeUnitary(mat_.adjoint(), 0); }

private:
    ModeUnitary(CMat mat, int) : mat_(std::move(mat)) {}
    CMat mat_;
};

inline PurePhotonState pure_from_logical(const LogicalQubit& q, std::size_t n_modes) {
    if (n_modes < 2) throw std::invalid_argument("pure_from_logical: need at least 2 modes");
    cvec amps(n_modes);
    amps[0] = q.alpha();
    amps[1] = q.beta();
    return PurePhotonState(n_modes, std::move(amps));
}

inline PurePhotonState apply_unitary(const ModeUnitary& u, const PurePhotonState& s) {
    if (u.dim() != s.dim()) throw std::invalid_argument("apply_unitary: dimension mismatch");
    return PurePhotonState(s.dim(), u.mat().mul(s.amps()));
}

/// rho1 -> U rho1 U^dagger; the vacuum sector is untouched by passive optics.
inline SectoredDensity conjugate_density(const ModeUnitary& u, const SectoredDensity& d) {
    if (u.dim() != d.dim()) throw std::invalid_argument("conjugate_density: dimension mismatch");
    return SectoredDensity(d.vac_prob(), u.mat() * d.rho1() * u.mat().adjoint());
}

/// Completely dephasing map in the photon number basis: keep the diagonal.
inline SectoredDensity dephase_diag(const SectoredDensity& d) {
    const std::size_t n = d.dim();
    CMat out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = d.rho1()(i, i);
    return SectoredDensity(d.vac_prob(), std::move(out));
}

/// <psi| rho1 |psi>; the vacuum sector contributes zero.
inline double fidelity_with_pure(const PurePhotonState& psi, const SectoredDensity& d) {
    if (psi.dim() != d.dim()) throw std::invalid_argument("fidelity_with_pure: dimension mismatch");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        cplx row = 0.0;
        for (std::size_t j = 0; j < psi.dim(); ++j) row += d.rho1()(i, j) * psi.amp(j);
        acc += std::conj(psi.amp(i)) * row;
    }
    return acc.real();
}

/// Uniform per-mode erasure with probability eta.
inline SectoredDensity apply_uniform_loss(const SectoredDensity& d, double eta) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("apply_uniform_loss: eta outside [0,1]");
    const double tr = d.rho1().trace().real();
    CMat scaled = d.rho1();
    scaled *= cplx{1.0 - eta, 0.0};
    return SectoredDensity(d.vac_prob() + eta * tr, std::move(scaled));
}

}  // namespace wherald
