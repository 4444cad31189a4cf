#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

#include "wherald/fock.hpp"
#include "wherald/qubit.hpp"

namespace wherald {

namespace detail {

// omega_N^m with the exponent reduced mod N first, so the trig argument stays
// in [0, 2pi) and entries keep full precision at large N.
inline cplx root_of_unity(std::size_t n, std::uint64_t exponent) {
    const std::uint64_t m = exponent % n;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
}

}  // namespace detail

/// Entry (j,k) = omega_N^{jk} / sqrt(N), omega_N = e^{2 pi i / N}.
inline ModeUnitary qft_matrix(std::size_t n) {
    if (n < 2) throw std::invalid_argument("qft_matrix: need at least 2 modes");
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    CMat m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            m(j, k) = inv_sqrt_n * detail::root_of_unity(n, static_cast<std::uint64_t>(j) * k);
    return ModeUnitary::unchecked(std::move(m));
}

/// |W_k>: amplitude omega_N^{kq} / sqrt(N) in mode q.
inline PurePhotonState w_basis_state(std::size_t k, std::size_t n) {
    if (n < 2) throw std::invalid_argument("w_basis_state: need at least 2 modes");
    if (k >= n) throw std::invalid_argument("w_basis_state: index out of range");
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    cvec amps(n);
    for (std::size_t q = 0; q < n; ++q)
        amps[q] = inv_sqrt_n * detail::root_of_unity(n, static_cast<std::uint64_t>(k) * q);
    return PurePhotonState(n, std::move(amps));
}

/// QFT fan-out of the dual-rail qubit: amplitude (alpha + beta omega_N^j) / sqrt(N) in mode j.
inline PurePhotonState encode(const LogicalQubit& q, std::size_t n) {
    if (n < 2) throw std::invalid_argument("encode: need at least 2 modes");
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    cvec amps(n);
    for (std::size_t j = 0; j < n; ++j)
        amps[j] = inv_sqrt_n * (q.alpha() + q.beta() * detail::root_of_unity(n, j));
    return PurePhotonState(n, std::move(amps));
}

/// Inverse QFT; decode(encode(q)) restores the logical amplitudes.
inline PurePhotonState decode(const PurePhotonState& s) {
    return apply_unitary(qft_matrix(s.dim()).adjoint(), s);
}

inline SectoredDensity decode_density(const SectoredDensity& d) {
    return conjugate_density(qft_matrix(d.dim()).adjoint(), d);
}

/// Q (U + I_{N-2}) Q^dagger: the fanned-out equivalent of the logical gate u2,
/// acting directly on the encoded basis.
inline ModeUnitary encoded_gate(const CMat& u2, std::size_t n) {
    if (u2.rows() != 2 || u2.cols() != 2) throw std::invalid_argument("encoded_gate: u2 must be 2x2");
    if (u2.unitarity_error() > kUnitaryTol) throw std::invalid_argument("encoded_gate: u2 is not unitary");
    if (n < 2) throw std::invalid_argument("encoded_gate: need at least 2 modes");
    CMat block = CMat::identity(n);
    block(0, 0) = u2(0, 0);
    block(0, 1) = u2(0, 1);
    block(1, 0) = u2(1, 0);
    block(1, 1) = u2(1, 1);
    const ModeUnitary q = qft_matrix(n);
    return ModeUnitary::unchecked(q.mat() * block * q.mat().adjoint());
}

}  // namespace wherald
