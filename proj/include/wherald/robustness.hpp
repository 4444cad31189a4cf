#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wherald/linalg.hpp"

namespace wherald {

/// Multi-qubit register state, pure vector or density matrix, capped at 10
/// qubits. Qubit i is bit i of the basis index (qubit 0 least significant).
/// This lives in the 2^n tensor space, deliberately disjoint from the
/// single-photon mode space of fock.hpp.
class QubitRegisterState {
public:
    static QubitRegisterState pure(std::size_t n_qubits, cvec amps) {
        check_qubits(n_qubits);
        if (amps.size() != (std::size_t{1} << n_qubits))
            throw std::invalid_argument("QubitRegisterState: amplitude length mismatch");
        if (std::abs(norm_sq(amps) - 1.0) > 1e-9)
            throw std::invalid_argument("QubitRegisterState: not normalized");
        QubitRegisterState s;
        s.n_qubits_ = n_qubits;
        s.amps_ = std::move(amps);
        s.is_pure_ = true;
        return s;
    }

    static QubitRegisterState mixed(std::size_t n_qubits, CMat rho) {
        check_qubits(n_qubits);
        const std::size_t d = std::size_t{1} << n_qubits;
        if (rho.rows() != d || rho.cols() != d)
            throw std::invalid_argument("QubitRegisterState: density dimension mismatch");
        if (rho.hermiticity_error() > 1e-9)
            throw std::invalid_argument("QubitRegisterState: density not Hermitian");
        if (std::abs(rho.trace().real() - 1.0) > 1e-9)
            throw std::invalid_argument("QubitRegisterState: density trace != 1");
        QubitRegisterState s;
        s.n_qubits_ = n_qubits;
        s.rho_ = std::move(rho);
        s.is_pure_ = false;
        return s;
    }

    std::size_t n_qubits() const { return n_qubits_; }
    bool is_pure() const { return is_pure_; }
    const cvec& amps() const {
        if (!is_pure_) throw std::logic_error("QubitRegisterState: no amplitude vector for mixed state");
        return amps_;
    }

    /// Density matrix form (outer product for pure states).
    CMat density() const { return is_pure_ ? CMat::outer(amps_, amps_) : rho_; }

private:
    static void check_qubits(std::size_t n) {
        if (n < 1 || n > 10) throw std::invalid_argument("QubitRegisterState: qubit count outside [1,10]");
    }

    std::size_t n_qubits_ = 0;
    cvec amps_;
    CMat rho_;
    bool is_pure_ = false;
};

/// (|0...0> + |1...1>) / sqrt(2)
inline QubitRegisterState ghz_state(std::size_t n) {
    if (n < 2) throw std::invalid_argument("ghz_state: need at least 2 qubits");
    cvec amps(std::size_t{1} << n);
    const double r = 1.0 / std::sqrt(2.0);
    amps.front() = r;
    amps.back() = r;
    return QubitRegisterState::pure(n, std::move(amps));
}

/// Equal superposition of the n single-excitation basis states.
inline QubitRegisterState w_state(std::size_t n) {
    if (n < 2) throw std::invalid_argument("w_state: need at least 2 qubits");
    cvec amps(std::size_t{1} << n);
    const double r = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) amps[std::size_t{1} << i] = r;
    return QubitRegisterState::pure(n, std::move(amps));
}

namespace detail {

// Insert bit v at position i of index a.
inline std::size_t insert_bit(std::size_t a, std::size_t i, std::size_t v) {
    const std::size_t low = a & ((std::size_t{1} << i) - 1);
    const std::size_t high = (a >> i) << (i + 1);
    return high | (v << i) | low;
}

}  // namespace detail

/// Trace out qubit i, returning the (n-1)-qubit reduced density matrix.
inline QubitRegisterState partial_trace(const QubitRegisterState& s, std::size_t traced) {
    const std::size_t n = s.n_qubits();
    if (traced >= n) throw std::invalid_argument("partial_trace: qubit index out of range");
    if (n < 2) throw std::invalid_argument("partial_trace: nothing left after tracing");
    const std::size_t dr = std::size_t{1} << (n - 1);
    CMat out(dr, dr);
    if (s.is_pure()) {
        const cvec& psi = s.amps();
        for (std::size_t a = 0; a < dr; ++a)
            for (std::size_t b = 0; b < dr; ++b)
                for (std::size_t v = 0; v < 2; ++v)
                    out(a, b) += psi[detail::insert_bit(a, traced, v)] *
                                 std::conj(psi[detail::insert_bit(b, traced, v)]);
    } else {
        const CMat rho = s.density();
        for (std::size_t a = 0; a < dr; ++a)
            for (std::size_t b = 0; b < dr; ++b)
                for (std::size_t v = 0; v < 2; ++v)
                    out(a, b) += rho(detail::insert_bit(a, traced, v), detail::insert_bit(b, traced, v));
    }
    return QubitRegisterState::mixed(n - 1, std::move(out));
}

/// Max entrywise deviation, over every traced index, of
/// tr_i |GHZ_n><GHZ_n| from (|0..0><0..0| + |1..1><1..1|) / 2.
inline double ghz_partial_trace_error(std::size_t n) {
    const QubitRegisterState ghz = ghz_state(n);
    const std::size_t dr = std::size_t{1} << (n - 1);
    CMat expected(dr, dr);
    expected(0, 0) = 0.5;
    expected(dr - 1, dr - 1) = 0.5;
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        err = std::max(err, partial_trace(ghz, i).density().max_abs_diff(expected));
    return err;
}

/// Max entrywise deviation, over every traced index, of
/// tr_i |W_n><W_n| from ((n-1)/n)|W_{n-1}><W_{n-1}| + (1/n)|0..0><0..0|.
inline double w_partial_trace_error(std::size_t n) {
    const QubitRegisterState w = w_state(n);
    const double frac = static_cast<double>(n - 1) / static_cast<double>(n);
    CMat expected = w_state(n - 1).density();
    expected *= cplx{frac, 0.0};
    expected(0, 0) += 1.0 - frac;
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        err = std::max(err, partial_trace(w, i).density().max_abs_diff(expected));
    return err;
}

QubitRegisterState permute_qubits(const QubitRegisterState&, const std::vector<std::size_t>&);

/// Max amplitude change of |W_n> under any transposition of two qubits.
inline double w_permutation_error(std::size_t n) {
    const QubitRegisterState w = w_state(n);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<std::size_t> perm(n);
            for (std::size_t q = 0; q < n; ++q) perm[q] = q;
            std::swap(perm[i], perm[j]);
            const QubitRegisterState swapped = permute_qubits(w, perm);
            for (std::size_t k = 0; k < swapped.amps().size(); ++k)
                err = std::max(err, std::abs(swapped.amps()[k] - w.amps()[k]));
        }
    return err;
}

/// Relabel qubits: qubit q of the input becomes qubit perm[q] of the output.
inline QubitRegisterState permute_qubits(const QubitRegisterState& s,
                                         const std::vector<std::size_t>& perm) {
    const std::size_t n = s.n_qubits();
    if (perm.size() != n) throw std::invalid_argument("permute_qubits: permutation length mismatch");
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm) {
        if (p >= n || seen[p]) throw std::invalid_argument("permute_qubits: not a permutation");
        seen[p] = true;
    }
    auto map_index = [&](std::size_t idx) {
        std::size_t out = 0;
        for (std::size_t q = 0; q < n; ++q)
            if ((idx >> q) & 1) out |= std::size_t{1} << perm[q];
        return out;
    };
    if (s.is_pure()) {
        cvec amps(s.amps().size());
        for (std::size_t i = 0; i < amps.size(); ++i) amps[map_index(i)] = s.amps()[i];
        return QubitRegisterState::pure(n, std::move(amps));
    }
    const CMat rho = s.density();
    CMat out(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < rho.rows(); ++i)
        for (std::size_t j = 0; j < rho.cols(); ++j)
            out(map_index(i), map_index(j)) = rho(i, j);
    return QubitRegisterState::mixed(n, std::move(out));
}

}  // namespace wherald
