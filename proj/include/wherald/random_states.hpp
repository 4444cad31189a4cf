#pragma once

#include <cmath>

#include "wherald/linalg.hpp"
#include "wherald/qubit.hpp"
#include "wherald/rng.hpp"

namespace wherald {

inline cplx random_complex_gaussian(RngStream& rng) {
    return {rng.normal(), rng.normal()};
}

inline LogicalQubit random_qubit(RngStream& rng) {
    cplx a = random_complex_gaussian(rng);
    cplx b = random_complex_gaussian(rng);
    const double r = std::sqrt(std::norm(a) + std::norm(b));
    return LogicalQubit(a / r, b / r);
}

/// Haar-distributed 2x2 unitary (Gram-Schmidt of two Gaussian columns).
inline CMat random_unitary2(RngStream& rng) {
    cvec u{random_complex_gaussian(rng), random_complex_gaussian(rng)};
    cvec v{random_complex_gaussian(rng), random_complex_gaussian(rng)};
    double nu = std::sqrt(norm_sq(u));
    u[0] /= nu;
    u[1] /= nu;
    const cplx overlap = std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
    v[0] -= overlap * u[0];
    v[1] -= overlap * u[1];
    double nv = std::sqrt(norm_sq(v));
    v[0] /= nv;
    v[1] /= nv;
    CMat m(2, 2);
    m(0, 0) = u[0];
    m(1, 0) = u[1];
    m(0, 1) = v[0];
    m(1, 1) = v[1];
    return m;
}

}  // namespace wherald
