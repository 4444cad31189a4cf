#pragma once

#include <cmath>
#include <stdexcept>

#include "wherald/linalg.hpp"

namespace wherald {

/// Amplitude pair (alpha, beta) of the dual-rail qubit.
/// Normalized on construction; inputs more than 1e-9 away from unit norm are rejected.
class LogicalQubit {
public:
    LogicalQubit(cplx alpha, cplx beta) : alpha_(alpha), beta_(beta) {
        const double n2 = std::norm(alpha) + std::norm(beta);
        if (std::abs(n2 - 1.0) > 1e-9)
            throw std::invalid_argument("LogicalQubit: amplitudes not normalized");
        if (std::abs(n2 - 1.0) > 1e-13) {  // renormalize, but keep exact inputs bit-stable
            const double inv = 1.0 / std::sqrt(n2);
            alpha_ *= inv;
            beta_ *= inv;
        }
    }

    /// alpha = cos(theta/2), beta = e^{i phi} sin(theta/2).
    static LogicalQubit from_bloch(double theta, double phi) {
        return LogicalQubit(std::cos(theta / 2.0),
                            std::polar(std::sin(theta / 2.0), phi));
    }

    cplx alpha() const { return alpha_; }
    cplx beta() const { return beta_; }

private:
    cplx alpha_, beta_;
};

}  // namespace wherald
