#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <vector>

#include "support/oracles.hpp"
#include "wherald/channels.hpp"
#include "wherald/encoding.hpp"
#include "wherald/noise.hpp"
#include "wherald/random_states.hpp"

using namespace wherald;
using Catch::Approx;

namespace {

// Empirical average of |kick(w, theta)><kick(w, theta)| over m samples.
CMat empirical_channel(const PurePhotonState& w, const PhaseDistribution& dist, std::size_t m,
                       RngStream& rng) {
    const std::size_t n = w.dim();
    std::vector<KahanSum> re(n * n), im(n * n);
    for (std::size_t s = 0; s < m; ++s) {
        const auto theta = sample_phase_vector(dist, n, rng);
        const auto kicked = apply_phase_kick(w, theta);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const cplx e = kicked.amp(i) * std::conj(kicked.amp(j));
                re[i * n + j].add(e.real());
                im[i * n + j].add(e.imag());
            }
    }
    CMat avg(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            avg(i, j) = cplx{re[i * n + j].value(), im[i * n + j].value()} / double(m);
    return avg;
}

}  // namespace

TEST_CASE("apply_phase_kick basics", "[channels]") {
    RngStream rng(41, 0);
    const auto w = encode(random_qubit(rng), 4);

    const std::vector<double> zero(4, 0.0);
    const auto same = apply_phase_kick(w, zero);
    for (std::size_t j = 0; j < 4; ++j) REQUIRE(same.amp(j) == w.amp(j));

    // a constant phase vector is a global phase: all fidelities unchanged
    const std::vector<double> constant(4, 1.234);
    const auto shifted = apply_phase_kick(w, constant);
    REQUIRE(fidelity_with_pure(w, SectoredDensity::from_pure(shifted)) == Approx(1.0).margin(1e-12));
    for (std::size_t j = 0; j < 4; ++j)
        REQUIRE(std::abs(shifted.amp(j) - std::polar(1.0, 1.234) * w.amp(j)) < 1e-15);

    const std::vector<double> wrong_len(3, 0.0);
    REQUIRE_THROWS_AS(apply_phase_kick(w, wrong_len), std::invalid_argument);
}

TEST_CASE("phase kick at N=2 in the encoded basis", "[channels]") {
    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<double> pi_kick{0.0, std::numbers::pi};

    // encoded |0>_L is the uniform vector; a (0, pi) kick turns it into |W_1>,
    // which decodes to |1>_L: fidelity with the input drops to 0
    const auto kicked0 = decode(apply_phase_kick(encode(LogicalQubit(1.0, 0.0), 2), pi_kick));
    REQUIRE(std::abs(kicked0.amp(0)) < 1e-12);
    REQUIRE(std::abs(std::abs(kicked0.amp(1)) - 1.0) < 1e-12);

    // encoded |+> occupies only mode 0, so any kick is a global phase on it
    const auto kicked_plus = decode(apply_phase_kick(encode(LogicalQubit(r, r), 2), pi_kick));
    const double fid = std::norm(r * kicked_plus.amp(0) + r * kicked_plus.amp(1));
    REQUIRE(fid == Approx(1.0).margin(1e-12));
}

TEST_CASE("averaged_channel scales off-diagonals by lambda", "[channels]") {
    RngStream rng(42, 0);
    const auto w = encode(random_qubit(rng), 5);
    const CMat pure = CMat::outer(w.amps(), w.amps());

    const auto full = averaged_channel(w, 1.0);
    REQUIRE(full.rho1().max_abs_diff(pure) == 0.0);
    REQUIRE(full.vac_prob() == 0.0);

    const auto dead = averaged_channel(w, 0.0);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            if (i == j)
                REQUIRE(dead.rho1()(i, i) == pure(i, i));
            else
                REQUIRE(std::abs(dead.rho1()(i, j)) == 0.0);
        }

    const auto partial = averaged_channel(w, 0.4);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            if (i != j) REQUIRE(partial.rho1()(i, j) == pure(i, j) * 0.4);

    REQUIRE_THROWS_AS(averaged_channel(w, -0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(averaged_channel(w, 1.1), std::invalid_argument);
}

TEST_CASE("gaussian_averaged_channel delegates with lambda = e^{-delta^2}", "[channels]") {
    RngStream rng(43, 0);
    const auto w = encode(random_qubit(rng), 4);
    const CMat pure = CMat::outer(w.amps(), w.amps());

    REQUIRE(gaussian_averaged_channel(w, 0.0).rho1().max_abs_diff(pure) == 0.0);

    const auto strong = gaussian_averaged_channel(w, 8.0);  // e^{-64}: numerically diagonal
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) REQUIRE(std::abs(strong.rho1()(i, j)) < 1e-14);

    const auto one = gaussian_averaged_channel(w, 1.0);
    REQUIRE(one.rho1()(0, 1) == pure(0, 1) * std::exp(-1.0));
}

TEST_CASE("sample averaging converges to the analytic channel", "[channels][property]") {
    const std::size_t m = 100000;
    const double bound = 5.0 / std::sqrt(double(m));
    RngStream rng(44, 0);
    const auto w = encode(random_qubit(rng), 6);

    std::vector<std::shared_ptr<const PhaseDistribution>> catalogue{
        std::make_shared<GaussianPhase>(0.0, 0.5), std::make_shared<TwoPointPhase>(0.0, 1.9, 0.4),
        std::make_shared<UniformPhase>(0.3, 1.2)};
    std::uint64_t stream = 1;
    for (const auto& dist : catalogue) {
        RngStream draws(44, stream++);
        const CMat avg = empirical_channel(w, *dist, m, draws);
        const auto analytic = averaged_channel(w, lambda_of(*dist).lambda);
        REQUIRE(avg.max_abs_diff(analytic.rho1()) < bound);
    }
}

TEST_CASE("families with equal lambda give the same averaged channel", "[channels][property]") {
    const double lambda = std::exp(-0.25);
    const GaussianPhase gauss(0.0, 0.5);
    const UniformPhase uniform(0.0, oracles::uniform_half_width_for_lambda(lambda));
    REQUIRE(lambda_of(gauss).lambda == Approx(lambda).margin(1e-14));
    REQUIRE(lambda_of(uniform).lambda == Approx(lambda).margin(1e-12));

    RngStream rng(45, 0);
    const auto w = encode(random_qubit(rng), 5);

    // analytic path: equal lambda means equal channels
    const auto via_gauss = averaged_channel(w, lambda_of(gauss).lambda);
    const auto via_uniform = averaged_channel(w, lambda_of(uniform).lambda);
    REQUIRE(via_gauss.rho1().max_abs_diff(via_uniform.rho1()) < 1e-12);

    // sampled path: both empirical averages sit on the same channel
    const std::size_t m = 100000;
    const double bound = 5.0 / std::sqrt(double(m));
    RngStream sg(45, 1), su(45, 2);
    REQUIRE(empirical_channel(w, gauss, m, sg).max_abs_diff(via_gauss.rho1()) < bound);
    REQUIRE(empirical_channel(w, uniform, m, su).max_abs_diff(via_gauss.rho1()) < bound);
}

TEST_CASE("averaged channel preserves trace and positivity", "[channels][property]") {
    RngStream rng(46, 0);
    for (double lambda : {0.0, 0.3, 1.0}) {
        const auto w = encode(random_qubit(rng), 7);
        const auto rho = averaged_channel(w, lambda);
        REQUIRE(rho.vac_prob() + rho.rho1().trace().real() == Approx(1.0).margin(1e-12));
        REQUIRE(oracles::min_eigenvalue(rho.rho1()) > -1e-10);
    }
}
