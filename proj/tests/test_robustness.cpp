#include <catch2/catch_amalgamated.hpp>

#include "wherald/robustness.hpp"

using namespace wherald;
using Catch::Approx;

TEST_CASE("ghz_state and w_state amplitudes", "[robustness]") {
    const double r2 = 1.0 / std::sqrt(2.0);
    const auto ghz2 = ghz_state(2);
    REQUIRE(std::abs(ghz2.amps()[0] - cplx{r2, 0.0}) < 1e-15);  // |00>
    REQUIRE(std::abs(ghz2.amps()[3] - cplx{r2, 0.0}) < 1e-15);  // |11>
    REQUIRE(std::abs(ghz2.amps()[1]) == 0.0);
    REQUIRE(std::abs(ghz2.amps()[2]) == 0.0);

    const auto w2 = w_state(2);
    REQUIRE(std::abs(w2.amps()[1] - cplx{r2, 0.0}) < 1e-15);  // |01> (qubit 0 excited)
    REQUIRE(std::abs(w2.amps()[2] - cplx{r2, 0.0}) < 1e-15);  // |10>
    REQUIRE(std::abs(w2.amps()[0]) == 0.0);
    REQUIRE(std::abs(w2.amps()[3]) == 0.0);

    const auto w3 = w_state(3);
    const double r3 = 1.0 / std::sqrt(3.0);
    for (std::size_t idx : {1u, 2u, 4u}) REQUIRE(std::abs(w3.amps()[idx] - cplx{r3, 0.0}) < 1e-15);
    for (std::size_t idx : {0u, 3u, 5u, 6u, 7u}) REQUIRE(std::abs(w3.amps()[idx]) == 0.0);
}

TEST_CASE("GHZ partial trace leaves the classical mixture", "[robustness]") {
    // n=4: equal mixture of |000><000| and |111><111|, any traced index
    const auto ghz = ghz_state(4);
    for (std::size_t i = 0; i < 4; ++i) {
        const CMat rho = partial_trace(ghz, i).density();
        CMat expected(8, 8);
        expected(0, 0) = 0.5;
        expected(7, 7) = 0.5;
        REQUIRE(rho.max_abs_diff(expected) < 1e-12);
    }
    REQUIRE(ghz_partial_trace_error(8) < 1e-12);
}

TEST_CASE("W partial trace reduces the encoding level", "[robustness]") {
    // n=3: (2/3)|W_2><W_2| + (1/3)|00><00|, built by hand
    const auto w3 = w_state(3);
    CMat expected(4, 4);
    expected(0, 0) = 1.0 / 3.0;
    expected(1, 1) = 1.0 / 3.0;
    expected(2, 2) = 1.0 / 3.0;
    expected(1, 2) = 1.0 / 3.0;
    expected(2, 1) = 1.0 / 3.0;
    for (std::size_t i = 0; i < 3; ++i)
        REQUIRE(partial_trace(w3, i).density().max_abs_diff(expected) < 1e-12);
    REQUIRE(w_partial_trace_error(8) < 1e-12);
}

TEST_CASE("identities hold for every qubit count up to 8", "[robustness][property]") {
    for (std::size_t n = 2; n <= 8; ++n) {
        REQUIRE(ghz_partial_trace_error(n) < 1e-12);
        REQUIRE(w_permutation_error(n) < 1e-12);
        if (n >= 3) REQUIRE(w_partial_trace_error(n) < 1e-12);
    }
}

TEST_CASE("tracing a product state leaves the other factor", "[robustness]") {
    // qubit 0 in |0>, qubit 1 in |+>
    const double r = 1.0 / std::sqrt(2.0);
    cvec amps(4);
    amps[0] = r;  // |00>
    amps[2] = r;  // |10>: qubit 1 excited
    const auto product = QubitRegisterState::pure(2, std::move(amps));
    const CMat reduced = partial_trace(product, 0).density();
    CMat plus(2, 2);
    plus(0, 0) = 0.5;
    plus(0, 1) = 0.5;
    plus(1, 0) = 0.5;
    plus(1, 1) = 0.5;
    REQUIRE(reduced.max_abs_diff(plus) < 1e-12);
}

TEST_CASE("partial trace composes on mixed states", "[robustness]") {
    // tracing W_4 twice: (3/4)[(2/3)W_2 + (1/3)|00>] + (1/4)|00> = (1/2)W_2 + (1/2)|00>
    const auto once = partial_trace(w_state(4), 2);
    REQUIRE_FALSE(once.is_pure());
    const CMat twice = partial_trace(once, 0).density();
    CMat expected = w_state(2).density();
    expected *= cplx{0.5, 0.0};
    expected(0, 0) += 0.5;
    REQUIRE(twice.max_abs_diff(expected) < 1e-12);
}

TEST_CASE("validation and errors", "[robustness]") {
    REQUIRE_THROWS_AS(partial_trace(w_state(3), 3), std::invalid_argument);
    REQUIRE_THROWS_AS(w_state(1), std::invalid_argument);
    REQUIRE_THROWS_AS(ghz_state(11), std::invalid_argument);
    REQUIRE_THROWS_AS(QubitRegisterState::pure(2, cvec(4)), std::invalid_argument);
    REQUIRE_THROWS_AS(permute_qubits(w_state(3), {0, 0, 1}), std::invalid_argument);
    REQUIRE_THROWS_AS(QubitRegisterState::mixed(1, CMat::identity(2)).amps(), std::logic_error);
}
