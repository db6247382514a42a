#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "paqs/analytic.hpp"
#include "paqs/fock.hpp"
#include "paqs/witness.hpp"

using namespace paqs;
using analytic::SacsParams;
using analytic::SatsParams;

TEST_CASE("sacs <a^m>") {
    CHECK(analytic::sacs_moment_a(SacsParams{0.0}, 1) == 0.0);        // |1> has <a> = 0
    CHECK(analytic::sacs_moment_a(SacsParams{1.7}, 0) == doctest::Approx(1.0)); // normalization
    CHECK(analytic::sacs_moment_a(SacsParams{1.0}, 1) == doctest::Approx(1.5));
}

TEST_CASE("sacs <a^dag^m a^m>") {
    CHECK(analytic::sacs_moment_nm(SacsParams{0.0}, 1) == doctest::Approx(1.0));
    CHECK(analytic::sacs_moment_nm(SacsParams{0.0}, 2) == 0.0);
    CHECK(analytic::sacs_moment_nm(SacsParams{1.0}, 1) == doctest::Approx(2.5));
}

TEST_CASE("sacs closed forms match the Fock oracle") {
    for (double alpha : {0.3, 1.0, 2.1, 3.4}) {
        const auto rho = fock::photon_add(fock::density_from(
            fock::coherent_state(alpha, fock::TruncationPolicy::for_coherent(alpha))));
        const SacsParams p{alpha};
        for (int m = 1; m <= 5; ++m) {
            CHECK(analytic::sacs_moment_a(p, m) ==
                  doctest::Approx(fock::normal_moment(rho, 0, m).real()).epsilon(1e-10));
            CHECK(analytic::sacs_moment_nm(p, m) ==
                  doctest::Approx(fock::normal_moment(rho, m, m).real()).epsilon(1e-10));
        }
    }
}

TEST_CASE("sacs q1 combination sign structure") {
    for (int m = 1; m <= 5; ++m) {
        CHECK(analytic::sacs_q1_combination(SacsParams{1.0}, m) == 0.0);
        CHECK(analytic::sacs_q1_combination(SacsParams{0.5}, m) > 0.0);
        CHECK(analytic::sacs_q1_combination(SacsParams{2.0}, m) < 0.0);
    }
    CHECK(analytic::sacs_q1_combination(SacsParams{2.0}, 1) == doctest::Approx(-0.12));
    // the full witness is twice the combination over the commutator
    const auto ms = analytic::sacs_moment_set(SacsParams{2.0}, 1);
    CHECK(witness::q1_opt(ms).value ==
          doctest::Approx(2.0 * analytic::sacs_q1_combination(SacsParams{2.0}, 1) /
                          (ms.anti_m - ms.n_m))
              .epsilon(1e-12));
}

TEST_CASE("sacs q2") {
    CHECK(analytic::sacs_q2(SacsParams{1.0}, 1) == doctest::Approx(-0.2).epsilon(1e-14));
    CHECK(analytic::sacs_q2(SacsParams{1.5}, 3) < 0.0);
    // coherent limit: the witness tends to zero from below
    CHECK(analytic::sacs_q2(SacsParams{50.0}, 1) < 0.0);
    CHECK(analytic::sacs_q2(SacsParams{50.0}, 1) > -1e-3);
    CHECK(analytic::sacs_q2(SacsParams{0.0}, 1) == doctest::Approx(-1.0)); // the |1> state
    CHECK_THROWS_AS(analytic::sacs_q2(SacsParams{0.0}, 2), DomainError);
    // negative for every alpha and order on a grid
    for (int k = 1; k <= 60; ++k)
        for (int m = 1; m <= 5; ++m)
            CHECK(analytic::sacs_q2(SacsParams{k / 10.0}, m) < 0.0);
}

TEST_CASE("sats moments") {
    CHECK(analytic::sats_moment_nm(SatsParams{0.7}, 0) == 1.0);
    // nbar -> 0 tends to the single photon
    CHECK(analytic::sats_moment_nm(SatsParams{1e-9}, 1) == doctest::Approx(1.0).epsilon(1e-6));
    // exact values from the number-basis oracle
    CHECK(analytic::sats_moment_nm(SatsParams{1.0}, 1) == doctest::Approx(3.0));
    CHECK(analytic::sats_moment_nm(SatsParams{0.5}, 1) == doctest::Approx(2.0));
    for (double nbar : {0.2, 0.9, 2.3}) {
        const auto rho =
            fock::photon_add(fock::thermal_state(nbar, fock::TruncationPolicy::for_thermal(nbar)));
        for (int m = 1; m <= 5; ++m)
            CHECK(analytic::sats_moment_nm(SatsParams{nbar}, m) ==
                  doctest::Approx(fock::normal_moment(rho, m, m).real()).epsilon(1e-10));
    }
}

TEST_CASE("sats q2 and the threshold") {
    // single-photon limit
    CHECK(analytic::sats_q2(SatsParams{1e-9}, 1) == doctest::Approx(-1.0).epsilon(1e-6));
    // oracle value at nbar = 0.5: <a^dag a> = 2, <a^dag^2 a^2> = 3.5
    CHECK(analytic::sats_q2(SatsParams{0.5}, 1) == doctest::Approx(-0.125).epsilon(1e-14));

    const auto t1 = analytic::sats_threshold(1);
    CHECK(t1.c_m == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
    CHECK(t1.nbar_max == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    double prev = 0.0;
    for (int m = 1; m <= 5; ++m) {
        const auto t = analytic::sats_threshold(m);
        CHECK(t.c_m > prev);
        prev = t.c_m;
        // sats_q2 straddles zero at x = C_m
        const double x_lo = t.c_m * (1.0 - 1e-6), x_hi = t.c_m * (1.0 + 1e-6);
        CHECK(analytic::sats_q2(SatsParams{1.0 / (x_lo - 1.0)}, m) > 0.0);
        CHECK(analytic::sats_q2(SatsParams{1.0 / (x_hi - 1.0)}, m) < 0.0);
    }
}

TEST_CASE("sats phase symmetry in the oracle") {
    const auto rho =
        fock::photon_add(fock::thermal_state(0.9, fock::TruncationPolicy::for_thermal(0.9)));
    for (int m = 1; m <= 4; ++m) CHECK(std::abs(fock::normal_moment(rho, 0, m)) < 1e-10);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(analytic::sacs_moment_a(SacsParams{-0.5}, 1), InvalidParameter);
    CHECK_THROWS_AS(analytic::sats_moment_nm(SatsParams{0.0}, 1), InvalidParameter);
    CHECK_THROWS_AS(analytic::sats_q2(SatsParams{1.0}, 9), OrderTooLarge);
}
