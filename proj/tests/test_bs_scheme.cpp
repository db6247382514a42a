#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "paqs/analytic.hpp"
#include "paqs/bs_scheme.hpp"
#include "paqs/detail/numeric.hpp"
#include "paqs/fock.hpp"
#include "paqs/witness.hpp"

using namespace paqs;
using bs::CoherentParams;
using bs::ThermalParams;

TEST_CASE("coefficients reduce correctly") {
    SUBCASE("ideal source and detector give a pure SACS structure") {
        const auto k = bs::coeffs(CoherentParams{1.3, 0.4, 1.0, 1.0});
        CHECK(k.s == doctest::Approx(0.4));
        CHECK(k.f == 0.0);
        CHECK(k.c == 0.0);
        const double t = 0.6, a2 = 1.3 * 1.3;
        CHECK(k.norm == doctest::Approx(0.4 * (1.0 + t * a2)).epsilon(1e-12));
        CHECK(k.beta_amp == doctest::Approx(1.3 * std::sqrt(t)).epsilon(1e-15));
    }
    SUBCASE("no photon to add leaves the attenuated coherent state") {
        const auto k = bs::coeffs(CoherentParams{1.3, 0.4, 0.8, 0.0});
        CHECK(k.s == 0.0);
        CHECK(k.c == 0.0);
        CHECK(k.f == doctest::Approx(1.0));
        CHECK(k.norm == doctest::Approx(1.0));
        for (int m = 1; m <= 4; ++m)
            CHECK(bs::moment_a(CoherentParams{1.3, 0.4, 0.8, 0.0}, m) ==
                  doctest::Approx(std::pow(k.beta_amp, m)).epsilon(1e-12));
    }
}

TEST_CASE("non-detection probability") {
    CHECK(bs::pnd_coherent(CoherentParams{2.0, 0.3, 0.0, 0.6}) == doctest::Approx(1.0));
    CHECK(bs::pnd_coherent(CoherentParams{1.0, 0.5, 1.0, 1.0}) ==
          doctest::Approx(0.75 * std::exp(-0.5)).epsilon(1e-14));
    // reported working point of the squeezing-type witness
    CHECK(bs::pnd_coherent(CoherentParams{5.0, 0.5, 0.6, 0.7}) ==
          doctest::Approx(1.3e-3).epsilon(0.01));
}

TEST_CASE("closed-form moments reduce to the pure SACS at beta") {
    const CoherentParams p{2.0, 0.36, 1.0, 1.0};
    const analytic::SacsParams pure{2.0 * std::sqrt(0.64)};
    for (int m = 1; m <= 5; ++m) {
        CHECK(bs::moment_a(p, m) ==
              doctest::Approx(analytic::sacs_moment_a(pure, m)).epsilon(1e-12));
        CHECK(bs::moment_nm(p, m) ==
              doctest::Approx(analytic::sacs_moment_nm(pure, m)).epsilon(1e-12));
    }
}

TEST_CASE("closed-form moments match the two-mode pipeline") {
    const CoherentParams p{2.0, 0.3, 0.6, 0.7};
    const auto rho_in = fock::density_from(
        fock::coherent_state(p.alpha, fock::TruncationPolicy::for_coherent(p.alpha)));
    const auto [cond, p_nd] = fock::heralded_photon_add(rho_in, p.theta(), p.eta, p.p_s);
    CHECK(bs::pnd_coherent(p) == doctest::Approx(p_nd).epsilon(1e-9));
    for (int m = 1; m <= 4; ++m) {
        CHECK(bs::moment_a(p, m) ==
              doctest::Approx(fock::normal_moment(cond, 0, m).real()).epsilon(1e-9));
        CHECK(bs::moment_nm(p, m) ==
              doctest::Approx(fock::normal_moment(cond, m, m).real()).epsilon(1e-9));
    }
}

TEST_CASE("reported witness working points") {
    SUBCASE("squeezing-type witness at alpha = 5, R = 0.5, eta = 0.6, ps = 0.7") {
        const std::array<int, 3> orders{1, 2, 3};
        const auto rows = bs::witnesses_coherent(CoherentParams{5.0, 0.5, 0.6, 0.7}, orders);
        CHECK(rows[0].q1.value == doctest::Approx(-0.098).epsilon(0.02));
        CHECK(rows[1].q1.value == doctest::Approx(-0.080).epsilon(0.02));
        CHECK(rows[2].q1.value == doctest::Approx(-0.062).epsilon(0.02));
        CHECK(rows[0].p_nd == doctest::Approx(1.3e-3).epsilon(0.01));
    }
    SUBCASE("coincidence-type witness at alpha = 1.5, R = 0.8, eta = 0.3, ps = 0.3") {
        const std::array<int, 4> orders{2, 3, 4, 5};
        const auto rows = bs::witnesses_coherent(CoherentParams{1.5, 0.8, 0.3, 0.3}, orders);
        const double expect[4] = {-0.14, -0.46, -0.65, -0.76};
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(rows[i].q2.value - expect[i]) < 0.01);
        CHECK(rows[0].p_nd == doctest::Approx(0.58).epsilon(0.02));
    }
    SUBCASE("classical output when the source is pure vacuum") {
        const std::array<int, 3> orders{1, 2, 3};
        const auto rows = bs::witnesses_coherent(CoherentParams{1.7, 0.4, 0.8, 0.0}, orders);
        for (const auto& row : rows) {
            CHECK(std::abs(row.q1.value) < 1e-12);
            CHECK(std::abs(row.q2.value) < 1e-12);
        }
    }
}

TEST_CASE("thermal coincidence rates") {
    SUBCASE("D_0 equals the pipeline no-click probability") {
        const ThermalParams p{1.0, 0.5, 0.6, 0.7};
        const auto rho_in =
            fock::thermal_state(p.nbar, fock::TruncationPolicy::for_thermal(p.nbar));
        const auto [cond, p_nd] = fock::heralded_photon_add(rho_in, p.theta(), p.eta, p.p_s);
        CHECK(bs::thermal_dm(p, 0) == doctest::Approx(p_nd).epsilon(1e-9));
        for (int m = 1; m <= 4; ++m)
            CHECK(bs::thermal_dm(p, m) / bs::thermal_dm(p, 0) ==
                  doctest::Approx(fock::normal_moment(cond, m, m).real()).epsilon(1e-9));
    }
    SUBCASE("blind detector: no-click is certain") {
        const ThermalParams p{0.8, 0.4, 0.0, 0.6};
        CHECK(bs::thermal_dm(p, 0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("the T = 0, m = 0 prefactor is singular") {
        CHECK_THROWS_AS(bs::thermal_dm(ThermalParams{1.0, 1.0, 0.6, 0.7}, 0),
                        DegenerateGeometry);
    }
}

TEST_CASE("thermal witnesses") {
    SUBCASE("vacuum source leaves super-Poissonian thermal statistics") {
        const std::array<int, 2> orders{1, 2};
        const auto rows = bs::witnesses_thermal(ThermalParams{0.9, 0.4, 0.7, 0.0}, orders);
        for (const auto& row : rows) {
            const double thermal_value =
                double(detail::factorial_u64(2 * row.m)) /
                    (double(detail::factorial_u64(row.m)) * double(detail::factorial_u64(row.m))) -
                1.0;
            CHECK(row.q2.value == doctest::Approx(thermal_value).epsilon(1e-9));
        }
    }
    SUBCASE("transmissive limit approaches the pure SATS at the same nbar") {
        // R -> 0 keeps the full thermal state in the signal arm
        for (double nbar : {0.3, 0.5, 1.0}) {
            const std::array<int, 1> orders{1};
            const auto rows = bs::witnesses_thermal(ThermalParams{nbar, 0.001, 1.0, 1.0}, orders);
            CHECK(std::abs(rows[0].q2.value -
                           analytic::sats_q2(analytic::SatsParams{nbar}, 1)) < 2e-3);
        }
    }
    SUBCASE("fully reflecting geometry falls back to the pipeline for P_nd") {
        const std::array<int, 2> orders{1, 2};
        const auto rows = bs::witnesses_thermal(ThermalParams{0.8, 1.0, 0.6, 0.7}, orders);
        // the conditional state is the bare source: q2(m=1) = -1, m = 2 undefined
        CHECK(rows[0].q2.value == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(!rows[1].q2.defined);
        // P_nd for an untouched thermal state on the detector: 1/(1 + eta nbar)
        CHECK(rows[0].p_nd == doctest::Approx(1.0 / (1.0 + 0.6 * 0.8)).epsilon(1e-9));
    }
    SUBCASE("negative region exists at the nonideal working point") {
        const std::array<int, 1> orders{1};
        const auto rows = bs::witnesses_thermal(ThermalParams{0.5, 0.7, 0.6, 0.7}, orders);
        CHECK(rows[0].q2.value < 0.0);
    }
}

TEST_CASE("conditional density") {
    SUBCASE("ideal case is the pure SACS at beta") {
        const CoherentParams p{1.2, 0.5, 1.0, 1.0};
        const auto policy = fock::TruncationPolicy::for_coherent(1.2);
        const auto [rho, p_nd] = bs::conditional_density(p, policy);
        CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
        const auto target = fock::photon_add(fock::density_from(
            fock::coherent_state(1.2 * std::sqrt(0.5), policy)));
        CHECK(fock::fidelity(rho, target) > 1.0 - 1e-10);
    }
    SUBCASE("matches the two-mode pipeline away from the ideal point") {
        const CoherentParams p{1.5, 0.4, 0.6, 0.7};
        const auto policy = fock::TruncationPolicy::for_coherent(1.5);
        const auto [rho, p_nd] = bs::conditional_density(p, policy);
        const auto rho_in = fock::density_from(fock::coherent_state(1.5, policy));
        const auto [cond, p_pipe] = fock::heralded_photon_add(rho_in, p.theta(), p.eta, p.p_s);
        CHECK(p_nd == doctest::Approx(p_pipe).epsilon(1e-9));
        // embed the closed-form state in the pipeline's one-larger basis
        fock::CMatrix padded = fock::CMatrix::Zero(cond.dim(), cond.dim());
        padded.topLeftCorner(rho.dim(), rho.dim()) = rho.matrix();
        const fock::FockDensity embedded(padded,
                                         fock::TruncationPolicy{cond.dim(), policy.tail_tol});
        CHECK(fock::fidelity(embedded, cond) > 1.0 - 1e-9);
    }
}

TEST_CASE("P_nd monotonicity in reflectance") {
    // large amplitude: more photons reach the detector with higher R
    for (auto [eta, ps] : {std::pair{1.0, 1.0}, std::pair{0.6, 0.7}}) {
        double prev = bs::pnd_coherent(CoherentParams{4.0, 0.2, eta, ps});
        for (double r = 0.3; r < 0.95; r += 0.1) {
            const double cur = bs::pnd_coherent(CoherentParams{4.0, r, eta, ps});
            CHECK(cur < prev);
            prev = cur;
        }
    }
    // small amplitude against a brighter source: the trend flips
    for (auto [eta, ps] : {std::pair{1.0, 1.0}, std::pair{0.6, 0.7}}) {
        double prev = bs::pnd_coherent(CoherentParams{0.3, 0.2, eta, ps});
        for (double r = 0.3; r < 0.95; r += 0.1) {
            const double cur = bs::pnd_coherent(CoherentParams{0.3, r, eta, ps});
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(bs::coeffs(CoherentParams{1.0, 1.5, 0.5, 0.5}), InvalidParameter);
    CHECK_THROWS_AS(bs::coeffs(CoherentParams{-1.0, 0.5, 0.5, 0.5}), InvalidParameter);
    CHECK_THROWS_AS(bs::thermal_dm(ThermalParams{0.0, 0.5, 0.5, 0.5}, 1), InvalidParameter);
    const std::array<int, 1> bad{9};
    CHECK_THROWS_AS(bs::witnesses_coherent(CoherentParams{1.0, 0.5, 0.5, 0.5}, bad),
                    OrderTooLarge);
}
