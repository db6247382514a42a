#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "paqs/fock.hpp"
#include "paqs/verify.hpp"

using namespace paqs;
using fock::TruncationPolicy;

namespace {

fock::FockDensity random_state(int dim, std::mt19937_64& eng) {
    const Eigen::VectorXcd psi = verify::random_pure_state(dim, eng);
    return {psi * psi.adjoint(), TruncationPolicy{dim, 0.999}};
}

} // namespace

TEST_CASE("coherent state basics") {
    const TruncationPolicy p32{32, 1e-12};
    const auto vac = fock::coherent_state(0.0, p32);
    CHECK(std::abs(vac.amplitudes()(0) - 1.0) < 1e-15);
    for (int n = 1; n < 32; ++n) CHECK(std::abs(vac.amplitudes()(n)) == 0.0);

    const auto c1 = fock::coherent_state(1.0, p32);
    // amplitude at n = 2 is e^(-1/2)/sqrt(2) up to the overall renormalization
    CHECK(std::abs(c1.amplitudes()(2).real() - std::exp(-0.5) / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(c1.amplitudes().squaredNorm() - 1.0) < 1e-14);

    const auto c5 = fock::coherent_state(5.0, TruncationPolicy::for_coherent(5.0));
    CHECK(fock::mean_photon(fock::density_from(c5)) == doctest::Approx(25.0).epsilon(1e-9));

    CHECK_THROWS_AS(fock::coherent_state(5.0, TruncationPolicy{16, 1e-12}), TruncationOverflow);
}

TEST_CASE("complex coherent amplitude") {
    const std::complex<double> alpha{0.8, -0.6};
    const auto rho = fock::density_from(
        fock::coherent_state(alpha, TruncationPolicy::for_coherent(std::abs(alpha))));
    const auto a1 = fock::normal_moment(rho, 0, 1);
    CHECK(std::abs(a1 - alpha) < 1e-12);
    CHECK(fock::mean_photon(rho) == doctest::Approx(std::norm(alpha)).epsilon(1e-10));
}

TEST_CASE("thermal state basics") {
    const auto vac = fock::thermal_state(0.0, TruncationPolicy{32, 1e-12});
    CHECK(std::abs(vac.matrix()(0, 0).real() - 1.0) < 1e-15);

    const auto th = fock::thermal_state(1.0, TruncationPolicy{64, 1e-12});
    CHECK(fock::mean_photon(th) == doctest::Approx(1.0).epsilon(1e-10));
    // <a^dag^2 a^2> = m! nbar^m = 2 at nbar = 1, m = 2
    CHECK(fock::normal_moment(th, 2, 2).real() == doctest::Approx(2.0).epsilon(1e-9));

    CHECK_THROWS_AS(fock::thermal_state(5.0, TruncationPolicy{32, 1e-12}), TruncationOverflow);
}

TEST_CASE("photon addition") {
    const TruncationPolicy p32{32, 1e-12};
    const auto one = fock::photon_add(fock::density_from(fock::number_state(0, p32)));
    CHECK(std::abs(one.matrix()(1, 1).real() - 1.0) < 1e-14);

    // SACS moments: <a^m> = alpha^m (m+1+alpha^2)/(1+alpha^2) and the
    // matching <a^dag^m a^m> ladder
    const double alpha = 2.0;
    const auto sacs = fock::photon_add(
        fock::density_from(fock::coherent_state(alpha, TruncationPolicy::for_coherent(alpha))));
    const double a2 = alpha * alpha;
    CHECK(fock::normal_moment(sacs, 0, 1).real() ==
          doctest::Approx(alpha * (2.0 + a2) / (1.0 + a2)).epsilon(1e-10));
    CHECK(fock::normal_moment(sacs, 1, 1).real() ==
          doctest::Approx((a2 * a2 + 3.0 * a2 + 1.0) / (1.0 + a2)).epsilon(1e-10));

    // SATS moment at nbar = 0.5, m = 1: m! nbar^m (1 + m(1 + 1/nbar)) = 2
    const auto sats =
        fock::photon_add(fock::thermal_state(0.5, TruncationPolicy::for_thermal(0.5)));
    CHECK(fock::normal_moment(sats, 1, 1).real() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fock::normal_moment(sats, 2, 2).real() == doctest::Approx(3.5).epsilon(1e-10));

    // a state with mass at the top level cannot be shifted up
    fock::CMatrix top = fock::CMatrix::Zero(8, 8);
    top(7, 7) = 1.0;
    CHECK_THROWS_AS(fock::photon_add(fock::FockDensity(top, TruncationPolicy{8, 1e-12})),
                    TruncationOverflow);
}

TEST_CASE("normal moments") {
    const TruncationPolicy p32{32, 1e-12};
    const auto vac = fock::density_from(fock::number_state(0, p32));
    CHECK(std::abs(fock::normal_moment(vac, 2, 1)) == 0.0);
    CHECK(std::abs(fock::normal_moment(vac, 0, 0) - 1.0) < 1e-15);

    const auto coh = fock::density_from(fock::coherent_state(1.5, TruncationPolicy::for_coherent(1.5)));
    for (int m = 1; m <= 4; ++m)
        CHECK(fock::normal_moment(coh, m, m).real() ==
              doctest::Approx(std::pow(1.5, 2 * m)).epsilon(1e-10));

    // SACS alpha = 1: (1 + 3 + 1)/2 = 2.5
    const auto sacs = fock::photon_add(
        fock::density_from(fock::coherent_state(1.0, TruncationPolicy::for_coherent(1.0))));
    CHECK(fock::normal_moment(sacs, 1, 1).real() == doctest::Approx(2.5).epsilon(1e-10));

    CHECK_THROWS_AS(fock::normal_moment(vac, 13, 0), OrderTooLarge);
}

TEST_CASE("anti-normal reordering") {
    const double vac_ladder1[] = {1.0, 0.0};
    CHECK(fock::antinormal_from_normal(vac_ladder1, 1) == doctest::Approx(1.0));
    const double vac_ladder2[] = {1.0, 0.0, 0.0};
    CHECK(fock::antinormal_from_normal(vac_ladder2, 2) == doctest::Approx(2.0));

    const auto coh = fock::density_from(fock::coherent_state(1.0, TruncationPolicy::for_coherent(1.0)));
    double ladder[4];
    for (int p = 0; p <= 3; ++p) ladder[p] = fock::normal_moment(coh, p, p).real();
    const double direct = fock::antinormal_moment(coh, 3);
    CHECK(fock::antinormal_from_normal(ladder, 3) ==
          doctest::Approx(direct).epsilon(1e-10));

    CHECK_THROWS_AS(fock::antinormal_from_normal(std::span<const double>(ladder, 2), 3),
                    MissingMoment);
}

TEST_CASE("reordering identity on random states") {
    std::mt19937_64 eng(99);
    for (int i = 0; i < 50; ++i) {
        const int dim = 4 + static_cast<int>(eng() % 13);
        const auto rho = random_state(dim, eng);
        for (int m = 1; m <= 4; ++m) {
            std::vector<double> ladder(m + 1);
            for (int p = 0; p <= m; ++p) ladder[p] = fock::normal_moment(rho, p, p).real();
            const double direct = fock::antinormal_moment(rho, m);
            CHECK(std::abs(fock::antinormal_from_normal(ladder, m) - direct) <=
                  1e-10 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("beam splitter action") {
    const TruncationPolicy p8{8, 0.999};
    const auto joint = fock::tensor_product(fock::density_from(fock::number_state(1, p8)),
                                            fock::density_from(fock::number_state(0, p8)));

    SUBCASE("theta = 0 is the identity") {
        const auto out = fock::beam_splitter_apply(joint, 0.0);
        CHECK((out.matrix() - joint.matrix()).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("50:50 splitting of one photon") {
        const auto out = fock::beam_splitter_apply(joint, std::asin(std::sqrt(0.5)));
        const auto mode1 = fock::reduce_mode1(out);
        CHECK(fock::mean_photon(mode1) == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("inverse angle restores the input") {
        const auto fwd = fock::beam_splitter_apply(joint, 0.7);
        const auto back = fock::beam_splitter_apply(fwd, -0.7);
        CHECK((back.matrix() - joint.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("beam splitter coherent covariance") {
    // |alpha>|0> -> |alpha cos theta>|-alpha sin theta>
    const double alpha = 0.8, theta = 0.6;
    const TruncationPolicy p20{20, 1e-12};
    const auto joint =
        fock::tensor_product(fock::density_from(fock::coherent_state(alpha, p20)),
                             fock::density_from(fock::coherent_state(0.0, p20)));
    const auto out = fock::beam_splitter_apply(joint, theta);
    const auto expect1 = fock::coherent_state(alpha * std::cos(theta), p20);
    const auto expect2 = fock::coherent_state(-alpha * std::sin(theta), p20);
    fock::CVector target = fock::CVector::Zero(400);
    for (int n1 = 0; n1 < 20; ++n1)
        for (int n2 = 0; n2 < 20; ++n2)
            target(n1 * 20 + n2) = expect1.amplitudes()(n1) * expect2.amplitudes()(n2);
    const std::complex<double> overlap = target.adjoint() * out.matrix() * target;
    CHECK(overlap.real() > 1.0 - 1e-10);
}

TEST_CASE("no-click conditioning") {
    const TruncationPolicy p16{16, 1e-9};
    const auto rho1 = fock::density_from(fock::coherent_state(0.9, p16));
    const auto rho2 = fock::thermal_state(0.3, TruncationPolicy{16, 1e-3});
    const auto joint = fock::tensor_product(rho1, rho2);

    SUBCASE("eta = 0 means a blind detector: P_nd is exactly one") {
        const auto [cond, p_nd] = fock::condition_no_click(joint, 0.0);
        CHECK(p_nd == 1.0);
        const auto reduced = fock::reduce_mode1(joint);
        CHECK((cond.matrix() - reduced.matrix()).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("eta = 1 with vacuum in mode 2 leaves mode 1 untouched") {
        const auto vac_joint =
            fock::tensor_product(rho1, fock::density_from(fock::number_state(0, p16)));
        const auto [cond, p_nd] = fock::condition_no_click(vac_joint, 1.0);
        CHECK(p_nd == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((cond.matrix() - rho1.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("a lone photon with a perfect detector never yields no-click") {
        const auto photon_joint =
            fock::tensor_product(rho1, fock::density_from(fock::number_state(1, p16)));
        // without mixing, the photon reaches the detector with certainty
        CHECK_THROWS_AS(fock::condition_no_click(photon_joint, 1.0), ZeroProbability);
    }
}

TEST_CASE("full pipeline spot value") {
    // coherent alpha = 1, R = 0.5, eta = 1, p_s = 1: P_nd = 0.75 e^(-1/2)
    const TruncationPolicy p20{20, 1e-12};
    const auto rho1 = fock::density_from(fock::coherent_state(1.0, p20));
    const auto source = fock::density_from(fock::number_state(1, p20));
    const auto joint = fock::tensor_product(rho1, source);
    const auto mixed = fock::beam_splitter_apply(joint, std::asin(std::sqrt(0.5)));
    const auto [cond, p_nd] = fock::condition_no_click(mixed, 1.0);
    CHECK(p_nd == doctest::Approx(0.75 * std::exp(-0.5)).epsilon(1e-9));
}

TEST_CASE("heralded pipeline equals the dense composition") {
    const auto rho_in = fock::density_from(fock::coherent_state(0.9, TruncationPolicy{14, 1e-9}));
    fock::CMatrix src = fock::CMatrix::Zero(15, 15);
    src(0, 0) = 0.3;
    src(1, 1) = 0.7;
    const fock::FockDensity source(src, TruncationPolicy{15, 1e-9});
    const double theta = std::asin(std::sqrt(0.45));
    const auto joint = fock::tensor_product(rho_in, source);
    const auto mixed = fock::beam_splitter_apply(joint, theta);
    const auto [cond_dense, p_dense] = fock::condition_no_click(mixed, 0.55);
    const auto [cond_pipe, p_pipe] = fock::heralded_photon_add(rho_in, theta, 0.55, 0.7);
    CHECK(p_pipe == doctest::Approx(p_dense).epsilon(1e-10));
    const int d = cond_dense.dim();
    CHECK((cond_dense.matrix() - cond_pipe.matrix().topLeftCorner(d, d)).cwiseAbs().maxCoeff() <
          1e-9);
}

TEST_CASE("loss channel") {
    const auto rho = fock::photon_add(
        fock::density_from(fock::coherent_state(1.3, TruncationPolicy::for_coherent(1.3))));

    SUBCASE("eta = 1 is the identity") {
        const auto out = fock::loss_channel(rho, 1.0);
        CHECK((out.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("eta = 0 maps everything to vacuum") {
        const auto out = fock::loss_channel(rho, 0.0);
        CHECK(std::abs(out.matrix()(0, 0).real() - 1.0) < 1e-12);
    }
    SUBCASE("normally ordered moments scale as eta^m") {
        const auto out = fock::loss_channel(rho, 0.62);
        for (int m = 1; m <= 4; ++m) {
            const double expect = std::pow(0.62, m) * fock::normal_moment(rho, m, m).real();
            CHECK(fock::normal_moment(out, m, m).real() ==
                  doctest::Approx(expect).epsilon(1e-10));
        }
    }
    SUBCASE("composition multiplies transmissivities") {
        std::mt19937_64 eng(5);
        const auto r = random_state(12, eng);
        const auto twice = fock::loss_channel(fock::loss_channel(r, 0.9), 0.5);
        const auto once = fock::loss_channel(r, 0.45);
        CHECK((twice.matrix() - once.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("states stay physical through the operations") {
    std::mt19937_64 eng(31);
    const auto rho = random_state(10, eng);
    for (const auto& out :
         {fock::photon_add(rho), fock::loss_channel(rho, 0.7),
          fock::heralded_photon_add(rho, 0.5, 0.6, 0.7).first}) {
        CHECK((out.matrix() - out.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-10);
        CHECK(out.min_eigenvalue() > -1e-10);
    }
}

TEST_CASE("two-mode dimension cap") {
    const TruncationPolicy p70{70, 0.999};
    const auto r = fock::thermal_state(0.2, p70);
    CHECK_THROWS_AS(fock::tensor_product(r, r), TruncationOverflow);
}

TEST_CASE("moment set extraction") {
    const auto coh = fock::density_from(fock::coherent_state(1.2, TruncationPolicy::for_coherent(1.2)));
    const auto ms = fock::extract_moment_set(coh, 2);
    CHECK(std::abs(ms.a_m - std::pow(1.2, 2)) < 1e-10);
    CHECK(ms.n_m == doctest::Approx(std::pow(1.2, 4)).epsilon(1e-10));
    CHECK(ms.anti_m - ms.n_m > 0.0);
    CHECK_THROWS_AS(fock::extract_moment_set(coh, 7), OrderTooLarge);
}
