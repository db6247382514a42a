#include "paqs/ndpa.hpp"

#include <cmath>
#include <vector>

#include "paqs/analytic.hpp"
#include "paqs/detail/numeric.hpp"

namespace paqs::ndpa {

using detail::ipow;
using detail::reorder_coeff_u64;

void CoherentParams::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw InvalidParameter("NdpaCoherentParams: alpha must be finite and >= 0");
    if (!(eta > 0.0 && eta <= 1.0))
        throw InvalidParameter("NdpaCoherentParams: eta must lie in (0, 1]");
}

void ThermalParams::validate() const {
    if (!(nbar > 0.0) || !std::isfinite(nbar))
        throw InvalidParameter("NdpaThermalParams: nbar must be finite and > 0");
    if (!(eta > 0.0 && eta <= 1.0))
        throw InvalidParameter("NdpaThermalParams: eta must lie in (0, 1]");
}

witness::MomentSet scaled_moments(const witness::MomentSet& ideal,
                                  std::span<const double> ideal_normal_ladder, double eta) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw InvalidParameter("ndpa::scaled_moments: eta must lie in (0, 1]");
    const int m = ideal.m;
    if (std::ssize(ideal_normal_ladder) < m + 1)
        throw MissingMoment("ndpa::scaled_moments: ladder must cover p = 0..m");
    if (std::abs(ideal_normal_ladder[m] - ideal.n_m) >
        1e-9 * (1.0 + std::abs(ideal.n_m)))
        throw InvalidParameter("ndpa::scaled_moments: ladder[m] disagrees with the moment set");
    const double root = std::sqrt(eta);
    // anti_m mixes eta^p for p = 0..m, so it is rebuilt from the scaled
    // ladder rather than scaled by any single power.
    double anti = 0.0;
    for (int p = 0; p <= m; ++p)
        anti += double(reorder_coeff_u64(m, p)) * ipow(eta, p) * ideal_normal_ladder[p];
    return witness::MomentSet{
        .m = m,
        .a_m = ipow(root, m) * ideal.a_m,
        .a2m = ipow(eta, m) * ideal.a2m,
        .n_m = ipow(eta, m) * ideal.n_m,
        .n_2m = ipow(eta, 2 * m) * ideal.n_2m,
        .anti_m = anti,
    };
}

witness::WitnessResult q1(const CoherentParams& p, int m) {
    p.validate();
    const analytic::SacsParams pure{p.alpha};
    const witness::MomentSet ideal = analytic::sacs_moment_set(pure, m);
    std::vector<double> ladder(m + 1);
    for (int q = 0; q <= m; ++q) ladder[q] = analytic::sacs_moment_nm(pure, q);
    return witness::q1_opt(scaled_moments(ideal, ladder, p.eta));
}

namespace {

// The eta^m factors cancel in Q2, so the lossy value IS the pure value; the
// report fields come from the pure moment combination.
witness::WitnessResult pure_q2_result(double value, double n_m, double n_2m) {
    return {witness::Kind::q2, true, value, n_2m - n_m * n_m, n_m * n_m, 0.0};
}

} // namespace

witness::WitnessResult q2(const CoherentParams& p, int m) {
    p.validate();
    const analytic::SacsParams pure{p.alpha};
    const double value = analytic::sacs_q2(pure, m); // throws DomainError at alpha = 0, m >= 2
    return pure_q2_result(value, analytic::sacs_moment_nm(pure, m),
                          analytic::sacs_moment_nm(pure, 2 * m));
}

witness::WitnessResult q2(const ThermalParams& p, int m) {
    p.validate();
    const analytic::SatsParams pure{p.nbar};
    return pure_q2_result(analytic::sats_q2(pure, m), analytic::sats_moment_nm(pure, m),
                          analytic::sats_moment_nm(pure, 2 * m));
}

} // namespace paqs::ndpa
