#include "paqs/bs_scheme.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "paqs/detail/numeric.hpp"

namespace paqs::bs {

using detail::factorial_u64;
using detail::ipow;
using detail::reorder_coeff_u64;

namespace {

void check_common(double reflectance, double eta, double p_s, const char* who) {
    if (!(reflectance >= 0.0 && reflectance <= 1.0))
        throw InvalidParameter(std::string(who) + ": reflectance must lie in [0, 1]");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw InvalidParameter(std::string(who) + ": eta must lie in [0, 1]");
    if (!(p_s >= 0.0 && p_s <= 1.0))
        throw InvalidParameter(std::string(who) + ": p_s must lie in [0, 1]");
}

void check_orders(std::span<const int> orders, const char* who) {
    if (orders.empty()) throw InvalidParameter(std::string(who) + ": orders must be nonempty");
    for (int m : orders)
        if (m < 1 || m > kMaxOrder)
            throw OrderTooLarge(std::string(who) + ": orders must lie in 1..8");
}

} // namespace

double CoherentParams::theta() const { return std::asin(std::sqrt(reflectance)); }
double ThermalParams::theta() const { return std::asin(std::sqrt(reflectance)); }

void CoherentParams::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw InvalidParameter("BsCoherentParams: alpha must be finite and >= 0");
    check_common(reflectance, eta, p_s, "BsCoherentParams");
}

void ThermalParams::validate() const {
    if (!(nbar > 0.0) || !std::isfinite(nbar))
        throw InvalidParameter("BsThermalParams: nbar must be finite and > 0");
    check_common(reflectance, eta, p_s, "BsThermalParams");
}

Coeffs coeffs(const CoherentParams& p) {
    p.validate();
    const double r = p.reflectance, t = p.transmittance();
    const double one_m_eta = 1.0 - p.eta;
    const double a2 = p.alpha * p.alpha;
    const double beta = p.alpha * std::sqrt(t);
    Coeffs out;
    out.s = r * p.p_s;
    out.f = p.p_s * one_m_eta * t * (1.0 + one_m_eta * r * a2) + (1.0 - p.p_s);
    out.c = -r * p.p_s * one_m_eta * beta;
    out.norm = p.p_s * (1.0 - t * p.eta + r * t * p.eta * p.eta * a2) + 1.0 - p.p_s;
    out.beta_amp = beta;
    return out;
}

double pnd_coherent(const CoherentParams& p) {
    const Coeffs k = coeffs(p);
    return k.norm * std::exp(-p.reflectance * p.eta * p.alpha * p.alpha);
}

double moment_a(const CoherentParams& p, int m) {
    if (m < 1 || m > 2 * kMaxOrder) throw OrderTooLarge("bs::moment_a: order out of range");
    const Coeffs k = coeffs(p);
    const double b = k.beta_amp, b2 = b * b;
    return (k.s * ipow(b, m) * (b2 + m + 1) + k.f * ipow(b, m) +
            k.c * ipow(b, m - 1) * (2.0 * b2 + m)) /
           k.norm;
}

double moment_nm(const CoherentParams& p, int m) {
    if (m < 0 || m > 2 * kMaxOrder) throw OrderTooLarge("bs::moment_nm: order out of range");
    if (m == 0) return 1.0;
    const Coeffs k = coeffs(p);
    const double b = k.beta_amp, b2 = b * b;
    return (k.s * ipow(b, 2 * m - 2) * ((b2 + m) * (b2 + m) + b2) + k.f * ipow(b, 2 * m) +
            2.0 * k.c * ipow(b, 2 * m - 1) * (b2 + m)) /
           k.norm;
}

witness::MomentSet moment_set_coherent(const CoherentParams& p, int m) {
    if (m < 1 || m > kMaxOrder) throw OrderTooLarge("bs::moment_set_coherent: order out of range");
    std::vector<double> ladder(m + 1);
    for (int q = 0; q <= m; ++q) ladder[q] = moment_nm(p, q);
    double anti = 0.0;
    for (int q = 0; q <= m; ++q) anti += double(reorder_coeff_u64(m, q)) * ladder[q];
    return witness::MomentSet{
        .m = m,
        .a_m = moment_a(p, m),
        .a2m = moment_a(p, 2 * m),
        .n_m = ladder[m],
        .n_2m = moment_nm(p, 2 * m),
        .anti_m = anti,
    };
}

std::vector<CoherentWitnessRow> witnesses_coherent(const CoherentParams& p,
                                                   std::span<const int> orders) {
    check_orders(orders, "bs::witnesses_coherent");
    const double p_nd = pnd_coherent(p);
    std::vector<CoherentWitnessRow> rows;
    rows.reserve(orders.size());
    for (int m : orders) {
        const witness::MomentSet ms = moment_set_coherent(p, m);
        rows.push_back({m, witness::q1_opt(ms), witness::q2(ms), p_nd});
    }
    return rows;
}

double thermal_dm(const ThermalParams& p, int m) {
    p.validate();
    if (m < 0 || m > 2 * kMaxOrder) throw OrderTooLarge("bs::thermal_dm: order out of range");
    const double t = p.transmittance(), r = p.reflectance;
    if (t == 0.0 && m == 0)
        throw DegenerateGeometry("bs::thermal_dm: the T^(m-1) prefactor is singular at T = 0, m = 0");
    const double ni = 1.0 / p.nbar;
    const double u = ni + p.eta * r;
    const double tpow = (m == 0) ? 1.0 / t : ipow(t, m - 1);
    const double bracket = t * u * (1.0 - p.eta * p.p_s * t + 2.0 * m * p.eta * p.p_s * r) +
                           m * p.p_s * r * u * u +
                           (m + 1) * p.eta * p.eta * p.p_s * r * t * t;
    return double(factorial_u64(m)) * tpow * ni / ipow(u, m + 2) * bracket;
}

namespace {

// R = 1 sends the whole input to the detector; the printed D_0 is singular
// there, so the no-click probability comes from the brute-force pipeline.
double pnd_thermal_degenerate(const ThermalParams& p) {
    std::fprintf(stderr,
                 "paqs: warning: reflectance = 1 makes the closed-form P_nd singular; "
                 "using the Fock pipeline\n");
    const auto policy = fock::TruncationPolicy::for_thermal(p.nbar);
    const auto rho = fock::thermal_state(p.nbar, policy);
    return fock::heralded_photon_add(rho, p.theta(), p.eta, p.p_s).second;
}

} // namespace

std::vector<ThermalWitnessRow> witnesses_thermal(const ThermalParams& p,
                                                 std::span<const int> orders) {
    p.validate();
    check_orders(orders, "bs::witnesses_thermal");
    const double d0 = (p.transmittance() == 0.0) ? pnd_thermal_degenerate(p) : thermal_dm(p, 0);
    if (d0 < 1e-15)
        throw ZeroProbability("bs::witnesses_thermal: no-click probability below 1e-15");
    std::vector<ThermalWitnessRow> rows;
    rows.reserve(orders.size());
    for (int m : orders) {
        std::vector<double> ladder(m + 1);
        ladder[0] = 1.0;
        for (int q = 1; q <= m; ++q) ladder[q] = thermal_dm(p, q) / d0;
        double anti = 0.0;
        for (int q = 0; q <= m; ++q) anti += double(reorder_coeff_u64(m, q)) * ladder[q];
        const witness::MomentSet ms{
            .m = m,
            .a_m = 0.0,
            .a2m = 0.0,
            .n_m = ladder[m],
            .n_2m = thermal_dm(p, 2 * m) / d0,
            .anti_m = anti,
        };
        rows.push_back({m, witness::q2(ms), d0});
    }
    return rows;
}

std::pair<fock::FockDensity, double> conditional_density(const CoherentParams& p,
                                                         const fock::TruncationPolicy& policy) {
    const Coeffs k = coeffs(p);
    const fock::FockVector beta_state = fock::coherent_state(k.beta_amp, policy);
    const int dim = policy.max_dim;
    const auto& bv = beta_state.amplitudes();
    if (std::norm(bv(dim - 1)) > policy.tail_tol)
        throw TruncationOverflow("bs::conditional_density: no headroom for the added photon");
    fock::CVector adb = fock::CVector::Zero(dim); // a^dag |beta>, unnormalized
    for (int n = 1; n < dim; ++n) adb(n) = std::sqrt(double(n)) * bv(n - 1);
    fock::CMatrix m = (k.s * (adb * adb.adjoint()) + k.f * (bv * bv.adjoint()) +
                       k.c * (bv * adb.adjoint()) + k.c * (adb * bv.adjoint())) /
                      k.norm;
    return {fock::FockDensity(std::move(m), policy), pnd_coherent(p)};
}

} // namespace paqs::bs
