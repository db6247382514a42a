#pragma once

#include <span>
#include <utility>
#include <vector>

#include "paqs/errors.hpp"
#include "paqs/fock.hpp"
#include "paqs/witness.hpp"

// Closed forms for the beam-splitter heralding scheme: the input state and an
// imperfect single-photon source rho_single = p_s|1><1| + (1-p_s)|0><0| mix on
// a beam splitter of reflectance R = sin^2(theta); conditioning on no-click of
// an efficiency-eta detector at output 2 implements approximate photon
// addition on output 1.
namespace paqs::bs {

inline constexpr int kMaxOrder = 8; // beta^(2m) dynamic range stays safe for alpha <= 6

struct CoherentParams {
    double alpha = 0;       // input coherent amplitude, real >= 0
    double reflectance = 0; // R = sin^2(theta); T = 1 - R
    double eta = 1;         // heralding-detector efficiency
    double p_s = 1;         // single-photon purity of the source

    double transmittance() const { return 1.0 - reflectance; }
    double theta() const; // arcsin(sqrt(R)); used only to drive the oracle unitary
    void validate() const;
};

struct ThermalParams {
    double nbar = 1; // input thermal mean photon number, > 0
    double reflectance = 0;
    double eta = 1;
    double p_s = 1;

    double transmittance() const { return 1.0 - reflectance; }
    double theta() const;
    void validate() const;
};

// Structure constants of the conditional state
//   rho_c = (1/N)[ s a^dag|b><b|a + f |b><b| + c |b><b|a + c a^dag|b><b| ],
// with b = beta_amp = alpha sqrt(T). At eta = p_s = 1 they reduce to
// (s, f, c) = (R, 0, 0): a pure SACS of amplitude beta_amp.
struct Coeffs {
    double s, f, c;
    double norm;     // N
    double beta_amp; // named to avoid a clash with the thermal beta = 1/kT
};

Coeffs coeffs(const CoherentParams& p);

// P_nd = N exp(-R eta alpha^2)
double pnd_coherent(const CoherentParams& p);

// <a^m> = (1/N)[ s b^m (b^2 + m + 1) + f b^m + c b^(m-1) (2 b^2 + m) ]
double moment_a(const CoherentParams& p, int m);

// <a^dag^m a^m> = (1/N)[ s b^(2m-2)((b^2+m)^2 + b^2) + f b^(2m)
//                        + 2 c b^(2m-1)(b^2 + m) ]
double moment_nm(const CoherentParams& p, int m);

witness::MomentSet moment_set_coherent(const CoherentParams& p, int m);

struct CoherentWitnessRow {
    int m;
    witness::WitnessResult q1;
    witness::WitnessResult q2;
    double p_nd;
};

// Per order: MomentSet from the closed forms at orders m and 2m plus the
// reordering sum for anti_m, then the phase-optimized Q1 and Q2.
std::vector<CoherentWitnessRow> witnesses_coherent(const CoherentParams& p,
                                                   std::span<const int> orders);

// m-photon coincidence numerators for the thermal input:
//   <a1^dag^m a1^m> of the conditional state = D_m / D_0, P_nd = D_0, with
//   D_m = (m! T^(m-1) nbar^-1 / (nbar^-1 + eta R)^(m+2)) *
//         [ T(nbar^-1 + eta R)(1 - eta p_s T + 2 m eta p_s R)
//           + m p_s R (nbar^-1 + eta R)^2 + (m+1) eta^2 p_s R T^2 ].
// T = 0 with m = 0 makes the printed prefactor singular and throws
// DegenerateGeometry; witnesses_thermal falls back to the Fock pipeline for
// P_nd in that geometry.
double thermal_dm(const ThermalParams& p, int m);

struct ThermalWitnessRow {
    int m;
    witness::WitnessResult q2;
    double p_nd;
};

// Q2^m = (D_2m/D_0) / (D_m/D_0)^2 - 1. Q1 is deliberately not offered: the
// conditional state of a thermal input is phase symmetric.
std::vector<ThermalWitnessRow> witnesses_thermal(const ThermalParams& p,
                                                 std::span<const int> orders);

// The conditional state assembled literally from its structure constants in
// the truncated basis, plus P_nd.
std::pair<fock::FockDensity, double> conditional_density(const CoherentParams& p,
                                                         const fock::TruncationPolicy& policy);

} // namespace paqs::bs
