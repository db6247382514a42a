#pragma once

#include <span>

#include "paqs/errors.hpp"
#include "paqs/witness.hpp"

// Photon addition by a weakly pumped nondegenerate parametric amplifier,
// modeled as ideal a^dag followed by a transmissivity-eta beam splitter with
// vacuum in the idle port; eta is the overall empirical efficiency of the
// experiment. Under that loss, normally ordered moments pick up exact powers
// of eta:
//   <a^m>     -> eta^(m/2) <a^m>
//   <a^dag^m a^m> -> eta^m <a^dag^m a^m>
// while the anti-normal moment mixes eta^p for p = 0..m and must be rebuilt
// from the scaled ladder. Consequences: the Q1 numerator scales by eta^m (sign
// region unchanged), and Q2 is exactly eta-invariant.
namespace paqs::ndpa {

struct CoherentParams {
    double alpha = 0; // amplitude of the coherent input, real >= 0
    double eta = 1;   // overall efficiency, in (0, 1]
    void validate() const;
};

struct ThermalParams {
    double nbar = 1; // thermal mean photon number, > 0
    double eta = 1;
    void validate() const;
};

// Scales an ideal moment set through the loss. ideal_normal_ladder[p] must
// hold the ideal <a^dag^p a^p> for p = 0..m; anti_m is recomputed from the
// scaled ladder, never scaled directly.
witness::MomentSet scaled_moments(const witness::MomentSet& ideal,
                                  std::span<const double> ideal_normal_ladder,
                                  double eta);

// Q1^m of the lossy photon-added coherent state. Negative exactly for
// alpha > 1 at every eta; the magnitude shrinks with the loss.
witness::WitnessResult q1(const CoherentParams& p, int m);

// Q2^m: the eta^m factors cancel between numerator and denominator, so these
// return exactly the pure-state closed forms. alpha = 0 with m >= 2 throws
// DomainError as in the pure case.
witness::WitnessResult q2(const CoherentParams& p, int m);
witness::WitnessResult q2(const ThermalParams& p, int m);

} // namespace paqs::ndpa
