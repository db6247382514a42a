#pragma once

#include "paqs/errors.hpp"
#include "paqs/witness.hpp"

// Closed-form moments and witness predicates for the pure single-photon-added
// coherent state (SACS), |Psi> = a^dag|alpha> / sqrt(1+alpha^2) with real
// alpha, and the single-photon-added thermal state (SATS),
// a^dag rho_th a / Tr[a^dag rho_th a].
namespace paqs::analytic {

// Witness-level operations are capped here; (2m)! stays exact in 64 bits.
inline constexpr int kMaxOrder = 8;

struct SacsParams {
    double alpha = 0; // real, >= 0; complex amplitudes go through fock instead
    void validate() const;
};

struct SatsParams {
    double nbar = 1; // thermal mean photon number, > 0
    double x() const { return 1.0 + 1.0 / nbar; } // e^beta of the thermal weight
    void validate() const;
};

// <a^m>_SACS = alpha^m (m + 1 + alpha^2) / (1 + alpha^2); m = 0 gives 1.
double sacs_moment_a(const SacsParams& p, int m);

// <a^dag^m a^m>_SACS =
//   (alpha^(2m+2) + (2m+1) alpha^(2m) + m^2 alpha^(2m-2)) / (1 + alpha^2).
// At alpha = 0 the m^2 term gives 1 for m = 1 (the state is |1>) and the
// whole expression vanishes for m >= 2.
double sacs_moment_nm(const SacsParams& p, int m);

// The un-doubled Q1 numerator combination for real alpha,
//   -|zeta| + <a^dag^m a^m> - |<a^dag^m>|^2
//     = -m^2 alpha^(2m-2) (alpha^2 - 1) / (1 + alpha^2)^2,
// negative exactly when alpha > 1. The full Q1^m carries twice this over
// the commutator denominator.
double sacs_q1_combination(const SacsParams& p, int m);

// Q2^m of the SACS; strictly negative for every alpha > 0. alpha = 0 with
// m >= 2 is a 0/0 form (the state is |1>) and throws DomainError.
double sacs_q2(const SacsParams& p, int m);

// <a^dag^m a^m>_SATS = m! nbar^m (1 + m x), x = 1 + 1/nbar; 1 at m = 0.
double sats_moment_nm(const SatsParams& p, int m);

// Q2^m of the SATS = ((2m)!/(m!)^2) (1 + 2mx) / (1 + mx)^2 - 1,
// negative exactly when x exceeds the threshold C_m below.
double sats_q2(const SatsParams& p, int m);

struct SatsThreshold {
    double c_m;      // threshold in x = 1 + 1/nbar
    double nbar_max; // equivalent bound: negativity for nbar < 1/(C_m - 1)
};

// C_m = ((2m)! - (m!)^2 + sqrt((2m)! ((2m)! - (m!)^2))) / (m (m!)^2),
// the positive root of the Q2^m = 0 quadratic; monotonically increasing in m.
SatsThreshold sats_threshold(int m);

// Full order-m moment sets assembled from the closed forms above (anti_m via
// the reordering sum over the p = 0..m ladder). The SATS is phase symmetric,
// so its <a^m> and <a^{2m}> vanish identically.
witness::MomentSet sacs_moment_set(const SacsParams& p, int m);
witness::MomentSet sats_moment_set(const SatsParams& p, int m);

} // namespace paqs::analytic
