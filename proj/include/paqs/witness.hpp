#pragma once

#include <complex>

#include "paqs/errors.hpp"

namespace paqs::witness {

using Complex = std::complex<double>;

// Denominators (or <a^dag^m a^m> for Q2) below this make a witness a 0/0
// form; it is reported undefined rather than +-inf.
inline constexpr double kDefinedTol = 1e-14;

enum class Kind { q1_phase, q1_opt, q2, mandel_q };

// The moments of order m a witness needs. anti_m - n_m is the expectation
// of the commutator [a^m, a^dag^m] and is nonnegative for physical states.
struct MomentSet {
    int m = 1;
    Complex a_m;       // <a^m>
    Complex a2m;       // <a^{2m}>
    double n_m = 0;    // <a^dag^m a^m>
    double n_2m = 0;   // <a^dag^{2m} a^{2m}>
    double anti_m = 0; // <a^m a^dag^m>

    void validate() const; // throws InvalidParameter on gross violations
};

struct WitnessResult {
    Kind kind = Kind::q2;
    bool defined = false;
    double value = 0;  // NaN when !defined
    double numerator = 0;
    double denominator = 0;
    double phase = 0;  // supplied phase (q1_phase) or optimal phase (q1_opt)
};

// zeta = <a^dag^{2m}> - <a^dag^m>^2, the phase-carrying combination of the
// squeezing-type witness.
Complex zeta(const MomentSet& ms);

// Phase-resolved depth:
//   Q1^m(phi) = (zeta e^{-2i phi} + c.c. + 2 n_m - 2|a_m|^2) / (anti_m - n_m)
WitnessResult q1_phase(const MomentSet& ms, double phi);

// Phase-optimized depth: the e^{+-2i phi} pair takes its minimum -2|zeta|,
//   Q1^m = (-2|zeta| + 2 n_m - 2|a_m|^2) / (anti_m - n_m),
// attained at phi* = (arg zeta + pi)/2 (reported in .phase).
WitnessResult q1_opt(const MomentSet& ms);

// Coincidence-statistics depth: Q2^m = n_2m / n_m^2 - 1.
WitnessResult q2(const MomentSet& ms);

// Mandel Q = n_1 * Q2^1; requires m == 1. Throws UndefinedWitness when the
// order is wrong or n_m is below the definedness threshold.
double mandel_q(const MomentSet& ms);

} // namespace paqs::witness
