#include "paqs/witness.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace paqs::witness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

WitnessResult undefined(Kind kind, double num, double den, double phase) {
    return {kind, false, kNaN, num, den, phase};
}

} // namespace

void MomentSet::validate() const {
    if (m < 1) throw InvalidParameter("MomentSet: order m must be >= 1");
    const double scale = 1.0 + std::abs(n_m) + std::abs(anti_m);
    const double slack = 1e-9 * scale;
    if (n_m < -slack || n_2m < -1e-9 * (1.0 + std::abs(n_2m)) || anti_m < -slack)
        throw InvalidParameter("MomentSet: normally/anti-normally ordered moments must be >= 0");
    // anti_m - n_m = <[a^m, a^dag^m]>, nonnegative for physical states.
    if (anti_m - n_m < -slack) {
        std::ostringstream os;
        os << "MomentSet: commutator expectation " << anti_m - n_m << " is negative";
        throw InvalidParameter(os.str());
    }
}

Complex zeta(const MomentSet& ms) {
    return std::conj(ms.a2m) - std::conj(ms.a_m) * std::conj(ms.a_m);
}

WitnessResult q1_phase(const MomentSet& ms, double phi) {
    ms.validate();
    const Complex z = zeta(ms);
    const double num = 2.0 * std::real(z * std::exp(Complex(0.0, -2.0 * phi))) +
                       2.0 * ms.n_m - 2.0 * std::norm(ms.a_m);
    const double den = ms.anti_m - ms.n_m;
    if (den < kDefinedTol) return undefined(Kind::q1_phase, num, den, phi);
    return {Kind::q1_phase, true, num / den, num, den, phi};
}

WitnessResult q1_opt(const MomentSet& ms) {
    ms.validate();
    const Complex z = zeta(ms);
    const double num = -2.0 * std::abs(z) + 2.0 * ms.n_m - 2.0 * std::norm(ms.a_m);
    const double den = ms.anti_m - ms.n_m;
    // zeta e^{-2i phi} + c.c. is minimized where the rotated zeta points along
    // the negative real axis.
    const double phase = (std::abs(z) > 0.0) ? 0.5 * (std::arg(z) + std::numbers::pi) : 0.0;
    if (den < kDefinedTol) return undefined(Kind::q1_opt, num, den, phase);
    return {Kind::q1_opt, true, num / den, num, den, phase};
}

WitnessResult q2(const MomentSet& ms) {
    ms.validate();
    const double num = ms.n_2m - ms.n_m * ms.n_m;
    const double den = ms.n_m * ms.n_m;
    if (ms.n_m < kDefinedTol) return undefined(Kind::q2, num, den, 0.0);
    return {Kind::q2, true, ms.n_2m / (ms.n_m * ms.n_m) - 1.0, num, den, 0.0};
}

double mandel_q(const MomentSet& ms) {
    if (ms.m != 1) throw UndefinedWitness("mandel_q: defined only for m = 1");
    const WitnessResult r = q2(ms);
    if (!r.defined) throw UndefinedWitness("mandel_q: <a^dag a> below the definedness threshold");
    return ms.n_m * r.value;
}

} // namespace paqs::witness
