#include "paqs/analytic.hpp"

#include <cmath>
#include <vector>

#include "paqs/detail/numeric.hpp"

namespace paqs::analytic {

using detail::factorial_u64;
using detail::ipow;
using detail::reorder_coeff_u64;

namespace {

void check_order(int m, int lo, int hi, const char* who) {
    if (m < lo || m > hi) throw OrderTooLarge(std::string(who) + ": order out of range");
}

} // namespace

void SacsParams::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw InvalidParameter("SacsParams: alpha must be finite and >= 0");
}

void SatsParams::validate() const {
    if (!(nbar > 0.0) || !std::isfinite(nbar))
        throw InvalidParameter("SatsParams: nbar must be finite and > 0");
}

double sacs_moment_a(const SacsParams& p, int m) {
    p.validate();
    check_order(m, 0, 2 * kMaxOrder, "sacs_moment_a");
    const double a2 = p.alpha * p.alpha;
    return ipow(p.alpha, m) * (m + 1 + a2) / (1.0 + a2);
}

double sacs_moment_nm(const SacsParams& p, int m) {
    p.validate();
    check_order(m, 0, 2 * kMaxOrder, "sacs_moment_nm");
    if (m == 0) return 1.0;
    const double a2 = p.alpha * p.alpha;
    return (ipow(p.alpha, 2 * m + 2) + (2 * m + 1) * ipow(p.alpha, 2 * m) +
            double(m) * double(m) * ipow(p.alpha, 2 * m - 2)) /
           (1.0 + a2);
}

double sacs_q1_combination(const SacsParams& p, int m) {
    p.validate();
    check_order(m, 1, kMaxOrder, "sacs_q1_combination");
    const double a2 = p.alpha * p.alpha;
    const double den = (1.0 + a2) * (1.0 + a2);
    return -double(m) * double(m) * ipow(p.alpha, 2 * m - 2) * (a2 - 1.0) / den;
}

double sacs_q2(const SacsParams& p, int m) {
    p.validate();
    check_order(m, 1, kMaxOrder, "sacs_q2");
    if (p.alpha == 0.0 && m >= 2)
        throw DomainError("sacs_q2: alpha = 0 with m >= 2 is the |1> state, a 0/0 witness");
    const double a2 = p.alpha * p.alpha;
    const double num = a2 * (1.0 + a2) * (a2 * a2 + (4 * m + 1) * a2 + 4.0 * m * m);
    const double den = a2 * a2 + (2 * m + 1) * a2 + double(m) * double(m);
    return num / (den * den) - 1.0;
}

double sats_moment_nm(const SatsParams& p, int m) {
    p.validate();
    check_order(m, 0, 2 * kMaxOrder, "sats_moment_nm");
    if (m == 0) return 1.0;
    return double(factorial_u64(m)) * ipow(p.nbar, m) * (1.0 + m * p.x());
}

double sats_q2(const SatsParams& p, int m) {
    p.validate();
    check_order(m, 1, kMaxOrder, "sats_q2");
    const double ratio = double(factorial_u64(2 * m)) /
                         (double(factorial_u64(m)) * double(factorial_u64(m)));
    const double mx = m * p.x();
    return ratio * (1.0 + 2.0 * mx) / ((1.0 + mx) * (1.0 + mx)) - 1.0;
}

SatsThreshold sats_threshold(int m) {
    check_order(m, 1, kMaxOrder, "sats_threshold");
    const double a = double(factorial_u64(2 * m));
    const double b = double(factorial_u64(m)) * double(factorial_u64(m));
    const double c_m = (a - b + std::sqrt(a * (a - b))) / (m * b);
    return {c_m, 1.0 / (c_m - 1.0)};
}

namespace {

witness::MomentSet assemble(int m, double a_m, double a2m,
                            const std::vector<double>& ladder, double n_2m) {
    double anti = 0.0;
    for (int p = 0; p <= m; ++p)
        anti += double(reorder_coeff_u64(m, p)) * ladder[p];
    return witness::MomentSet{
        .m = m,
        .a_m = a_m,
        .a2m = a2m,
        .n_m = ladder[m],
        .n_2m = n_2m,
        .anti_m = anti,
    };
}

} // namespace

witness::MomentSet sacs_moment_set(const SacsParams& p, int m) {
    check_order(m, 1, kMaxOrder, "sacs_moment_set");
    std::vector<double> ladder(m + 1);
    for (int q = 0; q <= m; ++q) ladder[q] = sacs_moment_nm(p, q);
    return assemble(m, sacs_moment_a(p, m), sacs_moment_a(p, 2 * m), ladder,
                    sacs_moment_nm(p, 2 * m));
}

witness::MomentSet sats_moment_set(const SatsParams& p, int m) {
    check_order(m, 1, kMaxOrder, "sats_moment_set");
    std::vector<double> ladder(m + 1);
    for (int q = 0; q <= m; ++q) ladder[q] = sats_moment_nm(p, q);
    return assemble(m, 0.0, 0.0, ladder, sats_moment_nm(p, 2 * m));
}

} // namespace paqs::analytic
