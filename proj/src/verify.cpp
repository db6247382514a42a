#include "paqs/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "paqs/analytic.hpp"
#include "paqs/bs_scheme.hpp"
#include "paqs/detail/numeric.hpp"
#include "paqs/fock.hpp"
#include "paqs/ndpa.hpp"
#include "paqs/witness.hpp"

namespace paqs::verify {

namespace {

using fock::FockDensity;
using fock::TruncationPolicy;

constexpr int kMaxFailuresListed = 8;

double rel_err(double closed, std::complex<double> oracle) {
    return std::abs(closed - oracle) / std::max(1e-30, std::abs(oracle));
}

struct Suite {
    SuiteResult r;
    double tol;

    Suite(std::string name, double tolerance) : tol(tolerance) { r.name = std::move(name); }

    template <typename DescribeFn>
    void observe(double err, DescribeFn&& describe) {
        ++r.points;
        if (err > r.max_err) r.max_err = err;
        if (err > tol && std::ssize(r.failures) < kMaxFailuresListed)
            r.failures.push_back(describe() + formatted_err(err));
    }

    static std::string formatted_err(double err) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), ": err=%.3e", err);
        return buf;
    }

    SuiteResult finish() {
        r.pass = r.max_err <= tol;
        return r;
    }
};

std::string tuple_desc(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) os << ' ';
        first = false;
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%s=%g", k, v);
        os << buf;
    }
    return os.str();
}

FockDensity oracle_sacs(double alpha) {
    const auto policy = TruncationPolicy::for_coherent(alpha);
    return fock::photon_add(fock::density_from(fock::coherent_state(alpha, policy)));
}

FockDensity oracle_sats(double nbar) {
    const auto policy = TruncationPolicy::for_thermal(nbar);
    return fock::photon_add(fock::thermal_state(nbar, policy));
}

SuiteResult sacs_moments_suite(double tol) {
    Suite s("sacs-moments-vs-oracle", tol);
    for (int k = 1; k <= 60; ++k) {
        const double alpha = k / 10.0;
        const FockDensity rho = oracle_sacs(alpha);
        const analytic::SacsParams p{alpha};
        for (int m = 1; m <= 5; ++m) {
            auto desc = [&] { return tuple_desc({{"alpha", alpha}, {"m", double(m)}}); };
            s.observe(rel_err(analytic::sacs_moment_a(p, m), fock::normal_moment(rho, 0, m)), desc);
            s.observe(rel_err(analytic::sacs_moment_nm(p, m), fock::normal_moment(rho, m, m)),
                      desc);
        }
    }
    return s.finish();
}

SuiteResult sats_moments_suite(double tol) {
    Suite s("sats-moments-vs-oracle", tol);
    for (int k = 0; k < 25; ++k) {
        const double nbar = 0.05 + 0.2 * k;
        const FockDensity rho = oracle_sats(nbar);
        const analytic::SatsParams p{nbar};
        for (int m = 1; m <= 5; ++m) {
            s.observe(rel_err(analytic::sats_moment_nm(p, m), fock::normal_moment(rho, m, m)),
                      [&] { return tuple_desc({{"nbar", nbar}, {"m", double(m)}}); });
        }
    }
    return s.finish();
}

SuiteResult sats_phase_symmetry_suite(double tol) {
    Suite s("sats-phase-symmetry", tol);
    for (int k = 0; k < 25; ++k) {
        const double nbar = 0.05 + 0.2 * k;
        const FockDensity rho = oracle_sats(nbar);
        for (int m = 1; m <= 5; ++m) {
            s.observe(std::abs(fock::normal_moment(rho, 0, m)),
                      [&] { return tuple_desc({{"nbar", nbar}, {"m", double(m)}}); });
        }
    }
    return s.finish();
}

constexpr double kBsAlphas[] = {0.4, 0.9, 1.5, 2.2, 3.0};
constexpr double kBsNbars[] = {0.2, 0.6, 1.0, 1.5, 2.0};
constexpr double kBsRefl[] = {0.1, 0.3, 0.5, 0.7, 0.9};
constexpr double kBsEtas[] = {0.3, 0.6, 1.0};
constexpr double kBsPs[] = {0.3, 0.7, 1.0};

SuiteResult bs_coherent_suite(double tol) {
    Suite s("bs-coherent-vs-oracle", tol);
    const fock::HeraldedAdder adder(TruncationPolicy::for_coherent(3.0).max_dim);
    for (double alpha : kBsAlphas) {
        const FockDensity rho_in =
            fock::density_from(fock::coherent_state(alpha, TruncationPolicy::for_coherent(alpha)));
        for (double r : kBsRefl) {
            const double theta = std::asin(std::sqrt(r));
            for (double eta : kBsEtas) {
                for (double ps : kBsPs) {
                    const bs::CoherentParams p{alpha, r, eta, ps};
                    const auto [cond, p_nd] = adder.run(rho_in, theta, eta, ps);
                    auto desc = [&](int m) {
                        return [&, m] {
                            return tuple_desc({{"alpha", alpha},
                                               {"R", r},
                                               {"eta", eta},
                                               {"ps", ps},
                                               {"m", double(m)}});
                        };
                    };
                    s.observe(rel_err(bs::pnd_coherent(p), p_nd), desc(0));
                    for (int m = 1; m <= 4; ++m) {
                        s.observe(rel_err(bs::moment_a(p, m), fock::normal_moment(cond, 0, m)),
                                  desc(m));
                        s.observe(rel_err(bs::moment_nm(p, m), fock::normal_moment(cond, m, m)),
                                  desc(m));
                    }
                }
            }
        }
    }
    return s.finish();
}

SuiteResult bs_thermal_suite(double tol) {
    Suite s("bs-thermal-vs-oracle", tol);
    const fock::HeraldedAdder adder(TruncationPolicy::for_thermal(2.0).max_dim);
    for (double nbar : kBsNbars) {
        const FockDensity rho_in =
            fock::thermal_state(nbar, TruncationPolicy::for_thermal(nbar));
        for (double r : kBsRefl) {
            const double theta = std::asin(std::sqrt(r));
            for (double eta : kBsEtas) {
                for (double ps : kBsPs) {
                    const bs::ThermalParams p{nbar, r, eta, ps};
                    const auto [cond, p_nd] = adder.run(rho_in, theta, eta, ps);
                    const double d0 = bs::thermal_dm(p, 0);
                    auto desc = [&](int m) {
                        return [&, m] {
                            return tuple_desc({{"nbar", nbar},
                                               {"R", r},
                                               {"eta", eta},
                                               {"ps", ps},
                                               {"m", double(m)}});
                        };
                    };
                    s.observe(rel_err(d0, p_nd), desc(0));
                    for (int m = 1; m <= 4; ++m)
                        s.observe(rel_err(bs::thermal_dm(p, m) / d0,
                                          fock::normal_moment(cond, m, m)),
                                  desc(m));
                }
            }
        }
    }
    return s.finish();
}

SuiteResult bs_reduction_suite(double tol) {
    Suite s("bs-reduction-to-pure", tol);
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
        for (double r : kBsRefl) {
            const bs::CoherentParams p{alpha, r, 1.0, 1.0};
            const double beta = alpha * std::sqrt(1.0 - r);
            const analytic::SacsParams pure{beta};
            for (int m = 1; m <= 4; ++m) {
                auto desc = [&] {
                    return tuple_desc({{"alpha", alpha}, {"R", r}, {"m", double(m)}});
                };
                s.observe(rel_err(bs::moment_a(p, m), analytic::sacs_moment_a(pure, m)), desc);
                s.observe(rel_err(bs::moment_nm(p, m), analytic::sacs_moment_nm(pure, m)), desc);
            }
        }
    }
    for (double nbar : {0.3, 1.0, 2.0}) {
        for (double r : kBsRefl) {
            const bs::ThermalParams p{nbar, r, 1.0, 1.0};
            // The conditioned thermal input is exactly a SATS of the
            // reweighted, transmitted mean photon number T nbar / (1 + R nbar).
            const double nbar_eff = (1.0 - r) * nbar / (1.0 + r * nbar);
            const analytic::SatsParams pure{nbar_eff};
            const double d0 = bs::thermal_dm(p, 0);
            for (int m = 1; m <= 4; ++m) {
                s.observe(rel_err(bs::thermal_dm(p, m) / d0, analytic::sats_moment_nm(pure, m)),
                          [&] { return tuple_desc({{"nbar", nbar}, {"R", r}, {"m", double(m)}}); });
            }
        }
    }
    return s.finish();
}

constexpr double kNdpaEtas[] = {0.1, 0.3, 0.62, 1.0};

SuiteResult ndpa_scaling_suite(double tol) {
    Suite s("ndpa-loss-scaling-vs-oracle", tol);
    auto compare = [&](const witness::MomentSet& closed, const witness::MomentSet& oracle,
                       auto desc) {
        s.observe(rel_err(closed.n_m, oracle.n_m), desc);
        s.observe(rel_err(closed.n_2m, oracle.n_2m), desc);
        s.observe(rel_err(closed.anti_m, oracle.anti_m), desc);
        s.observe(std::abs(closed.a_m - oracle.a_m) / std::max(1e-30, std::abs(oracle.a_m) + 1.0),
                  desc);
        s.observe(std::abs(closed.a2m - oracle.a2m) / std::max(1e-30, std::abs(oracle.a2m) + 1.0),
                  desc);
    };
    for (double alpha : {0.6, 1.2, 2.0, 2.8}) {
        const FockDensity ideal = oracle_sacs(alpha);
        const analytic::SacsParams pure{alpha};
        for (double eta : kNdpaEtas) {
            const FockDensity lossy = fock::loss_channel(ideal, eta);
            for (int m = 1; m <= 5; ++m) {
                std::vector<double> ladder(m + 1);
                for (int q = 0; q <= m; ++q) ladder[q] = analytic::sacs_moment_nm(pure, q);
                const witness::MomentSet closed =
                    ndpa::scaled_moments(analytic::sacs_moment_set(pure, m), ladder, eta);
                compare(closed, fock::extract_moment_set(lossy, m), [&] {
                    return tuple_desc({{"alpha", alpha}, {"eta", eta}, {"m", double(m)}});
                });
            }
        }
    }
    for (double nbar : {0.3, 0.8, 1.5}) {
        const FockDensity ideal = oracle_sats(nbar);
        const analytic::SatsParams pure{nbar};
        for (double eta : kNdpaEtas) {
            const FockDensity lossy = fock::loss_channel(ideal, eta);
            for (int m = 1; m <= 5; ++m) {
                std::vector<double> ladder(m + 1);
                for (int q = 0; q <= m; ++q) ladder[q] = analytic::sats_moment_nm(pure, q);
                const witness::MomentSet closed =
                    ndpa::scaled_moments(analytic::sats_moment_set(pure, m), ladder, eta);
                compare(closed, fock::extract_moment_set(lossy, m), [&] {
                    return tuple_desc({{"nbar", nbar}, {"eta", eta}, {"m", double(m)}});
                });
            }
        }
    }
    return s.finish();
}

SuiteResult ndpa_invariance_suite(double tol) {
    Suite s("ndpa-q2-eta-invariance", tol);
    for (double alpha : {0.7, 1.3, 2.4}) {
        const FockDensity ideal = oracle_sacs(alpha);
        for (int m = 1; m <= 5; ++m) {
            const ndpa::CoherentParams ref{alpha, 1.0};
            const double v_ref = ndpa::q2(ref, m).value;
            double o_ref = 0.0;
            bool have_ref = false;
            for (double eta : kNdpaEtas) {
                auto desc = [&] {
                    return tuple_desc({{"alpha", alpha}, {"eta", eta}, {"m", double(m)}});
                };
                s.observe(std::abs(ndpa::q2(ndpa::CoherentParams{alpha, eta}, m).value - v_ref),
                          desc);
                const double o =
                    witness::q2(fock::extract_moment_set(fock::loss_channel(ideal, eta), m)).value;
                if (!have_ref) {
                    o_ref = o;
                    have_ref = true;
                }
                s.observe(std::abs(o - o_ref), desc);
            }
        }
    }
    for (double nbar : {0.4, 0.9, 1.8}) {
        const FockDensity ideal = oracle_sats(nbar);
        for (int m = 1; m <= 5; ++m) {
            const double v_ref = ndpa::q2(ndpa::ThermalParams{nbar, 1.0}, m).value;
            double o_ref = 0.0;
            bool have_ref = false;
            for (double eta : kNdpaEtas) {
                auto desc = [&] {
                    return tuple_desc({{"nbar", nbar}, {"eta", eta}, {"m", double(m)}});
                };
                s.observe(std::abs(ndpa::q2(ndpa::ThermalParams{nbar, eta}, m).value - v_ref),
                          desc);
                const double o =
                    witness::q2(fock::extract_moment_set(fock::loss_channel(ideal, eta), m)).value;
                if (!have_ref) {
                    o_ref = o;
                    have_ref = true;
                }
                s.observe(std::abs(o - o_ref), desc);
            }
        }
    }
    return s.finish();
}

SuiteResult reorder_identity_suite(double tol, std::mt19937_64& eng) {
    Suite s("reorder-identity-random-states", tol);
    for (int i = 0; i < 500; ++i) {
        const int dim = 2 + static_cast<int>(eng() % 15); // 2..16
        const Eigen::VectorXcd psi = random_pure_state(dim, eng);
        const TruncationPolicy policy{dim, 1.0 - 1e-12};
        const FockDensity rho(psi * psi.adjoint(), policy);
        for (int m = 1; m <= 4; ++m) {
            std::vector<double> ladder(m + 1);
            for (int p = 0; p <= m; ++p) ladder[p] = fock::normal_moment(rho, p, p).real();
            const double direct = fock::antinormal_moment(rho, m);
            const double via_normal = fock::antinormal_from_normal(ladder, m);
            s.observe(std::abs(via_normal - direct) / std::max(1.0, std::abs(direct)),
                      [&] { return tuple_desc({{"state", double(i)}, {"m", double(m)}}); });
        }
    }
    return s.finish();
}

SuiteResult witness_bounds_suite(double tol, std::mt19937_64& eng) {
    Suite s("witness-floor-random-states", tol);
    for (int i = 0; i < 500; ++i) {
        const int dim = 2 + static_cast<int>(eng() % 15);
        const Eigen::VectorXcd psi = random_pure_state(dim, eng);
        const TruncationPolicy policy{dim, 1.0 - 1e-12};
        const FockDensity rho(psi * psi.adjoint(), policy);
        for (int m = 1; m <= 4; ++m) {
            const witness::MomentSet ms = fock::extract_moment_set(rho, m);
            auto desc = [&] { return tuple_desc({{"state", double(i)}, {"m", double(m)}}); };
            const auto r1 = witness::q1_opt(ms);
            if (r1.defined) s.observe(std::max(0.0, -(1.0 + r1.value)), desc);
            const auto r2 = witness::q2(ms);
            if (r2.defined) s.observe(std::max(0.0, -(1.0 + r2.value)), desc);
        }
    }
    return s.finish();
}

SuiteResult classical_nonnegativity_suite(double tol) {
    Suite s("classical-nonnegativity", tol);
    using detail::factorial_u64;
    using detail::ipow;
    using detail::reorder_coeff_u64;
    // Coherent states: <a^dag^p a^q> = alpha^(p+q) for real alpha.
    for (int k = 1; k <= 30; ++k) {
        const double alpha = k / 10.0;
        for (int m = 1; m <= 5; ++m) {
            double anti = 0.0;
            for (int p = 0; p <= m; ++p)
                anti += double(reorder_coeff_u64(m, p)) * ipow(alpha, 2 * p);
            const witness::MomentSet ms{m,           ipow(alpha, m),     ipow(alpha, 2 * m),
                                        ipow(alpha, 2 * m), ipow(alpha, 4 * m), anti};
            auto desc = [&] { return tuple_desc({{"alpha", alpha}, {"m", double(m)}}); };
            s.observe(std::max(0.0, -witness::q1_opt(ms).value), desc);
            s.observe(std::max(0.0, -witness::q2(ms).value), desc);
        }
    }
    // Thermal states: <a^dag^p a^p> = p! nbar^p, phase symmetric.
    for (int k = 1; k <= 30; ++k) {
        const double nbar = k / 10.0;
        for (int m = 1; m <= 5; ++m) {
            double anti = 0.0;
            for (int p = 0; p <= m; ++p)
                anti += double(reorder_coeff_u64(m, p)) * double(factorial_u64(p)) * ipow(nbar, p);
            const witness::MomentSet ms{
                m, 0.0, 0.0, double(factorial_u64(m)) * ipow(nbar, m),
                double(factorial_u64(2 * m)) * ipow(nbar, 2 * m), anti};
            auto desc = [&] { return tuple_desc({{"nbar", nbar}, {"m", double(m)}}); };
            s.observe(std::max(0.0, -witness::q1_opt(ms).value), desc);
            s.observe(std::max(0.0, -witness::q2(ms).value), desc);
        }
    }
    // Oracle-built classical states exercise the extraction path too.
    for (double alpha : {0.5, 1.0, 1.5}) {
        const FockDensity rho =
            fock::density_from(fock::coherent_state(alpha, TruncationPolicy::for_coherent(alpha)));
        for (int m = 1; m <= 4; ++m) {
            const witness::MomentSet ms = fock::extract_moment_set(rho, m);
            auto desc = [&] { return tuple_desc({{"alpha", alpha}, {"m", double(m)}}); };
            s.observe(std::max(0.0, -witness::q1_opt(ms).value), desc);
            s.observe(std::max(0.0, -witness::q2(ms).value), desc);
        }
    }
    for (double nbar : {0.5, 1.5}) {
        const FockDensity rho = fock::thermal_state(nbar, TruncationPolicy::for_thermal(nbar));
        for (int m = 1; m <= 4; ++m) {
            const witness::MomentSet ms = fock::extract_moment_set(rho, m);
            auto desc = [&] { return tuple_desc({{"nbar", nbar}, {"m", double(m)}}); };
            s.observe(std::max(0.0, -witness::q1_opt(ms).value), desc);
            s.observe(std::max(0.0, -witness::q2(ms).value), desc);
        }
    }
    return s.finish();
}

SuiteResult witness_consistency_suite(double tol) {
    Suite s("witness-consistency-closed-vs-oracle", tol);
    for (double alpha : {0.5, 1.5, 2.5}) {
        const FockDensity rho = oracle_sacs(alpha);
        const analytic::SacsParams p{alpha};
        for (int m = 1; m <= 4; ++m) {
            auto desc = [&] { return tuple_desc({{"alpha", alpha}, {"m", double(m)}}); };
            const witness::MomentSet closed = analytic::sacs_moment_set(p, m);
            const witness::MomentSet oracle = fock::extract_moment_set(rho, m);
            s.observe(rel_err(witness::q1_opt(closed).value, witness::q1_opt(oracle).value), desc);
            s.observe(rel_err(witness::q2(closed).value, witness::q2(oracle).value), desc);
        }
    }
    for (double nbar : {0.4, 1.2}) {
        const FockDensity rho = oracle_sats(nbar);
        const analytic::SatsParams p{nbar};
        for (int m = 1; m <= 4; ++m) {
            s.observe(rel_err(witness::q2(analytic::sats_moment_set(p, m)).value,
                              witness::q2(fock::extract_moment_set(rho, m)).value),
                      [&] { return tuple_desc({{"nbar", nbar}, {"m", double(m)}}); });
        }
    }
    for (double alpha : {1.0, 2.0}) {
        const FockDensity rho_in =
            fock::density_from(fock::coherent_state(alpha, TruncationPolicy::for_coherent(alpha)));
        const bs::CoherentParams p{alpha, 0.4, 0.6, 0.7};
        const auto [cond, p_nd] = fock::heralded_photon_add(rho_in, p.theta(), p.eta, p.p_s);
        for (int m = 1; m <= 3; ++m) {
            auto desc = [&] { return tuple_desc({{"alpha", alpha}, {"m", double(m)}}); };
            const witness::MomentSet closed = bs::moment_set_coherent(p, m);
            const witness::MomentSet oracle = fock::extract_moment_set(cond, m);
            s.observe(rel_err(witness::q1_opt(closed).value, witness::q1_opt(oracle).value), desc);
            s.observe(rel_err(witness::q2(closed).value, witness::q2(oracle).value), desc);
        }
    }
    return s.finish();
}

SuiteResult fock_invariants_suite(double tol, std::mt19937_64& eng) {
    Suite s("fock-invariants", tol);
    const TruncationPolicy small{12, 1.0 - 1e-12};

    // Beam splitter inverse and unitarity.
    {
        const Eigen::VectorXcd psi1 = random_pure_state(12, eng);
        const Eigen::VectorXcd psi2 = random_pure_state(12, eng);
        const FockDensity r1(psi1 * psi1.adjoint(), small);
        const FockDensity r2(psi2 * psi2.adjoint(), small);
        const auto joint = fock::tensor_product(r1, r2);
        for (double theta : {0.3, 1.1}) {
            const auto fwd = fock::beam_splitter_apply(joint, theta);
            const auto back = fock::beam_splitter_apply(fwd, -theta);
            const double dev = (back.matrix() - joint.matrix()).cwiseAbs().maxCoeff();
            s.observe(dev, [&] { return tuple_desc({{"theta", theta}}); });
            const double herm = (fwd.matrix() - fwd.matrix().adjoint()).cwiseAbs().maxCoeff();
            s.observe(herm, [&] { return tuple_desc({{"theta", theta}}); });
        }
    }
    // eta = 0 no-click probability is exactly 1 and conditioning reduces.
    {
        const Eigen::VectorXcd psi1 = random_pure_state(10, eng);
        const TruncationPolicy p10{10, 1.0 - 1e-12};
        const FockDensity r1(psi1 * psi1.adjoint(), p10);
        const FockDensity r2 = fock::thermal_state(0.4, TruncationPolicy{16, 1e-6});
        const auto joint = fock::tensor_product(r1, r2);
        const auto [cond, p_nd] = fock::condition_no_click(joint, 0.0);
        s.observe(std::abs(p_nd - 1.0), [] { return std::string("eta=0"); });
        const auto reduced = fock::reduce_mode1(joint);
        s.observe((cond.matrix() - reduced.matrix()).cwiseAbs().maxCoeff(),
                  [] { return std::string("eta=0 reduced"); });
    }
    // Loss channel composition and moment scaling.
    {
        const Eigen::VectorXcd psi = random_pure_state(14, eng);
        const TruncationPolicy p14{14, 1.0 - 1e-12};
        const FockDensity rho(psi * psi.adjoint(), p14);
        const auto once = fock::loss_channel(fock::loss_channel(rho, 0.8), 0.6);
        const auto direct = fock::loss_channel(rho, 0.48);
        s.observe((once.matrix() - direct.matrix()).cwiseAbs().maxCoeff(),
                  [] { return std::string("loss composition"); });
        for (int m = 1; m <= 4; ++m) {
            const double scaled = std::pow(0.7, m) * fock::normal_moment(rho, m, m).real();
            const double lossy = fock::normal_moment(fock::loss_channel(rho, 0.7), m, m).real();
            s.observe(rel_err(lossy, scaled),
                      [&] { return tuple_desc({{"m", double(m)}}); });
        }
    }
    // Pipeline equals the dense tensor->unitary->POVM composition.
    {
        const FockDensity rho_in =
            fock::density_from(fock::coherent_state(0.9, TruncationPolicy{14, 1e-9}));
        const FockDensity source(
            [] {
                fock::CMatrix m = fock::CMatrix::Zero(15, 15);
                m(0, 0) = 0.3;
                m(1, 1) = 0.7;
                return m;
            }(),
            TruncationPolicy{15, 1e-9});
        const auto joint = fock::tensor_product(rho_in, source);
        const double theta = std::asin(std::sqrt(0.45));
        const auto mixed = fock::beam_splitter_apply(joint, theta);
        const auto [cond_dense, p_dense] = fock::condition_no_click(mixed, 0.55);
        const auto [cond_pipe, p_pipe] = fock::heralded_photon_add(rho_in, theta, 0.55, 0.7);
        s.observe(std::abs(p_dense - p_pipe), [] { return std::string("pipeline p_nd"); });
        const int d = cond_dense.dim();
        const double dev =
            (cond_dense.matrix() - cond_pipe.matrix().topLeftCorner(d, d)).cwiseAbs().maxCoeff();
        s.observe(dev, [] { return std::string("pipeline state"); });
    }
    return s.finish();
}

} // namespace

double normal_deviate(std::mt19937_64& eng) {
    // Box-Muller on explicit 53-bit uniforms; no library distribution so the
    // stream is identical everywhere.
    const double u1 = 1.0 - static_cast<double>(eng() >> 11) * 0x1.0p-53; // (0, 1]
    const double u2 = static_cast<double>(eng() >> 11) * 0x1.0p-53;       // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::VectorXcd random_pure_state(int dim, std::mt19937_64& eng) {
    Eigen::VectorXcd psi(dim);
    for (int n = 0; n < dim; ++n) psi(n) = std::complex<double>(normal_deviate(eng), normal_deviate(eng));
    psi /= psi.norm();
    return psi;
}

Report run_all(const Options& opts) {
    Report report;
    report.opts = opts;
    std::mt19937_64 eng(opts.seed);
    const double tol = opts.tolerance;

    report.suites.push_back(sacs_moments_suite(tol));
    report.suites.push_back(sats_moments_suite(tol));
    report.suites.push_back(sats_phase_symmetry_suite(tol));
    report.suites.push_back(bs_coherent_suite(tol));
    report.suites.push_back(bs_thermal_suite(tol));
    report.suites.push_back(bs_reduction_suite(tol));
    report.suites.push_back(ndpa_scaling_suite(tol));
    report.suites.push_back(ndpa_invariance_suite(tol));
    report.suites.push_back(reorder_identity_suite(tol, eng));
    report.suites.push_back(witness_bounds_suite(tol, eng));
    report.suites.push_back(classical_nonnegativity_suite(tol));
    report.suites.push_back(witness_consistency_suite(tol));
    report.suites.push_back(fock_invariants_suite(tol, eng));

    report.all_pass = true;
    for (const auto& suite : report.suites)
        if (!suite.pass) report.all_pass = false;
    return report;
}

void print(const Report& report, std::ostream& os) {
    int passed = 0;
    for (const auto& s : report.suites) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-38s points=%-6d max_err=%.3e  %s",
                      s.name.c_str(), s.points, s.max_err, s.pass ? "PASS" : "FAIL");
        os << line << '\n';
        for (const auto& f : s.failures) os << "    at " << f << '\n';
        if (s.pass) ++passed;
    }
    char tail[160];
    std::snprintf(tail, sizeof(tail), "verify: %d/%d suites passed (tolerance=%.3e, seed=%llu)",
                  passed, static_cast<int>(report.suites.size()), report.opts.tolerance,
                  static_cast<unsigned long long>(report.opts.seed));
    os << tail << '\n';
}

} // namespace paqs::verify
