#include "paqs/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "paqs/analytic.hpp"
#include "paqs/bs_scheme.hpp"
#include "paqs/ndpa.hpp"

namespace paqs::sweep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSignDeadBand = 1e-12;

struct SchemeTraits {
    bool coherent_family;          // parameterized by alpha (else nbar)
    bool has_reflectance;
    bool has_eta;
    bool has_ps;
    bool q1_available;
    bool pnd_available;
};

SchemeTraits traits(Scheme s) {
    switch (s) {
        case Scheme::pure_sacs:     return {true, false, false, false, true, false};
        case Scheme::pure_sats:     return {false, false, false, false, false, false};
        case Scheme::bs_coherent:   return {true, true, true, true, true, true};
        case Scheme::bs_thermal:    return {false, true, true, true, false, true};
        case Scheme::ndpa_coherent: return {true, false, true, false, true, false};
        case Scheme::ndpa_thermal:  return {false, false, true, false, false, false};
    }
    throw InvalidParameter("unknown scheme");
}

bool name_valid_for(Scheme s, const std::string& name) {
    const SchemeTraits t = traits(s);
    if (name == "alpha") return t.coherent_family;
    if (name == "nbar_inv" || name == "nbar") return !t.coherent_family;
    if (name == "reflectance") return t.has_reflectance;
    if (name == "eta") return t.has_eta;
    if (name == "ps") return t.has_ps;
    return false;
}

double require(const std::optional<double>& v, const char* what) {
    if (!v) throw InvalidParameter(std::string("missing parameter: ") + what);
    return *v;
}

} // namespace

Scheme scheme_from_string(const std::string& name) {
    if (name == "pure-sacs") return Scheme::pure_sacs;
    if (name == "pure-sats") return Scheme::pure_sats;
    if (name == "bs-coherent") return Scheme::bs_coherent;
    if (name == "bs-thermal") return Scheme::bs_thermal;
    if (name == "ndpa-coherent") return Scheme::ndpa_coherent;
    if (name == "ndpa-thermal") return Scheme::ndpa_thermal;
    throw InvalidParameter("unknown scheme '" + name +
                           "' (expected pure-sacs, pure-sats, bs-coherent, bs-thermal, "
                           "ndpa-coherent or ndpa-thermal)");
}

WitnessKind witness_from_string(const std::string& name) {
    if (name == "q1") return WitnessKind::q1;
    if (name == "q2") return WitnessKind::q2;
    if (name == "pnd") return WitnessKind::pnd;
    throw InvalidParameter("unknown witness '" + name + "' (expected q1, q2 or pnd)");
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::pure_sacs: return "pure-sacs";
        case Scheme::pure_sats: return "pure-sats";
        case Scheme::bs_coherent: return "bs-coherent";
        case Scheme::bs_thermal: return "bs-thermal";
        case Scheme::ndpa_coherent: return "ndpa-coherent";
        case Scheme::ndpa_thermal: return "ndpa-thermal";
    }
    return "?";
}

std::string to_string(WitnessKind w) {
    switch (w) {
        case WitnessKind::q1: return "q1";
        case WitnessKind::q2: return "q2";
        case WitnessKind::pnd: return "pnd";
    }
    return "?";
}

std::vector<double> Axis::values() const {
    // stop is included when it lies within step/2 of the last grid node.
    const int count = static_cast<int>(std::floor((stop - start) / step + 0.5)) + 1;
    std::vector<double> v;
    v.reserve(std::max(count, 1));
    for (int i = 0; i < count; ++i) v.push_back(start + i * step);
    return v;
}

void SweepSpec::validate() const {
    static const char* axis_names[] = {"alpha", "nbar_inv", "reflectance", "eta", "ps"};
    for (const Axis* ax : {&axis1, &axis2}) {
        if (std::find(std::begin(axis_names), std::end(axis_names), ax->name) ==
            std::end(axis_names))
            throw InvalidParameter("axis name '" + ax->name +
                                   "' not one of alpha, nbar_inv, reflectance, eta, ps");
        if (!name_valid_for(scheme, ax->name))
            throw InvalidParameter("axis '" + ax->name + "' is not valid for scheme " +
                                   to_string(scheme));
        if (!(ax->step > 0.0)) throw InvalidParameter("axis '" + ax->name + "': step must be > 0");
        if (ax->stop < ax->start)
            throw InvalidParameter("axis '" + ax->name + "': stop must be >= start");
        if (ax->name == "nbar_inv" && !(ax->start > 0.0))
            throw InvalidParameter("axis 'nbar_inv' must start above 0");
    }
    if (axis1.name == axis2.name) throw InvalidParameter("axis1 and axis2 must differ");
    if (orders.empty()) throw InvalidParameter("orders must be nonempty");
    for (int m : orders)
        if (m < 1 || m > 8) throw InvalidParameter("orders must lie in 1..8");
    for (const auto& [name, value] : fixed) {
        if (!name_valid_for(scheme, name))
            throw InvalidParameter("fixed parameter '" + name + "' is not valid for scheme " +
                                   to_string(scheme));
        if (name == axis1.name || name == axis2.name)
            throw InvalidParameter("'" + name + "' is both an axis and a fixed parameter");
        (void)value;
    }
    switch (witness) {
        case WitnessKind::q1:
            if (!traits(scheme).q1_available)
                throw InvalidParameter("witness q1 is unavailable for scheme " + to_string(scheme) +
                                       " (the state is phase symmetric)");
            break;
        case WitnessKind::pnd:
            if (!traits(scheme).pnd_available)
                throw InvalidParameter("witness pnd is only defined for the beam-splitter schemes");
            break;
        case WitnessKind::q2: break;
    }
    // Completeness: evaluating the first grid point surfaces missing or
    // out-of-range parameters with the evaluator's own diagnostics.
    PointParams p;
    auto assign = [&](const std::string& name, double v) {
        if (name == "alpha") p.alpha = v;
        else if (name == "nbar") p.nbar = v;
        else if (name == "nbar_inv") p.nbar = 1.0 / v;
        else if (name == "reflectance") p.reflectance = v;
        else if (name == "eta") p.eta = v;
        else if (name == "ps") p.ps = v;
    };
    for (const auto& [name, value] : fixed) assign(name, value);
    assign(axis1.name, axis1.start);
    assign(axis2.name, axis2.start);
    try {
        evaluate_point(scheme, witness, orders, p);
    } catch (const UndefinedWitness&) {
    } catch (const DomainError&) {
    } catch (const ZeroProbability&) {
    } catch (const DegenerateGeometry&) {
    }
}

namespace {

PointDetail from_result(int m, const witness::WitnessResult& r, bool has_pnd, double p_nd) {
    PointDetail d;
    d.m = m;
    d.defined = r.defined;
    d.value = r.value;
    d.numerator = r.numerator;
    d.denominator = r.denominator;
    d.has_phase = (r.kind == witness::Kind::q1_opt || r.kind == witness::Kind::q1_phase);
    d.phase = r.phase;
    d.has_pnd = has_pnd;
    d.p_nd = p_nd;
    return d;
}

PointDetail undefined_detail(int m, bool has_pnd, double p_nd) {
    PointDetail d;
    d.m = m;
    d.defined = false;
    d.value = kNaN;
    d.has_pnd = has_pnd;
    d.p_nd = p_nd;
    return d;
}

} // namespace

std::vector<PointDetail> evaluate_point(Scheme scheme, WitnessKind witness_kind,
                                        std::span<const int> orders, const PointParams& params) {
    std::vector<PointDetail> out;
    out.reserve(orders.size());

    switch (scheme) {
        case Scheme::pure_sacs: {
            const analytic::SacsParams p{require(params.alpha, "alpha")};
            p.validate();
            for (int m : orders) {
                const witness::MomentSet ms = analytic::sacs_moment_set(p, m);
                out.push_back(from_result(
                    m, witness_kind == WitnessKind::q1 ? witness::q1_opt(ms) : witness::q2(ms),
                    false, kNaN));
            }
            break;
        }
        case Scheme::pure_sats: {
            const analytic::SatsParams p{require(params.nbar, "nbar")};
            p.validate();
            for (int m : orders) {
                const witness::MomentSet ms = analytic::sats_moment_set(p, m);
                out.push_back(from_result(m, witness::q2(ms), false, kNaN));
            }
            break;
        }
        case Scheme::bs_coherent: {
            const bs::CoherentParams p{require(params.alpha, "alpha"),
                                       require(params.reflectance, "reflectance"),
                                       require(params.eta, "eta"), require(params.ps, "ps")};
            p.validate();
            const double p_nd = bs::pnd_coherent(p);
            for (int m : orders) {
                if (witness_kind == WitnessKind::pnd) {
                    PointDetail d = undefined_detail(m, true, p_nd);
                    d.defined = true;
                    d.value = p_nd;
                    out.push_back(d);
                    continue;
                }
                const witness::MomentSet ms = bs::moment_set_coherent(p, m);
                out.push_back(from_result(
                    m, witness_kind == WitnessKind::q1 ? witness::q1_opt(ms) : witness::q2(ms),
                    true, p_nd));
            }
            break;
        }
        case Scheme::bs_thermal: {
            const bs::ThermalParams p{require(params.nbar, "nbar"),
                                      require(params.reflectance, "reflectance"),
                                      require(params.eta, "eta"), require(params.ps, "ps")};
            p.validate();
            try {
                const auto rows = bs::witnesses_thermal(p, orders);
                for (const auto& row : rows) {
                    if (witness_kind == WitnessKind::pnd) {
                        PointDetail d = undefined_detail(row.m, true, row.p_nd);
                        d.defined = true;
                        d.value = row.p_nd;
                        out.push_back(d);
                    } else {
                        out.push_back(from_result(row.m, row.q2, true, row.p_nd));
                    }
                }
            } catch (const ZeroProbability&) {
                for (int m : orders) out.push_back(undefined_detail(m, true, kNaN));
            }
            break;
        }
        case Scheme::ndpa_coherent: {
            const ndpa::CoherentParams p{require(params.alpha, "alpha"),
                                         require(params.eta, "eta")};
            p.validate();
            for (int m : orders) {
                if (witness_kind == WitnessKind::q1) {
                    out.push_back(from_result(m, ndpa::q1(p, m), false, kNaN));
                } else {
                    try {
                        out.push_back(from_result(m, ndpa::q2(p, m), false, kNaN));
                    } catch (const DomainError&) {
                        out.push_back(undefined_detail(m, false, kNaN));
                    }
                }
            }
            break;
        }
        case Scheme::ndpa_thermal: {
            const ndpa::ThermalParams p{require(params.nbar, "nbar"), require(params.eta, "eta")};
            p.validate();
            for (int m : orders) out.push_back(from_result(m, ndpa::q2(p, m), false, kNaN));
            break;
        }
    }
    return out;
}

namespace {

GridRow to_row(double a1, double a2, const PointDetail& d) {
    GridRow row;
    row.axis1_value = a1;
    row.axis2_value = a2;
    row.m = d.m;
    row.defined = d.defined;
    row.witness_value = d.defined ? d.value : kNaN;
    row.p_nd = d.has_pnd ? d.p_nd : kNaN;
    if (!d.defined || std::abs(d.value) < kSignDeadBand)
        row.sign = 0;
    else
        row.sign = d.value < 0.0 ? -1 : 1;
    return row;
}

} // namespace

std::vector<GridRow> run(const SweepSpec& spec) {
    spec.validate();
    const std::vector<double> v1 = spec.axis1.values();
    const std::vector<double> v2 = spec.axis2.values();
    const std::size_t n_points = v1.size() * v2.size();
    const std::size_t n_orders = spec.orders.size();
    std::vector<GridRow> rows(n_points * n_orders);

    PointParams base;
    for (const auto& [name, value] : spec.fixed) {
        if (name == "alpha") base.alpha = value;
        else if (name == "nbar") base.nbar = value;
        else if (name == "nbar_inv") base.nbar = 1.0 / value;
        else if (name == "reflectance") base.reflectance = value;
        else if (name == "eta") base.eta = value;
        else if (name == "ps") base.ps = value;
    }

    auto eval_range = [&](std::size_t first, std::size_t stride, std::exception_ptr& err) {
        try {
            for (std::size_t pt = first; pt < n_points; pt += stride) {
                const double a1 = v1[pt / v2.size()];
                const double a2 = v2[pt % v2.size()];
                PointParams p = base;
                auto assign = [&](const std::string& name, double v) {
                    if (name == "alpha") p.alpha = v;
                    else if (name == "nbar_inv") p.nbar = 1.0 / v;
                    else if (name == "reflectance") p.reflectance = v;
                    else if (name == "eta") p.eta = v;
                    else if (name == "ps") p.ps = v;
                };
                assign(spec.axis1.name, a1);
                assign(spec.axis2.name, a2);
                const auto details = evaluate_point(spec.scheme, spec.witness, spec.orders, p);
                for (std::size_t k = 0; k < n_orders; ++k)
                    rows[pt * n_orders + k] = to_row(a1, a2, details[k]);
            }
        } catch (...) {
            if (!err) err = std::current_exception();
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    const std::size_t n_threads =
        spec.threads > 0 ? static_cast<std::size_t>(spec.threads)
                         : std::max<std::size_t>(1, std::min<std::size_t>(hw ? hw : 1, n_points));
    if (n_threads <= 1) {
        std::exception_ptr err;
        eval_range(0, 1, err);
        if (err) std::rethrow_exception(err);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t)
            pool.emplace_back(eval_range, t, n_threads, std::ref(errs[t]));
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }
    return rows;
}

namespace {

void format_double(std::ostream& os, double v) {
    if (std::isnan(v)) {
        os << "nan";
        return;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

} // namespace

void write_csv(const SweepSpec& spec, std::span<const GridRow> rows, std::ostream& os) {
    os << "axis1,axis2,m,witness,value,p_nd,defined,sign\n";
    const std::string wname = to_string(spec.witness);
    for (const GridRow& r : rows) {
        format_double(os, r.axis1_value);
        os << ',';
        format_double(os, r.axis2_value);
        os << ',' << r.m << ',' << wname << ',';
        format_double(os, r.defined ? r.witness_value : kNaN);
        os << ',';
        format_double(os, r.p_nd);
        os << ',' << (r.defined ? 1 : 0) << ',' << r.sign << '\n';
    }
}

void run_to_file(const SweepSpec& spec) {
    const std::vector<GridRow> rows = run(spec);
    std::ostringstream body;
    write_csv(spec, rows, body);
    std::ofstream ofs(spec.output_path, std::ios::binary | std::ios::trunc);
    if (!ofs) throw IoError("cannot open output path '" + spec.output_path + "'");
    ofs << body.str();
    ofs.flush();
    if (!ofs.good()) throw IoError("failed writing output path '" + spec.output_path + "'");
}

} // namespace paqs::sweep
