#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paqs/errors.hpp"
#include "paqs/witness.hpp"

// Grid evaluation of the witness families over two parameter axes, written as
// deterministic CSV. All scheme evaluations go through the closed forms; the
// brute-force cross-checks live in paqs::verify.
namespace paqs::sweep {

enum class Scheme { pure_sacs, pure_sats, bs_coherent, bs_thermal, ndpa_coherent, ndpa_thermal };
enum class WitnessKind { q1, q2, pnd };

Scheme scheme_from_string(const std::string& name);       // throws InvalidParameter
WitnessKind witness_from_string(const std::string& name); // throws InvalidParameter
std::string to_string(Scheme s);
std::string to_string(WitnessKind w);

// Axis names: alpha, nbar_inv, reflectance, eta, ps.
struct Axis {
    std::string name;
    double start = 0;
    double stop = 0;
    double step = 1;

    // start, start+step, ...; stop is included when within step/2.
    std::vector<double> values() const;
};

struct SweepSpec {
    Scheme scheme = Scheme::pure_sacs;
    WitnessKind witness = WitnessKind::q2;
    std::vector<int> orders{1};
    Axis axis1, axis2;
    std::map<std::string, double> fixed; // names as for axes, plus "nbar"
    std::string output_path;
    int threads = 0; // 0: hardware concurrency

    void validate() const; // throws InvalidParameter naming the violation
};

struct GridRow {
    double axis1_value = 0;
    double axis2_value = 0;
    int m = 1;
    double witness_value = 0; // NaN sentinel when !defined
    double p_nd = 0;          // NaN for schemes without a heralding probability
    bool defined = false;
    int sign = 0; // dead band |value| < 1e-12 -> 0
};

// Resolved single-point parameters for one scheme.
struct PointParams {
    std::optional<double> alpha, nbar, reflectance, eta, ps;
};

// Everything cmd_witness prints for one order at one point.
struct PointDetail {
    int m = 1;
    bool defined = false;
    double value = 0;
    double numerator = 0;
    double denominator = 0;
    bool has_phase = false;
    double phase = 0;
    bool has_pnd = false;
    double p_nd = 0;
};

// Validates params against the scheme and evaluates the requested witness at
// each order. Witness/scheme mismatches (Q1 for thermal schemes, P_nd outside
// the beam-splitter schemes) throw InvalidParameter; per-order 0/0 forms come
// back with defined = false.
std::vector<PointDetail> evaluate_point(Scheme scheme, WitnessKind witness,
                                        std::span<const int> orders, const PointParams& params);

// Rows in row-major (axis1, axis2, m) order, computed by a worker pool over
// grid points and gathered deterministically.
std::vector<GridRow> run(const SweepSpec& spec);

// Header axis1,axis2,m,witness,value,p_nd,defined,sign; floats at 17
// significant digits; undefined values as the literal `nan`.
void write_csv(const SweepSpec& spec, std::span<const GridRow> rows, std::ostream& os);

// run + write to spec.output_path; throws IoError when the path is unwritable.
void run_to_file(const SweepSpec& spec);

} // namespace paqs::sweep
