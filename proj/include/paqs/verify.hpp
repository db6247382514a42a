#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

// Every closed-form-vs-brute-force cross-check and invariant suite, runnable
// from the CLI (`verify`) and from the acceptance tests. All suites are
// deterministic given the seed; reports are byte-stable across runs.
namespace paqs::verify {

struct Options {
    double tolerance = 1e-9;
    std::uint64_t seed = 12345;
};

struct SuiteResult {
    std::string name;
    int points = 0;
    double max_err = 0; // relative where a reference scale exists, else absolute
    bool pass = false;
    std::vector<std::string> failures; // offending parameter tuples (capped)
};

struct Report {
    Options opts;
    std::vector<SuiteResult> suites;
    bool all_pass = false;
};

Report run_all(const Options& opts);
void print(const Report& report, std::ostream& os);

// Deterministic normal deviates via Box-Muller on top of mt19937_64, so the
// seeded suites reproduce across platforms and standard libraries.
double normal_deviate(std::mt19937_64& eng);
Eigen::VectorXcd random_pure_state(int dim, std::mt19937_64& eng);

} // namespace paqs::verify
