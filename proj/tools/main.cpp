#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "paqs/errors.hpp"
#include "paqs/sweep.hpp"
#include "paqs/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitIoFailure = 3;

std::vector<int> parse_orders(const std::string& text) {
    std::vector<int> orders;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const int m = std::stoi(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            orders.push_back(m);
        } catch (const std::exception&) {
            throw paqs::InvalidParameter("orders: '" + item + "' is not an integer");
        }
    }
    if (orders.empty()) throw paqs::InvalidParameter("orders: list is empty");
    return orders;
}

paqs::sweep::Axis parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw paqs::InvalidParameter("axis: expected name=start:stop:step, got '" + text + "'");
    paqs::sweep::Axis axis;
    axis.name = text.substr(0, eq);
    const std::string rest = text.substr(eq + 1);
    double vals[3];
    std::size_t begin = 0;
    for (int i = 0; i < 3; ++i) {
        const auto colon = (i < 2) ? rest.find(':', begin) : rest.size();
        if (colon == std::string::npos)
            throw paqs::InvalidParameter("axis: expected name=start:stop:step, got '" + text + "'");
        try {
            std::size_t pos = 0;
            const std::string field = rest.substr(begin, colon - begin);
            vals[i] = std::stod(field, &pos);
            if (pos != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw paqs::InvalidParameter("axis: bad number in '" + text + "'");
        }
        begin = colon + 1;
    }
    axis.start = vals[0];
    axis.stop = vals[1];
    axis.step = vals[2];
    return axis;
}

struct SchemeFlags {
    std::optional<double> alpha, nbar, reflectance, eta, ps;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "coherent amplitude (alpha >= 0)");
        cmd->add_option("--nbar", nbar, "thermal mean photon number (nbar > 0)");
        cmd->add_option("--reflectance", reflectance, "beam-splitter reflectance R = sin^2(theta)");
        cmd->add_option("--eta", eta, "detector / overall efficiency");
        cmd->add_option("--ps", ps, "single-photon purity of the source");
    }

    paqs::sweep::PointParams to_params() const {
        return {alpha, nbar, reflectance, eta, ps};
    }

    std::string describe() const {
        std::ostringstream os;
        auto put = [&](const char* name, const std::optional<double>& v) {
            if (v) {
                char buf[48];
                std::snprintf(buf, sizeof(buf), " %s=%.17g", name, *v);
                os << buf;
            }
        };
        put("alpha", alpha);
        put("nbar", nbar);
        put("reflectance", reflectance);
        put("eta", eta);
        put("ps", ps);
        return os.str();
    }
};

void print_value(std::ostream& os, const char* name, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), " %s=%.17g", name, v);
    os << buf;
}

int run_witness(const std::string& scheme_name, const std::string& witness_name,
                const std::string& orders_text, const SchemeFlags& flags) {
    const auto scheme = paqs::sweep::scheme_from_string(scheme_name);
    const auto witness = paqs::sweep::witness_from_string(witness_name);
    const auto orders = parse_orders(orders_text);
    if (witness == paqs::sweep::WitnessKind::q1 &&
        (scheme == paqs::sweep::Scheme::pure_sats || scheme == paqs::sweep::Scheme::bs_thermal ||
         scheme == paqs::sweep::Scheme::ndpa_thermal))
        throw paqs::InvalidParameter(
            "witness q1 is unavailable for thermal-input schemes (phase-symmetric states)");
    if (witness == paqs::sweep::WitnessKind::pnd && scheme != paqs::sweep::Scheme::bs_coherent &&
        scheme != paqs::sweep::Scheme::bs_thermal)
        throw paqs::InvalidParameter("witness pnd is only defined for the beam-splitter schemes");

    const auto details =
        paqs::sweep::evaluate_point(scheme, witness, orders, flags.to_params());
    std::cout << "scheme=" << scheme_name << flags.describe() << " witness=" << witness_name
              << '\n';
    for (const auto& d : details) {
        std::cout << "m=" << d.m;
        if (d.defined)
            print_value(std::cout, "value", d.value);
        else
            std::cout << " value=nan";
        std::cout << " defined=" << (d.defined ? 1 : 0);
        if (witness != paqs::sweep::WitnessKind::pnd) {
            print_value(std::cout, "numerator", d.numerator);
            print_value(std::cout, "denominator", d.denominator);
            if (d.has_phase) print_value(std::cout, "phase", d.phase);
        }
        if (d.has_pnd) print_value(std::cout, "p_nd", d.p_nd);
        std::cout << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher-order nonclassicality witnesses for single-photon-added light"};
    app.require_subcommand(1);

    // --- witness ---
    auto* witness_cmd =
        app.add_subcommand("witness", "evaluate witnesses at a single parameter point");
    std::string w_scheme, w_witness = "q2", w_orders = "1";
    SchemeFlags w_flags;
    witness_cmd->add_option("--scheme", w_scheme, "pure-sacs|pure-sats|bs-coherent|bs-thermal|ndpa-coherent|ndpa-thermal")
        ->required();
    witness_cmd->add_option("--witness", w_witness, "q1|q2|pnd");
    witness_cmd->add_option("--orders", w_orders, "comma-separated list of orders m (1..8)");
    w_flags.add_to(witness_cmd);
    witness_cmd->set_config("--config", "", "flat key=value config file; flags take precedence");

    // --- sweep ---
    auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep written as deterministic CSV");
    std::string s_scheme, s_witness = "q2", s_orders = "1", s_axis1, s_axis2, s_output;
    int s_threads = 0;
    SchemeFlags s_flags;
    sweep_cmd->add_option("--scheme", s_scheme, "scheme name")->required();
    sweep_cmd->add_option("--witness", s_witness, "q1|q2|pnd");
    sweep_cmd->add_option("--orders", s_orders, "comma-separated list of orders m (1..8)");
    sweep_cmd->add_option("--axis1", s_axis1, "name=start:stop:step")->required();
    sweep_cmd->add_option("--axis2", s_axis2, "name=start:stop:step")->required();
    sweep_cmd->add_option("--output", s_output, "CSV output path")->required();
    sweep_cmd->add_option("--threads", s_threads, "worker threads (0 = hardware)");
    s_flags.add_to(sweep_cmd);
    sweep_cmd->set_config("--config", "", "flat key=value config file; flags take precedence");

    // --- verify ---
    auto* verify_cmd =
        app.add_subcommand("verify", "run every closed-form-vs-oracle cross-check");
    double v_tol = 1e-9;
    std::uint64_t v_seed = 12345;
    verify_cmd->add_option("--tolerance", v_tol, "acceptance tolerance (default 1e-9)");
    verify_cmd->add_option("--seed", v_seed, "seed for the random-state suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    try {
        if (witness_cmd->parsed())
            return run_witness(w_scheme, w_witness, w_orders, w_flags);

        if (sweep_cmd->parsed()) {
            paqs::sweep::SweepSpec spec;
            spec.scheme = paqs::sweep::scheme_from_string(s_scheme);
            spec.witness = paqs::sweep::witness_from_string(s_witness);
            spec.orders = parse_orders(s_orders);
            spec.axis1 = parse_axis(s_axis1);
            spec.axis2 = parse_axis(s_axis2);
            spec.output_path = s_output;
            spec.threads = s_threads;
            auto put = [&](const char* name, const std::optional<double>& v) {
                if (v) spec.fixed[name] = *v;
            };
            put("alpha", s_flags.alpha);
            put("nbar", s_flags.nbar);
            put("reflectance", s_flags.reflectance);
            put("eta", s_flags.eta);
            put("ps", s_flags.ps);
            paqs::sweep::run_to_file(spec);
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            const auto report = paqs::verify::run_all({v_tol, v_seed});
            paqs::verify::print(report, std::cout);
            return report.all_pass ? kExitOk : kExitVerifyFailed;
        }
    } catch (const paqs::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIoFailure;
    } catch (const paqs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
