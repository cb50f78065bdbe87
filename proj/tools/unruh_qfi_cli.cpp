// Command-line front end: sweeps, peak finding, protocol simulation,
// Hawking conversion and the closed-form validation suite.
//
// Exit status: 0 success, 1 validation or numerical failure, 2 bad arguments.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "unruh_qfi/unruh_qfi.hpp"

namespace fs = std::filesystem;
using namespace unruh_qfi;

namespace {

constexpr const char* kOutputDirEnv = "UNRUH_QFI_OUTPUT_DIR";

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

double real_arg(const std::string& name, const std::string& text) {
    const auto v = parse_real(text);
    if (!v) throw ConfigError(0, "--" + name + ": cannot parse '" + text + "'");
    return *v;
}

/// --out wins; otherwise $UNRUH_QFI_OUTPUT_DIR/<default_name>; otherwise stdout.
std::optional<fs::path> resolve_output(const std::string& out, const std::string& default_name) {
    if (!out.empty()) return fs::path(out);
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') return fs::path(dir) / default_name;
    return std::nullopt;
}

template <typename Writer>
void emit(const std::optional<fs::path>& path, Writer&& write) {
    if (!path) {
        write(std::cout);
        return;
    }
    if (path->has_parent_path()) fs::create_directories(path->parent_path());
    std::ofstream f(*path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path->string() + " for writing");
    write(f);
}

void emit_json(const std::optional<fs::path>& path, const nlohmann::json& j) {
    emit(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

Model parse_model(const std::string& s) {
    if (s == "single") return Model::single;
    if (s == "two") return Model::two;
    throw ConfigError(0, "--model must be 'single' or 'two'");
}

struct CommonArgs {
    std::string model = "single";
    std::string omega = "1";
    std::string acceleration = "1";
    std::string mu = "0.01";
    std::string eta = "pi/2";
    std::string theta = "0";

    void attach(CLI::App* app, bool with_acceleration = true) {
        app->add_option("--model", model, "single | two")->capture_default_str();
        app->add_option("--omega", omega, "Detector gap (sets units)")->capture_default_str();
        if (with_acceleration) app->add_option("-a,--acceleration", acceleration, "Proper acceleration [omega]")->capture_default_str();
        app->add_option("--mu", mu, "Effective coupling")->capture_default_str();
        app->add_option("--eta", eta, "Single-detector probe angle (accepts pi/4 style)")->capture_default_str();
        app->add_option("--theta", theta, "Two-detector entanglement angle")->capture_default_str();
    }

    FixedParams fixed() const {
        return {real_arg("omega", omega), real_arg("acceleration", acceleration), real_arg("mu", mu), real_arg("eta", eta),
                real_arg("theta", theta)};
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Fisher information of Unruh temperature for Unruh-DeWitt detectors"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // sweep ------------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate QFI (and concurrence) along one parameter axis");
    CommonArgs sweep_args;
    sweep_args.attach(sweep_cmd);
    std::string sweep_axis = "acceleration";
    std::string sweep_min, sweep_max, sweep_scale = "natural", sweep_out;
    std::size_t sweep_points = 200;
    sweep_cmd->add_option("--axis", sweep_axis, "acceleration | eta | theta | mu")->capture_default_str();
    sweep_cmd->add_option("--min,--a-min", sweep_min, "Axis start");
    sweep_cmd->add_option("--max,--a-max", sweep_max, "Axis end");
    sweep_cmd->add_option("--points", sweep_points, "Grid points (>= 2)")->capture_default_str();
    sweep_cmd->add_option("--scale", sweep_scale, "natural | fig1 (x100)")->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "CSV path; metadata goes next to it as .json");

    // max --------------------------------------------------------------------
    auto* max_cmd = app.add_subcommand("max", "Locate the QFI peak over acceleration");
    CommonArgs max_args;
    max_args.attach(max_cmd, false);
    std::string max_a_min = "0.01", max_a_max = "20", max_over, max_out;
    std::size_t max_points = 33;
    max_cmd->add_option("--a-min", max_a_min, "Acceleration domain start")->capture_default_str();
    max_cmd->add_option("--a-max", max_a_max, "Acceleration domain end")->capture_default_str();
    max_cmd->add_option("--over", max_over, "Repeat over the probe angle grid [0, pi/2]: eta | theta");
    max_cmd->add_option("--points", max_points, "Angle grid points for --over")->capture_default_str();
    max_cmd->add_option("--out", max_out, "Output path");

    // protocol ---------------------------------------------------------------
    auto* proto_cmd = app.add_subcommand("protocol", "Monte Carlo simulation of the optimal estimation protocol");
    CommonArgs proto_args;
    proto_args.acceleration = "2*pi";
    proto_args.attach(proto_cmd);
    std::string proto_config, proto_out, proto_measurement = "sld";
    std::uint64_t proto_shots = 100000, proto_seed = 12345;
    proto_cmd->add_option("--config", proto_config, "Parameter file (key = value lines); overrides other flags")
        ->check(CLI::ExistingFile);
    proto_cmd->add_option("--shots", proto_shots, "Number of shots")->capture_default_str();
    proto_cmd->add_option("--seed", proto_seed, "RNG seed")->capture_default_str();
    proto_cmd->add_option("--measurement", proto_measurement, "sld | computational")->capture_default_str();
    proto_cmd->add_option("--out", proto_out, "Report path (JSON)");

    // hawking ----------------------------------------------------------------
    auto* hawk_cmd = app.add_subcommand("hawking", "Hawking temperature from mass or surface gravity");
    std::optional<double> hawk_mass, hawk_kappa, hawk_chi1, hawk_chi2;
    hawk_cmd->add_option("--mass", hawk_mass, "Schwarzschild mass (geometric units)");
    hawk_cmd->add_option("--kappa", hawk_kappa, "Surface gravity");
    hawk_cmd->add_option("--chi1", hawk_chi1, "Killing-field norm at r1");
    hawk_cmd->add_option("--chi2", hawk_chi2, "Killing-field norm at r2");

    // validate ---------------------------------------------------------------
    auto* val_cmd = app.add_subcommand("validate", "Check closed forms against the spectral oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*sweep_cmd) {
            SweepSpec spec;
            spec.model = parse_model(sweep_args.model);
            if (sweep_axis == "acceleration") spec.axis = Axis::acceleration;
            else if (sweep_axis == "eta") spec.axis = Axis::eta;
            else if (sweep_axis == "theta") spec.axis = Axis::theta;
            else if (sweep_axis == "mu") spec.axis = Axis::mu;
            else throw ConfigError(0, "--axis must be acceleration, eta, theta or mu");
            if (sweep_scale == "natural") spec.scale = OutputScale::natural;
            else if (sweep_scale == "fig1") spec.scale = OutputScale::fig1;
            else throw ConfigError(0, "--scale must be natural or fig1");
            const bool angle = spec.axis == Axis::eta || spec.axis == Axis::theta;
            const double default_lo = spec.axis == Axis::acceleration ? 0.1 : angle ? 0.0 : 0.001;
            const double default_hi = spec.axis == Axis::acceleration ? 20.0 : angle ? kHalfPi : 0.1;
            spec.min = sweep_min.empty() ? default_lo : real_arg("min", sweep_min);
            spec.max = sweep_max.empty() ? default_hi : real_arg("max", sweep_max);
            spec.n_points = sweep_points;
            spec.fixed = sweep_args.fixed();

            const SweepTable table = sweep(spec);
            const auto path = resolve_output(sweep_out, "sweep-" + to_string(spec.model) + "-" + to_string(spec.axis) + ".csv");
            emit(path, [&](std::ostream& os) { write_csv(os, table); });
            if (path) {
                fs::path meta = *path;
                meta.replace_extension(".json");
                emit_json(meta, sweep_metadata(table));
            }
            for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
            return kOk;
        }

        if (*max_cmd) {
            const Model model = parse_model(max_args.model);
            FixedParams fixed = max_args.fixed();
            const double lo = real_arg("a-min", max_a_min);
            const double hi = real_arg("a-max", max_a_max);
            if (!max_over.empty()) {
                if ((model == Model::single) != (max_over == "eta") || (max_over != "eta" && max_over != "theta"))
                    throw ConfigError(0, "--over must be eta for the single model and theta for the two model");
                const auto rows = max_curve(model, fixed, 0.0, kHalfPi, max_points, lo, hi);
                emit(resolve_output(max_out, "max-" + to_string(model) + "-" + max_over + ".csv"),
                     [&](std::ostream& os) { write_max_curve_csv(os, model, rows); });
                return kOk;
            }
            const MaxResult r = find_max(model, fixed, lo, hi);
            nlohmann::json j = to_json(r);
            j["model"] = to_string(model);
            j["a_domain"] = {lo, hi};
            j["version"] = kVersion;
            emit_json(resolve_output(max_out, "max-" + to_string(model) + ".json"), j);
            if (r.multimodal()) std::cerr << "warning: several local maxima on the coarse grid, see candidates\n";
            return kOk;
        }

        if (*proto_cmd) {
            ProtocolConfig cfg;
            if (!proto_config.empty()) {
                std::ifstream f(proto_config);
                try {
                    cfg = parse_protocol_config(f);
                } catch (const ConfigError& e) {
                    std::cerr << proto_config << ": " << e.what() << '\n';
                    return kUsage;
                }
            } else {
                const FixedParams p = proto_args.fixed();
                cfg.model = make_model(parse_model(proto_args.model), p);
                cfg.shots = proto_shots;
                cfg.seed = proto_seed;
                if (proto_measurement == "sld") cfg.measurement = Measurement::sld_eigenbasis;
                else if (proto_measurement == "computational") cfg.measurement = Measurement::computational_basis;
                else throw ConfigError(0, "--measurement must be sld or computational");
            }
            const EstimationReport rep = run_estimation(cfg.model, cfg.shots, cfg.seed, cfg.measurement);
            nlohmann::json j = to_json(rep);
            j["params"] = to_json(cfg.model);
            j["version"] = kVersion;
            nlohmann::json warnings = nlohmann::json::array();
            if (std::visit([](const auto& p) { return p.perturbative_warning(); }, cfg.model))
                warnings.push_back("mu > 0.1: outside the first-order perturbative regime");
            j["warnings"] = warnings;
            emit_json(resolve_output(proto_out, "protocol.json"), j);
            return kOk;
        }

        if (*hawk_cmd) {
            if (!hawk_mass && !hawk_kappa) {
                if (!hawk_chi1 || !hawk_chi2) throw ConfigError(0, "give --mass, --kappa, or both --chi1 and --chi2");
                emit_json(std::nullopt, {{"temperature_ratio", redshift_temperature_ratio(*hawk_chi1, *hawk_chi2)}});
                return kOk;
            }
            HawkingQuery q{hawk_mass, hawk_kappa, std::nullopt};
            if (hawk_chi1 || hawk_chi2) {
                if (!hawk_chi1 || !hawk_chi2) throw ConfigError(0, "--chi1 and --chi2 go together");
                q.chi_ratio = std::make_pair(*hawk_chi1, *hawk_chi2);
            }
            emit_json(std::nullopt, to_json(hawking_temperature(q)));
            return kOk;
        }

        if (*val_cmd) {
            bool ok = true;
            for (const auto& c : run_validation_suite()) {
                std::cout << (c.passed() ? "PASS " : "FAIL ") << c.name << ": worst " << format_real(c.worst) << " (tol "
                          << format_real(c.tolerance) << ", " << c.points << " points)\n";
                ok = ok && c.passed();
            }
            return ok ? kOk : kFailure;
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}
