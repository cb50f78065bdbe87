#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

#include "unruh_qfi/errors.hpp"
#include "unruh_qfi/estimation.hpp"
#include "unruh_qfi/hawking.hpp"
#include "unruh_qfi/sweep.hpp"
#include "unruh_qfi/version.hpp"

namespace unruh_qfi {

/// Malformed user input, tagged with its 1-based line number (0 if none).
class ConfigError : public DomainError {
public:
    ConfigError(std::size_t line, const std::string& what)
        : DomainError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// ---------------------------------------------------------------------------
// Numbers

/// Shortest form with 17 significant digits, parses back to the same bits.
inline std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::optional<double> parse_plain_real(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// A plain number, or a multiple of pi written as `pi`, `pi/4`, `3*pi/8`, `3pi/8`.
inline std::optional<double> parse_real(std::string_view text) {
    const std::string_view s = trim(text);
    if (auto v = parse_plain_real(s)) return v;
    const auto p = s.find("pi");
    if (p == std::string_view::npos) return std::nullopt;

    double factor = 1.0;
    std::string_view head = trim(s.substr(0, p));
    if (!head.empty()) {
        if (head.back() == '*') head = trim(head.substr(0, head.size() - 1));
        if (head == "-") {
            factor = -1.0;
        } else {
            const auto f = parse_plain_real(head);
            if (!f) return std::nullopt;
            factor = *f;
        }
    }
    std::string_view tail = trim(s.substr(p + 2));
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') return std::nullopt;
        const auto d = parse_plain_real(trim(tail.substr(1)));
        if (!d || *d == 0.0) return std::nullopt;
        divisor = *d;
    }
    return factor * kPi / divisor;
}

// ---------------------------------------------------------------------------
// CSV

inline std::vector<std::string> csv_header(const SweepTable& t) {
    std::vector<std::string> h{to_string(t.spec.axis), "qfi_total", "qfi_classical", "qfi_quantum"};
    if (t.spec.model == Model::two) h.emplace_back("concurrence");
    h.emplace_back("flag");
    return h;
}

namespace detail {
inline std::string csv_safe(std::string s) {
    for (auto& c : s)
        if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
    return s;
}
}  // namespace detail

/// Header row, 17 significant digits, LF line endings.
inline void write_csv(std::ostream& os, const SweepTable& t) {
    const auto header = csv_header(t);
    for (std::size_t i = 0; i < header.size(); ++i) os << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& r : t.rows) {
        os << format_real(r.axis_value) << ',' << format_real(r.qfi_total) << ',' << format_real(r.qfi_classical) << ','
           << format_real(r.qfi_quantum) << ',';
        if (t.spec.model == Model::two) os << format_real(r.concurrence.value_or(std::nan(""))) << ',';
        os << detail::csv_safe(r.flag) << '\n';
    }
}

struct CsvTable {
    std::vector<std::string> header;
    /// Numeric columns only (flag column excluded).
    std::vector<std::vector<double>> rows;
    std::vector<std::string> flags;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

/// Reads files produced by write_csv. The last column is the flag column.
inline CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) throw ConfigError(1, "empty CSV");
    ++lineno;
    t.header = split_csv_line(line);
    if (t.header.size() < 2 || t.header.back() != "flag") throw ConfigError(lineno, "CSV header must end with 'flag'");
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != t.header.size()) throw ConfigError(lineno, "expected " + std::to_string(t.header.size()) + " cells");
        std::vector<double> row;
        for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
            const auto v = parse_plain_real(cells[i]);
            if (!v) throw ConfigError(lineno, "cannot parse number '" + cells[i] + "'");
            row.push_back(*v);
        }
        t.rows.push_back(std::move(row));
        t.flags.push_back(cells.back());
    }
    return t;
}

/// J_max and a_max against the probe angle, one row per angle.
inline void write_max_curve_csv(std::ostream& os, Model model, const std::vector<MaxCurveRow>& rows) {
    os << (model == Model::single ? "eta" : "theta") << ",j_max,a_max,bracket_width,flag\n";
    for (const auto& r : rows) {
        os << format_real(r.angle) << ',' << format_real(r.result.j_max) << ',' << format_real(r.result.a_max) << ','
           << format_real(r.result.bracket_width) << ',' << (r.result.multimodal() ? "multimodal" : "") << '\n';
    }
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const FixedParams& p) {
    return {{"omega", p.omega}, {"acceleration", p.acceleration}, {"mu", p.mu}, {"eta", p.eta}, {"theta", p.theta}};
}

inline nlohmann::json to_json(const DetectorModel& m) {
    return std::visit(
        [](const auto& p) -> nlohmann::json {
            nlohmann::json j{{"omega", p.omega}, {"acceleration", p.acceleration}, {"mu", p.mu}, {"temperature", p.temperature()}};
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, SingleDetectorParams>) {
                j["model"] = "single";
                j["eta"] = p.eta;
            } else {
                j["model"] = "two";
                j["theta"] = p.theta;
            }
            return j;
        },
        m);
}

/// Sidecar metadata for a sweep CSV.
inline nlohmann::json sweep_metadata(const SweepTable& t) {
    const auto& s = t.spec;
    return {
        {"artifact", kArtifactName},
        {"version", kVersion},
        {"command", "sweep"},
        {"model", to_string(s.model)},
        {"axis", to_string(s.axis)},
        {"axis_range", {{"min", s.min}, {"max", s.max}, {"n_points", s.n_points}}},
        {"fixed", to_json(s.fixed)},
        {"output_scale", to_string(s.scale)},
        {"units", s.scale == OutputScale::fig1 ? "1e-2 omega^-2" : "omega^-2"},
        {"columns", csv_header(t)},
        {"warnings", t.warnings},
    };
}

inline nlohmann::json to_json(const MaxResult& r) {
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& [a, j] : r.candidates) cands.push_back({{"a", a}, {"j", j}});
    return {{"j_max", r.j_max},
            {"a_max", r.a_max},
            {"bracket_width", r.bracket_width},
            {"at_params", to_json(r.at_params)},
            {"multimodal", r.multimodal()},
            {"candidates", cands}};
}

inline nlohmann::json to_json(const EstimationReport& r) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [k, c] : r.shots.outcome_counts) counts[std::to_string(k)] = c;
    return {{"parameter_true", r.parameter_true},
            {"estimate_mean", r.estimate_mean},
            {"estimate_variance", r.estimate_variance},
            {"shot_variance", r.shot_variance},
            {"qfi_used", r.qfi_used},
            {"crb_per_shot", r.crb_per_shot},
            {"measurement_fisher", r.measurement_fisher},
            {"n_shots", r.n_shots},
            {"standard_error", r.standard_error},
            {"cramer_rao_gap", cramer_rao_gap(r)},
            {"seed", r.seed},
            {"measurement", to_string(r.measurement)},
            {"outcome_counts", counts},
            {"outcome_estimates", r.outcome_estimates}};
}

inline nlohmann::json to_json(const HawkingResult& r) {
    nlohmann::json j{{"kappa_gravity", r.kappa_gravity}, {"temperature", r.temperature}};
    if (r.temperature_ratio) j["temperature_ratio"] = *r.temperature_ratio;
    return j;
}

// ---------------------------------------------------------------------------
// Protocol parameter files
//
//   # comment
//   model = single          (single | two)
//   acceleration = 6.283185307179586
//   mu = 0.01
//   eta = pi/2              (single)   theta = 0   (two)
//   omega = 1
//   shots = 100000
//   seed = 12345
//   measurement = sld       (sld | computational)

struct ProtocolConfig {
    DetectorModel model = SingleDetectorParams{};
    std::uint64_t shots = 100000;
    std::uint64_t seed = 12345;
    Measurement measurement = Measurement::sld_eigenbasis;
};

inline ProtocolConfig parse_protocol_config(std::istream& is) {
    std::map<std::string, std::pair<std::string, std::size_t>> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string_view s = line;
        if (const auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) throw ConfigError(lineno, "expected 'key = value'");
        const std::string key(trim(s.substr(0, eq)));
        const std::string value(trim(s.substr(eq + 1)));
        if (key.empty()) throw ConfigError(lineno, "missing key");
        if (value.empty()) throw ConfigError(lineno, "missing value for '" + key + "'");
        if (kv.count(key)) throw ConfigError(lineno, "duplicate key '" + key + "'");
        kv[key] = {value, lineno};
    }

    static const char* const known[] = {"model", "omega", "acceleration", "mu", "eta", "theta", "shots", "seed", "measurement"};
    for (const auto& [k, v] : kv) {
        if (std::find(std::begin(known), std::end(known), k) == std::end(known))
            throw ConfigError(v.second, "unknown key '" + k + "'");
    }

    const auto real = [&](const std::string& key, double fallback) {
        const auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        const auto v = parse_real(it->second.first);
        if (!v) throw ConfigError(it->second.second, "'" + key + "' is not a number: " + it->second.first);
        return *v;
    };
    const auto count = [&](const std::string& key, std::uint64_t fallback) {
        const auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        const std::string& t = it->second.first;
        std::uint64_t v = 0;
        const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
            throw ConfigError(it->second.second, "'" + key + "' is not a non-negative integer: " + t);
        return v;
    };

    if (!kv.count("model")) throw ConfigError(0, "missing required key 'model'");
    if (!kv.count("acceleration")) throw ConfigError(0, "missing required key 'acceleration'");
    const auto& [model_name, model_line] = kv.at("model");

    ProtocolConfig cfg;
    const double omega = real("omega", 1.0);
    const double a = real("acceleration", 0.0);
    const double mu = real("mu", 0.01);
    if (model_name == "single") {
        if (kv.count("theta")) throw ConfigError(kv.at("theta").second, "'theta' belongs to the two-detector model");
        cfg.model = SingleDetectorParams{omega, a, mu, real("eta", kHalfPi)};
    } else if (model_name == "two") {
        if (kv.count("eta")) throw ConfigError(kv.at("eta").second, "'eta' belongs to the single-detector model");
        cfg.model = TwoDetectorParams{omega, a, mu, real("theta", 0.0)};
    } else {
        throw ConfigError(model_line, "model must be 'single' or 'two', got '" + model_name + "'");
    }
    cfg.shots = count("shots", cfg.shots);
    cfg.seed = count("seed", cfg.seed);
    if (const auto it = kv.find("measurement"); it != kv.end()) {
        if (it->second.first == "sld")
            cfg.measurement = Measurement::sld_eigenbasis;
        else if (it->second.first == "computational")
            cfg.measurement = Measurement::computational_basis;
        else
            throw ConfigError(it->second.second, "measurement must be 'sld' or 'computational'");
    }
    try {
        validate(cfg.model);
    } catch (const DomainError& e) {
        throw ConfigError(0, e.what());
    }
    return cfg;
}

}  // namespace unruh_qfi
