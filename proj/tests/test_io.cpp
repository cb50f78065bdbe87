#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "unruh_qfi/io.hpp"

using namespace unruh_qfi;
namespace fs = std::filesystem;

TEST(Numbers, FormatRoundTrips) {
    for (const double v : {0.1, 1.0 / 3.0, 0.014396782352466796, 1e-300, -2.5e17, 0.0}) {
        EXPECT_EQ(*parse_plain_real(format_real(v)), v);
    }
    EXPECT_EQ(format_real(std::nan("")), "nan");
    EXPECT_EQ(format_real(-INFINITY), "-inf");
}

TEST(Numbers, PiExpressions) {
    EXPECT_DOUBLE_EQ(*parse_real("pi"), kPi);
    EXPECT_DOUBLE_EQ(*parse_real(" pi/4 "), kPi / 4);
    EXPECT_DOUBLE_EQ(*parse_real("3*pi/8"), 3 * kPi / 8);
    EXPECT_DOUBLE_EQ(*parse_real("2pi"), 2 * kPi);
    EXPECT_DOUBLE_EQ(*parse_real("-pi/2"), -kPi / 2);
    EXPECT_DOUBLE_EQ(*parse_real("0.25"), 0.25);
    EXPECT_FALSE(parse_real("pi/0").has_value());
    EXPECT_FALSE(parse_real("two").has_value());
    EXPECT_FALSE(parse_real("pi*2").has_value());
    EXPECT_FALSE(parse_real("").has_value());
}

TEST(Csv, WriteReadRoundTrip) {
    SweepSpec spec;
    spec.model = Model::two;
    spec.axis = Axis::theta;
    spec.min = 0.0;
    spec.max = kHalfPi;
    spec.n_points = 7;
    const auto table = sweep(spec);
    std::stringstream ss;
    write_csv(ss, table);
    const auto back = read_csv(ss);
    EXPECT_EQ(back.header, (std::vector<std::string>{"theta", "qfi_total", "qfi_classical", "qfi_quantum", "concurrence", "flag"}));
    ASSERT_EQ(back.rows.size(), 7u);
    for (std::size_t i = 0; i < 7; ++i) {
        EXPECT_EQ(back.rows[i][0], table.rows[i].axis_value);
        EXPECT_EQ(back.rows[i][1], table.rows[i].qfi_total);
        EXPECT_EQ(back.rows[i][4], *table.rows[i].concurrence);
        EXPECT_EQ(back.flags[i], "");
    }
}

TEST(Csv, FlagsSurviveWithoutBreakingColumns) {
    SweepSpec spec;
    spec.axis = Axis::mu;
    spec.min = 0.5;
    spec.max = 1.5;
    spec.n_points = 3;
    std::stringstream ss;
    write_csv(ss, sweep(spec));
    const auto back = read_csv(ss);
    ASSERT_EQ(back.rows.size(), 3u);
    EXPECT_TRUE(std::isnan(back.rows[2][1]));
    EXPECT_FALSE(back.flags[2].empty());
}

TEST(Csv, ReadRejectsMalformed) {
    std::istringstream bad_header("a,b\n1,2\n");
    EXPECT_THROW(read_csv(bad_header), ConfigError);
    std::istringstream ragged("x,flag\n1,\n2\n");
    try {
        read_csv(ragged);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Json, SweepMetadataDescribesColumns) {
    SweepSpec spec;
    spec.n_points = 2;
    spec.scale = OutputScale::fig1;
    const auto j = sweep_metadata(sweep(spec));
    EXPECT_EQ(j.at("artifact"), kArtifactName);
    EXPECT_EQ(j.at("units"), "1e-2 omega^-2");
    EXPECT_EQ(j.at("columns").size(), 5u);
    EXPECT_EQ(j.at("fixed").at("mu"), 0.01);
}

TEST(Json, EstimationReportHasAllFields) {
    const auto r = run_estimation(SingleDetectorParams{1.0, 2 * kPi, 0.01, kHalfPi}, 100, 1);
    const auto j = to_json(r);
    for (const char* k : {"parameter_true", "estimate_mean", "estimate_variance", "shot_variance", "qfi_used", "crb_per_shot",
                          "measurement_fisher", "n_shots", "standard_error", "cramer_rao_gap", "seed", "measurement",
                          "outcome_counts", "outcome_estimates"})
        EXPECT_TRUE(j.contains(k)) << k;
}

TEST(Config, ParsesValidFile) {
    std::istringstream in("# comment\nmodel = two\nacceleration = 2*pi\ntheta = pi/4  # trailing\nshots = 500\n"
                          "seed = 9\nmeasurement = computational\n");
    const auto cfg = parse_protocol_config(in);
    const auto& p = std::get<TwoDetectorParams>(cfg.model);
    EXPECT_DOUBLE_EQ(p.acceleration, 2 * kPi);
    EXPECT_DOUBLE_EQ(p.theta, kPi / 4);
    EXPECT_EQ(p.mu, 0.01);
    EXPECT_EQ(cfg.shots, 500u);
    EXPECT_EQ(cfg.seed, 9u);
    EXPECT_EQ(cfg.measurement, Measurement::computational_basis);
}

namespace {

std::size_t error_line(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_protocol_config(in);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return 9999;
}

}  // namespace

TEST(Config, LineNumberedDiagnostics) {
    EXPECT_EQ(error_line("model = single\nacceleration 1\n"), 2u);
    EXPECT_EQ(error_line("model = single\nacceleration = 1\nacceleration = 2\n"), 3u);
    EXPECT_EQ(error_line("model = single\n\n\ncolour = red\nacceleration = 1\n"), 4u);
    EXPECT_EQ(error_line("model = single\nacceleration = fast\n"), 2u);
    EXPECT_EQ(error_line("model = single\nacceleration = 1\ntheta = 0\n"), 3u);
    EXPECT_EQ(error_line("model = three\nacceleration = 1\n"), 1u);
    EXPECT_EQ(error_line("model = single\nacceleration = 1\nshots = -5\n"), 3u);
    EXPECT_EQ(error_line("model = single\nacceleration = 1\nmeasurement = weak\n"), 3u);
    EXPECT_EQ(error_line("model = single\n"), 0u);
    EXPECT_EQ(error_line("model = single\nacceleration = 1\nmu = 2\n"), 0u);
}

// CLI ------------------------------------------------------------------------

namespace {

struct CliRun {
    int status;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// Per-test scratch directory so parallel ctest runs do not collide.
fs::path scratch_dir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    const fs::path dir = fs::temp_directory_path() / "unruh_qfi_cli_test" / info->name();
    fs::create_directories(dir);
    return dir;
}

CliRun cli(const std::string& args, const std::string& env = "") {
    const fs::path dir = scratch_dir();
    const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
    const std::string cmd = env + " '" UNRUH_QFI_CLI "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

fs::path scratch(const std::string& name) { return scratch_dir() / name; }

}  // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("hawking --mass 1").status, 0);
    EXPECT_EQ(cli("").status, 2);
    EXPECT_EQ(cli("sweep --points 1").status, 2);
    EXPECT_EQ(cli("sweep --model single --axis theta").status, 2);
    EXPECT_EQ(cli("max --mu 0").status, 2);
    EXPECT_EQ(cli("frobnicate").status, 2);
    EXPECT_EQ(cli("validate").status, 0);
}

TEST(Cli, HawkingOutput) {
    const auto r = cli("hawking --mass 1");
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("temperature").get<double>(), 1.0 / (8.0 * kPi));
    const auto ratio = nlohmann::json::parse(cli("hawking --chi1 0.5 --chi2 0.25").out);
    EXPECT_EQ(ratio.at("temperature_ratio").get<double>(), 0.5);
}

TEST(Cli, MalformedConfigReportsLine) {
    const auto path = scratch("bad.conf");
    std::ofstream(path) << "model = single\nacceleration = 1\nmu 0.01\n";
    const auto r = cli("protocol --config '" + path.string() + "'");
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(Cli, ProtocolReportIsCompleteAndReproducible) {
    const auto path = scratch("good.conf");
    std::ofstream(path) << "model = single\nacceleration = 2*pi\nmu = 0.01\neta = pi/2\nshots = 20000\nseed = 4\n";
    const auto a = cli("protocol --config '" + path.string() + "'");
    const auto b = cli("protocol --config '" + path.string() + "'");
    ASSERT_EQ(a.status, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto j = nlohmann::json::parse(a.out);
    for (const char* k : {"parameter_true", "estimate_mean", "estimate_variance", "qfi_used", "crb_per_shot", "n_shots",
                          "standard_error", "seed", "cramer_rao_gap"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j.at("n_shots"), 20000);
}

TEST(Cli, SweepHonoursOutputDirectoryVariable) {
    const fs::path dir = scratch("envout");
    fs::remove_all(dir);
    const auto r = cli("sweep --model two --axis theta --points 5", "UNRUH_QFI_OUTPUT_DIR='" + dir.string() + "'");
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const fs::path csv = dir / "sweep-two-theta.csv";
    ASSERT_TRUE(fs::exists(csv));
    ASSERT_TRUE(fs::exists(dir / "sweep-two-theta.json"));
    std::ifstream f(csv);
    const auto t = read_csv(f);
    EXPECT_EQ(t.rows.size(), 5u);
    const auto meta = nlohmann::json::parse(slurp(dir / "sweep-two-theta.json"));
    EXPECT_EQ(meta.at("model"), "two");
}

TEST(Cli, ExplicitOutWins) {
    const fs::path out = scratch("explicit/curve.csv");
    fs::remove_all(out.parent_path());
    const auto r = cli("max --model single --over eta --points 3 --out '" + out.string() + "'",
                       "UNRUH_QFI_OUTPUT_DIR=/nonexistent-should-not-be-used");
    ASSERT_EQ(r.status, 0) << r.err;
    std::ifstream f(out);
    const auto t = read_csv(f);
    EXPECT_EQ(t.header.front(), "eta");
    EXPECT_EQ(t.rows.size(), 3u);
}
