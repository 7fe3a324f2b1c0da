#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "sgc/config.hpp"
#include "sgc/run.hpp"

namespace sgc {
namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "sgc_config_io_test";
  fs::create_directories(dir);
  return dir;
}

ErrorKind kind_of(const auto& fn, std::string* message = nullptr) {
  try {
    fn();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  ADD_FAILURE() << "expected an sgc::Error";
  return ErrorKind::Domain;
}

TEST(ParseConfig, EmptyInputGivesReferenceDefaults) {
  const RunConfig cfg = parse_config("");
  const SystemParams& p = cfg.params;
  EXPECT_EQ(p.gamma_unit, 1e8);
  EXPECT_EQ(p.omega1_bare, 10.0);
  EXPECT_EQ(p.omegap_bare, 0.2);
  EXPECT_EQ(p.gamma2, 0.8);
  EXPECT_EQ(p.gamma3, 0.8);
  EXPECT_EQ(p.gamma4, 0.8);
  EXPECT_EQ(p.density_n, 5e24);
  EXPECT_EQ(p.p_align, 0.5);
  EXPECT_EQ(p.delta_p, 0.0);
  EXPECT_EQ(p.equation_variant, EquationVariant::Corrected);
  EXPECT_EQ(cfg, RunConfig{});
}

TEST(ParseConfig, ValidationErrors) {
  std::string msg;
  EXPECT_EQ(kind_of([] { parse_config("p_align = 1.5"); }, &msg), ErrorKind::Validation);
  EXPECT_NE(msg.find("p_align"), std::string::npos);
  EXPECT_EQ(kind_of([] { parse_config("steps = 0"); }, &msg), ErrorKind::Validation);
  EXPECT_NE(msg.find("steps"), std::string::npos);
  EXPECT_EQ(kind_of([] { parse_config("d_min = 5\nd_max = 5"); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([] { parse_config("density_n = -1"); }), ErrorKind::Validation);
}

TEST(ParseConfig, ParseErrorsNameTheLineOrFlag) {
  std::string msg;
  EXPECT_EQ(kind_of([] { parse_config("# header\n\nbogus_key = 3\n"); }, &msg), ErrorKind::Parse);
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_EQ(kind_of([] { parse_config("gamma2 = fast"); }, &msg), ErrorKind::Parse);
  EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;
  EXPECT_EQ(kind_of([] { parse_config("steps"); }), ErrorKind::Parse);

  const ConfigEntry bad_flag{"--steps", "steps", "-4"};
  EXPECT_EQ(kind_of([&] { parse_config("", std::span(&bad_flag, 1)); }, &msg), ErrorKind::Parse);
  EXPECT_NE(msg.find("--steps"), std::string::npos) << msg;
}

TEST(ParseConfig, FlagsOverrideFileOverrideDefaults) {
  const std::string file = "p_align = 0.2   # weak SGC\nsteps = 11\nmode = sweep-detuning\n";
  const ConfigEntry flags[] = {{"--p", "p_align", "0.7"}, {"--format", "format", "json"}};
  const RunConfig cfg = parse_config(file, flags);
  EXPECT_EQ(cfg.params.p_align, 0.7);
  EXPECT_EQ(cfg.steps, 11u);
  EXPECT_EQ(cfg.mode, RunMode::SweepDetuning);
  EXPECT_EQ(cfg.format, OutputFormat::Json);
  EXPECT_EQ(cfg.params.gamma2, 0.8);
}

TEST(ParseConfig, EmittedConfigRoundTrips) {
  RunConfig cfg;
  cfg.params.p_align = 0.1 + 0.2;  // not exactly representable in short form
  cfg.params.delta_p = 1e-16;
  cfg.params.d42 = 9.123456789012345e-30;
  cfg.params.equation_variant = EquationVariant::PaperLiteral;
  cfg.mode = RunMode::SweepAlignment;
  cfg.steps = 17;
  cfg.out = "some dir/out.json";
  cfg.format = OutputFormat::Json;
  cfg.oracle = true;
  cfg.calibrate = true;
  EXPECT_EQ(parse_config(emit_config(cfg)), cfg);
}

TEST(Run, SinglePointWritesOneRowCsvAndMetadata) {
  RunConfig cfg;
  cfg.out = (scratch_dir() / "point.csv").string();
  const RunResult result = run(cfg);

  const std::string csv = slurp(result.data_path);
  std::istringstream lines(csv);
  std::string header;
  std::string row;
  std::string extra;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_FALSE(std::getline(lines, extra));
  EXPECT_EQ(header,
            "axis_value,re_eps,im_eps,re_mu,im_mu,re_n,im_n,re_rho24,im_rho24,re_rho32,im_rho32,"
            "handedness");
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 11);

  const std::string meta_text = slurp(result.meta_path);
  EXPECT_EQ(result.meta_path, cfg.out + ".meta.json");
  // The sidecar parses back to the configuration that produced it.
  EXPECT_EQ(parse_config(meta_text), cfg);
  const auto meta = nlohmann::json::parse(meta_text);
  EXPECT_EQ(meta.at("version"), kVersion);
  EXPECT_EQ(meta.at("rows"), 1);
  EXPECT_TRUE(meta.at("failures").empty());
  EXPECT_EQ(meta.at("constants").at("hbar"), constants::hbar);
}

TEST(Run, RepeatedRunsAreByteIdentical) {
  RunConfig cfg;
  cfg.mode = RunMode::SweepDetuning;
  cfg.steps = 41;
  cfg.out = (scratch_dir() / "repeat_a.csv").string();
  run(cfg, 3);
  const std::string data_a = slurp(cfg.out);
  const std::string meta_a = slurp(cfg.out + ".meta.json");
  run(cfg, 1);
  EXPECT_EQ(slurp(cfg.out), data_a);
  EXPECT_EQ(slurp(cfg.out + ".meta.json"), meta_a);
}

TEST(Run, JsonRecordsUseCsvFieldNames) {
  RunConfig cfg;
  cfg.mode = RunMode::SweepAlignment;
  cfg.steps = 5;
  cfg.p_max = 0.9;
  cfg.format = OutputFormat::Json;
  cfg.out = (scratch_dir() / "records.json").string();
  run(cfg);
  const auto doc = nlohmann::json::parse(slurp(cfg.out));
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), 5u);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc[0].items()) keys.push_back(k);
  std::vector<std::string> expected = output_columns();
  std::sort(keys.begin(), keys.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(doc[4].at("axis_value").get<double>(), 0.9);
}

TEST(Run, OracleCrossCheckIsRecorded) {
  RunConfig cfg;
  cfg.mode = RunMode::SweepDetuning;
  cfg.steps = 3;
  cfg.oracle = true;
  cfg.out = (scratch_dir() / "oracle.csv").string();
  const RunResult result = run(cfg);
  ASSERT_EQ(result.oracle.size(), 3u);
  for (const auto& o : result.oracle) {
    EXPECT_TRUE(o.error.empty());
    EXPECT_LT(o.max_deviation, 1e-6);
  }
  const auto meta = nlohmann::json::parse(slurp(result.meta_path));
  EXPECT_LT(meta.at("oracle").at("max_deviation").get<double>(), 1e-6);
}

TEST(Run, PointFailuresAreFatal) {
  RunConfig cfg;
  cfg.params.equation_variant = EquationVariant::PaperLiteral;
  cfg.out = (scratch_dir() / "literal.csv").string();
  EXPECT_EQ(kind_of([&] { run(cfg); }), ErrorKind::NonPhysicalState);
}

TEST(Run, SweepFailuresGoToMetadata) {
  RunConfig cfg;
  cfg.params.equation_variant = EquationVariant::PaperLiteral;
  cfg.mode = RunMode::SweepDetuning;
  cfg.steps = 5;
  cfg.out = (scratch_dir() / "literal_sweep.csv").string();
  const RunResult result = run(cfg);
  const auto meta = nlohmann::json::parse(slurp(result.meta_path));
  EXPECT_EQ(meta.at("failures").size(), result.table.failures.size());
  EXPECT_EQ(meta.at("rows").get<std::size_t>() + result.table.failures.size(), 5u);
}

}  // namespace
}  // namespace sgc
