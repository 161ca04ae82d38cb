#include <doctest.h>

#include "rarebasis/commands.hpp"
#include "rarebasis/report.hpp"

using namespace rarebasis;

TEST_CASE("config parses the documented keys") {
  const std::string text = R"(
# soria instance
n 3
k 3
family soria
gamma list 0 1 4 9 16 25
window 0:40 0:40 0:40
guard 1048576
alpha 1*2^-5
threads 2
budget 0 0 6
scales1 0 2 4 6
omega 1 1 1
shape 0 3
shape 1 2
predicate sum_le 3
)";
  const ExperimentConfig cfg = ExperimentConfig::parse_string(text);
  CHECK(cfg.n == 3);
  CHECK(cfg.k == 3);
  CHECK(cfg.family_kind == "soria");
  CHECK(cfg.gamma->contains(16));
  CHECK(!cfg.gamma->contains(17));
  CHECK(cfg.window->dimension() == 3);
  CHECK(cfg.guard == 1048576);
  CHECK(*cfg.alpha == Dyadic::pow2(-5));
  CHECK(cfg.threads == 2);
  CHECK(cfg.budgets == std::vector<std::int64_t>{0, 0, 6});
  CHECK(cfg.scales.at(1) == Tuple{0, 2, 4, 6});
  CHECK(cfg.omega_tuples == std::vector<Tuple>{{1, 1, 1}});
  CHECK(cfg.shapes.size() == 2);
  CHECK(cfg.predicate_kind == "sum_le");
  CHECK(cfg.predicate_bound == 3);
}

TEST_CASE("config rejects malformed input") {
  CHECK_THROWS_AS(ExperimentConfig::parse_string("bogus 1"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse_string("window 5:1"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse_string("alpha 0.5"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse_string("n"), ConfigError);
}

TEST_CASE("spectrum command lists the family tuples") {
  ExperimentConfig cfg = ExperimentConfig::parse_string(R"(
family soria
gamma list 0
window 0:1 0:1 0:1
)");
  const CommandResult text = cmd_spectrum(cfg, Format::Text);
  CHECK(text.exit_code == 0);
  CHECK(text.output == "0 0 0\n1 0 0\n");
  const CommandResult csv = cmd_spectrum(cfg, Format::Csv);
  CHECK(csv.output == "0,0,0\n1,0,0\n");
  // empty window: no tuples
  cfg.window = Window::uniform(3, 5, 5);
  cfg.gamma = IntSet::explicit_set({0});
  const CommandResult empty = cmd_spectrum(cfg, Format::Text);
  CHECK(empty.output.empty());
}

TEST_CASE("verify command end to end on the plane") {
  const ExperimentConfig cfg = ExperimentConfig::parse_string(R"(
n 2
k 5
family fullproduct
scales1 0 1 2 3 4 5
scales2 0 1 2 3 4 5
)");
  const CommandResult result = cmd_verify(cfg, Format::Json);
  CHECK(result.exit_code == 0);
  const Json j = Json::parse(result.output);
  CHECK(j["pass"] == true);
  CHECK(j["union_measure"]["decimal"] == "80");
  CHECK(j["achieved_ratio"]["decimal"] == "2.5");
  CHECK(j["oracle"]["ran"] == true);
  CHECK(j["oracle"]["union_match"] == true);
  CHECK(j["oracle"]["containment"] == true);
}

TEST_CASE("verify reports deterministically, including the parallel oracle") {
  const std::string text = R"(
n 2
k 4
family fullproduct
scales1 0 1 2 3 4
scales2 0 2 3 5 6
threads 3
)";
  const ExperimentConfig cfg = ExperimentConfig::parse_string(text);
  const CommandResult a = cmd_verify(cfg, Format::Json);
  const CommandResult b = cmd_verify(cfg, Format::Json);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  ExperimentConfig serial = cfg;
  serial.threads = 1;
  const CommandResult c = cmd_verify(serial, Format::Json);
  CHECK(a.output == c.output);
}

TEST_CASE("verify exit codes distinguish failure kinds") {
  // missing k and alpha: configuration error
  const CommandResult miss =
      run_command("verify", ExperimentConfig::parse_string("family fullproduct\nn 2"),
                  Format::Text);
  CHECK(miss.exit_code == 2);
  // window too small for extraction: exit 2 with the diagnostic
  const CommandResult small = run_command("verify", ExperimentConfig::parse_string(R"(
n 2
k 5
family fullproduct
window 0:3 0:3
)"),
                                          Format::Text);
  CHECK(small.exit_code == 2);
  CHECK(small.output.find("insufficient spaced points") != std::string::npos);
  // vacuous basis: verification fail, exit 1
  const CommandResult vac = run_command("verify", ExperimentConfig::parse_string(R"(
n 2
k 2
family explicit
scales1 0 1 2
scales2 0 1 2
)"),
                                        Format::Text);
  CHECK(vac.exit_code == 1);
}

TEST_CASE("alpha drives the instance size") {
  const ExperimentConfig cfg = ExperimentConfig::parse_string(R"(
n 2
family fullproduct
alpha 1*2^-5
window 0:10 0:10
)");
  const CommandResult result = cmd_verify(cfg, Format::Json);
  CHECK(result.exit_code == 0);
  const Json j = Json::parse(result.output);
  CHECK(j["k"] == 5);
  CHECK(j["achieved_constant"]["num"] == "1");
  CHECK(j["achieved_constant"]["den"] == "2");
}

TEST_CASE("sweep emits the closed-form column and unit slope") {
  const ExperimentConfig cfg = ExperimentConfig::parse_string(R"(
n 2
kmin 2
kmax 12
)");
  const CommandResult result = cmd_sweep(cfg, Format::Csv);
  CHECK(result.exit_code == 0);
  std::istringstream lines(result.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "k,card_omega,union_measure,achieved_ratio");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 12);  // 11 data rows + slope row
  CHECK(rows[0] == "2,1,4,1");
  CHECK(rows[3] == "5,4,80,2.5");
  CHECK(rows[10] == "12,11,33792,6");
  CHECK(rows[11].substr(0, 9) == "slope,,,1");
}

TEST_CASE("density command flags budgets") {
  const ExperimentConfig cfg = ExperimentConfig::parse_string(R"(
n 3
family soria
gamma list 0 4 8 12 16
window 0:16 0:16 0:16
budget 0 0 16
)");
  const CommandResult ok = cmd_density(cfg, Format::Json);
  CHECK(ok.exit_code == 0);
  ExperimentConfig tight = cfg;
  tight.budgets = {0, 0, 0};
  const CommandResult fail = cmd_density(tight, Format::Json);
  CHECK(fail.exit_code == 1);
}

TEST_CASE("complete command checks the product basis path") {
  const ExperimentConfig cfg = ExperimentConfig::parse_string(R"(
family product2d
k 3
shape 0 3
shape 1 2
shape 2 1
shape 3 0
window 0:3 0:3 0:3
scales1 0 1 2 3
scales2 0 1 2 3
scales3 0 1 2 3
)");
  const CommandResult result = cmd_complete(cfg, Format::Json);
  CHECK(result.exit_code == 0);
  const Json j = Json::parse(result.output);
  CHECK(j["complete"] == true);
}

TEST_CASE("is-check command on the sample shapes") {
  const ExperimentConfig good = ExperimentConfig::parse_string(R"(
shape 0 3
shape 1 2
shape 2 1
shape 3 0
predicate sum_le 3
)");
  CHECK(cmd_is_check(good, Format::Json).exit_code == 0);
  const ExperimentConfig bad = ExperimentConfig::parse_string(R"(
shape 0 1
shape 0 2
predicate any
)");
  CHECK(cmd_is_check(bad, Format::Json).exit_code == 1);
}

TEST_CASE("oracle-check command compares engines and exports the mask") {
  const ExperimentConfig cfg = ExperimentConfig::parse_string(R"(
n 2
k 3
scales1 0 1 2 3
scales2 0 1 2 3
)");
  const CommandResult result = cmd_oracle_check(cfg, Format::Json);
  CHECK(result.exit_code == 0);
  const Json j = Json::parse(result.output);
  CHECK(j["union_match"] == true);
  CHECK(j["containment"]["ok"] == true);
}

TEST_CASE("schedule form runs one report per item") {
  const ExperimentConfig cfg = ExperimentConfig::parse_string(R"(
n 2
family fullproduct
window 0:12 0:12
schedule 3 full
schedule 4 full
schedule 5 monotone
)");
  const CommandResult result = cmd_verify(cfg, Format::Json);
  CHECK(result.exit_code == 0);
  const Json j = Json::parse(result.output);
  REQUIRE(j.is_array());
  CHECK(j.size() == 3);
  for (const auto& item : j) CHECK(item["pass"] == true);
}
