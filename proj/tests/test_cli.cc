// Copyright 2026 the ageleak authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Spawns the real binary. The path to it arrives as the first positional
// argument (the build wires it in through the test command line).

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ageleak/output.h"

using namespace ageleak;

namespace {

std::string g_cli;

struct RunOutcome {
  int status = -1;
  std::string output;  // stdout and stderr interleaved
};

RunOutcome run_cli(const std::string& args) {
  RunOutcome outcome;
  const std::string command = "'" + g_cli + "' " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    outcome.output.append(buffer, got);
  }
  const int rc = pclose(pipe);
  outcome.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return outcome;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

// Data rows of a csv payload: skips the comment line and the header.
std::vector<OutputRecord> parse_output(const std::string& text) {
  std::vector<OutputRecord> records;
  const std::vector<std::string> lines = lines_of(text);
  REQUIRE(lines.size() >= 2);
  REQUIRE(lines[0].rfind("# ageleak 0.1.0", 0) == 0);
  REQUIRE(lines[1] == csv_header());
  for (std::size_t i = 2; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    records.push_back(parse_csv_row(lines[i]));
  }
  return records;
}

std::string temp_dir() {
  char tmpl[] = "/tmp/ageleak-cli-XXXXXX";
  const char* dir = mkdtemp(tmpl);
  REQUIRE(dir != nullptr);
  return dir;
}

std::string slurp(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::string content;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof(buffer), f)) > 0) {
    content.append(buffer, got);
  }
  std::fclose(f);
  return content;
}

void spit(const std::string& path, const std::string& content) {
  FILE* f = std::fopen(path.c_str(), "wb");
  REQUIRE(f != nullptr);
  fwrite(content.data(), 1, content.size(), f);
  std::fclose(f);
}

}  // namespace

TEST_CASE("analytic rows") {
  const RunOutcome rad = run_cli("analytic --policy rad --lambda 0.5 --mu 0.5");
  CHECK(rad.status == 0);
  const std::vector<OutputRecord> rows = parse_output(rad.output);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].policy == "rad");
  CHECK(*rows[0].age_slots == doctest::Approx(4.0));
  CHECK(*rows[0].leakage_rate_nats == doctest::Approx(std::log(1.5)));
  CHECK(*rows[0].leakage_rate_bits ==
        doctest::Approx(std::log(1.5) / std::log(2.0)));
  CHECK(rows[0].source == "analytic");
  CHECK_FALSE(rows[0].alpha.has_value());
  CHECK_FALSE(rows[0].tau.has_value());

  const RunOutcome dad = run_cli("analytic --policy dad --lambda 0.5 --tau 1");
  CHECK(dad.status == 0);
  const std::vector<OutputRecord> dad_rows = parse_output(dad.output);
  REQUIRE(dad_rows.size() == 1);
  CHECK(*dad_rows[0].age_slots == doctest::Approx(3.0));
  CHECK(*dad_rows[0].leakage_rate_nats == doctest::Approx(std::log(2.0)));
}

TEST_CASE("instability exits with status 3") {
  const RunOutcome out =
      run_cli("analytic --policy mbt --lambda 0.5 --alpha 1 --mu 0.5");
  CHECK(out.status == 3);
  CHECK(out.output.find("Unstable") != std::string::npos);

  const RunOutcome sim = run_cli(
      "simulate --policy mbt --lambda 0.9 --alpha 1 --mu 0.3 --slots 100000");
  CHECK(sim.status == 3);
  CHECK(sim.output.find("Unstable") != std::string::npos);
}

TEST_CASE("usage and validation errors exit with status 2") {
  CHECK(run_cli("analytic --policy rad --lambda 0.5 --mu 0.5 --bogus").status ==
        2);
  CHECK(run_cli("analytic --policy rad --mu 0.5").status == 2);  // no lambda
  CHECK(run_cli("analytic --policy xyz --lambda 0.5 --mu 0.5").status == 2);
  CHECK(run_cli("analytic --policy rad --lambda 0.5 --mu 0.5 --tau 3").status ==
        2);  // extraneous field
  CHECK(run_cli("").status == 2);  // subcommand required
  CHECK(run_cli("verify --suite nonsense").status == 2);
  CHECK(run_cli("leakage --policy rad --mu 0.5 --n 6 --oracle --both").status ==
        2);  // modes are mutually exclusive
  CHECK(run_cli("leakage --policy rad --mu 0.5 --n 13 --oracle").status == 2);
  CHECK(run_cli("pareto --policy dad --tau-range 1:39").status == 2);  // no out
  CHECK(run_cli("pareto --policy dad --tau-range 5:1 --out /tmp/x.csv").status ==
        2);
  CHECK(run_cli("pareto --out /tmp/x.csv").status == 2);  // neither mode
}

TEST_CASE("simulate rows are reproducible") {
  const std::string command =
      "simulate --policy dad --lambda 0.5 --tau 3 --slots 1000000 --seed 7";
  const RunOutcome first = run_cli(command);
  CHECK(first.status == 0);
  const std::vector<OutputRecord> rows = parse_output(first.output);
  REQUIRE(rows.size() == 1);
  CHECK(*rows[0].slots == 1000000);
  CHECK(*rows[0].seed == 7);
  CHECK(rows[0].source == "simulated");
  REQUIRE(rows[0].age_stderr.has_value());
  CHECK(std::fabs(*rows[0].age_slots - 4.0) <= 3.0 * *rows[0].age_stderr);

  const RunOutcome second = run_cli(command);
  CHECK(first.output == second.output);
}

TEST_CASE("leakage modes") {
  const RunOutcome both = run_cli("leakage --policy rad --mu 0.5 --n 6 --both");
  CHECK(both.status == 0);
  const std::vector<OutputRecord> rows = parse_output(both.output);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].source == "oracle");
  CHECK(rows[1].source == "analytic");
  CHECK(rows[2].source == "difference");
  CHECK(std::fabs(*rows[2].leakage_rate_nats) < 1e-9);
  CHECK_FALSE(rows[0].lambda.has_value());  // leakage never consumed it
  CHECK(rows[0].note.find("support=64") != std::string::npos);

  const RunOutcome oracle =
      run_cli("leakage --policy dad --tau 3 --n 7 --oracle");
  const std::vector<OutputRecord> dad_rows = parse_output(oracle.output);
  REQUIRE(dad_rows.size() == 1);
  CHECK(*dad_rows[0].leakage_rate_nats ==
        doctest::Approx(2.0 * std::log(2.0) / 7.0));
  CHECK(dad_rows[0].note.find("support=4") != std::string::npos);

  const RunOutcome exploratory =
      run_cli("leakage --policy mbt --alpha 0.5 --mu 0.5 --n 4 --oracle");
  const std::vector<OutputRecord> mbt_rows = parse_output(exploratory.output);
  REQUIRE(mbt_rows.size() == 1);
  CHECK(mbt_rows[0].note.find("alpha<1: not covered by Theorem 1") !=
        std::string::npos);

  // Default mode is --both.
  const RunOutcome defaulted = run_cli("leakage --policy rad --mu 0.5 --n 4");
  CHECK(parse_output(defaulted.output).size() == 3);
}

TEST_CASE("verify suites report per-check status") {
  const RunOutcome out = run_cli("verify --suite lemma1");
  CHECK(out.status == 0);
  CHECK(out.output.find("PASS") != std::string::npos);
  CHECK(out.output.find("FAIL") == std::string::npos);
  CHECK(out.output.find("checks passed") != std::string::npos);
}

TEST_CASE("figure dataset files") {
  const std::string dir = temp_dir();
  const std::string fig2_path = dir + "/fig2.csv";
  CHECK(run_cli("pareto --figure fig2 --out " + fig2_path).status == 0);
  const std::string fig2 = slurp(fig2_path);
  const std::vector<OutputRecord> rows = parse_output(fig2);
  CHECK(rows.size() == 255);
  int common = 0;
  for (const OutputRecord& row : rows) {
    if (std::fabs(*row.leakage_rate_nats - std::log(2.0)) < 1e-9 &&
        std::fabs(*row.age_slots - 3.0) < 1e-9) {
      ++common;
    }
  }
  CHECK(common == 3);

  // Rewriting the same dataset produces identical bytes.
  const std::string again_path = dir + "/fig2b.csv";
  CHECK(run_cli("pareto --figure fig2 --out " + again_path).status == 0);
  const std::string again = slurp(again_path);
  // The comment line carries no paths or timestamps, so whole files match.
  CHECK(fig2 == again);
}

TEST_CASE("sweep dataset files") {
  const std::string dir = temp_dir();
  const std::string path = dir + "/d.csv";
  CHECK(run_cli("pareto --policy dad --lambda 0.5 --tau-range 1:39 --out " +
                path)
            .status == 0);
  const std::vector<OutputRecord> rows = parse_output(slurp(path));
  REQUIRE(rows.size() == 39);
  CHECK(*rows.front().age_slots == doctest::Approx(3.0));
  CHECK(*rows.front().tau == 1);
  CHECK(*rows.back().age_slots == doctest::Approx(22.0));
  CHECK(*rows.back().tau == 39);

  const std::string unwritable = dir + "/missing-subdir/out.csv";
  CHECK(run_cli("pareto --figure fig2 --out " + unwritable).status == 2);
}

TEST_CASE("config files feed defaults and flags override them") {
  const std::string dir = temp_dir();
  const std::string config_path = dir + "/run.cfg";
  spit(config_path, "policy=rad\nlambda=0.5\nmu=0.5\n");

  const RunOutcome from_config = run_cli("analytic --config " + config_path);
  CHECK(from_config.status == 0);
  const RunOutcome from_flags =
      run_cli("analytic --policy rad --lambda 0.5 --mu 0.5");
  CHECK(from_config.output == from_flags.output);

  const RunOutcome overridden =
      run_cli("analytic --config " + config_path + " --mu 1");
  CHECK(overridden.status == 0);
  const std::vector<OutputRecord> rows = parse_output(overridden.output);
  REQUIRE(rows.size() == 1);
  CHECK(*rows[0].mu == 1.0);
  CHECK(*rows[0].age_slots == doctest::Approx(3.0));
}

TEST_CASE("help surfaces every subcommand and flag") {
  const RunOutcome help = run_cli("--help");
  CHECK(help.status == 0);
  for (const char* name :
       {"analytic", "simulate", "leakage", "verify", "pareto"}) {
    CHECK(help.output.find(name) != std::string::npos);
  }
  const RunOutcome leakage_help = run_cli("leakage --help");
  CHECK(leakage_help.status == 0);
  for (const char* flag : {"--policy", "--n", "--oracle", "--analytic",
                           "--both", "--config"}) {
    CHECK(leakage_help.output.find(flag) != std::string::npos);
  }
}

int main(int argc, char** argv) {
  if (argc < 2 || argv[1][0] == '-') {
    std::fprintf(stderr, "usage: %s <path-to-ageleak-binary> [doctest args]\n",
                 argv[0]);
    return 1;
  }
  g_cli = argv[1];
  std::vector<char*> args;
  args.push_back(argv[0]);
  for (int i = 2; i < argc; ++i) args.push_back(argv[i]);
  doctest::Context context(static_cast<int>(args.size()), args.data());
  return context.run();
}
