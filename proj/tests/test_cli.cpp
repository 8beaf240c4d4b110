#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ruck/trace.hpp"
#include "support/paper_data.hpp"

namespace fs = std::filesystem;
using namespace ruck;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return CliResult{code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Scratch directory with the season data and one small fitted trace,
/// shared across test cases.
struct Workspace {
  fs::path dir;
  fs::path data;
  fs::path trace;

  Workspace() {
    dir = fs::temp_directory_path() /
          ("ruck_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    data = dir / "games.csv";
    std::ofstream(data) << testing::kSixNationsCsv;
    trace = dir / "trace.csv";
    const CliResult fit = run_cli({"fit", "--data", data.string(), "--out",
                                   trace.string(), "--chains", "2", "--warmup",
                                   "200", "--draws", "300", "--seed", "7"});
    REQUIRE(fit.code == cli::kExitOk);
  }
};

Workspace& workspace() {
  static Workspace ws;
  return ws;
}

}  // namespace

TEST_CASE("fit writes a parsable trace and a one-line summary") {
  Workspace& ws = workspace();
  const Trace trace = read_trace_csv(ws.trace);
  CHECK(trace.chain_count == 2);
  CHECK(trace.draws_per_chain == 300);
  CHECK(trace.columns.size() == 31);

  const CliResult fit = run_cli({"fit", "--data", ws.data.string(), "--out",
                                 (ws.dir / "trace2.csv").string(), "--chains",
                                 "2", "--warmup", "200", "--draws", "300",
                                 "--seed", "7"});
  CHECK(fit.code == cli::kExitOk);
  CHECK(fit.out.find("fit: chains=2 draws=300") == 0);
  CHECK(fit.out.find("min_ess=") != std::string::npos);
  CHECK(fit.out.find("max_rhat=") != std::string::npos);
  // One line only.
  CHECK(std::count(fit.out.begin(), fit.out.end(), '\n') == 1);

  // Identical flags give a byte-identical file.
  CHECK(slurp(ws.trace) == slurp(ws.dir / "trace2.csv"));
}

TEST_CASE("fit rejects malformed data with exit 2") {
  Workspace& ws = workspace();
  const fs::path bad = ws.dir / "bad.csv";
  std::ofstream(bad) << "home,away\nA,B\n";
  const CliResult res = run_cli({"fit", "--data", bad.string(), "--out",
                                 (ws.dir / "nope.csv").string()});
  CHECK(res.code == cli::kExitInput);
  CHECK(res.err.find("home_team,away_team,home_score,away_score") !=
        std::string::npos);

  const CliResult missing = run_cli({"fit", "--data",
                                     (ws.dir / "absent.csv").string(), "--out",
                                     (ws.dir / "nope.csv").string()});
  CHECK(missing.code == cli::kExitInput);
}

TEST_CASE("missing required flags exit 2 and help exits 0") {
  const CliResult res = run_cli({"fit", "--data", "x.csv"});
  CHECK(res.code == cli::kExitInput);
  const CliResult help = run_cli({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("fit") != std::string::npos);
  const CliResult none = run_cli({});
  CHECK(none.code == cli::kExitInput);
}

TEST_CASE("diagnose reports health on a real fit") {
  Workspace& ws = workspace();
  const CliResult res = run_cli({"diagnose", "--trace", ws.trace.string()});
  CHECK(res.code == cli::kExitOk);
  CHECK(res.out.find("column") != std::string::npos);
  CHECK(res.out.find("intercept") != std::string::npos);
  CHECK(res.out.find("lp") != std::string::npos);
  CHECK(res.out.find("divergences:") != std::string::npos);
}

TEST_CASE("diagnose needs two chains") {
  Workspace& ws = workspace();
  const fs::path single = ws.dir / "single_chain.csv";
  const CliResult fit = run_cli({"fit", "--data", ws.data.string(), "--out",
                                 single.string(), "--chains", "1", "--warmup",
                                 "100", "--draws", "60", "--seed", "3"});
  REQUIRE(fit.code == cli::kExitOk);
  const CliResult res = run_cli({"diagnose", "--trace", single.string()});
  CHECK(res.code == cli::kExitInput);
}

TEST_CASE("diagnose flags disjoint chains with exit 4") {
  Workspace& ws = workspace();
  const fs::path path = ws.dir / "disjoint.csv";
  std::ostringstream csv;
  csv << "chain,draw,a,lp,divergent,tree_depth\n";
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 100; ++d) {
      const double value = 10.0 * c + 0.001 * d;
      csv << c << ',' << d << ',' << value << ',' << -value << ",0,1\n";
    }
  }
  std::ofstream(path) << csv.str();
  const CliResult res = run_cli({"diagnose", "--trace", path.string()});
  CHECK(res.code == cli::kExitDiagnostics);

  const CliResult garbage = run_cli({"diagnose", "--trace", path.string(),
                                     "--trace", path.string()});
  CHECK(garbage.code == cli::kExitInput);
}

TEST_CASE("predict prints aligned text and json") {
  Workspace& ws = workspace();
  const CliResult res = run_cli({"predict", "--trace", ws.trace.string(),
                                 "--home", "Wales", "--away", "Italy",
                                 "--seed", "11"});
  CHECK(res.code == cli::kExitOk);

  // The JSON mirror is the last line.
  const auto last_newline = res.out.find_last_of('\n');
  const auto prev_newline = res.out.find_last_of('\n', last_newline - 1);
  const std::string json_line =
      res.out.substr(prev_newline + 1, last_newline - prev_newline - 1);
  const auto json = nlohmann::json::parse(json_line);
  for (const char* key :
       {"home_mean", "away_mean", "home_interval", "away_interval",
        "p_home_win", "p_draw", "p_away_win"}) {
    CHECK(json.contains(key));
  }
  const double total = json["p_home_win"].get<double>() +
                       json["p_draw"].get<double>() +
                       json["p_away_win"].get<double>();
  CHECK(std::abs(total - 1.0) < 1e-12);
  // Wales at home against Italy is a strong favourite under this data.
  CHECK(json["p_home_win"].get<double>() > 0.5);
  CHECK(json["home_interval"].is_array());

  const CliResult repeat = run_cli({"predict", "--trace", ws.trace.string(),
                                    "--home", "Wales", "--away", "Italy",
                                    "--seed", "11"});
  CHECK(repeat.out == res.out);
}

TEST_CASE("predict rejects unknown teams listing the valid set") {
  Workspace& ws = workspace();
  const CliResult res = run_cli({"predict", "--trace", ws.trace.string(),
                                 "--home", "Narnia", "--away", "Italy"});
  CHECK(res.code == cli::kExitInput);
  CHECK(res.err.find("Narnia") != std::string::npos);
  CHECK(res.err.find("Wales") != std::string::npos);
}

TEST_CASE("rank writes the season table") {
  Workspace& ws = workspace();
  const fs::path table = ws.dir / "season.csv";
  const CliResult res = run_cli({"rank", "--trace", ws.trace.string(),
                                 "--data", ws.data.string(), "--out",
                                 table.string(), "--sims", "2000", "--seed",
                                 "5"});
  CHECK(res.code == cli::kExitOk);
  CHECK(res.out.find("rank") != std::string::npos);

  const std::string csv = slurp(table);
  CHECK(csv.find("rank,team,expected_points,point_diff\n") == 0);
  // Six ranked rows; expected points total 2 per game.
  double total = 0.0;
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    const auto third = line.find(',', second + 1);
    total += std::stod(line.substr(second + 1, third - second - 1));
  }
  CHECK(rows == 6);
  CHECK(std::abs(total - 30.0) < 1e-9);
}

TEST_CASE("forest emits csv and deterministic svg") {
  Workspace& ws = workspace();
  const fs::path csv_path = ws.dir / "forest.csv";
  const fs::path svg_path = ws.dir / "forest.svg";
  const CliResult res = run_cli({"forest", "--trace", ws.trace.string(),
                                 "--family", "att", "--out", csv_path.string(),
                                 "--svg", svg_path.string()});
  CHECK(res.code == cli::kExitOk);

  const std::string csv = slurp(csv_path);
  CHECK(csv.find("family,team,mean,hpd_low,hpd_high\n") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);  // header + 6 teams

  const std::string svg = slurp(svg_path);
  CHECK(svg.starts_with("<svg"));
  CHECK(svg.find(">Wales</text>") != std::string::npos);

  // Re-running reproduces both artifacts byte for byte.
  const fs::path csv2 = ws.dir / "forest2.csv";
  const fs::path svg2 = ws.dir / "forest2.svg";
  const CliResult rerun = run_cli({"forest", "--trace", ws.trace.string(),
                                   "--family", "att", "--out", csv2.string(),
                                   "--svg", svg2.string()});
  CHECK(rerun.code == cli::kExitOk);
  CHECK(slurp(csv2) == csv);
  CHECK(slurp(svg2) == svg);

  const CliResult bad = run_cli({"forest", "--trace", ws.trace.string(),
                                 "--family", "xyz", "--out",
                                 csv_path.string()});
  CHECK(bad.code == cli::kExitInput);
}
