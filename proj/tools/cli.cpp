#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "ruck/diagnostics.hpp"
#include "ruck/errors.hpp"
#include "ruck/forest.hpp"
#include "ruck/games.hpp"
#include "ruck/predict.hpp"
#include "ruck/sampler.hpp"
#include "ruck/season.hpp"
#include "ruck/trace.hpp"

namespace ruck::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw ValidationError("failed writing: " + path.string());
}

void require_readable(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open: " + path.string());
}

std::string fmt(double v, int precision) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

std::string opt_fmt(const std::optional<double>& v, int precision) {
  return v ? fmt(*v, precision) : std::string("n/a");
}

struct FitOptions {
  std::string data_path;
  std::string out_path;
  SamplerConfig config;
};

int cmd_fit(const FitOptions& opt, std::ostream& out) {
  require_readable(opt.data_path);
  const GameSet games = parse_games(read_file(opt.data_path));
  const Trace trace = run_chains(games, Hyperparams{}, opt.config);
  write_trace_csv(trace, opt.out_path);

  // R-hat and ESS are only defined from two chains of a few draws.
  std::optional<double> min_ess;
  std::optional<double> max_rhat;
  if (trace.chain_count >= 2 && trace.draws_per_chain >= 4) {
    const Diagnostics diag = compute_diagnostics(trace);
    min_ess = diag.min_ess();
    max_rhat = diag.max_rhat();
  }
  out << "fit: chains=" << trace.chain_count
      << " draws=" << trace.draws_per_chain
      << " divergences=" << trace.divergence_count()
      << " min_ess=" << opt_fmt(min_ess, 1)
      << " max_rhat=" << opt_fmt(max_rhat, 4) << '\n';
  return kExitOk;
}

int cmd_diagnose(const std::string& trace_path, std::ostream& out) {
  const Trace trace = parse_trace_csv(read_file(trace_path));
  const Diagnostics diag = compute_diagnostics(trace);

  std::size_t width = 8;
  for (const auto& col : diag.columns) {
    width = std::max(width, col.column.size());
  }
  out << std::left << std::setw(static_cast<int>(width) + 2) << "column"
      << std::right << std::setw(10) << "rhat" << std::setw(12) << "ess"
      << '\n';
  for (const auto& col : diag.columns) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << col.column
        << std::right << std::setw(10) << opt_fmt(col.rhat, 4)
        << std::setw(12) << opt_fmt(col.ess, 1) << '\n';
  }
  out << "divergences:";
  for (std::size_t n : diag.divergences_per_chain) out << ' ' << n;
  out << '\n';
  if (diag.mean_accept) {
    out << "mean acceptance: " << fmt(*diag.mean_accept, 3) << '\n';
  }
  return diag.healthy() ? kExitOk : kExitDiagnostics;
}

struct PredictOptions {
  std::string trace_path;
  std::string home;
  std::string away;
  std::uint64_t seed = 0;
};

int cmd_predict(const PredictOptions& opt, std::ostream& out) {
  const Trace trace = parse_trace_csv(read_file(opt.trace_path));
  const std::size_t sims = std::max<std::size_t>(trace.total_draws(), 1000);
  const MatchPrediction pred =
      predict_match(trace, opt.home, opt.away, opt.seed, sims);

  const std::size_t width =
      std::max(pred.home_team.size(), pred.away_team.size()) + 2;
  const auto line = [&](const std::string& team, double mean,
                        std::pair<int, int> interval) {
    out << std::left << std::setw(static_cast<int>(width)) << team
        << std::right << std::setw(8) << fmt(mean, 2) << "   [" << interval.first
        << ", " << interval.second << "]\n";
  };
  out << std::left << std::setw(static_cast<int>(width)) << "team"
      << std::right << std::setw(8) << "mean" << "   95% interval\n";
  line(pred.home_team, pred.home_mean, pred.home_interval);
  line(pred.away_team, pred.away_mean, pred.away_interval);
  out << "P(home win) " << fmt(pred.p_home_win, 4) << "  P(draw) "
      << fmt(pred.p_draw, 4) << "  P(away win) " << fmt(pred.p_away_win, 4)
      << '\n';

  nlohmann::ordered_json json;
  json["home_mean"] = pred.home_mean;
  json["away_mean"] = pred.away_mean;
  json["home_interval"] = {pred.home_interval.first, pred.home_interval.second};
  json["away_interval"] = {pred.away_interval.first, pred.away_interval.second};
  json["p_home_win"] = pred.p_home_win;
  json["p_draw"] = pred.p_draw;
  json["p_away_win"] = pred.p_away_win;
  out << json.dump() << '\n';
  return kExitOk;
}

struct RankOptions {
  std::string trace_path;
  std::string data_path;
  std::string out_path;  // optional
  std::size_t sims = 4000;
  std::uint64_t seed = 0;
};

int cmd_rank(const RankOptions& opt, std::ostream& out) {
  const Trace trace = parse_trace_csv(read_file(opt.trace_path));
  const GameSet fixtures = parse_games(read_file(opt.data_path));
  const SeasonTable table = simulate_season(trace, fixtures, opt.sims, opt.seed);

  if (!opt.out_path.empty()) {
    write_file(opt.out_path, season_to_csv(table));
  }

  std::size_t width = 4;
  for (const auto& row : table.rows) width = std::max(width, row.team.size());
  out << std::left << std::setw(6) << "rank"
      << std::setw(static_cast<int>(width) + 2) << "team" << std::right
      << std::setw(10) << "exp_pts" << std::setw(12) << "point_diff" << '\n';
  for (const auto& row : table.rows) {
    out << std::left << std::setw(6) << row.rank
        << std::setw(static_cast<int>(width) + 2) << row.team << std::right
        << std::setw(10) << fmt(row.expected_points, 2) << std::setw(12)
        << fmt(row.point_diff, 1) << '\n';
  }
  return kExitOk;
}

struct ForestOptions {
  std::string trace_path;
  std::string family;
  std::string out_path;
  std::string svg_path;  // optional
  double mass = 0.95;
};

int cmd_forest(const ForestOptions& opt, std::ostream& out) {
  const EffectFamily family = parse_family(opt.family);
  const Trace trace = parse_trace_csv(read_file(opt.trace_path));
  const PosteriorSummary summary = posterior_summary(trace, opt.mass);
  const std::vector<ForestRow> rows = forest_data(summary, family);

  write_file(opt.out_path, forest_to_csv(rows, family));
  if (!opt.svg_path.empty()) {
    const std::string title =
        std::string(family == EffectFamily::att ? "Attack" : "Defense") +
        " effects (" + fmt(100.0 * opt.mass, 0) + "% HPD)";
    write_file(opt.svg_path, render_forest_svg(rows, title));
  }
  out << "forest: family=" << opt.family << " rows=" << rows.size() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Hierarchical Poisson attack/defense model for rugby scores"};
  app.require_subcommand(1);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the model to a fixture CSV");
  fit_cmd->add_option("--data", fit.data_path, "Fixture CSV path")->required();
  fit_cmd->add_option("--out", fit.out_path, "Trace CSV output path")
      ->required();
  fit_cmd->add_option("--chains", fit.config.chains, "Number of chains");
  fit_cmd->add_option("--warmup", fit.config.warmup,
                      "Warmup iterations per chain");
  fit_cmd->add_option("--draws", fit.config.draws,
                      "Recorded draws per chain");
  fit_cmd->add_option("--seed", fit.config.seed, "Random seed");
  fit_cmd->add_option("--target-accept", fit.config.target_accept,
                      "Step-size adaptation target in (0,1)");
  fit_cmd->add_option("--max-depth", fit.config.max_tree_depth,
                      "Maximum trajectory doublings");

  std::string diagnose_trace;
  auto* diagnose_cmd =
      app.add_subcommand("diagnose", "Convergence diagnostics for a trace");
  diagnose_cmd->add_option("--trace", diagnose_trace, "Trace CSV path")
      ->required();

  PredictOptions predict;
  auto* predict_cmd =
      app.add_subcommand("predict", "Predictive score distribution for one fixture");
  predict_cmd->add_option("--trace", predict.trace_path, "Trace CSV path")
      ->required();
  predict_cmd->add_option("--home", predict.home, "Home team")->required();
  predict_cmd->add_option("--away", predict.away, "Away team")->required();
  predict_cmd->add_option("--seed", predict.seed, "Random seed");

  RankOptions rank;
  auto* rank_cmd =
      app.add_subcommand("rank", "Simulated-season championship ranking");
  rank_cmd->add_option("--trace", rank.trace_path, "Trace CSV path")
      ->required();
  rank_cmd->add_option("--data", rank.data_path, "Fixture CSV path")
      ->required();
  rank_cmd->add_option("--out", rank.out_path, "Season table CSV output path");
  rank_cmd->add_option("--sims", rank.sims, "Season simulations");
  rank_cmd->add_option("--seed", rank.seed, "Random seed");

  ForestOptions forest;
  auto* forest_cmd =
      app.add_subcommand("forest", "Forest-plot data for one effect family");
  forest_cmd->add_option("--trace", forest.trace_path, "Trace CSV path")
      ->required();
  forest_cmd->add_option("--family", forest.family, "att or def")->required();
  forest_cmd->add_option("--out", forest.out_path, "Forest CSV output path")
      ->required();
  forest_cmd->add_option("--svg", forest.svg_path, "Optional SVG output path");
  forest_cmd->add_option("--mass", forest.mass, "HPD probability mass");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit, out);
    if (*diagnose_cmd) return cmd_diagnose(diagnose_trace, out);
    if (*predict_cmd) return cmd_predict(predict, out);
    if (*rank_cmd) return cmd_rank(rank, out);
    if (*forest_cmd) return cmd_forest(forest, out);
  } catch (const SamplerError& e) {
    err << "sampler error: " << e.what() << '\n';
    return kExitSampler;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  err << "no subcommand given\n";
  return kExitInput;
}

}  // namespace ruck::cli
