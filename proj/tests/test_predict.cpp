#include <doctest.h>

#include <cmath>
#include <vector>

#include "ruck/errors.hpp"
#include "ruck/predict.hpp"
#include "support/trace_builder.hpp"

using namespace ruck;

TEST_CASE("posterior_summary on constant and varying columns") {
  Trace trace = testing::make_trace(
      {"A", "B"}, 2, 50,
      {{"intercept", {3.0}},
       {"att_A", {0.25}},
       {"att_B", {-0.25}}});
  // Give lp a spread so the interval is non-trivial.
  const std::size_t lp_col = trace.column_index("lp");
  for (std::size_t row = 0; row < trace.total_draws(); ++row) {
    trace.values[row * trace.columns.size() + lp_col] =
        static_cast<double>(row);
  }

  const PosteriorSummary summary = posterior_summary(trace);
  CHECK(summary.at("intercept").mean == 3.0);
  CHECK(summary.at("intercept").hpd_low == 3.0);
  CHECK(summary.at("intercept").hpd_high == 3.0);
  CHECK(summary.at("att_A").mean == 0.25);
  CHECK(summary.at("lp").hpd_high > summary.at("lp").hpd_low);
  CHECK_THROWS_AS((void)summary.at("nope"), LookupError);

  const std::vector<std::string> subset{"att_A", "att_B"};
  const PosteriorSummary narrow = posterior_summary(trace, subset);
  CHECK(narrow.rows.size() == 2);
  CHECK(narrow.at("att_A").mean + narrow.at("att_B").mean ==
        doctest::Approx(0.0));
}

TEST_CASE("predict_match on a symmetric single-draw trace") {
  // One posterior draw: intercept = log 20, everything else zero.
  const Trace trace = testing::make_trace({"A", "B"}, 1, 1,
                                          {{"intercept", {std::log(20.0)}}});
  const MatchPrediction pred = predict_match(trace, "A", "B", 99, 20000);

  // Both sides are Poisson(20).
  CHECK(std::abs(pred.home_mean - 20.0) < 0.2);
  CHECK(std::abs(pred.away_mean - 20.0) < 0.2);
  CHECK(pred.p_draw > 0.0);
  CHECK(std::abs(pred.p_home_win - pred.p_away_win) < 0.03);
  CHECK(std::abs(pred.p_home_win + pred.p_draw + pred.p_away_win - 1.0) <
        1e-12);

  CHECK(pred.home_interval.first >= 0);
  CHECK(pred.home_interval.first <= pred.home_interval.second);
  // Poisson(20) mass inside [12, 28] is about 95%.
  CHECK(pred.home_interval.first >= 9);
  CHECK(pred.home_interval.second <= 31);
}

TEST_CASE("home advantage shifts the prediction") {
  const Trace trace = testing::make_trace(
      {"A", "B"}, 1, 1,
      {{"intercept", {std::log(20.0)}}, {"home", {std::log(1.5)}}});
  const MatchPrediction pred = predict_match(trace, "A", "B", 4, 20000);
  CHECK(std::abs(pred.home_mean - 30.0) < 0.3);
  CHECK(std::abs(pred.away_mean - 20.0) < 0.2);
  CHECK(pred.p_home_win > 0.7);
}

TEST_CASE("prediction is deterministic in the seed") {
  const Trace trace = testing::make_trace({"A", "B"}, 1, 1,
                                          {{"intercept", {std::log(10.0)}}});
  const MatchPrediction a = predict_match(trace, "A", "B", 7, 5000);
  const MatchPrediction b = predict_match(trace, "A", "B", 7, 5000);
  CHECK(a.home_mean == b.home_mean);
  CHECK(a.p_home_win == b.p_home_win);
  const MatchPrediction c = predict_match(trace, "A", "B", 8, 5000);
  CHECK((a.home_mean != c.home_mean || a.p_home_win != c.p_home_win));
}

TEST_CASE("unknown teams are rejected with the valid list") {
  const Trace trace = testing::make_trace({"A", "B"}, 1, 1,
                                          {{"intercept", {1.0}}});
  try {
    predict_match(trace, "Narnia", "B", 0, 1000);
    FAIL("expected LookupError");
  } catch (const LookupError& e) {
    const std::string what = e.what();
    CHECK(what.find("Narnia") != std::string::npos);
    CHECK(what.find("A, B") != std::string::npos);
  }
}
