#include <doctest.h>

#include <cmath>
#include <string>

#include "ruck/errors.hpp"
#include "ruck/forest.hpp"
#include "support/trace_builder.hpp"

using namespace ruck;

namespace {

PosteriorSummary tiny_summary() {
  PosteriorSummary summary;
  summary.mass = 0.95;
  summary.rows = {
      SummaryRow{"intercept", 2.9, 2.7, 3.1},
      SummaryRow{"att_raw_A", 0.4, 0.1, 0.7},
      SummaryRow{"att_A", 0.3, 0.0, 0.6},
      SummaryRow{"att_B", -0.3, -0.6, 0.0},
      SummaryRow{"def_A", -0.2, -0.5, 0.1},
      SummaryRow{"def_B", 0.2, -0.1, 0.5},
      SummaryRow{"tau_att", 8.0, 2.0, 20.0},
  };
  return summary;
}

}  // namespace

TEST_CASE("forest_data projects one family in team order") {
  const auto rows = forest_data(tiny_summary(), EffectFamily::att);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].team == "A");
  CHECK(rows[0].mean == 0.3);
  CHECK(rows[0].hpd_low == 0.0);
  CHECK(rows[0].hpd_high == 0.6);
  CHECK(rows[1].team == "B");
  // Centered family: means sum to zero.
  CHECK(rows[0].mean + rows[1].mean == doctest::Approx(0.0));

  const auto def_rows = forest_data(tiny_summary(), EffectFamily::def);
  CHECK(def_rows.size() == 2);
  CHECK(def_rows[0].mean == -0.2);

  PosteriorSummary empty;
  empty.rows = {SummaryRow{"intercept", 1.0, 0.5, 1.5}};
  CHECK_THROWS_AS(forest_data(empty, EffectFamily::att), ValidationError);
}

TEST_CASE("family parsing") {
  CHECK(parse_family("att") == EffectFamily::att);
  CHECK(parse_family("def") == EffectFamily::def);
  CHECK_THROWS_AS(parse_family("xyz"), ValidationError);
  CHECK(family_name(EffectFamily::att) == "att");
}

TEST_CASE("forest csv format") {
  const std::vector<ForestRow> rows{ForestRow{"A", 0.25, -0.5, 1.0},
                                    ForestRow{"B", -0.25, -1.0, 0.5}};
  CHECK(forest_to_csv(rows, EffectFamily::att) ==
        "family,team,mean,hpd_low,hpd_high\n"
        "att,A,0.25,-0.5,1\n"
        "att,B,-0.25,-1,0.5\n");
}

TEST_CASE("minimal svg render") {
  const std::vector<ForestRow> rows{ForestRow{"A", 0.0, -1.0, 1.0}};
  const std::string svg = render_forest_svg(rows, "test");
  CHECK(svg.starts_with("<svg"));
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find(">A</text>") != std::string::npos);
  CHECK(svg.find("<line") != std::string::npos);        // interval + zero line
  CHECK(svg.find("stroke-dasharray") != std::string::npos);  // zero reference
  CHECK(svg.find("height=\"70.00\"") != std::string::npos);  // 40 + 30*1
}

TEST_CASE("svg output is byte deterministic") {
  const std::vector<ForestRow> rows{ForestRow{"A", 0.1, -0.4, 0.9},
                                    ForestRow{"B", -0.1, -0.9, 0.4},
                                    ForestRow{"C", 0.0, -0.2, 0.2}};
  CHECK(render_forest_svg(rows, "effects") ==
        render_forest_svg(rows, "effects"));
}

TEST_CASE("six rows render six labels") {
  std::vector<ForestRow> rows;
  for (char c = 'A'; c < 'G'; ++c) {
    rows.push_back(ForestRow{std::string(1, c), 0.1 * (c - 'A') - 0.25,
                             0.1 * (c - 'A') - 0.5, 0.1 * (c - 'A')});
  }
  const std::string svg = render_forest_svg(rows, "all teams");
  std::size_t labels = 0;
  for (std::size_t pos = svg.find("</text>"); pos != std::string::npos;
       pos = svg.find("</text>", pos + 1)) {
    ++labels;
  }
  CHECK(labels == 7);  // title + 6 teams
  CHECK(svg.find("height=\"220.00\"") != std::string::npos);  // 40 + 30*6
}

TEST_CASE("svg rejects non-finite rows and escapes labels") {
  CHECK_THROWS_AS(render_forest_svg({}, "x"), ValidationError);
  const std::vector<ForestRow> bad{
      ForestRow{"A", std::nan(""), 0.0, 1.0}};
  CHECK_THROWS_AS(render_forest_svg(bad, "x"), ValidationError);

  const std::vector<ForestRow> awkward{ForestRow{"A&B<C>", 0.0, -1.0, 1.0}};
  const std::string svg = render_forest_svg(awkward, "t<&>");
  CHECK(svg.find("A&amp;B&lt;C&gt;") != std::string::npos);
  CHECK(svg.find("t&lt;&amp;&gt;") != std::string::npos);
}
