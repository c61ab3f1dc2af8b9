#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "kwp/datasets.hpp"
#include "kwp/model_selection.hpp"
#include "kwp/serialize.hpp"

using namespace kwp;

TEST(Json, NonFiniteNumbersRoundTrip) {
  for (double v : {1.5, -0.0, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}) {
    EXPECT_EQ(number_from_json(json::parse(number_to_json(v).dump())), v);
  }
  EXPECT_TRUE(std::isnan(number_from_json(number_to_json(std::nan("")))));
}

TEST(Json, ComparisonReportRoundTrips) {
  const auto r = compare(Sample(datasets::wheaton()), {ModelKind::Pareto, ModelKind::EP, ModelKind::KwP}, {}, "wheaton");
  const json j = r;
  const auto back = json::parse(j.dump()).get<ComparisonReport>();
  ASSERT_EQ(back.rows.size(), r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].kind, r.rows[i].kind);
    EXPECT_EQ(back.rows[i].fit->estimates, r.rows[i].fit->estimates);
    EXPECT_EQ(back.rows[i].fit->params, r.rows[i].fit->params);
    EXPECT_EQ(back.rows[i].fit->aic, r.rows[i].fit->aic);
    EXPECT_EQ(back.rows[i].fit->warnings, r.rows[i].fit->warnings);
  }
  EXPECT_EQ(json(back).dump(), j.dump());
  EXPECT_TRUE(j.at("rows")[0].at("fit").contains("minus2ll"));
  EXPECT_TRUE(j.at("rows")[0].at("fit").contains("n_used"));
}

TEST(Text, ComparisonTableHasColumnsInOrder) {
  const auto r = compare(Sample(datasets::wheaton()), {ModelKind::Pareto});
  const std::string t = comparison_text(r);
  const auto m = t.find("model"), e = t.find("estimates"), s = t.find("SEs"), a = t.find("AIC"), k = t.find("K-S"),
             l = t.find("-2l");
  EXPECT_LT(m, e);
  EXPECT_LT(e, s);
  EXPECT_LT(s, a);
  EXPECT_LT(a, k);
  EXPECT_LT(k, l);
  EXPECT_NE(t.find("Pareto"), std::string::npos);
}

TEST(Text, FormatDoubleRoundTrips) {
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(v)), v);
}
