#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "ufavg/sizes.hpp"

using namespace ufavg;

TEST(Sizes, UniversalSizeAtTwoIsHalfQuarticPlusHalfQuadratic) {
  for (std::uint64_t d = 1; d <= 50; ++d) {
    EXPECT_EQ(2 * universal_set_size(static_cast<int>(d), 2), d * d * d * d + d * d) << d;
  }
}

TEST(Sizes, UniversalSetBeatsDesignBoundFromThreeOn) {
  EXPECT_EQ(universal_set_size(2, 2), lower_bound_t2(2));
  for (int d = 3; d <= 50; ++d) EXPECT_LT(universal_set_size(d, 2), lower_bound_t2(d)) << d;
}

TEST(Sizes, RatioApproachesOneHalf) {
  EXPECT_DOUBLE_EQ(t2_size_ratio(2), 1.0);
  EXPECT_NEAR(t2_size_ratio(50), 0.5, 0.005);
}

TEST(Sizes, BinomialSmallValues) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(7, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(60, 30), 118264581564861424ull);
}

TEST(Sizes, WeylDimensionsOfFamiliarIrreps) {
  EXPECT_EQ(weyl_dimension({1, 0, 0}), 3u);
  EXPECT_EQ(weyl_dimension({2, 0, 0}), 6u);
  EXPECT_EQ(weyl_dimension({1, 0, -1}), 8u);
  EXPECT_EQ(weyl_dimension({2, 1, 0}), 8u);
  EXPECT_EQ(weyl_dimension({3, 0}), 4u);
  EXPECT_EQ(weyl_dimension({2, 2, 2, 2}), 1u);
  EXPECT_THROW(weyl_dimension({0, 1}), std::invalid_argument);
}

TEST(Sizes, MixedSpanClosedForms) {
  for (int d = 2; d <= 12; ++d) {
    EXPECT_EQ(mixed_span_dimension(d, 1, 1), lower_bound_t2(d));
    EXPECT_EQ(mixed_span_dimension(d, 2, 0), universal_set_size(d, 2));
    EXPECT_EQ(mixed_span_dimension(d, 3, 0), universal_set_size(d, 3));
  }
  EXPECT_EQ(mixed_span_dimension(3, 2, 1), 270u);
  EXPECT_EQ(mixed_span_dimension(2, 3, 2), 56u);
}

TEST(Sizes, MixedSpanAgreesWithRankOracle) {
  const std::vector<std::array<int, 3>> cases{{2, 1, 0}, {2, 2, 0}, {2, 1, 1}, {2, 2, 1}, {3, 1, 1}, {2, 3, 0}};
  for (const auto& [d, r, s] : cases) {
    std::size_t side = 1;
    for (int i = 0; i < r + s; ++i) side *= static_cast<std::size_t>(d);
    const auto expected = mixed_span_dimension(d, r, s);
    const std::size_t budget = std::max<std::size_t>(2 * side * side, 4 * expected);
    EXPECT_EQ(operator_span_dim(d, r, s, budget, 11, {}), expected) << d << "," << r << "," << s;
  }
}

TEST(Sizes, RankOracleNeedsEnoughSamples) {
  // Below 2·d^(2(r+s)) is a precondition violation.
  EXPECT_THROW(operator_span_dim(2, 2, 0, 10, 1), std::invalid_argument);
  // The minimum budget already saturates: the last batch adds nothing.
  EXPECT_EQ(operator_span_dim(2, 2, 0, 32, 1), 10u);
}

TEST(Sizes, SectorTermCountMatchesUniversalSize) {
  for (int t = 1; t <= 6; ++t) EXPECT_EQ(sector_term_count(build_schur_basis(2, t)), universal_set_size(2, t));
}

TEST(Sizes, TableRowsReproduceTheComparison) {
  const auto rows = emit_table();
  ASSERT_EQ(rows.size(), 11u);
  const int d[] = {2, 2, 2, 3, 3, 5, 6, 7, 8, 9, 10};
  const int t[] = {2, 3, 5, 2, 3, 2, 2, 2, 2, 2, 2};
  const std::uint64_t universal[] = {10, 20, 56, 45, 165, 325, 666, 1225, 2080, 3321, 5050};
  const std::uint64_t bound[] = {10, 20, 56, 65, 270, 577, 1226, 2305, 3970, 6401, 9802};
  const std::uint64_t known[] = {12, 24, 60, 72, 360, 600, 2520, 2352, 20160, 12960, 95040};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].d, d[i]);
    EXPECT_EQ(rows[i].t, t[i]);
    EXPECT_EQ(rows[i].universal, universal[i]);
    EXPECT_EQ(rows[i].bound, bound[i]);
    EXPECT_EQ(rows[i].known_unitary, known[i]);
    EXPECT_EQ(rows[i].known_source, "table-citation");
    EXPECT_EQ(rows[i].bound_source, t[i] == 2 ? "closed-form" : "weyl-dimension");
  }
  EXPECT_EQ(rows[0].known_sl, 1296u);
  EXPECT_EQ(rows[1].known_sl, 6336u);
  EXPECT_EQ(rows[2].known_sl, 54000u);
  for (std::size_t i = 3; i < rows.size(); ++i) EXPECT_FALSE(rows[i].known_sl.has_value());
}

TEST(Sizes, CsvHasHeaderAndOneLinePerRow) {
  const auto csv = size_table_csv(emit_table());
  EXPECT_EQ(csv.rfind("d,t,universal,bound,known_unitary,known_sl,bound_source,known_source\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
  EXPECT_NE(csv.find("\n7,2,1225,2305,2352,,closed-form,table-citation\n"), std::string::npos);
}
