#include <gtest/gtest.h>

#include "homalg/series.hpp"
#include "support.hpp"

using namespace homalg;

namespace {

std::vector<long> as_longs(const std::vector<Integer>& v) {
  std::vector<long> out;
  for (const auto& c : v) out.push_back(c.get_si());
  return out;
}

}  // namespace

TEST(RationalSeries, ExpandsKnownSeries) {
  EXPECT_EQ(as_longs(homology_series(HomologySide::poisson, 0).expand(8)),
            (std::vector<long>{1, 4, 4, 8, 7, 12, 10, 16, 13}));
  EXPECT_EQ(as_longs(homology_series(HomologySide::hochschild, 1).expand(8)),
            (std::vector<long>{0, 4, 4, 12, 9, 20, 14, 28, 19}));
  EXPECT_EQ(as_longs(homology_series(HomologySide::poisson, 3).expand(8)),
            (std::vector<long>{0, 0, 0, 0, 1, 0, 2, 0, 3}));
}

TEST(RationalSeries, MatchesLongDivisionOracle) {
  const std::vector<long> den{1, 0, -2, 0, 1};
  const std::vector<std::vector<long>> nums{{1, 4, 2}, {0, 4, 4, 4, 1}, {0, 0, 0, 4, 2}, {0, 0, 0, 0, 1}};
  const std::vector<std::size_t> idx{0, 1, 2, 3};
  for (std::size_t k = 0; k < nums.size(); ++k)
    EXPECT_EQ(as_longs(homology_series(HomologySide::poisson, idx[k]).expand(30)),
              testing_support::long_division(nums[k], den, 30));
}

TEST(RationalSeries, SidesCoincide) {
  for (std::size_t i = 0; i <= 4; ++i)
    EXPECT_EQ(homology_series(HomologySide::poisson, i), homology_series(HomologySide::hochschild, i));
  EXPECT_THROW(homology_series(HomologySide::poisson, 5), std::out_of_range);
}

TEST(RationalSeries, GeneratorDegreesReproduceSeries) {
  for (std::size_t i = 0; i <= 4; ++i)
    EXPECT_EQ(generator_series(generator_degrees(i)), homology_series(HomologySide::poisson, i)) << i;
}

TEST(RationalSeries, CanonicalFormAndEquality) {
  const RationalSeries a(IntPoly{2, 2}, IntPoly{2, -2});  // (1+t)/(1-t)
  EXPECT_EQ(a.numerator(), (IntPoly{1, 1}));
  EXPECT_EQ(a.denominator(), (IntPoly{1, -1}));
  const RationalSeries b(IntPoly{1, 2, 1}, IntPoly{1, 0, -1});  // same after cancelling 1+t
  EXPECT_EQ(a, b);
  EXPECT_EQ(as_longs(a.expand(4)), (std::vector<long>{1, 2, 2, 2, 2}));
}

TEST(RationalSeries, ExpansionIsLinear) {
  for (std::size_t i = 0; i + 1 <= 4; ++i) {
    const auto s = homology_series(HomologySide::poisson, i), t = homology_series(HomologySide::poisson, i + 1);
    const auto sum = (s + t).expand(20), es = s.expand(20), et = t.expand(20);
    for (std::size_t k = 0; k <= 20; ++k) EXPECT_EQ(sum[k], es[k] + et[k]);
  }
}

TEST(RationalSeries, CoefficientsAreNonnegative) {
  for (std::size_t i = 0; i <= 4; ++i)
    for (const auto& c : homology_series(HomologySide::poisson, i).expand(40)) EXPECT_GE(c, 0);
}

TEST(RationalSeries, RejectsBadDenominators) {
  EXPECT_THROW(RationalSeries(IntPoly{1}, IntPoly{}), std::invalid_argument);
  const RationalSeries s(IntPoly{1}, IntPoly{0, 1});
  EXPECT_THROW(s.expand(3), std::domain_error);
  EXPECT_THROW(RationalSeries(IntPoly{1}, IntPoly{2, 1}).expand(3), std::domain_error);
}

TEST(Compare, FlagsInjectedFault) {
  DimTable t("poisson", 4, 6);
  for (std::size_t i = 0; i <= 4; ++i) {
    const auto c = homology_series(HomologySide::poisson, i).expand(6);
    for (std::size_t d = 0; d <= 6; ++d) t.set(i, d, c[d].get_ui());
  }
  EXPECT_TRUE(compare(t, 6).verdict);
  EXPECT_EQ(compare(t, 6).cells.size(), 35u);
  t.set(2, 5, 7);
  const auto r = compare(t, 6);
  EXPECT_FALSE(r.verdict);
  ASSERT_EQ(r.mismatches().size(), 1u);
  EXPECT_EQ(r.mismatches()[0].i, 2u);
  EXPECT_EQ(r.mismatches()[0].d, 5u);
  EXPECT_EQ(r.to_json()["verdict"], "fail");
  EXPECT_THROW(compare(t, 7), std::invalid_argument);
}
