#include <gtest/gtest.h>

#include <random>

#include "homalg/hochschild.hpp"
#include "support.hpp"

using namespace homalg;

namespace {

SklyaninParams params() { return sklyanin_params(Rational(1, 4), Rational(1, 9)); }

const KoszulComplex& complex6() {
  static const KoszulComplex kc(sklyanin_relations(params()), 6);
  return kc;
}

const std::vector<std::vector<std::size_t>> kExpected{
    {1, 4, 4, 8, 7, 12, 10, 16, 13},
    {0, 4, 4, 12, 9, 20, 14, 28, 19},
    {0, 0, 0, 4, 2, 8, 4, 12, 6},
    {0, 0, 0, 0, 1, 0, 2, 0, 3},
    {0, 0, 0, 0, 1, 0, 2, 0, 3},
};

}  // namespace

TEST(BarOperators, DegreeOneBoundaryIsCommutator) {
  const auto& alg = complex6().algebra();
  const BarChain c = BarChain::tensor({{1, 0}, {1, 1}});
  // b(a0 ⊗ a1) = a0 a1 − a1 a0
  SparseVector expected = alg.multiply_basis(1, 0, 1, 1);
  axpy(expected, -1, alg.multiply_basis(1, 1, 1, 0));
  BarChain want;
  for (const auto& [i, v] : expected) want.add_term({{2, static_cast<std::uint32_t>(i)}}, v);
  EXPECT_EQ(hochschild_b(alg, c), want);
}

TEST(BarOperators, UnitValues) {
  const auto& alg = complex6().algebra();
  EXPECT_TRUE(hochschild_b(alg, BarChain::tensor({unit_factor})).is_zero());
  EXPECT_EQ(hochschild_b(alg, BarChain::tensor({unit_factor, unit_factor, unit_factor})),
            BarChain::tensor({unit_factor, unit_factor}));
  EXPECT_EQ(connes_B(BarChain::tensor({unit_factor})), BarChain::tensor({unit_factor, unit_factor}, 2));
}

TEST(BarOperators, SquaresAndAnticommutatorVanish) {
  const auto& alg = complex6().algebra();
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> len(1, 4), wt(0, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const BarChain c = testing_support::random_bar_chain(rng, alg, len(rng), wt(rng));
    const BarChain bc = hochschild_b(alg, c);
    EXPECT_TRUE(hochschild_b(alg, bc).is_zero()) << "b^2, trial " << trial;
    const BarChain Bc = connes_B(c);
    EXPECT_TRUE(connes_B(Bc).is_zero()) << "B^2, trial " << trial;
    EXPECT_TRUE((hochschild_b(alg, Bc) + connes_B(bc)).is_zero()) << "bB+Bb, trial " << trial;
  }
}

TEST(BarChain, RejectsEmptyTensorAndReportsShape) {
  BarChain c;
  EXPECT_THROW(c.add_term({}, 1), std::invalid_argument);
  c.add_term({{1, 0}, {2, 3}}, 2);
  EXPECT_EQ(c.length(), 2u);
  EXPECT_EQ(c.weight(), 3u);
  EXPECT_TRUE(c.is_normalized());
  c.add_term({{1, 0}, {2, 3}}, -2);
  EXPECT_TRUE(c.is_zero());
}

TEST(KoszulComplex, Shape) {
  const auto& kc = complex6();
  EXPECT_EQ(kc.length(), 4u);
  EXPECT_EQ(kc.chain_dim(4, 4), 1u);
  EXPECT_EQ(kc.chain_dim(2, 5), 6u * 20);
  EXPECT_EQ(kc.chain_dim(3, 2), 0u);
  EXPECT_THROW(kc.subspace(9), std::out_of_range);
}

TEST(KoszulComplex, SubcomplexPropertyOnRandomChains) {
  const auto& kc = complex6();
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> mdist(1, 4), ddist(0, 6);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = mdist(rng), d = std::max(m, ddist(rng));
    const KoszulChain k = testing_support::random_koszul_chain(rng, kc, m, d);
    if (k.coeffs.empty()) continue;
    const BarChain bq = hochschild_b(kc.algebra(), q_embed(kc, k));
    const auto pre = kc.preimage(bq, m - 1, d);
    ASSERT_TRUE(pre.has_value()) << "trial " << trial;
    EXPECT_EQ(pre->coeffs, kc.boundary(k).coeffs);
    EXPECT_NO_THROW(koszul_b(kc, k));
    ++checked;
  }
  EXPECT_GT(checked, 80);
}

TEST(KoszulComplex, BoundarySquaresToZero) {
  const auto& kc = complex6();
  for (std::size_t d = 2; d <= 6; ++d)
    for (std::size_t m = 2; m <= std::min<std::size_t>(4, d); ++m)
      EXPECT_TRUE(product_is_zero(kc.boundary_matrix(m - 1, d), kc.boundary_matrix(m, d))) << m << "," << d;
}

TEST(KoszulComplex, EmbedsRelationsInDegreeTwo) {
  const auto& kc = complex6();
  const KoszulChain k{2, 2, {{0, Rational(1)}}};
  const BarChain q = q_embed(kc, k);
  const auto& r = kc.subspace(2).basis()[0];
  BarChain want;
  for (std::size_t w = 0; w < 16; ++w)
    if (r[w] != 0) want.add_term({unit_factor, {1, static_cast<std::uint32_t>(w / 4)}, {1, static_cast<std::uint32_t>(w % 4)}}, r[w]);
  EXPECT_EQ(q, want);
  EXPECT_EQ(kc.preimage(q, 2, 2), k);
}

TEST(Resolution, PrintedIdentities) {
  const auto id = resolution_identities(params());
  EXPECT_TRUE(id.Mx);
  EXPECT_TRUE(id.tN);
  // The printed N and M do not compose to zero.
  EXPECT_FALSE(id.NM);
}

TEST(Resolution, ReconciledMatricesFormAnExactResolution) {
  std::mt19937_64 rng(43);
  std::vector<SklyaninParams> ps{params()};
  for (int t = 0; t < 2; ++t) ps.push_back(testing_support::random_params(rng));
  for (const auto& p : ps) {
    EXPECT_TRUE(resolution_identities(p, reconciled_resolution_matrices(p)).all()) << p.to_string();
    EXPECT_TRUE(koszul_resolution_exactness(p, 5)) << p.to_string();
  }
}

TEST(Resolution, PrintedMatricesAreNotAComplex) {
  EXPECT_FALSE(koszul_resolution_exactness(params(), resolution_matrices(params()), 3));
}

TEST(HochschildHomology, DimensionsThroughWeightSix) {
  const HHTable t = complex6().homology_dims();
  for (std::size_t i = 0; i <= 4; ++i)
    for (std::size_t d = 0; d <= 6; ++d) EXPECT_EQ(t.at(i, d), kExpected[i][d]) << "HH_" << i << " weight " << d;
}

TEST(HochschildHomology, EulerCharacteristicMatchesChainDimensions) {
  const auto& kc = complex6();
  const HHTable t = kc.homology_dims();
  for (std::size_t d = 0; d <= 6; ++d) {
    long chi_h = 0, chi_c = 0;
    for (std::size_t i = 0; i <= 4; ++i) {
      const long s = i % 2 ? -1 : 1;
      chi_h += s * static_cast<long>(t.at(i, d));
      chi_c += s * static_cast<long>(kc.chain_dim(i, d));
    }
    EXPECT_EQ(chi_h, chi_c) << d;
  }
}

TEST(HochschildHomology, NormalizedBarAgreesInLowWeight) {
  const auto& kc = complex6();
  const HHTable t = kc.homology_dims();
  for (std::size_t d = 0; d <= 3; ++d) {
    const auto h = normalized_bar_homology(kc.algebra(), d);
    for (std::size_t i = 0; i < h.size(); ++i) EXPECT_EQ(h[i], i <= 4 ? t.at(i, d) : 0u) << i << "," << d;
  }
}

TEST(Cycles, PiAndDeltaAreCycles) {
  const auto& kc = complex6();
  const KoszulChain pi = cycle_pi(kc), delta = cycle_delta(kc);
  EXPECT_TRUE(koszul_b(kc, pi).coeffs.empty());
  EXPECT_TRUE(koszul_b(kc, delta).coeffs.empty());
  EXPECT_TRUE(hochschild_b(kc.algebra(), q_embed(kc, pi)).is_zero());
  const BarChain qpi = q_embed(kc, pi);
  const auto it = qpi.terms().find({{1, 2}, {1, 3}, {1, 0}, {1, 1}});
  ASSERT_NE(it, qpi.terms().end());
  EXPECT_EQ(it->second, 3);
  BarChain shifted;
  for (const auto& [t, c] : qpi.terms()) {
    BarChain::Tensor u{unit_factor};
    u.insert(u.end(), t.begin(), t.end());
    shifted.add_term(u, c);
  }
  EXPECT_EQ(q_embed(kc, delta), shifted);
}

TEST(Cycles, PiIsNotABoundary) {
  const auto& kc = complex6();
  const KoszulChain pi = cycle_pi(kc);
  const SparseMatrix in = kc.boundary_matrix(4, 4);
  SparseMatrix aug(in.rows(), in.cols() + 1);
  for (std::size_t r = 0; r < in.rows(); ++r)
    for (std::size_t c = 0; c < in.cols(); ++c) aug.set(r, c, in.at(r, c));
  for (const auto& [i, v] : pi.coeffs) aug.set(i, in.cols(), v);
  EXPECT_EQ(rank(aug), rank(in) + 1);
}

TEST(Cycles, PrintedClosedFormIsNotABarCycle) {
  const auto& kc = complex6();
  const BarChain printed = printed_q_pi(params());
  EXPECT_FALSE(hochschild_b(kc.algebra(), printed).is_zero());
  EXPECT_FALSE(kc.preimage(printed, 3, 4).has_value());
}
