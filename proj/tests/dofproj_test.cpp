#include <gtest/gtest.h>

#include <random>

#include "wfseq/dofproj.hpp"

using namespace wfseq;

namespace {

void expect_unisolvent(DofLemma l, int r, std::size_t dim) {
  auto rep = check_unisolvency(l, r, reference_split());
  EXPECT_EQ(rep.dim, dim) << lemma_name(l);
  EXPECT_EQ(rep.count, dim) << lemma_name(l);
  EXPECT_EQ(rep.rank, dim) << lemma_name(l);
  EXPECT_TRUE(rep.counts_match()) << lemma_name(l) << " printed " << rep.printed_total;
}

}  // namespace

TEST(Dofs, UnisolventAtThree) {
  expect_unisolvent(DofLemma::S0, 3, 28);
  expect_unisolvent(DofLemma::L1, 3, 105);
  expect_unisolvent(DofLemma::V2, 3, 90);
  expect_unisolvent(DofLemma::V3, 3, 12);
  expect_unisolvent(DofLemma::S1, 3, 42);
  expect_unisolvent(DofLemma::L2, 3, 27);
  expect_unisolvent(DofLemma::V3a, 3, 12);
}

TEST(Dofs, UnisolventAtFour) {
  expect_unisolvent(DofLemma::S2, 4, 66);
  expect_unisolvent(DofLemma::L3, 4, 9);
}

TEST(Dofs, ClassCountsMatchPrinted) {
  for (int r = 3; r <= 5; ++r)
    for (DofLemma l : all_lemmas()) {
      if (r < lemma_min_degree(l)) continue;
      auto s = build_dofs(l, r, reference_split());
      for (const auto& c : s.classes) EXPECT_EQ(static_cast<long>(c.count()), c.printed) << c.tag << " r=" << r;
    }
}

TEST(Dofs, FaceDivergenceCountBelowMinimumDegree) {
  // at r = 3 the face classes of S2 and L3 print 4 functionals but carry none
  auto rep = check_unisolvency(DofLemma::L3, 3, reference_split());
  EXPECT_EQ(rep.dim, 1u);
  EXPECT_EQ(rep.printed_total, 9);
  EXPECT_FALSE(rep.counts_match());
  EXPECT_THROW(projection(DofLemma::L3, 3, reference_split()), Error);
}

TEST(Dofs, InputOfWrongRankIsRejected) {
  const SplitComplex& c = reference_split();
  EXPECT_THROW(build_dofs(DofLemma::S0, 3, c, FieldLayout::vector_on(c.patch(), 3)), Error);
  EXPECT_THROW(parse_lemma("S7"), Error);
}

TEST(Projection, ReproducesTargetSpace) {
  const SplitComplex& c = reference_split();
  std::mt19937_64 g(3);
  for (DofLemma l : {DofLemma::S0, DofLemma::L1, DofLemma::V3a}) {
    auto p = projection(l, 3, c);
    auto u = random_member(*p.target, g);
    EXPECT_EQ(p.apply(u), u) << lemma_name(l);
  }
}

TEST(Projection, Commutes) {
  auto rep = check_commute("SLVV", 3, 2, 42, reference_split());
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.samples, 4);
  auto again = check_commute("SLVV", 3, 2, 42, reference_split());
  EXPECT_EQ(rep.digest, again.digest);
  EXPECT_TRUE(check_commute("SSLV", 3, 1, 7, reference_split()).ok());
}

TEST(Projection, FrameInvariant) {
  auto rep = check_frame_invariance(3);
  EXPECT_EQ(rep.equal.size(), 9u);
  EXPECT_TRUE(rep.ok());
}

TEST(JumpLemmas, HoldAndAreSharp) {
  for (const auto& j : check_jump_lemmas(2, 10, 42)) {
    EXPECT_EQ(j.conclusion_held, 10) << j.name;
    EXPECT_EQ(j.violation_caught, 10) << j.name;
  }
}
