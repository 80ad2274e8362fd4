#include <gtest/gtest.h>

#include "wfseq/derham.hpp"

using namespace wfseq;

namespace {

Domain d3() { return Domain::of(reference_split()); }

}  // namespace

TEST(Derham, SequenceExamples) {
  auto a = check_exactness({"VVVV", Bc::Zero, 3, 3, false});
  EXPECT_EQ(a.dims, (std::vector<std::size_t>{35, 78, 54, 11}));
  EXPECT_TRUE(a.exact);
  auto b = check_exactness({"SLVV", Bc::None, 3, 3, false});
  EXPECT_EQ(b.dims, (std::vector<std::size_t>{28, 105, 90, 12}));
  EXPECT_EQ(b.alternating_sum, 1);
  EXPECT_TRUE(b.exact);
  auto c = check_exactness({"SSSL", Bc::Zero, 5, 3, false});
  EXPECT_EQ(c.dims, (std::vector<std::size_t>{12, 30, 26, 8}));
  EXPECT_TRUE(c.exact);
}

TEST(Derham, AllSequencesExact) {
  for (int r : {3, 4})
    for (const auto& s : all_sequences(3, r)) EXPECT_TRUE(check_exactness(s).exact) << s.label();
  for (int r = 1; r <= 4; ++r)
    for (const auto& s : all_sequences(2, r)) EXPECT_TRUE(check_exactness(s).exact) << s.label();
}

TEST(Derham, MeanZeroIsNeeded) {
  // div of a field with nonzero normal trace need not have zero mean
  const auto& div = diff_matrix(DiffOp::Div, reference_split().patch(), 1);
  auto v2 = build_space(Family::V2, 1, Bc::None, d3());
  EXPECT_FALSE(maps_into(*v2, div, *build_space(Family::CalV3, 0, Bc::Zero, d3())));
  EXPECT_TRUE(maps_into(*build_space(Family::V2, 1, Bc::Zero, d3()), div, *build_space(Family::V3, 0, Bc::Zero, d3())));
}

TEST(Derham, RankNullity) {
  for (int r = 3; r <= 5; ++r)
    for (const auto& a : rank_nullity_audit(r)) EXPECT_TRUE(a.ok()) << a.seq.label() << " " << a.sum;
  auto a = rank_nullity_audit(3);
  EXPECT_EQ(a[3].dims, (std::vector<std::size_t>{28, 105, 90, 12}));
}

TEST(Derham, Potentials) {
  for (const auto& c : potential_clauses()) {
    int r = smallest_nontrivial_degree(c, d3());
    auto rep = certify_potential(c, d3(), r, 20, 5);
    EXPECT_TRUE(rep.ok()) << c.id << " r=" << r;
  }
}

TEST(Derham, PotentialRoundTrip) {
  // div v = p for p in the zero-mean ring CalV3 at r = 1, v in ring L2
  const auto& c = potential_clauses()[0];
  auto h = hypothesis_space(c, 1, d3());
  auto w = potential_space(c, 1, d3());
  const auto& div = diff_matrix(DiffOp::Div, reference_split().patch(), 2);
  std::mt19937_64 g(9);
  auto p = random_member(*h, g);
  auto v = solve_potential(p, *h, *w, div);
  EXPECT_EQ(div.apply(v), p);
  EXPECT_TRUE(membership(v, *w));

  std::vector<Rational> one(p.size(), Rational(1));
  EXPECT_THROW(solve_potential(one, *h, *w, div), Error);
}

TEST(Derham, GradientTargets) {
  // v = grad of a random member of ring S^0_4 is recovered
  auto s = build_space(Family::S0, 4, Bc::Zero, d3());
  const auto& grad = diff_matrix(DiffOp::Grad, reference_split().patch(), 4);
  std::mt19937_64 g(2);
  auto u = random_member(*s, g);
  auto v = grad.apply(u);
  auto h = subspace_kernel(*build_space(Family::S1, 3, Bc::Zero, d3()), diff_matrix(DiffOp::Curl, reference_split().patch(), 3), "curl=0");
  auto w = solve_potential(v, *h, *s, grad);
  EXPECT_EQ(w, u);  // ring S^0 has no constants
}

TEST(Derham, DimensionTables) {
  for (DimTable t : {DimTable::VL, DimTable::CT, DimTable::Smooth, DimTable::Rings}) {
    int lo, hi;
    dim_table_range(t, lo, hi);
    auto rows = dim_table(dim_table_specs(t, lo, hi));
    EXPECT_FALSE(rows.empty());
    std::size_t bad = 0;
    for (const auto& r : rows) bad += !r.match();
    // the three entries at the bottom of their ranges discussed in the README
    EXPECT_EQ(bad, t == DimTable::VL ? 2u : t == DimTable::CT ? 1u : 0u) << dim_table_name(t);
  }
}

TEST(Derham, Digest) {
  EXPECT_EQ(fnv1a(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a("a"), "af63dc4c8601ec8c");
}
