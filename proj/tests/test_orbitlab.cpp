#include "nilorb/orbitlab.hpp"

#include <gtest/gtest.h>

#include <array>
#include <set>

using namespace nilorb;

namespace {

// Independent oracle: distribution of Witt sums over Q_lambda by dynamic
// programming over the odd parts (no tuple materialization).
std::map<WittClass, std::int64_t> witt_distribution(const Partition& lambda, const PadicCtx& ctx) {
  std::map<WittClass, std::int64_t> dist{{WittClass{}, 1}};
  for (int j : lambda.odd_parts()) {
    std::map<WittClass, std::int64_t> next;
    for (const auto& [w, n] : dist)
      for (const QFormClass& q : isometry_classes(lambda.multiplicity(j))) next[witt_add(w, q.cls, ctx)] += n;
    dist = std::move(next);
  }
  return dist;
}

// All partitions of n by a simple generator, filtered by the even-multiplicity rule.
std::set<std::vector<int>> lambda_oracle(int n) {
  std::set<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rem, int maxp) -> void {
    if (rem == 0) {
      bool ok = true;
      for (int x : cur)
        if (x % 2 == 0 && std::count(cur.begin(), cur.end(), x) % 2) ok = false;
      if (ok) out.insert(cur);
      return;
    }
    for (int x = 1; x <= std::min(rem, maxp); ++x) {
      cur.push_back(x);
      self(self, rem - x, x);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

WittClass cls(SquareClass c) { return witt_of_entry(c); }

QFormClass deg1(SquareClass c) { return {1, cls(c)}; }

}  // namespace

TEST(Partition, RejectsOddMultiplicityEvenPart) {
  EXPECT_THROW(Partition({2}), std::invalid_argument);
  EXPECT_THROW(Partition({0, 1}), std::invalid_argument);
  EXPECT_NO_THROW(Partition({2, 2, 1}));
}

TEST(Partition, Statistics) {
  Partition p({5, 3, 3, 1, 1, 1, 2, 2});
  EXPECT_EQ(p.size(), 18);
  EXPECT_EQ(p.num_parts(), 8);
  EXPECT_EQ(p.odd_parts(), (std::vector<int>{1, 3, 5}));
  EXPECT_EQ(p.count_a(), 1);
  EXPECT_EQ(p.count_b(), 1);
  EXPECT_EQ(p.count_c(), 1);
  EXPECT_EQ(p.odd_multiplicity(), 6);
  EXPECT_FALSE(p.very_even());
  EXPECT_TRUE(Partition({4, 4, 2, 2}).very_even());
}

TEST(Partition, SmallCases) {
  auto p1 = partitions_even_mult(1);
  ASSERT_EQ(p1.size(), 1u);
  EXPECT_EQ(p1[0].parts(), (std::vector<int>{1}));
  auto p2 = partitions_even_mult(2);
  ASSERT_EQ(p2.size(), 1u);
  EXPECT_EQ(p2[0].parts(), (std::vector<int>{1, 1}));
  auto p4 = partitions_even_mult(4);
  ASSERT_EQ(p4.size(), 3u);
  EXPECT_EQ(p4[0].parts(), (std::vector<int>{3, 1}));
  EXPECT_EQ(p4[1].parts(), (std::vector<int>{2, 2}));
  EXPECT_EQ(p4[2].parts(), (std::vector<int>{1, 1, 1, 1}));
}

TEST(Partition, MatchesFilteredOracle) {
  for (int n = 1; n <= 14; ++n) {
    std::set<std::vector<int>> got;
    auto ps = partitions_even_mult(n);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      got.insert(ps[i].parts());
      if (i) {
        EXPECT_GT(ps[i - 1], ps[i]);  // strictly reverse-lexicographic
      }
    }
    EXPECT_EQ(got, lambda_oracle(n)) << "n=" << n;
  }
}

TEST(Counting, OneDimensionalExamples) {
  EXPECT_EQ(count_n1(1, cls(SquareClass::One)), 1);
  EXPECT_EQ(count_n1(1, {ResWittClass::U1Rho, ResWittClass::U1}), 0);
  EXPECT_EQ(count_n1(3, cls(SquareClass::One)), 10);
  EXPECT_EQ(count_n1(2, {ResWittClass::U1Rho, ResWittClass::U1Rho}), 0);
  EXPECT_EQ(count_n1(2, WittClass{}), 4);
  EXPECT_EQ(count_n1(0, WittClass{}), 1);
  EXPECT_EQ(count_n1(0, cls(SquareClass::Rho)), 0);
  EXPECT_EQ(count_n1(2, cls(SquareClass::Rho)), 0);
}

TEST(Counting, TwoDimensionalExamples) {
  WittClass quat{ResWittClass::U1Rho, ResWittClass::U1Rho};
  EXPECT_EQ(count_n2(0, WittClass{}), 1);
  EXPECT_EQ(count_n2(1, quat), 0);
  EXPECT_EQ(count_n2(2, WittClass{}), 7);
  EXPECT_EQ(count_n2(1, cls(SquareClass::One)), 0);
}

TEST(Counting, ClosedFormExamples) {
  for (const WittClass& u : all_witt_classes()) EXPECT_EQ(count_closed(0, 0, 1, u), 1);
  EXPECT_EQ(count_closed(3, 0, 0, cls(SquareClass::One)), 10);
  EXPECT_EQ(count_closed(0, 1, 0, {ResWittClass::U1Rho, ResWittClass::U1Rho}), 0);
  EXPECT_EQ(count_closed(0, 0, 0, WittClass{}), 1);
  EXPECT_EQ(count_closed(0, 0, 0, cls(SquareClass::Pi)), 0);
}

TEST(Counting, BruteExamples) {
  auto ctx = PadicCtx::make(5);
  EXPECT_EQ(count_brute(Partition({2, 2}), WittClass{}, *ctx), 1);
  EXPECT_EQ(count_brute(Partition({1, 3, 5}), cls(SquareClass::One), *ctx), 10);
  EXPECT_EQ(count_brute(Partition({1}), {ResWittClass::U1Rho, ResWittClass::U1Rho}, *ctx), 0);
}

// Closed form, brute force, DP oracle and enumeration agree everywhere up to n = 12.
class CountingAgreement : public ::testing::TestWithParam<std::int64_t> {};

TEST_P(CountingAgreement, AllPartitionsAllClasses) {
  auto ctx = PadicCtx::make(GetParam());
  for (int n = 1; n <= 12; ++n)
    for (const Partition& lambda : partitions_even_mult(n)) {
      auto dist = witt_distribution(lambda, *ctx);
      std::int64_t total = 0;
      for (const WittClass& u : all_witt_classes()) {
        const std::int64_t closed = count_orbits(lambda, u);
        const std::int64_t brute = count_brute(lambda, u, *ctx);
        const auto tuples = enumerate_tuples(lambda, u, *ctx);
        EXPECT_EQ(closed, brute) << lambda.to_string() << " " << to_string(u);
        EXPECT_EQ(brute, dist[u]) << lambda.to_string() << " " << to_string(u);
        EXPECT_EQ(static_cast<std::int64_t>(tuples.size()), brute) << lambda.to_string() << " " << to_string(u);
        EXPECT_EQ(std::set<QTuple>(tuples.begin(), tuples.end()).size(), tuples.size());
        for (const QTuple& t : tuples) {
          check_tuple_shape(lambda, t);
          EXPECT_EQ(witt_of_tuple(t, *ctx), u);
        }
        EXPECT_EQ(tuples.empty(), lambda.odd_multiplicity() < aniso_dim(u) || brute == 0);
        total += brute;
      }
      std::int64_t expect = detail::ipow(4, lambda.count_a()) * detail::ipow(7, lambda.count_b()) *
                            detail::ipow(8, lambda.count_c());
      EXPECT_EQ(total, expect) << lambda.to_string();
    }
}

INSTANTIATE_TEST_SUITE_P(BothParities, CountingAgreement, ::testing::Values(5, 7));

TEST(Enumerate, StepOneCases) {
  auto ctx = PadicCtx::make(7);
  auto hyp = enumerate_tuples(Partition({2, 2}), WittClass{}, *ctx);
  ASSERT_EQ(hyp.size(), 1u);
  EXPECT_TRUE(hyp[0].empty());
  EXPECT_TRUE(enumerate_tuples(Partition({2, 2}), cls(SquareClass::One), *ctx).empty());
  auto rho = enumerate_tuples(Partition({1}), cls(SquareClass::Rho), *ctx);
  ASSERT_EQ(rho.size(), 1u);
  EXPECT_EQ(rho[0], (QTuple{deg1(SquareClass::Rho)}));
}

TEST(Enumerate, ThreeDistinctPartsExample) {
  auto ctx = PadicCtx::make(5);
  std::set<QTuple> expect;
  for (SquareClass a : kAllSquareClasses) {
    QFormClass one = deg1(SquareClass::One), x = deg1(a), y = deg1(negate(a, *ctx));
    expect.insert({one, x, y});
    expect.insert({x, one, y});
    expect.insert({x, y, one});
  }
  ASSERT_EQ(expect.size(), 10u);
  auto got = enumerate_tuples(Partition({1, 3, 5}), cls(SquareClass::One), *ctx);
  EXPECT_EQ(std::set<QTuple>(got.begin(), got.end()), expect);
}

TEST(OrbitLabels, TotalsAndVeryEvenDoubling) {
  for (std::int64_t p : {5, 7}) {
    auto ctx = PadicCtx::make(p);
    for (int n = 1; n <= 10; ++n)
      for (const QFormClass& q : isometry_classes(n)) {
        auto o = orbit_labels(q, GroupKind::O, *ctx);
        auto so = orbit_labels(q, GroupKind::SO, *ctx);
        std::int64_t total = 0, ve = 0;
        for (const Partition& lambda : partitions_even_mult(n)) {
          total += count_brute(lambda, q.cls, *ctx);
          ve += lambda.very_even();
        }
        EXPECT_EQ(static_cast<std::int64_t>(o.size()), total);
        EXPECT_EQ(static_cast<std::int64_t>(so.size()), total + (q.cls.is_zero() ? ve : 0));
        for (const auto& l : so) EXPECT_NO_THROW(check_label(l, q, GroupKind::SO, *ctx));
      }
  }
}

TEST(OrbitLabels, SpecificPartitions) {
  auto ctx = PadicCtx::make(7);
  auto split4 = orbit_labels({4, WittClass{}}, GroupKind::SO, *ctx, Partition({2, 2}));
  ASSERT_EQ(split4.size(), 2u);
  EXPECT_EQ(split4[0].ve, VeTag::I);
  EXPECT_EQ(split4[1].ve, VeTag::II);
  WittClass quat{ResWittClass::U1Rho, ResWittClass::U1Rho};
  EXPECT_TRUE(orbit_labels({4, quat}, GroupKind::O, *ctx, Partition({2, 2})).empty());
  auto n2 = orbit_labels({2, WittClass{}}, GroupKind::SO, *ctx);
  ASSERT_EQ(n2.size(), 1u);
  EXPECT_EQ(n2[0].lambda, Partition({1, 1}));
  EXPECT_EQ(n2[0].qtup, (QTuple{{2, WittClass{}}}));
}

TEST(OrbitLabels, CheckLabelRejections) {
  auto ctx = PadicCtx::make(5);
  QFormClass q{3, cls(SquareClass::One)};
  OrbitLabel wrong_sum{Partition({3}), {{1, cls(SquareClass::Rho)}}, std::nullopt};
  EXPECT_THROW(check_label(wrong_sum, q, GroupKind::O, *ctx), std::invalid_argument);
  OrbitLabel wrong_n{Partition({1}), {{1, cls(SquareClass::One)}}, std::nullopt};
  EXPECT_THROW(check_label(wrong_n, q, GroupKind::O, *ctx), std::invalid_argument);
  OrbitLabel good{Partition({3}), {{1, cls(SquareClass::One)}}, std::nullopt};
  EXPECT_NO_THROW(check_label(good, q, GroupKind::O, *ctx));
  OrbitLabel tagged = good;
  tagged.ve = VeTag::I;
  EXPECT_THROW(check_label(tagged, q, GroupKind::SO, *ctx), std::invalid_argument);
}
