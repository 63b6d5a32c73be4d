#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "tilegate/errors.hpp"
#include "tilegate/vertex.hpp"

using namespace tilegate;

namespace {

std::vector<VertexSolution> sols(std::initializer_list<VertexSolution> l) { return l; }

}  // namespace

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate_solutions(Rational(3, 2), {Rational(1, 4)}), sols({{0, 2, 0}, {2, 0, 1}, {3, 1, 0}, {6, 0, 0}}));
  EXPECT_TRUE(enumerate_solutions(Rational(3, 2), {Rational(1, 5)}).empty());
  auto four = enumerate_solutions(Rational(4), {Rational(1, 3)});
  EXPECT_NE(std::find(four.begin(), four.end(), VertexSolution{0, 6, 0}), four.end());
}

TEST(Enumerate, DomainErrors) {
  EXPECT_THROW(enumerate_solutions(Rational(1), {Rational(0)}), DomainError);
  EXPECT_THROW(enumerate_solutions(Rational(1), {Rational(1)}), DomainError);
  EXPECT_THROW(enumerate_solutions(Rational(-1), {Rational(1, 3)}), DomainError);
}

TEST(Enumerate, AgreesWithBruteForce) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> den(2, 30), sden(1, 12), snum(0, 48);
  for (int i = 0; i < 300; ++i) {
    const std::int64_t v = den(rng);
    std::uniform_int_distribution<std::int64_t> num(1, v - 1);
    const Rational a(num(rng), v);
    const Rational target(snum(rng), sden(rng));
    if (target > Rational(4)) continue;
    EXPECT_EQ(enumerate_solutions(target, {a}), oracle::brute_force_solutions(target, a)) << target << " " << a;
  }
}

TEST(Corner, Families) {
  auto f8 = corner_families(8);
  EXPECT_EQ(f8[0].numerator, Rational(3, 2));
  EXPECT_EQ(f8[1].numerator, Rational(1, 2));
  EXPECT_EQ(f8[0].member(2), Rational(3, 4));
  auto f5 = corner_families(5);
  EXPECT_EQ(f5[0].numerator, Rational(6, 5));
  EXPECT_EQ(f5[1].numerator, Rational(1, 5));
  auto f12 = corner_families(12);
  EXPECT_EQ(f12[0].numerator, Rational(5, 3));
  EXPECT_EQ(f12[1].numerator, Rational(2, 3));
  EXPECT_EQ(f12[0].label(12), "(2-4/n)/s");
  EXPECT_EQ(f12[1].label(12), "(1-4/n)/s");
  EXPECT_THROW(corner_families(4), DomainError);
}

TEST(Corner, Status) {
  EXPECT_EQ(corner_has_only_p_gt_q(8, {Rational(1, 8)}), CornerStatus::AllStrict);
  EXPECT_EQ(corner_has_only_p_gt_q(8, {Rational(1, 5)}), CornerStatus::NoSolutions);
  EXPECT_EQ(corner_has_only_p_gt_q(8, {Rational(1, 4)}), CornerStatus::ViolationExists);
  EXPECT_THROW(corner_has_only_p_gt_q(8, {Rational(1, 2)}), DomainError);
}

TEST(Corner, EmptyEnumerationMeansNoSolutions) {
  for (std::int64_t n = 5; n <= 40; ++n) {
    for (const Rational& a : small_angles(30)) {
      const bool empty = enumerate_solutions(corner_target(n), {a}).empty();
      EXPECT_EQ(empty, corner_has_only_p_gt_q(n, {a}) == CornerStatus::NoSolutions) << n << " " << a;
    }
  }
}

TEST(Corner, OctagonFamilySoundness) {
  for (std::int64_t s = 2; s <= 100; ++s) {
    const Rational a(3, 2 * s);
    if (a >= Rational(1, 2)) continue;
    const CornerStatus st = corner_has_only_p_gt_q(8, {a});
    if (a == Rational(1, 4)) {
      EXPECT_EQ(st, CornerStatus::ViolationExists);
    } else {
      EXPECT_TRUE(st == CornerStatus::AllStrict || st == CornerStatus::NoSolutions) << a;
    }
  }
}

TEST(PointTarget, Examples) {
  EXPECT_EQ(point_target(PointClass::polygon_vertex(), 8), Rational(3, 2));
  for (std::int64_t n : {5, 9, 100}) EXPECT_EQ(point_target(PointClass::free_interior(), n), Rational(4));
  EXPECT_EQ(point_target(PointClass::triangle_side(1), 7), Rational(2));
  EXPECT_EQ(point_target(PointClass::polygon_side(), 7), Rational(2));
  EXPECT_EQ(point_target(PointClass::triangle_side(2), 7), Rational(0));
}

TEST(Constants, ExceptionsAndAllowedSet) {
  for (const Rational& a : interior_exceptions()) {
    EXPECT_TRUE(is_interior_exception(a));
    auto s = enumerate_solutions(Rational(4), {a});
    EXPECT_TRUE(std::any_of(s.begin(), s.end(), [](const auto& x) { return x.q > x.p; })) << a;
  }
  EXPECT_FALSE(is_interior_exception(Rational(1, 6)));
  EXPECT_TRUE(is_allowed_angle(7, Rational(2, 7)));
  EXPECT_TRUE(is_allowed_angle(7, Rational(1, 3) + Rational(4, 21)));
  EXPECT_FALSE(is_allowed_angle(28, Rational(3, 7)));
}

TEST(Audit, OctagonCornerEquation) {
  AuditReport rep = audit_lemma(LemmaId::L3, {100, 0, -1});
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(rep.counterexamples.empty());
  ASSERT_FALSE(rep.witnesses.empty());
  EXPECT_EQ(rep.witnesses.front().a, Rational(1, 4));
  EXPECT_EQ(rep.witnesses.front().solution, (VertexSolution{0, 2, 0}));
}

TEST(Audit, InteriorExceptionWitnesses) {
  AuditReport rep = audit_lemma(LemmaId::L4, {60, 0, -1});
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.witnesses.size(), 5u);
  for (const auto& w : rep.witnesses) {
    ASSERT_TRUE(w.solution);
    EXPECT_GT(w.solution->q, w.solution->p);
  }
}

TEST(Audit, PolygonCornerFamiliesSmallRange) {
  AuditReport rep = audit_lemma(LemmaId::L5, {40, 5, 30});
  EXPECT_TRUE(rep.passed);
  EXPECT_GT(rep.cases_checked, 0);
}

TEST(Audit, ExceptionalAnglesCoveredExceptAt28) {
  AuditReport rep = audit_lemma(LemmaId::L6, {0, 5, 27});
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(rep.witnesses.empty());

  AuditReport with28 = audit_lemma(LemmaId::L6, {0, 28, 28});
  EXPECT_TRUE(with28.passed);
  ASSERT_EQ(with28.witnesses.size(), 1u);
  const AuditFinding& w = with28.witnesses.front();
  EXPECT_EQ(w.a, Rational(3, 7));
  EXPECT_EQ(w.n, 28);
  EXPECT_EQ(w.s, 2);
  ASSERT_TRUE(w.family);
  EXPECT_EQ(w.family->numerator, Rational(1) - Rational(4, 28));
}

TEST(Audit, EmptyBoundsRejected) {
  EXPECT_THROW(audit_lemma(LemmaId::L3, {0, 0, -1}), DomainError);
  EXPECT_THROW(audit_lemma(LemmaId::L6, {0, 10, 5}), DomainError);
}
