#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "tilegate/classify.hpp"
#include "tilegate/errors.hpp"

using namespace tilegate;

namespace {

std::set<Rational> angles(const CandidateSet& c) {
  std::set<Rational> out;
  for (const auto& cand : c.candidates) out.insert(cand.angle.value);
  return out;
}

bool has_step(const Verdict& v, StepKind k) {
  return std::any_of(v.trace.begin(), v.trace.end(), [&](const auto& s) { return s.kind == k; });
}

}  // namespace

TEST(Candidates, Examples) {
  CandidateSet c8 = candidates(8);
  EXPECT_EQ(c8.provenance, Provenance::Corollary_8gon);
  EXPECT_EQ(angles(c8), (std::set<Rational>{Rational(1, 4), Rational(1, 2)}));

  CandidateSet c26 = candidates(26);
  EXPECT_EQ(c26.provenance, Provenance::Theorem1);
  EXPECT_EQ(angles(c26), (std::set<Rational>{Rational(1, 13)}));

  CandidateSet c9 = candidates(9);
  EXPECT_EQ(c9.provenance, Provenance::Corollary_n9);
  EXPECT_EQ(angles(c9), (std::set<Rational>{Rational(2, 9), Rational(4, 9)}));

  CandidateSet c5 = candidates(5);
  EXPECT_EQ(c5.provenance, Provenance::Theorem2);
  ASSERT_EQ(c5.candidates.size(), 3u);
  for (const auto& cand : c5.candidates) {
    EXPECT_EQ(cand.feasible, cand.angle.value == Rational(2, 5)) << cand.angle.value;
  }
  EXPECT_EQ(angles(c5), (std::set<Rational>{Rational(2, 5), Rational(4, 5), Rational(3, 5)}));

  EXPECT_THROW(candidates(4), DomainError);
}

TEST(Candidates, MatchesTranscribedTable) {
  for (std::int64_t n = 5; n <= 200; ++n) {
    CandidateSet c = candidates(n);
    oracle::ExpectedCandidates e = oracle::expected_candidates(n);
    EXPECT_EQ(to_string(c.provenance), e.provenance) << n;
    EXPECT_EQ(angles(c), e.angles) << n;
    for (const auto& cand : c.candidates) EXPECT_EQ(cand.feasible, cand.angle.value <= Rational(1, 2));
  }
}

TEST(Candidates, LargeNSingletons) {
  for (std::int64_t n = 25; n <= 200; ++n) {
    if (n == 30 || n == 42) continue;
    EXPECT_EQ(angles(candidates(n)), (std::set<Rational>{Rational(2, n)})) << n;
  }
}

TEST(Candidates, StrongerStatementsRefineWeaker) {
  for (std::int64_t n = 5; n <= 200; ++n) {
    std::set<Rational> chosen = angles(candidates(n));
    for (Provenance p : {Provenance::Theorem1, Provenance::Corollary_n9, Provenance::Theorem2}) {
      if (!applies(p, n)) continue;
      auto stated = stated_angles(p, n);
      std::set<Rational> weaker(stated.begin(), stated.end());
      EXPECT_TRUE(std::includes(weaker.begin(), weaker.end(), chosen.begin(), chosen.end())) << n;
    }
  }
}

TEST(ImpossibilityAudit, Examples) {
  Verdict v = impossibility_audit(8, {Rational(1, 5)});
  EXPECT_EQ(v.outcome, Outcome::Impossible);
  ASSERT_FALSE(v.trace.empty());
  EXPECT_EQ(v.trace.back().kind, StepKind::CornerUnsolvable);

  Verdict w = impossibility_audit(8, {Rational(1, 8)});
  EXPECT_EQ(w.outcome, Outcome::Impossible);
  EXPECT_TRUE(has_step(w, StepKind::CornerStrict));
  EXPECT_TRUE(has_step(w, StepKind::InteriorBalance));
  EXPECT_TRUE(has_step(w, StepKind::BoundaryBalance));
  EXPECT_EQ(w.trace.back().kind, StepKind::GlobalCount);

  EXPECT_EQ(impossibility_audit(8, {Rational(1, 4)}).outcome, Outcome::NotExcluded);
  EXPECT_EQ(impossibility_audit(28, {Rational(3, 7)}).outcome, Outcome::NotExcluded);
}

TEST(ImpossibilityAudit, QuarterPi) {
  EXPECT_EQ(impossibility_audit(8, {Rational(1, 2)}).outcome, Outcome::NotExcluded);
  for (std::int64_t n : {5, 6, 7, 9, 12, 16}) {
    Verdict v = impossibility_audit(n, {Rational(1, 2)});
    EXPECT_EQ(v.outcome, Outcome::Impossible) << n;
    EXPECT_EQ(v.trace.front().kind, StepKind::QuarterPi);
  }
}

TEST(ImpossibilityAudit, DomainErrors) {
  EXPECT_THROW(impossibility_audit(8, {Rational(0)}), DomainError);
  EXPECT_THROW(impossibility_audit(8, {Rational(3, 5)}), DomainError);
  EXPECT_THROW(impossibility_audit(4, {Rational(1, 4)}), DomainError);
}

TEST(ImpossibilityAudit, ImpossibleTracesAreComplete) {
  for (std::int64_t n = 5; n <= 30; ++n) {
    for (const Rational& a : small_angles(24)) {
      Verdict v = impossibility_audit(n, {a});
      EXPECT_EQ(replay_trace(v), -1) << n << " " << a;
      if (v.outcome != Outcome::Impossible) continue;
      const bool corner_only = v.trace.back().kind == StepKind::CornerUnsolvable;
      const bool counting = has_step(v, StepKind::CornerStrict) && has_step(v, StepKind::InteriorBalance) &&
                            has_step(v, StepKind::BoundaryBalance) && v.trace.back().kind == StepKind::GlobalCount;
      EXPECT_TRUE(corner_only || counting) << n << " " << a;
    }
  }
}

TEST(ImpossibilityAudit, TamperedTraceIsDetected) {
  Verdict v = impossibility_audit(8, {Rational(1, 8)});
  ASSERT_GE(v.trace.size(), 2u);
  v.trace[1].solutions.pop_back();
  EXPECT_EQ(replay_trace(v), 1);
}
