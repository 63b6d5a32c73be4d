#pragma once

/**
 * @file classify.hpp
 * @brief Candidate smaller angles per n, and a mechanical replay of the
 *        counting argument that rules the other angles out.
 */

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tilegate/errors.hpp"
#include "tilegate/rational.hpp"
#include "tilegate/vertex.hpp"

namespace tilegate {

/// Published statement a candidate set is taken from.
enum class Provenance { Theorem1, Corollary_n9, Theorem2, Corollary_8gon };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Theorem1: return "Theorem1";
    case Provenance::Corollary_n9: return "Corollary_n9";
    case Provenance::Theorem2: return "Theorem2";
    case Provenance::Corollary_8gon: return "Corollary_8gon";
  }
  return "?";
}

struct Candidate {
  AngleUnits angle;
  bool feasible = false;  ///< angle <= 1/2, i.e. usable as the smaller acute angle

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct CandidateSet {
  std::int64_t n = 0;
  Provenance provenance = Provenance::Theorem2;
  std::vector<Candidate> candidates;
};

/// Whether the hypotheses of a statement cover the n-gon.
inline bool applies(Provenance p, std::int64_t n) {
  switch (p) {
    case Provenance::Theorem1: return n >= 25 && n != 30 && n != 42;
    case Provenance::Corollary_n9:
      return n >= 9 && n != 12 && n != 14 && n != 20 && n != 32 && n != 44;
    case Provenance::Theorem2: return n >= 5 && n != 28;
    case Provenance::Corollary_8gon: return n == 8;
  }
  return false;
}

/// The angle set a statement asserts, in its own order, infeasible members
/// included.
inline std::vector<Rational> stated_angles(Provenance p, std::int64_t n) {
  switch (p) {
    case Provenance::Theorem1: return {Rational(2, n)};
    case Provenance::Corollary_n9: return {Rational(2, n), Rational(4, n)};
    case Provenance::Theorem2: {
      auto set = allowed_angles(n);
      return {set.begin(), set.end()};
    }
    case Provenance::Corollary_8gon: return {Rational(1, 4), Rational(1, 2)};
  }
  return {};
}

/// Candidates from the strongest statement whose hypotheses cover n.
inline CandidateSet candidates(std::int64_t n) {
  require_polygon(n);
  Provenance chosen = Provenance::Theorem2;
  for (Provenance p : {Provenance::Corollary_8gon, Provenance::Theorem1, Provenance::Corollary_n9,
                       Provenance::Theorem2}) {
    if (applies(p, n)) {
      chosen = p;
      break;
    }
  }
  CandidateSet out{n, chosen, {}};
  for (const Rational& a : stated_angles(chosen, n)) {
    Candidate c{{a}, a <= Rational(1, 2)};
    if (std::find(out.candidates.begin(), out.candidates.end(), c) == out.candidates.end()) {
      out.candidates.push_back(c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Impossibility auditor

enum class Outcome { Impossible, NotExcluded };

inline std::string to_string(Outcome o) { return o == Outcome::Impossible ? "Impossible" : "NotExcluded"; }

enum class StepKind {
  QuarterPi,          ///< a = 1/2 handled by the rational-multiple argument
  CornerUnsolvable,   ///< no way to fill a polygon corner
  CornerStrict,       ///< every corner filling has p > q
  CornerViolation,    ///< some corner filling has p <= q
  InteriorBalance,    ///< every free interior point has p >= q
  BoundaryBalance,    ///< every point on a flat side has p >= q
  GlobalCount,        ///< total p exceeds total q, yet both equal the triangle count
  ExceptionalAngle,   ///< a is an interior exception; the interior step is unavailable
};

inline std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::QuarterPi: return "quarter_pi";
    case StepKind::CornerUnsolvable: return "corner_unsolvable";
    case StepKind::CornerStrict: return "corner_strict";
    case StepKind::CornerViolation: return "corner_violation";
    case StepKind::InteriorBalance: return "interior_balance";
    case StepKind::BoundaryBalance: return "boundary_balance";
    case StepKind::GlobalCount: return "global_count";
    case StepKind::ExceptionalAngle: return "exceptional_angle";
  }
  return "?";
}

/// One step of the replayed argument. For steps about a vertex equation,
/// `target` and `solutions` let the claim be re-derived independently.
struct TraceStep {
  StepKind kind;
  std::string lemma;        ///< "L4", "L5", "L6" or "" for direct arguments
  std::string point_class;  ///< class of points covered, if any
  Rational target;          ///< available angle S for the covered points
  std::vector<VertexSolution> solutions;
  std::string claim;
};

struct Verdict {
  std::int64_t n = 0;
  AngleUnits angle;
  Outcome outcome = Outcome::NotExcluded;
  std::vector<TraceStep> trace;
};

namespace detail {

inline bool all_balanced(const std::vector<VertexSolution>& sols) {
  return std::all_of(sols.begin(), sols.end(), [](const auto& s) { return s.p >= s.q; });
}

}  // namespace detail

/// Replays the counting argument for a regular n-gon tiled by right
/// triangles with smaller angle a (right-angle units, 0 < a <= 1/2).
/// NotExcluded means only that the argument does not rule the angle out.
inline Verdict impossibility_audit(std::int64_t n, const AngleUnits& a) {
  require_polygon(n);
  if (a.value <= Rational(0) || a.value > Rational(1, 2)) {
    throw DomainError("impossibility_audit: angle " + a.value.str() + " outside (0, 1/2]");
  }
  Verdict v{n, a, Outcome::NotExcluded, {}};
  const Rational corner = corner_target(n);

  if (a.value == Rational(1, 2)) {
    // All triangle angles are multiples of 1/2, so the corner 2 - 4/n must be too.
    bool multiple = (corner / Rational(1, 2)).is_integer();
    v.outcome = multiple ? Outcome::NotExcluded : Outcome::Impossible;
    v.trace.push_back({StepKind::QuarterPi, "", "PolygonVertex", corner, {},
                       multiple ? "corner angle is a multiple of pi/4 (n = 8)"
                                : "corner angle is not a multiple of pi/4"});
    return v;
  }

  auto corner_solutions = enumerate_solutions(corner, a);
  switch (corner_has_only_p_gt_q(n, a)) {
    case CornerStatus::NoSolutions:
      v.trace.push_back({StepKind::CornerUnsolvable, "L5", "PolygonVertex", corner, {},
                         "no non-negative p, q, r fill a polygon corner"});
      v.outcome = Outcome::Impossible;
      return v;
    case CornerStatus::ViolationExists:
      v.trace.push_back({StepKind::CornerViolation, "L5", "PolygonVertex", corner, corner_solutions,
                         "some corner filling has p <= q; the count argument does not apply"});
      return v;
    case CornerStatus::AllStrict:
      v.trace.push_back({StepKind::CornerStrict, "L5", "PolygonVertex", corner, corner_solutions,
                         "every corner filling has p > q"});
      break;
  }

  if (is_interior_exception(a.value)) {
    bool mapped = is_allowed_angle(n, a.value) || is_allowed_angle(n, Rational(1) - a.value);
    v.trace.push_back({StepKind::ExceptionalAngle, "L6", "FreeInterior", Rational(4),
                       enumerate_solutions(Rational(4), a),
                       mapped ? "interior exception; a or 1-a is an allowed angle"
                              : "interior exception not covered by the allowed angles"});
    return v;
  }

  v.trace.push_back({StepKind::InteriorBalance, "L4", "FreeInterior", Rational(4),
                     enumerate_solutions(Rational(4), a), "every free interior point has p >= q"});
  v.trace.push_back({StepKind::BoundaryBalance, "L4", "PolygonSideInterior|TriangleSideInterior(1)",
                     Rational(2), enumerate_solutions(Rational(2), a),
                     "r shifted by 2: every point on a flat side has p >= q"});
  v.trace.push_back({StepKind::GlobalCount, "", "", Rational(0), {},
                     "total smaller angles exceed total larger angles, but each triangle has one of each"});
  v.outcome = Outcome::Impossible;
  return v;
}

/// Re-derives each vertex-equation claim in a trace from scratch. Returns
/// the index of the first step that does not reproduce, or -1.
inline int replay_trace(const Verdict& v) {
  for (std::size_t i = 0; i < v.trace.size(); ++i) {
    const TraceStep& step = v.trace[i];
    bool ok = true;
    switch (step.kind) {
      case StepKind::QuarterPi: ok = step.target == corner_target(v.n); break;
      case StepKind::CornerUnsolvable:
        ok = enumerate_solutions(step.target, v.angle).empty() && step.target == corner_target(v.n);
        break;
      case StepKind::CornerStrict:
        ok = step.solutions == enumerate_solutions(step.target, v.angle) && !step.solutions.empty() &&
             std::all_of(step.solutions.begin(), step.solutions.end(),
                         [](const auto& s) { return s.p > s.q; });
        break;
      case StepKind::CornerViolation:
        ok = step.solutions == enumerate_solutions(step.target, v.angle) &&
             std::any_of(step.solutions.begin(), step.solutions.end(),
                         [](const auto& s) { return s.p <= s.q; });
        break;
      case StepKind::InteriorBalance:
      case StepKind::BoundaryBalance:
        ok = step.solutions == enumerate_solutions(step.target, v.angle) &&
             detail::all_balanced(step.solutions);
        break;
      case StepKind::ExceptionalAngle:
        ok = is_interior_exception(v.angle.value) &&
             step.solutions == enumerate_solutions(step.target, v.angle) &&
             !detail::all_balanced(step.solutions);
        break;
      case StepKind::GlobalCount:
        ok = i >= 3 && v.trace[0].kind == StepKind::CornerStrict &&
             v.trace[i - 2].kind == StepKind::InteriorBalance &&
             v.trace[i - 1].kind == StepKind::BoundaryBalance;
        break;
    }
    if (!ok) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace tilegate
