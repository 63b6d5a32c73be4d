#pragma once

/**
 * @file vertex.hpp
 * @brief Vertex angle equations S = p*a + q*(1-a) + r and finite audits of
 *        the lemmas that constrain their solutions.
 *
 * All angles are in right-angle units: a is the smaller acute angle of the
 * right triangle, 1 - a the larger one, 1 the right angle. S is the angle
 * available at a point (2 - 4/n at a corner of the regular n-gon, 4 at a free
 * interior point, and so on).
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tilegate/errors.hpp"
#include "tilegate/rational.hpp"

namespace tilegate {

/// Numbers of smaller acute (p), larger acute (q) and right (r) angles
/// meeting at a point.
struct VertexSolution {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t r = 0;

  friend auto operator<=>(const VertexSolution&, const VertexSolution&) = default;

  [[nodiscard]] Rational angle_sum(const Rational& a) const {
    return Rational(p) * a + Rational(q) * (Rational(1) - a) + Rational(r);
  }
};

/// All non-negative (p, q, r) with p*a + q*(1-a) + r = S, ordered
/// lexicographically. Requires 0 < a < 1 and S >= 0.
inline std::vector<VertexSolution> enumerate_solutions(const Rational& target, const AngleUnits& a) {
  if (a.value <= Rational(0) || a.value >= Rational(1)) {
    throw DomainError("enumerate_solutions: angle " + a.value.str() + " outside (0, 1)");
  }
  if (target < Rational(0)) {
    throw DomainError("enumerate_solutions: negative target " + target.str());
  }
  // p*A + q*B + r*C = T with A = u*L/v, B = (v-u)*L/v, C = L, L = lcm(v, t)
  const std::int64_t u = a.value.num();
  const std::int64_t v = a.value.den();
  const std::int64_t lcm = detail::lcm64(v, target.den());
  const i128 unit_a = static_cast<i128>(u) * (lcm / v);
  const i128 unit_b = static_cast<i128>(v - u) * (lcm / v);
  const i128 unit_r = lcm;
  const i128 total = static_cast<i128>(target.num()) * (lcm / target.den());

  std::vector<VertexSolution> out;
  for (i128 p = 0; p * unit_a <= total; ++p) {
    const i128 rest_p = total - p * unit_a;
    for (i128 q = 0; q * unit_b <= rest_p; ++q) {
      const i128 rest = rest_p - q * unit_b;
      if (rest % unit_r == 0) {
        out.push_back({detail::narrow(p), detail::narrow(q), detail::narrow(rest / unit_r)});
      }
    }
  }
  return out;
}

/// The parametric set {numerator / s : s = 1, 2, ...} of smaller-angle
/// candidates that can fill a polygon corner.
struct AngleFamily {
  Rational numerator;

  [[nodiscard]] Rational member(std::int64_t s) const { return numerator / Rational(s); }
  [[nodiscard]] bool feasible(std::int64_t s) const { return member(s) <= Rational(1, 2); }
  /// Smallest s with numerator / s <= 1/2; smaller s are infeasible as a
  /// smaller acute angle.
  [[nodiscard]] std::int64_t first_feasible_s() const {
    Rational twice = numerator * Rational(2);
    std::int64_t s = twice.floor();
    if (!twice.is_integer()) ++s;
    return std::max<std::int64_t>(s, 1);
  }
  /// The s with numerator / s = a, if a is a member.
  [[nodiscard]] std::optional<std::int64_t> index_of(const Rational& a) const {
    if (a <= Rational(0)) return std::nullopt;
    Rational s = numerator / a;
    if (!s.is_integer() || s.num() < 1) return std::nullopt;
    return s.num();
  }
  /// "(2-4/n)/s"-style label.
  [[nodiscard]] std::string label(std::int64_t n) const {
    return (numerator + Rational(4, n) == Rational(2) ? "(2-4/n)/s" : "(1-4/n)/s");
  }

  friend bool operator==(const AngleFamily&, const AngleFamily&) = default;
};

inline void require_polygon(std::int64_t n) {
  if (n < 5) throw DomainError("regular n-gon requires n >= 5, got " + std::to_string(n));
}

/// The two families with numerators 2 - 4/n and 1 - 4/n.
inline std::array<AngleFamily, 2> corner_families(std::int64_t n) {
  require_polygon(n);
  return {AngleFamily{Rational(2) - Rational(4, n)}, AngleFamily{Rational(1) - Rational(4, n)}};
}

/// Interior angle of the regular n-gon in right-angle units.
inline Rational corner_target(std::int64_t n) {
  require_polygon(n);
  return Rational(2) - Rational(4, n);
}

/// Exceptional angles of the interior lemma: for these, S = 4 admits q > p.
inline const std::array<Rational, 5>& interior_exceptions() {
  static const std::array<Rational, 5> values = {Rational(1, 4), Rational(1, 5), Rational(2, 5),
                                                 Rational(3, 7), Rational(1, 3)};
  return values;
}

inline bool is_interior_exception(const Rational& a) {
  const auto& ex = interior_exceptions();
  return std::find(ex.begin(), ex.end(), a) != ex.end();
}

/// Smaller angles not excluded for the n-gon: {2/n, 4/n, 1/3 + 4/(3n)},
/// i.e. alpha in {pi/n, 2pi/n, pi/6 + 2pi/(3n)}.
inline std::array<Rational, 3> allowed_angles(std::int64_t n) {
  return {Rational(2, n), Rational(4, n), Rational(1, 3) + Rational(4, 3 * n)};
}

inline bool is_allowed_angle(std::int64_t n, const Rational& a) {
  auto set = allowed_angles(n);
  return std::find(set.begin(), set.end(), a) != set.end();
}

enum class PointKind { PolygonVertex, PolygonSideInterior, TriangleSideInterior, FreeInterior };

/// Where a meeting point of triangle corners sits.
struct PointClass {
  PointKind kind = PointKind::FreeInterior;
  std::int64_t flat_sides = 0;  ///< open triangle sides through the point

  static PointClass polygon_vertex() { return {PointKind::PolygonVertex, 0}; }
  static PointClass polygon_side() { return {PointKind::PolygonSideInterior, 0}; }
  static PointClass triangle_side(std::int64_t k) { return {PointKind::TriangleSideInterior, k}; }
  static PointClass free_interior() { return {PointKind::FreeInterior, 0}; }

  [[nodiscard]] std::string name() const {
    switch (kind) {
      case PointKind::PolygonVertex: return "PolygonVertex";
      case PointKind::PolygonSideInterior: return "PolygonSideInterior";
      case PointKind::TriangleSideInterior:
        return "TriangleSideInterior(" + std::to_string(flat_sides) + ")";
      case PointKind::FreeInterior: return "FreeInterior";
    }
    return "?";
  }

  friend bool operator==(const PointClass&, const PointClass&) = default;
};

/// Angle available at a point of the given class, in right-angle units.
/// Each flat side through the point uses up two right angles.
inline Rational point_target(const PointClass& pc, std::int64_t n) {
  switch (pc.kind) {
    case PointKind::PolygonVertex: return corner_target(n);
    case PointKind::PolygonSideInterior: return Rational(2);
    case PointKind::TriangleSideInterior: return Rational(4) - Rational(2 * pc.flat_sides);
    case PointKind::FreeInterior: return Rational(4);
  }
  return Rational(0);
}

enum class CornerStatus { AllStrict, ViolationExists, NoSolutions };

inline std::string to_string(CornerStatus s) {
  switch (s) {
    case CornerStatus::AllStrict: return "AllStrict";
    case CornerStatus::ViolationExists: return "ViolationExists";
    case CornerStatus::NoSolutions: return "NoSolutions";
  }
  return "?";
}

inline void require_smaller_acute_open(const AngleUnits& a) {
  if (a.value <= Rational(0) || a.value >= Rational(1, 2)) {
    throw DomainError("smaller acute angle " + a.value.str() + " outside (0, 1/2)");
  }
}

/// Whether every way of filling an n-gon corner uses more smaller than
/// larger acute angles.
inline CornerStatus corner_has_only_p_gt_q(std::int64_t n, const AngleUnits& a) {
  require_polygon(n);
  require_smaller_acute_open(a);
  auto sols = enumerate_solutions(corner_target(n), a);
  if (sols.empty()) return CornerStatus::NoSolutions;
  bool strict = std::all_of(sols.begin(), sols.end(), [](const auto& s) { return s.p > s.q; });
  return strict ? CornerStatus::AllStrict : CornerStatus::ViolationExists;
}

// ---------------------------------------------------------------------------
// Lemma audits

enum class LemmaId { L3, L4, L5, L6 };

inline std::string to_string(LemmaId id) {
  switch (id) {
    case LemmaId::L3: return "L3";
    case LemmaId::L4: return "L4";
    case LemmaId::L5: return "L5";
    case LemmaId::L6: return "L6";
  }
  return "?";
}

struct AuditBounds {
  std::int64_t max_den = 0;  ///< L3, L4, L5
  std::int64_t n_lo = 0;     ///< L5, L6
  std::int64_t n_hi = -1;
};

/// One checked input together with what it produced.
struct AuditFinding {
  std::optional<std::int64_t> n;
  Rational a;
  std::optional<VertexSolution> solution;
  std::optional<AngleFamily> family;
  std::optional<std::int64_t> s;
  std::string note;

  friend bool operator==(const AuditFinding&, const AuditFinding&) = default;
};

/// Result of a finite-range audit. Counterexamples falsify the lemma inside
/// its hypotheses; witnesses demonstrate that its stated exclusions are
/// needed. A missing expected witness is itself a counterexample.
struct AuditReport {
  LemmaId lemma = LemmaId::L3;
  AuditBounds bounds;
  std::int64_t cases_checked = 0;
  std::vector<AuditFinding> counterexamples;
  std::vector<AuditFinding> witnesses;
  bool passed = true;
};

/// Reduced fractions u/v with v <= max_den and 0 < u/v < 1/2, ordered by
/// (v, u).
inline std::vector<Rational> small_angles(std::int64_t max_den) {
  std::vector<Rational> out;
  for (std::int64_t v = 3; v <= max_den; ++v) {
    for (std::int64_t u = 1; 2 * u < v; ++u) {
      if (std::gcd(u, v) == 1) out.emplace_back(u, v);
    }
  }
  return out;
}

namespace detail {

inline std::optional<VertexSolution> first_with_q_over_p(const std::vector<VertexSolution>& sols) {
  auto it = std::find_if(sols.begin(), sols.end(), [](const auto& s) { return s.q > s.p; });
  if (it == sols.end()) return std::nullopt;
  return *it;
}

inline void audit_lemma3(AuditReport& rep) {
  const Rational target(3, 2);
  const Rational exception(1, 4);
  for (const Rational& a : small_angles(rep.bounds.max_den)) {
    auto sols = enumerate_solutions(target, {a});
    ++rep.cases_checked;
    if (a == exception) {
      if (auto w = first_with_q_over_p(sols)) {
        rep.witnesses.push_back({std::nullopt, a, w, std::nullopt, std::nullopt, "q > p at the excluded angle"});
      } else {
        rep.counterexamples.push_back({std::nullopt, a, std::nullopt, std::nullopt, std::nullopt,
                                       "excluded angle has no q > p solution"});
      }
      continue;
    }
    if (sols.empty()) continue;
    for (const auto& s : sols) {
      if (s.p <= s.q) rep.counterexamples.push_back({std::nullopt, a, s, std::nullopt, std::nullopt, "p <= q"});
    }
    Rational index = Rational(3, 2) / a;
    if (!index.is_integer()) {
      rep.counterexamples.push_back({std::nullopt, a, sols.front(), std::nullopt, std::nullopt, "a is not 3/(2s)"});
    }
  }
}

inline void audit_lemma4(AuditReport& rep) {
  const Rational target(4);
  for (const Rational& a : small_angles(rep.bounds.max_den)) {
    auto sols = enumerate_solutions(target, {a});
    ++rep.cases_checked;
    if (is_interior_exception(a)) {
      if (auto w = first_with_q_over_p(sols)) {
        rep.witnesses.push_back({std::nullopt, a, w, std::nullopt, std::nullopt, "q > p at an excluded angle"});
      } else {
        rep.counterexamples.push_back({std::nullopt, a, std::nullopt, std::nullopt, std::nullopt,
                                       "excluded angle has no q > p solution"});
      }
      continue;
    }
    for (const auto& s : sols) {
      if (s.p < s.q) rep.counterexamples.push_back({std::nullopt, a, s, std::nullopt, std::nullopt, "p < q"});
    }
  }
}

inline void audit_lemma5(AuditReport& rep) {
  const auto angles = small_angles(rep.bounds.max_den);
  for (std::int64_t n = rep.bounds.n_lo; n <= rep.bounds.n_hi; ++n) {
    const Rational target = corner_target(n);
    const auto families = corner_families(n);
    for (const Rational& a : angles) {
      if (is_allowed_angle(n, a)) continue;
      ++rep.cases_checked;
      auto sols = enumerate_solutions(target, {a});
      if (sols.empty()) continue;
      for (const auto& s : sols) {
        if (s.p <= s.q) rep.counterexamples.push_back({n, a, s, std::nullopt, std::nullopt, "p <= q"});
      }
      bool in_family = std::any_of(families.begin(), families.end(),
                                   [&](const AngleFamily& f) { return f.index_of(a).has_value(); });
      if (!in_family) {
        rep.counterexamples.push_back({n, a, sols.front(), std::nullopt, std::nullopt, "a in no corner family"});
      }
    }
  }
}

inline void audit_lemma6(AuditReport& rep) {
  constexpr std::int64_t kExcludedN = 28;
  bool witnessed_excluded = false;
  for (std::int64_t n = rep.bounds.n_lo; n <= rep.bounds.n_hi; ++n) {
    for (const AngleFamily& f : corner_families(n)) {
      for (const Rational& a : interior_exceptions()) {
        auto s = f.index_of(a);
        if (!s) continue;
        ++rep.cases_checked;
        if (is_allowed_angle(n, a) || is_allowed_angle(n, Rational(1) - a)) continue;
        AuditFinding finding{n, a, std::nullopt, f, s, "neither a nor 1-a is an allowed angle"};
        if (n == kExcludedN) {
          rep.witnesses.push_back(finding);
          witnessed_excluded = true;
        } else {
          rep.counterexamples.push_back(finding);
        }
      }
    }
  }
  if (rep.bounds.n_lo <= kExcludedN && kExcludedN <= rep.bounds.n_hi && !witnessed_excluded) {
    rep.counterexamples.push_back({kExcludedN, Rational(0), std::nullopt, std::nullopt, std::nullopt,
                                   "no failure found at the excluded n = 28"});
  }
}

}  // namespace detail

/// Brute-force confirmation of one lemma over a finite parameter range.
inline AuditReport audit_lemma(LemmaId lemma, const AuditBounds& bounds) {
  AuditReport rep;
  rep.lemma = lemma;
  rep.bounds = bounds;
  const bool needs_den = lemma != LemmaId::L6;
  const bool needs_n = lemma == LemmaId::L5 || lemma == LemmaId::L6;
  if (needs_den && bounds.max_den < 3) {
    throw DomainError("audit " + to_string(lemma) + ": max denominator must be at least 3");
  }
  if (needs_n && (bounds.n_lo < 5 || bounds.n_hi < bounds.n_lo)) {
    throw DomainError("audit " + to_string(lemma) + ": n range must be non-empty and start at 5 or more");
  }
  if (!needs_n) {
    rep.bounds.n_lo = 0;
    rep.bounds.n_hi = -1;
  }
  if (!needs_den) rep.bounds.max_den = 0;
  switch (lemma) {
    case LemmaId::L3: detail::audit_lemma3(rep); break;
    case LemmaId::L4: detail::audit_lemma4(rep); break;
    case LemmaId::L5: detail::audit_lemma5(rep); break;
    case LemmaId::L6: detail::audit_lemma6(rep); break;
  }
  std::sort(rep.counterexamples.begin(), rep.counterexamples.end(), [](const auto& x, const auto& y) {
    return std::tie(x.n, x.a, x.solution) < std::tie(y.n, y.a, y.solution);
  });
  rep.passed = rep.counterexamples.empty();
  return rep;
}

}  // namespace tilegate
