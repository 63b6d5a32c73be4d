#pragma once

/**
 * @file tiling.hpp
 * @brief Exact tilings of the regular n-gon by similar right triangles.
 *
 * The polygon is fixed: unit circumradius, vertices V_k = (cos 2k*pi/n,
 * sin 2k*pi/n). Coordinates are CycloReal values in one modulus M, so every
 * predicate (orientation, angle equality, on-segment, area) is decided
 * exactly. Predicates first try a rigorous double-interval evaluation and
 * fall back to the exact sign whenever the interval touches zero.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tilegate/cyclo.hpp"
#include "tilegate/errors.hpp"
#include "tilegate/rational.hpp"
#include "tilegate/vertex.hpp"

namespace tilegate {

struct Point {
  CycloReal x;
  CycloReal y;

  friend bool operator==(const Point&, const Point&) = default;
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept { return p.x.hash() * 31 ^ p.y.hash(); }
};

/// Vertices in counterclockwise order.
struct Triangle {
  std::array<Point, 3> v;
};

struct Tiling {
  std::int64_t n = 0;
  AngleUnits alpha;
  std::int64_t modulus = 0;
  std::vector<Triangle> triangles;
};

/// Smallest modulus holding the n-gon vertices and the rotations by alpha
/// and pi/2 - alpha: lcm(4, 2n, 2 * den(alpha / pi)).
inline std::int64_t required_modulus(std::int64_t n, const AngleUnits& alpha) {
  std::int64_t m = detail::lcm64(4, 2 * n);
  return detail::lcm64(m, 2 * alpha.over_pi().den());
}

inline Point polygon_vertex(std::int64_t n, std::int64_t k, std::int64_t modulus) {
  return {cyclo_trig(2 * k, n, Trig::Cos, modulus), cyclo_trig(2 * k, n, Trig::Sin, modulus)};
}

inline std::vector<Point> polygon_vertices(std::int64_t n, std::int64_t modulus) {
  std::vector<Point> out;
  out.reserve(n);
  for (std::int64_t k = 0; k < n; ++k) out.push_back(polygon_vertex(n, k, modulus));
  return out;
}

inline CycloReal cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline CycloReal dot(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y);
}

/// The 2n right triangles obtained by joining the center to every vertex
/// and dropping the apothem of every side. Smaller angle pi/n (a = 2/n).
inline Tiling gen_trivial(std::int64_t n) {
  require_polygon(n);
  Tiling t;
  t.n = n;
  t.alpha = {Rational(2, n)};
  t.modulus = required_modulus(n, t.alpha);
  const auto verts = polygon_vertices(n, t.modulus);
  const Point center{CycloReal(t.modulus, 0), CycloReal(t.modulus, 0)};
  const Rational half(1, 2);
  for (std::int64_t k = 0; k < n; ++k) {
    const Point& a = verts[k];
    const Point& b = verts[(k + 1) % n];
    Point foot{(a.x + b.x) * half, (a.y + b.y) * half};
    t.triangles.push_back({{center, a, foot}});
    t.triangles.push_back({{center, foot, b}});
  }
  return t;
}

/// Exact rotation by gamma * pi/2: (cos, sin).
inline std::pair<CycloReal, CycloReal> rotation(const AngleUnits& gamma, std::int64_t modulus) {
  const Rational over_pi = gamma.over_pi();
  return {cyclo_trig(over_pi.num(), over_pi.den(), Trig::Cos, modulus),
          cyclo_trig(over_pi.num(), over_pi.den(), Trig::Sin, modulus)};
}

/// Whether the interior angle at `corner` equals gamma * pi/2. With
/// u = B - A and v = C - A, tests cross(R u, v) = 0 and dot(R u, v) > 0 for
/// the exact rotation R by gamma * pi/2.
inline bool angle_matches(const Triangle& tri, int corner, const AngleUnits& gamma) {
  if (corner < 0 || corner > 2) throw DomainError("corner index must be 0, 1 or 2");
  if (gamma.value <= Rational(0) || gamma.value >= Rational(2)) {
    throw DomainError("angle " + gamma.value.str() + " outside (0, 2)");
  }
  const Point& a = tri.v[corner];
  const Point& b = tri.v[(corner + 1) % 3];
  const Point& c = tri.v[(corner + 2) % 3];
  const std::int64_t modulus = detail::lcm64(a.x.modulus(), detail::lcm64(4, 2 * gamma.over_pi().den()));
  auto [cs, sn] = rotation(gamma, modulus);
  const CycloReal ux = b.x - a.x, uy = b.y - a.y;
  const CycloReal vx = c.x - a.x, vy = c.y - a.y;
  const CycloReal rx = cs * ux - sn * uy;
  const CycloReal ry = sn * ux + cs * uy;
  if (!(rx * vy - ry * vx).is_zero()) return false;
  return cyclo_sign(rx * vx + ry * vy) > 0;
}

// ---------------------------------------------------------------------------
// Verification report

enum class CheckId { Similarity, Containment, NonOverlap, AreaCover, PointLedger };
inline constexpr std::array<CheckId, 5> kCheckOrder = {CheckId::Similarity, CheckId::Containment,
                                                       CheckId::NonOverlap, CheckId::AreaCover,
                                                       CheckId::PointLedger};

inline std::string to_string(CheckId c) {
  switch (c) {
    case CheckId::Similarity: return "similarity";
    case CheckId::Containment: return "containment";
    case CheckId::NonOverlap: return "non_overlap";
    case CheckId::AreaCover: return "area_cover";
    case CheckId::PointLedger: return "point_ledger";
  }
  return "?";
}

enum class CheckStatus { Pass, Fail, NotRun };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotRun: return "not_run";
  }
  return "?";
}

struct CheckResult {
  CheckId id;
  CheckStatus status = CheckStatus::NotRun;
  std::string diagnostic;
};

struct LedgerEntry {
  Point point;
  PointClass point_class;
  VertexSolution counts;
  Rational angle_sum;
  Rational target;
};

/// Totals of smaller, larger and right angles over all triangle corners.
struct Certificate {
  std::int64_t n_alpha = 0;
  std::int64_t n_beta = 0;
  std::int64_t n_right = 0;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct VerificationReport {
  std::array<CheckResult, 5> checks{{{CheckId::Similarity, CheckStatus::NotRun, ""},
                                     {CheckId::Containment, CheckStatus::NotRun, ""},
                                     {CheckId::NonOverlap, CheckStatus::NotRun, ""},
                                     {CheckId::AreaCover, CheckStatus::NotRun, ""},
                                     {CheckId::PointLedger, CheckStatus::NotRun, ""}}};
  std::vector<LedgerEntry> ledger;
  std::optional<Certificate> certificate;
  bool passed = false;

  [[nodiscard]] const CheckResult& check(CheckId id) const { return checks[static_cast<int>(id)]; }
  [[nodiscard]] std::optional<CheckId> first_failure() const {
    for (const auto& c : checks) {
      if (c.status == CheckStatus::Fail) return c.id;
    }
    return std::nullopt;
  }
};

namespace detail {

struct Interval {
  double lo;
  double hi;
};

inline double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

inline Interval operator-(Interval a, Interval b) { return {down(a.lo - b.hi), up(a.hi - b.lo)}; }
inline Interval operator+(Interval a, Interval b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }
inline Interval operator*(Interval a, Interval b) {
  const double p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
}

/// Sign if the interval decides it.
inline std::optional<int> interval_sign(Interval v) {
  if (v.lo > 0) return 1;
  if (v.hi < 0) return -1;
  return std::nullopt;
}

inline Interval enclose(const CycloReal& x) {
  auto e = cyclo_enclose(x);
  return {e.lower, e.upper};
}

}  // namespace detail

/// Deduplicated points of a tiling plus memoized filtered predicates.
class TilingGeometry {
 public:
  explicit TilingGeometry(const Tiling& t) : tiling_(t) {
    for (const Point& v : polygon_vertices(t.n, t.modulus)) polygon_ids_.push_back(intern(v));
    corner_ids_.reserve(t.triangles.size());
    for (const Triangle& tri : t.triangles) {
      corner_ids_.push_back({intern(tri.v[0]), intern(tri.v[1]), intern(tri.v[2])});
    }
  }

  [[nodiscard]] const Tiling& tiling() const { return tiling_; }
  [[nodiscard]] const Point& point(int id) const { return points_[id]; }
  [[nodiscard]] std::size_t point_count() const { return points_.size(); }
  [[nodiscard]] const std::vector<int>& polygon_ids() const { return polygon_ids_; }
  [[nodiscard]] const std::array<int, 3>& corners(std::size_t tri) const { return corner_ids_[tri]; }

  [[nodiscard]] std::optional<int> find(const Point& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Sign of cross(b - a, c - a).
  int orient(int a, int b, int c) {
    if (a == b || b == c || a == c) return 0;
    // sort ids, tracking permutation parity
    int ids[3] = {a, b, c};
    int parity = 1;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2 - i; ++j) {
        if (ids[j] > ids[j + 1]) {
          std::swap(ids[j], ids[j + 1]);
          parity = -parity;
        }
      }
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(ids[0]) << 42) |
                              (static_cast<std::uint64_t>(ids[1]) << 21) | static_cast<std::uint64_t>(ids[2]);
    auto it = orient_memo_.find(key);
    if (it != orient_memo_.end()) return parity * it->second;
    const int s = orient_uncached(ids[0], ids[1], ids[2]);
    orient_memo_.emplace(key, s);
    return parity * s;
  }

  /// Sign of dot(b - a, c - a).
  int dot_sign(int a, int b, int c) {
    using detail::Interval;
    const Interval v = (ex_[b] - ex_[a]) * (ex_[c] - ex_[a]) + (ey_[b] - ey_[a]) * (ey_[c] - ey_[a]);
    if (auto s = detail::interval_sign(v)) return *s;
    return cyclo_sign(dot(points_[a], points_[b], points_[c]));
  }

  /// p lies on segment ab with p distinct from both endpoints.
  bool on_open_segment(int p, int a, int b) {
    if (p == a || p == b) return false;
    if (orient(a, b, p) != 0) return false;
    return dot_sign(a, b, p) > 0 && dot_sign(b, a, p) > 0;
  }

  /// Sign of the interior angle test at a triangle corner against rotation
  /// (cs, sn); see angle_matches.
  bool corner_matches(std::size_t tri, int corner, const CycloReal& cs, const CycloReal& sn,
                      const detail::Interval& cs_iv, const detail::Interval& sn_iv) {
    const auto& ids = corner_ids_[tri];
    const int a = ids[corner], b = ids[(corner + 1) % 3], c = ids[(corner + 2) % 3];
    using detail::Interval;
    const Interval ux = ex_[b] - ex_[a], uy = ey_[b] - ey_[a];
    const Interval vx = ex_[c] - ex_[a], vy = ey_[c] - ey_[a];
    const Interval rx = cs_iv * ux - sn_iv * uy;
    const Interval ry = sn_iv * ux + cs_iv * uy;
    if (detail::interval_sign(rx * vy - ry * vx)) return false;
    if (auto s = detail::interval_sign(rx * vx + ry * vy); s && *s < 0) return false;
    const Point &pa = points_[a], &pb = points_[b], &pc = points_[c];
    const CycloReal exu = pb.x - pa.x, eyu = pb.y - pa.y;
    const CycloReal exv = pc.x - pa.x, eyv = pc.y - pa.y;
    const CycloReal erx = cs * exu - sn * eyu;
    const CycloReal ery = sn * exu + cs * eyu;
    if (!(erx * eyv - ery * exv).is_zero()) return false;
    return cyclo_sign(erx * exv + ery * eyv) > 0;
  }

  /// Point class of an interned point.
  PointClass classify(int p) {
    for (int v : polygon_ids_) {
      if (v == p) return PointClass::polygon_vertex();
    }
    const std::size_t nv = polygon_ids_.size();
    for (std::size_t k = 0; k < nv; ++k) {
      if (on_open_segment(p, polygon_ids_[k], polygon_ids_[(k + 1) % nv])) return PointClass::polygon_side();
    }
    std::int64_t sides = 0;
    for (const auto& ids : corner_ids_) {
      for (int e = 0; e < 3; ++e) {
        if (on_open_segment(p, ids[e], ids[(e + 1) % 3])) {
          ++sides;
          break;
        }
      }
    }
    return sides > 0 ? PointClass::triangle_side(sides) : PointClass::free_interior();
  }

 private:
  int intern(const Point& p) {
    auto [it, inserted] = index_.emplace(p, static_cast<int>(points_.size()));
    if (inserted) {
      points_.push_back(p);
      ex_.push_back(detail::enclose(p.x));
      ey_.push_back(detail::enclose(p.y));
    }
    return it->second;
  }

  int orient_uncached(int a, int b, int c) {
    using detail::Interval;
    const Interval v = (ex_[b] - ex_[a]) * (ey_[c] - ey_[a]) - (ey_[b] - ey_[a]) * (ex_[c] - ex_[a]);
    if (auto s = detail::interval_sign(v)) return *s;
    return cyclo_sign(cross(points_[a], points_[b], points_[c]));
  }

  const Tiling& tiling_;
  std::vector<Point> points_;
  std::vector<detail::Interval> ex_, ey_;
  std::unordered_map<Point, int, PointHash> index_;
  std::vector<int> polygon_ids_;
  std::vector<std::array<int, 3>> corner_ids_;
  std::unordered_map<std::uint64_t, int> orient_memo_;
};

/// Class of a point that is a vertex of at least one triangle. "On a side"
/// always means the open side, endpoints excluded.
inline PointClass classify_point(const Point& pt, const Tiling& t) {
  TilingGeometry geo(t);
  auto id = geo.find(pt);
  bool is_vertex = false;
  if (id) {
    for (std::size_t i = 0; i < t.triangles.size() && !is_vertex; ++i) {
      for (int c : geo.corners(i)) is_vertex = is_vertex || c == *id;
    }
  }
  if (!is_vertex) throw DomainError("classify_point: point is not a triangle vertex");
  return geo.classify(*id);
}

namespace detail {

enum class Label { Alpha, Beta, Right };

inline void check_structure(const Tiling& t) {
  require_polygon(t.n);
  if (t.alpha.value <= Rational(0) || t.alpha.value > Rational(1, 2)) {
    throw StructuralError("alpha " + t.alpha.value.str() + " outside (0, 1/2]");
  }
  const std::int64_t need = required_modulus(t.n, t.alpha);
  if (t.modulus <= 0 || t.modulus % need != 0) {
    throw StructuralError("modulus " + std::to_string(t.modulus) + " is not a multiple of " +
                          std::to_string(need));
  }
  for (std::size_t i = 0; i < t.triangles.size(); ++i) {
    for (const Point& p : t.triangles[i].v) {
      for (const CycloReal* c : {&p.x, &p.y}) {
        if (c->modulus() != t.modulus) {
          throw StructuralError("triangle " + std::to_string(i) + ": coordinate modulus " +
                                std::to_string(c->modulus()) + " differs from tiling modulus " +
                                std::to_string(t.modulus));
        }
        if (!c->is_real()) throw StructuralError("triangle " + std::to_string(i) + ": non-real coordinate");
      }
    }
  }
}

}  // namespace detail

/// Checks a tiling in the fixed order similarity, containment, non_overlap,
/// area_cover, point_ledger, stopping at the first failure. Throws
/// StructuralError for inputs that cannot be checked at all.
inline VerificationReport verify(const Tiling& t) {
  detail::check_structure(t);
  TilingGeometry geo(t);
  for (std::size_t i = 0; i < t.triangles.size(); ++i) {
    const auto& ids = geo.corners(i);
    const int s = geo.orient(ids[0], ids[1], ids[2]);
    if (s == 0) throw StructuralError("triangle " + std::to_string(i) + " is degenerate");
    if (s < 0) throw StructuralError("triangle " + std::to_string(i) + " is not counterclockwise");
  }

  VerificationReport rep;
  auto fail = [&](CheckId id, std::string why) {
    rep.checks[static_cast<int>(id)] = {id, CheckStatus::Fail, std::move(why)};
    rep.passed = false;
    return rep;
  };
  auto pass = [&](CheckId id) { rep.checks[static_cast<int>(id)] = {id, CheckStatus::Pass, ""}; };
  const std::size_t count = t.triangles.size();

  // (1) similarity: one corner of each kind per triangle
  using detail::Label;
  std::vector<std::array<Label, 3>> labels(count);
  {
    struct Kind {
      Label label;
      CycloReal cs, sn;
      detail::Interval cs_iv, sn_iv;
    };
    std::vector<Kind> kinds;
    auto add_kind = [&](Label l, const AngleUnits& g) {
      auto [cs, sn] = rotation(g, t.modulus);
      auto ci = detail::enclose(cs), si = detail::enclose(sn);
      kinds.push_back({l, std::move(cs), std::move(sn), ci, si});
    };
    add_kind(Label::Right, {Rational(1)});
    add_kind(Label::Alpha, t.alpha);
    if (t.alpha.value != Rational(1, 2)) add_kind(Label::Beta, t.alpha.complement());
    for (std::size_t i = 0; i < count; ++i) {
      int seen[3] = {0, 0, 0};
      for (int c = 0; c < 3; ++c) {
        bool matched = false;
        for (const Kind& k : kinds) {
          if (geo.corner_matches(i, c, k.cs, k.sn, k.cs_iv, k.sn_iv)) {
            Label l = k.label;
            if (l == Label::Alpha && seen[static_cast<int>(Label::Alpha)] > 0) l = Label::Beta;
            labels[i][c] = l;
            ++seen[static_cast<int>(l)];
            matched = true;
            break;
          }
        }
        if (!matched) {
          return fail(CheckId::Similarity,
                      "triangle " + std::to_string(i) + " corner " + std::to_string(c) +
                          " is not an angle of the right triangle with alpha = " + render_alpha(t.alpha));
        }
      }
      if (seen[0] != 1 || seen[1] != 1 || seen[2] != 1) {
        return fail(CheckId::Similarity, "triangle " + std::to_string(i) + " repeats an angle");
      }
    }
    pass(CheckId::Similarity);
    rep.certificate = Certificate{static_cast<std::int64_t>(count), static_cast<std::int64_t>(count),
                                  static_cast<std::int64_t>(count)};
  }

  // (2) containment: convex polygon, so vertices inside suffices
  {
    const auto& poly = geo.polygon_ids();
    const std::size_t nv = poly.size();
    for (std::size_t i = 0; i < count; ++i) {
      for (int c = 0; c < 3; ++c) {
        const int p = geo.corners(i)[c];
        for (std::size_t k = 0; k < nv; ++k) {
          if (geo.orient(poly[k], poly[(k + 1) % nv], p) < 0) {
            return fail(CheckId::Containment, "triangle " + std::to_string(i) + " corner " + std::to_string(c) +
                                                  " lies outside polygon side " + std::to_string(k));
          }
        }
      }
    }
    pass(CheckId::Containment);
  }

  // (3) non_overlap: interiors of two triangles are disjoint iff the line of
  // some edge of one has the other in its closed outer half-plane
  {
    auto separated_by = [&](std::size_t i, std::size_t j) {
      const auto& a = geo.corners(i);
      const auto& b = geo.corners(j);
      for (int e = 0; e < 3; ++e) {
        const int p = a[e], q = a[(e + 1) % 3];
        if (geo.orient(p, q, b[0]) <= 0 && geo.orient(p, q, b[1]) <= 0 && geo.orient(p, q, b[2]) <= 0) {
          return true;
        }
      }
      return false;
    };
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        if (!separated_by(i, j) && !separated_by(j, i)) {
          return fail(CheckId::NonOverlap,
                      "triangles " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
        }
      }
    }
    pass(CheckId::NonOverlap);
  }

  // (4) area_cover
  {
    const auto& poly = geo.polygon_ids();
    const Point origin{CycloReal(t.modulus, 0), CycloReal(t.modulus, 0)};
    CycloReal polygon_area(t.modulus, 0), covered(t.modulus, 0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      polygon_area += cross(origin, geo.point(poly[k]), geo.point(poly[(k + 1) % poly.size()]));
    }
    for (const Triangle& tri : t.triangles) covered += cross(tri.v[0], tri.v[1], tri.v[2]);
    const int s = cyclo_sign(covered - polygon_area);
    if (s != 0) {
      return fail(CheckId::AreaCover, std::string("triangle area sum is ") + (s < 0 ? "less" : "greater") +
                                          " than the polygon area");
    }
    pass(CheckId::AreaCover);
  }

  // (5) point_ledger
  {
    std::vector<VertexSolution> counts(geo.point_count());
    std::vector<bool> is_corner(geo.point_count(), false);
    for (std::size_t i = 0; i < count; ++i) {
      for (int c = 0; c < 3; ++c) {
        const int p = geo.corners(i)[c];
        is_corner[p] = true;
        switch (labels[i][c]) {
          case Label::Alpha: ++counts[p].p; break;
          case Label::Beta: ++counts[p].q; break;
          case Label::Right: ++counts[p].r; break;
        }
      }
    }
    std::optional<std::string> problem;
    for (std::size_t p = 0; p < geo.point_count(); ++p) {
      if (!is_corner[p]) continue;
      const PointClass pc = geo.classify(static_cast<int>(p));
      const Rational sum = counts[p].angle_sum(t.alpha.value);
      const Rational target = point_target(pc, t.n);
      rep.ledger.push_back({geo.point(static_cast<int>(p)), pc, counts[p], sum, target});
      if (sum != target && !problem) {
        auto ex = cyclo_enclose(geo.point(static_cast<int>(p)).x);
        auto ey = cyclo_enclose(geo.point(static_cast<int>(p)).y);
        problem = "point " + std::to_string(rep.ledger.size() - 1) + " near (" + std::to_string(ex.lower) +
                  ", " + std::to_string(ey.lower) + ") is " + pc.name() + " with angle sum " + sum.str() +
                  " instead of " + target.str();
      }
    }
    if (problem) return fail(CheckId::PointLedger, *problem);
    pass(CheckId::PointLedger);
  }

  rep.passed = true;
  return rep;
}

enum class Regularity { A1, A2, A3 };

inline std::string to_string(Regularity r) {
  switch (r) {
    case Regularity::A1: return "a1";
    case Regularity::A2: return "a2";
    case Regularity::A3: return "a3";
  }
  return "?";
}

/// Which of p = q (a1), p = r (a2), q = r (a3) hold at every ledger point of
/// a verified tiling. Empty means the tiling is irregular.
inline std::vector<Regularity> regularity_class(const Tiling& t, const VerificationReport& report) {
  if (!report.passed) throw DomainError("regularity_class needs a verified tiling");
  if (t.alpha.value == Rational(1, 2)) throw DomainError("regularity_class is undefined for alpha = pi/4");
  bool a1 = true, a2 = true, a3 = true;
  for (const auto& e : report.ledger) {
    a1 = a1 && e.counts.p == e.counts.q;
    a2 = a2 && e.counts.p == e.counts.r;
    a3 = a3 && e.counts.q == e.counts.r;
  }
  std::vector<Regularity> out;
  if (a1) out.push_back(Regularity::A1);
  if (a2) out.push_back(Regularity::A2);
  if (a3) out.push_back(Regularity::A3);
  return out;
}

}  // namespace tilegate
