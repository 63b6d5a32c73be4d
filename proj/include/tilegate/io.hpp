#pragma once

/**
 * @file io.hpp
 * @brief JSON forms of the library's values and the tiling file format.
 *
 * nlohmann::json objects keep keys sorted, so dumps are byte-stable for
 * equal inputs. Parsing is strict: unknown keys are rejected.
 */

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tilegate/classify.hpp"
#include "tilegate/cyclo.hpp"
#include "tilegate/errors.hpp"
#include "tilegate/rational.hpp"
#include "tilegate/tiling.hpp"
#include "tilegate/vertex.hpp"

namespace tilegate {

using json = nlohmann::json;

inline constexpr const char* kTilingFormat = "tilegate-tiling/1";

namespace detail {

inline void require_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  for (const char* k : keys) {
    if (!j.contains(k)) throw FormatError(where + ": missing field '" + k + "'");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw FormatError(where + ": unknown field '" + it.key() + "'");
  }
}

inline std::int64_t get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw FormatError(where + ": expected an integer");
  return j.get<std::int64_t>();
}

inline Rational get_fraction(const json& j, const std::string& where) {
  if (!j.is_string()) throw FormatError(where + ": expected a fraction string");
  return Rational::parse(j.get<std::string>());
}

}  // namespace detail

// --- exact values ----------------------------------------------------------

inline json to_json(const CycloReal& x) {
  json coeffs = json::array();
  for (const Rational& c : x.coefficients()) coeffs.push_back(c.str());
  return {{"modulus", x.modulus()}, {"coeffs", coeffs}};
}

inline CycloReal cyclo_from_json(const json& j, const std::string& where = "cyclo") {
  detail::require_keys(j, {"modulus", "coeffs"}, where);
  const std::int64_t m = detail::get_int(j["modulus"], where + ".modulus");
  if (!j["coeffs"].is_array()) throw FormatError(where + ".coeffs: expected an array");
  std::vector<Rational> coeffs;
  for (const auto& c : j["coeffs"]) coeffs.push_back(detail::get_fraction(c, where + ".coeffs"));
  try {
    return CycloReal::from_coefficients(m, coeffs);
  } catch (const DomainError& e) {
    throw FormatError(where + ": " + e.what());
  } catch (const ModulusError& e) {
    throw FormatError(where + ": " + e.what());
  }
}

// --- vertex ----------------------------------------------------------------

inline json to_json(const VertexSolution& s) { return json::array({s.p, s.q, s.r}); }

inline json to_json(const AuditFinding& f) {
  json j = {{"note", f.note}};
  if (f.n) j["n"] = *f.n;
  if (!f.a.is_zero()) j["a"] = f.a.str();
  if (f.solution) j["solution"] = to_json(*f.solution);
  if (f.family && f.n) j["family"] = f.family->label(*f.n);
  if (f.s) j["s"] = *f.s;
  return j;
}

inline json to_json(const AuditReport& r) {
  json range = json::object();
  if (r.bounds.max_den > 0) range["max_den"] = r.bounds.max_den;
  if (r.bounds.n_hi >= r.bounds.n_lo) {
    range["n_lo"] = r.bounds.n_lo;
    range["n_hi"] = r.bounds.n_hi;
  }
  json ce = json::array(), wit = json::array();
  for (const auto& f : r.counterexamples) ce.push_back(to_json(f));
  for (const auto& f : r.witnesses) wit.push_back(to_json(f));
  return {{"lemma", to_string(r.lemma)}, {"range", range},          {"passed", r.passed},
          {"cases_checked", r.cases_checked}, {"counterexamples", ce}, {"witnesses", wit}};
}

// --- classify --------------------------------------------------------------

inline json to_json(const CandidateSet& c) {
  json list = json::array();
  for (const auto& cand : c.candidates) {
    list.push_back({{"a", cand.angle.value.str()}, {"alpha", render_alpha(cand.angle)}, {"feasible", cand.feasible}});
  }
  return {{"n", c.n}, {"provenance", to_string(c.provenance)}, {"candidates", list}};
}

inline json to_json(const Verdict& v) {
  json trace = json::array();
  for (const auto& s : v.trace) {
    json sols = json::array();
    for (const auto& sol : s.solutions) sols.push_back(to_json(sol));
    json step = {{"step", to_string(s.kind)}, {"claim", s.claim}};
    if (!s.lemma.empty()) step["lemma"] = s.lemma;
    if (!s.point_class.empty()) {
      step["point_class"] = s.point_class;
      step["target"] = s.target.str();
      step["solutions"] = sols;
    }
    trace.push_back(step);
  }
  return {{"n", v.n},
          {"a", v.angle.value.str()},
          {"alpha", render_alpha(v.angle)},
          {"outcome", to_string(v.outcome)},
          {"trace", trace}};
}

// --- tiling ----------------------------------------------------------------

inline json to_json(const Point& p) { return json::array({to_json(p.x), to_json(p.y)}); }

inline json to_json(const Tiling& t) {
  json tris = json::array();
  for (const auto& tri : t.triangles) {
    tris.push_back({{"v", json::array({to_json(tri.v[0]), to_json(tri.v[1]), to_json(tri.v[2])})}});
  }
  return {{"format", kTilingFormat},
          {"n", t.n},
          {"alpha", t.alpha.value.str()},
          {"modulus", t.modulus},
          {"triangles", tris}};
}

inline Tiling tiling_from_json(const json& j) {
  if (!j.is_object() || !j.contains("format")) throw FormatError("tiling: missing field 'format'");
  if (j["format"] != kTilingFormat) {
    throw FormatError("tiling: unsupported format " + j["format"].dump() + ", expected \"" + kTilingFormat + "\"");
  }
  detail::require_keys(j, {"format", "n", "alpha", "modulus", "triangles"}, "tiling");
  Tiling t;
  t.n = detail::get_int(j["n"], "tiling.n");
  t.alpha = {detail::get_fraction(j["alpha"], "tiling.alpha")};
  t.modulus = detail::get_int(j["modulus"], "tiling.modulus");
  if (!j["triangles"].is_array()) throw FormatError("tiling.triangles: expected an array");
  std::size_t i = 0;
  for (const auto& tj : j["triangles"]) {
    const std::string where = "tiling.triangles[" + std::to_string(i++) + "]";
    detail::require_keys(tj, {"v"}, where);
    const json& verts = tj["v"];
    if (!verts.is_array() || verts.size() != 3) throw FormatError(where + ".v: expected three points");
    auto point = [&](std::size_t k) {
      const json& pj = verts[k];
      const std::string pw = where + ".v[" + std::to_string(k) + "]";
      if (!pj.is_array() || pj.size() != 2) throw FormatError(pw + ": expected [x, y]");
      return Point{cyclo_from_json(pj[0], pw + ".x"), cyclo_from_json(pj[1], pw + ".y")};
    };
    t.triangles.push_back(Triangle{{point(0), point(1), point(2)}});
  }
  return t;
}

inline Tiling parse_tiling(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("tiling: invalid JSON: ") + e.what());
  }
  return tiling_from_json(j);
}

inline Tiling load_tiling(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tiling(ss.str());
}

inline void save_tiling(const Tiling& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << to_json(t).dump() << "\n";
  if (!out) throw FormatError("write failed for " + path);
}

inline json to_json(const VerificationReport& r) {
  json checks = json::object();
  for (const auto& c : r.checks) {
    checks[to_string(c.id)] = {{"status", to_string(c.status)}, {"diagnostic", c.diagnostic}};
  }
  json ledger = json::array();
  for (const auto& e : r.ledger) {
    ledger.push_back({{"class", e.point_class.name()},
                      {"p", e.counts.p},
                      {"q", e.counts.q},
                      {"r", e.counts.r},
                      {"sum", e.angle_sum.str()},
                      {"target", e.target.str()},
                      {"x", to_json(e.point.x)},
                      {"y", to_json(e.point.y)}});
  }
  json j = {{"passed", r.passed}, {"checks", checks}, {"ledger", ledger}};
  auto first = r.first_failure();
  j["first_failure"] = first ? json(to_string(*first)) : json(nullptr);
  if (r.certificate) {
    j["certificate"] = {{"n_alpha", r.certificate->n_alpha},
                        {"n_beta", r.certificate->n_beta},
                        {"n_right", r.certificate->n_right}};
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

}  // namespace tilegate
