#pragma once

// Command-line front end. Exit status: 0 completed, 1 verification failed or
// audit found counterexamples, 2 usage or input error.

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tilegate/classify.hpp"
#include "tilegate/io.hpp"
#include "tilegate/tiling.hpp"
#include "tilegate/vertex.hpp"

namespace tilegate::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;

struct Range {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
};

inline Range parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw FormatError("range '" + text + "' is not of the form A..B");
  Range r;
  try {
    std::size_t used = 0;
    r.lo = std::stoll(text.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument("");
    const std::string tail = text.substr(dots + 2);
    r.hi = std::stoll(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("");
  } catch (const std::logic_error&) {
    throw FormatError("range '" + text + "' is not of the form A..B");
  }
  if (r.hi < r.lo) throw FormatError("range '" + text + "' is empty");
  return r;
}

namespace detail {

inline std::string candidates_text(const CandidateSet& c) {
  std::ostringstream os;
  os << "n=" << c.n << " [" << to_string(c.provenance) << "]";
  for (const auto& cand : c.candidates) {
    os << "  a=" << cand.angle.value << " (alpha=" << render_alpha(cand.angle) << ")"
       << (cand.feasible ? "" : " infeasible");
  }
  return os.str();
}

inline std::string verdict_text(const Verdict& v) {
  std::ostringstream os;
  os << "n=" << v.n << " a=" << v.angle.value << " (alpha=" << render_alpha(v.angle) << "): " << to_string(v.outcome)
     << "\n";
  for (std::size_t i = 0; i < v.trace.size(); ++i) {
    const auto& s = v.trace[i];
    os << "  " << i + 1 << ". [" << to_string(s.kind) << "]";
    if (!s.lemma.empty()) os << " " << s.lemma;
    if (!s.point_class.empty()) os << " @ " << s.point_class << " (S=" << s.target << ", " << s.solutions.size() << " solutions)";
    os << ": " << s.claim << "\n";
  }
  return os.str();
}

inline std::string finding_text(const AuditFinding& f) {
  std::ostringstream os;
  if (f.n) os << "n=" << *f.n << " ";
  if (!f.a.is_zero()) os << "a=" << f.a << " ";
  if (f.solution) os << "(p,q,r)=(" << f.solution->p << "," << f.solution->q << "," << f.solution->r << ") ";
  if (f.family && f.n) os << "family " << f.family->label(*f.n) << " ";
  if (f.s) os << "s=" << *f.s << " ";
  os << "- " << f.note;
  return os.str();
}

inline std::string audit_text(const AuditReport& r) {
  std::ostringstream os;
  os << "lemma " << to_string(r.lemma) << ": " << (r.passed ? "passed" : "FAILED") << " (" << r.cases_checked
     << " cases";
  if (r.bounds.max_den > 0) os << ", max_den=" << r.bounds.max_den;
  if (r.bounds.n_hi >= r.bounds.n_lo) os << ", n=" << r.bounds.n_lo << ".." << r.bounds.n_hi;
  os << ")\n";
  for (const auto& f : r.counterexamples) os << "  counterexample: " << finding_text(f) << "\n";
  for (const auto& f : r.witnesses) os << "  witness: " << finding_text(f) << "\n";
  return os.str();
}

inline std::string report_text(const VerificationReport& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "\n";
  for (const auto& c : r.checks) {
    os << "  " << to_string(c.id) << ": " << to_string(c.status);
    if (!c.diagnostic.empty()) os << " - " << c.diagnostic;
    os << "\n";
  }
  if (r.certificate) {
    os << "  certificate: N_alpha=" << r.certificate->n_alpha << " N_beta=" << r.certificate->n_beta
       << " N_right=" << r.certificate->n_right << "\n";
  }
  for (const auto& e : r.ledger) {
    os << "  point " << e.point_class.name() << " (p,q,r)=(" << e.counts.p << "," << e.counts.q << "," << e.counts.r
       << ") sum=" << e.angle_sum << " target=" << e.target << "\n";
  }
  return os.str();
}

}  // namespace detail

/// Runs one command; everything is written to `out`/`err` after it completes.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify and verify tilings of regular polygons by similar right triangles", "tilegate"};
  app.require_subcommand(1);
  bool as_json = false;

  std::int64_t n = 0;
  std::string range_text, alpha_text, n_range_text, out_path, in_path;
  int which = 0;
  std::int64_t max_den = 0;

  auto* cmd_candidates = app.add_subcommand("candidates", "Candidate smaller angles for the n-gon");
  cmd_candidates->add_option("--n", n, "Number of polygon sides");
  cmd_candidates->add_option("--range", range_text, "Batch over n = A..B, one result per line");
  auto* cmd_audit = app.add_subcommand("audit", "Replay the counting argument for one angle");
  cmd_audit->add_option("--n", n, "Number of polygon sides")->required();
  cmd_audit->add_option("--alpha", alpha_text, "Smaller angle a = u/v in right-angle units")->required();
  auto* cmd_lemmas = app.add_subcommand("lemmas", "Brute-force audit of a vertex-equation lemma");
  cmd_lemmas->add_option("--which", which, "Lemma 3, 4, 5 or 6")->required()->check(CLI::IsMember({3, 4, 5, 6}));
  cmd_lemmas->add_option("--max-den", max_den, "Largest denominator of a (default 200, or 100 for lemma 5)");
  cmd_lemmas->add_option("--n-range", n_range_text, "Range of n (default 5..200)");
  auto* cmd_gen = app.add_subcommand("gen-trivial", "Write the trivial 2n-triangle tiling");
  cmd_gen->add_option("--n", n, "Number of polygon sides")->required();
  cmd_gen->add_option("--out", out_path, "Output tiling file")->required();
  auto* cmd_verify = app.add_subcommand("verify", "Verify a tiling file exactly");
  cmd_verify->add_option("file", in_path, "Tiling file")->required();
  for (auto* sub : {cmd_candidates, cmd_audit, cmd_lemmas, cmd_gen, cmd_verify}) {
    sub->add_flag("--json", as_json, "Machine-readable JSON output");
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "tilegate: " << e.what() << "\n";
    return kUsage;
  }

  std::ostringstream buf;
  int status = kOk;
  try {
    if (cmd_candidates->parsed()) {
      Range range{n, n};
      if (!range_text.empty()) {
        range = parse_range(range_text);
      } else if (cmd_candidates->count("--n") == 0) {
        throw FormatError("candidates needs --n or --range");
      }
      std::vector<CandidateSet> sets;
      for (std::int64_t k = range.lo; k <= range.hi; ++k) sets.push_back(candidates(k));
      for (const auto& c : sets) buf << (as_json ? to_json(c).dump() : detail::candidates_text(c)) << "\n";
    } else if (cmd_audit->parsed()) {
      Verdict v = impossibility_audit(n, {Rational::parse(alpha_text)});
      buf << (as_json ? to_json(v).dump() + "\n" : detail::verdict_text(v));
    } else if (cmd_lemmas->parsed()) {
      AuditBounds bounds;
      bounds.max_den = max_den > 0 ? max_den : (which == 5 ? 100 : 200);
      Range nr = n_range_text.empty() ? Range{5, 200} : parse_range(n_range_text);
      bounds.n_lo = nr.lo;
      bounds.n_hi = nr.hi;
      const LemmaId ids[] = {LemmaId::L3, LemmaId::L4, LemmaId::L5, LemmaId::L6};
      AuditReport rep = audit_lemma(ids[which - 3], bounds);
      buf << (as_json ? to_json(rep).dump() + "\n" : detail::audit_text(rep));
      status = rep.passed ? kOk : kFailed;
    } else if (cmd_gen->parsed()) {
      Tiling t = gen_trivial(n);
      save_tiling(t, out_path);
      if (as_json) {
        buf << json{{"n", t.n}, {"alpha", t.alpha.value.str()}, {"modulus", t.modulus},
                    {"triangles", t.triangles.size()}, {"out", out_path}}
                   .dump()
            << "\n";
      } else {
        buf << "wrote " << t.triangles.size() << " triangles (n=" << t.n << ", a=" << t.alpha.value
            << ", modulus=" << t.modulus << ") to " << out_path << "\n";
      }
    } else if (cmd_verify->parsed()) {
      Tiling t = load_tiling(in_path);
      VerificationReport rep = verify(t);
      buf << (as_json ? to_json(rep).dump() + "\n" : detail::report_text(rep));
      status = rep.passed ? kOk : kFailed;
    }
  } catch (const std::exception& e) {
    err << "tilegate: " << e.what() << "\n";
    return kUsage;
  }
  out << buf.str();
  return status;
}

}  // namespace tilegate::cli
