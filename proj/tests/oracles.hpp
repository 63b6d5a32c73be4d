#pragma once

// Test-only oracles. Nothing here calls the code paths it is used to check:
// the vertex oracle scans a box with plain Rational arithmetic instead of
// clearing denominators, the numeric oracle evaluates expressions with
// Boost.Multiprecision decimal floats instead of MPFR over the cyclotomic
// power basis, and the classification tables are transcribed from the
// published statements.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tilegate/cyclo.hpp"
#include "tilegate/rational.hpp"
#include "tilegate/vertex.hpp"

namespace oracle {

using tilegate::Rational;
using tilegate::VertexSolution;
using BigFloat = boost::multiprecision::cpp_dec_float_100;

/// Scans every (p, q, r) with each coordinate at most ceil(S / min(a, 1-a)).
inline std::vector<VertexSolution> brute_force_solutions(const Rational& target, const Rational& a) {
  const Rational smallest = std::min(a, Rational(1) - a);
  Rational bound_r = target / smallest;
  std::int64_t bound = bound_r.floor() + 1;
  std::vector<VertexSolution> out;
  for (std::int64_t p = 0; p <= bound; ++p) {
    for (std::int64_t q = 0; q <= bound; ++q) {
      for (std::int64_t r = 0; r <= bound; ++r) {
        if (Rational(p) * a + Rational(q) * (Rational(1) - a) + Rational(r) == target) {
          out.push_back({p, q, r});
        }
      }
    }
  }
  return out;
}

/// Candidate set for n-gons, transcribed case by case.
struct ExpectedCandidates {
  std::string provenance;
  std::set<Rational> angles;  // in right-angle units
};

inline ExpectedCandidates expected_candidates(std::int64_t n) {
  const Rational pi_n(2, n), two_pi_n(4, n), third = Rational(1, 3) + Rational(4, 3 * n);
  if (n == 8) return {"Corollary_8gon", {Rational(1, 4), Rational(1, 2)}};
  if (n >= 25 && n != 30 && n != 42) return {"Theorem1", {pi_n}};
  if (n == 30 || n == 42 || (n >= 9 && n <= 24 && n != 12 && n != 14 && n != 20)) {
    return {"Corollary_n9", {pi_n, two_pi_n}};
  }
  return {"Theorem2", {pi_n, two_pi_n, third}};  // n in {5, 6, 7, 12, 14, 20}
}

/// A random real expression evaluated both exactly and numerically.
struct Expr {
  tilegate::CycloReal exact;
  BigFloat approx;
};

inline Expr trig_leaf(std::int64_t k, std::int64_t m, bool sine, std::int64_t modulus) {
  BigFloat angle = BigFloat(k) * boost::math::constants::pi<BigFloat>() / BigFloat(m);
  return {tilegate::cyclo_trig(k, m, sine ? tilegate::Trig::Sin : tilegate::Trig::Cos, modulus),
          sine ? BigFloat(boost::multiprecision::sin(angle)) : BigFloat(boost::multiprecision::cos(angle))};
}

inline Expr rational_leaf(const Rational& r, std::int64_t modulus) {
  return {tilegate::CycloReal(modulus, r), BigFloat(r.num()) / BigFloat(r.den())};
}

/// Depth-bounded random expression over cos/sin(k*pi/m) with 2m | modulus.
class ExprGenerator {
 public:
  ExprGenerator(std::uint64_t seed, std::int64_t modulus) : rng_(seed), modulus_(modulus) {}

  Expr leaf() {
    std::uniform_int_distribution<int> kind(0, 3);
    if (kind(rng_) == 0) {
      std::uniform_int_distribution<std::int64_t> num(-9, 9), den(1, 9);
      return rational_leaf(Rational(num(rng_), den(rng_)), modulus_);
    }
    std::vector<std::int64_t> ms;
    for (std::int64_t m = 1; 2 * m <= modulus_; ++m) {
      if (modulus_ % (2 * m) == 0) ms.push_back(m);
    }
    std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
    const std::int64_t m = ms[pick(rng_)];
    std::uniform_int_distribution<std::int64_t> k(-2 * m, 2 * m);
    std::bernoulli_distribution sine(0.5);
    return trig_leaf(k(rng_), m, sine(rng_), modulus_);
  }

  Expr expr(int depth) {
    std::uniform_int_distribution<int> op(0, 3);
    if (depth == 0) return leaf();
    int which = op(rng_);
    if (which == 3) return leaf();
    Expr a = expr(depth - 1), b = expr(depth - 1);
    switch (which) {
      case 0: return {a.exact + b.exact, a.approx + b.approx};
      case 1: return {a.exact - b.exact, a.approx - b.approx};
      default: return {a.exact * b.exact, a.approx * b.approx};
    }
  }

  /// cos(k*pi/m) minus a rational approximation with a large denominator:
  /// nonzero but tiny, so sign decisions need more than 64 bits.
  Expr near_zero() {
    std::vector<std::int64_t> ms;
    for (std::int64_t m = 5; 2 * m <= modulus_; ++m) {
      if (modulus_ % (2 * m) == 0 && m != 6) ms.push_back(m);
    }
    if (ms.empty()) return expr(2);
    std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
    const std::int64_t m = ms[pick(rng_)];
    Expr c = trig_leaf(1, m, false, modulus_);
    const std::int64_t den = std::int64_t{1} << 40;
    BigFloat scaled = c.approx * BigFloat(den);
    auto num = static_cast<std::int64_t>(boost::multiprecision::floor(scaled));
    std::bernoulli_distribution up(0.5);
    if (up(rng_)) ++num;
    Expr r = rational_leaf(Rational(num, den), modulus_);
    return {c.exact - r.exact, c.approx - r.approx};
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::int64_t modulus_;
};

}  // namespace oracle
