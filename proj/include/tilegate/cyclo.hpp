#pragma once

/**
 * @file cyclo.hpp
 * @brief Exact real numbers in cyclotomic fields.
 *
 * A CycloReal is an element of Q(zeta_M), zeta_M = exp(2*pi*i/M), stored as
 * a polynomial in zeta_M of degree < phi(M) reduced modulo the M-th
 * cyclotomic polynomial. Coefficients share one positive denominator and
 * the tuple (denominator, numerators) is kept primitive, so two elements are
 * equal iff their stored representations are equal, and an element is zero
 * iff every numerator is zero.
 *
 * Every value built from cos/sin of rational multiples of pi with ring
 * operations is real. Signs of real elements are decided by an exact zero
 * test followed by interval evaluation with MPFR at doubling precision.
 */

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tilegate/errors.hpp"
#include "tilegate/rational.hpp"

namespace tilegate {

inline constexpr std::int64_t kMaxFieldDegree = 4096;

inline std::int64_t euler_phi(std::int64_t m) {
  if (m <= 0) throw DomainError("euler_phi of non-positive integer");
  std::int64_t result = m;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace detail {

inline int moebius(std::int64_t m) {
  int mu = 1;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return 0;
      mu = -mu;
    }
  }
  if (m > 1) mu = -mu;
  return mu;
}

/// Dense integer coefficients of the m-th cyclotomic polynomial, low degree
/// first, from the product of (x^d - 1)^mu(m/d) over divisors d of m.
inline std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t m) {
  std::vector<std::int64_t> divisors;
  for (std::int64_t d = 1; d * d <= m; ++d) {
    if (m % d == 0) {
      divisors.push_back(d);
      if (d != m / d) divisors.push_back(m / d);
    }
  }
  std::vector<i128> poly{1};
  for (std::int64_t d : divisors) {
    if (moebius(m / d) != 1) continue;
    std::vector<i128> next(poly.size() + d, 0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + d] = checked_add(next[k + d], poly[k]);
      next[k] = checked_add(next[k], -poly[k]);
    }
    poly = std::move(next);
  }
  for (std::int64_t d : divisors) {
    if (moebius(m / d) != -1) continue;
    // poly = q * (x^d - 1)  =>  q_k = q_{k-d} - poly_k
    std::size_t qlen = poly.size() - d;
    std::vector<i128> q(qlen, 0);
    for (std::size_t k = 0; k < qlen; ++k) {
      q[k] = -poly[k] + (k >= static_cast<std::size_t>(d) ? q[k - d] : 0);
    }
    poly = std::move(q);
  }
  std::vector<std::int64_t> out(poly.size());
  std::transform(poly.begin(), poly.end(), out.begin(), narrow);
  return out;
}

/// Owns an array of MPFR numbers.
class MpfrArray {
 public:
  MpfrArray(std::size_t size, mpfr_prec_t prec) : values_(size) {
    for (auto& v : values_) mpfr_init2(&v, prec);
  }
  ~MpfrArray() {
    for (auto& v : values_) mpfr_clear(&v);
  }
  MpfrArray(const MpfrArray&) = delete;
  MpfrArray& operator=(const MpfrArray&) = delete;

  mpfr_ptr operator[](std::size_t i) { return &values_[i]; }
  mpfr_srcptr operator[](std::size_t i) const { return &values_[i]; }

 private:
  std::vector<__mpfr_struct> values_;
};

/// Scoped mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(value_, prec); }
  ~Mpfr() { mpfr_clear(value_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

}  // namespace detail

/// Rigorous enclosures [lower_j, upper_j] of cos(2*pi*j/M), j < phi(M).
class CosTable {
 public:
  CosTable(std::int64_t modulus, std::int64_t degree, mpfr_prec_t prec)
      : lower_(degree, prec), upper_(degree, prec) {
    detail::Mpfr theta(prec + 16), mid(prec), radius(prec);
    // |theta error| <= 3 roundings on a value below 2*pi; |cos'| <= 1.
    mpfr_set_ui_2exp(radius.get(), 1, 6 - prec, MPFR_RNDU);
    for (std::int64_t j = 0; j < degree; ++j) {
      mpfr_const_pi(theta.get(), MPFR_RNDN);
      mpfr_mul_si(theta.get(), theta.get(), 2 * j, MPFR_RNDN);
      mpfr_div_si(theta.get(), theta.get(), modulus, MPFR_RNDN);
      mpfr_cos(mid.get(), theta.get(), MPFR_RNDN);
      mpfr_sub(lower_[j], mid.get(), radius.get(), MPFR_RNDD);
      mpfr_add(upper_[j], mid.get(), radius.get(), MPFR_RNDU);
    }
  }

  [[nodiscard]] mpfr_srcptr lower(std::size_t j) const { return lower_[j]; }
  [[nodiscard]] mpfr_srcptr upper(std::size_t j) const { return upper_[j]; }

 private:
  detail::MpfrArray lower_;
  detail::MpfrArray upper_;
};

/// Arithmetic data for Q(zeta_M): the reducing polynomial and cached
/// numeric tables. Shared and immutable apart from the table cache.
class CycloField {
 public:
  explicit CycloField(std::int64_t modulus)
      : modulus_(modulus), degree_(euler_phi(modulus)) {
    if (degree_ > kMaxFieldDegree) {
      throw ResourceLimitError("cyclotomic modulus " + std::to_string(modulus) + " has degree " +
                               std::to_string(degree_) + " > " + std::to_string(kMaxFieldDegree));
    }
    auto poly = detail::cyclotomic_polynomial(modulus);
    for (std::int64_t j = 0; j < degree_; ++j) {
      if (poly[j] != 0) terms_.emplace_back(j, poly[j]);
    }
  }

  [[nodiscard]] std::int64_t modulus() const { return modulus_; }
  [[nodiscard]] std::int64_t degree() const { return degree_; }

  /// Reduces coefficients in place modulo the cyclotomic polynomial and
  /// truncates to the field degree.
  void reduce(std::vector<i128>& c) const {
    for (std::int64_t k = static_cast<std::int64_t>(c.size()) - 1; k >= degree_; --k) {
      i128 t = c[k];
      if (t == 0) continue;
      c[k] = 0;
      std::int64_t base = k - degree_;
      for (auto [j, coef] : terms_) {
        c[base + j] = detail::checked_add(c[base + j], -detail::checked_mul(t, coef));
      }
    }
    c.resize(degree_, 0);
  }

  [[nodiscard]] std::shared_ptr<const CosTable> cos_table(mpfr_prec_t prec) const {
    std::lock_guard lock(table_mutex_);
    auto& slot = tables_[prec];
    if (!slot) slot = std::make_shared<const CosTable>(modulus_, degree_, prec);
    return slot;
  }

 private:
  std::int64_t modulus_;
  std::int64_t degree_;
  std::vector<std::pair<std::int64_t, std::int64_t>> terms_;  // non-leading nonzero terms
  mutable std::mutex table_mutex_;
  mutable std::map<mpfr_prec_t, std::shared_ptr<const CosTable>> tables_;
};

/// Process-wide cache of fields by modulus.
inline std::shared_ptr<const CycloField> cyclo_field(std::int64_t modulus) {
  if (modulus <= 0 || modulus % 4 != 0) {
    throw ModulusError("cyclotomic modulus must be a positive multiple of 4, got " +
                       std::to_string(modulus));
  }
  static std::mutex mutex;
  static std::unordered_map<std::int64_t, std::shared_ptr<const CycloField>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[modulus];
  if (!slot) slot = std::make_shared<const CycloField>(modulus);
  return slot;
}

/// Outward-rounded double bounds on a real value.
struct Enclosure {
  double lower;
  double upper;
  [[nodiscard]] bool contains(double v) const { return lower <= v && v <= upper; }
};

class CycloReal {
 public:
  /// The rational constant c in Q(zeta_M).
  CycloReal(std::int64_t modulus, const Rational& c) : CycloReal(cyclo_field(modulus), c) {}

  CycloReal(std::shared_ptr<const CycloField> field, const Rational& c)
      : field_(std::move(field)), den_(c.den()), num_(field_->degree(), 0) {
    num_[0] = c.num();
  }

  /// Element with the given power-basis coefficients (length phi(M)).
  /// Throws DomainError when the element is not real.
  static CycloReal from_coefficients(std::int64_t modulus, std::span<const Rational> coeffs) {
    auto field = cyclo_field(modulus);
    if (static_cast<std::int64_t>(coeffs.size()) != field->degree()) {
      throw FormatError("modulus " + std::to_string(modulus) + " needs " +
                        std::to_string(field->degree()) + " coefficients, got " +
                        std::to_string(coeffs.size()));
    }
    std::int64_t den = 1;
    for (const auto& c : coeffs) den = detail::lcm64(den, c.den());
    std::vector<i128> nums(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      nums[j] = static_cast<i128>(coeffs[j].num()) * (den / coeffs[j].den());
    }
    CycloReal x(std::move(field), std::move(nums), den);
    if (!x.is_real()) throw DomainError("cyclotomic element is not real");
    return x;
  }

  [[nodiscard]] std::int64_t modulus() const { return field_->modulus(); }
  [[nodiscard]] const std::shared_ptr<const CycloField>& field() const { return field_; }
  [[nodiscard]] std::int64_t denominator() const { return den_; }
  [[nodiscard]] std::span<const std::int64_t> numerators() const { return num_; }
  [[nodiscard]] Rational coefficient(std::size_t j) const { return Rational(num_[j], den_); }
  [[nodiscard]] std::vector<Rational> coefficients() const {
    std::vector<Rational> out;
    out.reserve(num_.size());
    for (std::size_t j = 0; j < num_.size(); ++j) out.push_back(coefficient(j));
    return out;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](std::int64_t v) { return v == 0; });
  }

  /// The value as a rational, when it is one.
  [[nodiscard]] std::optional<Rational> as_rational() const {
    if (std::any_of(num_.begin() + 1, num_.end(), [](std::int64_t v) { return v != 0; })) {
      return std::nullopt;
    }
    return Rational(num_[0], den_);
  }

  /// Image under complex conjugation, zeta -> zeta^-1.
  [[nodiscard]] CycloReal conjugate() const {
    const std::int64_t m = modulus();
    std::vector<i128> c(m, 0);
    for (std::size_t j = 0; j < num_.size(); ++j) {
      c[(m - static_cast<std::int64_t>(j)) % m] = num_[j];
    }
    field_->reduce(c);
    return CycloReal(field_, std::move(c), den_);
  }

  [[nodiscard]] bool is_real() const { return conjugate() == *this; }

  /// The same element inside Q(zeta_target), target a multiple of M.
  [[nodiscard]] CycloReal rescaled(std::int64_t target) const {
    if (target == modulus()) return *this;
    if (target % modulus() != 0) {
      throw ModulusError("cannot embed modulus " + std::to_string(modulus()) + " into " +
                         std::to_string(target));
    }
    auto field = cyclo_field(target);
    const std::int64_t step = target / modulus();
    std::vector<i128> c(target, 0);
    for (std::size_t j = 0; j < num_.size(); ++j) c[j * step] = num_[j];
    field->reduce(c);
    return CycloReal(std::move(field), std::move(c), den_);
  }

  friend CycloReal operator+(const CycloReal& x, const CycloReal& y) { return combine(x, y, +1); }
  friend CycloReal operator-(const CycloReal& x, const CycloReal& y) { return combine(x, y, -1); }

  friend CycloReal operator*(const CycloReal& x, const CycloReal& y) {
    if (x.modulus() != y.modulus()) {
      auto [a, b] = common(x, y);
      return a * b;
    }
    if (x.is_zero() || y.is_zero()) return CycloReal(x.field_, Rational(0));
    const std::size_t d = x.num_.size();
    std::vector<i128> c(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (x.num_[i] == 0) continue;
      const i128 xi = x.num_[i];
      for (std::size_t j = 0; j < d; ++j) {
        if (y.num_[j] == 0) continue;
        c[i + j] = detail::checked_add(c[i + j], xi * y.num_[j]);
      }
    }
    x.field_->reduce(c);
    return CycloReal(x.field_, std::move(c), detail::checked_mul(x.den_, y.den_));
  }

  friend CycloReal operator*(const CycloReal& x, const Rational& r) {
    std::vector<i128> c(x.num_.begin(), x.num_.end());
    for (auto& v : c) v = detail::checked_mul(v, r.num());
    return CycloReal(x.field_, std::move(c), detail::checked_mul(x.den_, r.den()));
  }
  friend CycloReal operator*(const Rational& r, const CycloReal& x) { return x * r; }

  CycloReal operator-() const {
    CycloReal out = *this;
    for (auto& v : out.num_) v = -v;
    return out;
  }

  CycloReal& operator+=(const CycloReal& o) { return *this = *this + o; }
  CycloReal& operator-=(const CycloReal& o) { return *this = *this - o; }
  CycloReal& operator*=(const CycloReal& o) { return *this = *this * o; }

  friend bool operator==(const CycloReal& x, const CycloReal& y) {
    if (x.modulus() != y.modulus()) {
      auto [a, b] = common(x, y);
      return a == b;
    }
    return x.den_ == y.den_ && x.num_ == y.num_;
  }

  [[nodiscard]] std::size_t hash() const {
    std::size_t h = std::hash<std::int64_t>{}(modulus()) ^ (std::hash<std::int64_t>{}(den_) << 1);
    for (auto v : num_) h = h * 1099511628211ull ^ std::hash<std::int64_t>{}(v);
    return h;
  }

 private:
  CycloReal(std::shared_ptr<const CycloField> field, std::vector<i128> nums, i128 den)
      : field_(std::move(field)) {
    if (den < 0) {
      den = -den;
      for (auto& v : nums) v = -v;
    }
    i128 g = den;
    for (auto v : nums) {
      if (g == 1) break;
      if (v != 0) g = detail::gcd128(g, v);
    }
    bool zero = std::all_of(nums.begin(), nums.end(), [](i128 v) { return v == 0; });
    if (zero) g = den;
    den_ = detail::narrow(den / g);
    num_.resize(nums.size());
    for (std::size_t j = 0; j < nums.size(); ++j) num_[j] = detail::narrow(nums[j] / g);
  }

  static std::pair<CycloReal, CycloReal> common(const CycloReal& x, const CycloReal& y) {
    std::int64_t m = detail::lcm64(x.modulus(), y.modulus());
    return {x.rescaled(m), y.rescaled(m)};
  }

  static CycloReal combine(const CycloReal& x, const CycloReal& y, int sign) {
    if (x.modulus() != y.modulus()) {
      auto [a, b] = common(x, y);
      return combine(a, b, sign);
    }
    const i128 g = std::gcd(x.den_, y.den_);
    const i128 fx = y.den_ / g;
    const i128 fy = x.den_ / g;
    std::vector<i128> c(x.num_.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
      c[j] = detail::checked_add(detail::checked_mul(x.num_[j], fx),
                                 sign * detail::checked_mul(y.num_[j], fy));
    }
    return CycloReal(x.field_, std::move(c), detail::checked_mul(fx, x.den_));
  }

  friend CycloReal cyclo_power_sum(std::int64_t, std::span<const std::pair<std::int64_t, Rational>>);

  std::shared_ptr<const CycloField> field_;
  std::int64_t den_ = 1;
  std::vector<std::int64_t> num_;
};

/// Sum of c * zeta_M^e over the given (exponent, coefficient) pairs.
inline CycloReal cyclo_power_sum(std::int64_t modulus,
                                 std::span<const std::pair<std::int64_t, Rational>> terms) {
  auto field = cyclo_field(modulus);
  std::int64_t den = 1;
  for (const auto& [e, c] : terms) den = detail::lcm64(den, c.den());
  std::vector<i128> c(modulus, 0);
  for (const auto& [e, coef] : terms) {
    std::int64_t idx = ((e % modulus) + modulus) % modulus;
    c[idx] = detail::checked_add(c[idx], static_cast<i128>(coef.num()) * (den / coef.den()));
  }
  field->reduce(c);
  return CycloReal(std::move(field), std::move(c), den);
}

enum class Trig { Cos, Sin };

/// Exact cos(k*pi/m) or sin(k*pi/m) in Q(zeta_M). Requires 2m | M and 4 | M.
inline CycloReal cyclo_trig(std::int64_t k, std::int64_t m, Trig which, std::int64_t modulus) {
  if (m <= 0) throw DomainError("cyclo_trig: m must be positive");
  if (modulus <= 0 || modulus % 4 != 0 || modulus % (2 * m) != 0) {
    throw ModulusError("cyclo_trig: modulus " + std::to_string(modulus) + " cannot express angle " +
                       std::to_string(k) + "*pi/" + std::to_string(m));
  }
  const std::int64_t t = (k % (2 * m)) * (modulus / (2 * m));
  const Rational half(1, 2);
  if (which == Trig::Cos) {
    const std::pair<std::int64_t, Rational> terms[] = {{t, half}, {-t, half}};
    return cyclo_power_sum(modulus, terms);
  }
  // (z - z^-1) / (2i) with 1/i = zeta^(3M/4)
  const std::int64_t q = 3 * modulus / 4;
  const std::pair<std::int64_t, Rational> terms[] = {{t + q, half}, {-t + q, -half}};
  return cyclo_power_sum(modulus, terms);
}

namespace detail {

/// Rigorous bounds [lo, hi] on a real element at the given precision.
inline void interval_bounds(const CycloReal& x, mpfr_prec_t prec, mpfr_ptr lo, mpfr_ptr hi) {
  auto table = x.field()->cos_table(prec);
  Mpfr term(prec);
  mpfr_set_zero(lo, 1);
  mpfr_set_zero(hi, 1);
  auto nums = x.numerators();
  for (std::size_t j = 0; j < nums.size(); ++j) {
    const long c = nums[j];
    if (c == 0) continue;
    mpfr_srcptr low_end = c > 0 ? table->lower(j) : table->upper(j);
    mpfr_srcptr high_end = c > 0 ? table->upper(j) : table->lower(j);
    mpfr_mul_si(term.get(), low_end, c, MPFR_RNDD);
    mpfr_add(lo, lo, term.get(), MPFR_RNDD);
    mpfr_mul_si(term.get(), high_end, c, MPFR_RNDU);
    mpfr_add(hi, hi, term.get(), MPFR_RNDU);
  }
  mpfr_div_si(lo, lo, x.denominator(), MPFR_RNDD);
  mpfr_div_si(hi, hi, x.denominator(), MPFR_RNDU);
}

}  // namespace detail

/// Interval evaluation of a real element with MPFR working precision prec,
/// widened outward to doubles.
inline Enclosure cyclo_enclose(const CycloReal& x, mpfr_prec_t prec = 64) {
  detail::Mpfr lo(prec), hi(prec);
  detail::interval_bounds(x, prec, lo.get(), hi.get());
  return {mpfr_get_d(lo.get(), MPFR_RNDD), mpfr_get_d(hi.get(), MPFR_RNDU)};
}

inline constexpr mpfr_prec_t kInitialSignPrecision = 64;
inline constexpr mpfr_prec_t kMaxSignPrecision = mpfr_prec_t{1} << 20;

/// Sign of a real element: exact zero test, then intervals at 64, 128, ...
/// bits until zero is excluded.
inline int cyclo_sign(const CycloReal& x) {
  if (x.is_zero()) return 0;
  if (!x.is_real()) throw DomainError("cyclo_sign of a non-real element");
  for (mpfr_prec_t prec = kInitialSignPrecision; prec <= kMaxSignPrecision; prec *= 2) {
    detail::Mpfr lo(prec), hi(prec);
    detail::interval_bounds(x, prec, lo.get(), hi.get());
    if (mpfr_sgn(lo.get()) > 0) return 1;
    if (mpfr_sgn(hi.get()) < 0) return -1;
  }
  throw ResourceLimitError("cyclo_sign: precision limit reached");
}

inline int cyclo_compare(const CycloReal& x, const CycloReal& y) { return cyclo_sign(x - y); }

}  // namespace tilegate

template <>
struct std::hash<tilegate::CycloReal> {
  std::size_t operator()(const tilegate::CycloReal& x) const noexcept { return x.hash(); }
};
