#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qreflect {

// Error taxonomy shared by all modules.
struct ZeroDenominator : std::runtime_error {
  ZeroDenominator() : std::runtime_error("zero denominator") {}
};
struct ZeroToNegativePower : std::runtime_error {
  ZeroToNegativePower() : std::runtime_error("zero raised to a negative power") {}
};
struct PoleEncountered : std::runtime_error {
  explicit PoleEncountered(const std::string& what = "division by zero during evaluation")
      : std::runtime_error(what) {}
};
struct LengthMismatch : std::runtime_error {
  LengthMismatch() : std::runtime_error("multi-index length mismatch") {}
};
struct WeightExceedsJ : std::runtime_error {
  WeightExceedsJ() : std::runtime_error("multi-index weight exceeds spin bound") {}
};
struct SingularPartialTranspose : std::runtime_error {
  SingularPartialTranspose() : std::runtime_error("partial transpose is singular at this point") {}
};
struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what = "dimension mismatch")
      : std::runtime_error(what) {}
};
struct DegenerateKernel : std::runtime_error {
  explicit DegenerateKernel(const std::string& what) : std::runtime_error(what) {}
};
struct NegativeRate : std::runtime_error {
  explicit NegativeRate(const std::string& what) : std::runtime_error(what) {}
};
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace num {

// Arbitrary-precision rational, always kept in canonical form (den > 0,
// gcd(|num|, den) = 1).  All identity checks in this project run on this type;
// no rounding ever happens.
class ExactScalar {
 public:
  ExactScalar() : v_(0) {}
  ExactScalar(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  static ExactScalar from_fraction(long num, long den) {
    if (den == 0) throw ZeroDenominator();
    mpq_class v(num, den);
    v.canonicalize();
    return ExactScalar(v);
  }

  // Accepts "123", "-4/7", "  3 / 2 ".
  static ExactScalar parse(const std::string& text);

  const mpq_class& raw() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  // "num/den" with an explicit denominator, e.g. "3/1", "-1/2".
  std::string fraction_string() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }
  std::string str() const { return v_.get_str(); }

  ExactScalar operator-() const { return ExactScalar(mpq_class(-v_)); }
  ExactScalar& operator+=(const ExactScalar& o) { v_ += o.v_; return *this; }
  ExactScalar& operator-=(const ExactScalar& o) { v_ -= o.v_; return *this; }
  ExactScalar& operator*=(const ExactScalar& o) { v_ *= o.v_; return *this; }
  ExactScalar& operator/=(const ExactScalar& o) {
    if (o.is_zero()) throw PoleEncountered();
    v_ /= o.v_;
    return *this;
  }

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.v_ == b.v_; }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return a.v_ != b.v_; }
  friend bool operator<(const ExactScalar& a, const ExactScalar& b) { return a.v_ < b.v_; }

 private:
  mpq_class v_;
};

inline ExactScalar rat(long num, long den) { return ExactScalar::from_fraction(num, den); }

inline ExactScalar inverse(const ExactScalar& a) {
  if (a.is_zero()) throw PoleEncountered();
  return ExactScalar(1) / a;
}

// Pair (value, deriv) realizing d/dx at a point: (a+be)(c+de) = ac + (ad+bc)e.
// Division is defined iff the divisor's value part is nonzero.
class DualScalar {
 public:
  DualScalar() = default;
  DualScalar(const ExactScalar& value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  DualScalar(long value) : v_(value) {}                // NOLINT(google-explicit-constructor)
  DualScalar(const ExactScalar& value, const ExactScalar& deriv) : v_(value), d_(deriv) {}

  const ExactScalar& value() const { return v_; }
  const ExactScalar& deriv() const { return d_; }
  bool is_zero() const { return v_.is_zero() && d_.is_zero(); }

  DualScalar operator-() const { return DualScalar(-v_, -d_); }
  friend DualScalar operator+(const DualScalar& a, const DualScalar& b) {
    return DualScalar(a.v_ + b.v_, a.d_ + b.d_);
  }
  friend DualScalar operator-(const DualScalar& a, const DualScalar& b) {
    return DualScalar(a.v_ - b.v_, a.d_ - b.d_);
  }
  friend DualScalar operator*(const DualScalar& a, const DualScalar& b) {
    return DualScalar(a.v_ * b.v_, a.v_ * b.d_ + a.d_ * b.v_);
  }
  friend DualScalar operator/(const DualScalar& a, const DualScalar& b) {
    if (b.v_.is_zero()) throw PoleEncountered("dual division by zero-value element");
    ExactScalar val = a.v_ / b.v_;
    return DualScalar(val, (a.d_ - val * b.d_) / b.v_);
  }
  DualScalar& operator+=(const DualScalar& o) { return *this = *this + o; }
  DualScalar& operator-=(const DualScalar& o) { return *this = *this - o; }
  DualScalar& operator*=(const DualScalar& o) { return *this = *this * o; }
  DualScalar& operator/=(const DualScalar& o) { return *this = *this / o; }
  friend bool operator==(const DualScalar& a, const DualScalar& b) {
    return a.v_ == b.v_ && a.d_ == b.d_;
  }
  friend bool operator!=(const DualScalar& a, const DualScalar& b) { return !(a == b); }

 private:
  ExactScalar v_, d_;
};

inline DualScalar inverse(const DualScalar& a) { return DualScalar(1) / a; }

// Truncated series e^val * (c0 + c1*e + c2*e^2 + c3*e^3) around an expansion
// point, with an explicit valuation so that simple zeros cancel exactly in
// quotients.  Individual terms of the R-matrix sum have matching simple zeros
// in numerator and denominator at x = 1, which a two-field dual number cannot
// divide through; this type can.  `nvalid` counts how many stored coefficients
// are meaningful (coefficients beyond a truncated operation are unknown, not
// zero).
class Jet {
 public:
  static constexpr int kOrder = 4;

  Jet() : val_(0), nvalid_(kOrder) {}
  Jet(long c) : Jet(ExactScalar(c)) {}  // NOLINT(google-explicit-constructor)
  Jet(const ExactScalar& c) : val_(0), nvalid_(kOrder) {  // NOLINT(google-explicit-constructor)
    c_[0] = c;
  }
  Jet(const ExactScalar& c0, const ExactScalar& c1) : val_(0), nvalid_(kOrder) {
    c_[0] = c0;
    c_[1] = c1;
  }

  // Seed for differentiating in x at x0 when the carried variable is
  // u = x^2: u = x0^2 + 2*x0*e with e = x - x0.
  static Jet variable(const ExactScalar& value, const ExactScalar& dvalue) {
    return Jet(value, dvalue);
  }

  bool is_exact_zero() const {
    return val_ >= 0 && nvalid_ == kOrder && all_stored_zero();
  }

  // Coefficient extraction; throws on a genuine pole part and when the
  // requested order lies beyond the known window.
  ExactScalar value() const { return extract(0); }
  ExactScalar deriv() const { return extract(1); }
  DualScalar dual() const { return DualScalar(value(), deriv()); }

  Jet operator-() const {
    Jet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    Jet r;
    r.val_ = std::min(a.val_, b.val_);
    int top = std::min(a.val_ + a.nvalid_, b.val_ + b.nvalid_);
    r.nvalid_ = std::min(kOrder, top - r.val_);
    if (r.nvalid_ <= 0) throw PoleEncountered("jet precision exhausted in addition");
    for (int i = 0; i < r.nvalid_; ++i) {
      int deg = r.val_ + i;
      ExactScalar s;
      if (deg >= a.val_ && deg < a.val_ + kOrder) s += a.c_[deg - a.val_];
      if (deg >= b.val_ && deg < b.val_ + kOrder) s += b.c_[deg - b.val_];
      r.c_[i] = s;
    }
    r.normalize();
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }
  friend Jet operator*(const Jet& a, const Jet& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return Jet(0);
    Jet r;
    r.val_ = a.val_ + b.val_;
    r.nvalid_ = std::min(a.nvalid_, b.nvalid_);
    for (int i = 0; i < r.nvalid_; ++i) {
      ExactScalar s;
      for (int k = 0; k <= i; ++k) s += a.c_[k] * b.c_[i - k];
      r.c_[i] = s;
    }
    r.normalize();
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * jet_inverse(b); }

  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet jet_inverse(const Jet& a) {
    Jet x = a;
    x.normalize();
    if (x.all_stored_zero()) throw PoleEncountered("jet inversion of zero");
    Jet r;
    r.val_ = -x.val_;
    r.nvalid_ = x.nvalid_;
    r.c_[0] = inverse(x.c_[0]);
    for (int i = 1; i < r.nvalid_; ++i) {
      ExactScalar s;
      for (int k = 1; k <= i; ++k) s += x.c_[k] * r.c_[i - k];
      r.c_[i] = -s / x.c_[0];
    }
    return r;
  }

 private:
  bool all_stored_zero() const {
    for (int i = 0; i < nvalid_; ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }
  // Shift so the leading stored coefficient is nonzero.  Exact leading zeros
  // carry no information, so trading them for valuation preserves the known
  // order while keeping windows short; an all-zero window collapses to an
  // empty one (zero through eps^{val-1}, unknown beyond), and a fully known
  // all-zero series canonicalizes to the exact zero.
  void normalize() {
    int shift = 0;
    while (shift < nvalid_ && c_[shift].is_zero()) ++shift;
    if (shift == 0) return;
    if (shift == nvalid_ && nvalid_ == kOrder && val_ >= 0) {
      val_ = 0;
      return;
    }
    val_ += shift;
    nvalid_ -= shift;
    for (int i = 0; i < kOrder; ++i)
      c_[i] = (i + shift < kOrder) ? c_[i + shift] : ExactScalar(0);
  }
  ExactScalar extract(int deg) const {
    if (is_exact_zero()) return ExactScalar(0);
    Jet w = *this;
    w.normalize();
    if (w.nvalid_ > 0 && w.val_ < 0)
      throw PoleEncountered("jet extraction at a genuine pole");
    if (deg < w.val_) return ExactScalar(0);
    if (deg - w.val_ < w.nvalid_) return w.c_[deg - w.val_];
    throw PoleEncountered("jet precision exhausted");
  }

  int val_;
  int nvalid_;
  std::array<ExactScalar, kOrder> c_;
};

inline Jet inverse(const Jet& a) { return jet_inverse(a); }

// Exact integer power; works for any scalar with * and inverse().
template <class S>
S ipow(const S& base, long e) {
  if (e < 0) return ipow(inverse(base), -e);
  S r(1);
  S b = base;
  for (long k = e; k > 0; k >>= 1) {
    if (k & 1) r = r * b;
    b = b * b;
  }
  return r;
}

inline ExactScalar ipow(const ExactScalar& base, long e) {
  if (e < 0 && base.is_zero()) throw ZeroToNegativePower();
  return ipow<ExactScalar>(base, e);
}

// Assignment of exact rational values to the free symbols of an identity.
class ParamPoint {
 public:
  void bind(const std::string& symbol, const ExactScalar& value) {
    bindings_[symbol] = value;
  }
  const ExactScalar& get(const std::string& symbol) const {
    auto it = bindings_.find(symbol);
    if (it == bindings_.end()) throw ConfigError("unbound symbol: " + symbol);
    return it->second;
  }
  bool has(const std::string& symbol) const { return bindings_.count(symbol) > 0; }
  const std::map<std::string, ExactScalar>& bindings() const { return bindings_; }
  friend bool operator==(const ParamPoint& a, const ParamPoint& b) {
    return a.bindings_ == b.bindings_;
  }

 private:
  std::map<std::string, ExactScalar> bindings_;
};

// Deterministic in `seed`; every symbol gets a/b with 1 <= a,b <= bound.
// The symbol named "q" never samples to 1 (q at 1 degenerates every
// q-deformed identity).  mt19937_64 is fully specified by the standard, so
// points are reproducible across platforms.
ParamPoint sample_point(const std::vector<std::string>& symbols, std::uint64_t seed,
                        long bound = 20);

}  // namespace num
}  // namespace qreflect
