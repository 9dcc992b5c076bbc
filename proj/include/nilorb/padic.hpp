#pragma once

// Truncated p-adic arithmetic for odd p.
//
// A nonzero PadicNum is p^val * unit where unit is known modulo p^prec
// (prec significant digits, prec <= N). Zero has its own encoding (unit == 0)
// and never appears as "valuation >= N". Addition tracks the absolute
// precision of both operands, so a sum whose known digits all cancel collapses
// to exact zero rather than leaving low-order noise behind.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilorb {

using BigInt = boost::multiprecision::cpp_int;

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  __int128 result = 1;
  __int128 b = ((base % mod) + mod) % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Legendre symbol (a/p) for odd prime p: 1, -1, or 0.
inline int legendre(std::int64_t a, std::int64_t p) {
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  return mod_pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Square root modulo an odd prime (Tonelli-Shanks). Returns the smaller of the
// two roots so results are reproducible. Requires legendre(a, p) == 1.
inline std::int64_t sqrt_mod_prime(std::int64_t a, std::int64_t p) {
  a = ((a % p) + p) % p;
  std::int64_t q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::int64_t z = 2;
  while (legendre(z, p) != -1) ++z;
  std::int64_t m = s;
  std::int64_t c = mod_pow(z, q, p);
  std::int64_t t = mod_pow(a, q, p);
  std::int64_t r = mod_pow(a, (q + 1) / 2, p);
  while (t != 1) {
    std::int64_t i = 0;
    std::int64_t tt = t;
    while (tt != 1) {
      tt = static_cast<std::int64_t>(static_cast<__int128>(tt) * tt % p);
      ++i;
    }
    std::int64_t b = c;
    for (std::int64_t j = 0; j < m - i - 1; ++j)
      b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % p);
    m = i;
    c = static_cast<std::int64_t>(static_cast<__int128>(b) * b % p);
    t = static_cast<std::int64_t>(static_cast<__int128>(t) * c % p);
    r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % p);
  }
  return std::min(r, p - r);
}

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

// Inverse of a modulo m by the extended Euclidean algorithm; gcd(a, m) = 1.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt old_r = mod_floor(a, m), r = m;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("mod_inverse: not invertible");
  return mod_floor(old_s, m);
}

}  // namespace detail

/// Shared, immutable parameters of the base field: the residue prime p, the
/// working precision N, the canonical nonsquare unit rho, and whether -1 is a
/// square (p = 1 mod 4).
struct PadicCtx {
  std::int64_t p = 0;
  int N = 0;
  std::int64_t rho = 0;
  bool scno = false;
  std::vector<BigInt> powers;  // p^0 .. p^N

  static std::shared_ptr<const PadicCtx> make(std::int64_t p, int N = 64) {
    if (p <= 2 || !detail::is_prime(p))
      throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
    if (N < 16) throw std::invalid_argument("precision N must be at least 16");
    auto ctx = std::make_shared<PadicCtx>();
    ctx->p = p;
    ctx->N = N;
    ctx->rho = 2;
    while (detail::legendre(ctx->rho, p) != -1) ++ctx->rho;
    ctx->scno = (p % 4 == 1);
    ctx->powers.resize(static_cast<std::size_t>(N) + 1);
    ctx->powers[0] = 1;
    for (int k = 1; k <= N; ++k) ctx->powers[k] = ctx->powers[k - 1] * p;
    return ctx;
  }

  const BigInt& pow(int k) const { return powers.at(static_cast<std::size_t>(k)); }

  /// Digits within N of the working precision are treated as noise by the
  /// exactness checks.
  int zero_threshold() const { return N - 8; }
};

using PadicCtxPtr = std::shared_ptr<const PadicCtx>;

class PadicNum {
 public:
  /// Zero. A default-constructed value carries no context; it behaves as the
  /// additive identity and multiplicative annihilator.
  PadicNum() = default;
  explicit PadicNum(const PadicCtx& ctx) : ctx_(&ctx) {}

  static PadicNum from_int(const PadicCtx& ctx, std::int64_t n) {
    return from_big(ctx, BigInt(n), 0, ctx.N);
  }

  static PadicNum from_big(const PadicCtx& ctx, const BigInt& n) {
    return from_big(ctx, n, 0, ctx.N);
  }

  static PadicNum from_rational(const PadicCtx& ctx, std::int64_t num, std::int64_t den) {
    return from_int(ctx, num) / from_int(ctx, den);
  }

  /// p^k * 1.
  static PadicNum uniformizer_power(const PadicCtx& ctx, int k) {
    PadicNum r(ctx);
    r.val_ = k;
    r.unit_ = 1;
    r.prec_ = ctx.N;
    r.check_range();
    return r;
  }

  const PadicCtx* ctx() const { return ctx_; }
  bool is_zero() const { return unit_ == 0; }

  /// Valuation of a nonzero value.
  int valuation() const {
    if (is_zero()) throw std::domain_error("valuation of zero");
    return val_;
  }

  /// Valuation, with zero mapped to +infinity (INT_MAX).
  int valuation_or_max() const { return is_zero() ? std::numeric_limits<int>::max() : val_; }

  const BigInt& unit() const { return unit_; }
  int precision() const { return prec_; }

  std::int64_t unit_mod_p() const {
    if (is_zero()) return 0;
    return static_cast<std::int64_t>(unit_ % ctx_->p);
  }

  PadicNum operator-() const {
    if (is_zero()) return *this;
    PadicNum r = *this;
    r.unit_ = ctx_->pow(prec_) - unit_;
    return r;
  }

  friend PadicNum operator+(const PadicNum& a, const PadicNum& b) { return add(a, b, true); }
  friend PadicNum operator-(const PadicNum& a, const PadicNum& b) { return add(a, -b, true); }

  friend PadicNum operator*(const PadicNum& a, const PadicNum& b) {
    if (a.is_zero() || b.is_zero()) return zero_like(a, b);
    PadicNum r(*a.ctx_);
    r.val_ = a.val_ + b.val_;
    r.prec_ = std::min(a.prec_, b.prec_);
    r.unit_ = (a.unit_ * b.unit_) % a.ctx_->pow(r.prec_);
    r.check_range();
    return r;
  }

  PadicNum inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    PadicNum r(*ctx_);
    r.val_ = -val_;
    r.prec_ = prec_;
    r.unit_ = detail::mod_inverse(unit_, ctx_->pow(prec_));
    r.check_range();
    return r;
  }

  friend PadicNum operator/(const PadicNum& a, const PadicNum& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return a * b.inverse();
  }

  PadicNum& operator+=(const PadicNum& o) { return *this = *this + o; }
  PadicNum& operator-=(const PadicNum& o) { return *this = *this - o; }
  PadicNum& operator*=(const PadicNum& o) { return *this = *this * o; }

  /// Equal to within the smaller of the two known precisions.
  friend bool operator==(const PadicNum& a, const PadicNum& b) { return add(a, -b, false).is_zero(); }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s = "p^" + std::to_string(val_) + "*" + unit_.str();
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const PadicNum& x) { return os << x.to_string(); }

 private:
  static PadicNum from_big(const PadicCtx& ctx, BigInt n, int val, int prec) {
    PadicNum r(ctx);
    if (n == 0) return r;
    while (n % ctx.p == 0) {
      n /= ctx.p;
      ++val;
    }
    r.val_ = val;
    r.prec_ = prec;
    r.unit_ = detail::mod_floor(n, ctx.pow(prec));
    r.check_range();
    return r;
  }

  // Sum with absolute-precision tracking. When `check` is set, a nonzero result
  // with fewer than four significant digits is a precision failure.
  static PadicNum add(const PadicNum& a, const PadicNum& b, bool check) {
    if (a.is_zero() && b.is_zero()) return zero_like(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const PadicCtx& ctx = *a.ctx_;
    const PadicNum& lo = a.val_ <= b.val_ ? a : b;
    const PadicNum& hi = a.val_ <= b.val_ ? b : a;
    int abs_prec = std::min(lo.val_ + lo.prec_, hi.val_ + hi.prec_);
    int rel = abs_prec - lo.val_;  // digits of the sum known, relative to lo.val_
    int shift = hi.val_ - lo.val_;
    if (shift >= rel) {
      PadicNum r = lo;
      r.prec_ = std::min(r.prec_, rel);
      r.unit_ %= ctx.pow(r.prec_);
      return r;
    }
    const BigInt& mod = ctx.pow(rel);
    BigInt x = (lo.unit_ + hi.unit_ * ctx.pow(shift)) % mod;
    if (x == 0) return PadicNum(ctx);
    int val = lo.val_;
    while (x % ctx.p == 0) {
      x /= ctx.p;
      ++val;
      --rel;
    }
    if (check && rel < 4)
      throw PrecisionError("catastrophic cancellation: " + std::to_string(rel) +
                           " significant digits left");
    PadicNum r(ctx);
    r.val_ = val;
    r.prec_ = rel;
    r.unit_ = x % ctx.pow(rel);
    r.check_range();
    return r;
  }

  static PadicNum zero_like(const PadicNum& a, const PadicNum& b) {
    if (a.ctx_) return PadicNum(*a.ctx_);
    if (b.ctx_) return PadicNum(*b.ctx_);
    return PadicNum();
  }

  void check_range() const {
    if (unit_ != 0 && val_ < -ctx_->N)
      throw PrecisionError("valuation " + std::to_string(val_) + " underflows -N");
  }

  const PadicCtx* ctx_ = nullptr;
  int val_ = 0;
  BigInt unit_ = 0;
  int prec_ = 0;
};

enum class SquareClass { One, Rho, Pi, RhoPi };

inline constexpr SquareClass kAllSquareClasses[] = {SquareClass::One, SquareClass::Rho, SquareClass::Pi,
                                                    SquareClass::RhoPi};

inline bool has_odd_valuation(SquareClass c) { return c == SquareClass::Pi || c == SquareClass::RhoPi; }
inline bool has_rho(SquareClass c) { return c == SquareClass::Rho || c == SquareClass::RhoPi; }

inline SquareClass make_square_class(bool rho, bool pi) {
  if (pi) return rho ? SquareClass::RhoPi : SquareClass::Pi;
  return rho ? SquareClass::Rho : SquareClass::One;
}

/// Product in k^x/(k^x)^2, which is a Klein four-group.
inline SquareClass operator*(SquareClass a, SquareClass b) {
  return make_square_class(has_rho(a) != has_rho(b), has_odd_valuation(a) != has_odd_valuation(b));
}

/// Class of -1: trivial when -1 is a square, rho otherwise.
inline SquareClass minus_one_class(const PadicCtx& ctx) { return ctx.scno ? SquareClass::One : SquareClass::Rho; }

inline SquareClass negate(SquareClass c, const PadicCtx& ctx) { return c * minus_one_class(ctx); }

inline SquareClass square_class(const PadicNum& x) {
  if (x.is_zero()) throw std::domain_error("square_class of zero");
  const PadicCtx& ctx = *x.ctx();
  bool rho = detail::legendre(x.unit_mod_p(), ctx.p) == -1;
  return make_square_class(rho, (x.valuation() % 2) != 0);
}

/// Favoured representative in {1, rho, p, rho*p}.
inline PadicNum representative(SquareClass c, const PadicCtx& ctx) {
  PadicNum r = has_rho(c) ? PadicNum::from_int(ctx, ctx.rho) : PadicNum::from_int(ctx, 1);
  if (has_odd_valuation(c)) r = r * PadicNum::uniformizer_power(ctx, 1);
  return r;
}

inline std::string to_string(SquareClass c) {
  switch (c) {
    case SquareClass::One: return "1";
    case SquareClass::Rho: return "r";
    case SquareClass::Pi: return "w";
    case SquareClass::RhoPi: return "rw";
  }
  return "?";
}

inline SquareClass square_class_from_string(const std::string& s) {
  if (s == "1") return SquareClass::One;
  if (s == "r") return SquareClass::Rho;
  if (s == "w") return SquareClass::Pi;
  if (s == "rw" || s == "wr") return SquareClass::RhoPi;
  throw std::invalid_argument("unknown square class '" + s + "' (expected 1, r, w or rw)");
}

/// Square root to full precision, or nothing when x is not a square.
inline std::optional<PadicNum> hensel_sqrt(const PadicNum& x) {
  if (x.is_zero()) throw std::domain_error("hensel_sqrt of zero");
  if (square_class(x) != SquareClass::One) return std::nullopt;
  const PadicCtx& ctx = *x.ctx();
  const BigInt& mod = ctx.pow(x.precision());
  const BigInt& u = x.unit();
  BigInt r = detail::sqrt_mod_prime(x.unit_mod_p(), ctx.p);
  // Newton's iteration doubles the number of correct digits each step.
  for (int known = 1; known < x.precision(); known *= 2) {
    BigInt f = detail::mod_floor(r * r - u, mod);
    r = detail::mod_floor(r - f * detail::mod_inverse(2 * r, mod), mod);
  }
  return PadicNum::from_big(ctx, r) * PadicNum::uniformizer_power(ctx, x.valuation() / 2);
}

/// A pair (c, s) with c^2 + s^2 = -1: s is the least b in [0, p) making
/// -1 - b^2 a nonzero square mod p, and c is its Hensel-lifted square root.
inline std::pair<PadicNum, PadicNum> sum_of_squares_minus_one(const PadicCtx& ctx) {
  for (std::int64_t b = 0; b < ctx.p; ++b) {
    std::int64_t t = -1 - b * b;
    if (detail::legendre(t, ctx.p) != 1) continue;
    PadicNum s = PadicNum::from_int(ctx, b);
    auto c = hensel_sqrt(PadicNum::from_int(ctx, t));
    return {*c, s};
  }
  throw std::logic_error("no sum of two squares equals -1");
}

}  // namespace nilorb
