#pragma once

// Exact scalars over the rationals and over prime fields F_p.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "evoline/error.hpp"

namespace evoline {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<u128>(a) * b % p);
}

inline u64 pow_mod(u64 base, u64 e, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1U;
  }
  return result;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Inverse of a modulo m (m >= 1, gcd(a, m) = 1). Returns 0 when m == 1.
inline u64 inv_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

// Distinct prime divisors by trial division; intended for moderate n.
inline std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> primes;
  for (u64 q = 2; q <= n / q; ++q) {
    if (n % q == 0) {
      primes.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

// Exact integer m-th root of a nonnegative n, if one exists.
inline std::optional<BigInt> exact_integer_root(const BigInt& n, std::uint64_t m) {
  if (n < 0) return std::nullopt;
  if (n == 0 || n == 1 || m == 1) return n;
  const std::uint64_t bits = boost::multiprecision::msb(n) + 1;
  if (m >= bits) return std::nullopt;  // 2^m > n, and n > 1
  BigInt lo = 1;
  BigInt hi = BigInt(1) << static_cast<unsigned>(bits / m + 1);
  while (lo <= hi) {
    BigInt mid = (lo + hi) >> 1;
    BigInt p = boost::multiprecision::pow(mid, static_cast<unsigned>(m));
    if (p == n) return mid;
    if (p < n) {
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// The ground field: Q (characteristic 0) or F_p for a prime p.
class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }

  static FieldSpec prime(std::uint64_t p) {
    if (!detail::is_prime_u64(p)) {
      raise(ErrorCategory::BadFieldTag, "characteristic " + std::to_string(p) + " is not prime");
    }
    return FieldSpec(Kind::PrimeField, p);
  }

  /// Parses "Q" or "F<p>".
  static FieldSpec parse(std::string_view tag) {
    if (tag == "Q") return rationals();
    if (tag.size() >= 2 && tag[0] == 'F') {
      std::uint64_t p = 0;
      auto body = tag.substr(1);
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
      if (ec == std::errc() && ptr == body.data() + body.size() && body[0] != '0') {
        if (!detail::is_prime_u64(p)) {
          raise(ErrorCategory::BadFieldTag, "field tag '" + std::string(tag) + "': characteristic is not prime");
        }
        return FieldSpec(Kind::PrimeField, p);
      }
    }
    raise(ErrorCategory::BadFieldTag, "unrecognized field tag '" + std::string(tag) + "'");
  }

  Kind kind() const { return kind_; }
  std::uint64_t characteristic() const { return characteristic_; }
  bool is_rationals() const { return kind_ == Kind::Rationals; }
  bool is_prime_field() const { return kind_ == Kind::PrimeField; }

  std::string tag() const { return is_rationals() ? std::string("Q") : "F" + std::to_string(characteristic_); }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind k, std::uint64_t c) : kind_(k), characteristic_(c) {}

  Kind kind_ = Kind::Rationals;
  std::uint64_t characteristic_ = 0;
};

/// An exact field element. Rationals stay in lowest terms with a positive
/// denominator; residues stay in [0, p).
class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(const FieldSpec& spec) { return from_int(spec, 0); }
  static Scalar one(const FieldSpec& spec) { return from_int(spec, 1); }

  static Scalar from_int(const FieldSpec& spec, long long v) {
    if (spec.is_rationals()) return Scalar(spec, Rational(v));
    const detail::u64 p = spec.characteristic();
    detail::u64 mag = v < 0 ? static_cast<detail::u64>(-(v + 1)) + 1 : static_cast<detail::u64>(v);
    mag %= p;
    return Scalar(spec, v < 0 && mag != 0 ? p - mag : mag);
  }

  /// Builds num/den in canonical form (rationals), or num * den^-1 mod p.
  static Scalar from_fraction(const FieldSpec& spec, const BigInt& num, const BigInt& den) {
    if (den == 0) raise(ErrorCategory::DivisionByZero, "zero denominator");
    if (spec.is_rationals()) return den < 0 ? Scalar(spec, Rational(-num, -den)) : Scalar(spec, Rational(num, den));
    const BigInt p = spec.characteristic();
    BigInt n = num % p;
    if (n < 0) n += p;
    BigInt d = den % p;
    if (d < 0) d += p;
    if (d == 0) raise(ErrorCategory::DivisionByZero, "denominator vanishes mod p");
    return Scalar(spec, n.convert_to<detail::u64>()) / Scalar(spec, d.convert_to<detail::u64>());
  }

  static Scalar from_residue(const FieldSpec& spec, std::uint64_t r) {
    if (!spec.is_prime_field()) raise(ErrorCategory::FieldMismatch, "residue in a non-prime field");
    return Scalar(spec, r % spec.characteristic());
  }

  /// Text syntax: Q accepts "p" or "p/q" with optional leading '-';
  /// F_p accepts a decimal residue in [0, p).
  static Scalar parse(const FieldSpec& spec, std::string_view text) {
    auto bad = [&]() -> Scalar {
      raise(ErrorCategory::BadScalar, "'" + std::string(text) + "' is not a scalar of " + spec.tag());
    };
    auto is_digits = [](std::string_view s) {
      return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (spec.is_rationals()) {
      std::string_view body = text;
      bool negative = false;
      if (!body.empty() && body[0] == '-') {
        negative = true;
        body.remove_prefix(1);
      }
      auto slash = body.find('/');
      std::string_view num = body.substr(0, slash);
      std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
      if (!is_digits(num) || !is_digits(den)) return bad();
      BigInt n{std::string(num)};
      BigInt d{std::string(den)};
      if (d == 0) return bad();
      if (negative) n = -n;
      return Scalar(spec, Rational(n, d));
    }
    if (!is_digits(text)) return bad();
    std::uint64_t r = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), r);
    if (ec != std::errc() || ptr != text.data() + text.size() || r >= spec.characteristic()) return bad();
    return Scalar(spec, r);
  }

  const FieldSpec& spec() const { return spec_; }

  bool is_zero() const {
    return spec_.is_rationals() ? std::get<Rational>(value_) == 0 : std::get<detail::u64>(value_) == 0;
  }
  bool is_one() const {
    return spec_.is_rationals() ? std::get<Rational>(value_) == 1 : std::get<detail::u64>(value_) == 1;
  }

  const Rational& rational() const { return std::get<Rational>(value_); }
  std::uint64_t residue() const { return std::get<detail::u64>(value_); }

  BigInt numerator() const {
    return spec_.is_rationals() ? boost::multiprecision::numerator(rational()) : BigInt(residue());
  }
  BigInt denominator() const {
    return spec_.is_rationals() ? boost::multiprecision::denominator(rational()) : BigInt(1);
  }

  std::string to_string() const {
    if (spec_.is_prime_field()) return std::to_string(residue());
    const BigInt num = numerator();
    const BigInt den = denominator();
    return den == 1 ? num.str() : num.str() + "/" + den.str();
  }

  Scalar operator-() const {
    if (spec_.is_rationals()) return Scalar(spec_, Rational(-rational()));
    const auto r = residue();
    return Scalar(spec_, r == 0 ? 0 : spec_.characteristic() - r);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    if (a.spec_.is_rationals()) return Scalar(a.spec_, Rational(a.rational() + b.rational()));
    const detail::u64 p = a.spec_.characteristic();
    return Scalar(a.spec_, static_cast<detail::u64>((static_cast<detail::u128>(a.residue()) + b.residue()) % p));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    if (a.spec_.is_rationals()) return Scalar(a.spec_, Rational(a.rational() * b.rational()));
    return Scalar(a.spec_, detail::mul_mod(a.residue(), b.residue(), a.spec_.characteristic()));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inv() const {
    if (is_zero()) raise(ErrorCategory::DivisionByZero, "inverse of zero");
    if (spec_.is_rationals()) return Scalar(spec_, Rational(1 / rational()));
    const detail::u64 p = spec_.characteristic();
    return Scalar(spec_, detail::pow_mod(residue(), p - 2, p));
  }

  /// Integer power; negative exponents invert first.
  Scalar pow(long long e) const {
    if (e < 0) return inv().pow_unsigned(static_cast<std::uint64_t>(-(e + 1)) + 1);
    return pow_unsigned(static_cast<std::uint64_t>(e));
  }

  Scalar pow_unsigned(std::uint64_t e) const {
    if (spec_.is_prime_field()) {
      return Scalar(spec_, detail::pow_mod(residue(), e, spec_.characteristic()));
    }
    Scalar result = one(spec_);
    Scalar base = *this;
    while (e > 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e > 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.spec_ == b.spec_ && a.value_ == b.value_;
  }

  /// Total order used for canonical sorting: by numeric value over Q,
  /// by residue over F_p.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    if (a.spec_.is_rationals()) return a.rational() < b.rational();
    return a.residue() < b.residue();
  }

 private:
  Scalar(const FieldSpec& spec, Rational q) : spec_(spec), value_(std::move(q)) {}
  Scalar(const FieldSpec& spec, detail::u64 r) : spec_(spec), value_(r) {}

  static void check_same(const Scalar& a, const Scalar& b) {
    if (!(a.spec_ == b.spec_)) {
      raise(ErrorCategory::FieldMismatch, "scalars from " + a.spec_.tag() + " and " + b.spec_.tag());
    }
  }

  FieldSpec spec_;
  std::variant<Rational, detail::u64> value_;
};

struct RootOptions {
  /// Prime fields up to this size are solved by scanning every residue.
  std::uint64_t brute_force_bound = 1'000'000;
};

namespace detail {

// Discrete log in a cyclic subgroup of prime order q generated by gamma.
inline u64 bsgs(u64 gamma, u64 target, u64 q, u64 p) {
  u64 step = 1;
  while (step * step < q) ++step;
  std::unordered_map<u64, u64> baby;
  baby.reserve(step * 2);
  u64 cur = 1;
  for (u64 j = 0; j < step; ++j) {
    baby.emplace(cur, j);
    cur = mul_mod(cur, gamma, p);
  }
  const u64 giant = inv_mod(pow_mod(gamma, step, p), p);
  u64 t = target;
  for (u64 i = 0; i <= step; ++i) {
    if (auto it = baby.find(t); it != baby.end()) return (i * step + it->second) % q;
    t = mul_mod(t, giant, p);
  }
  raise(ErrorCategory::InternalInconsistency, "discrete log not found in prime-order subgroup");
}

// Discrete log of target to base h, where h generates a cyclic subgroup of
// order `order` whose prime divisors are `primes`.
inline u64 pohlig_hellman(u64 h, u64 target, u64 order, const std::vector<u64>& primes, u64 p) {
  u64 x_mod = 0;
  u64 modulus = 1;
  for (u64 q : primes) {
    u64 qe = 1;
    int e = 0;
    while (order % (qe * q) == 0) {
      qe *= q;
      ++e;
      if (qe > order / q) break;
    }
    const u64 cofactor = order / qe;
    const u64 hq = pow_mod(h, cofactor, p);
    const u64 tq = pow_mod(target, cofactor, p);
    const u64 gamma = pow_mod(hq, qe / q, p);
    u64 x = 0;
    u64 qk = 1;
    for (int k = 0; k < e; ++k) {
      const u64 shifted = mul_mod(inv_mod(pow_mod(hq, x, p), p), tq, p);
      const u64 d = pow_mod(shifted, qe / (qk * q), p);
      x += bsgs(gamma, d, q, p) * qk;
      qk *= q;
    }
    // CRT merge of x mod qe into x_mod mod modulus.
    const u64 m1 = modulus;
    const u64 t = static_cast<u64>(
        (static_cast<u128>((x + qe - x_mod % qe) % qe) * inv_mod(m1 % qe, qe)) % qe);
    x_mod = static_cast<u64>((static_cast<u128>(t) * m1 + x_mod) % (static_cast<u128>(m1) * qe));
    modulus = m1 * qe;
  }
  return x_mod;
}

inline std::vector<u64> prime_field_roots_structured(u64 m, u64 c, u64 p) {
  const u64 group = p - 1;
  const u64 g = std::gcd(m, group);
  if (pow_mod(c, group / g, p) != 1) return {};
  if (g == 1) return {pow_mod(c, inv_mod(m % group, group), p)};

  // Split the group order as Q * R with the primes of g collected in Q.
  const std::vector<u64> primes = prime_divisors(g);
  u64 big_q = 1;
  u64 rest = group;
  for (u64 q : primes) {
    while (rest % q == 0) {
      rest /= q;
      big_q *= q;
    }
  }
  u64 h = 0;
  for (u64 a = 2; a < p; ++a) {
    const u64 cand = pow_mod(a, rest, p);
    bool full_order = true;
    for (u64 q : primes) {
      if (pow_mod(cand, big_q / q, p) == 1) {
        full_order = false;
        break;
      }
    }
    if (full_order) {
      h = cand;
      break;
    }
  }
  // y^g = c: y0 = c^(g^-1 mod R) is correct up to an element of the Q-part.
  const u64 y0 = pow_mod(c, inv_mod(g % rest, rest), p);
  const u64 t = mul_mod(c, inv_mod(pow_mod(y0, g, p), p), p);
  const u64 log_t = pohlig_hellman(h, t, big_q, primes, p);
  if (log_t % g != 0) return {};
  const u64 y = mul_mod(y0, pow_mod(h, log_t / g, p), p);

  // a*m + b*(p-1) = g  =>  x0 = y^a solves x^m = c.
  const u64 a = inv_mod((m / g) % (group / g), group / g);
  const u64 x0 = pow_mod(y, a, p);
  const u64 omega = pow_mod(h, big_q / g, p);
  std::vector<u64> roots;
  roots.reserve(g);
  u64 cur = x0;
  for (u64 i = 0; i < g; ++i) {
    roots.push_back(cur);
    cur = mul_mod(cur, omega, p);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace detail

/// All x in the field with x^m = c, sorted ascending. For c = 0 the only
/// solution is 0.
inline std::vector<Scalar> nth_root_set(const FieldSpec& spec, std::uint64_t m, const Scalar& c,
                                        const RootOptions& options = {}) {
  if (!(c.spec() == spec)) raise(ErrorCategory::FieldMismatch, "root target is not in " + spec.tag());
  if (m == 0) raise(ErrorCategory::DimensionMismatch, "root degree must be positive");
  if (c.is_zero()) return {c};
  if (spec.is_rationals()) {
    const BigInt num = c.numerator();
    const BigInt den = c.denominator();
    if (num < 0 && m % 2 == 0) return {};
    auto rn = detail::exact_integer_root(num < 0 ? BigInt(-num) : num, m);
    auto rd = detail::exact_integer_root(den, m);
    if (!rn || !rd) return {};
    Scalar r = Scalar::from_fraction(spec, num < 0 ? BigInt(-*rn) : *rn, *rd);
    if (m % 2 == 0) return {-r, r};  // r > 0 here
    return {r};
  }
  if (spec.is_prime_field()) {
    const std::uint64_t p = spec.characteristic();
    std::vector<Scalar> out;
    if (p <= options.brute_force_bound) {
      for (std::uint64_t x = 1; x < p; ++x) {
        if (detail::pow_mod(x, m, p) == c.residue()) out.push_back(Scalar::from_residue(spec, x));
      }
      return out;
    }
    if (p == 2) return {c};
    for (auto r : detail::prime_field_roots_structured(m, c.residue(), p)) {
      out.push_back(Scalar::from_residue(spec, r));
    }
    return out;
  }
  raise(ErrorCategory::UnsupportedField, "root extraction needs Q or F_p");
}

}  // namespace evoline
