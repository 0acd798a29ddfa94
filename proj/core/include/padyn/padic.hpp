#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace padyn {

using Residue = std::uint64_t;
using Digit = std::uint32_t;

// Residues are held in one machine word; every modulus p^K must stay below this.
inline constexpr Residue kMaxModulus = Residue{1} << 62;

bool is_prime(std::uint64_t p);

// p^e; throws PrecisionError when the power exceeds kMaxModulus.
Residue checked_pow(std::uint64_t p, int e);

// Largest e with q^e <= i (i >= 1, q >= 2), by repeated integer multiplication.
int floor_log(std::uint64_t i, std::uint64_t q);

// Exact p-adic valuation of a nonzero integer.
int valuation_of(std::uint64_t v, std::uint64_t p);

Residue mul_mod(Residue a, Residue b, Residue modulus);

// Inverse of a unit modulo `modulus`.
Residue inverse_mod(Residue unit, Residue modulus);

/// p-adic valuation of a truncated integer. A residue that is zero at
/// precision K only tells us the valuation is at least K; that case is kept
/// distinct from an exact value and orders above every exact valuation.
class Valuation {
 public:
  static constexpr Valuation exact(int nu) { return Valuation(nu, false); }
  static constexpr Valuation at_least(int bound) { return Valuation(bound, true); }

  constexpr bool is_exact() const { return !lower_bound_only_; }
  // The exact valuation, or the known lower bound when !is_exact().
  constexpr int value() const { return value_; }

  constexpr bool operator==(const Valuation&) const = default;
  constexpr std::strong_ordering operator<=>(const Valuation& other) const {
    if (lower_bound_only_ != other.lower_bound_only_) {
      return lower_bound_only_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return value_ <=> other.value_;
  }

  std::string to_string() const;

 private:
  constexpr Valuation(int v, bool lb) : value_(v), lower_bound_only_(lb) {}
  int value_;
  bool lower_bound_only_;
};

/// Element of Z/p^K viewed as a p-adic integer known to K base-p digits.
/// Immutable; arithmetic results carry the smaller operand precision.
class PadicInt {
 public:
  // Canonical residue of v (possibly negative) modulo p^K.
  static PadicInt make(std::uint64_t p, int precision, std::int64_t v);
  // v is reduced modulo p^K.
  static PadicInt from_residue(std::uint64_t p, int precision, Residue v);
  // Digits least significant first; precision = digits.size().
  static PadicInt from_digits(std::uint64_t p, std::span<const Digit> digits);

  std::uint64_t prime() const { return p_; }
  int precision() const { return precision_; }
  Residue value() const { return value_; }
  Residue modulus() const { return modulus_; }

  Digit digit(int i) const;
  std::vector<Digit> digits() const;

  Valuation valuation() const;

  // Forget digits at and above `precision`.
  PadicInt truncate(int precision) const;
  // Canonical representative carried to more digits (new digits are zero).
  PadicInt zero_extend(int precision) const;

  PadicInt operator-() const;
  friend PadicInt operator+(const PadicInt& a, const PadicInt& b);
  friend PadicInt operator-(const PadicInt& a, const PadicInt& b);
  friend PadicInt operator*(const PadicInt& a, const PadicInt& b);

  friend bool operator==(const PadicInt&, const PadicInt&) = default;

  std::string to_string() const;

 private:
  PadicInt(std::uint64_t p, int precision, Residue modulus, Residue value)
      : p_(p), precision_(precision), modulus_(modulus), value_(value) {}

  std::uint64_t p_;
  int precision_;
  Residue modulus_;
  Residue value_;
};

/// C(x, i) mod p^K for the canonical nonnegative representative of x.
/// Requires x to carry at least K + floor(log_p i) digits, which is exactly
/// what the Lipschitz bound of C(., i) needs for the result to be determined.
PadicInt binomial_eval(const PadicInt& x, std::uint64_t i, int precision);

namespace detail {

/// Streams C(x, 0), C(x, 1), ... modulo p^K for an exact nonnegative integer x.
/// Each step multiplies by (x - i) / (i + 1), carrying the power of p and the
/// unit part separately so the division is exact.
class BinomialStream {
 public:
  BinomialStream(std::uint64_t p, int precision, std::uint64_t x);

  Residue current() const;  // C(x, index())
  std::uint64_t index() const { return index_; }
  void advance();

 private:
  std::uint64_t p_;
  int precision_;
  Residue modulus_;
  std::uint64_t x_;
  std::uint64_t index_ = 0;
  Residue unit_ = 1;
  int exponent_ = 0;
  bool vanished_ = false;
};

}  // namespace detail

}  // namespace padyn
