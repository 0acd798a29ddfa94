#include "padyn/padic.hpp"

#include <algorithm>

#include "padyn/errors.hpp"

namespace padyn {

namespace {

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) {
    throw InputError("p = " + std::to_string(p) + " is not prime");
  }
}

void require_precision(int precision) {
  if (precision < 1) {
    throw InputError("precision must be at least 1, got " + std::to_string(precision));
  }
}

void require_same_prime(const PadicInt& a, const PadicInt& b) {
  if (a.prime() != b.prime()) {
    throw InputError("mismatched primes " + std::to_string(a.prime()) + " and " +
                     std::to_string(b.prime()));
  }
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::uint64_t d = 3; d <= p / d; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

Residue checked_pow(std::uint64_t p, int e) {
  Residue r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > kMaxModulus / p) {
      throw PrecisionError(std::to_string(p) + "^" + std::to_string(e) +
                           " exceeds the supported modulus range");
    }
    r *= p;
  }
  return r;
}

int floor_log(std::uint64_t i, std::uint64_t q) {
  int e = 0;
  std::uint64_t power = 1;
  while (power <= i / q) {
    power *= q;
    ++e;
  }
  return e;
}

int valuation_of(std::uint64_t v, std::uint64_t p) {
  int nu = 0;
  while (v % p == 0) {
    v /= p;
    ++nu;
  }
  return nu;
}

Residue mul_mod(Residue a, Residue b, Residue modulus) {
  return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % modulus);
}

Residue inverse_mod(Residue unit, Residue modulus) {
  if (modulus == 1) return 0;
  __int128 old_r = static_cast<__int128>(unit % modulus), r = modulus;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) {
    throw InputError("value is not a unit");
  }
  old_s %= static_cast<__int128>(modulus);
  if (old_s < 0) old_s += modulus;
  return static_cast<Residue>(old_s);
}

std::string Valuation::to_string() const {
  return is_exact() ? std::to_string(value_) : ">=" + std::to_string(value_);
}

PadicInt PadicInt::make(std::uint64_t p, int precision, std::int64_t v) {
  require_prime(p);
  require_precision(precision);
  const Residue modulus = checked_pow(p, precision);
  const auto m = static_cast<__int128>(modulus);
  __int128 r = static_cast<__int128>(v) % m;
  if (r < 0) r += m;
  return PadicInt(p, precision, modulus, static_cast<Residue>(r));
}

PadicInt PadicInt::from_residue(std::uint64_t p, int precision, Residue v) {
  require_prime(p);
  require_precision(precision);
  const Residue modulus = checked_pow(p, precision);
  return PadicInt(p, precision, modulus, v % modulus);
}

PadicInt PadicInt::from_digits(std::uint64_t p, std::span<const Digit> digits) {
  require_prime(p);
  require_precision(static_cast<int>(digits.size()));
  const Residue modulus = checked_pow(p, static_cast<int>(digits.size()));
  Residue v = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it >= p) {
      throw InputError("digit " + std::to_string(*it) + " out of range for p = " +
                       std::to_string(p));
    }
    v = v * p + *it;
  }
  return PadicInt(p, static_cast<int>(digits.size()), modulus, v);
}

Digit PadicInt::digit(int i) const {
  if (i < 0 || i >= precision_) {
    throw InputError("digit index " + std::to_string(i) + " outside precision " +
                     std::to_string(precision_));
  }
  Residue v = value_;
  for (int j = 0; j < i; ++j) v /= p_;
  return static_cast<Digit>(v % p_);
}

std::vector<Digit> PadicInt::digits() const {
  std::vector<Digit> out(static_cast<std::size_t>(precision_));
  Residue v = value_;
  for (auto& d : out) {
    d = static_cast<Digit>(v % p_);
    v /= p_;
  }
  return out;
}

Valuation PadicInt::valuation() const {
  if (value_ == 0) return Valuation::at_least(precision_);
  return Valuation::exact(valuation_of(value_, p_));
}

PadicInt PadicInt::truncate(int precision) const {
  require_precision(precision);
  if (precision > precision_) {
    throw PrecisionError("cannot truncate " + std::to_string(precision_) + " digits to " +
                         std::to_string(precision));
  }
  const Residue modulus = checked_pow(p_, precision);
  return PadicInt(p_, precision, modulus, value_ % modulus);
}

PadicInt PadicInt::zero_extend(int precision) const {
  if (precision < precision_) return truncate(precision);
  return PadicInt(p_, precision, checked_pow(p_, precision), value_);
}

PadicInt PadicInt::operator-() const {
  return PadicInt(p_, precision_, modulus_, value_ == 0 ? 0 : modulus_ - value_);
}

PadicInt operator+(const PadicInt& a, const PadicInt& b) {
  require_same_prime(a, b);
  const PadicInt& lo = a.precision_ <= b.precision_ ? a : b;
  const Residue x = a.value_ % lo.modulus_;
  const Residue y = b.value_ % lo.modulus_;
  const Residue s = x >= lo.modulus_ - y ? x - (lo.modulus_ - y) : x + y;
  return PadicInt(a.p_, lo.precision_, lo.modulus_, s);
}

PadicInt operator-(const PadicInt& a, const PadicInt& b) { return a + (-b); }

PadicInt operator*(const PadicInt& a, const PadicInt& b) {
  require_same_prime(a, b);
  const PadicInt& lo = a.precision_ <= b.precision_ ? a : b;
  return PadicInt(a.p_, lo.precision_, lo.modulus_,
                  mul_mod(a.value_ % lo.modulus_, b.value_ % lo.modulus_, lo.modulus_));
}

std::string PadicInt::to_string() const {
  return std::to_string(value_) + " (mod " + std::to_string(p_) + "^" +
         std::to_string(precision_) + ")";
}

namespace detail {

BinomialStream::BinomialStream(std::uint64_t p, int precision, std::uint64_t x)
    : p_(p), precision_(precision), modulus_(checked_pow(p, precision)), x_(x) {}

Residue BinomialStream::current() const {
  if (vanished_ || exponent_ >= precision_) return 0;
  return mul_mod(unit_ % modulus_, checked_pow(p_, exponent_), modulus_);
}

void BinomialStream::advance() {
  if (!vanished_) {
    if (x_ == index_) {
      vanished_ = true;
    } else {
      std::uint64_t num = x_ - index_;
      std::uint64_t den = index_ + 1;
      int up = 0;
      while (num % p_ == 0) {
        num /= p_;
        ++up;
      }
      int down = 0;
      while (den % p_ == 0) {
        den /= p_;
        ++down;
      }
      exponent_ += up - down;
      unit_ = mul_mod(unit_, num % modulus_, modulus_);
      unit_ = mul_mod(unit_, inverse_mod(den % modulus_, modulus_), modulus_);
    }
  }
  ++index_;
}

}  // namespace detail

PadicInt binomial_eval(const PadicInt& x, std::uint64_t i, int precision) {
  require_precision(precision);
  const int needed = precision + (i == 0 ? 0 : floor_log(i, x.prime()));
  if (x.precision() < needed) {
    throw PrecisionError("C(x, " + std::to_string(i) + ") mod p^" + std::to_string(precision) +
                         " needs " + std::to_string(needed) + " digits of x, have " +
                         std::to_string(x.precision()));
  }
  if (i > x.value()) return PadicInt::from_residue(x.prime(), precision, 0);
  detail::BinomialStream stream(x.prime(), precision, x.value());
  while (stream.index() < i) stream.advance();
  return PadicInt::from_residue(x.prime(), precision, stream.current());
}

}  // namespace padyn
