#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padyn/oracle.hpp"
#include "padyn/padic.hpp"

namespace padyn {

/// f(x) = sum_i a_i C(x, i) with finitely many nonzero a_i, all known mod p^K.
/// Coefficients past size() are zero.
class MahlerSeries {
 public:
  MahlerSeries(std::uint64_t p, int delay, int precision, std::vector<Residue> residues);
  MahlerSeries(std::uint64_t p, int delay, std::vector<PadicInt> coefficients);

  std::uint64_t prime() const { return p_; }
  int delay() const { return delay_; }
  int precision() const { return precision_; }
  std::size_t size() const { return coeffs_.size(); }

  // a_i, zero past the support.
  PadicInt coeff(std::size_t i) const;
  const std::vector<PadicInt>& coeffs() const { return coeffs_; }

  friend bool operator==(const MahlerSeries&, const MahlerSeries&) = default;

 private:
  std::uint64_t p_;
  int delay_;
  int precision_;
  std::vector<PadicInt> coeffs_;
};

/// a_i = sum_{j<=i} (-1)^(i-j) C(i, j) f(j) mod p^K for i < count.
MahlerSeries coeffs_from_oracle(const FunctionOracle& f, std::size_t count, int precision);

/// f(x) mod p^m. x must carry m + floor(log_p(size-1)) digits and m <= precision.
PadicInt eval(const MahlerSeries& s, const PadicInt& x, int m);

/// f(x) mod p^m for x = 0 .. count-1 by running the forward-difference
/// recurrence upward from the coefficients.
std::vector<Residue> eval_range(const MahlerSeries& s, std::uint64_t count, int m);

/// The series as an n-delay oracle: inputs are evaluated at their canonical
/// representative, answers are available up to the coefficient precision.
FunctionOracle as_oracle(const MahlerSeries& s);

enum class Verdict { Pass, Fail, InsufficientPrecision };

std::string to_string(Verdict verdict);

/// One inequality or congruence instance inside a coefficient criterion.
struct ConditionCheck {
  enum class Kind {
    MinValuation,    // v(a_i) >= required_valuation
    NonzeroModP,     // a_i != 0 mod p
    OneModP,         // a_i == 1 mod p
    SumZeroModP,     // a_lo + ... + a_hi == 0 mod p
  };

  int condition = 0;  // 1-based position in the criterion
  Kind kind = Kind::MinValuation;
  std::size_t index = 0;     // coefficient index (upper end for sums)
  std::size_t index_lo = 0;  // lower end for sums, equal to index otherwise
  int required_valuation = 0;
  std::optional<Valuation> observed_valuation;
  std::optional<Residue> observed_residue;  // value mod p for the mod-p kinds
  Verdict status = Verdict::Pass;
};

std::string describe(const ConditionCheck& check);

struct ConditionReport {
  std::string criterion;  // "delay", "measure" or "ergodic"
  Verdict verdict = Verdict::Pass;
  std::vector<ConditionCheck> checks;

  std::vector<ConditionCheck> failing() const;
};

/// Valuation bound for an n-unit delay map: v(a_i) >= floor(log_{p^n} i) - 1, i >= 1.
ConditionReport check_delay_conditions(const MahlerSeries& s);

/// Sufficient coefficient conditions for measure preservation:
/// a_{p^n} != 0 mod p, and a_i == 0 mod p^{floor(log_{p^n} i)} for i > p^n.
ConditionReport check_measure_conditions(const MahlerSeries& s);

/// Sufficient coefficient conditions for ergodicity:
/// a_1 + ... + a_{p^n - 1} == 0 mod p, a_{p^n} == 1 mod p, and the tail
/// divisibility of check_measure_conditions. Nothing is required of a_0.
ConditionReport check_ergodicity_conditions(const MahlerSeries& s);

}  // namespace padyn
