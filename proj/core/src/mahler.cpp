#include "padyn/mahler.hpp"

#include <algorithm>

#include "padyn/errors.hpp"

namespace padyn {

MahlerSeries::MahlerSeries(std::uint64_t p, int delay, int precision,
                           std::vector<Residue> residues)
    : p_(p), delay_(delay), precision_(precision) {
  if (delay < 0) throw InputError("delay must be nonnegative");
  if (residues.empty()) throw InputError("a Mahler series needs at least one coefficient");
  coeffs_.reserve(residues.size());
  for (Residue r : residues) coeffs_.push_back(PadicInt::from_residue(p, precision, r));
}

MahlerSeries::MahlerSeries(std::uint64_t p, int delay, std::vector<PadicInt> coefficients)
    : p_(p), delay_(delay), precision_(0), coeffs_(std::move(coefficients)) {
  if (delay < 0) throw InputError("delay must be nonnegative");
  if (coeffs_.empty()) throw InputError("a Mahler series needs at least one coefficient");
  precision_ = coeffs_.front().precision();
  for (const auto& c : coeffs_) {
    if (c.prime() != p_) throw InputError("coefficient prime does not match series prime");
    if (c.precision() != precision_) throw InputError("coefficients must share one precision");
  }
}

PadicInt MahlerSeries::coeff(std::size_t i) const {
  if (i < coeffs_.size()) return coeffs_[i];
  return PadicInt::from_residue(p_, precision_, 0);
}

MahlerSeries coeffs_from_oracle(const FunctionOracle& f, std::size_t count, int precision) {
  if (count < 1) throw InputError("coefficient count must be at least 1");
  if (precision < 1) throw InputError("precision must be at least 1");
  const std::uint64_t p = f.prime();
  const Residue modulus = checked_pow(p, precision);
  const Residue domain = checked_pow(p, precision + f.delay());

  std::vector<Residue> diff = f.table(std::min<std::uint64_t>(count, domain), precision);
  for (std::uint64_t j = diff.size(); j < count; ++j) diff.push_back(f.at(j % domain, precision));

  // In-place forward differences: after pass i, diff[i] = (Delta^i f)(0).
  for (std::size_t i = 1; i < count; ++i) {
    for (std::size_t j = count - 1; j >= i; --j) {
      diff[j] = diff[j] >= diff[j - 1] ? diff[j] - diff[j - 1] : diff[j] + (modulus - diff[j - 1]);
    }
  }
  return MahlerSeries(p, f.delay(), precision, std::move(diff));
}

namespace {

int binomial_lipschitz_digits(const MahlerSeries& s) {
  return s.size() >= 2 ? floor_log(s.size() - 1, s.prime()) : 0;
}

Residue eval_exact(const MahlerSeries& s, std::uint64_t x, int m) {
  const Residue modulus = checked_pow(s.prime(), m);
  detail::BinomialStream binom(s.prime(), m, x);
  Residue acc = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > x) break;  // C(x, i) = 0 from here on
    acc = (acc + mul_mod(s.coeffs()[i].value() % modulus, binom.current(), modulus)) % modulus;
    binom.advance();
  }
  return acc;
}

}  // namespace

PadicInt eval(const MahlerSeries& s, const PadicInt& x, int m) {
  if (x.prime() != s.prime()) throw InputError("input prime does not match series prime");
  if (m < 1) throw InputError("output precision must be at least 1");
  if (m > s.precision()) {
    throw PrecisionError("series known to " + std::to_string(s.precision()) +
                         " digits cannot answer " + std::to_string(m));
  }
  const int needed = m + binomial_lipschitz_digits(s);
  if (x.precision() < needed) {
    throw PrecisionError("series evaluation needs " + std::to_string(needed) +
                         " digits of x, have " + std::to_string(x.precision()));
  }
  return PadicInt::from_residue(s.prime(), m, eval_exact(s, x.value(), m));
}

std::vector<Residue> eval_range(const MahlerSeries& s, std::uint64_t count, int m) {
  if (m > s.precision()) {
    throw PrecisionError("series known to " + std::to_string(s.precision()) +
                         " digits cannot answer " + std::to_string(m));
  }
  const Residue modulus = checked_pow(s.prime(), m);
  std::vector<Residue> diff;
  diff.reserve(s.size());
  for (const auto& c : s.coeffs()) diff.push_back(c.value() % modulus);

  std::vector<Residue> out(count);
  const std::size_t last = diff.size() - 1;
  for (std::uint64_t x = 0; x < count; ++x) {
    out[x] = diff[0];
    for (std::size_t i = 0; i < last; ++i) {
      const Residue sum = diff[i] + diff[i + 1];
      diff[i] = sum >= modulus ? sum - modulus : sum;
    }
  }
  return out;
}

FunctionOracle as_oracle(const MahlerSeries& s) {
  return FunctionOracle(
      s.prime(), s.delay(), Provenance::MahlerSeries, "mahler",
      [s](Residue x, int m) { return eval_exact(s, x, m); },
      [s](std::uint64_t count, int m) { return eval_range(s, count, m); }, s.precision());
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::InsufficientPrecision:
      return "insufficient-precision";
  }
  return "unknown";
}

std::string describe(const ConditionCheck& c) {
  const std::string a = "a_" + std::to_string(c.index);
  switch (c.kind) {
    case ConditionCheck::Kind::MinValuation:
      return "v(" + a + ") >= " + std::to_string(c.required_valuation);
    case ConditionCheck::Kind::NonzeroModP:
      return a + " != 0 mod p";
    case ConditionCheck::Kind::OneModP:
      return a + " == 1 mod p";
    case ConditionCheck::Kind::SumZeroModP:
      if (c.index_lo == c.index) return a + " == 0 mod p";
      return "a_" + std::to_string(c.index_lo) + " + ... + " + a + " == 0 mod p";
  }
  return a;
}

std::vector<ConditionCheck> ConditionReport::failing() const {
  std::vector<ConditionCheck> out;
  std::copy_if(checks.begin(), checks.end(), std::back_inserter(out),
               [](const ConditionCheck& c) { return c.status != Verdict::Pass; });
  return out;
}

namespace {

std::uint64_t delay_block(const MahlerSeries& s, const char* what) {
  if (s.delay() < 1) {
    throw InputError(std::string(what) + " conditions are stated for delay n >= 1");
  }
  return checked_pow(s.prime(), s.delay());
}

ConditionCheck valuation_check(const MahlerSeries& s, int condition, std::size_t i,
                               int required) {
  ConditionCheck c;
  c.condition = condition;
  c.kind = ConditionCheck::Kind::MinValuation;
  c.index = c.index_lo = i;
  c.required_valuation = required;
  const Valuation v = s.coeff(i).valuation();
  c.observed_valuation = v;
  if (required <= 0 || (v.is_exact() && v.value() >= required)) {
    c.status = Verdict::Pass;
  } else if (v.is_exact()) {
    c.status = Verdict::Fail;
  } else {
    // a_i == 0 mod p^K settles v >= K and nothing beyond.
    c.status = required <= v.value() ? Verdict::Pass : Verdict::InsufficientPrecision;
  }
  return c;
}

ConditionCheck residue_check(const MahlerSeries& s, int condition, ConditionCheck::Kind kind,
                             std::size_t lo, std::size_t hi) {
  ConditionCheck c;
  c.condition = condition;
  c.kind = kind;
  c.index_lo = lo;
  c.index = hi;
  Residue r = 0;
  for (std::size_t i = lo; i <= hi; ++i) r = (r + s.coeff(i).value() % s.prime()) % s.prime();
  c.observed_residue = r;
  bool ok = false;
  switch (kind) {
    case ConditionCheck::Kind::NonzeroModP:
      ok = r != 0;
      break;
    case ConditionCheck::Kind::OneModP:
      ok = r == 1;
      break;
    case ConditionCheck::Kind::SumZeroModP:
      ok = r == 0;
      break;
    case ConditionCheck::Kind::MinValuation:
      break;
  }
  c.status = ok ? Verdict::Pass : Verdict::Fail;
  return c;
}

void add_tail_checks(const MahlerSeries& s, std::uint64_t block, int condition,
                     ConditionReport& report) {
  for (std::size_t i = block + 1; i < s.size(); ++i) {
    report.checks.push_back(valuation_check(s, condition, i, floor_log(i, block)));
  }
}

void settle(ConditionReport& report) {
  bool insufficient = false;
  for (const auto& c : report.checks) {
    if (c.status == Verdict::Fail) {
      report.verdict = Verdict::Fail;
      return;
    }
    insufficient = insufficient || c.status == Verdict::InsufficientPrecision;
  }
  report.verdict = insufficient ? Verdict::InsufficientPrecision : Verdict::Pass;
}

}  // namespace

ConditionReport check_delay_conditions(const MahlerSeries& s) {
  const std::uint64_t block = delay_block(s, "delay");
  ConditionReport report{"delay", Verdict::Pass, {}};
  for (std::size_t i = 1; i < s.size(); ++i) {
    report.checks.push_back(valuation_check(s, 1, i, floor_log(i, block) - 1));
  }
  settle(report);
  return report;
}

ConditionReport check_measure_conditions(const MahlerSeries& s) {
  const std::uint64_t block = delay_block(s, "measure-preservation");
  ConditionReport report{"measure", Verdict::Pass, {}};
  report.checks.push_back(
      residue_check(s, 1, ConditionCheck::Kind::NonzeroModP, block, block));
  add_tail_checks(s, block, 2, report);
  settle(report);
  return report;
}

ConditionReport check_ergodicity_conditions(const MahlerSeries& s) {
  const std::uint64_t block = delay_block(s, "ergodicity");
  ConditionReport report{"ergodic", Verdict::Pass, {}};
  report.checks.push_back(
      residue_check(s, 1, ConditionCheck::Kind::SumZeroModP, 1, block - 1));
  report.checks.push_back(residue_check(s, 2, ConditionCheck::Kind::OneModP, block, block));
  add_tail_checks(s, block, 3, report);
  settle(report);
  return report;
}

}  // namespace padyn
