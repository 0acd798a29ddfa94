#include "padyn/oracle.hpp"

#include "padyn/errors.hpp"

namespace padyn {

std::string to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::Transducer:
      return "transducer";
    case Provenance::MahlerSeries:
      return "mahler-series";
    case Provenance::BuiltIn:
      return "built-in";
  }
  return "unknown";
}

FunctionOracle::FunctionOracle(std::uint64_t p, int delay, Provenance provenance,
                               std::string name, PointFn point, TableFn table,
                               int max_output_precision)
    : p_(p),
      delay_(delay),
      provenance_(provenance),
      name_(std::move(name)),
      point_(std::move(point)),
      table_(std::move(table)),
      max_output_precision_(max_output_precision) {
  if (!is_prime(p_)) throw InputError("oracle prime " + std::to_string(p_) + " is not prime");
  if (delay_ < 0) throw InputError("delay must be nonnegative");
  if (!point_) throw InputError("oracle needs a point evaluator");
}

void FunctionOracle::require_output_precision(int m) const {
  if (m < 0) throw InputError("output precision must be nonnegative");
  if (m > max_output_precision_) {
    throw PrecisionError("oracle '" + name_ + "' answers at most " +
                         std::to_string(max_output_precision_) + " digits, asked for " +
                         std::to_string(m));
  }
}

PadicInt FunctionOracle::operator()(const PadicInt& x, int m) const {
  if (x.prime() != p_) throw InputError("input prime does not match oracle prime");
  if (m < 1) throw InputError("output precision must be at least 1");
  if (x.precision() < m + delay_) {
    throw PrecisionError("oracle '" + name_ + "' needs " + std::to_string(m + delay_) +
                         " input digits for " + std::to_string(m) + " output digits, have " +
                         std::to_string(x.precision()));
  }
  const Residue input = x.value() % checked_pow(p_, m + delay_);
  return PadicInt::from_residue(p_, m, at(input, m));
}

Residue FunctionOracle::at(Residue x, int m) const {
  require_output_precision(m);
  if (m == 0) return 0;
  return point_(x, m);
}

std::vector<Residue> FunctionOracle::table(std::uint64_t count, int m) const {
  require_output_precision(m);
  const Residue domain = checked_pow(p_, m + delay_);
  if (count > domain) {
    throw InputError("table of " + std::to_string(count) + " entries exceeds the domain p^" +
                     std::to_string(m + delay_));
  }
  if (m == 0) return std::vector<Residue>(count, 0);
  if (table_) return table_(count, m);
  std::vector<Residue> out(count);
  for (std::uint64_t x = 0; x < count; ++x) out[x] = point_(x, m);
  return out;
}

}  // namespace padyn
