#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "padyn/padic.hpp"

namespace padyn {

enum class Provenance { Transducer, MahlerSeries, BuiltIn };

std::string to_string(Provenance provenance);

/// A map f: Z_p -> Z_p with delay n, answering "f(x) mod p^m" from "x mod p^(m+n)".
///
/// Backends supply a pointwise evaluator and, optionally, a bulk tabulator
/// that fills f(x) mod p^m for x = 0, 1, ..., count-1 faster than pointwise
/// calls. Inputs to the raw evaluators are canonical representatives in
/// [0, p^(m+n)).
class FunctionOracle {
 public:
  using PointFn = std::function<Residue(Residue x, int m)>;
  using TableFn = std::function<std::vector<Residue>(std::uint64_t count, int m)>;

  static constexpr int kUnbounded = std::numeric_limits<int>::max();

  FunctionOracle(std::uint64_t p, int delay, Provenance provenance, std::string name,
                 PointFn point, TableFn table = {}, int max_output_precision = kUnbounded);

  std::uint64_t prime() const { return p_; }
  int delay() const { return delay_; }
  Provenance provenance() const { return provenance_; }
  const std::string& name() const { return name_; }
  // Largest m for which answers are available.
  int max_output_precision() const { return max_output_precision_; }

  // f(x) mod p^m; x must carry at least m + delay digits.
  PadicInt operator()(const PadicInt& x, int m) const;

  // f(x) mod p^m for a canonical representative x < p^(m+n).
  Residue at(Residue x, int m) const;

  // f(x) mod p^m for x = 0 .. count-1, count <= p^(m+n).
  std::vector<Residue> table(std::uint64_t count, int m) const;

 private:
  void require_output_precision(int m) const;

  std::uint64_t p_;
  int delay_;
  Provenance provenance_;
  std::string name_;
  PointFn point_;
  TableFn table_;
  int max_output_precision_;
};

}  // namespace padyn
