#include "padyn/builtins.hpp"

#include <string>

#include "padyn/errors.hpp"

namespace padyn::builtins {

namespace {

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
}

class DigitwiseAdd final : public Transducer {
 public:
  explicit DigitwiseAdd(std::uint64_t p) : p_(p) {}

  std::uint64_t prime() const override { return p_; }
  bool synchronous() const override { return true; }
  StateId initial_state() const override { return 0; }
  bool has_state(StateId state) const override { return state >= 0; }

  Transition step(StateId state, Letter letter) const override {
    if (!has_state(state)) throw InputError("unknown state " + std::to_string(state));
    if (letter >= p_) throw InputError("letter " + std::to_string(letter) + " outside F_p");
    const auto m = static_cast<std::uint64_t>(state);
    return {static_cast<StateId>(m / p_), {static_cast<Letter>((letter + m % p_) % p_)}};
  }

  std::string name() const override { return "digitwise-add"; }

  std::vector<StateId> family_roots(int depth) const override {
    const Residue count = checked_pow(p_, depth);
    std::vector<StateId> roots(count);
    for (Residue m = 0; m < count; ++m) roots[m] = static_cast<StateId>(m);
    return roots;
  }

  std::string state_name(StateId state) const override { return "+" + std::to_string(state); }

 private:
  std::uint64_t p_;
};

}  // namespace

TransducerPtr identity(std::uint64_t p) {
  require_prime(p);
  std::vector<Transition> table;
  for (std::uint64_t a = 0; a < p; ++a) table.push_back({0, {static_cast<Letter>(a)}});
  return std::make_shared<TableTransducer>(p, true, std::vector<std::string>{"s0"}, 0,
                                           std::move(table), "identity");
}

TransducerPtr odometer(std::uint64_t p) {
  require_prime(p);
  // State 0 = no-carry, state 1 = carry.
  std::vector<Transition> table;
  for (std::uint64_t a = 0; a < p; ++a) table.push_back({0, {static_cast<Letter>(a)}});
  for (std::uint64_t a = 0; a < p; ++a) {
    if (a + 1 == p) {
      table.push_back({1, {0}});
    } else {
      table.push_back({0, {static_cast<Letter>(a + 1)}});
    }
  }
  return std::make_shared<TableTransducer>(p, true, std::vector<std::string>{"no-carry", "carry"},
                                           1, std::move(table), "odometer");
}

TransducerPtr complement(std::uint64_t p) {
  require_prime(p);
  std::vector<Transition> table;
  for (std::uint64_t a = 0; a < p; ++a) table.push_back({0, {static_cast<Letter>(p - 1 - a)}});
  return std::make_shared<TableTransducer>(p, true, std::vector<std::string>{"s0"}, 0,
                                           std::move(table), "complement");
}

TransducerPtr constant(std::uint64_t p, Letter letter) {
  require_prime(p);
  if (letter >= p) throw InputError("constant letter outside F_p");
  std::vector<Transition> table(p, Transition{0, {letter}});
  return std::make_shared<TableTransducer>(p, true, std::vector<std::string>{"s0"}, 0,
                                           std::move(table),
                                           "constant-" + std::to_string(letter));
}

TransducerPtr echo(std::uint64_t p, int n) {
  require_prime(p);
  if (n < 0) throw InputError("echo delay must be nonnegative");
  std::vector<std::string> names;
  std::vector<Transition> table;
  for (int s = 0; s <= n; ++s) {
    names.push_back(s < n ? "wait" + std::to_string(s) : "echo");
    for (std::uint64_t a = 0; a < p; ++a) {
      if (s < n) {
        table.push_back({s + 1, {}});
      } else {
        table.push_back({n, {static_cast<Letter>(a)}});
      }
    }
  }
  return std::make_shared<TableTransducer>(p, n == 0, std::move(names), 0, std::move(table),
                                           "echo-" + std::to_string(n));
}

TransducerPtr digitwise_add(std::uint64_t p) {
  require_prime(p);
  return std::make_shared<DigitwiseAdd>(p);
}

FunctionOracle shift(std::uint64_t p, int n) {
  require_prime(p);
  if (n < 0) throw InputError("shift delay must be nonnegative");
  const Residue divisor = checked_pow(p, n);
  return FunctionOracle(
      p, n, Provenance::BuiltIn, "shift-" + std::to_string(n),
      [p, divisor](Residue x, int m) { return (x / divisor) % checked_pow(p, m); },
      [p, divisor](std::uint64_t count, int m) {
        const Residue modulus = checked_pow(p, m);
        std::vector<Residue> out(count);
        for (std::uint64_t x = 0; x < count; ++x) out[x] = (x / divisor) % modulus;
        return out;
      });
}

FunctionOracle zero(std::uint64_t p, int n) {
  require_prime(p);
  if (n < 0) throw InputError("delay must be nonnegative");
  return FunctionOracle(
      p, n, Provenance::BuiltIn, "zero-" + std::to_string(n), [](Residue, int) { return Residue{0}; },
      [](std::uint64_t count, int) { return std::vector<Residue>(count, 0); });
}

FunctionOracle polynomial(std::uint64_t p, std::vector<std::int64_t> coefficients) {
  require_prime(p);
  if (coefficients.empty()) coefficients.push_back(0);
  std::string name = "poly";
  for (auto c : coefficients) name += (name == "poly" ? ":" : ",") + std::to_string(c);
  return FunctionOracle(p, 0, Provenance::BuiltIn, name,
                        [p, coefficients](Residue x, int m) {
                          const Residue modulus = checked_pow(p, m);
                          Residue acc = 0;
                          for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
                            acc = mul_mod(acc, x % modulus, modulus);
                            acc = (acc + PadicInt::make(p, m, *it).value()) % modulus;
                          }
                          return acc;
                        });
}

}  // namespace padyn::builtins
