#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padyn/oracle.hpp"
#include "padyn/padic.hpp"

namespace padyn {

using Letter = Digit;
// Words are read and written least significant digit first, so a word prefix
// of length k is the residue mod p^k.
using Word = std::vector<Letter>;
using StateId = std::int64_t;

struct Transition {
  StateId next;
  Word output;
};

/// Deterministic letter-to-word transducer over F_p with a fixed initial state.
/// Synchronous transducers emit exactly one letter per step.
///
/// The state space may be infinite (a parametric family expanded on demand);
/// every query that walks states therefore takes an explicit depth.
class Transducer {
 public:
  virtual ~Transducer() = default;

  virtual std::uint64_t prime() const = 0;
  virtual bool synchronous() const = 0;
  virtual StateId initial_state() const = 0;
  virtual bool has_state(StateId state) const = 0;
  // Throws InputError for an unknown state or a letter outside F_p.
  virtual Transition step(StateId state, Letter letter) const = 0;
  virtual std::string name() const = 0;

  // Starting points of state enumeration at the given depth. A single
  // automaton returns {initial}; a parametric family returns the members
  // whose parameter fits in `depth` digits.
  virtual std::vector<StateId> family_roots(int depth) const;
  virtual std::string state_name(StateId state) const;
};

using TransducerPtr = std::shared_ptr<const Transducer>;

/// Finite transition table; state i's row for letter a sits at i * p + a.
class TableTransducer final : public Transducer {
 public:
  TableTransducer(std::uint64_t p, bool synchronous, std::vector<std::string> state_names,
                  StateId initial, std::vector<Transition> table, std::string name = "table");

  std::uint64_t prime() const override { return p_; }
  bool synchronous() const override { return synchronous_; }
  StateId initial_state() const override { return initial_; }
  bool has_state(StateId state) const override;
  Transition step(StateId state, Letter letter) const override;
  std::string name() const override { return name_; }
  std::string state_name(StateId state) const override;

  std::size_t state_count() const { return state_names_.size(); }
  const std::vector<std::string>& state_names() const { return state_names_; }

 private:
  std::uint64_t p_;
  bool synchronous_;
  std::vector<std::string> state_names_;
  StateId initial_;
  std::vector<Transition> table_;
  std::string name_;
};

Residue word_to_residue(std::span<const Letter> word, std::uint64_t p);
Word residue_to_word(Residue value, std::uint64_t p, int length);

// Mealy run of a synchronous transducer from `from` (default: initial state).
Word run_sync(const Transducer& t, std::span<const Letter> word,
              std::optional<StateId> from = std::nullopt);

// Concatenated per-step outputs of any transducer.
Word run_async(const Transducer& t, std::span<const Letter> word,
               std::optional<StateId> from = std::nullopt);

struct DelayProfile {
  std::optional<int> delay;  // set iff the delay is constant up to `depth`
  Word witness;              // offending input word when no constant delay exists
  std::string reason;
  int depth = 0;
};

/// Finds n such that every input word of length k <= depth yields exactly
/// max(k - n, 0) output letters.
DelayProfile delay_profile(const Transducer& t, int depth);

/// Oracle of the map realized from the initial state. The delay is probed to
/// `depth`; a transducer without constant delay is rejected.
FunctionOracle function_of(TransducerPtr t, int depth = 8);

/// Breadth-first closure of family_roots(depth) over all letters, up to
/// `depth` steps; order of first discovery.
std::vector<StateId> reachable_states(const Transducer& t, int depth,
                                      std::uint64_t budget = std::uint64_t{1} << 24);

// Single-letter output map of a synchronous state: entry a is the letter emitted on a.
std::vector<Letter> residual_map(const Transducer& t, StateId state);

struct TransitivityResult {
  bool pass = false;
  int length = 0;
  int depth = 0;
  std::size_t states_examined = 0;
  // First pair (u, v), ordered by residue of u then v, that no state realizes.
  std::optional<std::pair<Word, Word>> counterexample;
};

/// Checks that for all words u, v of length `length` some state reachable
/// within `depth` maps u to v. A pass only speaks for the states seen.
TransitivityResult family_transitivity(const Transducer& t, int length, int depth,
                                       std::uint64_t budget = std::uint64_t{1} << 24);

}  // namespace padyn
