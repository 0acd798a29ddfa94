#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padyn/builtins.hpp"
#include "padyn/errors.hpp"
#include "padyn/transducer.hpp"

using namespace padyn;

namespace {

// Random synchronous table with every state reachable from state 0 through
// letter 0 along the chain 0 -> 1 -> ... -> s-1.
std::shared_ptr<TableTransducer> random_sync(std::uint64_t p, int states, std::mt19937_64& rng) {
  std::vector<std::string> names;
  std::vector<Transition> table;
  for (int s = 0; s < states; ++s) {
    names.push_back("q" + std::to_string(s));
    for (std::uint64_t a = 0; a < p; ++a) {
      StateId next = static_cast<StateId>(rng() % states);
      if (a == 0 && s + 1 < states) next = s + 1;
      table.push_back({next, {static_cast<Letter>(rng() % p)}});
    }
  }
  return std::make_shared<TableTransducer>(p, true, names, 0, table, "random");
}

Residue digitwise_sum(Residue x, Residue m, std::uint64_t p, int digits) {
  Residue out = 0, place = 1;
  for (int i = 0; i < digits; ++i) {
    out += ((x % p + m % p) % p) * place;
    x /= p;
    m /= p;
    place *= p;
  }
  return out;
}

}  // namespace

TEST_CASE("words and residues") {
  CHECK(word_to_residue(Word{1, 0, 1}, 2) == 5);
  CHECK(residue_to_word(5, 2, 4) == Word{1, 0, 1, 0});
  CHECK(residue_to_word(7, 3, 2) == Word{1, 2});
  CHECK(word_to_residue(Word{}, 3) == 0);
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(TableTransducer(2, true, {"a"}, 0, {{0, {0}}}), InputError);
  CHECK_THROWS_AS(TableTransducer(2, true, {"a"}, 0, {{0, {0}}, {0, {0, 1}}}), InputError);
  CHECK_THROWS_AS(TableTransducer(2, true, {"a"}, 0, {{0, {0}}, {1, {0}}}), InputError);
  CHECK_THROWS_AS(TableTransducer(2, true, {"a"}, 0, {{0, {0}}, {0, {2}}}), InputError);
  // State b is never entered.
  CHECK_THROWS_AS(TableTransducer(2, true, {"a", "b"}, 0, {{0, {0}}, {0, {1}}, {1, {0}}, {1, {1}}}),
                  InputError);
  CHECK_THROWS_AS(TableTransducer(4, true, {"a"}, 0, {{0, {0}}, {0, {0}}, {0, {0}}, {0, {0}}}),
                  InputError);
}

TEST_CASE("run examples") {
  const auto odo = builtins::odometer(2);
  CHECK(odo->state_name(odo->initial_state()) == "carry");
  CHECK(run_sync(*odo, Word{1, 1, 0}) == Word{0, 0, 1});
  CHECK(run_sync(*odo, Word{1, 1, 1}) == Word{0, 0, 0});
  CHECK(run_sync(*odo, Word{0, 1}, 0) == Word{0, 1});

  const auto echo = builtins::echo(2, 1);
  CHECK_THROWS_AS(run_sync(*echo, Word{0, 1}), InputError);
  CHECK(run_async(*echo, Word{0, 1, 1}) == Word{1, 1});
  CHECK(run_async(*echo, Word{1}).empty());

  CHECK(run_sync(*builtins::complement(3), Word{0, 1, 2}) == Word{2, 1, 0});
  CHECK(run_sync(*builtins::constant(3, 2), Word{0, 1, 2}) == Word{2, 2, 2});
  CHECK_THROWS_AS(run_sync(*odo, Word{2}), InputError);
}

TEST_CASE("delay profiles") {
  CHECK(delay_profile(*builtins::identity(2), 6).delay == 0);
  CHECK(delay_profile(*builtins::odometer(3), 6).delay == 0);
  CHECK(delay_profile(*builtins::echo(2, 1), 6).delay == 1);
  CHECK(delay_profile(*builtins::echo(3, 3), 6).delay == 3);

  // Emits two letters on its first step.
  const TableTransducer burst(2, false, {"a"}, 0, {{0, {0, 0}}, {0, {1, 1}}});
  const auto profile = delay_profile(burst, 4);
  CHECK_FALSE(profile.delay);
  CHECK(profile.witness.size() == 1);

  // Silent on letter 1 only: output lengths disagree at k = 1.
  const TableTransducer ragged(2, false, {"a"}, 0, {{0, {0}}, {0, {}}});
  const auto ragged_profile = delay_profile(ragged, 4);
  CHECK_FALSE(ragged_profile.delay);
  CHECK(ragged_profile.witness.size() == 1);

  // Delay deeper than the probe.
  const auto deep = delay_profile(*builtins::echo(2, 5), 3);
  CHECK_FALSE(deep.delay);
  CHECK(deep.witness.empty());
  CHECK_THROWS_AS(function_of(builtins::echo(2, 5), 3), InputError);
}

TEST_CASE("function_of examples") {
  const auto shift = function_of(builtins::echo(2, 1));
  CHECK(shift.delay() == 1);
  CHECK(shift.at(6, 2) == 3);
  const auto odo = function_of(builtins::odometer(2));
  CHECK(odo.at(3, 3) == 4);
  CHECK(odo.at(7, 3) == 0);
  CHECK_THROWS_AS(odo(PadicInt::make(2, 2, 3), 3), PrecisionError);
}

TEST_CASE("function_of matches closed forms") {
  for (std::uint64_t p : {2, 3, 5}) {
    const auto odo = function_of(builtins::odometer(p));
    const auto comp = function_of(builtins::complement(p));
    const auto sh = function_of(builtins::echo(p, 2));
    for (int m = 1; m <= 4; ++m) {
      const Residue mod = checked_pow(p, m);
      for (Residue x = 0; x < mod; ++x) {
        CHECK(odo.at(x, m) == (x + 1) % mod);
        CHECK(comp.at(x, m) == mod - 1 - x);
      }
      for (Residue x = 0; x < mod * p * p; ++x) CHECK(sh.at(x, m) == x / (p * p));
    }
  }
}

TEST_CASE("table fast path agrees with pointwise runs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t p = trial % 2 ? 3 : 2;
    TransducerPtr t = random_sync(p, 1 + static_cast<int>(rng() % 6), rng);
    const auto f = function_of(t);
    for (int m = 0; m <= 4; ++m) {
      const auto table = f.table(checked_pow(p, m), m);
      for (Residue x = 0; x < table.size(); ++x) REQUIRE(table[x] == f.at(x, m));
    }
  }
  const auto echo = function_of(builtins::echo(3, 2));
  const auto table = echo.table(81, 2);
  for (Residue x = 0; x < 81; ++x) CHECK(table[x] == x / 9);
}

TEST_CASE("prefix consistency and delay bound") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t p = 2 + (trial % 2);
    const auto t = random_sync(p, 1 + static_cast<int>(rng() % 5), rng);
    Word u(12);
    for (auto& a : u) a = static_cast<Letter>(rng() % p);
    const Word full = run_sync(*t, u);
    REQUIRE(full.size() == u.size());
    for (std::size_t k = 0; k <= u.size(); ++k) {
      const Word prefix = run_sync(*t, std::span<const Letter>(u).first(k));
      CHECK(std::equal(prefix.begin(), prefix.end(), full.begin()));
    }
  }
  for (int n = 0; n <= 3; ++n) {
    const auto t = builtins::echo(2, n);
    for (int k = 0; k <= 8; ++k) {
      CHECK(run_async(*t, Word(static_cast<std::size_t>(k), 1)).size() ==
            static_cast<std::size_t>(std::max(k - n, 0)));
    }
  }
}

TEST_CASE("outputs mod p^m depend only on inputs mod p^(m+n)") {
  std::mt19937_64 rng(90);
  for (int n = 0; n <= 2; ++n) {
    const auto t = builtins::echo(3, n);
    for (int trial = 0; trial < 200; ++trial) {
      const int m = 1 + static_cast<int>(rng() % 4);
      Word u(10), v(10);
      for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = static_cast<Letter>(rng() % 3);
        v[i] = i < static_cast<std::size_t>(m + n) ? u[i] : static_cast<Letter>(rng() % 3);
      }
      const Word a = run_async(*t, u), b = run_async(*t, v);
      CHECK(std::equal(a.begin(), a.begin() + m, b.begin()));
    }
  }
}

TEST_CASE("reachable states") {
  const auto odo = builtins::odometer(2);
  auto states = reachable_states(*odo, 3);
  CHECK(states == std::vector<StateId>{1, 0});
  CHECK(reachable_states(*builtins::identity(2), 4) == std::vector<StateId>{0});
  CHECK(reachable_states(*builtins::digitwise_add(2), 2) == std::vector<StateId>{0, 1, 2, 3});
  CHECK(reachable_states(*builtins::echo(2, 3), 1) == std::vector<StateId>{0, 1});
  CHECK_THROWS_AS(reachable_states(*builtins::digitwise_add(2), 4, 3), BudgetError);
  CHECK(reachable_states(*builtins::digitwise_add(3), 0) == std::vector<StateId>{0});
}

TEST_CASE("residual maps") {
  const auto odo = builtins::odometer(3);
  CHECK(residual_map(*odo, 1) == std::vector<Letter>{1, 2, 0});
  CHECK(residual_map(*odo, 0) == std::vector<Letter>{0, 1, 2});
  CHECK(residual_map(*builtins::digitwise_add(3), 5) == std::vector<Letter>{2, 0, 1});
  CHECK_THROWS_AS(residual_map(*builtins::echo(2, 1), 0), InputError);
}

TEST_CASE("digitwise-add realizes carry-free addition") {
  const auto t = builtins::digitwise_add(3);
  for (Residue m = 0; m < 27; ++m) {
    for (Residue x = 0; x < 27; ++x) {
      const Word out = run_sync(*t, residue_to_word(x, 3, 3), static_cast<StateId>(m));
      CHECK(word_to_residue(out, 3) == digitwise_sum(x, m, 3, 3));
    }
  }
}

TEST_CASE("family transitivity") {
  const auto add = family_transitivity(*builtins::digitwise_add(2), 3, 3);
  CHECK(add.pass);
  CHECK(add.states_examined == 8);

  const auto add3 = family_transitivity(*builtins::digitwise_add(3), 2, 2);
  CHECK(add3.pass);

  const auto odo = family_transitivity(*builtins::odometer(2), 2, 4);
  CHECK_FALSE(odo.pass);
  REQUIRE(odo.counterexample);
  CHECK(odo.counterexample->first == Word{0, 0});
  CHECK(odo.counterexample->second == Word{0, 1});

  // Too shallow: addends below p^1 cannot reach a second-digit change.
  const auto shallow = family_transitivity(*builtins::digitwise_add(2), 2, 1);
  CHECK_FALSE(shallow.pass);
  CHECK(shallow.counterexample->second == Word{0, 1});

  CHECK_THROWS_AS(family_transitivity(*builtins::echo(2, 1), 1, 1), InputError);
  CHECK_THROWS_AS(family_transitivity(*builtins::identity(2), 20, 1, 1000), BudgetError);
}
