#include "padyn/transducer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>
#include <utility>

#include "padyn/errors.hpp"

namespace padyn {

std::vector<StateId> Transducer::family_roots(int /*depth*/) const { return {initial_state()}; }

std::string Transducer::state_name(StateId state) const { return std::to_string(state); }

TableTransducer::TableTransducer(std::uint64_t p, bool synchronous,
                                 std::vector<std::string> state_names, StateId initial,
                                 std::vector<Transition> table, std::string name)
    : p_(p),
      synchronous_(synchronous),
      state_names_(std::move(state_names)),
      initial_(initial),
      table_(std::move(table)),
      name_(std::move(name)) {
  if (!is_prime(p_)) throw InputError("transducer prime " + std::to_string(p_) + " is not prime");
  const auto n_states = static_cast<StateId>(state_names_.size());
  if (n_states == 0) throw InputError("transducer has no states");
  if (initial_ < 0 || initial_ >= n_states) throw InputError("initial state out of range");
  if (table_.size() != state_names_.size() * p_) {
    throw InputError("transition table must have one row per (state, letter)");
  }
  for (std::size_t i = 0; i < table_.size(); ++i) {
    const auto& tr = table_[i];
    const std::string where =
        "(" + state_names_[i / p_] + ", " + std::to_string(i % p_) + ")";
    if (tr.next < 0 || tr.next >= n_states) throw InputError("bad next state at " + where);
    if (synchronous_ && tr.output.size() != 1) {
      throw InputError("synchronous transducer must emit one letter at " + where);
    }
    for (Letter a : tr.output) {
      if (a >= p_) throw InputError("output letter out of range at " + where);
    }
  }
  // Every state must be accessible from the initial state.
  std::vector<bool> seen(state_names_.size(), false);
  std::deque<StateId> queue{initial_};
  seen[static_cast<std::size_t>(initial_)] = true;
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (std::uint64_t a = 0; a < p_; ++a) {
      const StateId next = table_[static_cast<std::size_t>(s) * p_ + a].next;
      if (!seen[static_cast<std::size_t>(next)]) {
        seen[static_cast<std::size_t>(next)] = true;
        queue.push_back(next);
      }
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw InputError("state '" + state_names_[i] + "' is not accessible");
  }
}

bool TableTransducer::has_state(StateId state) const {
  return state >= 0 && static_cast<std::size_t>(state) < state_names_.size();
}

Transition TableTransducer::step(StateId state, Letter letter) const {
  if (!has_state(state)) throw InputError("unknown state " + std::to_string(state));
  if (letter >= p_) throw InputError("letter " + std::to_string(letter) + " outside F_p");
  return table_[static_cast<std::size_t>(state) * p_ + letter];
}

std::string TableTransducer::state_name(StateId state) const {
  if (!has_state(state)) throw InputError("unknown state " + std::to_string(state));
  return state_names_[static_cast<std::size_t>(state)];
}

Residue word_to_residue(std::span<const Letter> word, std::uint64_t p) {
  checked_pow(p, static_cast<int>(word.size()));  // throws if the word overflows a residue
  Residue v = 0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = v * p + *it;
  return v;
}

Word residue_to_word(Residue value, std::uint64_t p, int length) {
  Word w(static_cast<std::size_t>(length));
  for (auto& letter : w) {
    letter = static_cast<Letter>(value % p);
    value /= p;
  }
  return w;
}

namespace {

StateId start_state(const Transducer& t, std::optional<StateId> from) {
  const StateId s = from.value_or(t.initial_state());
  if (!t.has_state(s)) throw InputError("unknown state " + std::to_string(s));
  return s;
}

}  // namespace

Word run_sync(const Transducer& t, std::span<const Letter> word, std::optional<StateId> from) {
  if (!t.synchronous()) throw InputError("run_sync needs a synchronous transducer");
  StateId s = start_state(t, from);
  Word out;
  out.reserve(word.size());
  for (Letter a : word) {
    auto tr = t.step(s, a);
    out.push_back(tr.output.front());
    s = tr.next;
  }
  return out;
}

Word run_async(const Transducer& t, std::span<const Letter> word, std::optional<StateId> from) {
  StateId s = start_state(t, from);
  Word out;
  for (Letter a : word) {
    auto tr = t.step(s, a);
    out.insert(out.end(), tr.output.begin(), tr.output.end());
    s = tr.next;
  }
  return out;
}

DelayProfile delay_profile(const Transducer& t, int depth) {
  if (depth < 1) throw InputError("delay profile depth must be at least 1");
  DelayProfile profile;
  profile.depth = depth;

  // One representative input word per (state, output length) frontier node.
  struct Node {
    StateId state;
    std::size_t out_len;
    Word word;
  };
  std::vector<Node> frontier{{t.initial_state(), 0, {}}};
  std::optional<int> delay;
  const auto p = t.prime();

  for (int k = 1; k <= depth; ++k) {
    std::map<std::pair<StateId, std::size_t>, Word> next;
    for (const auto& node : frontier) {
      for (std::uint64_t a = 0; a < p; ++a) {
        auto tr = t.step(node.state, static_cast<Letter>(a));
        Word w = node.word;
        w.push_back(static_cast<Letter>(a));
        next.try_emplace({tr.next, node.out_len + tr.output.size()}, std::move(w));
      }
    }
    // The first word (in enumeration order) fixes the expectation at this depth.
    std::size_t len = next.begin()->first.second;
    if (!delay && len > 0) {
      if (len > 1) {
        profile.witness = next.begin()->second;
        profile.reason = "first output is " + std::to_string(len) + " letters long";
        return profile;
      }
      delay = k - 1;
    }
    const std::size_t expected = delay ? static_cast<std::size_t>(std::max(k - *delay, 0)) : 0;
    for (const auto& [key, word] : next) {
      if (key.second != expected) {
        profile.witness = word;
        profile.reason = "input of length " + std::to_string(k) + " produced " +
                         std::to_string(key.second) + " letters, expected " +
                         std::to_string(expected);
        return profile;
      }
    }
    frontier.clear();
    for (auto& [key, word] : next) frontier.push_back({key.first, key.second, std::move(word)});
  }
  if (!delay) {
    profile.reason = "no output within depth " + std::to_string(depth);
    return profile;
  }
  profile.delay = delay;
  return profile;
}

FunctionOracle function_of(TransducerPtr t, int depth) {
  if (!t) throw InputError("null transducer");
  const auto profile = delay_profile(*t, depth);
  if (!profile.delay) {
    throw InputError("transducer '" + t->name() + "' has no constant delay: " + profile.reason);
  }
  const int n = *profile.delay;
  const std::uint64_t p = t->prime();

  auto point = [t, n, p](Residue x, int m) -> Residue {
    const Word in = residue_to_word(x, p, m + n);
    const Word out = run_async(*t, in);
    if (out.size() < static_cast<std::size_t>(m)) {
      throw PrecisionError("transducer produced fewer letters than its delay promises");
    }
    return word_to_residue(std::span<const Letter>(out).first(static_cast<std::size_t>(m)), p);
  };

  auto table = [t, n, p](std::uint64_t count, int m) {
    const int length = m + n;
    std::vector<Residue> out(checked_pow(p, length));
    std::vector<Residue> place(static_cast<std::size_t>(length) + 1, 1);
    for (int i = 1; i <= length; ++i) place[static_cast<std::size_t>(i)] = place[i - 1] * p;
    // Depth-first over input words so shared prefixes are run once.
    auto walk = [&](auto&& self, StateId s, int k, Residue in, Residue acc, int out_len) -> void {
      if (k == length) {
        out[in] = acc;
        return;
      }
      for (std::uint64_t a = 0; a < p; ++a) {
        auto tr = t->step(s, static_cast<Letter>(a));
        Residue next_acc = acc;
        int next_len = out_len;
        for (Letter b : tr.output) {
          if (next_len < m) next_acc += b * place[static_cast<std::size_t>(next_len)];
          ++next_len;
        }
        self(self, tr.next, k + 1, in + a * place[static_cast<std::size_t>(k)], next_acc,
             next_len);
      }
    };
    walk(walk, t->initial_state(), 0, 0, 0, 0);
    out.resize(count);
    return out;
  };

  return FunctionOracle(p, n, Provenance::Transducer, t->name(), point, table);
}

std::vector<StateId> reachable_states(const Transducer& t, int depth, std::uint64_t budget) {
  if (depth < 0) throw InputError("depth must be nonnegative");
  std::vector<StateId> order;
  std::unordered_set<StateId> seen;
  std::vector<StateId> layer;
  for (StateId s : t.family_roots(depth)) {
    if (seen.insert(s).second) {
      order.push_back(s);
      layer.push_back(s);
    }
  }
  if (order.size() > budget) {
    throw BudgetError("state enumeration exceeded budget of " + std::to_string(budget));
  }
  for (int d = 0; d < depth && !layer.empty(); ++d) {
    std::vector<StateId> next_layer;
    for (StateId s : layer) {
      for (std::uint64_t a = 0; a < t.prime(); ++a) {
        const StateId next = t.step(s, static_cast<Letter>(a)).next;
        if (seen.insert(next).second) {
          order.push_back(next);
          next_layer.push_back(next);
          if (order.size() > budget) {
            throw BudgetError("state enumeration exceeded budget of " + std::to_string(budget));
          }
        }
      }
    }
    layer = std::move(next_layer);
  }
  return order;
}

std::vector<Letter> residual_map(const Transducer& t, StateId state) {
  if (!t.synchronous()) throw InputError("residual maps are defined for synchronous transducers");
  if (!t.has_state(state)) throw InputError("unknown state " + std::to_string(state));
  std::vector<Letter> map(t.prime());
  for (std::uint64_t a = 0; a < t.prime(); ++a) {
    map[a] = t.step(state, static_cast<Letter>(a)).output.front();
  }
  return map;
}

TransitivityResult family_transitivity(const Transducer& t, int length, int depth,
                                       std::uint64_t budget) {
  if (!t.synchronous()) throw InputError("family transitivity needs a synchronous transducer");
  if (length < 1) throw InputError("word length must be at least 1");
  const std::uint64_t p = t.prime();
  const Residue words = checked_pow(p, length);
  if (words > budget) throw BudgetError("p^length exceeds budget");

  TransitivityResult result;
  result.length = length;
  result.depth = depth;
  const auto states = reachable_states(t, depth, budget);
  result.states_examined = states.size();

  std::vector<bool> hit(words);
  for (Residue u = 0; u < words; ++u) {
    std::fill(hit.begin(), hit.end(), false);
    const Word in = residue_to_word(u, p, length);
    Residue distinct = 0;
    for (StateId s : states) {
      const Residue v = word_to_residue(run_sync(t, in, s), p);
      if (!hit[v]) {
        hit[v] = true;
        if (++distinct == words) break;
      }
    }
    if (distinct < words) {
      const auto missing = static_cast<Residue>(std::find(hit.begin(), hit.end(), false) - hit.begin());
      result.counterexample = std::pair{in, residue_to_word(missing, p, length)};
      return result;
    }
  }
  result.pass = true;
  return result;
}

}  // namespace padyn
