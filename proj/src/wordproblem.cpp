#include "autgrp/wordproblem.hpp"

#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "autgrp/errors.hpp"

namespace autgrp {

namespace {

using Tuple = std::vector<std::uint32_t>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t c : t) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

Tuple encode(std::span<const Generator> w) {
  Tuple t;
  t.reserve(w.size());
  for (const Generator g : w) t.push_back(g.code());
  return t;
}

// Feeds letter x through every coordinate of `from`; writes the successor
// tuple and returns the output letter.
Letter run(const MealyAutomaton& automaton, const Tuple& from, Letter x, Tuple& to) {
  to.resize(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto [next, y] = automaton.step(Generator::from_code(from[i]), x);
    to[i] = next.code();
    x = y;
  }
  return x;
}

void require_valid(const MealyAutomaton& automaton) {
  if (!automaton.valid()) {
    throw Error(ErrorKind::not_invertible, "word problem requires an invertible automaton");
  }
}

enum class Stop { at_witness, never };

struct Exploration {
  bool identity = true;
  std::size_t explored = 0;
  std::size_t witness_depth = 0;
};

// Breadth-first walk over composed states. max_depth bounds the input length
// examined (0 = unbounded); max_states bounds the visited set (0 = unbounded).
Exploration explore(const MealyAutomaton& automaton, std::span<const Generator> w,
                    std::size_t max_depth, std::size_t max_states, Stop stop) {
  require_valid(automaton);
  Exploration result;
  const std::size_t q = automaton.alphabet_size();

  std::unordered_map<Tuple, std::size_t, TupleHash> depth_of;
  std::deque<const Tuple*> frontier;
  auto [root, _] = depth_of.emplace(encode(w), 0);
  frontier.push_back(&root->first);

  Tuple next;
  while (!frontier.empty()) {
    const Tuple& cur = *frontier.front();
    frontier.pop_front();
    const std::size_t d = depth_of.at(cur);
    if (max_depth != 0 && d >= max_depth) continue;
    for (Letter x = 0; x < q; ++x) {
      const Letter y = run(automaton, cur, x, next);
      if (y != x && result.identity) {
        result.identity = false;
        result.witness_depth = d + 1;
        if (stop == Stop::at_witness) {
          result.explored = depth_of.size();
          return result;
        }
      }
      auto [it, inserted] = depth_of.try_emplace(next, d + 1);
      if (!inserted) continue;
      if (max_states != 0 && depth_of.size() > max_states) {
        throw Error(ErrorKind::budget_exceeded,
                    "composed-state exploration exceeded " + std::to_string(max_states) +
                        " states");
      }
      frontier.push_back(&it->first);
    }
  }
  result.explored = depth_of.size();
  return result;
}

}  // namespace

bool acts_trivially_to_depth(const MealyAutomaton& automaton, std::span<const Generator> w,
                             std::size_t depth) {
  if (depth == 0) return true;
  return explore(automaton, w, depth, 0, Stop::at_witness).identity;
}

IdentityDecision decide_identity(const MealyAutomaton& automaton, std::span<const Generator> w,
                                 const DecisionBudget& budget) {
  const Exploration e = explore(automaton, w, 0, budget.max_states, Stop::at_witness);
  return {e.identity, e.explored, e.witness_depth};
}

bool is_identity(const MealyAutomaton& automaton, std::span<const Generator> w,
                 const DecisionBudget& budget) {
  return decide_identity(automaton, w, budget).identity;
}

bool are_equal(const MealyAutomaton& automaton, std::span<const Generator> w1,
               std::span<const Generator> w2, const DecisionBudget& budget) {
  return is_identity(automaton, concat(w1, inverse_word(w2)), budget);
}

std::size_t reachable_state_count(const MealyAutomaton& automaton, std::span<const Generator> w,
                                  const DecisionBudget& budget) {
  return explore(automaton, w, 0, budget.max_states, Stop::never).explored;
}

std::optional<std::size_t> element_order(const MealyAutomaton& automaton,
                                         std::span<const Generator> w, std::size_t max_order,
                                         const DecisionBudget& budget) {
  if (max_order == 0) throw Error(ErrorKind::invalid_argument, "max_order must be >= 1");
  try {
    GroupWord wk;
    for (std::size_t k = 1; k <= max_order; ++k) {
      wk.insert(wk.end(), w.begin(), w.end());
      if (is_identity(automaton, wk, budget)) return k;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::budget_exceeded) throw;
  }
  return std::nullopt;
}

bool commutes(const MealyAutomaton& automaton, std::span<const Generator> u,
              std::span<const Generator> v, const DecisionBudget& budget) {
  GroupWord c = concat(u, v);
  const GroupWord ui = inverse_word(u);
  const GroupWord vi = inverse_word(v);
  c.insert(c.end(), ui.begin(), ui.end());
  c.insert(c.end(), vi.begin(), vi.end());
  return is_identity(automaton, c, budget);
}

std::optional<GroupWord> conjugacy_search_bruteforce(const MealyAutomaton& automaton,
                                                     std::span<const Generator> a,
                                                     std::span<const Generator> b,
                                                     std::span<const StateId> generators,
                                                     std::size_t max_len,
                                                     const DecisionBudget& budget) {
  std::vector<Generator> letters;
  for (StateId s : generators) {
    letters.push_back({s, false});
    letters.push_back({s, true});
  }
  const GroupWord b_inv = inverse_word(b);

  auto conjugates = [&](const GroupWord& c) {
    GroupWord probe = inverse_word(c);
    probe.insert(probe.end(), a.begin(), a.end());
    probe.insert(probe.end(), c.begin(), c.end());
    probe.insert(probe.end(), b_inv.begin(), b_inv.end());
    return is_identity(automaton, probe, budget);
  };

  if (conjugates({})) return GroupWord{};
  if (letters.empty()) return std::nullopt;

  // Odometer over letter indices; skips words with adjacent cancellation.
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::size_t> idx(len, 0);
    auto advance = [&] {
      for (std::size_t pos = len; pos-- > 0;) {
        if (++idx[pos] < letters.size()) return true;
        idx[pos] = 0;
      }
      return false;
    };
    do {
      bool reduced = true;
      for (std::size_t i = 1; i < len && reduced; ++i) {
        reduced = !letters[idx[i - 1]].cancels(letters[idx[i]]);
      }
      if (!reduced) continue;
      GroupWord c;
      c.reserve(len);
      for (std::size_t i : idx) c.push_back(letters[i]);
      if (conjugates(c)) return c;
    } while (advance());
  }
  return std::nullopt;
}

Verification verify_identity(const MealyAutomaton& automaton, std::span<const Generator> w,
                             const DecisionBudget& budget, std::size_t fallback_depth) {
  try {
    return {is_identity(automaton, w, budget), true, 0};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::budget_exceeded) throw;
  }
  return {acts_trivially_to_depth(automaton, w, fallback_depth), false, fallback_depth};
}

Verification verify_equal(const MealyAutomaton& automaton, std::span<const Generator> w1,
                          std::span<const Generator> w2, const DecisionBudget& budget,
                          std::size_t fallback_depth) {
  return verify_identity(automaton, concat(w1, inverse_word(w2)), budget, fallback_depth);
}

}  // namespace autgrp
