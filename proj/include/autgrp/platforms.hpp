#pragma once

// Platform groups: the first Grigorchuk group and the G_omega family, the
// p-Basilica groups, and affine groups over n-adic integers realised as carry
// transducers on the alphabet Z_n^d.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "autgrp/mealy.hpp"
#include "autgrp/rewriting.hpp"
#include "autgrp/wordproblem.hpp"

namespace autgrp {

// Transducer whose states are discovered on demand from an opaque key.
// Discovering a state evaluates its whole output row and checks that it is a
// permutation. Memoised rows never change; concurrent readers are allowed and
// insertion takes an exclusive lock.
class LazyTransducer {
 public:
  using Key = std::vector<std::int64_t>;
  using Oracle = std::function<std::pair<Key, Letter>(const Key&, Letter)>;
  using Namer = std::function<std::string(const Key&)>;

  LazyTransducer(Alphabet alphabet, Oracle oracle, Namer namer, std::span<const Key> roots);

  LazyTransducer(const LazyTransducer&) = delete;
  LazyTransducer& operator=(const LazyTransducer&) = delete;
  LazyTransducer(LazyTransducer&& other) noexcept;

  const Alphabet& alphabet() const noexcept { return alphabet_; }

  StateId discover(const Key& key) const;
  Key key(StateId s) const;
  std::string name(StateId s) const;
  std::size_t discovered() const;

  Transition transition(StateId s, Letter x) const;
  std::pair<Generator, Letter> step(Generator g, Letter x) const;
  InputWord act(std::span<const Generator> w, std::span<const Letter> u) const;

  // Closes the memo under transitions and dumps it as an automaton. State ids
  // are preserved. Throws Error(budget_exceeded) past state_cap states.
  MealyAutomaton materialize(std::size_t state_cap) const;

 private:
  struct Row {
    Key key;
    std::string name;
    std::vector<Key> next_keys;
    std::vector<Letter> output;
    std::vector<Letter> preimage;
  };

  Alphabet alphabet_;
  Oracle oracle_;
  Namer namer_;
  mutable std::shared_mutex mutex_;
  mutable std::deque<Row> rows_;
  mutable std::unordered_map<std::string, StateId> index_;  // keyed by serialised Key
};

// ---------------------------------------------------------------------------
// Grigorchuk groups

// Eventually periodic omega = preperiod (period)^infinity over {0,1,2}.
struct OmegaSequence {
  std::vector<int> preperiod;
  std::vector<int> period{0, 1, 2};

  int at(std::size_t i) const;
  // Canonical shift index (i folded into preperiod + one period).
  std::size_t normalize(std::size_t i) const;
  std::size_t distinct_shifts() const { return preperiod.size() + period.size(); }

  // "pre|period", e.g. "|012" or "01|2".
  static OmegaSequence parse(std::string_view text);
  std::string to_string() const;
  void check() const;
};

// States a, b, c, d, e over {0, 1}: a = swap, b = (a, c), c = (a, d), d = (e, b).
MealyAutomaton grigorchuk_automaton();

// a^2, b^2, c^2, d^2, bcd fixed; (ad)^4 and (adacac)^4 iterated by
// a -> aca, b -> d, c -> b, d -> c.
LPresentation grigorchuk_lpresentation(const MealyAutomaton& grigorchuk);

struct GrigorchukPlatform {
  MealyAutomaton automaton;
  RewriteSystem rewriting;
};

GrigorchukPlatform grigorchuk_first(std::size_t lpresentation_depth = 2,
                                    std::size_t max_word_len = 0,
                                    const DecisionBudget& budget = {});

// Lazy G_omega transducer. Keys are (symbol, shift) with symbols a=0, b=1,
// c=2, d=3, e=4; a, b, c, d, e at shift 0 get ids 0..4 in that order.
LazyTransducer grigorchuk_omega(const OmegaSequence& omega);

// a^2, b^2, c^2, d^2, bcd and (a x)^k for x in {b, c, d} whenever the exact
// order k <= max_order of a x is found. Every word is oracle checked.
std::vector<GroupWord> grigorchuk_omega_relators(const MealyAutomaton& automaton,
                                                 std::size_t max_order = 64,
                                                 const DecisionBudget& budget = {});

// ---------------------------------------------------------------------------
// p-Basilica

// States a, b, e over {0..p-1}: a = (x -> x+1) with section b at letter p-1,
// b = identity on the letter with section a at letter p-1, e = identity.
MealyAutomaton basilica(std::size_t p);

// Commutators [b, a^-k b a^k] for k = 1..p-1 (b conjugates with disjoint
// support) and their images under b -> a, a -> b^p up to `depth`, keeping only
// oracle-verified words.
std::vector<GroupWord> basilica_relators(const MealyAutomaton& automaton, std::size_t depth = 1,
                                         const DecisionBudget& budget = {});

// ---------------------------------------------------------------------------
// Affine groups on Z_n^d

struct AffineSpec {
  std::int64_t n = 2;
  std::size_t d = 1;
  std::vector<std::vector<std::int64_t>> M{{3}};

  void check() const;  // throws Error(invalid_spec)
  std::int64_t determinant() const;
};

// Mixed-radix bijection Z_n^d <-> {0 .. n^d - 1}, component 0 least significant.
struct AlphabetPacking {
  std::int64_t n = 2;
  std::size_t d = 1;

  std::size_t size() const;
  Letter pack(std::span<const std::int64_t> digits) const;
  std::vector<std::int64_t> unpack(Letter symbol) const;
};

AlphabetPacking alphabet_packing(const AffineSpec& spec);

struct AffinePlatform {
  LazyTransducer transducer;
  // a_1..a_d then t, ids 0..d; e (zero translation carry) is id d+1.
  std::vector<StateId> generators;
  std::vector<GroupWord> relators;
};

// a_j adds e_j, t multiplies by M; words are read least significant digit
// first. Relators are [a_i, a_j] and, oriented for left-to-right action,
// t^-1 a_j t (a_1^m_1j ... a_d^m_dj)^-1.
AffinePlatform affine_group(const AffineSpec& spec);

// ---------------------------------------------------------------------------
// Presets

struct PresetOptions {
  OmegaSequence omega;
  AffineSpec affine;
  std::size_t lpresentation_depth = 2;
  std::size_t state_cap = 4096;
};

struct Platform {
  std::string preset;
  PresetOptions options;
  MealyAutomaton automaton;
  std::vector<StateId> generators;
  std::vector<GroupWord> relators;
};

// grigorchuk, grigorchuk-omega, basilica2, basilica3, affine.
std::vector<std::string> preset_names();
Platform make_preset(std::string_view name, const PresetOptions& options = {},
                     const DecisionBudget& budget = {});

}  // namespace autgrp
