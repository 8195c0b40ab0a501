#pragma once

// Invertible Mealy automata and the groups they generate.
//
// Action convention: a group word acts left to right, i.e. for w = s1 s2 ... sn
// the first generator s1 is applied to the input first. Inverse generators act
// through the automaton with input and output swapped. The inverse of a word is
// its reversal with every exponent flipped.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "autgrp/random.hpp"

namespace autgrp {

using Letter = std::uint32_t;
using StateId = std::uint32_t;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  // "0", "1", ..., "q-1".
  static Alphabet digits(std::size_t q);

  std::size_t size() const noexcept { return letters_.size(); }
  const std::string& symbol(Letter x) const { return letters_.at(x); }
  const std::vector<std::string>& letters() const noexcept { return letters_; }
  std::optional<Letter> find(std::string_view symbol) const;
  Letter index(std::string_view symbol) const;

  // True when every symbol is one character, so input words can be written
  // without separators.
  bool single_char() const noexcept { return single_char_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.letters_ == b.letters_;
  }

 private:
  std::vector<std::string> letters_;
  std::unordered_map<std::string, Letter> index_;
  bool single_char_ = true;
};

// A state or its formal inverse.
struct Generator {
  StateId state = 0;
  bool inverse = false;

  int exponent() const noexcept { return inverse ? -1 : 1; }
  Generator inverted() const noexcept { return {state, !inverse}; }
  bool cancels(Generator other) const noexcept {
    return state == other.state && inverse != other.inverse;
  }
  // Dense code 2*state + inverse; used as a hash/trie key.
  std::uint32_t code() const noexcept { return 2 * state + (inverse ? 1 : 0); }
  static Generator from_code(std::uint32_t code) noexcept {
    return {code / 2, (code & 1u) != 0};
  }

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

using GroupWord = std::vector<Generator>;
using InputWord = std::vector<Letter>;

struct Transition {
  StateId next = 0;
  Letter output = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Letter-to-letter transducer. The transition table may be partial or
// non-invertible when built from untrusted input; validate() reports that and
// every action operation requires valid().
class MealyAutomaton {
 public:
  MealyAutomaton() = default;
  MealyAutomaton(Alphabet alphabet, std::vector<std::string> states,
                 std::vector<std::optional<Transition>> table);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  std::size_t num_states() const noexcept { return states_.size(); }
  const std::vector<std::string>& state_names() const noexcept { return states_; }
  const std::string& state_name(StateId s) const { return states_.at(s); }
  std::optional<StateId> find_state(std::string_view name) const;
  StateId state(std::string_view name) const;

  const std::optional<Transition>& transition(StateId s, Letter x) const {
    return table_[s * alphabet_size() + x];
  }

  // Total and every output map is a permutation.
  bool valid() const noexcept { return valid_; }

  // One transducer step for a signed generator. Requires valid().
  std::pair<Generator, Letter> step(Generator g, Letter x) const {
    const std::size_t q = alphabet_size();
    if (!g.inverse) {
      const Transition& t = dense_[g.state * q + x];
      return {Generator{t.next, false}, t.output};
    }
    const Letter pre = preimage_[g.state * q + x];
    return {Generator{dense_[g.state * q + pre].next, true}, pre};
  }

  // State acts as the identity on the whole tree (identity output everywhere
  // reachable). Requires valid().
  bool is_trivial(StateId s) const { return trivial_.at(s) != 0; }

  // States that are not trivial, in state order.
  std::vector<StateId> nontrivial_states() const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> states_;
  std::unordered_map<std::string, StateId> index_;
  std::vector<std::optional<Transition>> table_;
  bool valid_ = false;
  std::vector<Transition> dense_;
  std::vector<Letter> preimage_;
  std::vector<char> trivial_;
};

struct ValidationReport {
  bool total = true;
  // (state, letter) pairs without a transition.
  std::vector<std::pair<StateId, Letter>> missing;
  // States whose output map is not a permutation.
  std::vector<StateId> not_permutation;
  std::vector<std::string> messages;

  bool accepted() const noexcept { return total && not_permutation.empty(); }
};

ValidationReport validate(const MealyAutomaton& automaton);

// The automaton with input and output swapped; state q becomes "q^-1".
MealyAutomaton invert(const MealyAutomaton& automaton);

InputWord act(const MealyAutomaton& automaton, std::span<const Generator> w,
              std::span<const Letter> u);

// Section of w at the vertex u: act(w, u ++ v) == act(w, u) ++ act(restrict(w, u), v).
// The result has the same length as w (sections of trivial states are kept).
GroupWord restrict(const MealyAutomaton& automaton, std::span<const Generator> w,
                   std::span<const Letter> u);

GroupWord free_reduce(std::span<const Generator> w);
GroupWord inverse_word(std::span<const Generator> w);
GroupWord concat(std::span<const Generator> a, std::span<const Generator> b);
GroupWord power(std::span<const Generator> w, std::size_t k);

// Uniform freely reduced word of exactly `length` letters over the generators
// and their inverses.
GroupWord random_word(std::span<const StateId> generators, std::size_t length, Rng& rng);

// Word text format: whitespace separated state names, inverses suffixed "^-1".
GroupWord parse_word(const MealyAutomaton& automaton, std::string_view text);
std::string format_word(const MealyAutomaton& automaton, std::span<const Generator> w);

// Input words: plain symbol strings for one-character alphabets, otherwise
// whitespace separated symbols.
InputWord parse_input(const Alphabet& alphabet, std::string_view text);
std::string format_input(const Alphabet& alphabet, std::span<const Letter> u);

}  // namespace autgrp
