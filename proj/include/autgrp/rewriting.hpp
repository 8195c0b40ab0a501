#pragma once

// Relator-driven rewriting of group words.
//
// For a relator r = v1 u v2 the complement r[u] = v1^-1 v2^-1 equals u in the
// group. The move catalogue contains u -> r[u] and r[u] -> u for every factor
// u of every relator (the empty factor included), plus free insertion and
// cancellation of s s^-1. Every move preserves the group element.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "autgrp/mealy.hpp"
#include "autgrp/random.hpp"
#include "autgrp/wordproblem.hpp"

namespace autgrp {

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct Relator {
  GroupWord word;
  // Checked with the exact oracle; false means only depth-bounded evidence.
  bool exact = true;
};

enum class MoveKind { factor_swap, relator_insert, relator_delete, free_insert, free_cancel };

std::string_view move_kind_name(MoveKind kind);

struct RewriteMove {
  MoveKind kind = MoveKind::factor_swap;
  std::size_t position = 0;
  GroupWord pattern;      // occurrence at `position` that is replaced
  GroupWord replacement;
};

class RewriteSystem {
 public:
  RewriteSystem() = default;
  // Relators are freely reduced; empty ones are dropped. max_word_len is
  // raised to the longest relator if smaller.
  RewriteSystem(std::vector<Relator> relators, std::vector<StateId> generators,
                std::size_t max_word_len);

  const std::vector<Relator>& relators() const noexcept { return relators_; }
  const std::vector<StateId>& generators() const noexcept { return generators_; }
  std::size_t max_word_len() const noexcept { return max_word_len_; }
  std::size_t longest_relator() const noexcept { return longest_; }

  struct Production {
    GroupWord pattern;
    GroupWord replacement;
    MoveKind kind;
  };
  const std::vector<Production>& productions() const noexcept { return productions_; }

  // Calls visit(production_index, position) for every occurrence of a
  // non-empty pattern in w, ordered by position, then pattern length, then
  // catalogue order.
  template <typename Visit>
  void for_each_occurrence(std::span<const Generator> w, Visit&& visit) const;

  // Productions with an empty pattern (insertions), in catalogue order.
  const std::vector<std::size_t>& insertions() const noexcept { return insertions_; }

 private:
  struct Node {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> children;  // code -> node
    std::vector<std::uint32_t> ends;  // productions whose pattern ends here
  };
  void add_production(GroupWord pattern, GroupWord replacement);
  std::optional<std::uint32_t> child(std::uint32_t node, std::uint32_t code) const;

  std::vector<Relator> relators_;
  std::vector<StateId> generators_;
  std::size_t max_word_len_ = 0;
  std::size_t longest_ = 0;
  std::vector<Production> productions_;
  std::vector<std::size_t> insertions_;
  std::vector<Node> trie_;
};

// Builds a RewriteSystem after checking every relator against the automaton:
// exact oracle for |r| <= exact_limit, otherwise acts_trivially_to_depth(r,
// fallback_depth) and the relator is flagged non-exact. Throws
// Error(invalid_relator) on the first word that is not the identity.
RewriteSystem make_rewrite_system(const MealyAutomaton& automaton,
                                  std::span<const GroupWord> relators,
                                  std::vector<StateId> generators, std::size_t max_word_len,
                                  const DecisionBudget& budget = {},
                                  std::size_t exact_limit = 20, std::size_t fallback_depth = 16);

// All spans of w, including the |w|+1 empty ones, ordered by (begin, end).
std::vector<Span> factor_occurrences(std::span<const Generator> w);

// r[u] for u = relator[span]: inverse(prefix) ++ inverse(suffix), freely reduced.
GroupWord complement(std::span<const Generator> relator, Span span);

std::vector<RewriteMove> applicable_moves(std::span<const Generator> w, const RewriteSystem& rs);

GroupWord apply_move(std::span<const Generator> w, const RewriteMove& move);

struct WalkWeights {
  double factor_swap = 0.5;
  double free_insert = 0.2;
  double free_cancel = 0.2;
  double relator = 0.1;  // insert and delete together
};

struct WalkOptions {
  WalkWeights weights;
  // Overrides RewriteSystem::max_word_len when set.
  std::optional<std::size_t> max_word_len;
};

struct Obfuscation {
  GroupWord word;
  std::size_t applied = 0;
  std::size_t skipped = 0;
};

// Random walk of `steps` moves. Each step picks a move kind by weight among
// kinds with at least one move that keeps the word under the length cap, then
// a uniform move of that kind.
Obfuscation obfuscate(std::span<const Generator> w, const RewriteSystem& rs, std::size_t steps,
                      Rng& rng, const WalkOptions& options = {});

// Endomorphic presentation: fixed relators plus phi^k(iterated) for k = 0..depth.
struct LPresentation {
  std::vector<GroupWord> fixed;
  std::vector<GroupWord> iterated;
  std::map<StateId, GroupWord> substitution;
};

GroupWord substitute(std::span<const Generator> w, const std::map<StateId, GroupWord>& phi);

std::vector<GroupWord> expand_lpresentation(const LPresentation& presentation, std::size_t depth);

struct BallGrowth {
  std::vector<std::size_t> counts;  // |ball| after k steps, k = 0..n
  std::vector<bool> truncated;
};

// Breadth-first ball of words reachable by at most n moves (respecting the
// system's length cap). Stops growing once the ball exceeds `cap` words.
BallGrowth reachable_count(std::span<const Generator> w, const RewriteSystem& rs, std::size_t n,
                           std::size_t cap);

// ---------------------------------------------------------------------------

template <typename Visit>
void RewriteSystem::for_each_occurrence(std::span<const Generator> w, Visit&& visit) const {
  for (std::size_t start = 0; start < w.size(); ++start) {
    std::uint32_t node = 0;
    for (std::size_t i = start; i < w.size(); ++i) {
      auto next = child(node, w[i].code());
      if (!next) break;
      node = *next;
      for (std::uint32_t p : trie_[node].ends) visit(static_cast<std::size_t>(p), start);
    }
  }
}

}  // namespace autgrp
