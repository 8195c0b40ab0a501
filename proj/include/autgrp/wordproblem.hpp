#pragma once

// Word-problem oracles for automaton groups.
//
// A group word w = s1...sn is run as a product transducer: its state is the
// tuple of current states of every coordinate (a ComposedState). w is the
// identity iff every composed state reachable from (s1, ..., sn) leaves every
// input letter unchanged. The reachable set is finite, so the procedure is
// exact, but it can be exponential in |w|; DecisionBudget caps it.

#include <cstddef>
#include <optional>
#include <span>

#include "autgrp/mealy.hpp"

namespace autgrp {

using ComposedState = GroupWord;

struct DecisionBudget {
  std::size_t max_states = std::size_t{1} << 20;
  std::size_t max_depth = 16;
};

struct IdentityDecision {
  bool identity = true;
  // Composed states visited before the answer was known.
  std::size_t explored_states = 0;
  // Length of the shortest input word moved by w (0 when identity).
  std::size_t witness_depth = 0;
};

// true iff act(w, u) == u for every |u| <= depth.
bool acts_trivially_to_depth(const MealyAutomaton& automaton, std::span<const Generator> w,
                             std::size_t depth);

// Exact; throws Error(budget_exceeded) past budget.max_states composed states.
IdentityDecision decide_identity(const MealyAutomaton& automaton, std::span<const Generator> w,
                                 const DecisionBudget& budget = {});

bool is_identity(const MealyAutomaton& automaton, std::span<const Generator> w,
                 const DecisionBudget& budget = {});

bool are_equal(const MealyAutomaton& automaton, std::span<const Generator> w1,
               std::span<const Generator> w2, const DecisionBudget& budget = {});

// Size of the full reachable composed-state set of w (no early exit).
std::size_t reachable_state_count(const MealyAutomaton& automaton, std::span<const Generator> w,
                                  const DecisionBudget& budget = {});

// Least k in [1, max_order] with w^k = 1; nullopt when none is found or the
// budget runs out.
std::optional<std::size_t> element_order(const MealyAutomaton& automaton,
                                         std::span<const Generator> w, std::size_t max_order,
                                         const DecisionBudget& budget = {});

// u v u^-1 v^-1 == 1.
bool commutes(const MealyAutomaton& automaton, std::span<const Generator> u,
              std::span<const Generator> v, const DecisionBudget& budget = {});

// First freely reduced c (length-lexicographic over `generators`, positive
// before inverse) with |c| <= max_len and c^-1 a c == b.
std::optional<GroupWord> conjugacy_search_bruteforce(const MealyAutomaton& automaton,
                                                     std::span<const Generator> a,
                                                     std::span<const Generator> b,
                                                     std::span<const StateId> generators,
                                                     std::size_t max_len,
                                                     const DecisionBudget& budget = {});

// Exact identity test that degrades to a depth-bounded one when the budget is
// exhausted. `exact` records which one answered.
struct Verification {
  bool holds = false;
  bool exact = false;
  std::size_t depth = 0;
};

Verification verify_identity(const MealyAutomaton& automaton, std::span<const Generator> w,
                             const DecisionBudget& budget, std::size_t fallback_depth);

Verification verify_equal(const MealyAutomaton& automaton, std::span<const Generator> w1,
                          std::span<const Generator> w2, const DecisionBudget& budget,
                          std::size_t fallback_depth);

}  // namespace autgrp
