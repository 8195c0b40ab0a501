#pragma once

// Measurement harnesses: commutation frequency of random pairs, growth of the
// rewrite ball around a word, and Hamming distance between a ciphertext and
// its images under random group elements.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "autgrp/mealy.hpp"
#include "autgrp/random.hpp"
#include "autgrp/rewriting.hpp"
#include "autgrp/wordproblem.hpp"

namespace autgrp {

// Length uniform in 0..N, then a uniform freely reduced word of that length.
GroupWord sample_ball_word(std::span<const StateId> generators, std::size_t N, Rng& rng);

struct CommuteRow {
  std::size_t N = 0;
  std::size_t samples = 0;
  double noncommuting_fraction = 0;
  double undecided_fraction = 0;
};

struct CommuteOptions {
  std::size_t N = 6;
  std::size_t samples = 10000;
  // Use the same word for u and A (control row).
  bool diagonal = false;
  DecisionBudget budget;
  // Depth of the bounded test used when the exact oracle runs out of budget.
  std::size_t fallback_depth = 12;
};

// Pair i uses rng.split(i), so the result does not depend on evaluation order.
CommuteRow commute_experiment(const MealyAutomaton& automaton, std::span<const StateId> generators,
                              const CommuteOptions& options, const Rng& rng);

std::string commute_csv_header();
std::string to_csv(const CommuteRow& row);

std::string rewrite_space_csv(const BallGrowth& growth);

struct HammingRow {
  std::size_t h_len = 0;
  std::size_t samples = 0;
  std::size_t message_len = 0;
  double mean_distance = 0;
  std::size_t max_distance = 0;
};

std::size_t hamming_distance(std::span<const Letter> x, std::span<const Letter> y);

// For each sample: h uniform of length h_len, M uniform of message_len letters,
// distance between M and act(h, M).
HammingRow hamming_experiment(const MealyAutomaton& automaton, std::span<const StateId> generators,
                              std::size_t h_len, std::size_t samples, std::size_t message_len,
                              const Rng& rng);

// Same with a fixed h (control rows).
HammingRow hamming_fixed(const MealyAutomaton& automaton, std::span<const Generator> h,
                         std::size_t samples, std::size_t message_len, const Rng& rng);

std::string hamming_csv_header();
std::string to_csv(const HammingRow& row);

}  // namespace autgrp
