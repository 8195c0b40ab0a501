#include "autgrp/experiments.hpp"

#include <algorithm>
#include <cstdio>

#include "autgrp/errors.hpp"

namespace autgrp {

namespace {

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

InputWord random_input(std::size_t q, std::size_t len, Rng& rng) {
  InputWord u(len);
  for (Letter& x : u) x = static_cast<Letter>(rng.below(q));
  return u;
}

}  // namespace

GroupWord sample_ball_word(std::span<const StateId> generators, std::size_t N, Rng& rng) {
  const std::size_t len = rng.below(N + 1);
  return random_word(generators, len, rng);
}

CommuteRow commute_experiment(const MealyAutomaton& automaton, std::span<const StateId> generators,
                              const CommuteOptions& options, const Rng& rng) {
  if (options.samples == 0) throw Error(ErrorKind::invalid_argument, "samples must be >= 1");
  if (options.N == 0) throw Error(ErrorKind::invalid_argument, "N must be >= 1");
  std::size_t noncommuting = 0, undecided = 0;
  for (std::size_t i = 0; i < options.samples; ++i) {
    Rng local = rng.split(i);
    const GroupWord u = sample_ball_word(generators, options.N, local);
    const GroupWord A = options.diagonal ? u : sample_ball_word(generators, options.N, local);
    GroupWord comm = concat(u, A);
    const GroupWord ui = inverse_word(u), Ai = inverse_word(A);
    comm.insert(comm.end(), ui.begin(), ui.end());
    comm.insert(comm.end(), Ai.begin(), Ai.end());
    const Verification v = verify_identity(automaton, comm, options.budget, options.fallback_depth);
    if (!v.holds) {
      ++noncommuting;  // a moved word is a certificate either way
    } else if (!v.exact) {
      ++undecided;
    }
  }
  const double n = static_cast<double>(options.samples);
  return {options.N, options.samples, static_cast<double>(noncommuting) / n,
          static_cast<double>(undecided) / n};
}

std::string commute_csv_header() { return "N,samples,noncommuting_fraction,undecided_fraction"; }

std::string to_csv(const CommuteRow& row) {
  return std::to_string(row.N) + "," + std::to_string(row.samples) + "," +
         fixed6(row.noncommuting_fraction) + "," + fixed6(row.undecided_fraction);
}

std::string rewrite_space_csv(const BallGrowth& growth) {
  std::string out = "step,count,truncated\n";
  for (std::size_t k = 0; k < growth.counts.size(); ++k) {
    out += std::to_string(k) + "," + std::to_string(growth.counts[k]) + "," +
           (growth.truncated[k] ? "true" : "false") + "\n";
  }
  return out;
}

std::size_t hamming_distance(std::span<const Letter> x, std::span<const Letter> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::invalid_argument, "length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != y[i];
  return d;
}

namespace {

template <typename PickH>
HammingRow hamming_run(const MealyAutomaton& automaton, std::size_t h_len, std::size_t samples,
                       std::size_t message_len, const Rng& rng, PickH&& pick) {
  if (samples == 0) throw Error(ErrorKind::invalid_argument, "samples must be >= 1");
  HammingRow row{h_len, samples, message_len, 0, 0};
  std::size_t total = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    Rng local = rng.split(i);
    const GroupWord h = pick(local);
    const InputWord M = random_input(automaton.alphabet_size(), message_len, local);
    const std::size_t d = hamming_distance(M, act(automaton, h, M));
    total += d;
    row.max_distance = std::max(row.max_distance, d);
  }
  row.mean_distance = static_cast<double>(total) / static_cast<double>(samples);
  return row;
}

}  // namespace

HammingRow hamming_experiment(const MealyAutomaton& automaton, std::span<const StateId> generators,
                              std::size_t h_len, std::size_t samples, std::size_t message_len,
                              const Rng& rng) {
  return hamming_run(automaton, h_len, samples, message_len, rng,
                     [&](Rng& r) { return random_word(generators, h_len, r); });
}

HammingRow hamming_fixed(const MealyAutomaton& automaton, std::span<const Generator> h,
                         std::size_t samples, std::size_t message_len, const Rng& rng) {
  const GroupWord fixed(h.begin(), h.end());
  return hamming_run(automaton, h.size(), samples, message_len, rng,
                     [&](Rng&) { return fixed; });
}

std::string hamming_csv_header() { return "h_len,samples,message_len,mean_distance,max_distance"; }

std::string to_csv(const HammingRow& row) {
  return std::to_string(row.h_len) + "," + std::to_string(row.samples) + "," +
         std::to_string(row.message_len) + "," + fixed6(row.mean_distance) + "," +
         std::to_string(row.max_distance);
}

}  // namespace autgrp
