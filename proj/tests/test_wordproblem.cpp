#include "doctest.h"

#include "autgrp/errors.hpp"
#include "autgrp/platforms.hpp"
#include "autgrp/wordproblem.hpp"
#include "oracles.hpp"

using namespace autgrp;

namespace {

// act(w, u) == u for every u with |u| <= depth, by plain enumeration.
bool trivial_by_enumeration(const MealyAutomaton& m, const GroupWord& w, std::size_t depth) {
  for (std::size_t n = 1; n <= depth; ++n) {
    for (const auto& u : oracle::all_inputs(m.alphabet_size(), n)) {
      if (act(m, w, u) != u) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("acts_trivially_to_depth") {
  const auto g = grigorchuk_automaton();
  CHECK(acts_trivially_to_depth(g, GroupWord{}, 7));
  CHECK_FALSE(acts_trivially_to_depth(g, parse_word(g, "a"), 1));
  CHECK(acts_trivially_to_depth(g, parse_word(g, "a a"), 10));
  CHECK(trivial_by_enumeration(g, parse_word(g, "a a"), 4));
  CHECK(acts_trivially_to_depth(g, parse_word(g, "a"), 0));

  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto w = random_word(g.nontrivial_states(), rng.below(7), rng);
    for (std::size_t d : {1, 3, 6}) {
      CHECK(acts_trivially_to_depth(g, w, d) == trivial_by_enumeration(g, w, d));
    }
  }
}

TEST_CASE("is_identity and are_equal") {
  const auto g = grigorchuk_automaton();
  CHECK(is_identity(g, GroupWord{}));
  CHECK(is_identity(g, parse_word(g, "b c d")));
  CHECK(acts_trivially_to_depth(g, parse_word(g, "b c d"), 12));
  const auto ab = decide_identity(g, parse_word(g, "a b"));
  CHECK_FALSE(ab.identity);
  CHECK(ab.witness_depth <= 2);
  CHECK(ab.witness_depth >= 1);

  const auto w = parse_word(g, "a d c b");
  CHECK(are_equal(g, w, w));
  CHECK(are_equal(g, parse_word(g, "b c"), parse_word(g, "d^-1")));
  CHECK(are_equal(g, parse_word(g, "c"), parse_word(g, "b^-1 d^-1")));
  CHECK_FALSE(are_equal(g, parse_word(g, "a"), parse_word(g, "b")));
}

TEST_CASE("budget") {
  const auto g = grigorchuk_automaton();
  DecisionBudget tiny;
  tiny.max_states = 2;
  CHECK_THROWS_AS(is_identity(g, parse_word(g, "a d a d a d a d"), tiny), Error);
  try {
    is_identity(g, parse_word(g, "a d a d a d a d"), tiny);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::budget_exceeded);
  }
  CHECK_FALSE(element_order(g, parse_word(g, "a d"), 8, tiny).has_value());
  const auto v = verify_identity(g, parse_word(g, "a d a d a d a d"), tiny, 10);
  CHECK(v.holds);
  CHECK_FALSE(v.exact);
  CHECK(v.depth == 10);
}

TEST_CASE("soundness link between exact and bounded tests") {
  for (const auto& m : {grigorchuk_automaton(), basilica(2), basilica(3)}) {
    Rng rng(6);
    for (int i = 0; i < 300; ++i) {
      const auto w = random_word(m.nontrivial_states(), rng.below(9), rng);
      const auto d = decide_identity(m, w);
      const std::size_t reach = reachable_state_count(m, w);
      if (d.identity) {
        CHECK(acts_trivially_to_depth(m, w, 14));
      } else {
        CHECK(d.witness_depth <= reach);
        CHECK_FALSE(acts_trivially_to_depth(m, w, d.witness_depth));
        CHECK(acts_trivially_to_depth(m, w, d.witness_depth - 1));
      }
    }
  }
}

TEST_CASE("element_order") {
  const auto g = grigorchuk_automaton();
  CHECK(element_order(g, GroupWord{}, 5) == 1);
  CHECK(element_order(g, parse_word(g, "a"), 10) == 2);
  CHECK(element_order(g, parse_word(g, "d"), 10) == 2);
  CHECK(element_order(g, parse_word(g, "a d"), 10) == 4);
  CHECK(element_order(g, parse_word(g, "a b"), 16) == 16);
  CHECK_FALSE(element_order(g, parse_word(g, "a b"), 15).has_value());
  CHECK_THROWS_AS(element_order(g, parse_word(g, "a"), 0), Error);

  Rng rng(13);
  for (int i = 0; i < 30; ++i) {
    const auto w = random_word(g.nontrivial_states(), 1 + rng.below(4), rng);
    const auto c = random_word(g.nontrivial_states(), 1 + rng.below(3), rng);
    const auto conj = concat(concat(inverse_word(c), w), c);
    CHECK(element_order(g, w, 64) == element_order(g, conj, 64));
  }
}

TEST_CASE("commutes") {
  const auto g = grigorchuk_automaton();
  const auto w = parse_word(g, "a b a c");
  CHECK(commutes(g, w, w));
  CHECK(commutes(g, w, GroupWord{}));
  CHECK_FALSE(commutes(g, parse_word(g, "a"), parse_word(g, "b")));
  CHECK(commutes(g, parse_word(g, "b"), parse_word(g, "c")));
}

TEST_CASE("conjugacy_search_bruteforce") {
  const auto g = grigorchuk_automaton();
  const auto gens = g.nontrivial_states();
  const auto a = parse_word(g, "a b");
  auto same = conjugacy_search_bruteforce(g, a, a, gens, 3);
  REQUIRE(same.has_value());
  CHECK(same->empty());

  Rng rng(31);
  for (int i = 0; i < 10; ++i) {
    const auto x = random_word(gens, 1 + rng.below(4), rng);
    const auto c = random_word(gens, 1 + rng.below(3), rng);
    const auto y = concat(concat(inverse_word(c), x), c);
    const auto found = conjugacy_search_bruteforce(g, x, y, gens, 3);
    REQUIRE(found.has_value());
    CHECK(found->size() <= 3);
    CHECK(free_reduce(*found) == *found);
    CHECK(are_equal(g, concat(concat(inverse_word(*found), x), *found), y));
  }

  CHECK_FALSE(conjugacy_search_bruteforce(g, parse_word(g, "a"), parse_word(g, "b"), gens, 4));
}

TEST_CASE("are_equal behaves as an equivalence on samples") {
  const auto g = grigorchuk_automaton();
  Rng rng(17);
  std::vector<GroupWord> words;
  for (int i = 0; i < 16; ++i) words.push_back(random_word(g.nontrivial_states(), rng.below(5), rng));
  words.push_back(parse_word(g, "b c"));
  words.push_back(parse_word(g, "d"));
  for (const auto& x : words) {
    CHECK(are_equal(g, x, x));
    for (const auto& y : words) {
      const bool xy = are_equal(g, x, y);
      CHECK(xy == are_equal(g, y, x));
      if (!xy) continue;
      for (const auto& z : words) {
        if (are_equal(g, y, z)) CHECK(are_equal(g, x, z));
      }
    }
  }
}
