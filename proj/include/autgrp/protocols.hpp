#pragma once

// Three cryptosystems over automaton groups:
//  - the conjugation metascheme with relator obfuscation (meta_*),
//  - commutator key agreement from exchanged conjugates (aag_*),
//  - the bit cipher over G_omega based on the word problem (wp_*).
//
// Metascheme conjugation is A x A^-1 throughout. The brute-force conjugacy
// search in wordproblem uses the other orientation c^-1 x c.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "autgrp/mealy.hpp"
#include "autgrp/platforms.hpp"
#include "autgrp/random.hpp"
#include "autgrp/rewriting.hpp"
#include "autgrp/wordproblem.hpp"

namespace autgrp {

// ---------------------------------------------------------------------------
// Message coding

// Digits per byte: least k with q^k >= 256.
std::size_t digits_per_byte(std::size_t q);
// Each byte as digits_per_byte(q) base-q digits, least significant first.
InputWord encode_message(std::size_t q, std::span<const std::uint8_t> bytes);
// Throws Error(decode_error) on a short payload or a value above 255.
std::vector<std::uint8_t> decode_message(std::size_t q, std::span<const Letter> payload,
                                         std::size_t byte_count);

struct Ciphertext {
  std::size_t header = 0;  // plaintext byte count
  InputWord payload;
};

// ---------------------------------------------------------------------------
// Metascheme

struct MetaParams {
  std::size_t A_len = 6;
  // Unset selects 10 * |A b_i A^-1|.
  std::optional<std::size_t> obf_steps;
  // Unset selects max(8 * |A b_i A^-1|, longest relator).
  std::optional<std::size_t> len_cap;
  std::size_t u_blocks = 6;
  std::size_t test_words = 32;
  std::size_t test_len = 64;
  std::size_t sweep_depth = 3;
  std::size_t max_retries = 16;
  WalkWeights weights;
};

struct MetaPublicKey {
  MealyAutomaton automaton;
  std::vector<StateId> generators;  // alphabet of A
  std::vector<GroupWord> base_tuple;
  std::vector<Relator> relators;
  MetaParams params;
};

// Checks the invariants (at least two base words, relators hold) and
// freely reduces the base words.
MetaPublicKey make_meta_public(const MealyAutomaton& automaton, std::vector<StateId> generators,
                               std::vector<GroupWord> base_tuple,
                               std::span<const GroupWord> relators, const MetaParams& params = {},
                               const DecisionBudget& budget = {});

// Base tuple = the platform generators as one-letter words.
MetaPublicKey meta_public_from_platform(const Platform& platform, const MetaParams& params = {},
                                        const DecisionBudget& budget = {});

struct MetaPrivateKey {
  GroupWord A;
};

struct MetaKeygen {
  MetaPrivateKey priv;
  std::vector<GroupWord> c_tuple;
};

// A is resampled until it does not commute with some base word.
MetaKeygen meta_alice_keygen(const MetaPublicKey& pub, Rng& rng);
// Same with a caller supplied A.
std::vector<GroupWord> meta_conjugate_tuple(const MetaPublicKey& pub, std::span<const Generator> A,
                                            Rng& rng);

struct MetaBlock {
  std::size_t index = 0;
  bool inverse = false;
};

struct BobSession {
  std::vector<MetaBlock> blocks;
  GroupWord u;   // b-blocks expanded to generators
  GroupWord uA;  // matching c-blocks
  std::size_t attempts = 0;
  InputWord witness;  // input moved differently by u and uA
};

// Throws Error(rejected) when no u passes within max_retries attempts.
BobSession meta_bob_session(const MetaPublicKey& pub, std::span<const GroupWord> c_tuple, Rng& rng);

// Blocks are fixed; returns the witness if u and uA act differently on the
// sampled test words.
std::optional<InputWord> meta_acceptance_test(const MetaPublicKey& pub,
                                              std::span<const Generator> u,
                                              std::span<const Generator> uA, Rng& rng);

GroupWord meta_alice_session(const MetaPrivateKey& priv, std::span<const Generator> uA);

Ciphertext meta_encrypt(const MealyAutomaton& automaton, std::span<const Generator> key,
                        std::span<const std::uint8_t> plaintext);
std::vector<std::uint8_t> meta_decrypt(const MealyAutomaton& automaton,
                                       std::span<const Generator> key, const Ciphertext& ct);

// ---------------------------------------------------------------------------
// Commutator key agreement

struct AagPublic {
  std::vector<GroupWord> a_tuple;
  std::vector<GroupWord> b_tuple;
};

struct AagExchange {
  std::vector<MetaBlock> a_blocks, b_blocks;
  GroupWord a, b;
  std::vector<GroupWord> alice_transcript;  // a^-1 b_i a
  std::vector<GroupWord> bob_transcript;    // b^-1 a_j b
  GroupWord alice_key;                      // a^-1 (b^-1 a b)
  GroupWord bob_key;                        // (a^-1 b a)^-1 b
};

AagExchange aag_exchange(const AagPublic& pub, std::span<const MetaBlock> a_blocks,
                         std::span<const MetaBlock> b_blocks);
// Private words of the given block counts drawn uniformly.
AagExchange aag_exchange(const AagPublic& pub, std::size_t alice_len, std::size_t bob_len,
                         Rng& rng);

// ---------------------------------------------------------------------------
// Word-problem bit cipher over G_omega

struct WpParams {
  std::size_t max_order = 64;
  std::size_t w0_len = 6;
  std::size_t conjugator_len = 3;
  std::size_t len_cap = 0;  // 0 selects max(8 * longest seed, longest relator)
};

// Words use the portable ids a=0, b=1, c=2, d=3 of grigorchuk_omega.
struct WpPublic {
  std::vector<GroupWord> relators;
  GroupWord w0;  // bit 0, not the identity
  GroupWord w1;  // bit 1, the identity
  std::size_t len_cap = 0;
};

struct WpPrivate {
  OmegaSequence omega;
  MealyAutomaton automaton;  // materialised G_omega
};

WpPrivate wp_private(const OmegaSequence& omega, std::size_t state_cap = 4096);

struct WpKeys {
  WpPublic pub;
  WpPrivate priv;
};

WpKeys wp_keygen(const OmegaSequence& omega, const WpParams& params, Rng& rng,
                 const DecisionBudget& budget = {});
// Throws Error(invalid_seed_words) unless w1 = 1, w0 != 1 in G_omega.
WpPublic wp_make_public(const WpPrivate& priv, std::vector<GroupWord> relators, GroupWord w0,
                        GroupWord w1, std::size_t len_cap = 0, const DecisionBudget& budget = {});

RewriteSystem wp_rewrite_system(const WpPublic& pub);
GroupWord wp_encrypt_bit(const WpPublic& pub, int bit, std::size_t steps, Rng& rng);
GroupWord wp_encrypt_bit(const WpPublic& pub, const RewriteSystem& rs, int bit, std::size_t steps,
                         Rng& rng);
// Throws Error(undecodable) when the word is in neither class.
int wp_decrypt_bit(const WpPrivate& priv, const WpPublic& pub, std::span<const Generator> word,
                   const DecisionBudget& budget = {});

}  // namespace autgrp
