#include "autgrp/protocols.hpp"

#include <algorithm>

#include "autgrp/errors.hpp"

namespace autgrp {

namespace {

constexpr std::size_t kKeygenDepth = 12;
constexpr std::size_t kKeygenAttempts = 256;

std::vector<Relator> as_relators(std::span<const GroupWord> words) {
  std::vector<Relator> out;
  for (const GroupWord& w : words) out.push_back({w, true});
  return out;
}

std::size_t longest(std::span<const Relator> relators) {
  std::size_t n = 0;
  for (const Relator& r : relators) n = std::max(n, r.word.size());
  return n;
}

std::size_t longest(std::span<const GroupWord> words) {
  std::size_t n = 0;
  for (const GroupWord& w : words) n = std::max(n, w.size());
  return n;
}

void append(GroupWord& out, std::span<const Generator> w, bool inverse) {
  if (!inverse) {
    out.insert(out.end(), w.begin(), w.end());
    return;
  }
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverted());
}

GroupWord expand(std::span<const GroupWord> tuple, std::span<const MetaBlock> blocks) {
  GroupWord out;
  for (const MetaBlock& b : blocks) append(out, tuple[b.index], b.inverse);
  return out;
}

// Uniform sequence of blocks with no block directly followed by its inverse.
std::vector<MetaBlock> random_blocks(std::size_t tuple_size, std::size_t count, Rng& rng) {
  std::vector<StateId> ids(tuple_size);
  for (std::size_t i = 0; i < tuple_size; ++i) ids[i] = static_cast<StateId>(i);
  std::vector<MetaBlock> out;
  for (const Generator g : random_word(ids, count, rng)) out.push_back({g.state, g.inverse});
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Message coding

std::size_t digits_per_byte(std::size_t q) {
  if (q < 2) throw Error(ErrorKind::invalid_argument, "alphabet needs at least two letters");
  std::size_t k = 1;
  for (std::size_t span = q; span < 256; span *= q) ++k;
  return k;
}

InputWord encode_message(std::size_t q, std::span<const std::uint8_t> bytes) {
  const std::size_t k = digits_per_byte(q);
  InputWord out;
  out.reserve(bytes.size() * k);
  for (std::uint8_t byte : bytes) {
    std::size_t v = byte;
    for (std::size_t i = 0; i < k; ++i) {
      out.push_back(static_cast<Letter>(v % q));
      v /= q;
    }
  }
  return out;
}

std::vector<std::uint8_t> decode_message(std::size_t q, std::span<const Letter> payload,
                                         std::size_t byte_count) {
  const std::size_t k = digits_per_byte(q);
  if (payload.size() != byte_count * k) {
    throw Error(ErrorKind::decode_error, "payload length does not match header");
  }
  std::vector<std::uint8_t> out;
  out.reserve(byte_count);
  for (std::size_t i = 0; i < byte_count; ++i) {
    std::size_t v = 0;
    for (std::size_t j = k; j-- > 0;) {
      const Letter x = payload[i * k + j];
      if (x >= q) throw Error(ErrorKind::decode_error, "symbol outside the alphabet");
      v = v * q + x;
    }
    if (v > 255) throw Error(ErrorKind::decode_error, "decoded value exceeds a byte");
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Metascheme

MetaPublicKey make_meta_public(const MealyAutomaton& automaton, std::vector<StateId> generators,
                               std::vector<GroupWord> base_tuple,
                               std::span<const GroupWord> relators, const MetaParams& params,
                               const DecisionBudget& budget) {
  if (!automaton.valid()) throw Error(ErrorKind::not_invertible, "public automaton is not valid");
  if (base_tuple.size() < 2) throw Error(ErrorKind::invalid_argument, "base tuple needs >= 2 words");
  if (generators.empty()) throw Error(ErrorKind::empty_generator_set, "no generators for A");
  for (GroupWord& b : base_tuple) b = free_reduce(b);
  const RewriteSystem checked =
      make_rewrite_system(automaton, relators, generators, 0, budget);
  return {automaton, std::move(generators), std::move(base_tuple), checked.relators(), params};
}

MetaPublicKey meta_public_from_platform(const Platform& platform, const MetaParams& params,
                                        const DecisionBudget& budget) {
  std::vector<GroupWord> base;
  for (StateId s : platform.generators) base.push_back({{s, false}});
  return make_meta_public(platform.automaton, platform.generators, std::move(base),
                          platform.relators, params, budget);
}

std::vector<GroupWord> meta_conjugate_tuple(const MetaPublicKey& pub, std::span<const Generator> A,
                                            Rng& rng) {
  const RewriteSystem rs(pub.relators, pub.generators, 0);
  const GroupWord A_inv = inverse_word(A);
  std::vector<GroupWord> out;
  for (const GroupWord& b : pub.base_tuple) {
    GroupWord hat(A.begin(), A.end());
    hat.insert(hat.end(), b.begin(), b.end());
    hat.insert(hat.end(), A_inv.begin(), A_inv.end());
    WalkOptions options;
    options.weights = pub.params.weights;
    options.max_word_len =
        pub.params.len_cap.value_or(std::max(8 * hat.size(), longest(pub.relators)));
    const std::size_t steps = pub.params.obf_steps.value_or(10 * hat.size());
    out.push_back(obfuscate(hat, rs, steps, rng, options).word);
  }
  return out;
}

MetaKeygen meta_alice_keygen(const MetaPublicKey& pub, Rng& rng) {
  if (pub.params.A_len == 0) throw Error(ErrorKind::invalid_argument, "A_len must be >= 1");
  MetaKeygen out;
  // A central A makes every session fail Bob's test, so resample until some
  // b_i is moved by conjugation. A moved input word certifies this exactly.
  for (std::size_t attempt = 0;; ++attempt) {
    out.priv.A = random_word(pub.generators, pub.params.A_len, rng);
    const GroupWord A_inv = inverse_word(out.priv.A);
    const bool moves = std::any_of(pub.base_tuple.begin(), pub.base_tuple.end(), [&](const GroupWord& b) {
      const GroupWord comm = concat(concat(concat(out.priv.A, b), A_inv), inverse_word(b));
      return !acts_trivially_to_depth(pub.automaton, comm, kKeygenDepth);
    });
    if (moves) break;
    if (attempt + 1 == kKeygenAttempts) {
      throw Error(ErrorKind::rejected, "no non-central private key found");
    }
  }
  out.c_tuple = meta_conjugate_tuple(pub, out.priv.A, rng);
  return out;
}

std::optional<InputWord> meta_acceptance_test(const MetaPublicKey& pub,
                                              std::span<const Generator> u,
                                              std::span<const Generator> uA, Rng& rng) {
  const MealyAutomaton& m = pub.automaton;
  const std::size_t q = m.alphabet_size();
  // Prefix compatibility: words of exactly sweep_depth letters cover shorter ones.
  InputWord w(pub.params.sweep_depth, 0);
  while (true) {
    if (act(m, u, w) != act(m, uA, w)) return w;
    std::size_t pos = w.size();
    while (pos > 0 && w[pos - 1] + 1 == q) w[--pos] = 0;
    if (pos == 0) break;
    ++w[pos - 1];
  }
  for (std::size_t i = 0; i < pub.params.test_words; ++i) {
    InputWord probe(pub.params.test_len);
    for (Letter& x : probe) x = static_cast<Letter>(rng.below(q));
    if (act(m, u, probe) != act(m, uA, probe)) return probe;
  }
  return std::nullopt;
}

BobSession meta_bob_session(const MetaPublicKey& pub, std::span<const GroupWord> c_tuple, Rng& rng) {
  if (c_tuple.size() != pub.base_tuple.size()) {
    throw Error(ErrorKind::invalid_argument, "c tuple size differs from base tuple");
  }
  for (std::size_t attempt = 1; attempt <= pub.params.max_retries; ++attempt) {
    BobSession s;
    s.attempts = attempt;
    s.blocks = random_blocks(pub.base_tuple.size(), pub.params.u_blocks, rng);
    s.u = expand(pub.base_tuple, s.blocks);
    s.uA = expand(c_tuple, s.blocks);
    if (auto w = meta_acceptance_test(pub, s.u, s.uA, rng)) {
      s.witness = std::move(*w);
      return s;
    }
  }
  throw Error(ErrorKind::rejected, "no session key passed the non-commutation test after " +
                                       std::to_string(pub.params.max_retries) + " attempts");
}

GroupWord meta_alice_session(const MetaPrivateKey& priv, std::span<const Generator> uA) {
  GroupWord U = inverse_word(priv.A);
  U.insert(U.end(), uA.begin(), uA.end());
  U.insert(U.end(), priv.A.begin(), priv.A.end());
  return free_reduce(U);
}

Ciphertext meta_encrypt(const MealyAutomaton& automaton, std::span<const Generator> key,
                        std::span<const std::uint8_t> plaintext) {
  const InputWord encoded = encode_message(automaton.alphabet_size(), plaintext);
  return {plaintext.size(), act(automaton, key, encoded)};
}

std::vector<std::uint8_t> meta_decrypt(const MealyAutomaton& automaton,
                                       std::span<const Generator> key, const Ciphertext& ct) {
  const std::size_t q = automaton.alphabet_size();
  if (ct.payload.size() != ct.header * digits_per_byte(q)) {
    throw Error(ErrorKind::decode_error, "payload length does not match header");
  }
  if (std::any_of(ct.payload.begin(), ct.payload.end(), [q](Letter x) { return x >= q; })) {
    throw Error(ErrorKind::decode_error, "symbol outside the alphabet");
  }
  return decode_message(q, act(automaton, inverse_word(key), ct.payload), ct.header);
}

// ---------------------------------------------------------------------------
// Commutator key agreement

AagExchange aag_exchange(const AagPublic& pub, std::span<const MetaBlock> a_blocks,
                         std::span<const MetaBlock> b_blocks) {
  AagExchange x;
  x.a_blocks.assign(a_blocks.begin(), a_blocks.end());
  x.b_blocks.assign(b_blocks.begin(), b_blocks.end());
  x.a = expand(pub.a_tuple, a_blocks);
  x.b = expand(pub.b_tuple, b_blocks);
  const GroupWord a_inv = inverse_word(x.a);
  const GroupWord b_inv = inverse_word(x.b);
  for (const GroupWord& bi : pub.b_tuple) {
    x.alice_transcript.push_back(free_reduce(concat(concat(a_inv, bi), x.a)));
  }
  for (const GroupWord& aj : pub.a_tuple) {
    x.bob_transcript.push_back(free_reduce(concat(concat(b_inv, aj), x.b)));
  }
  // Alice rebuilds b^-1 a b from Bob's conjugates, Bob rebuilds a^-1 b a from Alice's.
  x.alice_key = free_reduce(concat(a_inv, expand(x.bob_transcript, a_blocks)));
  x.bob_key = free_reduce(concat(inverse_word(expand(x.alice_transcript, b_blocks)), x.b));
  return x;
}

AagExchange aag_exchange(const AagPublic& pub, std::size_t alice_len, std::size_t bob_len,
                         Rng& rng) {
  if ((alice_len > 0 && pub.a_tuple.empty()) || (bob_len > 0 && pub.b_tuple.empty())) {
    throw Error(ErrorKind::empty_generator_set, "public tuple is empty");
  }
  const auto a_blocks = random_blocks(pub.a_tuple.size(), alice_len, rng);
  const auto b_blocks = random_blocks(pub.b_tuple.size(), bob_len, rng);
  return aag_exchange(pub, a_blocks, b_blocks);
}

// ---------------------------------------------------------------------------
// Word-problem bit cipher

WpPrivate wp_private(const OmegaSequence& omega, std::size_t state_cap) {
  return {omega, grigorchuk_omega(omega).materialize(state_cap)};
}

WpPublic wp_make_public(const WpPrivate& priv, std::vector<GroupWord> relators, GroupWord w0,
                        GroupWord w1, std::size_t len_cap, const DecisionBudget& budget) {
  const std::vector<StateId> gens{0, 1, 2, 3};
  const RewriteSystem checked = make_rewrite_system(priv.automaton, relators, gens, 0, budget);
  if (!is_identity(priv.automaton, w1, budget)) {
    throw Error(ErrorKind::invalid_seed_words, "w1 is not the identity");
  }
  if (is_identity(priv.automaton, w0, budget)) {
    throw Error(ErrorKind::invalid_seed_words, "w0 is the identity, so it equals w1");
  }
  WpPublic pub;
  for (const Relator& r : checked.relators()) pub.relators.push_back(r.word);
  pub.w0 = std::move(w0);
  pub.w1 = std::move(w1);
  pub.len_cap = len_cap != 0 ? len_cap
                             : std::max(8 * std::max(pub.w0.size(), pub.w1.size()),
                                        longest(pub.relators));
  return pub;
}

WpKeys wp_keygen(const OmegaSequence& omega, const WpParams& params, Rng& rng,
                 const DecisionBudget& budget) {
  WpPrivate priv = wp_private(omega);
  auto relators = grigorchuk_omega_relators(priv.automaton, params.max_order, budget);
  const std::vector<StateId> gens{0, 1, 2, 3};
  GroupWord w0;
  do {
    w0 = random_word(gens, std::max<std::size_t>(1, params.w0_len), rng);
  } while (is_identity(priv.automaton, w0, budget));
  const GroupWord g = random_word(gens, params.conjugator_len, rng);
  const GroupWord& r = relators[rng.below(relators.size())];
  GroupWord w1 = free_reduce(concat(concat(g, r), inverse_word(g)));
  WpPublic pub =
      wp_make_public(priv, std::move(relators), std::move(w0), std::move(w1), params.len_cap, budget);
  return {std::move(pub), std::move(priv)};
}

RewriteSystem wp_rewrite_system(const WpPublic& pub) {
  return RewriteSystem(as_relators(pub.relators), {0, 1, 2, 3}, pub.len_cap);
}

GroupWord wp_encrypt_bit(const WpPublic& pub, const RewriteSystem& rs, int bit, std::size_t steps,
                         Rng& rng) {
  if (bit != 0 && bit != 1) throw Error(ErrorKind::invalid_argument, "bit must be 0 or 1");
  return obfuscate(bit == 1 ? pub.w1 : pub.w0, rs, steps, rng).word;
}

GroupWord wp_encrypt_bit(const WpPublic& pub, int bit, std::size_t steps, Rng& rng) {
  return wp_encrypt_bit(pub, wp_rewrite_system(pub), bit, steps, rng);
}

int wp_decrypt_bit(const WpPrivate& priv, const WpPublic& pub, std::span<const Generator> word,
                   const DecisionBudget& budget) {
  for (const Generator g : word) {
    if (g.state > 4) throw Error(ErrorKind::undecodable, "word uses an unknown generator");
  }
  if (is_identity(priv.automaton, word, budget)) return 1;
  if (are_equal(priv.automaton, word, pub.w0, budget)) return 0;
  throw Error(ErrorKind::undecodable, "ciphertext word is in neither class");
}

}  // namespace autgrp
