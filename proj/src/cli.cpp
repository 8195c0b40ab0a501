#include "autgrp/cli.hpp"

#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "autgrp/errors.hpp"
#include "autgrp/experiments.hpp"
#include "autgrp/io.hpp"
#include "autgrp/platforms.hpp"
#include "autgrp/protocols.hpp"

namespace autgrp {

namespace {

constexpr std::size_t kVerifyDepth = 14;

struct PlatformArgs {
  std::string preset = "grigorchuk";
  std::string automaton_file;
  std::string omega = "|012";
  std::string affine;  // JSON text or file
  std::size_t lp_depth = 2;
  std::size_t state_cap = 4096;
};

struct Options {
  std::uint64_t seed = 1;
  std::size_t budget_states = std::size_t{1} << 20;
  std::size_t depth = 16;
  std::string format = "json";

  PlatformArgs platform;
  MetaParams meta;
  std::size_t verify_budget = std::size_t{1} << 16;

  std::string word, word2, input;
  bool restrict_too = false;
  std::string out_file, in_file;
  std::string public_file, private_file, handshake_file, session_file, out_dir;
  std::string public_out, private_out, handshake_out;
  std::size_t payload_bytes = 1024;

  std::size_t alice_len = 4, bob_len = 4;

  std::string bits;
  std::size_t bit_count = 16;
  std::size_t steps = 50;
  WpParams wp;

  std::size_t N = 6, samples = 10000;
  bool diagonal = false;
  std::size_t max_len = 0, cap = 100000;
  std::size_t h_len = 8, message_len = 256;
};

DecisionBudget budget_of(const Options& o) {
  DecisionBudget b;
  b.max_states = o.budget_states;
  b.max_depth = o.depth;
  return b;
}

std::string text_or_file(const std::string& arg) {
  if (!arg.empty() && arg.front() != '{' && std::filesystem::exists(arg)) {
    const auto bytes = read_bytes(arg);
    return {bytes.begin(), bytes.end()};
  }
  return arg;
}

PresetOptions preset_options(const PlatformArgs& p) {
  PresetOptions po;
  po.omega = OmegaSequence::parse(p.omega);
  if (!p.affine.empty()) po.affine = affine_spec_from_json(parse_json(text_or_file(p.affine)));
  po.lpresentation_depth = p.lp_depth;
  po.state_cap = p.state_cap;
  return po;
}

Platform load_platform(const Options& o) {
  if (!o.platform.automaton_file.empty()) {
    Platform p;
    p.preset = "file";
    p.automaton = automaton_from_json(read_json_file(o.platform.automaton_file));
    if (p.automaton.valid()) p.generators = p.automaton.nontrivial_states();
    return p;
  }
  return make_preset(o.platform.preset, preset_options(o.platform), budget_of(o));
}

Json platform_json(const Options& o, const Platform& p) {
  Json j;
  j["preset"] = p.preset;
  if (p.preset == "grigorchuk") j["lpresentation_depth"] = o.platform.lp_depth;
  if (p.preset == "grigorchuk-omega") j["omega"] = p.options.omega.to_string();
  if (p.preset == "affine") j["affine"] = affine_spec_to_json(p.options.affine);
  return j;
}

void emit(std::ostream& out, const std::string& path, const Json& j) {
  if (path.empty()) {
    out << j.dump(2) << "\n";
  } else {
    write_json_file(path, j);
  }
}

// ---------------------------------------------------------------------------
// Key files

Json params_json(const MetaParams& p) {
  Json j;
  j["A_len"] = p.A_len;
  j["obf_steps"] = p.obf_steps ? Json(*p.obf_steps) : Json(nullptr);
  j["len_cap"] = p.len_cap ? Json(*p.len_cap) : Json(nullptr);
  j["u_blocks"] = p.u_blocks;
  j["test_words"] = p.test_words;
  j["test_len"] = p.test_len;
  j["sweep_depth"] = p.sweep_depth;
  j["max_retries"] = p.max_retries;
  j["weights"] = {{"factor_swap", p.weights.factor_swap},
                  {"free_insert", p.weights.free_insert},
                  {"free_cancel", p.weights.free_cancel},
                  {"relator", p.weights.relator}};
  return j;
}

MetaParams params_from_json(const Json& j) {
  MetaParams p;
  try {
    p.A_len = j.value("A_len", p.A_len);
    if (j.contains("obf_steps") && !j.at("obf_steps").is_null()) {
      p.obf_steps = j.at("obf_steps").get<std::size_t>();
    }
    if (j.contains("len_cap") && !j.at("len_cap").is_null()) {
      p.len_cap = j.at("len_cap").get<std::size_t>();
    }
    p.u_blocks = j.value("u_blocks", p.u_blocks);
    p.test_words = j.value("test_words", p.test_words);
    p.test_len = j.value("test_len", p.test_len);
    p.sweep_depth = j.value("sweep_depth", p.sweep_depth);
    p.max_retries = j.value("max_retries", p.max_retries);
    if (j.contains("weights")) {
      const Json& w = j.at("weights");
      p.weights.factor_swap = w.value("factor_swap", p.weights.factor_swap);
      p.weights.free_insert = w.value("free_insert", p.weights.free_insert);
      p.weights.free_cancel = w.value("free_cancel", p.weights.free_cancel);
      p.weights.relator = w.value("relator", p.weights.relator);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, e.what());
  }
  return p;
}

Json public_json(const MetaPublicKey& pub, const Json& platform) {
  Json j;
  if (!platform.is_null()) j["platform"] = platform;
  j["automaton"] = automaton_to_json(pub.automaton);
  Json gens = Json::array();
  for (StateId s : pub.generators) gens.push_back(pub.automaton.state_name(s));
  j["generators"] = gens;
  j["base_tuple"] = words_to_json(pub.automaton, pub.base_tuple);
  std::vector<GroupWord> rel;
  for (const Relator& r : pub.relators) rel.push_back(r.word);
  j["relators"] = words_to_json(pub.automaton, rel);
  j["params"] = params_json(pub.params);
  return j;
}

MetaPublicKey public_from_json(const Json& j, const DecisionBudget& budget) {
  if (!j.contains("automaton") || !j.contains("base_tuple") || !j.contains("relators")) {
    throw Error(ErrorKind::parse_error, "public key needs automaton, base_tuple and relators");
  }
  MealyAutomaton m = automaton_from_json(j.at("automaton"));
  std::vector<StateId> gens;
  if (j.contains("generators")) {
    for (const auto& g : j.at("generators")) gens.push_back(m.state(g.get<std::string>()));
  } else if (m.valid()) {
    gens = m.nontrivial_states();
  }
  auto base = words_from_json(m, j.at("base_tuple"));
  auto rel = words_from_json(m, j.at("relators"));
  const MetaParams params = j.contains("params") ? params_from_json(j.at("params")) : MetaParams{};
  return make_meta_public(m, std::move(gens), std::move(base), rel, params, budget);
}

GroupWord word_field(const MealyAutomaton& m, const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::parse_error, std::string("missing field ") + key);
  return parse_word(m, j.at(key).get<std::string>());
}

MetaPublicKey public_for(const Options& o, Json* platform_out) {
  if (!o.public_file.empty()) {
    const Json j = read_json_file(o.public_file);
    if (platform_out && j.contains("platform")) *platform_out = j.at("platform");
    return public_from_json(j, budget_of(o));
  }
  const Platform p = load_platform(o);
  if (platform_out) *platform_out = platform_json(o, p);
  return meta_public_from_platform(p, o.meta, budget_of(o));
}

std::string verification_mode(const Verification& v) {
  return v.exact ? "exact" : "verified-at-depth-" + std::to_string(v.depth);
}

Json ciphertext_json(const Alphabet& alpha, const Ciphertext& ct) {
  return {{"header", ct.header}, {"payload", format_input(alpha, ct.payload)}};
}

Ciphertext ciphertext_from_json(const Alphabet& alpha, const Json& j) {
  try {
    return {j.at("header").get<std::size_t>(), parse_input(alpha, j.at("payload").get<std::string>())};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, e.what());
  }
}

GroupWord session_key(const MealyAutomaton& m, const Json& session) {
  if (session.contains("u")) return word_field(m, session, "u");
  if (session.contains("U")) return word_field(m, session, "U");
  throw Error(ErrorKind::parse_error, "session file needs \"u\" or \"U\"");
}

// ---------------------------------------------------------------------------
// Commands

int cmd_validate(const Options& o, std::ostream& out) {
  const Platform p = load_platform(o);
  const ValidationReport r = validate(p.automaton);
  Json j;
  j["valid"] = r.accepted();
  j["total"] = r.total;
  Json missing = Json::array();
  for (auto [s, x] : r.missing) {
    missing.push_back({p.automaton.state_name(s), p.automaton.alphabet().symbol(x)});
  }
  j["missing"] = missing;
  Json bad = Json::array();
  for (StateId s : r.not_permutation) bad.push_back(p.automaton.state_name(s));
  j["not_permutation"] = bad;
  j["messages"] = r.messages;
  out << j.dump(2) << "\n";
  return r.accepted() ? 0 : 1;
}

int cmd_invert(const Options& o, std::ostream& out) {
  const Platform p = load_platform(o);
  emit(out, o.out_file, automaton_to_json(invert(p.automaton)));
  return 0;
}

int cmd_act(const Options& o, std::ostream& out) {
  const Platform p = load_platform(o);
  const GroupWord w = parse_word(p.automaton, o.word);
  const InputWord u = parse_input(p.automaton.alphabet(), o.input);
  Json j;
  j["word"] = format_word(p.automaton, w);
  j["input"] = format_input(p.automaton.alphabet(), u);
  j["output"] = format_input(p.automaton.alphabet(), act(p.automaton, w, u));
  if (o.restrict_too) j["section"] = format_word(p.automaton, restrict(p.automaton, w, u));
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_wp_check(const Options& o, std::ostream& out) {
  const Platform p = load_platform(o);
  GroupWord probe = parse_word(p.automaton, o.word);
  if (!o.word2.empty()) probe = concat(probe, inverse_word(parse_word(p.automaton, o.word2)));
  const IdentityDecision d = decide_identity(p.automaton, probe, budget_of(o));
  Json j;
  j["result"] = d.identity;
  j["explored_states"] = d.explored_states;
  if (!d.identity) j["witness_depth"] = d.witness_depth;
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_platform_export(const Options& o, std::ostream& out) {
  const Platform p = load_platform(o);
  emit(out, o.out_file, automaton_to_json(p.automaton));
  return 0;
}

int cmd_keygen(const Options& o, std::ostream& out) {
  Json platform;
  const MetaPublicKey pub = public_for(o, &platform);
  Rng rng(o.seed);
  const MetaKeygen kg = meta_alice_keygen(pub, rng);
  const Json pub_j = public_json(pub, platform);
  const Json priv_j = {{"A", format_word(pub.automaton, kg.priv.A)}};
  const Json hs_j = {{"c_tuple", words_to_json(pub.automaton, kg.c_tuple)}};
  if (!o.public_out.empty()) write_json_file(o.public_out, pub_j);
  if (!o.private_out.empty()) write_json_file(o.private_out, priv_j);
  if (!o.handshake_out.empty()) write_json_file(o.handshake_out, hs_j);
  if (o.public_out.empty() && o.private_out.empty() && o.handshake_out.empty()) {
    out << Json{{"public", pub_j}, {"private", priv_j}, {"handshake", hs_j}}.dump(2) << "\n";
  } else {
    out << Json{{"A_len", kg.priv.A.size()}, {"base_tuple", pub.base_tuple.size()},
                {"relators", pub.relators.size()}}
               .dump(2)
        << "\n";
  }
  return 0;
}

int cmd_exchange(const Options& o, std::ostream& out) {
  Json platform;
  const MetaPublicKey pub = public_for(o, &platform);
  const MealyAutomaton& m = pub.automaton;
  Rng rng(o.seed);

  MetaPrivateKey priv;
  std::vector<GroupWord> c_tuple;
  if (!o.private_file.empty()) {
    priv.A = word_field(m, read_json_file(o.private_file), "A");
    c_tuple = o.handshake_file.empty()
                  ? meta_conjugate_tuple(pub, priv.A, rng)
                  : words_from_json(m, read_json_file(o.handshake_file).at("c_tuple"));
  } else {
    if (!o.handshake_file.empty()) {
      throw Error(ErrorKind::invalid_argument, "--handshake needs --private");
    }
    MetaKeygen kg = meta_alice_keygen(pub, rng);
    priv = std::move(kg.priv);
    c_tuple = std::move(kg.c_tuple);
  }

  const BobSession bob = meta_bob_session(pub, c_tuple, rng);
  const GroupWord U = meta_alice_session(priv, bob.uA);

  DecisionBudget vb = budget_of(o);
  vb.max_states = o.verify_budget;
  const Verification v = verify_equal(m, U, bob.u, vb, kVerifyDepth);

  std::vector<std::uint8_t> payload(o.payload_bytes);
  for (auto& byte : payload) byte = static_cast<std::uint8_t>(rng.below(256));
  const Ciphertext to_alice = meta_encrypt(m, bob.u, payload);
  const Ciphertext to_bob = meta_encrypt(m, U, payload);
  const bool round_trip = meta_decrypt(m, U, to_alice) == payload &&
                          meta_decrypt(m, bob.u, to_bob) == payload;

  Json t;
  if (!platform.is_null()) t["platform"] = platform;
  t["seed"] = o.seed;
  t["A"] = format_word(m, priv.A);
  t["c_tuple"] = words_to_json(m, c_tuple);
  Json blocks = Json::array();
  for (const MetaBlock& b : bob.blocks) blocks.push_back(b.inverse ? -static_cast<long>(b.index + 1)
                                                                   : static_cast<long>(b.index + 1));
  t["u_blocks"] = blocks;
  t["u"] = format_word(m, bob.u);
  t["uA"] = format_word(m, bob.uA);
  t["U"] = format_word(m, U);
  t["attempts"] = bob.attempts;
  t["witness"] = format_input(m.alphabet(), bob.witness);
  t["payload_bytes"] = payload.size();
  t["ciphertext_hash"] = fnv1a_hex(format_input(m.alphabet(), to_alice.payload));
  const std::string hash = fnv1a_hex(t.dump());

  Json report = t;
  report["verification"] = {{"holds", v.holds}, {"mode", verification_mode(v)}};
  report["round_trip"] = round_trip;
  report["transcript_hash"] = hash;

  if (!o.out_dir.empty()) {
    std::filesystem::create_directories(o.out_dir);
    const std::filesystem::path dir(o.out_dir);
    write_json_file((dir / "public.json").string(), public_json(pub, platform));
    write_json_file((dir / "private.json").string(), {{"A", t["A"]}});
    write_json_file((dir / "handshake.json").string(), {{"c_tuple", t["c_tuple"]}, {"uA", t["uA"]}});
    write_json_file((dir / "session_bob.json").string(), {{"u", t["u"]}});
    write_json_file((dir / "session_alice.json").string(), {{"U", t["U"]}});
    write_json_file((dir / "transcript.json").string(), t);
    write_json_file((dir / "report.json").string(), report);
  }
  out << report.dump(2) << "\n";
  return v.holds && round_trip ? 0 : 1;
}

int cmd_encrypt(const Options& o, std::ostream& out) {
  const MetaPublicKey pub = public_from_json(read_json_file(o.public_file), budget_of(o));
  const GroupWord key = session_key(pub.automaton, read_json_file(o.session_file));
  const auto bytes = read_bytes(o.in_file);
  emit(out, o.out_file, ciphertext_json(pub.automaton.alphabet(), meta_encrypt(pub.automaton, key, bytes)));
  return 0;
}

int cmd_decrypt(const Options& o, std::ostream& out) {
  const MetaPublicKey pub = public_from_json(read_json_file(o.public_file), budget_of(o));
  const GroupWord key = session_key(pub.automaton, read_json_file(o.session_file));
  const Ciphertext ct = ciphertext_from_json(pub.automaton.alphabet(), read_json_file(o.in_file));
  const auto bytes = meta_decrypt(pub.automaton, key, ct);
  if (o.out_file.empty()) {
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  } else {
    write_bytes(o.out_file, bytes);
  }
  return 0;
}

int cmd_aag_demo(const Options& o, std::ostream& out) {
  const Platform p = load_platform(o);
  const MealyAutomaton& m = p.automaton;
  AagPublic pub;
  for (StateId s : p.generators) {
    pub.a_tuple.push_back({{s, false}});
    pub.b_tuple.push_back({{s, false}});
  }
  Rng rng(o.seed);
  const AagExchange x = aag_exchange(pub, o.alice_len, o.bob_len, rng);
  const Verification v = verify_equal(m, x.alice_key, x.bob_key, budget_of(o), kVerifyDepth);
  Json j;
  j["a"] = format_word(m, x.a);
  j["b"] = format_word(m, x.b);
  j["alice_transcript"] = words_to_json(m, x.alice_transcript);
  j["bob_transcript"] = words_to_json(m, x.bob_transcript);
  j["alice_key"] = format_word(m, x.alice_key);
  j["bob_key"] = format_word(m, x.bob_key);
  j["keys_equal"] = v.holds;
  j["mode"] = verification_mode(v);
  out << j.dump(2) << "\n";
  return v.holds ? 0 : 1;
}

int cmd_wp_cipher_demo(const Options& o, std::ostream& out) {
  Rng rng(o.seed);
  const OmegaSequence omega = OmegaSequence::parse(o.platform.omega);
  const WpKeys keys = wp_keygen(omega, o.wp, rng, budget_of(o));
  const MealyAutomaton& m = keys.priv.automaton;
  std::vector<int> bits;
  if (!o.bits.empty()) {
    for (char c : o.bits) {
      if (c != '0' && c != '1') throw Error(ErrorKind::parse_error, "--bits takes 0 and 1 only");
      bits.push_back(c - '0');
    }
  } else {
    for (std::size_t i = 0; i < o.bit_count; ++i) bits.push_back(static_cast<int>(rng.below(2)));
  }
  const RewriteSystem rs = wp_rewrite_system(keys.pub);
  Json results = Json::array();
  bool ok = true;
  for (int bit : bits) {
    const GroupWord c = wp_encrypt_bit(keys.pub, rs, bit, o.steps, rng);
    const int back = wp_decrypt_bit(keys.priv, keys.pub, c, budget_of(o));
    ok = ok && back == bit;
    results.push_back({{"bit", bit}, {"ciphertext", format_word(m, c)}, {"decrypted", back}});
  }
  Json j;
  j["omega"] = omega.to_string();
  j["w0"] = format_word(m, keys.pub.w0);
  j["w1"] = format_word(m, keys.pub.w1);
  j["relators"] = words_to_json(m, keys.pub.relators);
  j["results"] = results;
  j["all_correct"] = ok;
  out << j.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_experiment_commute(const Options& o, std::ostream& out) {
  const Platform p = load_platform(o);
  CommuteOptions co;
  co.N = o.N;
  co.samples = o.samples;
  co.diagonal = o.diagonal;
  co.budget = budget_of(o);
  co.fallback_depth = o.depth;
  const CommuteRow row = commute_experiment(p.automaton, p.generators, co, Rng(o.seed));
  if (o.format == "json") {
    out << Json{{"N", row.N},
                {"samples", row.samples},
                {"noncommuting_fraction", row.noncommuting_fraction},
                {"undecided_fraction", row.undecided_fraction}}
               .dump(2)
        << "\n";
  } else {
    out << commute_csv_header() << "\n" << to_csv(row) << "\n";
  }
  return 0;
}

int cmd_experiment_rewrite_space(const Options& o, std::ostream& out) {
  const Platform p = load_platform(o);
  const RewriteSystem rs =
      make_rewrite_system(p.automaton, p.relators, p.generators, o.max_len, budget_of(o));
  const GroupWord w = parse_word(p.automaton, o.word);
  const BallGrowth g = reachable_count(w, rs, o.steps, o.cap);
  if (o.format == "json") {
    out << Json{{"counts", g.counts}, {"truncated", g.truncated}}.dump(2) << "\n";
  } else {
    out << rewrite_space_csv(g);
  }
  return 0;
}

int cmd_experiment_hamming(const Options& o, std::ostream& out) {
  const Platform p = load_platform(o);
  const HammingRow row =
      hamming_experiment(p.automaton, p.generators, o.h_len, o.samples, o.message_len, Rng(o.seed));
  if (o.format == "json") {
    out << Json{{"h_len", row.h_len},
                {"samples", row.samples},
                {"message_len", row.message_len},
                {"mean_distance", row.mean_distance},
                {"max_distance", row.max_distance}}
               .dump(2)
        << "\n";
  } else {
    out << hamming_csv_header() << "\n" << to_csv(row) << "\n";
  }
  return 0;
}

void add_platform_options(CLI::App* cmd, PlatformArgs& p) {
  cmd->add_option("--preset", p.preset, "grigorchuk, grigorchuk-omega, basilica2, basilica3, affine")
      ->capture_default_str();
  cmd->add_option("--automaton", p.automaton_file, "automaton JSON file (overrides --preset)");
  cmd->add_option("--omega", p.omega, "omega as pre|period over {0,1,2}")->capture_default_str();
  cmd->add_option("--affine", p.affine, "affine spec JSON text or file, e.g. {\"n\":2,\"d\":1,\"M\":[[3]]}");
  cmd->add_option("--lp-depth", p.lp_depth, "substitution depth for the Grigorchuk relators")
      ->capture_default_str();
  cmd->add_option("--state-cap", p.state_cap, "state cap when materialising lazy transducers")
      ->capture_default_str();
}

void add_meta_options(CLI::App* cmd, MetaParams& m) {
  cmd->add_option("--a-len", m.A_len, "length of the private word A")->capture_default_str();
  cmd->add_option("--obf-steps", m.obf_steps, "rewrite steps per conjugate (default 10|w|)");
  cmd->add_option("--len-cap", m.len_cap, "word length cap while rewriting (default max(8|w|, longest relator))");
  cmd->add_option("--u-blocks", m.u_blocks, "number of blocks in Bob's key")->capture_default_str();
  cmd->add_option("--test-words", m.test_words, "random test words per attempt")->capture_default_str();
  cmd->add_option("--test-len", m.test_len, "length of random test words")->capture_default_str();
  cmd->add_option("--max-retries", m.max_retries, "attempts before Rejected")->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Automaton group toolkit: word problem, rewriting and group-based cryptosystems",
               "autgrp"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--budget-states", o.budget_states, "composed-state cap for exact word problem")
      ->capture_default_str();
  app.add_option("--depth", o.depth, "depth for bounded identity tests")->capture_default_str();
  app.add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "check totality and invertibility");
  add_platform_options(validate_cmd, o.platform);

  auto* invert_cmd = app.add_subcommand("invert", "print the inverse automaton");
  add_platform_options(invert_cmd, o.platform);
  invert_cmd->add_option("--out", o.out_file, "output file");

  auto* act_cmd = app.add_subcommand("act", "apply a group word to an input word");
  add_platform_options(act_cmd, o.platform);
  act_cmd->add_option("--word", o.word, "group word, e.g. \"a b^-1\"")->required();
  act_cmd->add_option("--input", o.input, "input word, e.g. 0110")->required();
  act_cmd->add_flag("--restrict", o.restrict_too, "also print the section at the input");

  auto* wp_cmd = app.add_subcommand("wp-check", "exact identity / equality test");
  add_platform_options(wp_cmd, o.platform);
  wp_cmd->add_option("--word", o.word, "group word")->required();
  wp_cmd->add_option("--equal", o.word2, "compare against this word instead of the identity");

  auto* platform_cmd = app.add_subcommand("platform", "platform utilities");
  platform_cmd->require_subcommand(1);
  auto* export_cmd = platform_cmd->add_subcommand("export", "write a platform as automaton JSON");
  add_platform_options(export_cmd, o.platform);
  export_cmd->add_option("--out", o.out_file, "output file");

  auto* keygen_cmd = app.add_subcommand("keygen", "public key, private A and conjugate tuple");
  add_platform_options(keygen_cmd, o.platform);
  add_meta_options(keygen_cmd, o.meta);
  keygen_cmd->add_option("--public", o.public_file, "existing public key file");
  keygen_cmd->add_option("--public-out", o.public_out, "write public key here");
  keygen_cmd->add_option("--private-out", o.private_out, "write private key here");
  keygen_cmd->add_option("--handshake-out", o.handshake_out, "write conjugate tuple here");

  auto* exchange_cmd = app.add_subcommand("exchange", "full key exchange with round-trip self test");
  add_platform_options(exchange_cmd, o.platform);
  add_meta_options(exchange_cmd, o.meta);
  exchange_cmd->add_option("--public", o.public_file, "public key file");
  exchange_cmd->add_option("--private", o.private_file, "private key file");
  exchange_cmd->add_option("--handshake", o.handshake_file, "handshake file with c_tuple");
  exchange_cmd->add_option("--out-dir", o.out_dir, "directory for keys, sessions and report");
  exchange_cmd->add_option("--payload-bytes", o.payload_bytes, "self-test payload size")
      ->capture_default_str();
  exchange_cmd->add_option("--verify-budget", o.verify_budget, "state cap for checking U = u")
      ->capture_default_str();

  auto* encrypt_cmd = app.add_subcommand("encrypt", "encrypt a file with a session key");
  encrypt_cmd->add_option("--public", o.public_file, "public key file")->required();
  encrypt_cmd->add_option("--session", o.session_file, "session file with u or U")->required();
  encrypt_cmd->add_option("--in", o.in_file, "plaintext file")->required();
  encrypt_cmd->add_option("--out", o.out_file, "ciphertext file");

  auto* decrypt_cmd = app.add_subcommand("decrypt", "decrypt a ciphertext file");
  decrypt_cmd->add_option("--public", o.public_file, "public key file")->required();
  decrypt_cmd->add_option("--session", o.session_file, "session file with u or U")->required();
  decrypt_cmd->add_option("--in", o.in_file, "ciphertext file")->required();
  decrypt_cmd->add_option("--out", o.out_file, "plaintext file");

  auto* aag_cmd = app.add_subcommand("aag-demo", "commutator key agreement");
  add_platform_options(aag_cmd, o.platform);
  aag_cmd->add_option("--alice-len", o.alice_len, "blocks in Alice's word")->capture_default_str();
  aag_cmd->add_option("--bob-len", o.bob_len, "blocks in Bob's word")->capture_default_str();

  auto* wpc_cmd = app.add_subcommand("wp-cipher-demo", "word-problem bit cipher over G_omega");
  wpc_cmd->add_option("--omega", o.platform.omega, "secret omega as pre|period")->capture_default_str();
  wpc_cmd->add_option("--bits", o.bits, "bit string to encrypt");
  wpc_cmd->add_option("--count", o.bit_count, "random bits when --bits is absent")->capture_default_str();
  wpc_cmd->add_option("--steps", o.steps, "rewrite steps per bit")->capture_default_str();
  wpc_cmd->add_option("--w0-len", o.wp.w0_len, "length of the bit-0 seed word")->capture_default_str();

  auto* exp_cmd = app.add_subcommand("experiment", "measurement harnesses (CSV by default)");
  exp_cmd->require_subcommand(1);
  auto* commute_cmd = exp_cmd->add_subcommand(
      "commute", "fraction of non-commuting pairs; CSV N,samples,noncommuting_fraction,undecided_fraction");
  add_platform_options(commute_cmd, o.platform);
  commute_cmd->add_option("--N", o.N, "maximum word length")->capture_default_str();
  commute_cmd->add_option("--samples", o.samples, "number of pairs")->capture_default_str();
  commute_cmd->add_flag("--diagonal", o.diagonal, "control: use u = A");
  auto* rewrite_cmd =
      exp_cmd->add_subcommand("rewrite-space", "rewrite ball growth; CSV step,count,truncated");
  add_platform_options(rewrite_cmd, o.platform);
  rewrite_cmd->add_option("--word", o.word, "start word")->required();
  rewrite_cmd->add_option("--steps", o.steps, "number of steps")->capture_default_str();
  rewrite_cmd->add_option("--cap", o.cap, "stop growing past this many words")->capture_default_str();
  rewrite_cmd->add_option("--max-len", o.max_len, "word length cap (0 = longest relator)")
      ->capture_default_str();
  auto* hamming_cmd = exp_cmd->add_subcommand(
      "hamming", "distance between M and h(M); CSV h_len,samples,message_len,mean_distance,max_distance");
  add_platform_options(hamming_cmd, o.platform);
  hamming_cmd->add_option("--h-len", o.h_len, "length of h")->capture_default_str();
  hamming_cmd->add_option("--samples", o.samples, "number of samples")->capture_default_str();
  hamming_cmd->add_option("--message-len", o.message_len, "message length in letters")
      ->capture_default_str();

  bool format_given = false;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    format_given = app.count("--format") > 0;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << Json{{"error", "ParseError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  if (!format_given && exp_cmd->parsed()) o.format = "csv";
  if (o.budget_states == 0 || o.depth == 0) {
    err << Json{{"error", "InvalidArgument"}, {"message", "budgets must be >= 1"}}.dump() << "\n";
    return 2;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (invert_cmd->parsed()) return cmd_invert(o, out);
    if (act_cmd->parsed()) return cmd_act(o, out);
    if (wp_cmd->parsed()) return cmd_wp_check(o, out);
    if (export_cmd->parsed()) return cmd_platform_export(o, out);
    if (keygen_cmd->parsed()) return cmd_keygen(o, out);
    if (exchange_cmd->parsed()) return cmd_exchange(o, out);
    if (encrypt_cmd->parsed()) return cmd_encrypt(o, out);
    if (decrypt_cmd->parsed()) return cmd_decrypt(o, out);
    if (aag_cmd->parsed()) return cmd_aag_demo(o, out);
    if (wpc_cmd->parsed()) return cmd_wp_cipher_demo(o, out);
    if (commute_cmd->parsed()) return cmd_experiment_commute(o, out);
    if (rewrite_cmd->parsed()) return cmd_experiment_rewrite_space(o, out);
    if (hamming_cmd->parsed()) return cmd_experiment_hamming(o, out);
  } catch (const Error& e) {
    err << Json{{"error", e.name()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << Json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace autgrp
