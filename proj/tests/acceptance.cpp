// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "autgrp/cli.hpp"
#include "autgrp/errors.hpp"
#include "autgrp/experiments.hpp"
#include "autgrp/mealy.hpp"
#include "autgrp/platforms.hpp"
#include "autgrp/protocols.hpp"
#include "autgrp/rewriting.hpp"
#include "autgrp/wordproblem.hpp"
#include "oracles.hpp"

using namespace autgrp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Counts failures and keeps the first message.
struct Tally {
  std::size_t checks = 0, failures = 0;
  std::string first;
  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  Outcome outcome(const std::string& extra = "") const {
    std::string d = std::to_string(checks) + " checks, " + std::to_string(failures) + " failures";
    if (!extra.empty()) d += ", " + extra;
    if (failures) d += ", first: " + first;
    return {failures == 0, d};
  }
};

std::vector<std::uint8_t> random_bytes(std::size_t n, Rng& rng) {
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.below(256));
  return out;
}

InputWord random_input(std::size_t q, std::size_t len, Rng& rng) {
  InputWord u(len);
  for (auto& x : u) x = static_cast<Letter>(rng.below(q));
  return u;
}

GroupWord all_generators_word(const std::vector<StateId>& gens, std::size_t len, Rng& rng) {
  GroupWord w(len);
  for (auto& g : w) g = {gens[rng.below(gens.size())], rng.below(2) == 1};
  return w;
}

// 1. action algebra
Outcome criterion1() {
  std::vector<std::pair<std::string, MealyAutomaton>> groups;
  groups.emplace_back("grigorchuk", grigorchuk_automaton());
  groups.emplace_back("basilica2", basilica(2));
  groups.emplace_back("basilica3", basilica(3));
  groups.emplace_back("odometer", affine_group(AffineSpec{2, 1, {{1}}}).transducer.materialize(8));
  Tally t;
  std::size_t pairs = 0;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const auto& [name, m] = groups[k];
    const auto gens = m.nontrivial_states();
    Rng rng(100 + k);
    for (int i = 0; i < 2500; ++i, ++pairs) {
      const auto w1 = all_generators_word(gens, rng.below(13), rng);
      const auto w2 = all_generators_word(gens, rng.below(13), rng);
      const auto u = random_input(m.alphabet_size(), rng.below(17), rng);
      const auto v = random_input(m.alphabet_size(), rng.below(9), rng);
      const auto w = concat(w1, w2);
      const auto wu = act(m, w1, u);
      t.check(wu.size() == u.size(), name + ": length");
      InputWord uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      const auto wuv = act(m, w1, uv);
      t.check(std::equal(wu.begin(), wu.end(), wuv.begin()), name + ": prefix");
      const auto tail = act(m, restrict(m, w1, u), v);
      t.check(std::equal(tail.begin(), tail.end(), wuv.begin() + static_cast<long>(u.size())),
              name + ": section");
      t.check(act(m, w, u) == act(m, w2, wu), name + ": composition");
      t.check(act(m, inverse_word(w1), wu) == u, name + ": inverse");
      t.check(act(m, w1, act(m, inverse_word(w1), u)) == u, name + ": inverse on the left");
    }
  }
  return t.outcome(std::to_string(pairs) + " pairs");
}

// 2. word problem soundness, exhaustive to length 5
Outcome criterion2() {
  const auto g = grigorchuk_automaton();
  const auto gens = g.nontrivial_states();
  std::vector<Generator> letters;
  for (StateId s : gens) letters.push_back({s, false}), letters.push_back({s, true});
  Tally t;
  std::size_t identities = 0;
  std::vector<GroupWord> layer{{}};
  for (std::size_t len = 0; len <= 5; ++len) {
    for (const auto& w : layer) {
      const bool exact = is_identity(g, w);
      const std::size_t reach = reachable_state_count(g, w);
      t.check(exact == acts_trivially_to_depth(g, w, reach), "depth test at " + format_word(g, w));
      // Independent recursion on every input of length <= 8.
      std::string letters_str;
      for (const auto& x : w) letters_str += g.state_name(x.state);
      bool oracle_trivial = true;
      for (std::size_t n = 1; n <= 8 && oracle_trivial; ++n) {
        for (const auto& u : oracle::all_inputs(2, n)) {
          std::string s;
          for (Letter x : u) s += static_cast<char>('0' + x);
          if (oracle::grig_word(letters_str, s) != s) { oracle_trivial = false; break; }
        }
      }
      if (exact) t.check(oracle_trivial, "oracle at " + format_word(g, w));
      identities += exact;
    }
    std::vector<GroupWord> next;
    if (len < 5) {
      for (const auto& w : layer) {
        for (const auto& x : letters) {
          auto v = w;
          v.push_back(x);
          next.push_back(std::move(v));
        }
      }
    }
    layer = std::move(next);
  }
  for (const char* r : {"a a", "b b", "c c", "d d", "b c d", "a d a d a d a d"}) {
    const auto w = parse_word(g, r);
    const auto v = verify_identity(g, w, DecisionBudget{}, 0);
    t.check(v.holds && v.exact, std::string("relator ") + r);
  }
  t.check(element_order(g, parse_word(g, "a d"), 64) == std::optional<std::size_t>(4), "order(ad)");
  return t.outcome(std::to_string(identities) + " identities among words of length <= 5");
}

// 3. rewriting soundness
Outcome criterion3() {
  const auto plat = grigorchuk_first(2);
  const auto& g = plat.automaton;
  const auto gens = g.nontrivial_states();
  Rng rng(3);
  Tally t;
  std::size_t longest = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto w = all_generators_word(gens, rng.below(9), rng);
    const auto o = obfuscate(w, plat.rewriting, rng.below(51), rng);
    longest = std::max(longest, o.word.size());
    const auto v = verify_equal(g, w, o.word, DecisionBudget{}, 0);
    t.check(v.holds && v.exact, "walk from " + format_word(g, w));
  }
  return t.outcome("longest output " + std::to_string(longest));
}

// 4. metascheme end to end
Outcome criterion4() {
  Tally t;
  std::string modes;
  for (const char* preset : {"grigorchuk", "basilica3", "affine"}) {
    PresetOptions po;
    po.affine = AffineSpec{2, 1, {{3}}};
    const auto plat = make_preset(preset, po);
    const auto pub = meta_public_from_platform(plat);
    const auto& m = pub.automaton;
    std::size_t exact = 0;
    const Rng root(4);
    for (std::uint64_t i = 0; i < 100; ++i) {
      Rng rng = root.split(i);
      const std::string tag = std::string(preset) + " session " + std::to_string(i);
      try {
        const auto kg = meta_alice_keygen(pub, rng);
        const auto bob = meta_bob_session(pub, kg.c_tuple, rng);
        const auto U = meta_alice_session(kg.priv, bob.uA);
        const auto v = verify_equal(m, U, bob.u, DecisionBudget{1u << 16}, 14);
        t.check(v.holds, tag + ": U != u");
        exact += v.exact;
        const auto msg = random_bytes(1024, rng);
        t.check(meta_decrypt(m, U, meta_encrypt(m, bob.u, msg)) == msg, tag + ": bob to alice");
        t.check(meta_decrypt(m, bob.u, meta_encrypt(m, U, msg)) == msg, tag + ": alice to bob");
      } catch (const Error& e) {
        t.check(false, tag + ": " + std::string(e.name()) + " " + e.what());
      }
    }
    modes += std::string(modes.empty() ? "" : ", ") + preset + " exact " + std::to_string(exact) + "/100";
  }
  return t.outcome(modes);
}

// 5. AAG
Outcome criterion5() {
  const auto g = grigorchuk_automaton();
  AagPublic pub;
  for (StateId s : g.nontrivial_states()) {
    pub.a_tuple.push_back({{s, false}});
    pub.b_tuple.push_back({{s, false}});
  }
  pub.a_tuple.push_back(parse_word(g, "a b"));
  pub.b_tuple.push_back(parse_word(g, "a d"));
  Rng rng(5);
  Tally t;
  for (int i = 0; i < 100; ++i) {
    const auto x = aag_exchange(pub, rng.below(5), rng.below(5), rng);
    const auto v = verify_equal(g, x.alice_key, x.bob_key, DecisionBudget{}, 0);
    t.check(v.holds && v.exact, "instance " + std::to_string(i));
  }
  return t.outcome();
}

// 6. word problem cipher
Outcome criterion6() {
  Rng rng(6);
  const auto keys = wp_keygen(OmegaSequence{}, WpParams{}, rng);
  const auto& m = keys.priv.automaton;
  const auto rs = wp_rewrite_system(keys.pub);
  Tally t;
  std::size_t tampered = 0;
  for (int i = 0; i < 200; ++i) {
    const int bit = static_cast<int>(rng.below(2));
    const auto c = wp_encrypt_bit(keys.pub, rs, bit, 50, rng);
    t.check(wp_decrypt_bit(keys.priv, keys.pub, c) == bit, "bit " + std::to_string(i));
    if (c.empty()) continue;
    GroupWord bad = c;
    const std::size_t pos = rng.below(bad.size());
    bad[pos].state = static_cast<StateId>((bad[pos].state + 1 + rng.below(3)) % 4);
    // Outside both classes by the bounded test alone, which never calls a
    // nontrivial element trivial.
    const bool not_one = !acts_trivially_to_depth(m, bad, 12);
    const bool not_zero = !acts_trivially_to_depth(m, concat(bad, inverse_word(keys.pub.w0)), 12);
    if (!(not_one && not_zero)) continue;
    ++tampered;
    bool undecodable = false;
    try {
      wp_decrypt_bit(keys.priv, keys.pub, bad);
    } catch (const Error& e) {
      undecodable = e.kind() == ErrorKind::undecodable;
    }
    t.check(undecodable, "tamper " + std::to_string(i));
  }
  t.check(tampered > 0, "no tampered ciphertext outside both classes");
  return t.outcome(std::to_string(tampered) + " tampered");
}

// 7. affine platform vs arithmetic
Outcome criterion7() {
  const std::vector<AffineSpec> specs{{2, 1, {{3}}}, {2, 2, {{1, 1}, {0, 1}}}, {3, 1, {{2}}},
                                      {3, 2, {{1, 1}, {1, 2}}}};
  Tally t;
  std::size_t cases = 0, relators = 0;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const auto& spec = specs[k];
    const std::size_t d = spec.d;
    const std::int64_t N = oracle::pow_int(spec.n, 8);
    const auto ap = affine_group(spec);
    const auto m = ap.transducer.materialize(4096);
    const auto pack = alphabet_packing(spec);
    const std::string tag = "n=" + std::to_string(spec.n) + " d=" + std::to_string(d);

    // M^-1 mod n^8.
    std::vector<std::vector<std::int64_t>> Minv(d, std::vector<std::int64_t>(d));
    const std::int64_t det_inv = oracle::inv_mod(spec.determinant(), N);
    if (d == 1) {
      Minv[0][0] = det_inv;
    } else {
      Minv[0][0] = oracle::mod(spec.M[1][1] * det_inv, N);
      Minv[0][1] = oracle::mod(-spec.M[0][1] * det_inv, N);
      Minv[1][0] = oracle::mod(-spec.M[1][0] * det_inv, N);
      Minv[1][1] = oracle::mod(spec.M[0][0] * det_inv, N);
    }
    auto mul = [&](const std::vector<std::vector<std::int64_t>>& A, std::vector<std::int64_t> x) {
      std::vector<std::int64_t> y(d, 0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) y[i] = oracle::mod(y[i] + oracle::mod(A[i][j], N) * x[j], N);
      return y;
    };

    Rng rng(70 + k);
    for (int i = 0; i < 1000; ++i, ++cases) {
      const auto w = all_generators_word(ap.generators, rng.below(7), rng);
      std::vector<std::int64_t> x(d);
      for (auto& c : x) c = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(N)));
      InputWord u(8);
      for (std::size_t pos = 0; pos < 8; ++pos) {
        std::vector<std::int64_t> digits(d);
        for (std::size_t j = 0; j < d; ++j) digits[j] = (x[j] / oracle::pow_int(spec.n, pos)) % spec.n;
        u[pos] = pack.pack(digits);
      }
      auto y = x;
      for (const auto& g : w) {
        if (g.state == static_cast<StateId>(d)) {
          y = mul(g.inverse ? Minv : spec.M, y);
        } else {
          y[g.state] = oracle::mod(y[g.state] + (g.inverse ? -1 : 1), N);
        }
      }
      const auto out = act(m, w, u);
      std::vector<std::int64_t> z(d, 0);
      for (std::size_t pos = 0; pos < 8; ++pos) {
        const auto digits = pack.unpack(out[pos]);
        for (std::size_t j = 0; j < d; ++j) z[j] += digits[j] * oracle::pow_int(spec.n, pos);
      }
      t.check(z == y, tag + ": " + format_word(m, w));
    }
    for (const auto& r : ap.relators) {
      ++relators;
      t.check(is_identity(m, r), tag + ": relator " + format_word(m, r));
    }
  }
  return t.outcome(std::to_string(cases) + " cases, " + std::to_string(relators) + " relators");
}

// 8. noncommuting pairs
Outcome criterion8() {
  const auto g = grigorchuk_automaton();
  const auto row = commute_experiment(g, g.nontrivial_states(), CommuteOptions{}, Rng(1));
  char buf[128];
  std::snprintf(buf, sizeof buf, "noncommuting %.6f, undecided %.6f", row.noncommuting_fraction,
                row.undecided_fraction);
  return {row.noncommuting_fraction > 0, buf};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 9. determinism
Outcome criterion9() {
  const fs::path base = fs::temp_directory_path() / "autgrp_acceptance";
  fs::remove_all(base);
  std::string stdout_text[2];
  for (int run = 0; run < 2; ++run) {
    std::ostringstream out, err;
    const int status = run_cli({"--seed", "7", "exchange", "--out-dir", (base / std::to_string(run)).string()},
                               out, err);
    if (status != 0) return {false, "exchange exit " + std::to_string(status) + ": " + err.str()};
    stdout_text[run] = out.str();
  }
  Tally t;
  t.check(stdout_text[0] == stdout_text[1], "stdout differs");
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(base / "0")) {
    ++files;
    const auto other = base / "1" / entry.path().filename();
    t.check(fs::exists(other) && slurp(entry.path()) == slurp(other),
            entry.path().filename().string() + " differs");
  }
  t.check(files >= 7, "missing output files");
  return t.outcome(std::to_string(files) + " files compared");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "action algebra", 60, criterion1},
      {2, "word problem soundness", 300, criterion2},
      {3, "rewriting soundness", 300, criterion3},
      {4, "metascheme end to end", 600, criterion4},
      {5, "AAG commutator keys", 300, criterion5},
      {6, "word problem cipher", 300, criterion6},
      {7, "affine vs arithmetic", 300, criterion7},
      {8, "noncommuting fraction", 300, criterion8},
      {9, "exchange determinism", 300, criterion9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.limit_s) {
      o.pass = false;
      o.detail += ", over time limit";
    }
    std::printf("criterion %d: %s %s (%.2f s, limit %.0f s) %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, s,
                c.limit_s, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
