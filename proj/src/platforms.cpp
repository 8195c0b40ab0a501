#include "autgrp/platforms.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "autgrp/errors.hpp"

namespace autgrp {

namespace {

std::string serialize_key(const LazyTransducer::Key& key) {
  std::string s;
  for (std::int64_t v : key) {
    s += std::to_string(v);
    s += ',';
  }
  return s;
}

std::optional<Transition> T(StateId next, Letter out) { return Transition{next, out}; }

GroupWord word(std::initializer_list<StateId> states) {
  GroupWord w;
  for (StateId s : states) w.push_back({s, false});
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// LazyTransducer

LazyTransducer::LazyTransducer(Alphabet alphabet, Oracle oracle, Namer namer,
                               std::span<const Key> roots)
    : alphabet_(std::move(alphabet)), oracle_(std::move(oracle)), namer_(std::move(namer)) {
  for (const Key& k : roots) discover(k);
}

LazyTransducer::LazyTransducer(LazyTransducer&& other) noexcept
    : alphabet_(std::move(other.alphabet_)),
      oracle_(std::move(other.oracle_)),
      namer_(std::move(other.namer_)) {
  std::unique_lock lock(other.mutex_);
  rows_ = std::move(other.rows_);
  index_ = std::move(other.index_);
}

StateId LazyTransducer::discover(const Key& key) const {
  const std::string sk = serialize_key(key);
  {
    std::shared_lock lock(mutex_);
    auto it = index_.find(sk);
    if (it != index_.end()) return it->second;
  }
  // Evaluate outside the lock; the oracle is pure.
  Row row;
  row.key = key;
  row.name = namer_(key);
  const std::size_t q = alphabet_.size();
  row.output.resize(q);
  row.preimage.assign(q, static_cast<Letter>(q));
  for (Letter x = 0; x < q; ++x) {
    auto [next, y] = oracle_(key, x);
    if (y >= q || row.preimage[y] != q) {
      throw Error(ErrorKind::not_invertible, "lazy state " + row.name + " is not a permutation");
    }
    row.output[x] = y;
    row.preimage[y] = x;
    row.next_keys.push_back(std::move(next));
  }
  std::unique_lock lock(mutex_);
  auto [it, inserted] = index_.try_emplace(sk, static_cast<StateId>(rows_.size()));
  if (inserted) rows_.push_back(std::move(row));
  return it->second;
}

LazyTransducer::Key LazyTransducer::key(StateId s) const {
  std::shared_lock lock(mutex_);
  return rows_.at(s).key;
}

std::string LazyTransducer::name(StateId s) const {
  std::shared_lock lock(mutex_);
  return rows_.at(s).name;
}

std::size_t LazyTransducer::discovered() const {
  std::shared_lock lock(mutex_);
  return rows_.size();
}

Transition LazyTransducer::transition(StateId s, Letter x) const {
  Key next;
  Letter out = 0;
  {
    std::shared_lock lock(mutex_);
    const Row& row = rows_.at(s);
    next = row.next_keys.at(x);
    out = row.output.at(x);
  }
  return {discover(next), out};
}

std::pair<Generator, Letter> LazyTransducer::step(Generator g, Letter x) const {
  if (!g.inverse) {
    const Transition t = transition(g.state, x);
    return {Generator{t.next, false}, t.output};
  }
  Letter pre = 0;
  {
    std::shared_lock lock(mutex_);
    pre = rows_.at(g.state).preimage.at(x);
  }
  return {Generator{transition(g.state, pre).next, true}, pre};
}

InputWord LazyTransducer::act(std::span<const Generator> w, std::span<const Letter> u) const {
  InputWord out(u.begin(), u.end());
  for (const Generator g : w) {
    Generator cur = g;
    for (Letter& x : out) {
      auto [next, y] = step(cur, x);
      x = y;
      cur = next;
    }
  }
  return out;
}

MealyAutomaton LazyTransducer::materialize(std::size_t state_cap) const {
  const std::size_t q = alphabet_.size();
  for (StateId s = 0; s < discovered(); ++s) {
    for (Letter x = 0; x < q; ++x) transition(s, x);
    if (discovered() > state_cap) {
      throw Error(ErrorKind::budget_exceeded,
                  "lazy transducer exceeds state cap " + std::to_string(state_cap));
    }
  }
  std::shared_lock lock(mutex_);
  std::vector<std::string> names;
  std::vector<std::optional<Transition>> table(rows_.size() * q);
  for (StateId s = 0; s < rows_.size(); ++s) {
    names.push_back(rows_[s].name);
    for (Letter x = 0; x < q; ++x) {
      table[s * q + x] = Transition{index_.at(serialize_key(rows_[s].next_keys[x])),
                                    rows_[s].output[x]};
    }
  }
  return MealyAutomaton(alphabet_, std::move(names), std::move(table));
}

// ---------------------------------------------------------------------------
// Grigorchuk

int OmegaSequence::at(std::size_t i) const { return i < preperiod.size()
                                                        ? preperiod[i]
                                                        : period[(i - preperiod.size()) % period.size()]; }

std::size_t OmegaSequence::normalize(std::size_t i) const {
  if (i < preperiod.size()) return i;
  return preperiod.size() + (i - preperiod.size()) % period.size();
}

void OmegaSequence::check() const {
  if (period.empty()) throw Error(ErrorKind::invalid_spec, "omega period must be nonempty");
  auto bad = [](int v) { return v < 0 || v > 2; };
  if (std::any_of(preperiod.begin(), preperiod.end(), bad) ||
      std::any_of(period.begin(), period.end(), bad)) {
    throw Error(ErrorKind::invalid_spec, "omega entries must be 0, 1 or 2");
  }
}

OmegaSequence OmegaSequence::parse(std::string_view text) {
  OmegaSequence omega;
  omega.period.clear();
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) {
    throw Error(ErrorKind::parse_error, "omega must look like 'pre|period'");
  }
  for (char c : text.substr(0, bar)) omega.preperiod.push_back(c - '0');
  for (char c : text.substr(bar + 1)) omega.period.push_back(c - '0');
  omega.check();
  return omega;
}

std::string OmegaSequence::to_string() const {
  std::string s;
  for (int v : preperiod) s += static_cast<char>('0' + v);
  s += '|';
  for (int v : period) s += static_cast<char>('0' + v);
  return s;
}

MealyAutomaton grigorchuk_automaton() {
  // a=0 b=1 c=2 d=3 e=4
  return MealyAutomaton(Alphabet::digits(2), {"a", "b", "c", "d", "e"},
                        {T(4, 1), T(4, 0),    // a: swap
                         T(0, 0), T(2, 1),    // b = (a, c)
                         T(0, 0), T(3, 1),    // c = (a, d)
                         T(4, 0), T(1, 1),    // d = (e, b)
                         T(4, 0), T(4, 1)});  // e
}

LPresentation grigorchuk_lpresentation(const MealyAutomaton& g) {
  const StateId a = g.state("a"), b = g.state("b"), c = g.state("c"), d = g.state("d");
  LPresentation lp;
  lp.fixed = {word({a, a}), word({b, b}), word({c, c}), word({d, d}), word({b, c, d})};
  lp.iterated = {power(word({a, d}), 4), power(word({a, d, a, c, a, c}), 4)};
  lp.substitution = {{a, word({a, c, a})}, {b, word({d})}, {c, word({b})}, {d, word({c})}};
  return lp;
}

GrigorchukPlatform grigorchuk_first(std::size_t lpresentation_depth, std::size_t max_word_len,
                                    const DecisionBudget& budget) {
  MealyAutomaton g = grigorchuk_automaton();
  const auto relators = expand_lpresentation(grigorchuk_lpresentation(g), lpresentation_depth);
  RewriteSystem rs = make_rewrite_system(g, relators, g.nontrivial_states(), max_word_len, budget);
  return {std::move(g), std::move(rs)};
}

LazyTransducer grigorchuk_omega(const OmegaSequence& omega) {
  omega.check();
  enum : std::int64_t { A = 0, B = 1, C = 2, D = 3, E = 4 };
  auto oracle = [omega](const LazyTransducer::Key& key, Letter x) {
    const std::int64_t sym = key[0];
    const auto shift = static_cast<std::size_t>(key[1]);
    if (sym == E) return std::pair{LazyTransducer::Key{E, 0}, x};
    if (sym == A) return std::pair{LazyTransducer::Key{E, 0}, static_cast<Letter>(1 - x)};
    if (x == 1) {
      return std::pair{
          LazyTransducer::Key{sym, static_cast<std::int64_t>(omega.normalize(shift + 1))},
          Letter{1}};
    }
    // Column omega_k of (b, c, d): 0 -> (a, a, e), 1 -> (a, e, a), 2 -> (e, a, a).
    const bool trivial = (sym - B) == 2 - omega.at(shift);
    return std::pair{LazyTransducer::Key{trivial ? E : A, 0}, Letter{0}};
  };
  auto namer = [](const LazyTransducer::Key& key) {
    static constexpr const char* kSymbols[] = {"a", "b", "c", "d", "e"};
    std::string name = kSymbols[key[0]];
    if (key[1] != 0) name += "@" + std::to_string(key[1]);
    return name;
  };
  const std::vector<LazyTransducer::Key> roots{{A, 0}, {B, 0}, {C, 0}, {D, 0}, {E, 0}};
  return LazyTransducer(Alphabet::digits(2), oracle, namer, roots);
}

std::vector<GroupWord> grigorchuk_omega_relators(const MealyAutomaton& automaton,
                                                 std::size_t max_order,
                                                 const DecisionBudget& budget) {
  const StateId a = automaton.state("a"), b = automaton.state("b"), c = automaton.state("c"),
                d = automaton.state("d");
  std::vector<GroupWord> out{word({a, a}), word({b, b}), word({c, c}), word({d, d}),
                             word({b, c, d})};
  for (StateId x : {b, c, d}) {
    const GroupWord ax = word({a, x});
    if (auto k = element_order(automaton, ax, max_order, budget)) out.push_back(power(ax, *k));
  }
  for (const GroupWord& r : out) {
    if (!is_identity(automaton, r, budget)) {
      throw Error(ErrorKind::invalid_relator,
                  "G_omega relator failed: " + format_word(automaton, r));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// p-Basilica

MealyAutomaton basilica(std::size_t p) {
  if (p < 2) throw Error(ErrorKind::invalid_spec, "basilica needs p >= 2");
  // a=0 b=1 e=2
  std::vector<std::optional<Transition>> table(3 * p);
  for (Letter x = 0; x < p; ++x) {
    const bool last = x + 1 == p;
    table[0 * p + x] = T(last ? 1 : 2, static_cast<Letter>((x + 1) % p));
    table[1 * p + x] = T(last ? 0 : 2, x);
    table[2 * p + x] = T(2, x);
  }
  return MealyAutomaton(Alphabet::digits(p), {"a", "b", "e"}, std::move(table));
}

std::vector<GroupWord> basilica_relators(const MealyAutomaton& automaton, std::size_t depth,
                                         const DecisionBudget& budget) {
  const StateId a = automaton.state("a"), b = automaton.state("b");
  const std::size_t p = automaton.alphabet_size();
  LPresentation lp;
  for (std::size_t k = 1; k < p; ++k) {
    const GroupWord ak = power(word({a}), k);
    GroupWord conj = inverse_word(ak);
    conj.push_back({b, false});
    conj.insert(conj.end(), ak.begin(), ak.end());
    GroupWord comm = word({b});
    comm.insert(comm.end(), conj.begin(), conj.end());
    comm.push_back({b, true});
    const GroupWord conj_inv = inverse_word(conj);
    comm.insert(comm.end(), conj_inv.begin(), conj_inv.end());
    lp.iterated.push_back(comm);
  }
  lp.substitution = {{b, word({a})}, {a, power(word({b}), p)}};
  std::vector<GroupWord> out;
  for (GroupWord& r : expand_lpresentation(lp, depth)) {
    if (verify_identity(automaton, r, budget, 16).holds) out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Affine

std::int64_t AffineSpec::determinant() const {
  // Bareiss fraction-free elimination; exact for integer matrices.
  std::vector<std::vector<__int128>> m(d, std::vector<__int128>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i][j] = M[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < d && m[swap][k] == 0) ++swap;
      if (swap == d) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < d; ++i) {
      for (std::size_t j = k + 1; j < d; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return static_cast<std::int64_t>(sign * m[d - 1][d - 1]);
}

void AffineSpec::check() const {
  if (n < 2) throw Error(ErrorKind::invalid_spec, "affine base n must be >= 2");
  if (d < 1) throw Error(ErrorKind::invalid_spec, "affine dimension d must be >= 1");
  if (M.size() != d) throw Error(ErrorKind::invalid_spec, "M must be d x d");
  for (const auto& row : M) {
    if (row.size() != d) throw Error(ErrorKind::invalid_spec, "M must be d x d");
    for (std::int64_t v : row) {
      if (v < 0) throw Error(ErrorKind::invalid_spec, "M entries must be nonnegative");
    }
  }
  std::int64_t det = determinant();
  if (std::gcd(det < 0 ? -det : det, n) != 1) {
    throw Error(ErrorKind::invalid_spec, "det(M) must be coprime to n");
  }
  std::size_t size = 1;
  for (std::size_t i = 0; i < d; ++i) {
    size *= static_cast<std::size_t>(n);
    if (size > (std::size_t{1} << 16)) throw Error(ErrorKind::invalid_spec, "n^d too large");
  }
}

std::size_t AlphabetPacking::size() const {
  std::size_t s = 1;
  for (std::size_t i = 0; i < d; ++i) s *= static_cast<std::size_t>(n);
  return s;
}

Letter AlphabetPacking::pack(std::span<const std::int64_t> digits) const {
  Letter symbol = 0;
  for (std::size_t i = d; i-- > 0;) {
    symbol = static_cast<Letter>(symbol * n + digits[i]);
  }
  return symbol;
}

std::vector<std::int64_t> AlphabetPacking::unpack(Letter symbol) const {
  std::vector<std::int64_t> digits(d);
  for (std::size_t i = 0; i < d; ++i) {
    digits[i] = symbol % n;
    symbol = static_cast<Letter>(symbol / n);
  }
  return digits;
}

AlphabetPacking alphabet_packing(const AffineSpec& spec) { return {spec.n, spec.d}; }

AffinePlatform affine_group(const AffineSpec& spec) {
  spec.check();
  const AlphabetPacking packing = alphabet_packing(spec);
  const std::size_t d = spec.d;
  const std::int64_t n = spec.n;
  enum : std::int64_t { Add = 0, Mul = 1 };

  std::vector<std::int64_t> bound(d, 1);
  for (std::size_t i = 0; i < d; ++i) {
    std::int64_t row = 0;
    for (std::int64_t v : spec.M[i]) row += v;
    bound[i] = std::max<std::int64_t>(1, row);
  }

  auto oracle = [spec, packing, bound, d, n](const LazyTransducer::Key& key, Letter x) {
    const std::vector<std::int64_t> digits = packing.unpack(x);
    LazyTransducer::Key next(1 + d);
    next[0] = Add;
    std::vector<std::int64_t> out(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::int64_t y = key[1 + i];
      if (key[0] == Add) {
        y += digits[i];
      } else {
        for (std::size_t k = 0; k < d; ++k) y += spec.M[i][k] * digits[k];
      }
      out[i] = y % n;
      next[1 + i] = y / n;
      if (next[1 + i] < 0 || next[1 + i] > bound[i]) {
        throw Error(ErrorKind::invalid_spec, "affine carry left its bound");
      }
    }
    next[0] = key[0];
    return std::pair{std::move(next), packing.pack(out)};
  };

  auto namer = [d](const LazyTransducer::Key& key) {
    std::size_t nonzero = 0, unit = 0;
    bool unit_vector = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (key[1 + i] != 0) {
        ++nonzero;
        unit = i;
        if (key[1 + i] != 1) unit_vector = false;
      }
    }
    if (key[0] == Add && nonzero == 0) return std::string("e");
    if (key[0] == Add && nonzero == 1 && unit_vector) return "a" + std::to_string(unit + 1);
    if (key[0] == Mul && nonzero == 0) return std::string("t");
    std::string name = key[0] == Add ? "a[" : "t[";
    for (std::size_t i = 0; i < d; ++i) {
      if (i) name += ',';
      name += std::to_string(key[1 + i]);
    }
    return name + "]";
  };

  std::vector<LazyTransducer::Key> roots;
  for (std::size_t j = 0; j < d; ++j) {
    LazyTransducer::Key k(1 + d, 0);
    k[0] = Add;
    k[1 + j] = 1;
    roots.push_back(k);
  }
  roots.push_back(LazyTransducer::Key(1 + d, 0));
  roots.back()[0] = Mul;
  roots.push_back(LazyTransducer::Key(1 + d, 0));

  AffinePlatform platform{
      LazyTransducer(Alphabet::digits(packing.size()), oracle, namer, roots), {}, {}};
  for (StateId j = 0; j <= d; ++j) platform.generators.push_back(j);

  const auto t = static_cast<StateId>(d);
  for (StateId i = 0; i < d; ++i) {
    for (StateId j = i + 1; j < d; ++j) {
      platform.relators.push_back({{i, false}, {j, false}, {i, true}, {j, true}});
    }
  }
  for (StateId j = 0; j < d; ++j) {
    GroupWord r{{t, true}, {j, false}, {t, false}};
    GroupWord image;
    for (StateId i = 0; i < d; ++i) {
      for (std::int64_t m = 0; m < spec.M[i][j]; ++m) image.push_back({i, false});
    }
    const GroupWord image_inv = inverse_word(image);
    r.insert(r.end(), image_inv.begin(), image_inv.end());
    platform.relators.push_back(free_reduce(r));
  }
  return platform;
}

// ---------------------------------------------------------------------------
// Presets

std::vector<std::string> preset_names() {
  return {"grigorchuk", "grigorchuk-omega", "basilica2", "basilica3", "affine"};
}

Platform make_preset(std::string_view name, const PresetOptions& options,
                     const DecisionBudget& budget) {
  Platform p;
  p.preset = std::string(name);
  p.options = options;
  if (name == "grigorchuk") {
    p.automaton = grigorchuk_automaton();
    p.relators = expand_lpresentation(grigorchuk_lpresentation(p.automaton),
                                      options.lpresentation_depth);
  } else if (name == "grigorchuk-omega") {
    p.automaton = grigorchuk_omega(options.omega).materialize(options.state_cap);
    p.relators = grigorchuk_omega_relators(p.automaton, 64, budget);
  } else if (name == "basilica2" || name == "basilica3") {
    p.automaton = basilica(name == "basilica2" ? 2 : 3);
    p.relators = basilica_relators(p.automaton, 1, budget);
  } else if (name == "affine") {
    AffinePlatform affine = affine_group(options.affine);
    p.automaton = affine.transducer.materialize(options.state_cap);
    p.relators = std::move(affine.relators);
    p.generators = std::move(affine.generators);
    return p;
  } else {
    throw Error(ErrorKind::invalid_argument, "unknown preset '" + std::string(name) + "'");
  }
  if (name == "grigorchuk-omega") {
    for (const char* g : {"a", "b", "c", "d"}) p.generators.push_back(p.automaton.state(g));
  } else {
    p.generators = p.automaton.nontrivial_states();
  }
  return p;
}

}  // namespace autgrp
