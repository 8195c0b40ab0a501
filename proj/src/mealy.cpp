#include "autgrp/mealy.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "autgrp/errors.hpp"

namespace autgrp {

namespace {

constexpr std::string_view kInverseSuffix = "^-1";

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) tokens.push_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.size() < 2) {
    throw Error(ErrorKind::invalid_argument, "alphabet needs at least two letters");
  }
  for (Letter i = 0; i < letters_.size(); ++i) {
    if (letters_[i].empty()) {
      throw Error(ErrorKind::invalid_argument, "empty alphabet symbol");
    }
    if (!index_.emplace(letters_[i], i).second) {
      throw Error(ErrorKind::invalid_argument, "duplicate alphabet symbol '" + letters_[i] + "'");
    }
    if (letters_[i].size() != 1) single_char_ = false;
  }
}

Alphabet Alphabet::digits(std::size_t q) {
  std::vector<std::string> letters;
  letters.reserve(q);
  for (std::size_t i = 0; i < q; ++i) letters.push_back(std::to_string(i));
  return Alphabet(std::move(letters));
}

std::optional<Letter> Alphabet::find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Letter Alphabet::index(std::string_view symbol) const {
  if (auto x = find(symbol)) return *x;
  throw Error(ErrorKind::parse_error, "unknown letter '" + std::string(symbol) + "'");
}

MealyAutomaton::MealyAutomaton(Alphabet alphabet, std::vector<std::string> states,
                               std::vector<std::optional<Transition>> table)
    : alphabet_(std::move(alphabet)), states_(std::move(states)), table_(std::move(table)) {
  const std::size_t q = alphabet_.size();
  if (states_.empty()) throw Error(ErrorKind::invalid_argument, "automaton has no states");
  if (table_.size() != states_.size() * q) {
    throw Error(ErrorKind::invalid_argument, "transition table has wrong size");
  }
  for (StateId s = 0; s < states_.size(); ++s) {
    if (states_[s].empty()) throw Error(ErrorKind::invalid_argument, "empty state name");
    if (!index_.emplace(states_[s], s).second) {
      throw Error(ErrorKind::invalid_argument, "duplicate state '" + states_[s] + "'");
    }
  }
  for (const auto& t : table_) {
    if (t && (t->next >= states_.size() || t->output >= q)) {
      throw Error(ErrorKind::invalid_argument, "transition refers to unknown state or letter");
    }
  }

  valid_ = validate(*this).accepted();
  if (!valid_) return;

  dense_.resize(table_.size());
  preimage_.resize(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) dense_[i] = *table_[i];
  for (StateId s = 0; s < states_.size(); ++s) {
    for (Letter x = 0; x < q; ++x) preimage_[s * q + dense_[s * q + x].output] = x;
  }

  // Greatest fixed point: start with every state whose output is the identity
  // and drop those with a non-trivial successor until stable.
  trivial_.assign(states_.size(), 1);
  for (StateId s = 0; s < states_.size(); ++s) {
    for (Letter x = 0; x < q; ++x) {
      if (dense_[s * q + x].output != x) trivial_[s] = 0;
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < states_.size(); ++s) {
      if (!trivial_[s]) continue;
      for (Letter x = 0; x < q; ++x) {
        if (!trivial_[dense_[s * q + x].next]) {
          trivial_[s] = 0;
          changed = true;
          break;
        }
      }
    }
  }
}

std::optional<StateId> MealyAutomaton::find_state(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StateId MealyAutomaton::state(std::string_view name) const {
  if (auto s = find_state(name)) return *s;
  throw Error(ErrorKind::parse_error, "unknown state '" + std::string(name) + "'");
}

std::vector<StateId> MealyAutomaton::nontrivial_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < num_states(); ++s) {
    if (!is_trivial(s)) out.push_back(s);
  }
  return out;
}

ValidationReport validate(const MealyAutomaton& automaton) {
  ValidationReport report;
  const std::size_t q = automaton.alphabet_size();
  for (StateId s = 0; s < automaton.num_states(); ++s) {
    std::vector<char> hit(q, 0);
    bool permutation = true;
    for (Letter x = 0; x < q; ++x) {
      const auto& t = automaton.transition(s, x);
      if (!t) {
        report.total = false;
        report.missing.emplace_back(s, x);
        report.messages.push_back("missing transition at " + automaton.state_name(s) + " on " +
                                  automaton.alphabet().symbol(x));
        permutation = false;
        continue;
      }
      if (hit[t->output]) permutation = false;
      hit[t->output] = 1;
    }
    if (!permutation) {
      report.not_permutation.push_back(s);
      report.messages.push_back("not a permutation at " + automaton.state_name(s));
    }
  }
  return report;
}

MealyAutomaton invert(const MealyAutomaton& automaton) {
  if (!automaton.valid()) {
    throw Error(ErrorKind::not_invertible, "automaton is not invertible");
  }
  const std::size_t q = automaton.alphabet_size();
  std::vector<std::string> names;
  names.reserve(automaton.num_states());
  for (const auto& n : automaton.state_names()) names.push_back(n + std::string(kInverseSuffix));
  std::vector<std::optional<Transition>> table(automaton.num_states() * q);
  for (StateId s = 0; s < automaton.num_states(); ++s) {
    for (Letter x = 0; x < q; ++x) {
      const Transition t = *automaton.transition(s, x);
      table[s * q + t.output] = Transition{t.next, x};
    }
  }
  return MealyAutomaton(automaton.alphabet(), std::move(names), std::move(table));
}

InputWord act(const MealyAutomaton& automaton, std::span<const Generator> w,
              std::span<const Letter> u) {
  if (!automaton.valid()) {
    throw Error(ErrorKind::not_invertible, "act requires an invertible automaton");
  }
  InputWord out(u.begin(), u.end());
  for (const Generator g : w) {
    Generator cur = g;
    for (Letter& x : out) {
      auto [next, y] = automaton.step(cur, x);
      x = y;
      cur = next;
    }
  }
  return out;
}

GroupWord restrict(const MealyAutomaton& automaton, std::span<const Generator> w,
                   std::span<const Letter> u) {
  if (!automaton.valid()) {
    throw Error(ErrorKind::not_invertible, "restrict requires an invertible automaton");
  }
  GroupWord section(w.begin(), w.end());
  for (const Letter x0 : u) {
    Letter x = x0;
    for (Generator& g : section) {
      auto [next, y] = automaton.step(g, x);
      g = next;
      x = y;
    }
  }
  return section;
}

GroupWord free_reduce(std::span<const Generator> w) {
  GroupWord out;
  out.reserve(w.size());
  for (const Generator g : w) {
    if (!out.empty() && out.back().cancels(g)) {
      out.pop_back();
    } else {
      out.push_back(g);
    }
  }
  return out;
}

GroupWord inverse_word(std::span<const Generator> w) {
  GroupWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverted());
  return out;
}

GroupWord concat(std::span<const Generator> a, std::span<const Generator> b) {
  GroupWord out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

GroupWord power(std::span<const Generator> w, std::size_t k) {
  GroupWord out;
  out.reserve(w.size() * k);
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

GroupWord random_word(std::span<const StateId> generators, std::size_t length, Rng& rng) {
  if (generators.empty()) {
    throw Error(ErrorKind::empty_generator_set, "random_word needs at least one generator");
  }
  const std::uint64_t letters = 2 * generators.size();
  GroupWord out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (out.empty()) {
      const std::uint64_t k = rng.below(letters);
      out.push_back({generators[k / 2], (k & 1) != 0});
      continue;
    }
    // Uniform among the 2k-1 letters that do not cancel the previous one.
    const Generator prev = out.back();
    const auto pos = std::find(generators.begin(), generators.end(), prev.state) - generators.begin();
    const std::uint64_t forbidden = 2 * static_cast<std::uint64_t>(pos) + (prev.inverse ? 0 : 1);
    std::uint64_t k = rng.below(letters - 1);
    if (k >= forbidden) ++k;
    out.push_back({generators[k / 2], (k & 1) != 0});
  }
  return out;
}

GroupWord parse_word(const MealyAutomaton& automaton, std::string_view text) {
  GroupWord out;
  for (std::string_view tok : split_ws(text)) {
    bool inverse = false;
    if (auto s = automaton.find_state(tok)) {
      out.push_back({*s, false});
      continue;
    }
    if (tok.size() > kInverseSuffix.size() && tok.ends_with(kInverseSuffix)) {
      inverse = true;
      tok.remove_suffix(kInverseSuffix.size());
    }
    out.push_back({automaton.state(tok), inverse});
  }
  return out;
}

std::string format_word(const MealyAutomaton& automaton, std::span<const Generator> w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += automaton.state_name(w[i].state);
    if (w[i].inverse) out += kInverseSuffix;
  }
  return out;
}

InputWord parse_input(const Alphabet& alphabet, std::string_view text) {
  InputWord out;
  if (alphabet.single_char()) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      out.push_back(alphabet.index(std::string_view(&c, 1)));
    }
    return out;
  }
  for (std::string_view tok : split_ws(text)) out.push_back(alphabet.index(tok));
  return out;
}

std::string format_input(const Alphabet& alphabet, std::span<const Letter> u) {
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i && !alphabet.single_char()) out += ' ';
    out += alphabet.symbol(u[i]);
  }
  return out;
}

}  // namespace autgrp
