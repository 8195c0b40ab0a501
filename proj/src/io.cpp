#include "autgrp/io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>

#include "autgrp/errors.hpp"

namespace autgrp {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::parse_error, what); }

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    parse_fail(e.what());
  }
}

}  // namespace

Json automaton_to_json(const MealyAutomaton& automaton) {
  const Alphabet& alpha = automaton.alphabet();
  Json j;
  j["alphabet"] = alpha.letters();
  j["states"] = automaton.state_names();
  Json transitions = Json::object();
  for (StateId s = 0; s < automaton.num_states(); ++s) {
    Json row = Json::object();
    for (Letter x = 0; x < alpha.size(); ++x) {
      const auto& t = automaton.transition(s, x);
      if (!t) continue;
      row[alpha.symbol(x)] = {automaton.state_name(t->next), alpha.symbol(t->output)};
    }
    transitions[automaton.state_name(s)] = std::move(row);
  }
  j["transitions"] = std::move(transitions);
  return j;
}

MealyAutomaton automaton_from_json(const Json& j) {
  return guarded([&] {
    if (!j.is_object() || !j.contains("alphabet") || !j.contains("transitions")) {
      parse_fail("automaton needs \"alphabet\" and \"transitions\"");
    }
    Alphabet alpha(j.at("alphabet").get<std::vector<std::string>>());
    std::vector<std::string> names;
    std::map<std::string, StateId> ids;
    auto intern = [&](const std::string& name) {
      auto [it, inserted] = ids.try_emplace(name, static_cast<StateId>(names.size()));
      if (inserted) names.push_back(name);
      return it->second;
    };
    if (j.contains("states")) {
      for (const auto& s : j.at("states")) intern(s.get<std::string>());
    }
    const Json& tr = j.at("transitions");
    if (!tr.is_object()) parse_fail("\"transitions\" must be an object");
    for (const auto& [state, row] : tr.items()) {
      intern(state);
      for (const auto& [letter, cell] : row.items()) {
        if (!cell.is_array() || cell.size() != 2) parse_fail("transition must be [next, output]");
        intern(cell[0].get<std::string>());
      }
    }
    const std::size_t q = alpha.size();
    std::vector<std::optional<Transition>> table(names.size() * q);
    for (const auto& [state, row] : tr.items()) {
      const StateId s = ids.at(state);
      for (const auto& [letter, cell] : row.items()) {
        auto x = alpha.find(letter);
        auto y = alpha.find(cell[1].get<std::string>());
        if (!x || !y) parse_fail("unknown letter in transition of state " + state);
        table[s * q + *x] = Transition{ids.at(cell[0].get<std::string>()), *y};
      }
    }
    return MealyAutomaton(std::move(alpha), std::move(names), std::move(table));
  });
}

Json affine_spec_to_json(const AffineSpec& spec) {
  Json j;
  j["n"] = spec.n;
  j["d"] = spec.d;
  j["M"] = spec.M;
  return j;
}

AffineSpec affine_spec_from_json(const Json& j) {
  return guarded([&] {
    AffineSpec spec;
    spec.n = j.at("n").get<std::int64_t>();
    spec.d = j.at("d").get<std::size_t>();
    spec.M = j.at("M").get<std::vector<std::vector<std::int64_t>>>();
    spec.check();
    return spec;
  });
}

Json words_to_json(const MealyAutomaton& automaton, std::span<const GroupWord> words) {
  Json j = Json::array();
  for (const GroupWord& w : words) j.push_back(format_word(automaton, w));
  return j;
}

std::vector<GroupWord> words_from_json(const MealyAutomaton& automaton, const Json& j) {
  return guarded([&] {
    std::vector<GroupWord> out;
    for (const auto& w : j) out.push_back(parse_word(automaton, w.get<std::string>()));
    return out;
  });
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(e.what());
  }
}

Json read_json_file(const std::string& path) {
  const auto bytes = read_bytes(path);
  return parse_json(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void write_json_file(const std::string& path, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  write_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::invalid_argument, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace autgrp
