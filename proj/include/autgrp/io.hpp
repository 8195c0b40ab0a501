#pragma once

// JSON and file formats shared by the protocols and the command line.
//
// Automaton: {"alphabet":[...],"states":[...],"transitions":{state:{letter:[next,out]}}}
// Group words: whitespace separated tokens, inverses suffixed "^-1".
// AffineSpec: {"n":2,"d":1,"M":[[3]]}

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "autgrp/mealy.hpp"
#include "autgrp/platforms.hpp"

namespace autgrp {

using Json = nlohmann::ordered_json;

Json automaton_to_json(const MealyAutomaton& automaton);
// States missing from "states" but named in transitions are appended. Missing
// transitions are kept as gaps for validate(). Throws Error(parse_error).
MealyAutomaton automaton_from_json(const Json& j);

Json affine_spec_to_json(const AffineSpec& spec);
AffineSpec affine_spec_from_json(const Json& j);

Json words_to_json(const MealyAutomaton& automaton, std::span<const GroupWord> words);
std::vector<GroupWord> words_from_json(const MealyAutomaton& automaton, const Json& j);

Json parse_json(std::string_view text);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

std::vector<std::uint8_t> read_bytes(const std::string& path);
void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes);

// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view text);

}  // namespace autgrp
