#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace autgrp {

enum class ErrorKind {
  parse_error,
  not_invertible,
  budget_exceeded,
  empty_generator_set,
  span_out_of_range,
  invalid_move,
  invalid_relator,
  undefined_generator_in_substitution,
  invalid_spec,
  rejected,
  decode_error,
  undecodable,
  invalid_seed_words,
  invalid_argument,
};

std::string_view error_name(ErrorKind kind);

// Every library failure surfaces as an Error; kind() drives the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace autgrp
