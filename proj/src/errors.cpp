#include "autgrp/errors.hpp"

namespace autgrp {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::not_invertible: return "NotInvertible";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::empty_generator_set: return "EmptyGeneratorSet";
    case ErrorKind::span_out_of_range: return "SpanOutOfRange";
    case ErrorKind::invalid_move: return "InvalidMove";
    case ErrorKind::invalid_relator: return "InvalidRelator";
    case ErrorKind::undefined_generator_in_substitution: return "UndefinedGeneratorInSubstitution";
    case ErrorKind::invalid_spec: return "InvalidSpec";
    case ErrorKind::rejected: return "Rejected";
    case ErrorKind::decode_error: return "DecodeError";
    case ErrorKind::undecodable: return "Undecodable";
    case ErrorKind::invalid_seed_words: return "InvalidSeedWords";
    case ErrorKind::invalid_argument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace autgrp
