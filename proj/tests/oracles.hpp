#pragma once

// Reference implementations used as test oracles. They share no code with the
// library: the Grigorchuk action is the textbook recursion on strings and the
// affine action is plain integer arithmetic.

#include <cstdint>
#include <string>
#include <vector>

#include "autgrp/mealy.hpp"

namespace oracle {

// One Grigorchuk generator on a binary string.
inline std::string grig(char s, const std::string& u) {
  if (u.empty() || s == 'e') return u;
  const char x = u[0];
  const std::string rest = u.substr(1);
  switch (s) {
    case 'a': return std::string(1, x == '0' ? '1' : '0') + rest;
    case 'b': return x == '0' ? "0" + grig('a', rest) : "1" + grig('c', rest);
    case 'c': return x == '0' ? "0" + grig('a', rest) : "1" + grig('d', rest);
    case 'd': return x == '0' ? "0" + rest : "1" + grig('b', rest);
  }
  return u;
}

// Word over a..e, every letter an involution, leftmost acting first.
inline std::string grig_word(const std::string& w, std::string u) {
  for (char s : w) u = grig(s, u);
  return u;
}

// All words over {0..q-1} of length exactly n.
inline std::vector<autgrp::InputWord> all_inputs(std::size_t q, std::size_t n) {
  std::vector<autgrp::InputWord> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<autgrp::InputWord> next;
    for (const auto& w : out) {
      for (autgrp::Letter x = 0; x < q; ++x) {
        auto v = w;
        v.push_back(x);
        next.push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::int64_t pow_int(std::int64_t b, std::size_t e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Modular inverse by extended Euclid; m > 1, gcd(a, m) = 1.
inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, y = 1, aa = mod(a, m);
  while (aa != 0) {
    const std::int64_t q = g / aa;
    std::int64_t t = g - q * aa; g = aa; aa = t;
    t = x - q * y; x = y; y = t;
  }
  return mod(x, m);
}

}  // namespace oracle
