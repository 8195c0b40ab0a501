#include "autgrp/rewriting.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <unordered_set>

#include "autgrp/errors.hpp"

namespace autgrp {

namespace {

MoveKind classify(const GroupWord& pattern, const GroupWord& replacement) {
  if (pattern.empty()) return MoveKind::relator_insert;
  if (replacement.empty()) return MoveKind::relator_delete;
  return MoveKind::factor_swap;
}

struct WordHash {
  std::size_t operator()(const GroupWord& w) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const Generator g : w) {
      h ^= g.code();
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

GroupWord splice(std::span<const Generator> w, std::size_t pos, std::size_t len,
                 std::span<const Generator> replacement) {
  GroupWord out;
  out.reserve(w.size() - len + replacement.size());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + len), w.end());
  return out;
}

}  // namespace

std::string_view move_kind_name(MoveKind kind) {
  switch (kind) {
    case MoveKind::factor_swap: return "factor_swap";
    case MoveKind::relator_insert: return "relator_insert";
    case MoveKind::relator_delete: return "relator_delete";
    case MoveKind::free_insert: return "free_insert";
    case MoveKind::free_cancel: return "free_cancel";
  }
  return "unknown";
}

std::vector<Span> factor_occurrences(std::span<const Generator> w) {
  std::vector<Span> spans;
  spans.reserve(w.size() * (w.size() + 1) / 2 + w.size() + 1);
  for (std::size_t b = 0; b <= w.size(); ++b) {
    for (std::size_t e = b; e <= w.size(); ++e) spans.push_back({b, e});
  }
  return spans;
}

GroupWord complement(std::span<const Generator> relator, Span span) {
  if (span.begin > span.end || span.end > relator.size()) {
    throw Error(ErrorKind::span_out_of_range, "span outside relator");
  }
  GroupWord out = inverse_word(relator.subspan(0, span.begin));
  const GroupWord tail = inverse_word(relator.subspan(span.end));
  out.insert(out.end(), tail.begin(), tail.end());
  return free_reduce(out);
}

RewriteSystem::RewriteSystem(std::vector<Relator> relators, std::vector<StateId> generators,
                             std::size_t max_word_len)
    : generators_(std::move(generators)), max_word_len_(max_word_len) {
  trie_.emplace_back();
  for (Relator& r : relators) {
    r.word = free_reduce(r.word);
    if (r.word.empty()) continue;
    longest_ = std::max(longest_, r.word.size());
    relators_.push_back(std::move(r));
  }
  max_word_len_ = std::max(max_word_len_, longest_);

  for (const Relator& r : relators_) {
    for (const Span span : factor_occurrences(r.word)) {
      GroupWord u(r.word.begin() + static_cast<std::ptrdiff_t>(span.begin),
                  r.word.begin() + static_cast<std::ptrdiff_t>(span.end));
      GroupWord c = complement(r.word, span);
      add_production(u, c);
      add_production(std::move(c), std::move(u));
    }
  }
}

void RewriteSystem::add_production(GroupWord pattern, GroupWord replacement) {
  const auto index = static_cast<std::uint32_t>(productions_.size());
  const MoveKind kind = classify(pattern, replacement);
  if (pattern.empty()) {
    insertions_.push_back(index);
  } else {
    std::uint32_t node = 0;
    for (const Generator g : pattern) {
      if (auto next = child(node, g.code())) {
        node = *next;
        continue;
      }
      const auto fresh = static_cast<std::uint32_t>(trie_.size());
      trie_[node].children.emplace_back(g.code(), fresh);
      trie_.emplace_back();
      node = fresh;
    }
    trie_[node].ends.push_back(index);
  }
  productions_.push_back({std::move(pattern), std::move(replacement), kind});
}

std::optional<std::uint32_t> RewriteSystem::child(std::uint32_t node, std::uint32_t code) const {
  for (const auto& [c, n] : trie_[node].children) {
    if (c == code) return n;
  }
  return std::nullopt;
}

RewriteSystem make_rewrite_system(const MealyAutomaton& automaton,
                                  std::span<const GroupWord> relators,
                                  std::vector<StateId> generators, std::size_t max_word_len,
                                  const DecisionBudget& budget, std::size_t exact_limit,
                                  std::size_t fallback_depth) {
  std::vector<Relator> checked;
  for (const GroupWord& r : relators) {
    Relator rel{free_reduce(r), true};
    bool ok = false;
    if (rel.word.size() <= exact_limit) {
      ok = is_identity(automaton, rel.word, budget);
    } else {
      const Verification v = verify_identity(automaton, rel.word, budget, fallback_depth);
      ok = v.holds;
      rel.exact = v.exact;
    }
    if (!ok) {
      throw Error(ErrorKind::invalid_relator,
                  "relator is not the identity: " + format_word(automaton, rel.word));
    }
    checked.push_back(std::move(rel));
  }
  return RewriteSystem(std::move(checked), std::move(generators), max_word_len);
}

std::vector<RewriteMove> applicable_moves(std::span<const Generator> w, const RewriteSystem& rs) {
  std::vector<RewriteMove> moves;
  const auto& prods = rs.productions();
  rs.for_each_occurrence(w, [&](std::size_t p, std::size_t pos) {
    moves.push_back({prods[p].kind, pos, prods[p].pattern, prods[p].replacement});
  });
  for (std::size_t gap = 0; gap <= w.size(); ++gap) {
    for (std::size_t p : rs.insertions()) {
      moves.push_back({MoveKind::relator_insert, gap, {}, prods[p].replacement});
    }
  }
  for (std::size_t gap = 0; gap <= w.size(); ++gap) {
    for (StateId s : rs.generators()) {
      for (bool inv : {false, true}) {
        const Generator g{s, inv};
        moves.push_back({MoveKind::free_insert, gap, {}, {g, g.inverted()}});
      }
    }
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i].cancels(w[i + 1])) {
      moves.push_back({MoveKind::free_cancel, i, {w[i], w[i + 1]}, {}});
    }
  }
  return moves;
}

GroupWord apply_move(std::span<const Generator> w, const RewriteMove& move) {
  const std::size_t len = move.pattern.size();
  if (move.position > w.size() || len > w.size() - move.position) {
    throw Error(ErrorKind::invalid_move, "move position outside word");
  }
  if (!std::equal(move.pattern.begin(), move.pattern.end(),
                  w.begin() + static_cast<std::ptrdiff_t>(move.position))) {
    throw Error(ErrorKind::invalid_move, "move pattern does not occur at position");
  }
  switch (move.kind) {
    case MoveKind::free_insert:
      if (move.replacement.size() != 2 || !move.replacement[0].cancels(move.replacement[1]) ||
          len != 0) {
        throw Error(ErrorKind::invalid_move, "free insertion must insert s s^-1");
      }
      break;
    case MoveKind::free_cancel:
      if (len != 2 || !move.pattern[0].cancels(move.pattern[1]) || !move.replacement.empty()) {
        throw Error(ErrorKind::invalid_move, "free cancellation must remove s s^-1");
      }
      break;
    default:
      break;
  }
  return splice(w, move.position, len, move.replacement);
}

Obfuscation obfuscate(std::span<const Generator> w, const RewriteSystem& rs, std::size_t steps,
                      Rng& rng, const WalkOptions& options) {
  const std::size_t cap = options.max_word_len.value_or(rs.max_word_len());
  const auto& prods = rs.productions();
  Obfuscation result{GroupWord(w.begin(), w.end()), 0, 0};
  GroupWord& cur = result.word;

  struct Hit {
    std::size_t production;
    std::size_t position;
  };
  std::vector<Hit> swaps;
  std::vector<Hit> deletes;
  std::vector<std::size_t> inserts;
  std::vector<std::size_t> cancels;

  for (std::size_t step = 0; step < steps; ++step) {
    swaps.clear();
    deletes.clear();
    inserts.clear();
    cancels.clear();
    const std::size_t n = cur.size();
    rs.for_each_occurrence(cur, [&](std::size_t p, std::size_t pos) {
      if (n - prods[p].pattern.size() + prods[p].replacement.size() > cap) return;
      (prods[p].kind == MoveKind::relator_delete ? deletes : swaps).push_back({p, pos});
    });
    for (std::size_t p : rs.insertions()) {
      if (n + prods[p].replacement.size() <= cap) inserts.push_back(p);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (cur[i].cancels(cur[i + 1])) cancels.push_back(i);
    }
    const std::size_t gaps = n + 1;
    const std::size_t free_inserts = (n + 2 <= cap) ? 2 * rs.generators().size() * gaps : 0;
    const std::size_t relator_moves = inserts.size() * gaps + deletes.size();

    const std::array<double, 4> weight{
        swaps.empty() ? 0.0 : options.weights.factor_swap,
        free_inserts == 0 ? 0.0 : options.weights.free_insert,
        cancels.empty() ? 0.0 : options.weights.free_cancel,
        relator_moves == 0 ? 0.0 : options.weights.relator,
    };
    const double total = weight[0] + weight[1] + weight[2] + weight[3];
    if (total <= 0.0) {
      ++result.skipped;
      continue;
    }
    double pick = rng.unit() * total;
    std::size_t kind = weight.size();
    for (std::size_t k = 0; k < weight.size(); ++k) {
      if (weight[k] == 0.0) continue;
      kind = k;
      if (pick < weight[k]) break;
      pick -= weight[k];
    }

    switch (kind) {
      case 0: {
        const Hit h = swaps[rng.below(swaps.size())];
        cur = splice(cur, h.position, prods[h.production].pattern.size(),
                     prods[h.production].replacement);
        break;
      }
      case 1: {
        const std::size_t k = rng.below(free_inserts);
        const std::size_t gap = k / (2 * rs.generators().size());
        const std::size_t g = k % (2 * rs.generators().size());
        const Generator s{rs.generators()[g / 2], (g & 1) != 0};
        const GroupWord pair{s, s.inverted()};
        cur = splice(cur, gap, 0, pair);
        break;
      }
      case 2: {
        const std::size_t i = cancels[rng.below(cancels.size())];
        cur = splice(cur, i, 2, {});
        break;
      }
      default: {
        const std::size_t k = rng.below(relator_moves);
        if (k < inserts.size() * gaps) {
          const std::size_t p = inserts[k % inserts.size()];
          cur = splice(cur, k / inserts.size(), 0, prods[p].replacement);
        } else {
          const Hit h = deletes[k - inserts.size() * gaps];
          cur = splice(cur, h.position, prods[h.production].pattern.size(), {});
        }
        break;
      }
    }
    ++result.applied;
  }
  return result;
}

GroupWord substitute(std::span<const Generator> w, const std::map<StateId, GroupWord>& phi) {
  GroupWord out;
  for (const Generator g : w) {
    auto it = phi.find(g.state);
    if (it == phi.end()) {
      throw Error(ErrorKind::undefined_generator_in_substitution,
                  "substitution undefined on state " + std::to_string(g.state));
    }
    if (g.inverse) {
      const GroupWord inv = inverse_word(it->second);
      out.insert(out.end(), inv.begin(), inv.end());
    } else {
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  return free_reduce(out);
}

std::vector<GroupWord> expand_lpresentation(const LPresentation& presentation, std::size_t depth) {
  std::vector<GroupWord> out;
  std::set<GroupWord> seen;
  auto emit = [&](GroupWord w) {
    w = free_reduce(w);
    if (w.empty() || !seen.insert(w).second) return;
    out.push_back(std::move(w));
  };
  for (const GroupWord& r : presentation.fixed) emit(r);
  std::vector<GroupWord> layer = presentation.iterated;
  for (std::size_t k = 0; k <= depth; ++k) {
    for (const GroupWord& r : layer) emit(r);
    if (k == depth) break;
    for (GroupWord& r : layer) r = substitute(r, presentation.substitution);
  }
  return out;
}

BallGrowth reachable_count(std::span<const Generator> w, const RewriteSystem& rs, std::size_t n,
                           std::size_t cap) {
  BallGrowth growth;
  std::unordered_set<GroupWord, WordHash> ball;
  std::vector<GroupWord> frontier{GroupWord(w.begin(), w.end())};
  ball.insert(frontier.front());
  growth.counts.push_back(ball.size());
  growth.truncated.push_back(false);

  bool truncated = false;
  for (std::size_t step = 1; step <= n; ++step) {
    std::vector<GroupWord> next;
    for (const GroupWord& cur : frontier) {
      if (truncated) break;
      for (const RewriteMove& m : applicable_moves(cur, rs)) {
        GroupWord nw = apply_move(cur, m);
        if (nw.size() > rs.max_word_len()) continue;
        if (!ball.insert(nw).second) continue;
        next.push_back(std::move(nw));
        if (ball.size() > cap) {
          truncated = true;
          break;
        }
      }
    }
    growth.counts.push_back(ball.size());
    growth.truncated.push_back(truncated);
    frontier = std::move(next);
  }
  return growth;
}

}  // namespace autgrp
