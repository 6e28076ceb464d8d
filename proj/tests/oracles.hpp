#pragma once

// Independent test oracles. Nothing here calls the code paths under test:
// satisfiability is decided by exhaustive enumeration of small pointed models,
// and the attention event-model counts and sizes are computed arithmetically
// from the construction rules.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "adel/adel.hpp"

namespace oracle {

using adel::Formula;

// --- exhaustive K-satisfiability over bounded models -----------------------------
//
// Enumerates every pointed Kripke model with point w0, up to `max_worlds`
// worlds, over the formula's atomic tokens (atoms, attention atoms and opaque
// attends tokens). Valuations are swept in bulk: each subformula's truth at a
// world is a bitvector indexed by the valuation, so one pass over the
// relation space covers every valuation at once.

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline void collect_tokens(const Formula& f, std::vector<Formula>& out) {
  switch (f->kind) {
    case adel::Connective::atom:
    case adel::Connective::att_atom:
    case adel::Connective::attends:
      if (!adel::contains(out, f)) {
        out.push_back(f);
        std::sort(out.begin(), out.end(), adel::FormulaLess{});
      }
      return;
    case adel::Connective::neg:
    case adel::Connective::believes:
      collect_tokens(f->lhs, out);
      return;
    case adel::Connective::conj:
      collect_tokens(f->lhs, out);
      collect_tokens(f->rhs, out);
      return;
    default:
      return;
  }
}

struct Node {
  adel::Connective kind;
  int child = -1, child2 = -1;
  int token = -1;     // atom-ish slot
  int agent = -1;
  bool modal = false; // has a believes node beneath (relation-dependent)
};

inline int flatten(const Formula& f, const std::vector<Formula>& tokens,
                   const std::vector<adel::Agent>& agents, std::vector<Node>& nodes) {
  Node n;
  n.kind = f->kind;
  switch (f->kind) {
    case adel::Connective::top:
      break;
    case adel::Connective::atom:
    case adel::Connective::att_atom:
    case adel::Connective::attends: {
      auto it = std::lower_bound(tokens.begin(), tokens.end(), f, adel::FormulaLess{});
      n.token = static_cast<int>(it - tokens.begin());
      break;
    }
    case adel::Connective::neg:
      n.child = flatten(f->lhs, tokens, agents, nodes);
      n.modal = nodes[n.child].modal;
      break;
    case adel::Connective::conj:
      n.child = flatten(f->lhs, tokens, agents, nodes);
      n.child2 = flatten(f->rhs, tokens, agents, nodes);
      n.modal = nodes[n.child].modal || nodes[n.child2].modal;
      break;
    case adel::Connective::believes: {
      n.child = flatten(f->lhs, tokens, agents, nodes);
      auto it = std::find(agents.begin(), agents.end(), f->agent);
      n.agent = static_cast<int>(it - agents.begin());
      n.modal = true;
      break;
    }
    default:
      throw adel::error("enumeration oracle expects a static formula");
  }
  nodes.push_back(n);
  return static_cast<int>(nodes.size()) - 1;
}

}  // namespace detail

inline bool enumeration_satisfiable(const Formula& f, std::size_t max_worlds = 3) {
  using namespace detail;
  std::vector<Formula> tokens;
  collect_tokens(f, tokens);
  std::set<adel::Agent> agent_set;
  adel::collect_agents(f, agent_set);
  std::vector<adel::Agent> agents(agent_set.begin(), agent_set.end());
  std::size_t k = tokens.size();
  std::size_t na = agents.size();

  std::vector<Node> nodes;
  int root = flatten(f, tokens, agents, nodes);

  for (std::size_t n = 1; n <= max_worlds; ++n) {
    if (n * k > 20) throw adel::error("enumeration oracle: valuation space too large");
    std::size_t vbits = std::size_t{1} << (n * k);
    std::size_t words = (vbits + 63) / 64;
    auto full_mask = [&](Bits& b) {
      b.assign(words, ~0ull);
      if (vbits % 64) b.back() = (1ull << (vbits % 64)) - 1;
    };

    // truth of token t at world w, as a function of the valuation index
    std::vector<std::vector<Bits>> token_bits(n, std::vector<Bits>(std::max<std::size_t>(k, 1)));
    for (std::size_t w = 0; w < n; ++w) {
      for (std::size_t t = 0; t < k; ++t) {
        Bits& b = token_bits[w][t];
        b.assign(words, 0);
        std::size_t bit = w * k + t;
        for (std::size_t v = 0; v < vbits; ++v)
          if ((v >> bit) & 1) b[v / 64] |= 1ull << (v % 64);
      }
    }

    // per-node truth vectors, one per world
    std::vector<std::vector<Bits>> rows(nodes.size(), std::vector<Bits>(n));
    auto eval_node = [&](std::size_t i, const std::vector<std::uint32_t>& rel) {
      const Node& nd = nodes[i];
      for (std::size_t w = 0; w < n; ++w) {
        Bits& b = rows[i][w];
        switch (nd.kind) {
          case adel::Connective::top:
            full_mask(b);
            break;
          case adel::Connective::atom:
          case adel::Connective::att_atom:
          case adel::Connective::attends:
            b = token_bits[w][nd.token];
            break;
          case adel::Connective::neg: {
            b.assign(words, 0);
            const Bits& c = rows[nd.child][w];
            for (std::size_t x = 0; x < words; ++x) b[x] = ~c[x];
            if (vbits % 64) b.back() &= (1ull << (vbits % 64)) - 1;
            break;
          }
          case adel::Connective::conj: {
            const Bits& c1 = rows[nd.child][w];
            const Bits& c2 = rows[nd.child2][w];
            b.assign(words, 0);
            for (std::size_t x = 0; x < words; ++x) b[x] = c1[x] & c2[x];
            break;
          }
          case adel::Connective::believes: {
            full_mask(b);
            std::uint32_t bits = rel[nd.agent];
            for (std::size_t v = 0; v < n; ++v) {
              if ((bits >> (w * n + v)) & 1) {
                const Bits& c = rows[nd.child][v];
                for (std::size_t x = 0; x < words; ++x) b[x] &= c[x];
              }
            }
            break;
          }
          default:
            break;
        }
      }
    };

    // relation-independent nodes once
    std::vector<std::uint32_t> no_rel(std::max<std::size_t>(na, 1), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!nodes[i].modal) eval_node(i, no_rel);

    std::size_t rel_bits = n * n;
    std::uint64_t rel_count = 1ull << (rel_bits * na);
    std::vector<std::uint32_t> rel(std::max<std::size_t>(na, 1));
    for (std::uint64_t rc = 0; rc < rel_count; ++rc) {
      for (std::size_t ai = 0; ai < na; ++ai)
        rel[ai] = static_cast<std::uint32_t>((rc >> (ai * rel_bits)) & ((1u << rel_bits) - 1));
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].modal) eval_node(i, rel);
      for (std::size_t x = 0; x < words; ++x)
        if (rows[root][0][x]) return true;  // some valuation at point w0
    }
  }
  return false;
}

// --- arithmetic sizes for the attention event models -------------------------------

// Token count of a conjunction built from `parts` tokens per conjunct: the
// conjuncts plus one '&' per join; the empty conjunction is the single T.
inline std::size_t conj_tokens(const std::vector<std::size_t>& parts) {
  if (parts.empty()) return 1;
  std::size_t total = 0;
  for (auto p : parts) total += p;
  return total + (parts.size() - 1);
}

struct FExpectation {
  std::size_t events = 0;
  std::size_t designated = 0;
  std::size_t size = 0;
};

// Expected shape of the standard attention event model for a revelation of
// `lits` literals (positive flag per literal) over `num_agents` agents,
// enumerated directly from the construction rules.
inline FExpectation expected_f(const std::vector<bool>& lits, std::size_t num_agents) {
  std::size_t n = lits.size();
  FExpectation out;
  std::vector<std::size_t> subset_events;  // events per revealed subset
  std::size_t edge_total = 0;

  // enumerate events (S, X_1..X_A)
  std::vector<std::size_t> event_sizes;
  for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) {
    std::vector<std::size_t> atts;  // per-agent attended subsets of s
    std::vector<std::size_t> stack(num_agents, 0);
    for (;;) {
      std::vector<std::size_t> parts;
      for (std::size_t i = 0; i < n; ++i)
        if ((s >> i) & 1) parts.push_back(lits[i] ? 1 : 2);
      for (std::size_t a = 0; a < num_agents; ++a) {
        for (std::size_t i = 0; i < n; ++i)
          if ((stack[a] >> i) & 1) parts.push_back(1);
        for (std::size_t i = 0; i < n; ++i)
          if (((s >> i) & 1) && !((stack[a] >> i) & 1)) parts.push_back(2);
      }
      event_sizes.push_back(conj_tokens(parts));
      ++out.events;
      if (s == (std::size_t{1} << n) - 1) ++out.designated;
      // edges from this event for each agent: targets have subset == attended
      // set and the same attended set for that agent, others free over it
      for (std::size_t a = 0; a < num_agents; ++a) {
        std::size_t attended = stack[a];
        std::size_t bits = 0;
        for (std::size_t i = 0; i < n; ++i) bits += (attended >> i) & 1;
        std::size_t targets = 1;
        for (std::size_t b = 0; b + 1 < num_agents; ++b) targets <<= bits;
        edge_total += targets;
      }
      std::size_t a = 0;
      for (; a < num_agents; ++a) {
        stack[a] = (stack[a] - s) & s;
        if (stack[a] != 0) break;
      }
      if (a == num_agents) break;
    }
  }
  out.size = out.events + edge_total;
  for (auto sz : event_sizes) out.size += sz;
  return out;
}

// Expected size of the edge-conditioned attention event model for `lits`
// literals over `num_agents` agents.
inline std::size_t expected_h_size(const std::vector<bool>& lits, std::size_t num_agents) {
  std::size_t n = lits.size();
  std::size_t size = std::size_t{1} << n;  // |E|
  for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) {
    std::vector<std::size_t> parts;
    for (std::size_t i = 0; i < n; ++i)
      if ((s >> i) & 1) parts.push_back(lits[i] ? 1 : 2);
    size += conj_tokens(parts);  // pre(e) = e
  }
  std::size_t per_agent = 0;
  for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) {
    std::size_t t = s;
    for (;;) {
      ++per_agent;  // the edge itself
      std::size_t in_t = 0, in_s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        in_t += (t >> i) & 1;
        in_s += (s >> i) & 1;
      }
      std::vector<std::size_t> src;
      for (std::size_t i = 0; i < in_t; ++i) src.push_back(1);      // Att tokens
      for (std::size_t i = 0; i < in_s - in_t; ++i) src.push_back(2);  // negated
      std::vector<std::size_t> tgt(in_t, 1);
      per_agent += conj_tokens(src) + conj_tokens(tgt);
      if (t == 0) break;
      t = (t - 1) & s;
    }
  }
  return size + per_agent * num_agents;
}

}  // namespace oracle
