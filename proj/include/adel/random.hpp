#pragma once

// Seeded generators for models, event models and formulas, used by the
// property batteries. Everything is a pure function of the seed: raw
// mt19937_64 output is mapped to ranges directly rather than through
// distribution objects, so results are identical across standard libraries.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "adel/ast.hpp"
#include "adel/model.hpp"

namespace adel {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::size_t below(std::size_t n) { return n == 0 ? 0 : next() % n; }

  double real() { return (next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return real() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

 private:
  std::mt19937_64 eng_;
};

struct RandomModelParams {
  std::size_t num_worlds = 3;
  double edge_density = 0.4;
  std::map<Agent, double> density_per_agent;  // overrides edge_density
  std::vector<Agent> agents;
  std::vector<Atom> atoms;
  std::vector<AttAtomKey> att_atoms;          // sampled into valuations (PA regime)
  std::vector<Formula> attention_universe;    // sampled into attention sets (GA regime)
  double valuation_density = 0.5;
  std::uint64_t seed = 0;

  double density_for(const Agent& a) const {
    auto it = density_per_agent.find(a);
    return it == density_per_agent.end() ? edge_density : it->second;
  }
};

inline KripkeModel random_kripke(const RandomModelParams& p) {
  Rng rng(p.seed);
  KripkeModel m;
  for (std::size_t i = 0; i < p.num_worlds; ++i) m.worlds.push_back("w" + std::to_string(i));
  for (const auto& a : p.agents) {
    auto& edges = m.rel[a];
    double d = p.density_for(a);
    for (const auto& u : m.worlds)
      for (const auto& v : m.worlds)
        if (rng.chance(d)) edges.insert({u, v});
  }
  for (const auto& w : m.worlds) {
    Valuation val;
    for (const auto& at : p.atoms)
      if (rng.chance(p.valuation_density)) val.atoms.insert(at);
    for (const auto& h : p.att_atoms)
      if (rng.chance(p.valuation_density)) val.att_atoms.insert(h);
    m.val[w] = std::move(val);
  }
  return m;
}

// Attention-model generator: plain-atom valuation, attention sets drawn
// independently per agent and world from the given universe.
inline AttentionModel random_model(const RandomModelParams& p) {
  RandomModelParams base = p;
  base.att_atoms.clear();
  AttentionModel m;
  m.base = random_kripke(base);
  Rng rng(p.seed + 0x9e3779b97f4a7c15ull);
  for (const auto& a : p.agents) {
    for (const auto& w : m.base.worlds) {
      std::vector<Formula> fs;
      for (const auto& f : p.attention_universe)
        if (rng.chance(p.valuation_density)) fs.push_back(f);
      m.att[a][w] = canonical_sorted(std::move(fs));
    }
  }
  return m;
}

struct RandomFormulaParams {
  std::vector<Agent> agents;
  std::vector<Atom> atoms;
  std::size_t max_depth = 2;       // modal nesting bound
  std::size_t max_nodes = 24;
  bool allow_att_atoms = false;
  bool allow_attends = false;      // attends over atoms and small boolean bodies
};

namespace detail {

inline Formula random_formula_rec(Rng& rng, const RandomFormulaParams& p, std::size_t depth,
                                  std::size_t& budget) {
  if (budget > 0) --budget;
  bool leaf_only = budget == 0;
  // weighted choice over the available constructors
  std::vector<int> choices = {0, 0, 1, 1, 2};  // atom, atom, neg, neg, conj
  if (p.allow_att_atoms) choices.push_back(5);
  if (depth > 0) {
    choices.insert(choices.end(), {3, 3});  // believes
    if (p.allow_attends) choices.push_back(6);
  }
  choices.push_back(4);  // top, rarely
  int c = leaf_only ? (rng.chance(0.1) ? 4 : 0) : static_cast<int>(rng.pick(choices));
  switch (c) {
    case 1:
      return mk_not(random_formula_rec(rng, p, depth, budget));
    case 2:
      return mk_and(random_formula_rec(rng, p, depth, budget),
                    random_formula_rec(rng, p, depth, budget));
    case 3:
      return mk_believes(rng.pick(p.agents), random_formula_rec(rng, p, depth - 1, budget));
    case 4:
      return top();
    case 5:
      return mk_att_atom(rng.pick(p.agents), rng.pick(p.atoms));
    case 6:
      return mk_attends(rng.pick(p.agents), random_formula_rec(rng, p, depth - 1, budget));
    default:
      return mk_atom(rng.pick(p.atoms));
  }
}

}  // namespace detail

inline Formula random_formula(Rng& rng, const RandomFormulaParams& p) {
  std::size_t budget = p.max_nodes;
  return detail::random_formula_rec(rng, p, p.max_depth, budget);
}

// --- random event models ------------------------------------------------------

struct RandomEventParams {
  std::size_t max_events = 4;
  double edge_density = 0.5;
  std::vector<Agent> agents;
  std::vector<Formula> condition_pool;  // sampled for preconditions and edge conditions
  std::uint64_t seed = 0;
};

inline StandardEventModel random_sem(const RandomEventParams& p) {
  Rng rng(p.seed);
  StandardEventModel m;
  std::size_t k = 1 + rng.below(p.max_events);
  for (std::size_t i = 0; i < k; ++i) m.events.push_back("e" + std::to_string(i));
  for (const auto& e : m.events) m.pre[e] = rng.pick(p.condition_pool);
  for (const auto& a : p.agents) {
    auto& edges = m.rel[a];
    for (const auto& u : m.events)
      for (const auto& v : m.events)
        if (rng.chance(p.edge_density)) edges.insert({u, v});
  }
  m.designated = {m.events[rng.below(k)]};
  return m;
}

inline EdgeConditionedEventModel random_ecem(const RandomEventParams& p) {
  Rng rng(p.seed);
  EdgeConditionedEventModel m;
  std::size_t k = 1 + rng.below(p.max_events);
  for (std::size_t i = 0; i < k; ++i) m.events.push_back("e" + std::to_string(i));
  for (const auto& e : m.events) m.pre[e] = rng.pick(p.condition_pool);
  for (const auto& a : p.agents) {
    auto& edges = m.edges[a];
    for (const auto& u : m.events)
      for (const auto& v : m.events)
        if (rng.chance(p.edge_density))
          edges.push_back({u, rng.pick(p.condition_pool), v, rng.pick(p.condition_pool)});
  }
  m.designated = m.events[rng.below(k)];
  return m;
}

inline GeneralizedArrowUpdate random_gau(const RandomEventParams& p) {
  Rng rng(p.seed);
  GeneralizedArrowUpdate m;
  std::size_t k = 1 + rng.below(p.max_events);
  for (std::size_t i = 0; i < k; ++i) m.outcomes.push_back("o" + std::to_string(i));
  for (const auto& a : p.agents) {
    auto& per_outcome = m.arrows[a];
    for (const auto& o : m.outcomes) {
      auto& arrows = per_outcome[o];
      std::size_t count = rng.below(3);
      for (std::size_t i = 0; i < count; ++i)
        arrows.push_back(
            {rng.pick(p.condition_pool), m.outcomes[rng.below(k)], rng.pick(p.condition_pool)});
    }
  }
  m.designated = m.outcomes[rng.below(k)];
  return m;
}

}  // namespace adel
