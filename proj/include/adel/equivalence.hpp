#pragma once

// Bisimilarity and isomorphism of finite models, with checkable witnesses.
// Bisimilarity is decided by partition refinement on the disjoint union; the
// returned relation is the coarsest bisimulation. Witness validation is kept
// separate so a failing test can distinguish a search bug from a false claim.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adel/model.hpp"
#include "adel/random.hpp"
#include "adel/semantics.hpp"
#include "adel/syntax.hpp"

namespace adel {

struct BisimulationWitness {
  std::set<std::pair<std::string, std::string>> relation;
};

struct IsomorphismWitness {
  std::map<std::string, std::string> bijection;
};

namespace detail {

// World label: everything the [Atom] clause must preserve. For attention
// models this includes the attention sets.
inline std::string world_label(const EvalModel& m, const std::string& w) {
  std::string out;
  const Valuation& val = m.kripke().valuation(w);
  for (const auto& p : val.atoms) out += p.id + ";";
  out += "|";
  for (const auto& h : val.att_atoms) out += h.agent.id + ":" + h.atom.id + ";";
  if (m.is_attention()) {
    out += "|";
    for (const auto& [a, per_world] : m.attention().att) {
      auto it = per_world.find(w);
      if (it == per_world.end() || it->second.empty()) continue;
      out += a.id + "{";
      for (const auto& f : it->second) out += print_formula(f) + ";";
      out += "}";
    }
  }
  return out;
}

struct UnionGraph {
  std::vector<std::string> ids;          // disjoint union, model 1 then model 2
  std::size_t split;                     // first index of model 2
  std::vector<std::string> labels;
  std::vector<Agent> agents;
  // succ[a][w] = sorted successor indices
  std::vector<std::vector<std::vector<int>>> succ;
};

inline UnionGraph build_union(const EvalModel& m1, const EvalModel& m2) {
  if (m1.is_attention() != m2.is_attention())
    throw regime_error("cannot relate an attention model with a plain Kripke model");
  UnionGraph g;
  std::set<Agent> agent_set;
  for (const auto& [a, es] : m1.kripke().rel) agent_set.insert(a);
  for (const auto& [a, es] : m2.kripke().rel) agent_set.insert(a);
  if (m1.is_attention()) {
    for (const auto& [a, pw] : m1.attention().att) agent_set.insert(a);
    for (const auto& [a, pw] : m2.attention().att) agent_set.insert(a);
  }
  g.agents.assign(agent_set.begin(), agent_set.end());

  std::map<std::string, int> idx1, idx2;
  for (const auto& w : m1.kripke().worlds) {
    idx1[w] = static_cast<int>(g.ids.size());
    g.ids.push_back(w);
    g.labels.push_back(world_label(m1, w));
  }
  g.split = g.ids.size();
  for (const auto& w : m2.kripke().worlds) {
    idx2[w] = static_cast<int>(g.ids.size());
    g.ids.push_back(w);
    g.labels.push_back(world_label(m2, w));
  }
  g.succ.assign(g.agents.size(), std::vector<std::vector<int>>(g.ids.size()));
  for (std::size_t ai = 0; ai < g.agents.size(); ++ai) {
    for (const auto& [u, v] : m1.kripke().edges(g.agents[ai]))
      g.succ[ai][idx1.at(u)].push_back(idx1.at(v));
    for (const auto& [u, v] : m2.kripke().edges(g.agents[ai]))
      g.succ[ai][idx2.at(u)].push_back(idx2.at(v));
  }
  return g;
}

// Coarsest stable partition: start from labels, split by successor-block
// signatures until a fixed point.
inline std::vector<int> refine(const UnionGraph& g) {
  std::vector<int> block(g.ids.size());
  {
    std::map<std::string, int> by_label;
    for (std::size_t i = 0; i < g.ids.size(); ++i) {
      auto [it, fresh] = by_label.emplace(g.labels[i], static_cast<int>(by_label.size()));
      block[i] = it->second;
    }
  }
  for (;;) {
    std::map<std::vector<int>, int> by_sig;
    std::vector<int> next(g.ids.size());
    for (std::size_t i = 0; i < g.ids.size(); ++i) {
      std::vector<int> sig{block[i]};
      for (std::size_t ai = 0; ai < g.agents.size(); ++ai) {
        std::set<int> succ_blocks;
        for (int v : g.succ[ai][i]) succ_blocks.insert(block[v]);
        sig.push_back(-1);  // agent separator
        sig.insert(sig.end(), succ_blocks.begin(), succ_blocks.end());
      }
      auto [it, fresh] = by_sig.emplace(std::move(sig), static_cast<int>(by_sig.size()));
      next[i] = it->second;
    }
    bool changed = false;
    for (std::size_t i = 0; i < g.ids.size(); ++i)
      if (next[i] != block[i]) changed = true;
    block.swap(next);
    if (!changed) return block;
  }
}

}  // namespace detail

// The coarsest bisimulation between the two models as a cross relation;
// empty when no pair of worlds is bisimilar.
inline BisimulationWitness coarsest_bisimulation(const EvalModel& m1, const EvalModel& m2) {
  auto g = detail::build_union(m1, m2);
  auto block = detail::refine(g);
  BisimulationWitness w;
  for (std::size_t i = 0; i < g.split; ++i)
    for (std::size_t j = g.split; j < g.ids.size(); ++j)
      if (block[i] == block[j]) w.relation.insert({g.ids[i], g.ids[j]});
  return w;
}

inline std::optional<BisimulationWitness> bisimilar(const EvalModel& m1, const std::string& w1,
                                                    const EvalModel& m2, const std::string& w2) {
  BisimulationWitness w = coarsest_bisimulation(m1, m2);
  if (!w.relation.count({w1, w2})) return std::nullopt;
  return w;
}

inline std::optional<BisimulationWitness> bisimilar(const PointedModel& a, const PointedModel& b) {
  return bisimilar(EvalModel(a.model), a.point, EvalModel(b.model), b.point);
}

// Pure bisimulation checker: atom agreement plus back-and-forth matching, and
// containment of the point pair when points are given.
inline std::vector<std::string> validate_bisimulation(
    const EvalModel& m1, const EvalModel& m2, const BisimulationWitness& w,
    const std::optional<std::pair<std::string, std::string>>& points = std::nullopt) {
  std::vector<std::string> out;
  if (w.relation.empty()) out.push_back("relation is empty");
  if (points && !w.relation.count(*points))
    out.push_back("relation misses the point pair (" + points->first + "," + points->second + ")");
  std::set<Agent> agents;
  for (const auto& [a, es] : m1.kripke().rel) agents.insert(a);
  for (const auto& [a, es] : m2.kripke().rel) agents.insert(a);
  for (const auto& [u, v] : w.relation) {
    if (detail::world_label(m1, u) != detail::world_label(m2, v))
      out.push_back("label mismatch on (" + u + "," + v + ")");
    for (const auto& a : agents) {
      for (const auto& u2 : m1.kripke().successors(a, u)) {
        bool matched = false;
        for (const auto& v2 : m2.kripke().successors(a, v))
          if (w.relation.count({u2, v2})) matched = true;
        if (!matched)
          out.push_back("forth fails at (" + u + "," + v + ") for agent " + a.id + " edge to " +
                        u2);
      }
      for (const auto& v2 : m2.kripke().successors(a, v)) {
        bool matched = false;
        for (const auto& u2 : m1.kripke().successors(a, u))
          if (w.relation.count({u2, v2})) matched = true;
        if (!matched)
          out.push_back("back fails at (" + u + "," + v + ") for agent " + a.id + " edge to " +
                        v2);
      }
    }
  }
  return out;
}

// --- isomorphism -------------------------------------------------------------

inline std::vector<std::string> validate_isomorphism(const EvalModel& m1, const EvalModel& m2,
                                                     const IsomorphismWitness& w) {
  std::vector<std::string> out;
  const auto& w1 = m1.kripke().worlds;
  const auto& w2 = m2.kripke().worlds;
  if (w1.size() != w2.size()) out.push_back("world counts differ");
  std::set<std::string> image;
  for (const auto& u : w1) {
    auto it = w.bijection.find(u);
    if (it == w.bijection.end()) {
      out.push_back("map undefined on '" + u + "'");
      continue;
    }
    if (!m2.kripke().has_world(it->second)) {
      out.push_back("map sends '" + u + "' outside the codomain");
      continue;
    }
    if (!image.insert(it->second).second) out.push_back("map not injective at '" + u + "'");
    if (detail::world_label(m1, u) != detail::world_label(m2, it->second))
      out.push_back("label mismatch at '" + u + "'");
  }
  if (!out.empty()) return out;
  std::set<Agent> agents;
  for (const auto& [a, es] : m1.kripke().rel) agents.insert(a);
  for (const auto& [a, es] : m2.kripke().rel) agents.insert(a);
  for (const auto& a : agents) {
    const auto& e1 = m1.kripke().edges(a);
    const auto& e2 = m2.kripke().edges(a);
    if (e1.size() != e2.size()) out.push_back("edge counts differ for agent " + a.id);
    for (const auto& [u, v] : e1)
      if (!e2.count({w.bijection.at(u), w.bijection.at(v)}))
        out.push_back("edge (" + u + "," + v + ") for " + a.id + " has no image");
  }
  return out;
}

struct iso_bound_error : error {
  using error::error;
};

namespace detail {

inline bool iso_search(const UnionGraph& g, std::vector<int>& assign, std::size_t next,
                       std::vector<bool>& used) {
  std::size_t n = g.split;
  if (next == n) return true;
  for (std::size_t j = 0; j < g.ids.size() - n; ++j) {
    if (used[j]) continue;
    std::size_t cand = g.split + j;
    if (g.labels[next] != g.labels[cand]) continue;
    bool ok = true;
    for (std::size_t ai = 0; ai < g.agents.size() && ok; ++ai) {
      if (g.succ[ai][next].size() != g.succ[ai][cand].size()) ok = false;
      // edges between already-assigned worlds must agree in both directions
      for (std::size_t prev = 0; prev <= next && ok; ++prev) {
        int pi = static_cast<int>(prev), pc = assign[prev];
        if (prev == next) pc = static_cast<int>(cand);
        auto has = [&](const std::vector<int>& xs, int x) {
          return std::find(xs.begin(), xs.end(), x) != xs.end();
        };
        bool fwd1 = has(g.succ[ai][next], pi);
        bool fwd2 = has(g.succ[ai][cand], pc);
        bool bwd1 = has(g.succ[ai][prev], static_cast<int>(next));
        bool bwd2 = has(g.succ[ai][prev == next ? cand : assign[prev]], static_cast<int>(cand));
        if (fwd1 != fwd2 || bwd1 != bwd2) ok = false;
      }
    }
    if (!ok) continue;
    assign[next] = static_cast<int>(cand);
    used[j] = true;
    if (iso_search(g, assign, next + 1, used)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace detail

// Exact isomorphism. A supplied candidate bijection is validated directly and
// has no size bound; the generic backtracking search refuses models larger
// than the bound.
inline std::optional<IsomorphismWitness> isomorphic(
    const EvalModel& m1, const EvalModel& m2,
    const std::optional<IsomorphismWitness>& candidate = std::nullopt, std::size_t bound = 12) {
  if (candidate) {
    if (validate_isomorphism(m1, m2, *candidate).empty()) return candidate;
    return std::nullopt;
  }
  if (m1.kripke().worlds.size() != m2.kripke().worlds.size()) return std::nullopt;
  if (m1.kripke().worlds.size() > bound)
    throw iso_bound_error("model exceeds the isomorphism search bound (" + std::to_string(bound) +
                          " worlds); supply a candidate bijection");
  auto g = detail::build_union(m1, m2);
  std::vector<int> assign(g.split, -1);
  std::vector<bool> used(g.ids.size() - g.split, false);
  if (!detail::iso_search(g, assign, 0, used)) return std::nullopt;
  IsomorphismWitness w;
  for (std::size_t i = 0; i < g.split; ++i) w.bijection[g.ids[i]] = g.ids[assign[i]];
  return w;
}

// --- update-equivalence battery ----------------------------------------------

inline bool event_applicable(const PointedModel& pm, const EventModelVariant& d) {
  EvalModel m(pm.model);
  return std::visit([&](const auto& ev) { return applicable(m, pm.point, *ev); }, d);
}

inline UpdateResult apply_event(const PointedModel& pm, const EventModelVariant& d) {
  if (std::holds_alternative<SemPtr>(d)) return update_sem(pm, *std::get<SemPtr>(d));
  if (std::holds_alternative<EcemPtr>(d)) return update_ecem(pm, *std::get<EcemPtr>(d));
  return update_gau(pm, *std::get<GauPtr>(d));
}

struct BatteryParams {
  std::size_t count = 100;
  RandomModelParams model;
  std::uint64_t seed = 0;
};

struct BatteryCounterexample {
  PointedModel model;
  std::string reason;
  std::uint64_t model_seed = 0;
};

struct BatteryVerdict {
  bool ok = true;
  std::size_t runs = 0;
  std::size_t applicable_runs = 0;
  std::optional<BatteryCounterexample> counterexample;
};

// Samples pointed models and falsifies update equivalence: applicability must
// agree, and applicable updates must be bisimilar. A universal claim can only
// be refuted this way, never confirmed.
inline BatteryVerdict update_equivalence_battery(const EventModelVariant& d1,
                                                 const EventModelVariant& d2,
                                                 const BatteryParams& params) {
  BatteryVerdict verdict;
  for (std::size_t i = 0; i < params.count; ++i) {
    RandomModelParams mp = params.model;
    mp.seed = params.seed + i;
    PointedModel pm;
    if (!mp.attention_universe.empty())
      pm.model = random_model(mp);
    else
      pm.model = random_kripke(mp);
    Rng point_rng(mp.seed ^ 0xabcdef12345ull);
    pm.point = base_of(pm.model).worlds[point_rng.below(base_of(pm.model).worlds.size())];
    ++verdict.runs;

    bool app1 = event_applicable(pm, d1);
    bool app2 = event_applicable(pm, d2);
    if (app1 != app2) {
      verdict.ok = false;
      verdict.counterexample = {pm, "applicability disagrees", mp.seed};
      return verdict;
    }
    if (!app1) continue;
    ++verdict.applicable_runs;
    UpdateResult r1 = apply_event(pm, d1);
    UpdateResult r2 = apply_event(pm, d2);
    auto w = bisimilar(EvalModel(*r1.model), r1.point, EvalModel(*r2.model), r2.point);
    if (!w) {
      verdict.ok = false;
      verdict.counterexample = {pm, "updates are not bisimilar", mp.seed};
      return verdict;
    }
  }
  return verdict;
}

}  // namespace adel
