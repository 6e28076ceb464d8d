#pragma once

// Translations between the three event-model formalisms, each with its
// formula-level companion that rewrites the corresponding dynamic modalities.
//
//   standard -> edge-conditioned   trivial edge conditions, linear growth
//   edge-conditioned -> standard   events split by maximal consistent sets of
//                                  the edge conditions at each event
//   arrow update -> edge-conditioned   outcomes become events with trivial
//                                      preconditions, linear growth
//
// The edge-conditioned -> standard direction needs a consistency decision
// procedure; callers pass one (the tableau-backed default lives in sat.hpp).

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "adel/ast.hpp"
#include "adel/syntax.hpp"

namespace adel {

using ConsistencyOracle = std::function<bool(const std::vector<Formula>&)>;

// --- standard -> edge-conditioned --------------------------------------------

Formula translate_formula_sem_to_ecem(const Formula& f);

inline EdgeConditionedEventModel translate_sem_to_ecem(const StandardEventModel& e) {
  if (e.designated.size() != 1)
    throw error("only a pointed standard event model can be re-pointed as edge-conditioned");
  EdgeConditionedEventModel c;
  c.name = e.name.empty() ? "" : e.name + "~ec";
  c.events = e.events;
  c.designated = e.designated.front();
  for (const auto& [ev, pre] : e.pre) c.pre[ev] = translate_formula_sem_to_ecem(pre);
  for (const auto& [a, edges] : e.rel) {
    auto& dst = c.edges[a];
    for (const auto& [from, to] : edges) dst.push_back({from, top(), to, top()});
  }
  return c;
}

inline Formula translate_formula_sem_to_ecem(const Formula& f) {
  switch (f->kind) {
    case Connective::top:
    case Connective::atom:
    case Connective::att_atom:
    case Connective::attends:
      return f;
    case Connective::neg:
      return mk_not(translate_formula_sem_to_ecem(f->lhs));
    case Connective::conj:
      return mk_and(translate_formula_sem_to_ecem(f->lhs),
                    translate_formula_sem_to_ecem(f->rhs));
    case Connective::believes:
      return mk_believes(f->agent, translate_formula_sem_to_ecem(f->lhs));
    case Connective::dyn_sem: {
      auto c = std::make_shared<EdgeConditionedEventModel>(translate_sem_to_ecem(*f->sem));
      return mk_dyn_ecem(c, translate_formula_sem_to_ecem(f->lhs));
    }
    case Connective::dyn_ecem:
    case Connective::dyn_gau:
      return f;
  }
  return f;
}

// --- arrow update -> edge-conditioned -----------------------------------------

Formula translate_formula_gau_to_ecem(const Formula& f);

inline EdgeConditionedEventModel translate_gau_to_ecem(const GeneralizedArrowUpdate& u) {
  EdgeConditionedEventModel c;
  c.name = u.name.empty() ? "" : u.name + "~ec";
  c.events = u.outcomes;
  c.designated = u.designated;
  for (const auto& o : u.outcomes) c.pre[o] = top();
  for (const auto& [a, per_outcome] : u.arrows) {
    auto& dst = c.edges[a];
    for (const auto& [o, arrows] : per_outcome) {
      for (const auto& ar : arrows)
        dst.push_back({o, translate_formula_gau_to_ecem(ar.src_cond), ar.target,
                       translate_formula_gau_to_ecem(ar.tgt_cond)});
    }
  }
  return c;
}

inline Formula translate_formula_gau_to_ecem(const Formula& f) {
  switch (f->kind) {
    case Connective::top:
    case Connective::atom:
    case Connective::att_atom:
    case Connective::attends:
      return f;
    case Connective::neg:
      return mk_not(translate_formula_gau_to_ecem(f->lhs));
    case Connective::conj:
      return mk_and(translate_formula_gau_to_ecem(f->lhs),
                    translate_formula_gau_to_ecem(f->rhs));
    case Connective::believes:
      return mk_believes(f->agent, translate_formula_gau_to_ecem(f->lhs));
    case Connective::dyn_gau: {
      auto c = std::make_shared<EdgeConditionedEventModel>(translate_gau_to_ecem(*f->gau));
      return mk_dyn_ecem(c, translate_formula_gau_to_ecem(f->lhs));
    }
    case Connective::dyn_sem:
    case Connective::dyn_ecem:
      return f;
  }
  return f;
}

// --- edge-conditioned -> standard ---------------------------------------------

// A sign assignment over the deduplicated edge conditions at an event: one of
// the maximal jointly satisfiable ways the conditions can resolve.
struct MaximalConsistentSet {
  std::vector<std::pair<Formula, bool>> signs;  // over the sorted condition set
  std::vector<Formula> members;                 // phi or ~phi, canonical order
  Formula conjunction;                          // right-nested, T when empty
};

struct PhiConditions {
  std::vector<Formula> phi;        // source conditions out of e, target conditions into e
  std::vector<Formula> phi_prime;  // phi plus syntactic negations
  std::vector<MaximalConsistentSet> mc;
};

inline PhiConditions phi_conditions(const EdgeConditionedEventModel& c, const std::string& e,
                                    const ConsistencyOracle& consistent) {
  PhiConditions out;
  {
    std::vector<Formula> raw;
    for (const auto& [a, edges] : c.edges) {
      for (const auto& edge : edges) {
        if (edge.from == e) raw.push_back(edge.src_cond);
        if (edge.to == e) raw.push_back(edge.tgt_cond);
      }
    }
    out.phi = canonical_sorted(std::move(raw));
  }
  {
    std::vector<Formula> prime = out.phi;
    for (const auto& f : out.phi) prime.push_back(mk_not(f));
    out.phi_prime = canonical_sorted(std::move(prime));
  }
  std::size_t k = out.phi.size();
  if (k > 20) throw error("too many distinct edge conditions at event '" + e + "'");
  // All-positive first; distinct consistent sign vectors always yield distinct
  // member sets, so no dedup is needed.
  for (std::size_t mask = (1u << k); mask-- > 0;) {
    MaximalConsistentSet mcs;
    std::vector<Formula> members;
    for (std::size_t i = 0; i < k; ++i) {
      bool positive = (mask >> i) & 1;
      mcs.signs.push_back({out.phi[i], positive});
      members.push_back(positive ? out.phi[i] : mk_not(out.phi[i]));
    }
    mcs.members = canonical_sorted(std::move(members));
    if (!consistent(mcs.members)) continue;
    mcs.conjunction = mk_conjunction(mcs.members);
    out.mc.push_back(std::move(mcs));
  }
  return out;
}

Formula translate_formula_ecem_to_sem(const Formula& f, const ConsistencyOracle& consistent);

inline StandardEventModel translate_ecem_to_sem(const EdgeConditionedEventModel& c,
                                                const ConsistencyOracle& consistent) {
  StandardEventModel e;
  e.name = c.name.empty() ? "" : c.name + "~sem";
  std::map<std::string, PhiConditions> phis;
  // events (e, Gamma), named by the event and the conjunction of Gamma
  std::map<std::string, std::vector<std::string>> split;  // event -> new ids in mc order
  for (const auto& ev : c.events) {
    auto& phi = phis.emplace(ev, phi_conditions(c, ev, consistent)).first->second;
    for (const auto& mcs : phi.mc) {
      std::string id = "(" + ev + "," + print_formula(mcs.conjunction) + ")";
      e.events.push_back(id);
      split[ev].push_back(id);
      e.pre[id] = translate_formula_ecem_to_sem(mk_and(c.pre.at(ev), mcs.conjunction), consistent);
    }
  }
  for (const auto& [a, edges] : c.edges) {
    auto& dst = e.rel[a];
    for (const auto& edge : edges) {
      const auto& from_phi = phis.at(edge.from);
      const auto& to_phi = phis.at(edge.to);
      for (std::size_t i = 0; i < from_phi.mc.size(); ++i) {
        if (!contains(from_phi.mc[i].members, edge.src_cond)) continue;
        for (std::size_t j = 0; j < to_phi.mc.size(); ++j) {
          if (!contains(to_phi.mc[j].members, edge.tgt_cond)) continue;
          dst.insert({split.at(edge.from)[i], split.at(edge.to)[j]});
        }
      }
    }
  }
  e.designated = split.at(c.designated);
  return e;
}

inline Formula translate_formula_ecem_to_sem(const Formula& f,
                                             const ConsistencyOracle& consistent) {
  switch (f->kind) {
    case Connective::top:
    case Connective::atom:
    case Connective::att_atom:
    case Connective::attends:
      return f;
    case Connective::neg:
      return mk_not(translate_formula_ecem_to_sem(f->lhs, consistent));
    case Connective::conj:
      return mk_and(translate_formula_ecem_to_sem(f->lhs, consistent),
                    translate_formula_ecem_to_sem(f->rhs, consistent));
    case Connective::believes:
      return mk_believes(f->agent, translate_formula_ecem_to_sem(f->lhs, consistent));
    case Connective::dyn_ecem: {
      auto e = std::make_shared<StandardEventModel>(
          translate_ecem_to_sem(*f->ecem, consistent));
      return mk_dyn_sem(e, translate_formula_ecem_to_sem(f->lhs, consistent));
    }
    case Connective::dyn_sem:
    case Connective::dyn_gau:
      return f;
  }
  return f;
}

}  // namespace adel
