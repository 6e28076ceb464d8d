#pragma once

// Reduction of dynamic modalities to static formulas, and a multi-agent K
// tableau for satisfiability of static formulas. Attention atoms and attends
// modalities are treated as opaque propositional tokens during search; the
// attends body is never decomposed.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adel/ast.hpp"
#include "adel/model.hpp"
#include "adel/semantics.hpp"
#include "adel/transform.hpp"

namespace adel {

// --- reduction ----------------------------------------------------------------

Formula reduce(const Formula& f);

namespace detail {

inline EdgeConditionedEventModel reduce_conditions(const EdgeConditionedEventModel& c) {
  EdgeConditionedEventModel out = c;
  for (auto& [e, pre] : out.pre) pre = reduce(pre);
  for (auto& [a, edges] : out.edges) {
    for (auto& edge : edges) {
      edge.src_cond = reduce(edge.src_cond);
      edge.tgt_cond = reduce(edge.tgt_cond);
    }
  }
  return out;
}

// One reduction step for an edge-conditioned modality applied to a static
// body, following the axiom shapes: atoms are guarded by the precondition,
// negation and conjunction commute with the modality under the precondition
// guard, and belief unfolds along the conditioned edges at the event.
inline Formula push_ecem(const EdgeConditionedEventModel& c, const std::string& e,
                         const Formula& body) {
  const Formula& pre = c.pre.at(e);
  switch (body->kind) {
    case Connective::top:
    case Connective::atom:
    case Connective::att_atom:
    case Connective::attends:
      return mk_implies(pre, body);
    case Connective::neg:
      return mk_implies(pre, mk_not(push_ecem(c, e, body->lhs)));
    case Connective::conj:
      return mk_and(push_ecem(c, e, body->lhs), push_ecem(c, e, body->rhs));
    case Connective::believes: {
      std::vector<Formula> parts;
      auto it = c.edges.find(body->agent);
      if (it != c.edges.end()) {
        for (const auto& edge : it->second) {
          if (edge.from != e) continue;
          parts.push_back(mk_implies(
              edge.src_cond,
              mk_believes(body->agent,
                          mk_implies(edge.tgt_cond, push_ecem(c, edge.to, body->lhs)))));
        }
      }
      return mk_implies(pre, mk_conjunction(parts));
    }
    default:
      throw error("reduction applied to a non-static body");
  }
}

}  // namespace detail

// Rewrites a formula into an equivalent static one. Standard and arrow-update
// modalities are first translated to edge-conditioned form; a multi-pointed
// standard modality is unfolded into the guarded conjunction over its
// designated events, mirroring the unique-applicability clause.
inline Formula reduce(const Formula& f) {
  switch (f->kind) {
    case Connective::top:
    case Connective::atom:
    case Connective::att_atom:
    case Connective::attends:
      return f;
    case Connective::neg:
      return mk_not(reduce(f->lhs));
    case Connective::conj:
      return mk_and(reduce(f->lhs), reduce(f->rhs));
    case Connective::believes:
      return mk_believes(f->agent, reduce(f->lhs));
    case Connective::dyn_sem: {
      const auto& e = *f->sem;
      if (e.designated.size() == 1) {
        auto c = std::make_shared<EdgeConditionedEventModel>(translate_sem_to_ecem(e));
        return reduce(mk_dyn_ecem(c, f->lhs));
      }
      std::vector<Formula> parts;
      for (const auto& d : e.designated) {
        std::vector<Formula> others;
        for (const auto& d2 : e.designated)
          if (d2 != d) others.push_back(mk_not(e.pre.at(d2)));
        Formula guard = others.empty() ? e.pre.at(d) : mk_and(e.pre.at(d), mk_conjunction(others));
        auto pointed = std::make_shared<StandardEventModel>(e);
        pointed->designated = {d};
        parts.push_back(mk_implies(guard, mk_dyn_sem(pointed, f->lhs)));
      }
      return reduce(mk_conjunction(parts));
    }
    case Connective::dyn_gau: {
      auto c = std::make_shared<EdgeConditionedEventModel>(translate_gau_to_ecem(*f->gau));
      return reduce(mk_dyn_ecem(c, f->lhs));
    }
    case Connective::dyn_ecem: {
      EdgeConditionedEventModel c = detail::reduce_conditions(*f->ecem);
      return detail::push_ecem(c, c.designated, reduce(f->lhs));
    }
  }
  return f;
}

// Collapses implications with a T antecedent; the reducer itself emits the
// axiom shapes verbatim, so this is an optional cleanup.
inline Formula simplify_top(const Formula& f) {
  switch (f->kind) {
    case Connective::neg: {
      Formula sub = simplify_top(f->lhs);
      // ~(T & ~psi) is the core form of T -> psi
      if (sub->kind == Connective::conj && sub->lhs->kind == Connective::top &&
          sub->rhs->kind == Connective::neg)
        return simplify_top(sub->rhs->lhs);
      return mk_not(sub);
    }
    case Connective::conj:
      return mk_and(simplify_top(f->lhs), simplify_top(f->rhs));
    case Connective::believes:
      return mk_believes(f->agent, simplify_top(f->lhs));
    default:
      return f;
  }
}

// --- tableau -------------------------------------------------------------------

struct TableauVerdict {
  bool satisfiable = false;
  std::optional<PointedModel> witness;
};

namespace detail {

// True when the formula can go straight to the tableau: no dynamic modality
// outside an (opaque) attends body.
inline bool tableau_ready(const Formula& f) {
  switch (f->kind) {
    case Connective::top:
    case Connective::atom:
    case Connective::att_atom:
    case Connective::attends:
      return true;
    case Connective::neg:
    case Connective::believes:
      return tableau_ready(f->lhs);
    case Connective::conj:
      return tableau_ready(f->lhs) && tableau_ready(f->rhs);
    default:
      return false;
  }
}

inline void scan_attention_kinds(const Formula& f, bool& has_att_atom, bool& has_attends) {
  switch (f->kind) {
    case Connective::att_atom:
      has_att_atom = true;
      return;
    case Connective::attends:
      has_attends = true;
      return;
    case Connective::neg:
    case Connective::believes:
      scan_attention_kinds(f->lhs, has_att_atom, has_attends);
      return;
    case Connective::conj:
      scan_attention_kinds(f->lhs, has_att_atom, has_attends);
      scan_attention_kinds(f->rhs, has_att_atom, has_attends);
      return;
    default:
      return;
  }
}

struct TabWorld {
  FormulaSet pos;  // satisfied atomic tokens: atoms, attention atoms, attends
  std::vector<std::pair<Agent, TabWorld>> children;
};

struct Branch {
  FormulaSet pos, neg;
  std::map<Agent, std::vector<Formula>> boxes;
  std::vector<std::pair<Agent, Formula>> diamonds;
};

inline std::optional<TabWorld> expand(std::vector<Formula> todo, Branch br) {
  while (!todo.empty()) {
    Formula f = todo.back();
    todo.pop_back();
    switch (f->kind) {
      case Connective::top:
        break;
      case Connective::atom:
      case Connective::att_atom:
      case Connective::attends:
        if (br.neg.count(f)) return std::nullopt;
        br.pos.insert(f);
        break;
      case Connective::conj:
        todo.push_back(f->lhs);
        todo.push_back(f->rhs);
        break;
      case Connective::believes:
        br.boxes[f->agent].push_back(f->lhs);
        break;
      case Connective::neg: {
        const Formula& g = f->lhs;
        switch (g->kind) {
          case Connective::top:
            return std::nullopt;
          case Connective::atom:
          case Connective::att_atom:
          case Connective::attends:
            if (br.pos.count(g)) return std::nullopt;
            br.neg.insert(g);
            break;
          case Connective::neg:
            todo.push_back(g->lhs);
            break;
          case Connective::conj: {
            std::vector<Formula> left = todo;
            left.push_back(mk_not(g->lhs));
            if (auto w = expand(std::move(left), br)) return w;
            todo.push_back(mk_not(g->rhs));
            break;
          }
          case Connective::believes:
            br.diamonds.push_back({g->agent, g->lhs});
            break;
          default:
            throw error("tableau requires static formulas");
        }
        break;
      }
      default:
        throw error("tableau requires static formulas");
    }
  }
  TabWorld w{br.pos, {}};
  for (const auto& [a, body] : br.diamonds) {
    std::vector<Formula> child_todo{mk_not(body)};
    auto it = br.boxes.find(a);
    if (it != br.boxes.end())
      child_todo.insert(child_todo.end(), it->second.begin(), it->second.end());
    auto child = expand(std::move(child_todo), Branch{});
    if (!child) return std::nullopt;
    w.children.push_back({a, std::move(*child)});
  }
  return w;
}

inline void collect_tab_worlds(const TabWorld& w, const std::string& id, KripkeModel& km,
                               std::map<Agent, std::map<std::string, std::vector<Formula>>>& att,
                               const std::set<Agent>& agents, int& counter) {
  km.worlds.push_back(id);
  Valuation val;
  for (const auto& f : w.pos) {
    if (f->kind == Connective::atom) val.atoms.insert(f->atom);
    if (f->kind == Connective::att_atom) val.att_atoms.insert({f->agent, f->atom});
  }
  km.val[id] = std::move(val);
  for (const auto& a : agents) att[a][id] = {};
  for (const auto& f : w.pos)
    if (f->kind == Connective::attends) att[f->agent][id].push_back(f->lhs);
  for (auto& [a, fs] : att)
    fs[id] = canonical_sorted(std::move(fs[id]));
  for (const auto& [a, child] : w.children) {
    std::string cid = "t" + std::to_string(++counter);
    km.rel[a].insert({id, cid});
    collect_tab_worlds(child, cid, km, att, agents, counter);
  }
}

}  // namespace detail

// Satisfiability in multi-agent K. The witness, when present, is a finite
// tree model rooted at the point; attends tokens make it an attention model,
// attention atoms a Kripke model in the propositional-attention regime.
inline TableauVerdict k_satisfiable(const Formula& f) {
  if (!detail::tableau_ready(f))
    throw error("satisfiability requires a static formula; reduce dynamic modalities first");
  bool has_att_atom = false, has_attends = false;
  detail::scan_attention_kinds(f, has_att_atom, has_attends);
  if (has_att_atom && has_attends)
    throw regime_error("formula mixes attention atoms with the attends modality");

  auto w = detail::expand({f}, detail::Branch{});
  if (!w) return {};

  std::set<Agent> agents;
  collect_agents(f, agents);
  KripkeModel km;
  std::map<Agent, std::map<std::string, std::vector<Formula>>> att;
  int counter = 0;
  detail::collect_tab_worlds(*w, "t0", km, att, agents, counter);
  TableauVerdict verdict;
  verdict.satisfiable = true;
  if (has_attends) {
    AttentionModel am;
    am.base = std::move(km);
    am.att = std::move(att);
    verdict.witness = PointedModel{std::move(am), "t0"};
  } else {
    verdict.witness = PointedModel{std::move(km), "t0"};
  }
  return verdict;
}

// Joint satisfiability of a set; the empty set is consistent.
inline bool consistent(const std::vector<Formula>& gamma) {
  return k_satisfiable(mk_conjunction(gamma)).satisfiable;
}

// Consistency oracle for the edge-conditioned -> standard translation:
// members are reduced to static form before the tableau runs.
inline ConsistencyOracle k_consistency_oracle() {
  return [](const std::vector<Formula>& gamma) {
    std::vector<Formula> rs;
    rs.reserve(gamma.size());
    for (const auto& f : gamma) rs.push_back(reduce(f));
    return consistent(rs);
  };
}

inline StandardEventModel translate_ecem_to_sem(const EdgeConditionedEventModel& c) {
  return translate_ecem_to_sem(c, k_consistency_oracle());
}

inline Formula translate_formula_ecem_to_sem(const Formula& f) {
  return translate_formula_ecem_to_sem(f, k_consistency_oracle());
}

}  // namespace adel
