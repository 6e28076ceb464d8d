#pragma once

// Kripke models over atoms and attention atoms, and attention models that
// attach per-agent per-world attention sets. A Kripke model may carry
// attention atoms in its valuation (the propositional-attention regime); an
// attention model keeps its valuation to plain atoms and stores attention in
// the attention function instead.

#include <map>
#include <queue>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "adel/ast.hpp"
#include "adel/lang.hpp"
#include "adel/syntax.hpp"

namespace adel {

struct AttAtomKey {
  Agent agent;
  Atom atom;
  auto operator<=>(const AttAtomKey&) const = default;
};

struct Valuation {
  std::set<Atom> atoms;
  std::set<AttAtomKey> att_atoms;
  auto operator<=>(const Valuation&) const = default;
};

struct KripkeModel {
  std::vector<std::string> worlds;
  std::map<Agent, std::set<std::pair<std::string, std::string>>> rel;
  std::map<std::string, Valuation> val;

  bool has_world(const std::string& w) const {
    return std::find(worlds.begin(), worlds.end(), w) != worlds.end();
  }
  const Valuation& valuation(const std::string& w) const {
    static const Valuation empty;
    auto it = val.find(w);
    return it == val.end() ? empty : it->second;
  }
  const std::set<std::pair<std::string, std::string>>& edges(const Agent& a) const {
    static const std::set<std::pair<std::string, std::string>> none;
    auto it = rel.find(a);
    return it == rel.end() ? none : it->second;
  }
  std::vector<std::string> successors(const Agent& a, const std::string& w) const {
    std::vector<std::string> out;
    for (const auto& [u, v] : edges(a))
      if (u == w) out.push_back(v);
    return out;
  }
};

struct AttentionModel {
  KripkeModel base;
  // att[a][w] is the set of formulas agent a attends to at w, kept canonically
  // sorted and duplicate-free.
  std::map<Agent, std::map<std::string, std::vector<Formula>>> att;

  const std::vector<Formula>& attention(const Agent& a, const std::string& w) const {
    static const std::vector<Formula> none;
    auto it = att.find(a);
    if (it == att.end()) return none;
    auto jt = it->second.find(w);
    return jt == it->second.end() ? none : jt->second;
  }
};

using ModelVariant = std::variant<KripkeModel, AttentionModel>;

inline const KripkeModel& base_of(const ModelVariant& m) {
  if (std::holds_alternative<KripkeModel>(m)) return std::get<KripkeModel>(m);
  return std::get<AttentionModel>(m).base;
}

struct PointedModel {
  ModelVariant model;
  std::string point;
};

// Declared agent/atom universe a model is validated against.
struct Signature {
  std::set<Agent> agents;
  std::set<Atom> atoms;
};

inline std::vector<std::string> validate(const KripkeModel& m, const Signature& sig) {
  std::vector<std::string> out;
  if (m.worlds.empty()) out.push_back("model has no worlds");
  std::set<std::string> seen;
  for (const auto& w : m.worlds)
    if (!seen.insert(w).second) out.push_back("duplicate world id '" + w + "'");
  auto known = [&](const std::string& w) { return seen.count(w) > 0; };
  for (const auto& [a, es] : m.rel) {
    if (!sig.agents.count(a)) out.push_back("relation for undeclared agent '" + a.id + "'");
    for (const auto& [u, v] : es) {
      if (!known(u)) out.push_back("edge from undeclared world '" + u + "'");
      if (!known(v)) out.push_back("edge to undeclared world '" + v + "'");
    }
  }
  for (const auto& [w, val] : m.val) {
    if (!known(w)) out.push_back("valuation for undeclared world '" + w + "'");
    for (const auto& p : val.atoms)
      if (!sig.atoms.count(p)) out.push_back("valuation of undeclared atom '" + p.id + "'");
    for (const auto& h : val.att_atoms) {
      if (!sig.agents.count(h.agent))
        out.push_back("attention atom with undeclared agent '" + h.agent.id + "'");
      if (!sig.atoms.count(h.atom))
        out.push_back("attention atom with undeclared atom '" + h.atom.id + "'");
    }
  }
  return out;
}

inline std::vector<std::string> validate(const AttentionModel& m, const Signature& sig) {
  std::vector<std::string> out = validate(m.base, sig);
  for (const auto& [w, val] : m.base.val) {
    if (!val.att_atoms.empty())
      out.push_back("attention model stores attention atoms in valuation at world '" + w + "'");
  }
  for (const Agent& a : sig.agents) {
    auto it = m.att.find(a);
    for (const auto& w : m.base.worlds) {
      if (it == m.att.end() || !it->second.count(w))
        out.push_back("missing attention set for (" + a.id + ", " + w + ")");
    }
  }
  for (const auto& [a, per_world] : m.att) {
    if (!sig.agents.count(a)) out.push_back("attention set for undeclared agent '" + a.id + "'");
    for (const auto& [w, fs] : per_world) {
      if (!m.base.has_world(w))
        out.push_back("attention set at undeclared world '" + w + "'");
      for (const auto& f : fs) {
        auto viol = well_formedness_violations(f, Lang::GA);
        for (const auto& v : viol)
          out.push_back("attention-set formula " + print_formula(f) + ": " + v);
      }
    }
  }
  return out;
}

inline std::vector<std::string> validate(const ModelVariant& m, const Signature& sig) {
  if (std::holds_alternative<KripkeModel>(m)) return validate(std::get<KripkeModel>(m), sig);
  return validate(std::get<AttentionModel>(m), sig);
}

// Restriction to the worlds reachable from the point by any agent's relation.
// Satisfaction at the point is unchanged by this restriction.
inline std::set<std::string> reachable_worlds(const KripkeModel& m, const std::string& from) {
  std::set<std::string> seen{from};
  std::queue<std::string> todo;
  todo.push(from);
  while (!todo.empty()) {
    std::string w = todo.front();
    todo.pop();
    for (const auto& [a, es] : m.rel) {
      for (const auto& [u, v] : es) {
        if (u == w && seen.insert(v).second) todo.push(v);
      }
    }
  }
  return seen;
}

inline KripkeModel restrict_to(const KripkeModel& m, const std::set<std::string>& keep) {
  KripkeModel out;
  for (const auto& w : m.worlds)
    if (keep.count(w)) out.worlds.push_back(w);
  for (const auto& [a, es] : m.rel) {
    auto& dst = out.rel[a];
    for (const auto& e : es)
      if (keep.count(e.first) && keep.count(e.second)) dst.insert(e);
  }
  for (const auto& [w, v] : m.val)
    if (keep.count(w)) out.val.emplace(w, v);
  return out;
}

inline PointedModel generated_submodel(const PointedModel& pm) {
  const KripkeModel& base = base_of(pm.model);
  auto keep = reachable_worlds(base, pm.point);
  if (std::holds_alternative<KripkeModel>(pm.model))
    return {restrict_to(std::get<KripkeModel>(pm.model), keep), pm.point};
  const auto& am = std::get<AttentionModel>(pm.model);
  AttentionModel out;
  out.base = restrict_to(am.base, keep);
  for (const auto& [a, per_world] : am.att) {
    for (const auto& [w, fs] : per_world)
      if (keep.count(w)) out.att[a][w] = fs;
  }
  return {std::move(out), pm.point};
}

}  // namespace adel
