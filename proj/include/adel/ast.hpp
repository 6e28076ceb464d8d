#pragma once

// Core syntax: formulas of the attention/DEL language family and the three
// event-model formalisms (standard, edge-conditioned, generalized arrow
// update). Formulas and event models are mutually recursive, so they live in
// one header. Everything here is an immutable value; formulas are shared
// subtrees behind shared_ptr.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adel {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a formula is evaluated against a model of the wrong kind
// (attention-atom formulas on attention models, attends-modality formulas on
// plain Kripke models, and so on).
struct regime_error : error {
  using error::error;
};

struct Agent {
  std::string id;
  auto operator<=>(const Agent&) const = default;
};

struct Atom {
  std::string id;
  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  Atom atom;
  bool positive = true;
  auto operator<=>(const Literal&) const = default;
};

class FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct StandardEventModel;
struct EdgeConditionedEventModel;
struct GeneralizedArrowUpdate;

using SemPtr = std::shared_ptr<const StandardEventModel>;
using EcemPtr = std::shared_ptr<const EdgeConditionedEventModel>;
using GauPtr = std::shared_ptr<const GeneralizedArrowUpdate>;

enum class Connective {
  top,
  atom,      // propositional atom p
  att_atom,  // attention atom Att[a]p (an atom of the propositional-attention language)
  neg,
  conj,
  believes,
  attends,   // attention modality A[a]f of the general-attention language
  dyn_sem,   // [E]f with a (multi-)pointed standard event model
  dyn_ecem,  // [C]f with a pointed edge-conditioned event model
  dyn_gau,   // [U]f with a pointed generalized arrow update
};

class FormulaNode {
 public:
  Connective kind = Connective::top;
  Agent agent{};    // believes / attends / att_atom
  Atom atom{};      // atom / att_atom
  Formula lhs{};    // unary and modal operand; left conjunct
  Formula rhs{};    // right conjunct
  SemPtr sem{};
  EcemPtr ecem{};
  GauPtr gau{};
  // Display reference for dynamic modalities ("name:event"); not part of
  // structural identity.
  std::string label{};
};

// --- event models ----------------------------------------------------------

struct StandardEventModel {
  std::string name;  // display only
  std::vector<std::string> events;
  std::map<Agent, std::set<std::pair<std::string, std::string>>> rel;
  std::map<std::string, Formula> pre;
  std::vector<std::string> designated;  // nonempty; singleton = pointed
};

struct ConditionedEdge {
  std::string from;
  Formula src_cond;
  std::string to;
  Formula tgt_cond;
};

struct EdgeConditionedEventModel {
  std::string name;
  std::vector<std::string> events;
  std::map<Agent, std::vector<ConditionedEdge>> edges;
  std::map<std::string, Formula> pre;
  std::string designated;
};

struct Arrow {
  Formula src_cond;
  std::string target;
  Formula tgt_cond;
};

struct GeneralizedArrowUpdate {
  std::string name;
  std::vector<std::string> outcomes;
  // arrows[a][o] is the set of a-arrows with source outcome o.
  std::map<Agent, std::map<std::string, std::vector<Arrow>>> arrows;
  std::string designated;
};

// --- factories --------------------------------------------------------------

inline Formula mk_node(FormulaNode&& n) {
  return std::make_shared<const FormulaNode>(std::move(n));
}

inline Formula top() {
  static const Formula t = mk_node({.kind = Connective::top});
  return t;
}

inline Formula mk_atom(Atom a) {
  return mk_node({.kind = Connective::atom, .atom = std::move(a)});
}

inline Formula mk_atom(const std::string& id) { return mk_atom(Atom{id}); }

inline Formula mk_att_atom(Agent ag, Atom at) {
  return mk_node({.kind = Connective::att_atom, .agent = std::move(ag), .atom = std::move(at)});
}

inline Formula mk_att_atom(const std::string& ag, const std::string& at) {
  return mk_att_atom(Agent{ag}, Atom{at});
}

inline Formula mk_not(Formula f) {
  return mk_node({.kind = Connective::neg, .lhs = std::move(f)});
}

inline Formula mk_and(Formula l, Formula r) {
  return mk_node({.kind = Connective::conj, .lhs = std::move(l), .rhs = std::move(r)});
}

inline Formula mk_believes(Agent a, Formula f) {
  return mk_node({.kind = Connective::believes, .agent = std::move(a), .lhs = std::move(f)});
}

inline Formula mk_believes(const std::string& a, Formula f) {
  return mk_believes(Agent{a}, std::move(f));
}

inline Formula mk_attends(Agent a, Formula f) {
  return mk_node({.kind = Connective::attends, .agent = std::move(a), .lhs = std::move(f)});
}

inline Formula mk_attends(const std::string& a, Formula f) {
  return mk_attends(Agent{a}, std::move(f));
}

// Derived connectives expand to the ~/& core.
inline Formula mk_or(Formula l, Formula r) {
  return mk_not(mk_and(mk_not(std::move(l)), mk_not(std::move(r))));
}

inline Formula mk_implies(Formula l, Formula r) {
  return mk_not(mk_and(std::move(l), mk_not(std::move(r))));
}

inline Formula mk_iff(Formula l, Formula r) {
  return mk_and(mk_implies(l, r), mk_implies(r, l));
}

inline Formula mk_bottom() { return mk_not(top()); }

inline std::string default_dyn_label(const std::string& name,
                                     const std::vector<std::string>& designated) {
  std::string n = name.empty() ? "?" : name;
  if (designated.size() == 1) return n + ":" + designated.front();
  return n;
}

inline Formula mk_dyn_sem(SemPtr m, Formula f, std::string label = {});
inline Formula mk_dyn_ecem(EcemPtr m, Formula f, std::string label = {});
inline Formula mk_dyn_gau(GauPtr m, Formula f, std::string label = {});

inline Formula mk_dyn_sem(SemPtr m, Formula f, std::string label) {
  if (label.empty()) label = default_dyn_label(m->name, m->designated);
  return mk_node({.kind = Connective::dyn_sem,
                  .lhs = std::move(f),
                  .sem = std::move(m),
                  .label = std::move(label)});
}

inline Formula mk_dyn_ecem(EcemPtr m, Formula f, std::string label) {
  if (label.empty()) label = default_dyn_label(m->name, {m->designated});
  return mk_node({.kind = Connective::dyn_ecem,
                  .lhs = std::move(f),
                  .ecem = std::move(m),
                  .label = std::move(label)});
}

inline Formula mk_dyn_gau(GauPtr m, Formula f, std::string label) {
  if (label.empty()) label = default_dyn_label(m->name, {m->designated});
  return mk_node({.kind = Connective::dyn_gau,
                  .lhs = std::move(f),
                  .gau = std::move(m),
                  .label = std::move(label)});
}

// --- structural order -------------------------------------------------------

int compare(const Formula& a, const Formula& b);
int compare(const StandardEventModel& a, const StandardEventModel& b);
int compare(const EdgeConditionedEventModel& a, const EdgeConditionedEventModel& b);
int compare(const GeneralizedArrowUpdate& a, const GeneralizedArrowUpdate& b);

namespace detail {

template <typename T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

template <typename It, typename F>
int lex_compare(It a, It ae, It b, It be, F cmp) {
  for (; a != ae && b != be; ++a, ++b) {
    if (int c = cmp(*a, *b)) return c;
  }
  if (a != ae) return 1;
  if (b != be) return -1;
  return 0;
}

}  // namespace detail

inline int compare(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return 0;
  if (int c = detail::cmp3(static_cast<int>(a->kind), static_cast<int>(b->kind))) return c;
  switch (a->kind) {
    case Connective::top:
      return 0;
    case Connective::atom:
      return detail::cmp3(a->atom, b->atom);
    case Connective::att_atom:
      if (int c = detail::cmp3(a->agent, b->agent)) return c;
      return detail::cmp3(a->atom, b->atom);
    case Connective::neg:
      return compare(a->lhs, b->lhs);
    case Connective::conj:
      if (int c = compare(a->lhs, b->lhs)) return c;
      return compare(a->rhs, b->rhs);
    case Connective::believes:
    case Connective::attends:
      if (int c = detail::cmp3(a->agent, b->agent)) return c;
      return compare(a->lhs, b->lhs);
    case Connective::dyn_sem:
      if (int c = compare(*a->sem, *b->sem)) return c;
      return compare(a->lhs, b->lhs);
    case Connective::dyn_ecem:
      if (int c = compare(*a->ecem, *b->ecem)) return c;
      return compare(a->lhs, b->lhs);
    case Connective::dyn_gau:
      if (int c = compare(*a->gau, *b->gau)) return c;
      return compare(a->lhs, b->lhs);
  }
  return 0;
}

inline int compare(const StandardEventModel& a, const StandardEventModel& b) {
  if (&a == &b) return 0;
  if (int c = detail::cmp3(a.events, b.events)) return c;
  if (int c = detail::cmp3(a.designated, b.designated)) return c;
  if (int c = detail::cmp3(a.rel, b.rel)) return c;
  return detail::lex_compare(a.pre.begin(), a.pre.end(), b.pre.begin(), b.pre.end(),
                             [](const auto& x, const auto& y) {
                               if (int c2 = detail::cmp3(x.first, y.first)) return c2;
                               return compare(x.second, y.second);
                             });
}

inline int compare(const ConditionedEdge& a, const ConditionedEdge& b) {
  if (int c = detail::cmp3(a.from, b.from)) return c;
  if (int c = detail::cmp3(a.to, b.to)) return c;
  if (int c = compare(a.src_cond, b.src_cond)) return c;
  return compare(a.tgt_cond, b.tgt_cond);
}

inline int compare(const EdgeConditionedEventModel& a, const EdgeConditionedEventModel& b) {
  if (&a == &b) return 0;
  if (int c = detail::cmp3(a.events, b.events)) return c;
  if (int c = detail::cmp3(a.designated, b.designated)) return c;
  if (int c = detail::lex_compare(
          a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
          [](const auto& x, const auto& y) {
            if (int c2 = detail::cmp3(x.first, y.first)) return c2;
            return detail::lex_compare(x.second.begin(), x.second.end(), y.second.begin(),
                                       y.second.end(),
                                       [](const auto& e, const auto& f) { return compare(e, f); });
          }))
    return c;
  return detail::lex_compare(a.pre.begin(), a.pre.end(), b.pre.begin(), b.pre.end(),
                             [](const auto& x, const auto& y) {
                               if (int c2 = detail::cmp3(x.first, y.first)) return c2;
                               return compare(x.second, y.second);
                             });
}

inline int compare(const Arrow& a, const Arrow& b) {
  if (int c = detail::cmp3(a.target, b.target)) return c;
  if (int c = compare(a.src_cond, b.src_cond)) return c;
  return compare(a.tgt_cond, b.tgt_cond);
}

inline int compare(const GeneralizedArrowUpdate& a, const GeneralizedArrowUpdate& b) {
  if (&a == &b) return 0;
  if (int c = detail::cmp3(a.outcomes, b.outcomes)) return c;
  if (int c = detail::cmp3(a.designated, b.designated)) return c;
  return detail::lex_compare(
      a.arrows.begin(), a.arrows.end(), b.arrows.begin(), b.arrows.end(),
      [](const auto& x, const auto& y) {
        if (int c2 = detail::cmp3(x.first, y.first)) return c2;
        return detail::lex_compare(
            x.second.begin(), x.second.end(), y.second.begin(), y.second.end(),
            [](const auto& u, const auto& v) {
              if (int c3 = detail::cmp3(u.first, v.first)) return c3;
              return detail::lex_compare(u.second.begin(), u.second.end(), v.second.begin(),
                                         v.second.end(),
                                         [](const auto& p, const auto& q) { return compare(p, q); });
            });
      });
}

inline bool equal(const Formula& a, const Formula& b) { return compare(a, b) == 0; }

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};

using FormulaSet = std::set<Formula, FormulaLess>;

// Canonical duplicate-free sorted sequence; the order doubles as the fixed
// ordering used when conjoining sets of formulas.
inline std::vector<Formula> canonical_sorted(std::vector<Formula> fs) {
  std::sort(fs.begin(), fs.end(), FormulaLess{});
  fs.erase(std::unique(fs.begin(), fs.end(), [](const Formula& a, const Formula& b) {
             return equal(a, b);
           }),
           fs.end());
  return fs;
}

inline bool contains(const std::vector<Formula>& sorted, const Formula& f) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), f, FormulaLess{});
  return it != sorted.end() && equal(*it, f);
}

// Conjunction of a sequence, right-nested; the empty conjunction is T.
inline Formula mk_conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.back();
  for (auto it = std::next(fs.rbegin()); it != fs.rend(); ++it) acc = mk_and(*it, acc);
  return acc;
}

inline Formula literal_formula(const Literal& l) {
  Formula f = mk_atom(l.atom);
  return l.positive ? f : mk_not(f);
}

// Conjunction of literals in the fixed lexicographic atom order, duplicates
// merged. A literal list mentioning some atom with both polarities is
// rejected. The empty list yields T.
inline Formula canonicalize_literal_conjunction(std::vector<Literal> ls) {
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  for (std::size_t i = 1; i < ls.size(); ++i) {
    if (ls[i].atom == ls[i - 1].atom)
      throw error("contradictory polarity for atom '" + ls[i].atom.id + "'");
  }
  std::vector<Formula> fs;
  fs.reserve(ls.size());
  for (const auto& l : ls) fs.push_back(literal_formula(l));
  return mk_conjunction(fs);
}

// --- traversal helpers ------------------------------------------------------

template <typename F>
void for_each_condition(const StandardEventModel& m, F&& fn) {
  for (const auto& [e, pre] : m.pre) fn(pre);
}

template <typename F>
void for_each_condition(const EdgeConditionedEventModel& m, F&& fn) {
  for (const auto& [e, pre] : m.pre) fn(pre);
  for (const auto& [a, es] : m.edges) {
    for (const auto& edge : es) {
      fn(edge.src_cond);
      fn(edge.tgt_cond);
    }
  }
}

template <typename F>
void for_each_condition(const GeneralizedArrowUpdate& m, F&& fn) {
  for (const auto& [a, per_outcome] : m.arrows) {
    for (const auto& [o, as] : per_outcome) {
      for (const auto& arrow : as) {
        fn(arrow.src_cond);
        fn(arrow.tgt_cond);
      }
    }
  }
}

// The set of atoms syntactically occurring in a formula, including those
// inside attention atoms and inside embedded event models' conditions.
inline void collect_atoms(const Formula& f, std::set<Atom>& out) {
  switch (f->kind) {
    case Connective::top:
      return;
    case Connective::atom:
    case Connective::att_atom:
      out.insert(f->atom);
      return;
    case Connective::neg:
      collect_atoms(f->lhs, out);
      return;
    case Connective::conj:
      collect_atoms(f->lhs, out);
      collect_atoms(f->rhs, out);
      return;
    case Connective::believes:
    case Connective::attends:
      collect_atoms(f->lhs, out);
      return;
    case Connective::dyn_sem:
      for_each_condition(*f->sem, [&](const Formula& c) { collect_atoms(c, out); });
      collect_atoms(f->lhs, out);
      return;
    case Connective::dyn_ecem:
      for_each_condition(*f->ecem, [&](const Formula& c) { collect_atoms(c, out); });
      collect_atoms(f->lhs, out);
      return;
    case Connective::dyn_gau:
      for_each_condition(*f->gau, [&](const Formula& c) { collect_atoms(c, out); });
      collect_atoms(f->lhs, out);
      return;
  }
}

inline std::set<Atom> atoms_of(const Formula& f) {
  std::set<Atom> out;
  collect_atoms(f, out);
  return out;
}

inline void collect_agents(const Formula& f, std::set<Agent>& out) {
  switch (f->kind) {
    case Connective::top:
    case Connective::atom:
      return;
    case Connective::att_atom:
      out.insert(f->agent);
      return;
    case Connective::neg:
      collect_agents(f->lhs, out);
      return;
    case Connective::conj:
      collect_agents(f->lhs, out);
      collect_agents(f->rhs, out);
      return;
    case Connective::believes:
    case Connective::attends:
      out.insert(f->agent);
      collect_agents(f->lhs, out);
      return;
    case Connective::dyn_sem:
      for (const auto& [a, es] : f->sem->rel) out.insert(a);
      for_each_condition(*f->sem, [&](const Formula& c) { collect_agents(c, out); });
      collect_agents(f->lhs, out);
      return;
    case Connective::dyn_ecem:
      for (const auto& [a, es] : f->ecem->edges) out.insert(a);
      for_each_condition(*f->ecem, [&](const Formula& c) { collect_agents(c, out); });
      collect_agents(f->lhs, out);
      return;
    case Connective::dyn_gau:
      for (const auto& [a, os] : f->gau->arrows) out.insert(a);
      for_each_condition(*f->gau, [&](const Formula& c) { collect_agents(c, out); });
      collect_agents(f->lhs, out);
      return;
  }
}

// Proper and improper subformulas, preorder, without descending into embedded
// event models.
inline void collect_subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  switch (f->kind) {
    case Connective::top:
    case Connective::atom:
    case Connective::att_atom:
      return;
    case Connective::conj:
      collect_subformulas(f->lhs, out);
      collect_subformulas(f->rhs, out);
      return;
    default:
      collect_subformulas(f->lhs, out);
      return;
  }
}

inline std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  collect_subformulas(f, out);
  return out;
}

// --- sizes ------------------------------------------------------------------

// Token-count size metric. Each connective, belief/attends modality symbol,
// agent id, atom id and dynamic-modality bracket pair counts one token;
// grouping parentheses are free. An attention atom Att[a]p is an atom of its
// language and counts one token; the attends modality A[a]f counts the
// modality symbol plus the agent id.

std::size_t formula_size(const Formula& f);
std::size_t size_sem(const StandardEventModel& m);
std::size_t size_ecem(const EdgeConditionedEventModel& m);
std::size_t size_gau(const GeneralizedArrowUpdate& m);

inline std::size_t formula_size(const Formula& f) {
  switch (f->kind) {
    case Connective::top:
    case Connective::atom:
    case Connective::att_atom:
      return 1;
    case Connective::neg:
      return 1 + formula_size(f->lhs);
    case Connective::conj:
      return 1 + formula_size(f->lhs) + formula_size(f->rhs);
    case Connective::believes:
    case Connective::attends:
      return 2 + formula_size(f->lhs);
    case Connective::dyn_sem:
      return 1 + size_sem(*f->sem) + formula_size(f->lhs);
    case Connective::dyn_ecem:
      return 1 + size_ecem(*f->ecem) + formula_size(f->lhs);
    case Connective::dyn_gau:
      return 1 + size_gau(*f->gau) + formula_size(f->lhs);
  }
  return 0;
}

// |E| + sum_a |Q_a| + sum_e |pre(e)|; designation cost is not charged.
inline std::size_t size_sem(const StandardEventModel& m) {
  std::size_t n = m.events.size();
  for (const auto& [a, es] : m.rel) n += es.size();
  for (const auto& [e, pre] : m.pre) n += formula_size(pre);
  return n;
}

inline std::size_t size_ecem(const EdgeConditionedEventModel& m) {
  std::size_t n = m.events.size();
  for (const auto& [a, es] : m.edges) {
    n += es.size();
    for (const auto& edge : es) n += formula_size(edge.src_cond) + formula_size(edge.tgt_cond);
  }
  for (const auto& [e, pre] : m.pre) n += formula_size(pre);
  return n;
}

inline std::size_t size_gau(const GeneralizedArrowUpdate& m) {
  std::size_t n = m.outcomes.size();
  for (const auto& [a, per_outcome] : m.arrows) {
    for (const auto& [o, as] : per_outcome) {
      n += as.size();
      for (const auto& arrow : as)
        n += formula_size(arrow.src_cond) + formula_size(arrow.tgt_cond);
    }
  }
  return n;
}

// --- condition sets and the language hierarchy ------------------------------

template <typename Model>
std::vector<Formula> cond_set(const Model& m) {
  std::vector<Formula> out;
  for_each_condition(m, [&](const Formula& c) { out.push_back(c); });
  return canonical_sorted(std::move(out));
}

// Preconditions only for standard event models; preconditions plus source and
// target conditions for edge-conditioned ones; source and target conditions
// for arrow updates.
inline std::vector<Formula> cond_set_sem(const StandardEventModel& m) { return cond_set(m); }
inline std::vector<Formula> cond_set_ecem(const EdgeConditionedEventModel& m) {
  return cond_set(m);
}
inline std::vector<Formula> cond_set_gau(const GeneralizedArrowUpdate& m) { return cond_set(m); }

std::size_t hierarchy_level(const Formula& f);

// An event model sits at the maximum level of its conditions (0 when it has
// none).
template <typename Model>
std::size_t hierarchy_level_model(const Model& m) {
  std::size_t lvl = 0;
  for_each_condition(m, [&](const Formula& c) { lvl = std::max(lvl, hierarchy_level(c)); });
  return lvl;
}

// 0 for static formulas; a dynamic modality adds one level above the highest
// level among its model's conditions.
inline std::size_t hierarchy_level(const Formula& f) {
  switch (f->kind) {
    case Connective::top:
    case Connective::atom:
    case Connective::att_atom:
      return 0;
    case Connective::neg:
    case Connective::believes:
    case Connective::attends:
      return hierarchy_level(f->lhs);
    case Connective::conj:
      return std::max(hierarchy_level(f->lhs), hierarchy_level(f->rhs));
    case Connective::dyn_sem:
      return std::max(hierarchy_level_model(*f->sem) + 1, hierarchy_level(f->lhs));
    case Connective::dyn_ecem:
      return std::max(hierarchy_level_model(*f->ecem) + 1, hierarchy_level(f->lhs));
    case Connective::dyn_gau:
      return std::max(hierarchy_level_model(*f->gau) + 1, hierarchy_level(f->lhs));
  }
  return 0;
}

inline bool is_static(const Formula& f) { return hierarchy_level(f) == 0; }

}  // namespace adel
