#pragma once

// Event models for revelations under attention, in three forms:
//
//   standard form      one event per revealed subset and per-agent attention
//                      profile; grows exponentially in agents and literals
//   edge-conditioned   one event per revealed subset; attention moves into
//                      the edge conditions
//   general form       edge-conditioned revelation of arbitrary formulas,
//                      with attends-modality conditions
//
// Plus checkers for closure principles on attention models.

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "adel/ast.hpp"
#include "adel/model.hpp"
#include "adel/syntax.hpp"

namespace adel {

struct Revelation {
  bool propositional = true;
  std::vector<Literal> literals;   // propositional case, canonical atom order
  std::vector<Formula> formulas;   // general case, canonical and duplicate-free

  static Revelation of_literals(std::vector<Literal> ls) {
    Revelation r;
    r.propositional = true;
    canonicalize_literal_conjunction(ls);  // rejects contradictory polarities
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    r.literals = std::move(ls);
    return r;
  }

  // Destructures a conjunction of propositional literals.
  static Revelation of_propositional(const Formula& f) {
    std::vector<Literal> ls;
    std::vector<Formula> todo{f};
    while (!todo.empty()) {
      Formula g = todo.back();
      todo.pop_back();
      if (g->kind == Connective::top) continue;
      if (g->kind == Connective::conj) {
        todo.push_back(g->lhs);
        todo.push_back(g->rhs);
        continue;
      }
      if (g->kind == Connective::atom) {
        ls.push_back({g->atom, true});
        continue;
      }
      if (g->kind == Connective::neg && g->lhs->kind == Connective::atom) {
        ls.push_back({g->lhs->atom, false});
        continue;
      }
      throw error("non-propositional revelation: " + print_formula(g));
    }
    return of_literals(std::move(ls));
  }

  static Revelation of_formulas(std::vector<Formula> fs) {
    Revelation r;
    r.propositional = false;
    std::size_t before = fs.size();
    r.formulas = canonical_sorted(std::move(fs));
    if (r.formulas.size() != before)
      throw error("duplicate formulas in the revealed set after canonicalization");
    return r;
  }

  Formula revealed_formula() const {
    if (!propositional) return mk_conjunction(formulas);
    std::vector<Formula> fs;
    for (const auto& l : literals) fs.push_back(literal_formula(l));
    return mk_conjunction(fs);
  }
};

namespace detail {

inline std::vector<Literal> mask_literals(const std::vector<Literal>& ls, std::size_t mask) {
  std::vector<Literal> out;
  for (std::size_t i = 0; i < ls.size(); ++i)
    if ((mask >> i) & 1) out.push_back(ls[i]);
  return out;
}

inline Formula literal_conj(const std::vector<Literal>& ls) {
  std::vector<Formula> fs;
  for (const auto& l : ls) fs.push_back(literal_formula(l));
  return mk_conjunction(fs);
}

// Attention description of one agent over a subset: attended atoms positive,
// the rest of the subset negated.
inline void att_atom_parts(const Agent& a, const std::vector<Literal>& ls, std::size_t subset,
                           std::size_t attended, std::vector<Formula>& out) {
  for (std::size_t i = 0; i < ls.size(); ++i)
    if ((attended >> i) & 1) out.push_back(mk_att_atom(a, ls[i].atom));
  for (std::size_t i = 0; i < ls.size(); ++i)
    if (((subset >> i) & 1) && !((attended >> i) & 1))
      out.push_back(mk_not(mk_att_atom(a, ls[i].atom)));
}

}  // namespace detail

// Standard (multi-pointed) event model for a propositional revelation. Events
// are determined by a revealed subset S and, per agent, an attended subset of
// S; edges follow attentiveness (an attentive agent keeps the fact and her
// attention to it) and inertia (an inattentive agent drops the fact). The
// designated events are those revealing the whole conjunction.
inline StandardEventModel propositional_attention_sem(const Revelation& rev,
                                                      const std::vector<Agent>& agents) {
  if (!rev.propositional) throw error("non-propositional revelation");
  const auto& ls = rev.literals;
  std::size_t n = ls.size();

  StandardEventModel m;
  m.name = "F(" + print_formula(rev.revealed_formula()) + ")";

  struct Ev {
    std::size_t subset;
    std::vector<std::size_t> attended;  // per agent, indexed as in `agents`
  };
  std::vector<Ev> evs;
  for (std::size_t subset = 0; subset < (1u << n); ++subset) {
    // odometer over per-agent attended subsets of `subset`
    std::vector<std::size_t> attended(agents.size(), 0);
    for (;;) {
      evs.push_back({subset, attended});
      std::size_t i = 0;
      for (; i < agents.size(); ++i) {
        // next submask of `subset` above attended[i]
        std::size_t next = (attended[i] - subset) & subset;
        attended[i] = next;
        if (next != 0) break;
      }
      if (i == agents.size()) break;
    }
  }

  std::vector<std::string> ids;
  for (const auto& ev : evs) {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < n; ++i)
      if ((ev.subset >> i) & 1) parts.push_back(literal_formula(ls[i]));
    for (std::size_t ai = 0; ai < agents.size(); ++ai)
      detail::att_atom_parts(agents[ai], ls, ev.subset, ev.attended[ai], parts);
    Formula f = mk_conjunction(parts);
    std::string id = print_formula(f);
    ids.push_back(id);
    m.events.push_back(id);
    m.pre[id] = f;
    if (ev.subset == (1u << n) - 1) m.designated.push_back(id);
  }

  for (std::size_t ai = 0; ai < agents.size(); ++ai) {
    auto& dst = m.rel[agents[ai]];
    for (std::size_t x = 0; x < evs.size(); ++x) {
      for (std::size_t y = 0; y < evs.size(); ++y) {
        if (evs[y].subset == evs[x].attended[ai] && evs[y].attended[ai] == evs[x].attended[ai])
          dst.insert({ids[x], ids[y]});
      }
    }
  }
  return m;
}

// Edge-conditioned event model for a propositional revelation, pointed at the
// full conjunction. One event per revealed subset; per agent, one edge per
// attended subset of each revealed subset.
inline EdgeConditionedEventModel propositional_attention_ecem(const Revelation& rev,
                                                              const std::vector<Agent>& agents) {
  if (!rev.propositional) throw error("non-propositional revelation");
  const auto& ls = rev.literals;
  std::size_t n = ls.size();

  EdgeConditionedEventModel m;
  m.name = "H(" + print_formula(rev.revealed_formula()) + ")";

  std::vector<std::string> ids(1u << n);
  for (std::size_t subset = 0; subset < (1u << n); ++subset) {
    Formula f = detail::literal_conj(detail::mask_literals(ls, subset));
    ids[subset] = print_formula(f);
    m.events.push_back(ids[subset]);
    m.pre[ids[subset]] = f;
  }
  m.designated = ids[(1u << n) - 1];

  for (const auto& a : agents) {
    auto& dst = m.edges[a];
    for (std::size_t subset = 0; subset < (1u << n); ++subset) {
      // attended subsets, largest first
      std::size_t attended = subset;
      for (;;) {
        std::vector<Formula> src_parts;
        detail::att_atom_parts(a, ls, subset, attended, src_parts);
        std::vector<Formula> tgt_parts;
        detail::att_atom_parts(a, ls, attended, attended, tgt_parts);
        dst.push_back({ids[subset], mk_conjunction(src_parts), ids[attended],
                       mk_conjunction(tgt_parts)});
        if (attended == 0) break;
        attended = (attended - 1) & subset;
      }
    }
  }
  return m;
}

// Edge-conditioned event model for the revelation of an arbitrary finite set
// of formulas, pointed at the full conjunction. Attention appears as attends
// modalities in the edge conditions: an agent attending exactly to T within
// the revealed S learns T and that she attends to it.
inline EdgeConditionedEventModel general_attention_ecem(const Revelation& rev,
                                                        const std::vector<Agent>& agents) {
  if (rev.propositional && !rev.literals.empty())
    throw error("general attention expects a set of revealed formulas");
  const auto& gamma = rev.formulas;
  std::size_t n = gamma.size();

  EdgeConditionedEventModel m;
  m.name = "R(" + print_formula(rev.revealed_formula()) + ")";

  auto subset_formulas = [&](std::size_t mask) {
    std::vector<Formula> fs;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) fs.push_back(gamma[i]);
    return fs;
  };

  std::vector<std::string> ids(std::size_t{1} << n);
  for (std::size_t subset = 0; subset < (std::size_t{1} << n); ++subset) {
    Formula f = mk_conjunction(subset_formulas(subset));
    ids[subset] = print_formula(f);
    m.events.push_back(ids[subset]);
    m.pre[ids[subset]] = f;
  }
  m.designated = ids[(std::size_t{1} << n) - 1];

  for (const auto& a : agents) {
    auto& dst = m.edges[a];
    for (std::size_t subset = 0; subset < (std::size_t{1} << n); ++subset) {
      std::size_t attended = subset;
      for (;;) {
        std::vector<Formula> src, tgt;
        for (std::size_t i = 0; i < n; ++i)
          if ((attended >> i) & 1) src.push_back(mk_attends(a, gamma[i]));
        for (std::size_t i = 0; i < n; ++i)
          if (((subset >> i) & 1) && !((attended >> i) & 1))
            src.push_back(mk_not(mk_attends(a, gamma[i])));
        for (std::size_t i = 0; i < n; ++i)
          if ((attended >> i) & 1) tgt.push_back(mk_attends(a, gamma[i]));
        dst.push_back({ids[subset], mk_conjunction(src), ids[attended], mk_conjunction(tgt)});
        if (attended == 0) break;
        attended = (attended - 1) & subset;
      }
    }
  }
  return m;
}

// --- attention principles ------------------------------------------------------

struct ConjunctiveClosure {};
struct Commutativity {};
struct SublanguageClosure {};
struct SubformulaClosure {};
struct Ignoring {
  Agent subject, ignored;
};
struct AttendingTo {
  Agent subject, attended;
};
struct AttentionIntrospection {};

using AttentionPrinciple =
    std::variant<ConjunctiveClosure, Commutativity, SublanguageClosure, SubformulaClosure,
                 Ignoring, AttendingTo, AttentionIntrospection>;

struct PrincipleViolation {
  std::string world;
  Agent agent;
  std::vector<Formula> witnesses;
  std::string detail;
};

// Checks one principle over a model. Closure principles that quantify over an
// infinite language are checked relative to the supplied finite universe.
inline std::vector<PrincipleViolation> check_principle(const AttentionModel& m,
                                                       const AttentionPrinciple& principle,
                                                       const std::vector<Formula>& universe = {}) {
  std::vector<PrincipleViolation> out;
  std::set<Agent> agents;
  for (const auto& [a, pw] : m.att) agents.insert(a);
  for (const auto& [a, es] : m.base.rel) agents.insert(a);

  auto each_world_agent = [&](auto&& fn) {
    for (const auto& a : agents)
      for (const auto& w : m.base.worlds) fn(a, w, m.attention(a, w));
  };

  if (std::holds_alternative<ConjunctiveClosure>(principle)) {
    each_world_agent([&](const Agent& a, const std::string& w, const std::vector<Formula>& att) {
      for (const auto& chi : universe) {
        if (chi->kind != Connective::conj) continue;
        bool whole = contains(att, chi);
        bool parts = contains(att, chi->lhs) && contains(att, chi->rhs);
        if (whole != parts)
          out.push_back({w, a, {chi, chi->lhs, chi->rhs},
                         whole ? "conjunction attended but a conjunct is not"
                               : "both conjuncts attended but the conjunction is not"});
      }
    });
  } else if (std::holds_alternative<Commutativity>(principle)) {
    each_world_agent([&](const Agent& a, const std::string& w, const std::vector<Formula>& att) {
      for (const auto& chi : universe) {
        if (chi->kind != Connective::conj) continue;
        Formula flipped = mk_and(chi->rhs, chi->lhs);
        if (contains(att, chi) != contains(att, flipped))
          out.push_back({w, a, {chi, flipped}, "conjunction attended in one order only"});
      }
    });
  } else if (std::holds_alternative<SublanguageClosure>(principle)) {
    each_world_agent([&](const Agent& a, const std::string& w, const std::vector<Formula>& att) {
      for (const auto& f : att) {
        auto at_f = atoms_of(f);
        for (const auto& psi : universe) {
          auto at_psi = atoms_of(psi);
          bool sub = std::includes(at_f.begin(), at_f.end(), at_psi.begin(), at_psi.end());
          if (sub && !contains(att, psi))
            out.push_back({w, a, {f, psi}, "formula over attended atoms is not attended"});
        }
      }
    });
  } else if (std::holds_alternative<SubformulaClosure>(principle)) {
    each_world_agent([&](const Agent& a, const std::string& w, const std::vector<Formula>& att) {
      for (const auto& f : att) {
        for (const auto& sub : subformulas(f)) {
          if (equal(sub, f)) continue;
          if (!contains(att, sub))
            out.push_back({w, a, {f, sub}, "subformula of an attended formula is not attended"});
        }
      }
    });
  } else if (const auto* ig = std::get_if<Ignoring>(&principle)) {
    for (const auto& w : m.base.worlds) {
      for (const auto& f : m.attention(ig->subject, w)) {
        if (f->kind == Connective::believes && f->agent == ig->ignored)
          out.push_back({w, ig->subject, {f}, "attends to a belief of the ignored agent"});
      }
    }
  } else if (const auto* at = std::get_if<AttendingTo>(&principle)) {
    for (const auto& w : m.base.worlds) {
      const auto& att = m.attention(at->subject, w);
      for (const auto& psi : universe) {
        if (psi->kind == Connective::believes && psi->agent == at->attended &&
            !contains(att, psi))
          out.push_back({w, at->subject, {psi}, "belief of the attended agent is not attended"});
      }
    }
  } else {  // AttentionIntrospection
    for (const auto& a : agents) {
      for (const auto& [w, v] : m.base.edges(a)) {
        const auto& aw = m.attention(a, w);
        const auto& av = m.attention(a, v);
        bool same = aw.size() == av.size();
        for (std::size_t i = 0; same && i < aw.size(); ++i) same = equal(aw[i], av[i]);
        if (!same)
          out.push_back({w, a, {}, "attention set differs along the edge to " + v});
      }
    }
  }
  return out;
}

}  // namespace adel
