#pragma once

// Satisfaction and the three product updates. Dynamic modalities follow the
// conditional reading: [D]f holds whenever D is not applicable. Standard and
// arrow updates act on Kripke models; edge-conditioned updates act on both
// Kripke and attention models, copying each world's attention sets.

#include <optional>
#include <string>
#include <variant>

#include "adel/ast.hpp"
#include "adel/model.hpp"

namespace adel {

class EvalModel {
 public:
  EvalModel(const KripkeModel& m) : k_(&m) {}
  EvalModel(const AttentionModel& m) : a_(&m) {}
  EvalModel(const ModelVariant& m) {
    if (std::holds_alternative<KripkeModel>(m))
      k_ = &std::get<KripkeModel>(m);
    else
      a_ = &std::get<AttentionModel>(m);
  }

  bool is_attention() const { return a_ != nullptr; }
  const KripkeModel& kripke() const { return a_ ? a_->base : *k_; }
  const AttentionModel& attention() const {
    if (!a_) throw regime_error("model carries no attention sets");
    return *a_;
  }

 private:
  const KripkeModel* k_ = nullptr;
  const AttentionModel* a_ = nullptr;
};

inline std::string pair_world(const std::string& w, const std::string& e) {
  return "(" + w + "," + e + ")";
}

bool satisfies(const EvalModel& m, const std::string& w, const Formula& f);

// --- products (unpointed) ---------------------------------------------------

inline KripkeModel product_sem(const EvalModel& m, const StandardEventModel& ev) {
  if (m.is_attention())
    throw regime_error("standard event models update Kripke models only");
  const KripkeModel& km = m.kripke();
  KripkeModel out;
  std::map<std::string, std::vector<std::string>> surviving;  // world -> events
  for (const auto& w : km.worlds) {
    for (const auto& e : ev.events) {
      if (satisfies(m, w, ev.pre.at(e))) {
        out.worlds.push_back(pair_world(w, e));
        out.val[pair_world(w, e)] = km.valuation(w);
        surviving[w].push_back(e);
      }
    }
  }
  for (const auto& [a, edges] : km.rel) {
    auto it = ev.rel.find(a);
    if (it == ev.rel.end()) continue;
    auto& dst = out.rel[a];
    for (const auto& [w, v] : edges) {
      for (const auto& [e, f] : it->second) {
        std::string from = pair_world(w, e), to = pair_world(v, f);
        if (out.val.count(from) && out.val.count(to)) dst.insert({from, to});
      }
    }
  }
  return out;
}

namespace detail {

struct PairName {
  std::string id, world, event;
};

inline KripkeModel product_ecem_base(const EvalModel& m, const EdgeConditionedEventModel& ev,
                                     std::vector<PairName>* pairs = nullptr) {
  const KripkeModel& km = m.kripke();
  KripkeModel out;
  for (const auto& w : km.worlds) {
    for (const auto& e : ev.events) {
      if (satisfies(m, w, ev.pre.at(e))) {
        out.worlds.push_back(pair_world(w, e));
        out.val[pair_world(w, e)] = km.valuation(w);
        if (pairs) pairs->push_back({pair_world(w, e), w, e});
      }
    }
  }
  for (const auto& [a, edges] : km.rel) {
    auto it = ev.edges.find(a);
    if (it == ev.edges.end()) continue;
    auto& dst = out.rel[a];
    for (const auto& [w, v] : edges) {
      for (const auto& ce : it->second) {
        std::string from = pair_world(w, ce.from), to = pair_world(v, ce.to);
        if (!out.val.count(from) || !out.val.count(to)) continue;
        if (dst.count({from, to})) continue;
        if (satisfies(m, w, ce.src_cond) && satisfies(m, v, ce.tgt_cond)) dst.insert({from, to});
      }
    }
  }
  return out;
}

}  // namespace detail

inline KripkeModel product_ecem(const KripkeModel& m, const EdgeConditionedEventModel& ev) {
  return detail::product_ecem_base(EvalModel(m), ev);
}

// Attention sets are inherited from the source world: the update never changes
// what anyone attends to.
inline AttentionModel product_ecem(const AttentionModel& m, const EdgeConditionedEventModel& ev) {
  AttentionModel out;
  std::vector<detail::PairName> pairs;
  out.base = detail::product_ecem_base(EvalModel(m), ev, &pairs);
  for (const auto& p : pairs) {
    for (const auto& [a, per_world] : m.att) {
      auto it = per_world.find(p.world);
      out.att[a][p.id] = it != per_world.end() ? it->second : std::vector<Formula>{};
    }
  }
  return out;
}

inline ModelVariant product_ecem(const ModelVariant& m, const EdgeConditionedEventModel& ev) {
  if (std::holds_alternative<KripkeModel>(m))
    return product_ecem(std::get<KripkeModel>(m), ev);
  return product_ecem(std::get<AttentionModel>(m), ev);
}

inline KripkeModel product_gau(const EvalModel& m, const GeneralizedArrowUpdate& ev) {
  if (m.is_attention())
    throw regime_error("arrow updates update Kripke models only");
  const KripkeModel& km = m.kripke();
  KripkeModel out;
  for (const auto& w : km.worlds) {
    for (const auto& o : ev.outcomes) {
      out.worlds.push_back(pair_world(w, o));
      out.val[pair_world(w, o)] = km.valuation(w);
    }
  }
  for (const auto& [a, edges] : km.rel) {
    auto it = ev.arrows.find(a);
    if (it == ev.arrows.end()) continue;
    auto& dst = out.rel[a];
    for (const auto& [w, v] : edges) {
      for (const auto& [o, arrows] : it->second) {
        for (const auto& ar : arrows) {
          std::string from = pair_world(w, o), to = pair_world(v, ar.target);
          if (dst.count({from, to})) continue;
          if (satisfies(m, w, ar.src_cond) && satisfies(m, v, ar.tgt_cond))
            dst.insert({from, to});
        }
      }
    }
  }
  return out;
}

// --- applicability and pointed updates ---------------------------------------

// A multi-pointed standard event model applies when exactly one designated
// event's precondition holds at the point.
inline std::optional<std::string> applicable_event(const EvalModel& m, const std::string& w,
                                                   const StandardEventModel& ev) {
  std::optional<std::string> found;
  for (const auto& e : ev.designated) {
    if (satisfies(m, w, ev.pre.at(e))) {
      if (found) return std::nullopt;
      found = e;
    }
  }
  return found;
}

inline bool applicable(const EvalModel& m, const std::string& w, const StandardEventModel& ev) {
  return applicable_event(m, w, ev).has_value();
}

inline bool applicable(const EvalModel& m, const std::string& w,
                       const EdgeConditionedEventModel& ev) {
  return satisfies(m, w, ev.pre.at(ev.designated));
}

inline bool applicable(const EvalModel&, const std::string&, const GeneralizedArrowUpdate&) {
  return true;
}

struct UpdateResult {
  bool applicable = false;
  std::optional<ModelVariant> model;
  std::string point;
};

inline UpdateResult update_sem(const PointedModel& pm, const StandardEventModel& ev) {
  EvalModel m(pm.model);
  auto e = applicable_event(m, pm.point, ev);
  if (!e) return {};
  return {true, product_sem(m, ev), pair_world(pm.point, *e)};
}

inline UpdateResult update_ecem(const PointedModel& pm, const EdgeConditionedEventModel& ev) {
  EvalModel m(pm.model);
  if (!applicable(m, pm.point, ev)) return {};
  return {true, product_ecem(pm.model, ev), pair_world(pm.point, ev.designated)};
}

inline UpdateResult update_gau(const PointedModel& pm, const GeneralizedArrowUpdate& ev) {
  EvalModel m(pm.model);
  return {true, product_gau(m, ev), pair_world(pm.point, ev.designated)};
}

// --- satisfaction -------------------------------------------------------------

inline bool satisfies(const EvalModel& m, const std::string& w, const Formula& f) {
  switch (f->kind) {
    case Connective::top:
      return true;
    case Connective::atom:
      return m.kripke().valuation(w).atoms.count(f->atom) > 0;
    case Connective::att_atom:
      if (m.is_attention())
        throw regime_error("attention atom evaluated on an attention model");
      return m.kripke().valuation(w).att_atoms.count({f->agent, f->atom}) > 0;
    case Connective::neg:
      return !satisfies(m, w, f->lhs);
    case Connective::conj:
      return satisfies(m, w, f->lhs) && satisfies(m, w, f->rhs);
    case Connective::believes: {
      for (const auto& [u, v] : m.kripke().edges(f->agent)) {
        if (u == w && !satisfies(m, v, f->lhs)) return false;
      }
      return true;
    }
    case Connective::attends: {
      if (!m.is_attention())
        throw regime_error("attends modality evaluated on a plain Kripke model");
      return contains(m.attention().attention(f->agent, w), f->lhs);
    }
    case Connective::dyn_sem: {
      auto e = applicable_event(m, w, *f->sem);
      if (!e) return true;
      KripkeModel updated = product_sem(m, *f->sem);
      return satisfies(EvalModel(updated), pair_world(w, *e), f->lhs);
    }
    case Connective::dyn_ecem: {
      if (!applicable(m, w, *f->ecem)) return true;
      if (m.is_attention()) {
        AttentionModel updated = product_ecem(m.attention(), *f->ecem);
        return satisfies(EvalModel(updated), pair_world(w, f->ecem->designated), f->lhs);
      }
      KripkeModel updated = product_ecem(m.kripke(), *f->ecem);
      return satisfies(EvalModel(updated), pair_world(w, f->ecem->designated), f->lhs);
    }
    case Connective::dyn_gau: {
      KripkeModel updated = product_gau(m, *f->gau);
      return satisfies(EvalModel(updated), pair_world(w, f->gau->designated), f->lhs);
    }
  }
  return false;
}

inline bool satisfies(const PointedModel& pm, const Formula& f) {
  return satisfies(EvalModel(pm.model), pm.point, f);
}

}  // namespace adel
