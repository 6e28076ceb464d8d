#pragma once

// Language tags and per-tag well-formedness. One AST serves every language in
// the family; a tag says which constructors (and which embedded event-model
// kinds) are allowed.

#include <string>
#include <vector>

#include "adel/ast.hpp"

namespace adel {

enum class Lang {
  EL,      // belief only
  DEL,     // + standard event models
  ECM,     // + edge-conditioned event models
  PA,      // DEL + attention atoms
  PAplus,  // ECM + attention atoms
  GA,      // ECM + attends modality
  GAU,     // EL + generalized arrow updates
  Any,     // no restriction; used when loading mixed workspaces
};

inline std::string to_string(Lang t) {
  switch (t) {
    case Lang::EL: return "EL";
    case Lang::DEL: return "DEL";
    case Lang::ECM: return "ECM";
    case Lang::PA: return "PA";
    case Lang::PAplus: return "PA+";
    case Lang::GA: return "GA";
    case Lang::GAU: return "GAU";
    case Lang::Any: return "any";
  }
  return "?";
}

inline bool lang_allows_att_atom(Lang t) {
  return t == Lang::PA || t == Lang::PAplus || t == Lang::Any;
}
inline bool lang_allows_attends(Lang t) { return t == Lang::GA || t == Lang::Any; }
inline bool lang_allows_sem(Lang t) {
  return t == Lang::DEL || t == Lang::PA || t == Lang::Any;
}
inline bool lang_allows_ecem(Lang t) {
  return t == Lang::ECM || t == Lang::PAplus || t == Lang::GA || t == Lang::Any;
}
inline bool lang_allows_gau(Lang t) { return t == Lang::GAU || t == Lang::Any; }

namespace detail {

inline void wf_check(const Formula& f, Lang tag, std::vector<std::string>& out);

template <typename Model>
void wf_check_conditions(const Model& m, Lang tag, std::vector<std::string>& out) {
  for_each_condition(m, [&](const Formula& c) { wf_check(c, tag, out); });
}

inline void wf_check(const Formula& f, Lang tag, std::vector<std::string>& out) {
  switch (f->kind) {
    case Connective::top:
    case Connective::atom:
      return;
    case Connective::att_atom:
      if (!lang_allows_att_atom(tag))
        out.push_back("attention atom Att[" + f->agent.id + "]" + f->atom.id +
                      " not in " + to_string(tag));
      return;
    case Connective::neg:
      wf_check(f->lhs, tag, out);
      return;
    case Connective::conj:
      wf_check(f->lhs, tag, out);
      wf_check(f->rhs, tag, out);
      return;
    case Connective::believes:
      wf_check(f->lhs, tag, out);
      return;
    case Connective::attends:
      if (!lang_allows_attends(tag))
        out.push_back("attends modality A[" + f->agent.id + "] not in " + to_string(tag));
      wf_check(f->lhs, tag, out);
      return;
    case Connective::dyn_sem:
      if (!lang_allows_sem(tag))
        out.push_back("standard event model modality not in " + to_string(tag));
      wf_check_conditions(*f->sem, tag, out);
      wf_check(f->lhs, tag, out);
      return;
    case Connective::dyn_ecem:
      if (!lang_allows_ecem(tag))
        out.push_back("edge-conditioned event model modality not in " + to_string(tag));
      wf_check_conditions(*f->ecem, tag, out);
      wf_check(f->lhs, tag, out);
      return;
    case Connective::dyn_gau:
      if (!lang_allows_gau(tag))
        out.push_back("arrow update modality not in " + to_string(tag));
      wf_check_conditions(*f->gau, tag, out);
      wf_check(f->lhs, tag, out);
      return;
  }
}

}  // namespace detail

// Violations of the tag's grammar; empty means well-formed. Embedded event
// models are checked recursively under the same tag.
inline std::vector<std::string> well_formedness_violations(const Formula& f, Lang tag) {
  std::vector<std::string> out;
  detail::wf_check(f, tag, out);
  return out;
}

inline bool well_formed(const Formula& f, Lang tag) {
  return well_formedness_violations(f, tag).empty();
}

}  // namespace adel
