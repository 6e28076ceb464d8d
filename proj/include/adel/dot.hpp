#pragma once

// Graphviz export. Models render worlds with their valuation (and attention
// sets); the designated world gets a double border. Event models render
// preconditions under the event id, with conditioned edges labelled
// "a:(src,tgt)"; parallel edges that agree on conditions are merged into a
// single arrow with a combined agent list.

#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "adel/model.hpp"
#include "adel/syntax.hpp"

namespace adel {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline std::string join_agents(const std::set<Agent>& as) {
  std::string out;
  for (const auto& a : as) {
    if (!out.empty()) out += ",";
    out += a.id;
  }
  return out;
}

}  // namespace detail

inline std::string export_dot(const ModelVariant& m,
                              const std::optional<std::string>& point = std::nullopt) {
  const KripkeModel& km = base_of(m);
  const AttentionModel* am =
      std::holds_alternative<AttentionModel>(m) ? &std::get<AttentionModel>(m) : nullptr;
  std::ostringstream out;
  out << "digraph model {\n  rankdir=LR;\n  node [shape=ellipse];\n";
  for (const auto& w : km.worlds) {
    std::string label = w;
    const Valuation& val = km.valuation(w);
    std::string facts;
    for (const auto& p : val.atoms) facts += (facts.empty() ? "" : " ") + p.id;
    for (const auto& h : val.att_atoms)
      facts += (facts.empty() ? "" : " ") + ("Att[" + h.agent.id + "]" + h.atom.id);
    if (!facts.empty()) label += "\\n" + facts;
    if (am) {
      for (const auto& [a, per_world] : am->att) {
        auto it = per_world.find(w);
        if (it == per_world.end() || it->second.empty()) continue;
        std::string fs;
        for (const auto& f : it->second) fs += (fs.empty() ? "" : ", ") + print_formula(f);
        label += "\\nA[" + a.id + "]: {" + fs + "}";
      }
    }
    out << "  \"" << detail::dot_escape(w) << "\" [label=\"" << detail::dot_escape(label) << "\"";
    if (point && *point == w) out << ", peripheries=2";
    out << "];\n";
  }
  std::map<std::pair<std::string, std::string>, std::set<Agent>> merged;
  for (const auto& [a, edges] : km.rel)
    for (const auto& e : edges) merged[e].insert(a);
  for (const auto& [e, agents] : merged)
    out << "  \"" << detail::dot_escape(e.first) << "\" -> \"" << detail::dot_escape(e.second)
        << "\" [label=\"" << detail::join_agents(agents) << "\"];\n";
  out << "}\n";
  return out.str();
}

inline std::string export_dot(const EventModelVariant& ev) {
  std::ostringstream out;
  out << "digraph event_model {\n  rankdir=LR;\n  node [shape=box];\n";
  auto emit_node = [&](const std::string& id, const Formula* pre, bool designated) {
    std::string label = id;
    if (pre) label += "\\npre: " + print_formula(*pre);
    out << "  \"" << detail::dot_escape(id) << "\" [label=\"" << detail::dot_escape(label) << "\"";
    if (designated) out << ", peripheries=2";
    out << "];\n";
  };
  if (const auto* sp = std::get_if<SemPtr>(&ev)) {
    const auto& m = **sp;
    for (const auto& e : m.events) {
      bool d = std::find(m.designated.begin(), m.designated.end(), e) != m.designated.end();
      emit_node(e, &m.pre.at(e), d);
    }
    std::map<std::pair<std::string, std::string>, std::set<Agent>> merged;
    for (const auto& [a, edges] : m.rel)
      for (const auto& e : edges) merged[e].insert(a);
    for (const auto& [e, agents] : merged)
      out << "  \"" << detail::dot_escape(e.first) << "\" -> \"" << detail::dot_escape(e.second)
          << "\" [label=\"" << detail::join_agents(agents) << "\"];\n";
  } else if (const auto* cp = std::get_if<EcemPtr>(&ev)) {
    const auto& m = **cp;
    for (const auto& e : m.events) emit_node(e, &m.pre.at(e), e == m.designated);
    // merge agents whose edge carries the same pair of conditions
    std::map<std::tuple<std::string, std::string, std::string, std::string>, std::set<Agent>>
        merged;
    for (const auto& [a, edges] : m.edges)
      for (const auto& e : edges)
        merged[{e.from, e.to, print_formula(e.src_cond), print_formula(e.tgt_cond)}].insert(a);
    for (const auto& [key, agents] : merged) {
      const auto& [from, to, src, tgt] = key;
      out << "  \"" << detail::dot_escape(from) << "\" -> \"" << detail::dot_escape(to)
          << "\" [label=\"" << detail::join_agents(agents) << ":("
          << detail::dot_escape(src) << "," << detail::dot_escape(tgt) << ")\"];\n";
    }
  } else {
    const auto& m = **std::get_if<GauPtr>(&ev);
    for (const auto& o : m.outcomes) emit_node(o, nullptr, o == m.designated);
    std::map<std::tuple<std::string, std::string, std::string, std::string>, std::set<Agent>>
        merged;
    for (const auto& [a, per_outcome] : m.arrows)
      for (const auto& [o, arrows] : per_outcome)
        for (const auto& ar : arrows)
          merged[{o, ar.target, print_formula(ar.src_cond), print_formula(ar.tgt_cond)}].insert(a);
    for (const auto& [key, agents] : merged) {
      const auto& [from, to, src, tgt] = key;
      out << "  \"" << detail::dot_escape(from) << "\" -> \"" << detail::dot_escape(to)
          << "\" [label=\"" << detail::join_agents(agents) << ":("
          << detail::dot_escape(src) << "," << detail::dot_escape(tgt) << ")\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace adel
