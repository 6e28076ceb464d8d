#pragma once

// Workspace: a named collection of agents, atoms, models, event models and
// formulas, loaded from a single JSON document. The format is self-contained
// and diff-friendly; formulas appear as concrete syntax strings.

#include <fstream>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "adel/ast.hpp"
#include "adel/model.hpp"
#include "adel/syntax.hpp"

namespace adel {

using nlohmann::json;

struct workspace_error : error {
  using error::error;
};

struct StoredModel {
  ModelVariant model;
  std::optional<std::string> point;
};

struct Workspace {
  std::vector<Agent> agents;
  std::vector<Atom> atoms;
  std::map<std::string, StoredModel> models;
  std::map<std::string, EventModelVariant> events;
  std::map<std::string, Formula> formulas;

  Signature signature() const {
    Signature s;
    s.agents.insert(agents.begin(), agents.end());
    s.atoms.insert(atoms.begin(), atoms.end());
    return s;
  }

  ParseContext parse_context() const {
    ParseContext ctx;
    ctx.agents.insert(agents.begin(), agents.end());
    ctx.atoms.insert(atoms.begin(), atoms.end());
    ctx.events = events;
    return ctx;
  }

  const StoredModel& model(const std::string& name) const {
    auto it = models.find(name);
    if (it == models.end()) throw workspace_error("unknown model '" + name + "'");
    return it->second;
  }

  PointedModel pointed(const std::string& name) const {
    const StoredModel& sm = model(name);
    if (!sm.point) throw workspace_error("model '" + name + "' has no designated point");
    return {sm.model, *sm.point};
  }

  const EventModelVariant& event(const std::string& name) const {
    auto it = events.find(name);
    if (it == events.end()) throw workspace_error("unknown event model '" + name + "'");
    return it->second;
  }
};

// --- valuation entries --------------------------------------------------------

// A valuation entry is "p" or "Att[a]p".
inline void parse_val_entry(const std::string& s, Valuation& val) {
  if (s.rfind("Att[", 0) == 0) {
    auto close = s.find(']');
    if (close == std::string::npos) throw workspace_error("bad valuation entry: " + s);
    val.att_atoms.insert({Agent{s.substr(4, close - 4)}, Atom{s.substr(close + 1)}});
  } else {
    val.atoms.insert(Atom{s});
  }
}

inline json valuation_to_json(const Valuation& v) {
  json out = json::array();
  for (const auto& p : v.atoms) out.push_back(p.id);
  for (const auto& h : v.att_atoms) out.push_back("Att[" + h.agent.id + "]" + h.atom.id);
  return out;
}

// --- models ---------------------------------------------------------------------

inline json model_to_json(const ModelVariant& m, const std::optional<std::string>& point) {
  const KripkeModel& km = base_of(m);
  const AttentionModel* am =
      std::holds_alternative<AttentionModel>(m) ? &std::get<AttentionModel>(m) : nullptr;
  json out;
  out["worlds"] = json::array();
  for (const auto& w : km.worlds) {
    json jw;
    jw["id"] = w;
    jw["val"] = valuation_to_json(km.valuation(w));
    if (am) {
      json att = json::object();
      for (const auto& [a, per_world] : am->att) {
        auto it = per_world.find(w);
        if (it == per_world.end()) continue;
        json fs = json::array();
        for (const auto& f : it->second) fs.push_back(print_formula(f));
        att[a.id] = fs;
      }
      jw["att"] = att;
    }
    out["worlds"].push_back(jw);
  }
  out["rel"] = json::object();
  for (const auto& [a, edges] : km.rel) {
    json es = json::array();
    for (const auto& [u, v] : edges) es.push_back(json::array({u, v}));
    out["rel"][a.id] = es;
  }
  if (point) out["point"] = *point;
  return out;
}

inline StoredModel model_from_json(const json& j, const ParseContext& ctx) {
  bool attention = false;
  for (const auto& jw : j.at("worlds"))
    if (jw.contains("att")) attention = true;

  KripkeModel km;
  AttentionModel am;
  for (const auto& jw : j.at("worlds")) {
    std::string id = jw.at("id").get<std::string>();
    km.worlds.push_back(id);
    Valuation val;
    if (jw.contains("val"))
      for (const auto& entry : jw.at("val")) parse_val_entry(entry.get<std::string>(), val);
    km.val[id] = std::move(val);
    if (attention && jw.contains("att")) {
      for (auto it = jw.at("att").begin(); it != jw.at("att").end(); ++it) {
        std::vector<Formula> fs;
        for (const auto& text : it.value())
          fs.push_back(parse_formula(text.get<std::string>(), Lang::Any, ctx));
        am.att[Agent{it.key()}][id] = canonical_sorted(std::move(fs));
      }
    }
  }
  if (j.contains("rel")) {
    for (auto it = j.at("rel").begin(); it != j.at("rel").end(); ++it) {
      auto& edges = km.rel[Agent{it.key()}];
      for (const auto& pair : it.value())
        edges.insert({pair.at(0).get<std::string>(), pair.at(1).get<std::string>()});
    }
  }
  StoredModel sm{KripkeModel{}, std::nullopt};
  if (attention) {
    am.base = std::move(km);
    sm.model = std::move(am);
  } else {
    sm.model = std::move(km);
  }
  if (j.contains("point")) sm.point = j.at("point").get<std::string>();
  return sm;
}

// --- event models ----------------------------------------------------------------

inline json event_to_json(const EventModelVariant& ev) {
  json out;
  if (const auto* sp = std::get_if<SemPtr>(&ev)) {
    const auto& m = **sp;
    out["kind"] = "sem";
    out["events"] = m.events;
    json pre = json::object();
    for (const auto& [e, f] : m.pre) pre[e] = print_formula(f);
    out["pre"] = pre;
    json edges = json::object();
    for (const auto& [a, es] : m.rel) {
      json list = json::array();
      for (const auto& [u, v] : es) list.push_back({{"from", u}, {"to", v}});
      edges[a.id] = list;
    }
    out["edges"] = edges;
    out["designated"] = m.designated;
  } else if (const auto* cp = std::get_if<EcemPtr>(&ev)) {
    const auto& m = **cp;
    out["kind"] = "ecem";
    out["events"] = m.events;
    json pre = json::object();
    for (const auto& [e, f] : m.pre) pre[e] = print_formula(f);
    out["pre"] = pre;
    json edges = json::object();
    for (const auto& [a, es] : m.edges) {
      json list = json::array();
      for (const auto& e : es)
        list.push_back({{"from", e.from},
                        {"src", print_formula(e.src_cond)},
                        {"to", e.to},
                        {"tgt", print_formula(e.tgt_cond)}});
      edges[a.id] = list;
    }
    out["edges"] = edges;
    out["designated"] = json::array({m.designated});
  } else {
    const auto& m = **std::get_if<GauPtr>(&ev);
    out["kind"] = "gau";
    out["events"] = m.outcomes;
    json edges = json::object();
    for (const auto& [a, per_outcome] : m.arrows) {
      json list = json::array();
      for (const auto& [o, arrows] : per_outcome)
        for (const auto& ar : arrows)
          list.push_back({{"from", o},
                          {"src", print_formula(ar.src_cond)},
                          {"to", ar.target},
                          {"tgt", print_formula(ar.tgt_cond)}});
      edges[a.id] = list;
    }
    out["edges"] = edges;
    out["designated"] = json::array({m.designated});
  }
  return out;
}

inline EventModelVariant event_from_json(const json& j, const std::string& name,
                                         const ParseContext& ctx) {
  std::string kind = j.at("kind").get<std::string>();
  auto designated_list = [&]() {
    std::vector<std::string> out;
    const auto& d = j.at("designated");
    if (d.is_string())
      out.push_back(d.get<std::string>());
    else
      for (const auto& e : d) out.push_back(e.get<std::string>());
    if (out.empty()) throw workspace_error("event model '" + name + "' has no designated event");
    return out;
  };
  auto parse_f = [&](const json& text) {
    return parse_formula(text.get<std::string>(), Lang::Any, ctx);
  };

  if (kind == "sem") {
    auto m = std::make_shared<StandardEventModel>();
    m->name = name;
    m->events = j.at("events").get<std::vector<std::string>>();
    for (const auto& e : m->events)
      m->pre[e] = j.contains("pre") && j.at("pre").contains(e) ? parse_f(j.at("pre").at(e)) : top();
    if (j.contains("edges")) {
      for (auto it = j.at("edges").begin(); it != j.at("edges").end(); ++it) {
        auto& edges = m->rel[Agent{it.key()}];
        for (const auto& je : it.value())
          edges.insert({je.at("from").get<std::string>(), je.at("to").get<std::string>()});
      }
    }
    m->designated = designated_list();
    return m;
  }
  if (kind == "ecem") {
    auto m = std::make_shared<EdgeConditionedEventModel>();
    m->name = name;
    m->events = j.at("events").get<std::vector<std::string>>();
    for (const auto& e : m->events)
      m->pre[e] = j.contains("pre") && j.at("pre").contains(e) ? parse_f(j.at("pre").at(e)) : top();
    if (j.contains("edges")) {
      for (auto it = j.at("edges").begin(); it != j.at("edges").end(); ++it) {
        auto& edges = m->edges[Agent{it.key()}];
        for (const auto& je : it.value())
          edges.push_back({je.at("from").get<std::string>(), parse_f(je.at("src")),
                           je.at("to").get<std::string>(), parse_f(je.at("tgt"))});
      }
    }
    auto d = designated_list();
    if (d.size() != 1)
      throw workspace_error("edge-conditioned model '" + name + "' must have one designated event");
    m->designated = d.front();
    return m;
  }
  if (kind == "gau") {
    auto m = std::make_shared<GeneralizedArrowUpdate>();
    m->name = name;
    m->outcomes = j.at("events").get<std::vector<std::string>>();
    if (j.contains("edges")) {
      for (auto it = j.at("edges").begin(); it != j.at("edges").end(); ++it) {
        auto& per_outcome = m->arrows[Agent{it.key()}];
        for (const auto& o : m->outcomes) per_outcome[o];
        for (const auto& je : it.value())
          per_outcome[je.at("from").get<std::string>()].push_back(
              {parse_f(je.at("src")), je.at("to").get<std::string>(), parse_f(je.at("tgt"))});
      }
    }
    auto d = designated_list();
    if (d.size() != 1)
      throw workspace_error("arrow update '" + name + "' must have one designated outcome");
    m->designated = d.front();
    return m;
  }
  throw workspace_error("unknown event model kind '" + kind + "'");
}

// --- whole workspace --------------------------------------------------------------

inline Workspace load_workspace_json(const json& j) {
  Workspace ws;
  for (const auto& a : j.value("agents", json::array())) ws.agents.push_back(Agent{a});
  for (const auto& p : j.value("atoms", json::array())) ws.atoms.push_back(Atom{p});
  ParseContext ctx;
  ctx.agents.insert(ws.agents.begin(), ws.agents.end());
  ctx.atoms.insert(ws.atoms.begin(), ws.atoms.end());
  if (j.contains("events")) {
    // earlier-named event models may be referenced by later conditions
    for (auto it = j.at("events").begin(); it != j.at("events").end(); ++it) {
      ws.events[it.key()] = event_from_json(it.value(), it.key(), ctx);
      ctx.events = ws.events;
    }
  }
  if (j.contains("models"))
    for (auto it = j.at("models").begin(); it != j.at("models").end(); ++it)
      ws.models[it.key()] = model_from_json(it.value(), ctx);
  if (j.contains("formulas"))
    for (auto it = j.at("formulas").begin(); it != j.at("formulas").end(); ++it)
      ws.formulas[it.key()] = parse_formula(it.value().get<std::string>(), Lang::Any, ctx);
  return ws;
}

inline Workspace load_workspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw workspace_error("cannot open workspace file '" + path + "'");
  json j;
  in >> j;
  return load_workspace_json(j);
}

inline json workspace_to_json(const Workspace& ws) {
  json out;
  out["agents"] = json::array();
  for (const auto& a : ws.agents) out["agents"].push_back(a.id);
  out["atoms"] = json::array();
  for (const auto& p : ws.atoms) out["atoms"].push_back(p.id);
  out["models"] = json::object();
  for (const auto& [name, sm] : ws.models) out["models"][name] = model_to_json(sm.model, sm.point);
  out["events"] = json::object();
  for (const auto& [name, ev] : ws.events) out["events"][name] = event_to_json(ev);
  if (!ws.formulas.empty()) {
    out["formulas"] = json::object();
    for (const auto& [name, f] : ws.formulas) out["formulas"][name] = print_formula(f);
  }
  return out;
}

}  // namespace adel
