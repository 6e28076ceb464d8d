#pragma once

// JSON-driven property batteries for the CLI. A battery file is
// {"cases":[...]} where each case names a kind and its parameters; every case
// reports one pass/fail line with its seed, and the first counterexample is
// dumped for inspection. An empty case list passes trivially.

#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "adel/attention.hpp"
#include "adel/equivalence.hpp"
#include "adel/random.hpp"
#include "adel/sat.hpp"
#include "adel/workspace.hpp"

namespace adel {

struct BatteryReport {
  bool ok = true;
  std::size_t passed = 0, failed = 0;
  json details = json::array();
};

namespace detail {

inline EventModelVariant resolve_event_spec(const Workspace& ws, const json& spec) {
  if (spec.contains("event")) return ws.event(spec.at("event").get<std::string>());
  std::string gen = spec.at("gen").get<std::string>();
  if (gen == "F" || gen == "H") {
    Formula phi = parse_formula(spec.at("phi").get<std::string>(), Lang::Any, ws.parse_context());
    Revelation rev = Revelation::of_propositional(phi);
    if (gen == "F")
      return std::make_shared<StandardEventModel>(propositional_attention_sem(rev, ws.agents));
    return std::make_shared<EdgeConditionedEventModel>(
        propositional_attention_ecem(rev, ws.agents));
  }
  if (gen == "R") {
    std::vector<Formula> gamma;
    for (const auto& text : spec.at("gamma"))
      gamma.push_back(parse_formula(text.get<std::string>(), Lang::Any, ws.parse_context()));
    return std::make_shared<EdgeConditionedEventModel>(
        general_attention_ecem(Revelation::of_formulas(gamma), ws.agents));
  }
  throw workspace_error("unknown event generator '" + gen + "'");
}

inline RandomModelParams model_params_from(const Workspace& ws, const json& c,
                                           std::uint64_t seed) {
  RandomModelParams mp;
  mp.agents = ws.agents;
  mp.atoms = ws.atoms;
  mp.num_worlds = c.value("worlds", 4);
  mp.edge_density = c.value("density", 0.4);
  mp.seed = seed;
  if (c.value("attention_atoms", true)) {
    for (const auto& a : ws.agents)
      for (const auto& p : ws.atoms) mp.att_atoms.push_back({a, p});
  }
  if (c.contains("universe"))
    for (const auto& text : c.at("universe"))
      mp.attention_universe.push_back(
          parse_formula(text.get<std::string>(), Lang::Any, ws.parse_context()));
  return mp;
}

inline std::vector<Formula> condition_pool_from(const Workspace& ws, const json& c) {
  std::vector<Formula> pool;
  if (c.contains("conditions")) {
    for (const auto& text : c.at("conditions"))
      pool.push_back(parse_formula(text.get<std::string>(), Lang::Any, ws.parse_context()));
    return pool;
  }
  pool.push_back(top());
  for (const auto& p : ws.atoms) {
    pool.push_back(mk_atom(p));
    pool.push_back(mk_not(mk_atom(p)));
  }
  for (const auto& a : ws.agents)
    for (const auto& p : ws.atoms) pool.push_back(mk_att_atom(a, p));
  return pool;
}

}  // namespace detail

inline BatteryReport run_battery(const Workspace& ws, const json& spec, std::ostream& out,
                                 std::uint64_t seed = 0) {
  BatteryReport report;
  auto record = [&](const std::string& name, bool ok, const json& detail) {
    (ok ? report.passed : report.failed)++;
    report.ok = report.ok && ok;
    report.details.push_back({{"name", name}, {"ok", ok}, {"detail", detail}});
    out << (ok ? "pass" : "FAIL") << "  " << name << "\n";
  };

  for (const auto& c : spec.value("cases", json::array())) {
    std::string kind = c.at("kind").get<std::string>();
    std::string name = c.value("name", kind);
    std::uint64_t case_seed = c.value("seed", seed);
    std::size_t count = c.value("count", 50);

    if (kind == "update_equivalence") {
      BatteryParams bp;
      bp.count = count;
      bp.seed = case_seed;
      bp.model = detail::model_params_from(ws, c, case_seed);
      auto left = detail::resolve_event_spec(ws, c.at("left"));
      auto right = detail::resolve_event_spec(ws, c.at("right"));
      auto verdict = update_equivalence_battery(left, right, bp);
      json detail{{"runs", verdict.runs}, {"applicable", verdict.applicable_runs}};
      if (verdict.counterexample) {
        detail["reason"] = verdict.counterexample->reason;
        detail["seed"] = verdict.counterexample->model_seed;
        detail["model"] = model_to_json(verdict.counterexample->model.model,
                                        verdict.counterexample->model.point);
      }
      record(name, verdict.ok, detail);
    } else if (kind == "sem_to_ecem_iso" || kind == "gau_to_ecem_iso" ||
               kind == "ecem_to_sem_iso") {
      RandomEventParams ep;
      ep.agents = ws.agents;
      ep.max_events = c.value("max_events", 3);
      ep.condition_pool = detail::condition_pool_from(ws, c);
      std::size_t models_per_event = c.value("models_per_event", 10);
      bool ok = true;
      json detail;
      for (std::size_t i = 0; ok && i < count; ++i) {
        ep.seed = case_seed + i;
        RandomModelParams mp = detail::model_params_from(ws, c, 0);
        EventModelVariant d1, d2;
        if (kind == "sem_to_ecem_iso") {
          auto e = std::make_shared<StandardEventModel>(random_sem(ep));
          auto t = std::make_shared<EdgeConditionedEventModel>(translate_sem_to_ecem(*e));
          if (size_ecem(*t) > 3 * size_sem(*e)) {
            ok = false;
            detail = {{"reason", "size bound exceeded"}, {"seed", ep.seed}};
            break;
          }
          d1 = e;
          d2 = t;
        } else if (kind == "gau_to_ecem_iso") {
          auto u = std::make_shared<GeneralizedArrowUpdate>(random_gau(ep));
          auto t = std::make_shared<EdgeConditionedEventModel>(translate_gau_to_ecem(*u));
          if (size_ecem(*t) > 2 * size_gau(*u)) {
            ok = false;
            detail = {{"reason", "size bound exceeded"}, {"seed", ep.seed}};
            break;
          }
          d1 = u;
          d2 = t;
        } else {
          auto cm = std::make_shared<EdgeConditionedEventModel>(random_ecem(ep));
          d1 = cm;
          d2 = std::make_shared<StandardEventModel>(translate_ecem_to_sem(*cm));
        }
        for (std::size_t mi = 0; ok && mi < models_per_event; ++mi) {
          mp.seed = case_seed * 1000003 + i * 131 + mi;
          PointedModel pm{random_kripke(mp), "w0"};
          bool app1 = event_applicable(pm, d1);
          bool app2 = event_applicable(pm, d2);
          if (app1 != app2) {
            ok = false;
            detail = {{"reason", "applicability disagrees"}, {"seed", mp.seed}};
            break;
          }
          if (!app1) continue;
          auto r1 = apply_event(pm, d1);
          auto r2 = apply_event(pm, d2);
          if (!isomorphic(EvalModel(*r1.model), EvalModel(*r2.model), std::nullopt, 64)) {
            ok = false;
            detail = {{"reason", "updates not isomorphic"},
                      {"seed", mp.seed},
                      {"model", model_to_json(pm.model, pm.point)}};
            break;
          }
        }
      }
      record(name, ok, detail);
    } else if (kind == "reduce_soundness") {
      RandomEventParams ep;
      ep.agents = ws.agents;
      ep.max_events = c.value("max_events", 3);
      ep.condition_pool = detail::condition_pool_from(ws, c);
      RandomFormulaParams fp;
      fp.agents = ws.agents;
      fp.atoms = ws.atoms;
      fp.allow_att_atoms = true;
      bool ok = true;
      json detail;
      for (std::size_t i = 0; ok && i < count; ++i) {
        ep.seed = case_seed + 31 * i;
        Rng rng(case_seed + 7919 * i);
        auto cm = std::make_shared<EdgeConditionedEventModel>(random_ecem(ep));
        Formula body = random_formula(rng, fp);
        Formula dyn = mk_dyn_ecem(cm, body);
        RandomModelParams mp = detail::model_params_from(ws, c, case_seed + 104729 * i);
        PointedModel pm{random_kripke(mp), "w0"};
        if (satisfies(pm, dyn) != satisfies(pm, reduce(dyn))) {
          ok = false;
          detail = {{"reason", "reduction changed the verdict"},
                    {"seed", case_seed + 104729 * i},
                    {"formula", print_formula(dyn)}};
        }
      }
      record(name, ok, detail);
    } else if (kind == "h_size_bound") {
      std::size_t max_agents = c.value("max_agents", 6);
      bool ok = true;
      json detail = json::array();
      Revelation rev = Revelation::of_literals({{Atom{ws.atoms.front().id}, true}});
      for (std::size_t n = 1; n <= max_agents; ++n) {
        std::vector<Agent> agents;
        for (std::size_t i = 0; i < n; ++i) agents.push_back(Agent{"a" + std::to_string(i)});
        std::size_t size = size_ecem(propositional_attention_ecem(rev, agents));
        detail.push_back({{"agents", n}, {"size", size}, {"bound", 4 + 11 * n}});
        if (size > 4 + 11 * n) ok = false;
      }
      record(name, ok, detail);
    } else if (kind == "f_counts") {
      std::size_t max_agents = c.value("max_agents", 4);
      bool ok = true;
      json detail = json::array();
      Revelation rev = Revelation::of_literals({{Atom{ws.atoms.front().id}, true}});
      for (std::size_t n = 1; n <= max_agents; ++n) {
        std::vector<Agent> agents;
        for (std::size_t i = 0; i < n; ++i) agents.push_back(Agent{"a" + std::to_string(i)});
        auto f = propositional_attention_sem(rev, agents);
        std::size_t want_designated = std::size_t{1} << n;
        detail.push_back({{"agents", n},
                          {"events", f.events.size()},
                          {"designated", f.designated.size()}});
        if (f.designated.size() != want_designated || f.events.size() != want_designated + 1)
          ok = false;
      }
      record(name, ok, detail);
    } else {
      record(name, false, {{"reason", "unknown battery kind '" + kind + "'"}});
    }
  }
  return report;
}

}  // namespace adel
