// Command-line front end. Exit code 0 means the command's semantic verdict is
// positive (formula true, models bisimilar, battery green, ...); 1 means a
// negative verdict; 2 means a usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "adel/adel.hpp"

namespace {

using adel::json;

int fail(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

adel::Lang parse_lang(const std::string& s) {
  if (s == "EL") return adel::Lang::EL;
  if (s == "DEL") return adel::Lang::DEL;
  if (s == "ECM") return adel::Lang::ECM;
  if (s == "PA") return adel::Lang::PA;
  if (s == "PA+" || s == "PAplus") return adel::Lang::PAplus;
  if (s == "GA") return adel::Lang::GA;
  if (s == "GAU") return adel::Lang::GAU;
  if (s == "any") return adel::Lang::Any;
  throw adel::error("unknown language tag '" + s + "'");
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw adel::error("cannot write '" + path + "'");
  out << text;
}

json check_trace(const adel::PointedModel& pm, const adel::Formula& f) {
  json trace = json::array();
  adel::FormulaSet seen;
  for (const auto& sub : adel::subformulas(f)) {
    if (!seen.insert(sub).second) continue;
    json verdicts = json::object();
    for (const auto& w : adel::base_of(pm.model).worlds)
      verdicts[w] = adel::satisfies(adel::EvalModel(pm.model), w, sub);
    trace.push_back({{"subformula", adel::print_formula(sub)}, {"verdicts", verdicts}});
  }
  return trace;
}

adel::EventModelVariant generate_attention_model(const adel::Workspace& ws,
                                                 const std::string& kind, const std::string& phi,
                                                 const std::vector<std::string>& gamma) {
  if (kind == "F" || kind == "H") {
    if (phi.empty()) throw adel::error("--phi is required for kinds F and H");
    adel::Formula f = adel::parse_formula(phi, adel::Lang::Any, ws.parse_context());
    adel::Revelation rev = adel::Revelation::of_propositional(f);
    if (kind == "F")
      return std::make_shared<adel::StandardEventModel>(
          adel::propositional_attention_sem(rev, ws.agents));
    return std::make_shared<adel::EdgeConditionedEventModel>(
        adel::propositional_attention_ecem(rev, ws.agents));
  }
  if (kind == "R") {
    std::vector<adel::Formula> fs;
    for (const auto& text : gamma)
      fs.push_back(adel::parse_formula(text, adel::Lang::Any, ws.parse_context()));
    return std::make_shared<adel::EdgeConditionedEventModel>(
        adel::general_attention_ecem(adel::Revelation::of_formulas(fs), ws.agents));
  }
  throw adel::error("unknown attention model kind '" + kind + "' (expected F, H or R)");
}

adel::AttentionPrinciple parse_principle(const std::string& name, const std::string& subject,
                                         const std::string& other) {
  if (name == "conjunctive-closure") return adel::ConjunctiveClosure{};
  if (name == "commutativity") return adel::Commutativity{};
  if (name == "sublanguage-closure") return adel::SublanguageClosure{};
  if (name == "subformula-closure") return adel::SubformulaClosure{};
  if (name == "introspection") return adel::AttentionIntrospection{};
  if (name == "ignoring") return adel::Ignoring{adel::Agent{subject}, adel::Agent{other}};
  if (name == "attending-to") return adel::AttendingTo{adel::Agent{subject}, adel::Agent{other}};
  throw adel::error("unknown principle '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adel: attention-aware dynamic epistemic logic toolkit"};
  app.require_subcommand(1);

  bool json_out = false;
  std::uint64_t seed = 0;
  std::size_t bound = 12;
  app.add_flag("--json", json_out, "machine-readable JSON output");
  app.add_option("--seed", seed, "seed for randomized commands");
  app.add_option("--bound", bound, "isomorphism search bound (worlds)");

  std::string ws_path, model_name, model2_name, formula_text, event_name, out_path;
  std::string lang_name = "any";

  auto* cmd_check = app.add_subcommand("check", "evaluate a formula at a model's point");
  cmd_check->add_option("workspace", ws_path)->required();
  cmd_check->add_option("model", model_name)->required();
  cmd_check->add_option("formula", formula_text)->required();
  cmd_check->add_option("--lang", lang_name, "language tag (EL, DEL, ECM, PA, PA+, GA, GAU, any)");

  auto* cmd_update = app.add_subcommand("update", "product update of a model with an event model");
  cmd_update->add_option("workspace", ws_path)->required();
  cmd_update->add_option("model", model_name)->required();
  cmd_update->add_option("event", event_name)->required();
  cmd_update->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* cmd_bisim = app.add_subcommand("bisim", "decide bisimilarity of two pointed models");
  cmd_bisim->add_option("workspace", ws_path)->required();
  cmd_bisim->add_option("model1", model_name)->required();
  cmd_bisim->add_option("model2", model2_name)->required();

  auto* cmd_iso = app.add_subcommand("iso", "decide isomorphism of two models");
  cmd_iso->add_option("workspace", ws_path)->required();
  cmd_iso->add_option("model1", model_name)->required();
  cmd_iso->add_option("model2", model2_name)->required();

  std::string to_kind, from_kind;
  auto* cmd_transform = app.add_subcommand("transform", "translate between event-model formalisms");
  cmd_transform->add_option("workspace", ws_path)->required();
  cmd_transform->add_option("event", event_name)->required();
  cmd_transform->add_option("--to", to_kind, "target formalism: ecem or sem");
  cmd_transform->add_option("--from", from_kind, "expected source formalism (sanity check)");
  cmd_transform->add_option("-o,--out", out_path);

  auto* cmd_attention = app.add_subcommand("attention", "attention event models and principles");
  std::string att_kind, att_phi, principle_name, principle_subject, principle_other,
      universe_path;
  std::vector<std::string> att_gamma;
  auto* cmd_gen = cmd_attention->add_subcommand("gen", "generate a revelation event model");
  cmd_gen->add_option("workspace", ws_path)->required();
  cmd_gen->add_option("--kind", att_kind, "F, H or R")->required();
  cmd_gen->add_option("--phi", att_phi, "propositional revelation (kinds F and H)");
  cmd_gen->add_option("--gamma", att_gamma, "revealed formulas (kind R)");
  cmd_gen->add_option("-o,--out", out_path);
  auto* cmd_principle = cmd_attention->add_subcommand("check", "check an attention principle");
  cmd_principle->add_option("workspace", ws_path)->required();
  cmd_principle->add_option("model", model_name)->required();
  cmd_principle->add_option("--principle", principle_name)->required();
  cmd_principle->add_option("--subject", principle_subject);
  cmd_principle->add_option("--other", principle_other);
  cmd_principle->add_option("--universe", universe_path,
                            "JSON file with a list of universe formulas");

  auto* cmd_size = app.add_subcommand("size", "size of a named formula or event model");
  cmd_size->add_option("workspace", ws_path)->required();
  cmd_size->add_option("name", model_name)->required();

  auto* cmd_sat = app.add_subcommand("sat", "satisfiability of a static formula");
  cmd_sat->add_option("workspace", ws_path)->required();
  cmd_sat->add_option("formula", formula_text)->required();

  auto* cmd_reduce = app.add_subcommand("reduce", "rewrite to an equivalent static formula");
  cmd_reduce->add_option("workspace", ws_path)->required();
  cmd_reduce->add_option("formula", formula_text)->required();

  auto* cmd_dot = app.add_subcommand("export-dot", "Graphviz export of a model or event model");
  cmd_dot->add_option("workspace", ws_path)->required();
  cmd_dot->add_option("name", model_name)->required();
  cmd_dot->add_option("-o,--out", out_path);

  std::string battery_path;
  auto* cmd_battery = app.add_subcommand("battery", "run a battery specification");
  cmd_battery->add_option("workspace", ws_path)->required();
  cmd_battery->add_option("spec", battery_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    adel::Workspace ws = adel::load_workspace_file(ws_path);

    if (*cmd_check) {
      adel::PointedModel pm = ws.pointed(model_name);
      adel::Formula f =
          adel::parse_formula(formula_text, parse_lang(lang_name), ws.parse_context());
      bool verdict = adel::satisfies(pm, f);
      if (json_out) {
        json out{{"formula", adel::print_formula(f)},
                 {"model", model_name},
                 {"point", pm.point},
                 {"result", verdict},
                 {"trace", check_trace(pm, f)}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << (verdict ? "true" : "false") << "\n";
        for (const auto& entry : check_trace(pm, f)) {
          std::cout << "  " << entry.at("subformula").get<std::string>() << ":";
          for (auto it = entry.at("verdicts").begin(); it != entry.at("verdicts").end(); ++it)
            std::cout << " " << it.key() << "=" << (it.value().get<bool>() ? "1" : "0");
          std::cout << "\n";
        }
      }
      return verdict ? 0 : 1;
    }

    if (*cmd_update) {
      adel::PointedModel pm = ws.pointed(model_name);
      adel::UpdateResult r = adel::apply_event(pm, ws.event(event_name));
      if (!r.applicable) {
        std::cerr << "event model '" << event_name << "' is not applicable at " << pm.point
                  << "\n";
        return 1;
      }
      write_output(out_path, adel::model_to_json(*r.model, r.point).dump(2) + "\n");
      return 0;
    }

    if (*cmd_bisim) {
      adel::PointedModel a = ws.pointed(model_name);
      adel::PointedModel b = ws.pointed(model2_name);
      auto w = adel::bisimilar(a, b);
      if (json_out) {
        json out{{"bisimilar", w.has_value()}};
        if (w) {
          json rel = json::array();
          for (const auto& [u, v] : w->relation) rel.push_back(json::array({u, v}));
          out["relation"] = rel;
        }
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << (w ? "bisimilar" : "not bisimilar") << "\n";
      }
      return w ? 0 : 1;
    }

    if (*cmd_iso) {
      const auto& a = ws.model(model_name);
      const auto& b = ws.model(model2_name);
      auto w = adel::isomorphic(adel::EvalModel(a.model), adel::EvalModel(b.model), std::nullopt,
                                bound);
      if (json_out) {
        json out{{"isomorphic", w.has_value()}};
        if (w) out["bijection"] = w->bijection;
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << (w ? "isomorphic" : "not isomorphic") << "\n";
      }
      return w ? 0 : 1;
    }

    if (*cmd_transform) {
      const auto& ev = ws.event(event_name);
      if (!from_kind.empty()) {
        std::string actual = std::holds_alternative<adel::SemPtr>(ev) ? "sem"
                             : std::holds_alternative<adel::EcemPtr>(ev) ? "ecem"
                                                                         : "gau";
        if (actual != from_kind)
          return fail("event model '" + event_name + "' is " + actual + ", not " + from_kind);
      }
      adel::EventModelVariant out_ev;
      if (to_kind == "ecem") {
        if (const auto* sp = std::get_if<adel::SemPtr>(&ev))
          out_ev = std::make_shared<adel::EdgeConditionedEventModel>(
              adel::translate_sem_to_ecem(**sp));
        else if (const auto* gp = std::get_if<adel::GauPtr>(&ev))
          out_ev = std::make_shared<adel::EdgeConditionedEventModel>(
              adel::translate_gau_to_ecem(**gp));
        else
          return fail("'" + event_name + "' is already edge-conditioned");
      } else if (to_kind == "sem") {
        if (const auto* cp = std::get_if<adel::EcemPtr>(&ev))
          out_ev = std::make_shared<adel::StandardEventModel>(adel::translate_ecem_to_sem(**cp));
        else
          return fail("--to sem expects an edge-conditioned event model");
      } else {
        return fail("--to must be 'ecem' or 'sem'");
      }
      write_output(out_path, adel::event_to_json(out_ev).dump(2) + "\n");
      return 0;
    }

    if (*cmd_gen) {
      auto ev = generate_attention_model(ws, att_kind, att_phi, att_gamma);
      write_output(out_path, adel::event_to_json(ev).dump(2) + "\n");
      return 0;
    }

    if (*cmd_principle) {
      const auto& sm = ws.model(model_name);
      if (!std::holds_alternative<adel::AttentionModel>(sm.model))
        return fail("principle checking expects an attention model");
      std::vector<adel::Formula> universe;
      if (!universe_path.empty()) {
        std::ifstream in(universe_path);
        if (!in) return fail("cannot open universe file '" + universe_path + "'");
        json j;
        in >> j;
        for (const auto& text : j)
          universe.push_back(
              adel::parse_formula(text.get<std::string>(), adel::Lang::Any, ws.parse_context()));
      }
      auto violations =
          adel::check_principle(std::get<adel::AttentionModel>(sm.model),
                                parse_principle(principle_name, principle_subject,
                                                principle_other),
                                universe);
      if (json_out) {
        json out = json::array();
        for (const auto& v : violations) {
          json ws_list = json::array();
          for (const auto& f : v.witnesses) ws_list.push_back(adel::print_formula(f));
          out.push_back({{"world", v.world},
                         {"agent", v.agent.id},
                         {"witnesses", ws_list},
                         {"detail", v.detail}});
        }
        std::cout << json{{"ok", violations.empty()}, {"violations", out}}.dump(2) << "\n";
      } else if (violations.empty()) {
        std::cout << "ok\n";
      } else {
        for (const auto& v : violations)
          std::cout << v.world << " / " << v.agent.id << ": " << v.detail << "\n";
      }
      return violations.empty() ? 0 : 1;
    }

    if (*cmd_size) {
      std::size_t size = 0;
      if (ws.formulas.count(model_name)) {
        size = adel::formula_size(ws.formulas.at(model_name));
      } else if (ws.events.count(model_name)) {
        const auto& ev = ws.events.at(model_name);
        if (const auto* sp = std::get_if<adel::SemPtr>(&ev)) size = adel::size_sem(**sp);
        if (const auto* cp = std::get_if<adel::EcemPtr>(&ev)) size = adel::size_ecem(**cp);
        if (const auto* gp = std::get_if<adel::GauPtr>(&ev)) size = adel::size_gau(**gp);
      } else {
        return fail("no formula or event model named '" + model_name + "'");
      }
      if (json_out)
        std::cout << json{{"name", model_name}, {"size", size}}.dump(2) << "\n";
      else
        std::cout << size << "\n";
      return 0;
    }

    if (*cmd_sat) {
      adel::Formula f =
          adel::parse_formula(formula_text, adel::Lang::Any, ws.parse_context());
      adel::TableauVerdict v = adel::k_satisfiable(adel::reduce(f));
      if (json_out) {
        json out{{"satisfiable", v.satisfiable}};
        if (v.witness) out["witness"] = adel::model_to_json(v.witness->model, v.witness->point);
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << (v.satisfiable ? "satisfiable" : "unsatisfiable") << "\n";
      }
      return v.satisfiable ? 0 : 1;
    }

    if (*cmd_reduce) {
      adel::Formula f =
          adel::parse_formula(formula_text, adel::Lang::Any, ws.parse_context());
      std::cout << adel::print_formula(adel::reduce(f)) << "\n";
      return 0;
    }

    if (*cmd_dot) {
      std::string text;
      if (ws.models.count(model_name)) {
        const auto& sm = ws.models.at(model_name);
        text = adel::export_dot(sm.model, sm.point);
      } else if (ws.events.count(model_name)) {
        text = adel::export_dot(ws.events.at(model_name));
      } else {
        return fail("no model or event model named '" + model_name + "'");
      }
      write_output(out_path, text);
      return 0;
    }

    if (*cmd_battery) {
      std::ifstream in(battery_path);
      if (!in) return fail("cannot open battery spec '" + battery_path + "'");
      json spec;
      in >> spec;
      adel::BatteryReport report = adel::run_battery(ws, spec, std::cout, seed);
      if (json_out) std::cout << report.details.dump(2) << "\n";
      std::cout << report.passed << " passed, " << report.failed << " failed\n";
      return report.ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return 2;
}
