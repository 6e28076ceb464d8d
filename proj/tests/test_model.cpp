#include <catch2/catch_amalgamated.hpp>

#include "adel/adel.hpp"

using namespace adel;

namespace {

Signature sig_ab() {
  Signature s;
  s.agents = {Agent{"a"}, Agent{"b"}};
  s.atoms = {Atom{"p"}, Atom{"q"}};
  return s;
}

}  // namespace

TEST_CASE("model validation") {
  Signature sig = sig_ab();

  SECTION("the two-world chain with attention atoms at the root is fine") {
    KripkeModel m;
    m.worlds = {"w1", "w2"};
    m.rel[Agent{"a"}].insert({"w1", "w2"});
    m.rel[Agent{"b"}].insert({"w1", "w2"});
    m.val["w1"].atoms.insert(Atom{"p"});
    m.val["w1"].att_atoms.insert({Agent{"a"}, Atom{"p"}});
    m.val["w2"] = {};
    CHECK(validate(m, sig).empty());
  }

  SECTION("edges to undeclared worlds are reported") {
    KripkeModel m;
    m.worlds = {"w"};
    m.rel[Agent{"a"}].insert({"w", "ghost"});
    CHECK_FALSE(validate(m, sig).empty());
  }

  SECTION("empty model is rejected") {
    KripkeModel m;
    CHECK_FALSE(validate(m, sig).empty());
  }

  SECTION("attention models need a set for every agent/world pair") {
    AttentionModel m;
    m.base.worlds = {"w1", "w2"};
    m.att[Agent{"a"}]["w1"] = {};
    m.att[Agent{"a"}]["w2"] = {};
    m.att[Agent{"b"}]["w1"] = {};
    auto diags = validate(m, sig);
    REQUIRE(diags.size() == 1);
    CHECK(diags.front().find("(b, w2)") != std::string::npos);
  }

  SECTION("attention models may not store attention atoms in the valuation") {
    AttentionModel m;
    m.base.worlds = {"w"};
    m.base.val["w"].att_atoms.insert({Agent{"a"}, Atom{"p"}});
    for (const auto& a : sig.agents) m.att[a]["w"] = {};
    CHECK_FALSE(validate(m, sig).empty());
  }
}

TEST_CASE("generated submodel") {
  KripkeModel m;
  m.worlds = {"w", "v", "island"};
  m.rel[Agent{"a"}].insert({"w", "v"});
  m.val["w"].atoms.insert(Atom{"p"});
  m.val["v"] = {};
  m.val["island"].atoms.insert(Atom{"q"});

  PointedModel pm{m, "w"};
  PointedModel sub = generated_submodel(pm);
  CHECK(base_of(sub.model).worlds == std::vector<std::string>{"w", "v"});

  SECTION("idempotence") {
    PointedModel again = generated_submodel(sub);
    CHECK(base_of(again.model).worlds == base_of(sub.model).worlds);
    CHECK(base_of(again.model).rel == base_of(sub.model).rel);
  }

  SECTION("satisfaction at the point is preserved") {
    RandomFormulaParams fp;
    fp.agents = {Agent{"a"}, Agent{"b"}};
    fp.atoms = {Atom{"p"}, Atom{"q"}};
    fp.allow_att_atoms = true;
    fp.max_depth = 3;
    Rng rng(5);
    RandomModelParams mp;
    mp.agents = fp.agents;
    mp.atoms = fp.atoms;
    mp.att_atoms = {{Agent{"a"}, Atom{"p"}}, {Agent{"b"}, Atom{"q"}}};
    mp.num_worlds = 5;
    mp.edge_density = 0.3;
    for (int i = 0; i < 40; ++i) {
      mp.seed = 900 + i;
      PointedModel full{random_kripke(mp), "w0"};
      PointedModel reach = generated_submodel(full);
      for (int j = 0; j < 10; ++j) {
        Formula f = random_formula(rng, fp);
        CHECK(satisfies(full, f) == satisfies(reach, f));
      }
    }
  }
}

TEST_CASE("seeded random models") {
  RandomModelParams p;
  p.agents = {Agent{"a"}, Agent{"b"}};
  p.atoms = {Atom{"p"}};
  p.attention_universe = {mk_atom("p"), mk_believes("a", mk_atom("p"))};
  p.seed = 77;

  SECTION("single world at density zero has no edges") {
    p.num_worlds = 1;
    p.edge_density = 0.0;
    AttentionModel m = random_model(p);
    CHECK(m.base.worlds.size() == 1);
    for (const auto& [a, es] : m.base.rel) CHECK(es.empty());
  }

  SECTION("density one gives the complete relation") {
    p.num_worlds = 5;
    p.edge_density = 1.0;
    AttentionModel m = random_model(p);
    for (const auto& a : p.agents) CHECK(m.base.edges(a).size() == 25);
  }

  SECTION("identical seeds give identical models") {
    p.num_worlds = 4;
    p.edge_density = 0.5;
    AttentionModel m1 = random_model(p);
    AttentionModel m2 = random_model(p);
    CHECK(model_to_json(m1, std::nullopt).dump() == model_to_json(m2, std::nullopt).dump());
    p.seed = 78;
    AttentionModel m3 = random_model(p);
    CHECK(model_to_json(m1, std::nullopt).dump() != model_to_json(m3, std::nullopt).dump());
  }

  SECTION("edge density can vary per agent") {
    p.num_worlds = 5;
    p.edge_density = 0.0;
    p.density_per_agent[Agent{"b"}] = 1.0;
    AttentionModel m = random_model(p);
    CHECK(m.base.edges(Agent{"a"}).empty());
    CHECK(m.base.edges(Agent{"b"}).size() == 25);
  }
}
