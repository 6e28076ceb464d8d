#include <catch2/catch_amalgamated.hpp>

#include "adel/adel.hpp"
#include "oracles.hpp"

using namespace adel;

namespace {

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  std::vector<Formula> todo{f};
  while (!todo.empty()) {
    Formula g = todo.back();
    todo.pop_back();
    if (g->kind == Connective::conj) {
      todo.push_back(g->lhs);
      todo.push_back(g->rhs);
    } else if (g->kind != Connective::top) {
      out.push_back(g);
    }
  }
  return canonical_sorted(std::move(out));
}

}  // namespace

TEST_CASE("standard attention event model") {
  std::vector<Agent> two{Agent{"a"}, Agent{"b"}};

  SECTION("event counts match the enumeration oracle") {
    Revelation rpq = Revelation::of_literals({{Atom{"p"}, true}, {Atom{"q"}, true}});
    StandardEventModel f = propositional_attention_sem(rpq, two);
    auto expect = oracle::expected_f({true, true}, 2);
    CHECK(f.events.size() == expect.events);
    CHECK(f.events.size() == 25);
    CHECK(f.designated.size() == expect.designated);

    Revelation rp = Revelation::of_literals({{Atom{"p"}, true}});
    StandardEventModel fp = propositional_attention_sem(rp, {Agent{"a"}});
    CHECK(fp.events.size() == 3);
    CHECK(fp.designated.size() == 2);
  }

  SECTION("the empty revelation is a single public event") {
    Revelation rt = Revelation::of_literals({});
    StandardEventModel f = propositional_attention_sem(rt, two);
    REQUIRE(f.events.size() == 1);
    CHECK(f.designated == f.events);
    for (const auto& a : two) CHECK(f.rel.at(a).count({f.events[0], f.events[0]}) == 1);
  }

  SECTION("edges obey attentiveness and inertia") {
    Revelation rpq = Revelation::of_literals({{Atom{"p"}, true}, {Atom{"q"}, false}});
    StandardEventModel f = propositional_attention_sem(rpq, two);
    for (const auto& agent : two) {
      for (const auto& [from, to] : f.rel.at(agent)) {
        auto e = conjuncts(f.pre.at(from));
        auto g = conjuncts(f.pre.at(to));
        for (const auto& lit : rpq.literals) {
          Formula att = mk_att_atom(agent, lit.atom);
          Formula fact = literal_formula(lit);
          if (contains(e, att)) {
            CHECK(contains(g, att));   // attentiveness keeps the attention atom
            CHECK(contains(g, fact));  // and the revealed literal
          } else {
            CHECK_FALSE(contains(g, fact));  // inertia drops it
          }
        }
      }
    }
  }
}

TEST_CASE("edge-conditioned attention event model") {
  std::vector<Agent> two{Agent{"a"}, Agent{"b"}};

  SECTION("one revealed atom gives the two-event, three-edge shape") {
    Revelation rp = Revelation::of_literals({{Atom{"p"}, true}});
    EdgeConditionedEventModel h = propositional_attention_ecem(rp, two);
    CHECK(h.events == std::vector<std::string>{"T", "p"});
    CHECK(h.designated == "p");
    for (const auto& a : two) {
      const auto& edges = h.edges.at(a);
      REQUIRE(edges.size() == 3);
      // loop at p under attention, drop to T under inattention, loop at T
      bool loop_p = false, drop = false, loop_t = false;
      for (const auto& e : edges) {
        if (e.from == "p" && e.to == "p")
          loop_p = equal(e.src_cond, mk_att_atom(a, Atom{"p"})) &&
                   equal(e.tgt_cond, mk_att_atom(a, Atom{"p"}));
        if (e.from == "p" && e.to == "T")
          drop = equal(e.src_cond, mk_not(mk_att_atom(a, Atom{"p"}))) &&
                 equal(e.tgt_cond, top());
        if (e.from == "T" && e.to == "T")
          loop_t = equal(e.src_cond, top()) && equal(e.tgt_cond, top());
      }
      CHECK(loop_p);
      CHECK(drop);
      CHECK(loop_t);
    }
    for (std::size_t n = 1; n <= 6; ++n) {
      std::vector<Agent> agents;
      for (std::size_t i = 0; i < n; ++i) agents.push_back(Agent{"a" + std::to_string(i)});
      CHECK(size_ecem(propositional_attention_ecem(rp, agents)) <= 4 + 11 * n);
    }
  }

  SECTION("two revealed atoms give four events and nine edges per agent") {
    Revelation rpq = Revelation::of_literals({{Atom{"p"}, true}, {Atom{"q"}, true}});
    EdgeConditionedEventModel h = propositional_attention_ecem(rpq, two);
    CHECK(h.events.size() == 4);
    CHECK(h.designated == "(p & q)");
    for (const auto& a : two) CHECK(h.edges.at(a).size() == 9);

    // the arrow from the full revelation to the p-only event
    bool found = false;
    for (const auto& e : h.edges.at(Agent{"a"})) {
      if (e.from == "(p & q)" && e.to == "p") {
        found = equal(e.src_cond, mk_and(mk_att_atom("a", "p"),
                                         mk_not(mk_att_atom("a", "q")))) &&
                equal(e.tgt_cond, mk_att_atom("a", "p"));
      }
      if (found) break;
    }
    CHECK(found);
  }

  SECTION("the empty revelation is the public trivial event") {
    Revelation rt = Revelation::of_literals({});
    EdgeConditionedEventModel h = propositional_attention_ecem(rt, two);
    REQUIRE(h.events.size() == 1);
    CHECK(h.events.front() == "T");
    for (const auto& a : two) {
      REQUIRE(h.edges.at(a).size() == 1);
      CHECK(equal(h.edges.at(a).front().src_cond, top()));
      CHECK(equal(h.edges.at(a).front().tgt_cond, top()));
    }
  }
}

TEST_CASE("general attention event model") {
  std::vector<Agent> two{Agent{"a"}, Agent{"b"}};

  SECTION("three revealed formulas give eight events, 27 edges per agent") {
    std::vector<Formula> gamma{mk_believes("a", mk_atom("p")),
                               mk_not(mk_believes("a", mk_atom("q"))),
                               mk_not(mk_believes("a", mk_not(mk_atom("q"))))};
    EdgeConditionedEventModel r = general_attention_ecem(Revelation::of_formulas(gamma), two);
    CHECK(r.events.size() == 8);
    for (const auto& a : two) CHECK(r.edges.at(a).size() == 27);
  }

  SECTION("the empty revealed set is the public trivial event") {
    EdgeConditionedEventModel r = general_attention_ecem(Revelation::of_formulas({}), two);
    REQUIRE(r.events.size() == 1);
    CHECK(r.designated == "T");
  }

  SECTION("duplicate revealed formulas are rejected") {
    CHECK_THROWS_AS(
        Revelation::of_formulas({mk_atom("p"), mk_atom("p")}),
        error);
  }

  SECTION("the reviewer discovers the attentional bias") {
    Workspace ws = load_workspace_file(std::string(ADEL_SOURCE_DIR) +
                                       "/fixtures/paper/examples.json");
    PointedModel fig5 = ws.pointed("fig5");
    std::vector<Formula> gamma{mk_believes("a", mk_atom("p")),
                               mk_not(mk_believes("a", mk_atom("q"))),
                               mk_not(mk_believes("a", mk_not(mk_atom("q"))))};
    auto r_model = general_attention_ecem(Revelation::of_formulas(gamma), ws.agents);
    UpdateResult r = update_ecem(fig5, r_model);
    REQUIRE(r.applicable);
    PointedModel updated{*r.model, r.point};
    Formula claim = parse_formula("((A[a]p & ~A[a]q) & (B[b]A[a]p & B[b]~A[a]q))", Lang::GA,
                                  ws.parse_context());
    CHECK(satisfies(updated, claim));
  }
}

TEST_CASE("attention principles") {
  std::vector<Agent> two{Agent{"a"}, Agent{"b"}};
  Formula p = mk_atom("p"), q = mk_atom("q");
  Formula pq = mk_and(p, q);
  std::vector<Formula> universe{p, q, pq};

  AttentionModel m;
  m.base.worlds = {"w"};
  m.base.val["w"] = {};
  for (const auto& a : two) m.att[a]["w"] = {};

  SECTION("conjunctive closure") {
    m.att[Agent{"a"}]["w"] = canonical_sorted({pq, p, q});
    m.att[Agent{"b"}]["w"] = canonical_sorted({pq, p, q});
    CHECK(check_principle(m, ConjunctiveClosure{}, universe).empty());
    m.att[Agent{"a"}]["w"] = {pq};
    auto v = check_principle(m, ConjunctiveClosure{}, universe);
    REQUIRE_FALSE(v.empty());
    CHECK(v.front().agent == Agent{"a"});
  }

  SECTION("commutativity and subformula closure") {
    m.att[Agent{"a"}]["w"] = canonical_sorted({pq, mk_and(q, p), p, q});
    CHECK(check_principle(m, Commutativity{}, universe).empty());
    CHECK(check_principle(m, SubformulaClosure{}, universe).empty());
    m.att[Agent{"a"}]["w"] = canonical_sorted({pq, p, q});
    CHECK_FALSE(check_principle(m, Commutativity{}, universe).empty());
  }

  SECTION("sublanguage closure relative to the universe") {
    m.att[Agent{"a"}]["w"] = canonical_sorted({pq, p, q});
    m.att[Agent{"b"}]["w"] = {};
    CHECK(check_principle(m, SublanguageClosure{}, universe).empty());
    m.att[Agent{"a"}]["w"] = canonical_sorted({pq, p});  // q is missing
    CHECK_FALSE(check_principle(m, SublanguageClosure{}, universe).empty());
  }

  SECTION("ignoring and attending to an agent") {
    Formula bb = mk_believes("b", p);
    m.att[Agent{"a"}]["w"] = {bb};
    CHECK_FALSE(check_principle(m, Ignoring{Agent{"a"}, Agent{"b"}}, {}).empty());
    CHECK(check_principle(m, Ignoring{Agent{"b"}, Agent{"a"}}, {}).empty());
    CHECK(check_principle(m, AttendingTo{Agent{"a"}, Agent{"b"}}, {bb}).empty());
    m.att[Agent{"a"}]["w"] = {};
    CHECK_FALSE(check_principle(m, AttendingTo{Agent{"a"}, Agent{"b"}}, {bb}).empty());
  }

  SECTION("introspection holds when attention is constant along edges") {
    AttentionModel m2;
    m2.base.worlds = {"w", "v"};
    m2.base.rel[Agent{"a"}].insert({"w", "v"});
    m2.att[Agent{"a"}]["w"] = {p};
    m2.att[Agent{"a"}]["v"] = {p};
    m2.att[Agent{"b"}]["w"] = {};
    m2.att[Agent{"b"}]["v"] = {q};  // no b-edges, so no constraint
    CHECK(check_principle(m2, AttentionIntrospection{}, {}).empty());
    m2.att[Agent{"a"}]["v"] = {q};
    CHECK_FALSE(check_principle(m2, AttentionIntrospection{}, {}).empty());
  }
}

TEST_CASE("agents learn exactly the attended part of a revelation") {
  std::vector<Agent> two{Agent{"a"}, Agent{"b"}};
  std::vector<Formula> pool{mk_atom("p"), mk_atom("q"), mk_believes("a", mk_atom("p")),
                            mk_not(mk_believes("b", mk_atom("q")))};
  Rng rng(808);
  std::size_t applicable_runs = 0;
  for (int i = 0; i < 60; ++i) {
    RandomModelParams mp;
    mp.agents = two;
    mp.atoms = {Atom{"p"}, Atom{"q"}};
    mp.attention_universe = pool;
    mp.num_worlds = 4;
    mp.edge_density = 0.45;
    mp.seed = 20000 + i;
    AttentionModel m = random_model(mp);

    std::vector<Formula> gamma{pool[rng.below(pool.size())]};
    if (rng.chance(0.5)) gamma.push_back(pool[rng.below(pool.size())]);
    Revelation rev = Revelation::of_formulas(canonical_sorted(std::move(gamma)));
    EdgeConditionedEventModel r = general_attention_ecem(rev, two);

    PointedModel pm{m, "w0"};
    if (!applicable(EvalModel(pm.model), "w0", r)) continue;
    ++applicable_runs;
    UpdateResult res = update_ecem(pm, r);
    const auto& updated = std::get<AttentionModel>(*res.model);

    for (const auto& agent : two) {
      // the subset the agent attends to at the point determines the only
      // target event reachable from it, and each successor's source world
      // satisfied that event's precondition before the update
      std::vector<Formula> attended;
      for (const auto& f : rev.formulas)
        if (contains(m.attention(agent, "w0"), f)) attended.push_back(f);
      std::string want_event = print_formula(mk_conjunction(attended));
      std::string suffix = "," + want_event + ")";
      for (const auto& [u, v] : updated.base.edges(agent)) {
        if (u != res.point) continue;
        REQUIRE(v.size() > suffix.size());
        CHECK(v.compare(v.size() - suffix.size(), suffix.size(), suffix) == 0);
        std::string source = v.substr(1, v.size() - suffix.size() - 1);
        for (const auto& f : attended) CHECK(satisfies(EvalModel(m), source, f));
      }
    }
  }
  CHECK(applicable_runs > 5);
}

TEST_CASE("revelation updates preserve introspection and never touch attention") {
  std::vector<Agent> two{Agent{"a"}, Agent{"b"}};
  std::vector<Formula> pool{mk_atom("p"), mk_believes("a", mk_atom("p")),
                            mk_not(mk_believes("b", mk_atom("q"))), mk_atom("q")};
  Rng rng(404);
  for (int i = 0; i < 30; ++i) {
    RandomModelParams mp;
    mp.agents = two;
    mp.atoms = {Atom{"p"}, Atom{"q"}};
    mp.attention_universe = pool;
    mp.num_worlds = 4;
    mp.edge_density = 0.4;
    mp.seed = 9000 + i;
    AttentionModel m = random_model(mp);
    // enforce introspection: per agent, share one attention set across each
    // weakly connected component of that agent's relation
    for (const auto& a : two) {
      std::map<std::string, std::string> root;
      for (const auto& w : m.base.worlds) root[w] = w;
      std::function<std::string(std::string)> find = [&](std::string x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
      };
      for (const auto& [u, v] : m.base.edges(a)) root[find(u)] = find(v);
      for (const auto& w : m.base.worlds) m.att[a][w] = m.att[a][find(w)];
    }
    REQUIRE(check_principle(m, AttentionIntrospection{}, {}).empty());

    std::vector<Formula> gamma;
    gamma.push_back(pool[rng.below(pool.size())]);
    if (rng.chance(0.5)) gamma.push_back(pool[rng.below(pool.size())]);
    Revelation rev = Revelation::of_formulas(canonical_sorted(std::move(gamma)));
    EdgeConditionedEventModel r = general_attention_ecem(rev, two);
    AttentionModel updated = product_ecem(m, r);
    CHECK(check_principle(updated, AttentionIntrospection{}, {}).empty());
  }
}
