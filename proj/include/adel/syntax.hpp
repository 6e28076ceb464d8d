#pragma once

// Concrete ASCII syntax: a recursive-descent parser and the canonical printer.
//
//   T                      truth
//   p                      atom ([a-z][a-z0-9_]*)
//   ~f                     negation
//   (f & f)  (f | f)  (f -> f)  (f <-> f)
//   B[a]f                  belief
//   A[a]f                  attends (general attention)
//   Att[a]p                attention atom (propositional attention)
//   [@name]f  [@name:ev]f  dynamic modality over a registered event model
//
// Disjunction, implication and biconditional are parser sugar for the ~/&
// core; the printer emits core connectives only. Attention atoms print as
// Att[a]p and the attends modality as A[a]f, so the two attention readings
// stay visually distinct.

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "adel/ast.hpp"
#include "adel/lang.hpp"

namespace adel {

struct parse_error : error {
  std::size_t position;
  parse_error(const std::string& msg, std::size_t pos)
      : error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

using EventModelVariant = std::variant<SemPtr, EcemPtr, GauPtr>;

// Declared identifiers plus the named event models that dynamic modalities
// may reference.
struct ParseContext {
  std::set<Agent> agents;
  std::set<Atom> atoms;
  std::map<std::string, EventModelVariant> events;

  bool has_agent(const std::string& id) const { return agents.count(Agent{id}) > 0; }
  bool has_atom(const std::string& id) const { return atoms.count(Atom{id}) > 0; }
};

namespace detail {

class Parser {
 public:
  Parser(const std::string& text, Lang tag, const ParseContext& ctx)
      : text_(text), tag_(tag), ctx_(ctx) {}

  Formula run() {
    Formula f = formula();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  const std::string& text_;
  Lang tag_;
  const ParseContext& ctx_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void expect(char c) {
    if (!peek_is(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool starts_with(const char* s) const {
    return text_.compare(pos_, std::string::traits_type::length(s), s) == 0;
  }

  std::string ident() {
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::islower(static_cast<unsigned char>(text_[pos_])))
      fail("expected identifier");
    while (pos_ < text_.size() &&
           (std::islower(static_cast<unsigned char>(text_[pos_])) ||
            std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Agent agent_in_brackets() {
    expect('[');
    std::size_t at = pos_;
    std::string id = ident();
    if (!ctx_.has_agent(id)) throw parse_error("undeclared agent '" + id + "'", at);
    expect(']');
    return Agent{id};
  }

  Formula formula() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == 'T') {
      ++pos_;
      return top();
    }
    if (c == '~') {
      ++pos_;
      return mk_not(formula());
    }
    if (c == '(') return binary();
    if (starts_with("Att[")) return att_atom();
    if (starts_with("B[")) {
      ++pos_;
      Agent a = agent_in_brackets();
      return mk_believes(a, formula());
    }
    if (starts_with("A[")) {
      std::size_t at = pos_;
      ++pos_;
      Agent a = agent_in_brackets();
      if (!lang_allows_attends(tag_))
        throw parse_error("attends modality not allowed in " + to_string(tag_), at);
      return mk_attends(a, formula());
    }
    if (starts_with("[@")) return dynamic_modality();
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t at = pos_;
      std::string id = ident();
      if (!ctx_.has_atom(id)) throw parse_error("undeclared atom '" + id + "'", at);
      return mk_atom(id);
    }
    fail("unexpected character");
  }

  Formula binary() {
    expect('(');
    Formula l = formula();
    skip_ws();
    std::string op;
    if (peek_is('&')) {
      op = "&";
      ++pos_;
    } else if (peek_is('|')) {
      op = "|";
      ++pos_;
    } else if (starts_with("->")) {
      op = "->";
      pos_ += 2;
    } else if (starts_with("<->")) {
      op = "<->";
      pos_ += 3;
    } else {
      fail("expected binary connective");
    }
    Formula r = formula();
    skip_ws();
    expect(')');
    if (op == "&") return mk_and(l, r);
    if (op == "|") return mk_or(l, r);
    if (op == "->") return mk_implies(l, r);
    return mk_iff(l, r);
  }

  Formula att_atom() {
    std::size_t at = pos_;
    pos_ += 3;  // Att
    Agent a = agent_in_brackets();
    if (!lang_allows_att_atom(tag_))
      throw parse_error("attention atom not allowed in " + to_string(tag_), at);
    std::size_t atom_at = pos_;
    std::string id = ident();
    if (!ctx_.has_atom(id)) throw parse_error("undeclared atom '" + id + "'", atom_at);
    return mk_att_atom(a, Atom{id});
  }

  // [@name]f or [@name:event]f; the event id is read with bracket balancing
  // so event names containing B[a]-style conditions survive.
  Formula dynamic_modality() {
    std::size_t at = pos_;
    pos_ += 2;  // [@
    std::size_t name_start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ':' && text_[pos_] != ']') ++pos_;
    if (pos_ >= text_.size()) fail("unterminated event-model reference");
    std::string name = text_.substr(name_start, pos_ - name_start);
    std::optional<std::string> event;
    if (text_[pos_] == ':') {
      ++pos_;
      std::size_t ev_start = pos_;
      int depth = 0;
      while (pos_ < text_.size() && !(depth == 0 && text_[pos_] == ']')) {
        if (text_[pos_] == '[') ++depth;
        if (text_[pos_] == ']') --depth;
        ++pos_;
      }
      if (pos_ >= text_.size()) fail("unterminated event-model reference");
      event = text_.substr(ev_start, pos_ - ev_start);
    }
    expect(']');
    auto it = ctx_.events.find(name);
    if (it == ctx_.events.end())
      throw parse_error("unknown event model '" + name + "'", at);
    std::string label = name + (event ? ":" + *event : "");
    Formula body = formula();
    return std::visit(
        [&](const auto& model) -> Formula {
          using M = std::decay_t<decltype(model)>;
          if constexpr (std::is_same_v<M, SemPtr>) {
            if (!lang_allows_sem(tag_))
              throw parse_error("standard event model modality not allowed in " + to_string(tag_),
                                at);
            SemPtr m = model;
            if (event) {
              if (std::find(m->events.begin(), m->events.end(), *event) == m->events.end())
                throw parse_error("unknown event '" + *event + "' in model '" + name + "'", at);
              auto copy = std::make_shared<StandardEventModel>(*m);
              copy->designated = {*event};
              m = copy;
            }
            return mk_dyn_sem(m, body, label);
          } else if constexpr (std::is_same_v<M, EcemPtr>) {
            if (!lang_allows_ecem(tag_))
              throw parse_error(
                  "edge-conditioned event model modality not allowed in " + to_string(tag_), at);
            EcemPtr m = model;
            if (event) {
              if (std::find(m->events.begin(), m->events.end(), *event) == m->events.end())
                throw parse_error("unknown event '" + *event + "' in model '" + name + "'", at);
              auto copy = std::make_shared<EdgeConditionedEventModel>(*m);
              copy->designated = *event;
              m = copy;
            }
            return mk_dyn_ecem(m, body, label);
          } else {
            if (!lang_allows_gau(tag_))
              throw parse_error("arrow update modality not allowed in " + to_string(tag_), at);
            GauPtr m = model;
            if (event) {
              if (std::find(m->outcomes.begin(), m->outcomes.end(), *event) == m->outcomes.end())
                throw parse_error("unknown outcome '" + *event + "' in model '" + name + "'", at);
              auto copy = std::make_shared<GeneralizedArrowUpdate>(*m);
              copy->designated = *event;
              m = copy;
            }
            return mk_dyn_gau(m, body, label);
          }
        },
        it->second);
  }
};

}  // namespace detail

inline Formula parse_formula(const std::string& text, Lang tag, const ParseContext& ctx) {
  return detail::Parser(text, tag, ctx).run();
}

inline std::string print_formula(const Formula& f) {
  switch (f->kind) {
    case Connective::top:
      return "T";
    case Connective::atom:
      return f->atom.id;
    case Connective::att_atom:
      return "Att[" + f->agent.id + "]" + f->atom.id;
    case Connective::neg:
      return "~" + print_formula(f->lhs);
    case Connective::conj:
      return "(" + print_formula(f->lhs) + " & " + print_formula(f->rhs) + ")";
    case Connective::believes:
      return "B[" + f->agent.id + "]" + print_formula(f->lhs);
    case Connective::attends:
      return "A[" + f->agent.id + "]" + print_formula(f->lhs);
    case Connective::dyn_sem:
    case Connective::dyn_ecem:
    case Connective::dyn_gau:
      return "[@" + f->label + "]" + print_formula(f->lhs);
  }
  return "?";
}

}  // namespace adel
