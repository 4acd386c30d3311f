// Copyright 2026 The CNL Engine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cnl/mephisto.h"

#include <algorithm>
#include <map>

#include "cnl/errors.h"

namespace cnl {

namespace {

const std::set<std::string, std::less<>>& locational_prepositions() {
  static const std::set<std::string, std::less<>> preps = {
      "in",      "on",     "at",     "near",   "under",   "over",   "inside", "outside",
      "behind",  "beside", "across", "off",    "through", "between", "by"};
  return preps;
}

bool motion_goal(std::string_view p) {
  return p == "to" || p == "into" || p == "towards" || p == "onto";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t end = s.find(sep, start);
    if (end == std::string::npos) end = s.size();
    if (end > start) out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

Term feature_term(const std::string& f) {
  if (f.find('(') != std::string::npos) return read_term(f);
  return Term::atom(f);
}

Term feature_list(const std::vector<std::string>& feats) {
  std::vector<Term> items;
  for (const auto& f : feats) items.push_back(feature_term(f));
  return Term::list(std::move(items));
}

Term at_term(const std::string& skolem, const std::string& t, const std::string& s) {
  return Term::at(Term::symbol(skolem), Term::symbol(t), Term::symbol(s));
}

Term conjoin(const std::vector<Term>& items) {
  if (items.size() == 1) return items.front();
  return Term::conjunction(items);
}

// Event core without its trailing feature list, as used inside role
// predicates: stands(@(skc2,t_4,s_2)).
Term core_of(const Term& event) {
  Term core = event;
  if (!core.args.empty() && is_feature_list(core.args.back())) core.args.pop_back();
  return core;
}

void push_unique(std::vector<Term>* v, const Term& t) {
  if (std::find(v->begin(), v->end(), t) == v->end()) v->push_back(t);
}

struct Parts {
  std::vector<Term> typings;
  std::vector<Term> annotations;
  std::vector<Term> body;
  std::vector<Term> constraints;
  std::vector<std::string> universals;
  bool negated = false;
  bool always = false;
};

struct Mention {
  std::string skolem;
  std::string space;
  std::vector<Term> terms;
};

class Translator {
 public:
  Translator(const DeepGraph& g, SymbolTable* symbols, const TranslationOptions& options)
      : g_(g), sym_(symbols), opt_(options) {
    query_ = g.kind == SentenceKind::kInterrogative;
  }

  Translation run() {
    out_.kind = g_.kind;
    out_.focus = g_.focus;
    const GraphNode& root = g_.node(g_.root);
    if (root.kind == GraphNodeKind::kDirective) {
      directive(root);
    } else if (root.kind == GraphNodeKind::kConditional) {
      conditional();
    } else {
      std::string t = sym_->next_time();
      out_.time_symbol = t;
      Parts p = clause(g_.root, t, true);
      std::vector<Term> form = p.annotations;
      form.insert(form.end(), p.constraints.begin(), p.constraints.end());
      for (auto& q : quantified(p, t)) form.push_back(std::move(q));
      for (const auto& c : form) push_unique(&out_.form, c);
    }
    if (query_) {
      std::set<std::string> symbols;
      for (const auto& c : out_.form) collect_symbols(c, &symbols);
      for (const auto& s : symbols)
        if (symbol_class(s) != SymbolClass::kSkolem) out_.variables.insert(s);
    }
    return out_;
  }

 private:
  void directive(const GraphNode& root) {
    const GraphNode& report = g_.node(*g_.target(root.id, "obj"));
    const GraphNode& track = g_.node(*g_.target(root.id, "track"));
    out_.form.push_back(Term::compound(
        "situation_report",
        {Term::atom(report.feats.get_or("report_class", "track")), Term::atom(track.lemma)}));
  }

  void conditional() {
    std::string t = sym_->next_time();
    out_.time_symbol = t;
    conditional_ = true;
    Parts a = clause(*g_.target(g_.root, "antecedent"), t, false);
    Parts b = clause(*g_.target(g_.root, "consequent"), t, true);
    std::vector<Term> form;
    for (const Parts* p : {&a, &b}) {
      form.insert(form.end(), p->annotations.begin(), p->annotations.end());
      form.insert(form.end(), p->constraints.begin(), p->constraints.end());
    }
    auto side = [&](Parts& p) {
      if (p.universals.empty() && !p.always) {
        form.insert(form.end(), p.typings.begin(), p.typings.end());
        return negated_body(p);
      }
      return quantified(p, t).front();
    };
    Term lhs = side(a);
    Term rhs = side(b);
    form.push_back(Term::implication(lhs, rhs));
    for (const auto& c : form) push_unique(&out_.form, c);
  }

  static Term negated_body(const Parts& p) {
    Term body = conjoin(p.body);
    return p.negated ? Term::negation(body) : body;
  }

  std::vector<Term> quantified(const Parts& p, const std::string& t) {
    if (p.universals.empty() && !p.always) {
      std::vector<Term> out = p.typings;
      if (p.negated) {
        out.push_back(negated_body(p));
      } else {
        out.insert(out.end(), p.body.begin(), p.body.end());
      }
      return out;
    }
    std::vector<Term> vars;
    for (const auto& u : p.universals) vars.push_back(Term::symbol(u));
    if (p.always) vars.push_back(Term::symbol(t));
    Term body = negated_body(p);
    Term quantified = p.typings.empty() ? body : Term::implication(conjoin(p.typings), body);
    return {Term::compound("all", {Term::list(std::move(vars)), quantified})};
  }

  // Tense tag carried by the event feature list.
  static std::string tense_tag(const GraphNode& c) {
    std::string tense = c.feats.get_or("tense", "present");
    if (tense == "past") return "past";
    if (tense == "future") return "future";
    return c.feats.has("frame", "copula") ? "present" : "general_habitual";
  }

  std::vector<std::string> event_tags(const GraphNode& c) {
    std::vector<std::string> tags{tense_tag(c)};
    std::string modal = c.feats.get_or("modal", "");
    if (!modal.empty() && modal != "will") tags.push_back(modal);
    if (auto a = c.feats.get("aktionsart")) tags.push_back(*a);
    return tags;
  }

  static std::string role_of(std::string_view label) {
    if (label == "subj") return "subj";
    if (label == "obj" || label == "iobj" || label == "pred") return "obj";
    return "oblique";
  }

  std::vector<Term> arg(int cid, std::string_view label, const std::string& t, Parts* p) {
    auto tgt = g_.target(cid, label);
    if (!tgt) return {};
    return entity(*tgt, t, p, "", role_of(label));
  }

  Parts clause(int cid, const std::string& t, bool record) {
    const GraphNode& c = g_.node(cid);
    Parts p;
    p.negated = c.feats.has("negated");
    p.always = c.feats.has("always");
    std::vector<Term> subj = arg(cid, "subj", t, &p);
    std::vector<Term> cores;
    bool copula = c.feats.has("frame", "copula");
    if (copula) {
      copula_body(c, t, subj, &p);
      for (const auto& b : p.body) cores.push_back(core_of(b));
    } else {
      std::string functor;
      std::vector<std::vector<Term>> extra;
      bool predicate_query = c.lemma == "do" && g_.focus && g_.focus->slot == QuerySlot::kPredicate;
      std::vector<Term> obj;
      std::vector<Term> iobj;
      if (auto f = c.feats.get("vp_functor")) {
        functor = *f;
        extra.push_back(vp_args(c, t, &p));
      } else {
        functor = verb_form(c.lemma, VerbForm::kThirdSingular);
        if (!predicate_query) {
          obj = arg(cid, "obj", t, &p);
          iobj = arg(cid, "iobj", t, &p);
        }
      }
      std::optional<Term> comp;
      if (auto cc = g_.target(cid, "comp")) {
        std::string sub_t = sym_->next_time();
        Parts sp = clause(*cc, sub_t, false);
        std::vector<Term> sub = sp.annotations;
        sub.insert(sub.end(), sp.constraints.begin(), sp.constraints.end());
        for (auto& q : quantified(sp, sub_t)) sub.push_back(std::move(q));
        std::vector<Term> dedup;
        for (const auto& x : sub) push_unique(&dedup, x);
        comp = Term::list(std::move(dedup));
      }
      Term tags = feature_list(event_tags(c));
      std::vector<std::optional<Term>> objs{std::nullopt};
      if (!obj.empty()) objs.assign(obj.begin(), obj.end());
      std::vector<std::optional<Term>> iobjs{std::nullopt};
      if (!iobj.empty()) iobjs.assign(iobj.begin(), iobj.end());
      if (subj.empty() && !predicate_query)
        throw ContractViolation("translate: clause without subject");
      for (const auto& s : subj) {
        for (const auto& o : objs) {
          for (const auto& i : iobjs) {
            std::vector<Term> args{s};
            if (o) args.push_back(*o);
            if (i) args.push_back(*i);
            for (const auto& x : extra) args.insert(args.end(), x.begin(), x.end());
            if (comp) args.push_back(*comp);
            Term core = Term::compound(functor, args);
            args.push_back(tags);
            Term event = Term::compound(functor, args);
            p.body.push_back(event);
            cores.push_back(core);
            if (record && !out_.event) {
              EventRecord e;
              e.functor = functor;
              e.subject = s.args[0].name;
              e.args.assign(args.begin() + 1, args.end() - 1);
              out_.event = e;
            }
          }
        }
      }
    }
    adjuncts(c, t, cores, &p);
    if (g_.kind == SentenceKind::kInterrogative && record && g_.focus) {
      if (g_.focus->slot == QuerySlot::kTemporal) out_.focus_variable = t;
      if (g_.focus->slot == QuerySlot::kLocational && !copula && c.feats.has("wh", "where")) {
        std::string x = sym_->next_skolem();
        Term loc = at_term(x, t, sym_->next_space());
        for (const auto& core : cores)
          p.body.push_back(Term::compound("location", {Term::list({core}), loc}));
        out_.variables.insert(x);
        out_.focus_variable = x;
      }
    }
    tense_constraint(c, t, &p);
    return p;
  }

  std::vector<Term> vp_args(const GraphNode& c, const std::string& t, Parts* p) {
    std::vector<Term> out;
    for (const auto& item : split(c.feats.get_or("vp_args", ""), '|')) {
      auto parts = split(item, '=');
      if (parts.size() < 2) continue;
      Term at = at_term(parts[0], t, sym_->next_space());
      std::vector<std::string> feats = parts.size() > 2 ? split(parts[2], ',') : std::vector<std::string>{};
      p->typings.push_back(Term::compound(parts[1], {at, feature_list(feats)}));
      out.push_back(at);
    }
    return out;
  }

  void copula_body(const GraphNode& c, const std::string& t, const std::vector<Term>& subj,
                   Parts* p) {
    Term tags = feature_list({"predicative", tense_tag(c)});
    for (const auto& e : g_.edges_from(c.id)) {
      if (e.label == "pred") {
        const GraphNode& n = g_.node(e.to);
        if (n.kind == GraphNodeKind::kModifier) {
          for (const auto& s : subj) p->body.push_back(Term::compound(n.lemma, {s, tags}));
        } else {
          auto objs = entity(e.to, t, p, "", "obj");
          for (const auto& s : subj)
            for (const auto& o : objs) p->body.push_back(Term::identical(s, o));
        }
      } else if (e.label.starts_with("pred:")) {
        std::string prep = e.label.substr(5);
        auto objs = entity(e.to, t, p, prep, "oblique");
        bool animate = g_.node(e.to).feats.has("animacy", "animate");
        std::string role = thematic_role(prep, false, animate, false);
        for (const auto& s : subj)
          for (const auto& o : objs) p->body.push_back(Term::compound(role, {s, o, tags}));
      }
    }
    if (p->body.empty() && g_.focus && g_.focus->slot == QuerySlot::kLocational) {
      std::string x = sym_->next_skolem();
      Term loc = at_term(x, t, sym_->next_space());
      for (const auto& s : subj) p->body.push_back(Term::compound("location", {s, loc, tags}));
      out_.variables.insert(x);
      out_.focus_variable = x;
    }
  }

  void adjuncts(const GraphNode& c, const std::string& t, const std::vector<Term>& cores,
                Parts* p) {
    bool motion = c.feats.has("semantic_type", "motion");
    for (const auto& e : g_.edges_from(c.id)) {
      if (e.label.starts_with("adjunct:")) {
        std::string prep = e.label.substr(8);
        auto objs = entity(e.to, t, p, prep, "oblique");
        bool animate = g_.node(e.to).feats.has("animacy", "animate");
        std::string role = thematic_role(prep, motion, animate, true);
        for (const auto& core : cores)
          for (const auto& o : objs)
            p->body.push_back(Term::compound(role, {Term::list({core}), o}));
      } else if (e.label == "dir") {
        for (const auto& core : cores)
          p->body.push_back(Term::compound(
              "direction", {Term::list({core}), Term::atom(g_.node(e.to).lemma)}));
      } else if (e.label == "freq") {
        int n = g_.node(e.to).lemma == "once" ? 1 : 2;
        for (const auto& core : cores)
          p->body.push_back(Term::compound("card", {Term::list({core}), Term::integer(n)}));
      } else if (e.label == "time") {
        const GraphNode& tn = g_.node(e.to);
        if (!tn.time || tn.time->kind == TimeRef::Kind::kSymbolic) continue;
        TemporalRelation rel = tn.time->kind == TimeRef::Kind::kConstraint
                                   ? tn.time->relation
                                   : TemporalRelation::kDuring;
        push_unique(&p->constraints, temporal_constraint(rel, t, tn.time->interval));
      }
    }
  }

  void tense_constraint(const GraphNode& c, const std::string& t, Parts* p) {
    bool before = false;
    bool after = false;
    for (int tn : g_.targets(c.id, "time")) {
      const auto& time = g_.node(tn).time;
      if (!time || time->kind != TimeRef::Kind::kConstraint) continue;
      before |= time->relation == TemporalRelation::kBefore;
      after |= time->relation == TemporalRelation::kAfter;
    }
    std::string tense = c.feats.get_or("tense", "present");
    if (tense == "past" && !before)
      push_unique(&p->constraints, temporal_constraint(TemporalRelation::kBefore, t, opt_.utterance));
    if (tense == "future" && !after)
      push_unique(&p->constraints, temporal_constraint(TemporalRelation::kAfter, t, opt_.utterance));
  }

  static bool universal(const GraphNode& n) {
    if (!n.feats.has("class", "common")) return false;
    std::string d = n.feats.get_or("definiteness", "");
    if (d == "universal" || d == "negative") return true;
    return d == "bare" && !n.feats.has("quantity");
  }

  std::vector<std::string> typing_features(const GraphNode& n, const std::string& prep) const {
    std::vector<std::string> f;
    std::string animacy = n.feats.get_or("animacy", "");
    if (animacy == "animate" || animacy == "inanimate") f.push_back(animacy);
    std::string gender = n.feats.get_or("gender", "");
    if (gender == "female" || gender == "male") f.push_back(gender);
    std::string cls = n.feats.get_or("class", "");
    std::string d = n.feats.get_or("definiteness", "");
    if (cls == "proper") {
      f.push_back("definite");
    } else if (cls == "pronoun") {
      f.push_back("indefinite");
    } else if (cls == "common" && !universal(n)) {
      if (d == "bare") {
        f.push_back("indefinite");
      } else if (d == "possessive") {
        f.push_back("definite");
      } else if (!d.empty()) {
        f.push_back(d);
      }
    }
    f.push_back(n.feats.get_or("number", "singular"));
    if (cls == "proper") {
      f.push_back("proper_noun");
    } else if (cls == "pronoun") {
      f.push_back("pronoun");
    } else {
      f.push_back("common_noun");
    }
    if (!prep.empty()) f.push_back("prep(" + prep + ")");
    return f;
  }

  void annotate(const std::vector<std::string>& feats, const Term& at, Parts* p) {
    for (const auto& f : feats)
      if (f == "animate" || f == "female" || f == "male")
        p->annotations.push_back(Term::compound(f, {at}));
  }

  std::vector<Term> entity(int nid, const std::string& t, Parts* p, const std::string& prep,
                           const std::string& role) {
    const GraphNode& n = g_.node(nid);
    if (n.feats.has("class", "conj")) {
      std::vector<Term> out;
      for (int m : g_.targets(nid, "member")) {
        auto part = entity(m, t, p, prep, role);
        out.insert(out.end(), part.begin(), part.end());
      }
      for (const auto& e : g_.edges_from(nid, "postmod:")) {
        std::string pp = e.label.substr(8);
        auto objs = entity(e.to, t, p, pp, "oblique");
        std::string r = thematic_role(pp, false, g_.node(e.to).feats.has("animacy", "animate"), false);
        for (const auto& x : out)
          for (const auto& o : objs) p->typings.push_back(Term::compound(r, {x, o}));
      }
      return out;
    }
    if (auto it = mentions_.find(nid); it != mentions_.end()) return it->second.terms;
    if (auto b = n.feats.get("bound_node")) {
      int target = std::stoi(*b);
      auto terms = mentions_.count(target) ? mentions_[target].terms
                                           : entity(target, t, p, "", role);
      mentions_[nid] = Mention{"", "", terms};
      return terms;
    }
    std::string cls = n.feats.get_or("class", "");
    std::string kind = n.feats.get_or("pron_kind", "");
    bool referent = n.feats.has("referent");
    bool deictic = n.feats.get_or("person", "3") != "3";
    if (cls == "pronoun" && kind != "indefinite" && !deictic && !referent)
      throw ContractViolation("translate: unresolved anaphor '" + n.lemma + "'");
    bool is_universal = universal(n);
    if (n.feats.has("definiteness", "negative")) p->negated = !p->negated;
    Mention m;
    if (referent) {
      m.skolem = *n.feats.get("referent");
    } else if (is_universal && conditional_ && universal_by_lemma_.count(n.lemma)) {
      m = universal_by_lemma_[n.lemma];
    } else {
      m.skolem = sym_->next_skolem();
    }
    if (m.space.empty()) m.space = sym_->next_space();
    Term at = at_term(m.skolem, t, m.space);
    m.terms = {at};
    mentions_[nid] = m;
    if (is_universal) {
      if (std::find(p->universals.begin(), p->universals.end(), m.skolem) == p->universals.end())
        p->universals.push_back(m.skolem);
      if (conditional_) universal_by_lemma_.emplace(n.lemma, Mention{m.skolem, m.space, {}});
    }
    bool variable = query_ && !referent &&
                    (cls == "wh" || cls == "gap" || cls == "pronoun" || cls == "common" ||
                     cls == "proper");
    std::string predicate;
    std::vector<std::string> feats;
    if (cls == "pronoun" && referent) {
      predicate = n.feats.get_or("referent_pred", "");
      feats = split(n.feats.get_or("referent_feats", ""), ',');
      if (!prep.empty()) feats.push_back("prep(" + prep + ")");
    } else if (cls == "pronoun") {
      predicate = n.feats.get_or("type", deictic ? "person" : "thing");
      feats = typing_features(n, prep);
    } else if (cls == "wh" || cls == "gap") {
      if (n.lemma != "what" && n.lemma != "who" && n.lemma != "which") {
        predicate = n.lemma;
        feats = typing_features(n, prep);
        feats.erase(std::remove(feats.begin(), feats.end(), "common_noun"), feats.end());
      }
      if (n.feats.has("animacy", "animate")) p->annotations.push_back(Term::compound("animate", {at}));
    } else {
      predicate = n.lemma;
      feats = typing_features(n, prep);
    }
    if (!predicate.empty()) {
      p->typings.push_back(Term::compound(predicate, {at, feature_list(feats)}));
      if (!is_universal) annotate(feats, at, p);
    }
    for (int mod : g_.targets(nid, "mod"))
      p->typings.push_back(
          Term::compound(g_.node(mod).lemma, {at, feature_list({"attributive"})}));
    if (auto v = n.feats.get("quantity_value")) {
      p->typings.push_back(Term::compound("card", {at, Term::integer(std::stoll(*v))}));
    } else if (auto q = n.feats.get("quantity")) {
      p->typings.push_back(Term::compound("quantity", {at, Term::atom(*q)}));
    }
    for (int owner : g_.targets(nid, "owner"))
      for (const auto& o : entity(owner, t, p, "", "oblique"))
        p->typings.push_back(Term::compound("possessor", {at, o}));
    for (const auto& e : g_.edges_from(nid, "postmod:")) {
      std::string pp = e.label.substr(8);
      auto objs = entity(e.to, t, p, pp, "oblique");
      std::string r = thematic_role(pp, false, g_.node(e.to).feats.has("animacy", "animate"), false);
      for (const auto& o : objs) p->typings.push_back(Term::compound(r, {at, o}));
    }
    EntityRecord rec;
    rec.node = nid;
    rec.skolem = m.skolem;
    rec.predicate = predicate;
    for (const auto& f : feats)
      if (!f.starts_with("prep(")) rec.features.push_back(f);
    rec.role = role;
    rec.universal = is_universal;
    rec.variable = variable;
    rec.surface = n.feats.get_or("referent_surface", n.feats.get_or("surface", n.lemma));
    out_.entities.push_back(rec);
    if (variable) out_.variables.insert(m.skolem);
    if (query_ && g_.focus && out_.focus_variable.empty()) {
      QuerySlot slot = g_.focus->slot;
      bool focus = false;
      if (slot == QuerySlot::kSubject && role == "subj" && cls == "wh") focus = true;
      if ((slot == QuerySlot::kObject || slot == QuerySlot::kLocational) && cls == "gap") focus = true;
      if (slot == QuerySlot::kYesNo && cls == "pronoun" && kind == "indefinite") focus = true;
      if (focus) out_.focus_variable = m.skolem;
    }
    return m.terms;
  }

  const DeepGraph& g_;
  SymbolTable* sym_;
  TranslationOptions opt_;
  bool query_ = false;
  bool conditional_ = false;
  Translation out_;
  std::map<int, Mention> mentions_;
  std::map<std::string, Mention> universal_by_lemma_;
};

}  // namespace

std::string thematic_role(std::string_view prep, bool motion_verb, bool animate_object,
                          bool event_level) {
  std::string p(prep);
  if (locational_prepositions().count(p)) return "location_" + p;
  if (p == "from") return motion_verb && event_level ? "source" : "origin";
  if (motion_goal(p) && motion_verb && event_level) return "goal";
  if (p == "with") return animate_object ? "accompaniment" : "instrument";
  if (p == "for") return animate_object ? "beneficiary" : "purpose";
  if (p == "about") return "topic";
  return "relation_" + p;
}

std::optional<std::string> preposition_for_role(std::string_view functor) {
  std::string f(functor);
  if (f.starts_with("location_")) return f.substr(9);
  if (f.starts_with("relation_")) return f.substr(9);
  if (f == "source" || f == "origin") return "from";
  if (f == "goal") return "to";
  if (f == "accompaniment" || f == "instrument") return "with";
  if (f == "beneficiary" || f == "purpose") return "for";
  if (f == "topic") return "about";
  return std::nullopt;
}

Translation translate(const DeepGraph& g, SymbolTable* symbols,
                      const TranslationOptions& options) {
  return Translator(g, symbols, options).run();
}

std::string_view to_string(SpeechAct a) {
  switch (a) {
    case SpeechAct::kAssert: return "assert";
    case SpeechAct::kQuery: return "query";
    case SpeechAct::kDirect: return "direct";
  }
  return "?";
}

Envelope envelope(const MephistoForm& form, const std::string& teller, SpeechAct act,
                  const Interval& utterance, SymbolTable* symbols) {
  if (teller.empty()) throw ContractViolation("envelope: teller name is empty");
  Envelope e;
  e.teller = teller;
  e.utterance = utterance;
  e.act = act;
  e.payload = form;
  Term who = Term::at(Term::symbol(symbols->next_skolem()), to_term(utterance),
                      Term::symbol(symbols->next_space()));
  Term tells = Term::compound(
      "tells", {Term::compound("teller", {who, Term::atom(teller)}),
                Term::compound(std::string(to_string(act)), {Term::list(form)})});
  e.term = Term::compound("perceive", {Term::atom("cnl_sensor"), tells});
  return e;
}

std::string print_envelope(const Envelope& e) { return print_term(e.term); }

}  // namespace cnl
