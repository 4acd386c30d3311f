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

#include "cnl/kb.h"

#include <algorithm>
#include <charconv>
#include <functional>
#include <memory>
#include <sstream>

#include "cnl/errors.h"

namespace cnl {

namespace {

const std::set<std::string, std::less<>> kTenseTags = {"past", "present", "general_habitual",
                                                       "future"};
const std::set<std::string, std::less<>> kNumberFeatures = {"singular", "plural"};
const std::set<std::string, std::less<>> kCompared = {
    "singular", "plural", "animate", "inanimate", "female",    "male",       "neuter",
    "past",     "present", "future", "general_habitual", "predicative", "attributive",
    "can",      "could",  "must",   "should", "may", "might", "would"};

constexpr size_t kMaxResults = 1000;

bool is_at(const Term& t) { return t.kind == TermKind::kAt; }

bool has_feature(const Term& list, std::string_view f) {
  return list.kind == TermKind::kList &&
         std::any_of(list.args.begin(), list.args.end(), [&](const Term& x) { return x.is_atom(f); });
}

bool has_tense(const Term& list) {
  return list.kind == TermKind::kList &&
         std::any_of(list.args.begin(), list.args.end(), [](const Term& x) {
           return x.kind == TermKind::kAtom && kTenseTags.count(x.name);
         });
}

bool is_typing(const Term& c) {
  if (c.kind != TermKind::kCompound || c.args.size() != 2 || !is_at(c.args[0])) return false;
  const Term& f = c.args[1];
  return f.kind == TermKind::kList && is_feature_list(f) && !has_tense(f) &&
         !has_feature(f, "predicative") && !has_feature(f, "attributive");
}

bool is_event(const Term& c) {
  return c.kind == TermKind::kCompound && c.args.size() >= 2 && is_at(c.args[0]) &&
         has_tense(c.args.back()) && !has_feature(c.args.back(), "predicative");
}

bool is_constraint(const Term& c) {
  return (c.is_compound("before") || c.is_compound("after") || c.is_compound("during")) &&
         c.args.size() == 2 && c.args[0].is_symbol();
}

bool is_location(std::string_view functor) {
  return functor == "location" || functor.starts_with("location_");
}

// The @-term a clause is about: its first argument, or the event inside an
// adjunct's bracketed first argument.
const Term* subject_at(const Term& c) {
  if (c.args.empty()) return nullptr;
  const Term& a = c.args[0];
  if (is_at(a)) return &a;
  if (a.kind == TermKind::kList && a.args.size() == 1 && a.args[0].kind == TermKind::kCompound &&
      !a.args[0].args.empty() && is_at(a.args[0].args[0]))
    return &a.args[0].args[0];
  return nullptr;
}

std::string clause_key(const Term& c) {
  switch (c.kind) {
    case TermKind::kCompound: return c.name;
    case TermKind::kNegation: return "~";
    case TermKind::kConjunction: return "&";
    case TermKind::kImplication: return "=>";
    case TermKind::kIdentical: return "identical";
    default: return print_term(c);
  }
}

void flatten(const Term& t, std::vector<Term>* out) {
  if (t.kind == TermKind::kConjunction) {
    for (const auto& a : t.args) flatten(a, out);
  } else {
    out->push_back(t);
  }
}

class Matcher {
 public:
  Matcher(const LexicalDatabase& db, const std::set<std::string>& variables,
          const MatchOptions& options)
      : db_(db), variables_(variables), options_(options) {}

  bool unify(const Term& p, const Term& f, std::map<std::string, Term>* b) const {
    switch (p.kind) {
      case TermKind::kSymbol: {
        if (!variables_.count(p.name)) return p == f;
        auto it = b->find(p.name);
        if (it != b->end()) return it->second == f;
        b->emplace(p.name, f);
        return true;
      }
      case TermKind::kAtom:
      case TermKind::kInteger:
      case TermKind::kNumber:
        return p == f;
      case TermKind::kCompound:
        return unify_compound(p, f, b);
      case TermKind::kList:
        if (f.kind != TermKind::kList) return false;
        if (is_feature_list(p) && is_feature_list(f)) return features_compatible(p, f);
        return unify_args(p.args, f.args, b);
      default:
        return p.kind == f.kind && unify_args(p.args, f.args, b);
    }
  }

  bool typing_matches(std::string_view query, std::string_view fact) const {
    if (query == fact || query == "thing" || query == "entity") return true;
    auto type = type_of(fact);
    return type && db_.taxonomy.is_a(*type, query);
  }

  std::optional<std::string> type_of(std::string_view lemma) const {
    for (Pos pos : {Pos::kCommonNoun, Pos::kProperNoun, Pos::kPronoun})
      if (const LexEntry* e = db_.lexicon.find_lemma(lemma, pos))
        if (auto t = e->features.get("type")) return t;
    if (db_.taxonomy.known(lemma)) return std::string(lemma);
    return std::nullopt;
  }

 private:
  bool unify_args(const std::vector<Term>& ps, const std::vector<Term>& fs,
                  std::map<std::string, Term>* b) const {
    if (ps.size() != fs.size()) return false;
    for (size_t i = 0; i < ps.size(); ++i)
      if (!unify(ps[i], fs[i], b)) return false;
    return true;
  }

  bool unify_compound(const Term& p, const Term& f, std::map<std::string, Term>* b) const {
    if (f.kind != TermKind::kCompound) return false;
    if (is_typing(p) && is_typing(f))
      return typing_matches(p.name, f.name) && unify(p.args[0], f.args[0], b) &&
             features_compatible(p.args[1], f.args[1]);
    if (p.name == "does" && is_event(p) && is_event(f))
      return unify(p.args[0], f.args[0], b) && features_compatible(p.args.back(), f.args.back());
    if (is_location(p.name) && has_feature(p.args.back(), "predicative") &&
        f.args.size() + 1 == p.args.size() && is_at(f.args[0]) && is_location(f.name) &&
        (p.name == "location" || p.name == f.name)) {
      for (size_t i = 0; i < f.args.size(); ++i)
        if (!unify(p.args[i], f.args[i], b)) return false;
      return true;
    }
    if (p.name == "location") {
      if (!is_location(f.name)) return false;
    } else if (p.name != f.name) {
      return false;
    }
    return unify_args(p.args, f.args, b);
  }

  bool features_compatible(const Term& p, const Term& f) const {
    for (const auto& x : p.args) {
      if (x.kind != TermKind::kAtom || !kCompared.count(x.name)) continue;
      if (options_.ignore_number && kNumberFeatures.count(x.name)) continue;
      if (!has_feature(f, x.name)) return false;
    }
    return true;
  }

  const LexicalDatabase& db_;
  const std::set<std::string>& variables_;
  MatchOptions options_;
};

// Clause index over a set of ground facts.
struct FactIndex {
  std::map<std::string, std::vector<const Term*>, std::less<>> by_key;
  std::map<std::string, std::vector<const Term*>, std::less<>> by_label;
  std::map<std::string, std::vector<const Term*>, std::less<>> constraints;
  std::vector<const Term*> typings;
  std::vector<const Term*> events;
  std::vector<const Term*> locations;

  void add(const Term& c) {
    by_key[clause_key(c)].push_back(&c);
    if (const Term* at = subject_at(c); at && at->args[0].is_symbol())
      by_label[at->args[0].name].push_back(&c);
    if (is_constraint(c)) constraints[c.args[0].name].push_back(&c);
    if (is_typing(c)) typings.push_back(&c);
    if (is_event(c)) events.push_back(&c);
    if (c.kind == TermKind::kCompound && is_location(c.name)) locations.push_back(&c);
  }
};

const std::vector<const Term*> kNone;

struct Solution {
  std::map<std::string, Term> bindings;
  std::vector<const Term*> matched;
};

// Backtracking conjunctive matcher. Picks the most constrained clause at
// each step.
class Solver {
 public:
  Solver(const FactIndex& index, const Matcher& matcher, const std::set<std::string>& variables)
      : index_(index), matcher_(matcher), variables_(variables) {}

  void solve(std::vector<const Term*> remaining, Solution current,
             const std::function<bool(const Solution&)>& emit) {
    stop_ = false;
    step(std::move(remaining), std::move(current), emit);
  }

 private:
  const std::vector<const Term*>& candidates(const Term& p, const Solution& s) const {
    if (const Term* at = subject_at(p); at && at->args[0].is_symbol()) {
      const std::string& name = at->args[0].name;
      std::optional<std::string> label;
      if (!variables_.count(name)) {
        label = name;
      } else if (auto it = s.bindings.find(name); it != s.bindings.end() && it->second.is_symbol()) {
        label = it->second.name;
      }
      if (label) {
        auto it = index_.by_label.find(*label);
        return it == index_.by_label.end() ? kNone : it->second;
      }
    }
    if (is_typing(p)) return index_.typings;
    if (p.is_compound("does") && is_event(p)) return index_.events;
    if (p.is_compound("location")) return index_.locations;
    auto it = index_.by_key.find(clause_key(p));
    return it == index_.by_key.end() ? kNone : it->second;
  }

  void step(std::vector<const Term*> remaining, Solution current,
            const std::function<bool(const Solution&)>& emit) {
    if (stop_) return;
    if (remaining.empty()) {
      if (!emit(current)) stop_ = true;
      return;
    }
    size_t best = 0;
    size_t best_size = SIZE_MAX;
    for (size_t i = 0; i < remaining.size(); ++i) {
      size_t n = candidates(*remaining[i], current).size();
      if (n < best_size) best = i, best_size = n;
    }
    const Term* pattern = remaining[best];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    for (const Term* fact : candidates(*pattern, current)) {
      Solution next = current;
      if (!matcher_.unify(*pattern, *fact, &next.bindings)) continue;
      next.matched.push_back(fact);
      step(remaining, std::move(next), emit);
      if (stop_) return;
    }
  }

  const FactIndex& index_;
  const Matcher& matcher_;
  const std::set<std::string>& variables_;
  bool stop_ = false;
};

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool is_plain_decimal(std::string_view s) {
  size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  size_t digits = 0, dots = 0;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++digits;
    } else if (s[i] == '.' && dots == 0 && digits > 0) {
      ++dots;
    } else {
      return false;
    }
  }
  return digits > 0 && s.back() != '.';
}

double parse_decimal(const std::string& text, std::string_view field) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (!is_plain_decimal(text) || ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument(std::string(field) + ": not a decimal number '" + text + "'");
  return v;
}

std::string atomize(std::string s) {
  std::replace(s.begin(), s.end(), ' ', '_');
  return s;
}

Term numeric_term(double v, const std::string& text) {
  if (text.find('.') == std::string::npos) return Term::integer(static_cast<int64_t>(v));
  return Term::number(text);
}

}  // namespace

Timestamp TrackRecord::utc() const {
  return from_epoch_seconds(to_epoch_seconds(time) - temporal_offset_seconds);
}

TrackRecord parse_track_line(std::string_view line) {
  std::vector<std::string> f;
  std::string field;
  std::istringstream in{std::string(line)};
  while (std::getline(in, field, ',')) f.push_back(trim(field));
  if (!line.empty() && line.back() == ',') f.emplace_back();
  if (f.size() != 12)
    throw std::invalid_argument("expected 12 fields, found " + std::to_string(f.size()));
  TrackRecord r;
  r.source = f[0];
  {
    auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(),
                                     r.temporal_offset_seconds);
    if (f[1].empty() || ec != std::errc() || ptr != f[1].data() + f[1].size())
      throw std::invalid_argument("temporal_offset_seconds: not an integer '" + f[1] + "'");
  }
  if (f[2].empty()) throw std::invalid_argument("track_id: empty");
  if (f[2].find_first_of(" \t") != std::string::npos)
    throw std::invalid_argument("track_id: contains whitespace '" + f[2] + "'");
  r.track_id = f[2];
  r.time = parse_iso8601(f[3]);
  r.latitude = parse_decimal(f[4], "latitude");
  r.longitude = parse_decimal(f[5], "longitude");
  r.direction = parse_decimal(f[6], "direction_deg");
  r.speed = parse_decimal(f[7], "speed_knots");
  if (r.latitude < -90 || r.latitude > 90) throw std::invalid_argument("latitude: out of range");
  if (r.longitude < -180 || r.longitude > 180)
    throw std::invalid_argument("longitude: out of range");
  if (r.direction < 0 || r.direction >= 360)
    throw std::invalid_argument("direction_deg: out of range");
  if (r.speed < 0) throw std::invalid_argument("speed_knots: negative");
  if (f[8].empty()) throw std::invalid_argument("class: empty");
  r.track_class = atomize(f[8]);
  r.type = atomize(f[9]);
  r.allegiance = atomize(f[10]);
  r.nationality = atomize(f[11]);
  return r;
}

bool unify_clause(const Term& pattern, const Term& fact, const std::set<std::string>& variables,
                  std::map<std::string, Term>* bindings, const LexicalDatabase& db,
                  const MatchOptions& options) {
  Matcher m(db, variables, options);
  std::map<std::string, Term> b = *bindings;
  if (!m.unify(pattern, fact, &b)) return false;
  *bindings = std::move(b);
  return true;
}

bool constraint_entails(const Term& stored, const Term& queried) {
  if (!is_constraint(stored) || !is_constraint(queried)) return false;
  auto is = interval_from_term(stored.args[1]);
  auto iq = interval_from_term(queried.args[1]);
  if (!is || !iq) return false;
  AllenRelation r = allen_relation(*is, *iq);
  if (queried.name == "before") {
    if (stored.name == "before") return is->start <= iq->start;
    if (stored.name == "during") return r == AllenRelation::kBefore;
    return false;
  }
  if (queried.name == "after") {
    if (stored.name == "after") return is->end >= iq->end;
    if (stored.name == "during") return r == AllenRelation::kAfter;
    return false;
  }
  return stored.name == "during" &&
         (r == AllenRelation::kDuring || r == AllenRelation::kStarts ||
          r == AllenRelation::kFinishes || r == AllenRelation::kEquals);
}

struct KnowledgeBase::Cache {
  std::set<Term> derived;
  std::unique_ptr<FactIndex> index;
};

void KnowledgeBase::add_fact(const Term& clause) {
  if (clause.is_compound("all") || clause.kind == TermKind::kImplication) {
    if (std::find(rules_.begin(), rules_.end(), clause) == rules_.end()) rules_.push_back(clause);
  } else {
    facts_.insert(clause);
  }
  cache_.reset();
}

void KnowledgeBase::assert_form(const Envelope& env) {
  if (env.act != SpeechAct::kAssert) throw ContractViolation("assert_form requires an assertion");
  for (const auto& c : env.payload) add_fact(c);
  payloads_.push_back(env.payload);
  log_.push_back(LogEntry{env.teller, env.utterance, env.act, print_envelope(env)});
}

void KnowledgeBase::log_envelope(const Envelope& env) {
  log_.push_back(LogEntry{env.teller, env.utterance, env.act, print_envelope(env)});
}

const std::set<Term>& KnowledgeBase::derived() const { return cache().derived; }

const KnowledgeBase::Cache& KnowledgeBase::cache() const {
  if (cache_) return *cache_;
  auto c = std::make_shared<Cache>();
  FactIndex base;
  for (const auto& f : facts_) base.add(f);
  for (const auto& rule : rules_) {
    if (!rule.is_compound("all") || rule.args.size() != 2 ||
        rule.args[1].kind != TermKind::kImplication)
      continue;
    std::set<std::string> quantified, vars;
    for (const auto& v : rule.args[0].args)
      if (v.is_symbol()) quantified.insert(v.name);
    collect_symbols(rule, &vars);
    std::erase_if(vars, [&](const std::string& s) {
      return !quantified.count(s) && symbol_class(s) == SymbolClass::kSkolem;
    });
    std::vector<Term> lhs;
    flatten(rule.args[1].args[0], &lhs);
    std::vector<const Term*> patterns;
    for (const auto& p : lhs) patterns.push_back(&p);
    Matcher m(*db_, vars, MatchOptions{.ignore_number = true});
    Solver solver(base, m, vars);
    solver.solve(patterns, {}, [&](const Solution& s) {
      std::vector<Term> body;
      flatten(substitute(rule.args[1].args[1], s.bindings), &body);
      for (const auto& clause : body) {
        std::set<std::string> left;
        collect_symbols(clause, &left);
        bool open = std::any_of(left.begin(), left.end(),
                                [&](const std::string& x) { return quantified.count(x) > 0; });
        if (!open && !facts_.count(clause)) c->derived.insert(clause);
      }
      return c->derived.size() < 100000;
    });
  }
  c->index = std::make_unique<FactIndex>();
  for (const auto& f : facts_) c->index->add(f);
  for (const auto& f : c->derived) c->index->add(f);
  cache_ = c;
  return *cache_;
}

Answer KnowledgeBase::answer(const Translation& query) const {
  const Cache& c = cache();
  const FactIndex& index = *c.index;
  Answer out;
  out.focus_variable = query.focus_variable;
  const std::set<std::string>& vars = query.variables;

  MephistoForm rule_support;
  std::vector<const Term*> patterns;
  std::vector<const Term*> temporal;
  for (const auto& clause : query.form) {
    if (clause.is_compound("all")) {
      auto it = std::find_if(rules_.begin(), rules_.end(), [&](const Term& r) {
        return alpha_equal_terms(r, clause, golden_tolerance());
      });
      if (it == rules_.end()) return out;
      rule_support.push_back(*it);
    } else if (is_constraint(clause) && vars.count(clause.args[0].name)) {
      temporal.push_back(&clause);
    } else {
      patterns.push_back(&clause);
    }
  }

  Matcher m(*db_, vars, {});
  Solver solver(index, m, vars);
  std::set<std::string> seen;
  solver.solve(patterns, {}, [&](const Solution& s) {
    QueryResult r;
    r.bindings = s.bindings;
    std::set<std::string> times;
    for (const Term* q : temporal) {
      auto bound = s.bindings.find(q->args[0].name);
      if (bound == s.bindings.end()) continue;
      const std::string& t = bound->second.name;
      times.insert(t);
      auto stored = index.constraints.find(t);
      if (stored == index.constraints.end()) return true;
      if (std::none_of(stored->second.begin(), stored->second.end(),
                       [&](const Term* f) { return constraint_entails(*f, *q); }))
        return true;
    }
    std::string key;
    if (!query.focus_variable.empty()) {
      auto f = s.bindings.find(query.focus_variable);
      key = f == s.bindings.end() ? "" : print_term(f->second);
    } else {
      std::vector<std::string> parts;
      for (const Term* f : s.matched) parts.push_back(print_term(*f));
      std::sort(parts.begin(), parts.end());
      for (const auto& p : parts) key += p + ",";
    }
    if (!seen.insert(key).second) return true;

    std::set<Term> support;
    std::vector<Term> pending;
    std::set<Term> cores;
    for (const Term* f : s.matched) {
      support.insert(*f);
      if (const Term* at = subject_at(*f)) pending.push_back(*at);
      if (is_event(*f)) {
        if (c.derived.count(*f)) continue;
        times.insert(f->args[0].args[1].name);
        Term core = *f;
        core.args.pop_back();
        cores.insert(core);
      }
      for (const auto& a : f->args)
        if (is_at(a)) pending.push_back(a);
    }
    std::set<Term> visited;
    while (!pending.empty()) {
      Term at = pending.back();
      pending.pop_back();
      if (!visited.insert(at).second) continue;
      auto it = index.by_label.find(at.args[0].name);
      if (it == index.by_label.end()) continue;
      for (const Term* f : it->second) {
        const Term* sat = subject_at(*f);
        if (!sat || *sat != at || is_event(*f)) continue;
        bool adjunct = f->args[0].kind == TermKind::kList;
        bool keep = adjunct ? cores.count(f->args[0].args[0]) > 0
                            : f->kind == TermKind::kCompound &&
                                  !has_feature(f->args.back(), "predicative");
        if (!keep || !support.insert(*f).second) continue;
        for (const auto& a : f->args)
          if (is_at(a)) pending.push_back(a);
      }
    }
    for (const auto& t : times) {
      auto it = index.constraints.find(t);
      if (it == index.constraints.end()) continue;
      for (const Term* f : it->second) {
        support.insert(*f);
        r.temporal.push_back(*f);
      }
    }
    r.support = rule_support;
    r.support.insert(r.support.end(), support.begin(), support.end());
    out.results.push_back(std::move(r));
    return out.results.size() < kMaxResults;
  });
  if (patterns.empty() && temporal.empty() && !rule_support.empty() && out.results.empty())
    out.results.push_back(QueryResult{{}, rule_support, {}});
  return out;
}

void KnowledgeBase::ingest(const TrackRecord& record, SymbolTable* symbols) {
  if (!symbols) throw ContractViolation("ingest requires a symbol table");
  auto [it, fresh] = tracks_.try_emplace(record.track_id);
  if (fresh) it->second = symbols->next_skolem();
  const std::string& k = it->second;
  std::string t = symbols->next_time();
  Term at = Term::at(Term::symbol(k), Term::symbol(t), Term::symbol(symbols->next_space()));
  auto feats = [](std::initializer_list<const char*> names) {
    std::vector<Term> items;
    for (const char* n : names) items.push_back(Term::atom(n));
    return Term::list(std::move(items));
  };
  auto value = [](double v) {
    std::ostringstream s;
    s.precision(10);
    s << v;
    std::string text = s.str();
    return numeric_term(v, text);
  };
  Timestamp utc = record.utc();
  MephistoForm clauses = {
      Term::compound(record.track_class,
                     {at, feats({"inanimate", "indefinite", "singular", "common_noun"})}),
      Term::compound(record.track_id,
                     {at, feats({"inanimate", "definite", "singular", "proper_noun"})}),
      Term::compound("position", {at, value(record.latitude), value(record.longitude)}),
      Term::compound("during", {Term::symbol(t), to_term(Interval::point(utc))}),
      Term::compound("heading", {at, value(record.direction)}),
      Term::compound("speed", {at, value(record.speed)}),
  };
  if (!record.type.empty()) clauses.push_back(Term::compound("track_type", {at, Term::atom(record.type)}));
  if (!record.allegiance.empty())
    clauses.push_back(Term::compound("allegiance", {at, Term::atom(record.allegiance)}));
  if (!record.nationality.empty())
    clauses.push_back(Term::compound("nationality", {at, Term::atom(record.nationality)}));
  for (const auto& c : clauses) facts_.insert(c);
  cache_.reset();
  auto& history = track_records_[k];
  history.push_back(TrackEntry{utc, record.track_class, std::move(clauses)});
}

IngestResult KnowledgeBase::ingest_tracks(std::istream& csv, SymbolTable* symbols) {
  IngestResult result;
  std::string line;
  size_t number = 0;
  while (std::getline(csv, line)) {
    ++number;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || (number == 1 && t.starts_with("source,"))) continue;
    try {
      ingest(parse_track_line(t), symbols);
      ++result.accepted;
    } catch (const std::invalid_argument& e) {
      result.rejected.push_back(TrackRejection{number, e.what()});
    } catch (const ChronosError& e) {
      result.rejected.push_back(TrackRejection{number, e.what()});
    }
  }
  return result;
}

SituationReport KnowledgeBase::situation_report(const std::string& track_class,
                                                const std::string& track_id) const {
  SituationReport report;
  auto it = tracks_.find(track_id);
  if (it == tracks_.end()) {
    report.diagnostic = "no such track '" + track_id + "'";
    return report;
  }
  const auto& history = track_records_.at(it->second);
  const TrackEntry* latest = &history.front();
  for (const auto& e : history)
    if (e.utc >= latest->utc) latest = &e;
  std::set<std::string> none;
  Matcher m(*db_, none, {});
  if (!track_class.empty() && !m.typing_matches(track_class, latest->track_class)) {
    report.diagnostic = "track '" + track_id + "' is not a " + track_class;
    return report;
  }
  report.track = latest->clauses;
  for (const auto& payload : payloads_) {
    bool names = std::any_of(payload.begin(), payload.end(), [&](const Term& c) {
      return is_typing(c) && c.name == track_id;
    });
    if (names) report.related.push_back(payload);
  }
  return report;
}

}  // namespace cnl
