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

#include "cnl/effector.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "cnl/context.h"
#include "cnl/deep_graph.h"
#include "cnl/errors.h"
#include "cnl/mephisto.h"

namespace cnl {

namespace {

const std::set<std::string, std::less<>> kTenseTags = {"past", "present", "general_habitual",
                                                       "future"};
const std::set<std::string, std::less<>> kModals = {"can",    "could", "must", "should",
                                                    "may",    "might", "would"};

// Lexical lookups the realizer needs, built once per database.
struct Vocabulary {
  std::map<std::string, std::string, std::less<>> verb_by_functor;
  std::map<std::string, std::string, std::less<>> plural;
  std::map<int64_t, std::string> cardinal;
  std::map<std::string, int, std::less<>> adjective_rank;

  explicit Vocabulary(const LexicalDatabase& db) {
    for (const auto& e : db.lexicon.base_entries()) {
      if (e.pos == Pos::kMainVerb)
        verb_by_functor.emplace(verb_form(e.lemma, VerbForm::kThirdSingular), e.lemma);
      if (e.pos == Pos::kCardinal)
        if (auto v = e.features.get("value")) cardinal.emplace(std::stoll(*v), e.surface);
      if (e.pos == Pos::kAdjective) {
        auto c = adj_class_from_string(e.features.get_or("order_class", ""));
        adjective_rank.emplace(e.lemma, c ? precedence(*c) : kAdjClassCount);
      }
      if (e.pos == Pos::kCommonNoun) {
        for (const auto& form : inflect(e)) {
          if (!form.features.has("number", "plural")) continue;
          if (form.surface == e.lemma && !form.features.has("number", "singular")) continue;
          plural.emplace(e.lemma, form.surface);
        }
        if (e.features.has("number", "plural") && !e.features.has("number", "singular"))
          plural.insert_or_assign(e.lemma, e.surface);
      }
    }
  }

  static const Vocabulary& of(const LexicalDatabase& db) {
    static std::mutex mu;
    static std::map<const LexicalDatabase*, std::unique_ptr<Vocabulary>> cache;
    std::lock_guard lock(mu);
    auto& v = cache[&db];
    if (!v) v = std::make_unique<Vocabulary>(db);
    return *v;
  }
};

bool has_feature(const Term& list, std::string_view f) {
  if (list.kind != TermKind::kList) return false;
  return std::any_of(list.args.begin(), list.args.end(),
                     [&](const Term& x) { return x.is_atom(f); });
}

std::string feature_with(const Term& list, const std::set<std::string, std::less<>>& names) {
  for (const auto& x : list.args)
    if (x.kind == TermKind::kAtom && names.count(x.name)) return x.name;
  return "";
}

bool is_at(const Term& t) { return t.kind == TermKind::kAt; }

std::string label_of(const Term& at) { return at.args[0].name; }

bool is_typing(const Term& c) {
  if (c.kind != TermKind::kCompound || c.args.size() != 2 || !is_at(c.args[0])) return false;
  const Term& f = c.args[1];
  return f.kind == TermKind::kList && is_feature_list(f) && feature_with(f, kTenseTags).empty() &&
         !has_feature(f, "predicative") && !has_feature(f, "attributive");
}

bool is_annotation(const Term& c) {
  return c.kind == TermKind::kCompound && c.args.size() == 1 && is_at(c.args[0]);
}

bool is_constraint(const Term& c) {
  return (c.is_compound("before") || c.is_compound("after") || c.is_compound("during")) &&
         c.args.size() == 2 && c.args[0].is_symbol();
}

bool is_entity_modifier(const Term& c) {
  if (c.kind != TermKind::kCompound || c.args.size() != 2 || !is_at(c.args[0])) return false;
  const Term& b = c.args[1];
  if (c.name == "card" && b.kind == TermKind::kInteger) return true;
  if (c.name == "quantity" && b.kind == TermKind::kAtom) return true;
  if (c.name == "possessor" && is_at(b)) return true;
  if (is_at(b) && preposition_for_role(c.name)) return true;
  return has_feature(b, "attributive");
}

bool is_event(const Term& c) {
  if (c.kind != TermKind::kCompound || c.args.size() < 2 || !is_at(c.args[0])) return false;
  const Term& tags = c.args.back();
  return tags.kind == TermKind::kList && !feature_with(tags, kTenseTags).empty() &&
         !has_feature(tags, "predicative");
}

bool is_copula(const Term& c) {
  if (c.kind == TermKind::kIdentical) return true;
  if (c.kind != TermKind::kCompound || c.args.empty() || !is_at(c.args[0])) return false;
  return has_feature(c.args.back(), "predicative");
}

bool is_adjunct(const Term& c) {
  return c.kind == TermKind::kCompound && c.args.size() == 2 &&
         c.args[0].kind == TermKind::kList && c.args[0].args.size() == 1 &&
         c.args[0].args[0].kind == TermKind::kCompound;
}

Term core_of(const Term& event) {
  Term core = event;
  if (!core.args.empty() && is_feature_list(core.args.back())) core.args.pop_back();
  return core;
}

void flatten(const Term& t, std::vector<Term>* out) {
  if (t.kind == TermKind::kConjunction) {
    for (const auto& a : t.args) flatten(a, out);
  } else {
    out->push_back(t);
  }
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

struct NounInfo {
  std::string predicate;
  Term features;
  std::vector<std::string> adjectives;
  std::optional<int64_t> card;
  std::string quantity;
  std::optional<Term> owner;
  std::vector<std::pair<std::string, Term>> postmods;
};

enum class UniversalStyle { kBare, kAll, kEvery };

class Realizer {
 public:
  Realizer(const MephistoForm& form, const GenerationOptions& options)
      : opt_(options), vocab_(Vocabulary::of(*options.db)) {
    for (const auto& c : form) collect(c);
  }

  std::string sentence(const MephistoForm& form) {
    std::vector<Term> props = propositions(form);
    if (props.size() == 1 && props[0].is_compound("situation_report")) {
      const Term& p = props[0];
      return "Show " + words_of(p.args[0].name) + " situation report on " + p.args[1].name + ".";
    }
    std::string text;
    if (props.size() == 1 && props[0].kind == TermKind::kImplication) {
      text = "if " + clause({props[0].args[0]}) + " then " + clause({props[0].args[1]});
    } else {
      text = clause(props);
    }
    return capitalize(text) + ".";
  }

  std::string describe(const Term& at) { return np(at, false); }

 private:
  void collect(const Term& c) {
    if (is_typing(c)) {
      NounInfo& n = nouns_[label_of(c.args[0])];
      n.predicate = c.name;
      n.features = c.args[1];
    } else if (is_entity_modifier(c)) {
      NounInfo& n = nouns_[label_of(c.args[0])];
      const Term& b = c.args[1];
      if (c.name == "card") {
        n.card = b.value;
      } else if (c.name == "quantity") {
        n.quantity = b.name;
      } else if (c.name == "possessor") {
        n.owner = b;
      } else if (is_at(b)) {
        n.postmods.emplace_back(*preposition_for_role(c.name), b);
      } else {
        n.adjectives.push_back(c.name);
      }
    } else if (is_constraint(c)) {
      constraints_[c.args[0].name].push_back(c);
    }
    for (const auto& a : c.args) collect(a);
  }

  static std::vector<Term> propositions(const std::vector<Term>& form) {
    std::vector<Term> out;
    for (const auto& c : form) {
      if (is_typing(c) || is_entity_modifier(c) || is_annotation(c) || is_constraint(c)) continue;
      flatten(c, &out);
    }
    return out;
  }

  std::string clause(std::vector<Term> props) {
    std::vector<Term> flat;
    for (const auto& p : props) flatten(p, &flat);
    props = propositions(flat);
    bool always = false;
    if (props.size() == 1 && props[0].is_compound("all")) {
      const Term q = props[0];
      const Term body = q.args[1].kind == TermKind::kImplication ? q.args[1].args[1] : q.args[1];
      std::vector<std::string> vars;
      for (const auto& v : q.args[0].args) {
        if (symbol_class(v.name) == SymbolClass::kTime) {
          always = true;
          quantified_times_.insert(v.name);
        } else {
          vars.push_back(v.name);
        }
      }
      bool bare = vars.size() == 1 && body.kind != TermKind::kNegation && !always;
      for (const auto& v : vars) {
        auto it = nouns_.find(v);
        bool plural = it != nouns_.end() && has_feature(it->second.features, "plural");
        universal_[v] = bare && plural ? UniversalStyle::kBare
                                       : (plural ? UniversalStyle::kAll : UniversalStyle::kEvery);
      }
      props.clear();
      flatten(body, &props);
    }
    bool negated = false;
    if (props.size() == 1 && props[0].kind == TermKind::kNegation) {
      negated = true;
      std::vector<Term> inner;
      flatten(props[0].args[0], &inner);
      props = propositions(inner);
    }
    std::vector<Term> events, copulas, adjuncts;
    for (const auto& p : props) {
      if (is_event(p)) {
        events.push_back(p);
      } else if (is_copula(p)) {
        copulas.push_back(p);
      } else if (is_adjunct(p)) {
        adjuncts.push_back(p);
      } else {
        throw GenerationError("cannot realize clause " + print_term(p));
      }
    }
    if (!events.empty() && copulas.empty()) return event_clause(events, adjuncts, negated, always);
    if (!copulas.empty() && events.empty() && adjuncts.empty())
      return copula_clause(copulas, negated);
    throw GenerationError("clause mixes events and copulas");
  }

  // Distinct values per argument position; their product must cover the group.
  static std::vector<std::vector<Term>> positions(const std::vector<Term>& group, size_t n) {
    std::vector<std::vector<Term>> out(n);
    for (const auto& e : group)
      for (size_t k = 0; k < n; ++k)
        if (std::find(out[k].begin(), out[k].end(), e.args[k]) == out[k].end())
          out[k].push_back(e.args[k]);
    size_t product = 1;
    for (const auto& p : out) product *= p.size();
    if (product != group.size()) throw GenerationError("events do not form a coordination");
    return out;
  }

  std::string event_clause(const std::vector<Term>& events, const std::vector<Term>& adjuncts,
                           bool negated, bool always) {
    const Term& first = events.front();
    for (const auto& e : events)
      if (e.name != first.name || e.args.size() != first.args.size() ||
          e.args.back() != first.args.back())
        throw GenerationError("clauses with different events cannot be coordinated");
    auto it = vocab_.verb_by_functor.find(first.name);
    if (it == vocab_.verb_by_functor.end()) throw GenerationError("unknown verb '" + first.name + "'");
    const std::string& lemma = it->second;
    auto pos = positions(events, first.args.size() - 1);
    const Term& tags = first.args.back();
    std::string tense = feature_with(tags, kTenseTags);
    std::string modal = feature_with(tags, kModals);
    bool plural = pos[0].size() > 1 || plural_np(pos[0][0]);
    std::string t = first.args[0].args[1].name;

    std::string verb;
    if (!modal.empty()) {
      verb = negated ? (modal == "can" ? "cannot " : modal + " not ") + lemma : modal + " " + lemma;
    } else if (tense == "future") {
      verb = (negated ? "will not " : "will ") + lemma;
    } else if (tense == "past") {
      verb = negated ? "did not " + lemma : verb_form(lemma, VerbForm::kPast);
    } else if (negated) {
      verb = (plural ? "do not " : "does not ") + lemma;
    } else {
      verb = plural ? lemma : verb_form(lemma, VerbForm::kThirdSingular);
    }
    std::string out = coordination(pos[0]) + " " + (always ? "always " : "") + verb;
    std::vector<std::string> objects;
    std::string speech;
    for (size_t k = 1; k < pos.size(); ++k) {
      const Term& a = pos[k][0];
      if (a.kind == TermKind::kList) {
        speech = " that " + clause(a.args);
      } else if (pos[k].size() == 1 && pos[0].size() == 1 && a == pos[0][0]) {
        objects.push_back(reflexive(a));
      } else {
        objects.push_back(coordination(pos[k]));
      }
    }
    // Ditransitives realize as "V iobj obj".
    if (objects.size() == 2) std::swap(objects[0], objects[1]);
    for (const auto& o : objects) out += " " + o;
    std::string tail;
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<Term> cores;
    for (const auto& e : events) cores.push_back(core_of(e));
    for (const auto& a : adjuncts) {
      if (std::find(cores.begin(), cores.end(), a.args[0].args[0]) == cores.end())
        throw GenerationError("adjunct without its event");
      if (!seen.insert({a.name, print_term(a.args[1])}).second) continue;
      if (a.name == "direction") {
        tail += " " + a.args[1].name;
      } else if (a.name == "card") {
        tail += a.args[1].value == 1 ? " once" : " twice";
      } else if (auto prep = preposition_for_role(a.name)) {
        tail += " " + *prep + " " + np(a.args[1]);
      } else {
        throw GenerationError("unknown adjunct '" + a.name + "'");
      }
    }
    // A matrix time phrase would attach inside the reported clause, so a
    // speech verb keeps its tense default implicit.
    if (!speech.empty()) return out + tail + speech;
    return out + tail + time_phrases(t);
  }

  std::string copula_clause(const std::vector<Term>& copulas, bool negated) {
    std::vector<Term> subjects;
    std::string predicate;
    std::string tense = "present";
    for (const auto& c : copulas) {
      const Term& s = c.args[0];
      if (std::find(subjects.begin(), subjects.end(), s) == subjects.end()) subjects.push_back(s);
      std::string p;
      if (c.kind == TermKind::kIdentical) {
        p = np(c.args[1]);
      } else if (c.args.size() == 2) {
        p = c.name;
        tense = feature_with(c.args[1], kTenseTags);
      } else {
        auto prep = preposition_for_role(c.name);
        if (!prep) throw GenerationError("unknown relation '" + c.name + "'");
        p = *prep + " " + np(c.args[1]);
        tense = feature_with(c.args[2], kTenseTags);
      }
      if (!predicate.empty() && predicate != p) throw GenerationError("mixed copular predicates");
      predicate = p;
    }
    std::string t = subjects[0].args[1].name;
    if (copulas[0].kind == TermKind::kIdentical) {
      for (const auto& c : constraints_[t])
        if (c.is_compound("before")) tense = "past";
    }
    bool plural = subjects.size() > 1 || plural_np(subjects[0]);
    std::string be;
    if (tense == "past") {
      be = plural ? "were" : "was";
    } else if (tense == "future") {
      be = "will";
    } else {
      be = plural ? "are" : "is";
    }
    if (negated) be += " not";
    if (tense == "future") be += " be";
    return coordination(subjects) + " " + be + " " + predicate + time_phrases(t);
  }

  std::string time_phrases(const std::string& t) {
    if (quantified_times_.count(t)) return "";
    std::string out;
    for (const auto& c : constraints_[t]) {
      auto iv = interval_from_term(c.args[1]);
      if (!iv) throw GenerationError("constraint without an interval");
      TemporalRelation r = c.name == "before"  ? TemporalRelation::kBefore
                           : c.name == "after" ? TemporalRelation::kAfter
                                               : TemporalRelation::kDuring;
      out += " " + date_phrase(r, *iv, opt_.offset_minutes);
    }
    return out;
  }

  bool plural_np(const Term& at) const {
    auto it = nouns_.find(label_of(at));
    return it != nouns_.end() && has_feature(it->second.features, "plural");
  }

  const NounInfo& info(const Term& at) const {
    auto it = nouns_.find(label_of(at));
    if (it == nouns_.end() || it->second.predicate.empty())
      throw GenerationError("no typing for " + label_of(at));
    return it->second;
  }

  std::string reflexive(const Term& at) const {
    const Term& f = info(at).features;
    if (has_feature(f, "plural")) return "themselves";
    if (has_feature(f, "female")) return "herself";
    if (has_feature(f, "male")) return "himself";
    return "itself";
  }

  std::string coordination(const std::vector<Term>& members) {
    if (members.size() == 1) return np(members[0]);
    const auto& shared = info(members[0]).postmods;
    bool common = !shared.empty() && std::all_of(members.begin(), members.end(), [&](const Term& m) {
      return info(m).postmods == shared;
    });
    std::string out;
    for (const auto& m : members) {
      if (!out.empty()) out += " and ";
      out += np(m, !common);
    }
    if (common) out += postmods(shared);
    return out;
  }

  std::string postmods(const std::vector<std::pair<std::string, Term>>& mods) {
    std::string out;
    for (const auto& [prep, o] : mods) out += " " + prep + " " + np(o);
    return out;
  }

  std::string words_of(const std::string& atom) const {
    if (const AliasEntry* a = opt_.db->aliases.reverse(atom)) {
      std::string out;
      for (const auto& w : a->surface) out += (out.empty() ? "" : " ") + w;
      return out;
    }
    return atom;
  }

  std::string noun_words(const std::string& predicate, bool plural) const {
    if (!plural) return words_of(predicate);
    if (auto it = vocab_.plural.find(predicate); it != vocab_.plural.end())
      return words_of(it->second);
    std::string p = plural_of(predicate);
    if (opt_.db->aliases.reverse(p)) return words_of(p);
    std::string w = words_of(predicate);
    size_t sp = w.rfind(' ');
    return sp == std::string::npos ? plural_of(w) : w.substr(0, sp + 1) + plural_of(w.substr(sp + 1));
  }

  std::string np(const Term& at, bool with_postmods = true) {
    const NounInfo& n = info(at);
    const Term& f = n.features;
    if (has_feature(f, "pronoun")) return n.predicate == "person" ? "someone" : "something";
    if (has_feature(f, "proper_noun")) return words_of(n.predicate);
    bool plural = has_feature(f, "plural");
    std::vector<std::string> adjs = n.adjectives;
    std::stable_sort(adjs.begin(), adjs.end(), [&](const std::string& a, const std::string& b) {
      auto rank = [&](const std::string& x) {
        auto it = vocab_.adjective_rank.find(x);
        return it == vocab_.adjective_rank.end() ? kAdjClassCount : it->second;
      };
      return rank(a) < rank(b);
    });
    std::string head;
    for (const auto& a : adjs) head += a + " ";
    head += noun_words(n.predicate, plural);
    std::string det;
    auto u = universal_.find(label_of(at));
    if (u != universal_.end()) {
      det = u->second == UniversalStyle::kBare ? "" : (u->second == UniversalStyle::kAll ? "all" : "every");
    } else if (n.owner) {
      det = np(*n.owner) + "'s";
    } else if (n.card) {
      auto c = vocab_.cardinal.find(*n.card);
      det = c == vocab_.cardinal.end() ? std::to_string(*n.card) : c->second;
    } else if (!n.quantity.empty()) {
      det = n.quantity;
    } else if (has_feature(f, "definite")) {
      det = "the";
    } else if (has_feature(f, "demonstrative")) {
      det = plural ? "those" : "that";
    } else if (has_feature(f, "indefinite") && !plural) {
      det = std::string("aeiou").find(head[0]) != std::string::npos ? "an" : "a";
    }
    std::string out = det.empty() ? head : det + " " + head;
    if (with_postmods) out += postmods(n.postmods);
    return out;
  }

  GenerationOptions opt_;
  const Vocabulary& vocab_;
  std::map<std::string, NounInfo, std::less<>> nouns_;
  std::map<std::string, std::vector<Term>, std::less<>> constraints_;
  std::map<std::string, UniversalStyle, std::less<>> universal_;
  std::set<std::string, std::less<>> quantified_times_;
};

bool whole_month(const Timestamp& a, const Timestamp& b) {
  if (a.day != 1 || a.hour || a.minute || a.second) return false;
  if (b.hour != 23 || b.minute != 59 || b.second != 59) return false;
  if (a.year != b.year || a.month != b.month) return false;
  Timestamp next = b;
  int64_t s = to_epoch_seconds(next) + 1;
  return from_epoch_seconds(s).day == 1;
}

bool whole_year(const Timestamp& a, const Timestamp& b) {
  return a.month == 1 && a.day == 1 && !a.hour && !a.minute && !a.second && b.month == 12 &&
         b.day == 31 && b.hour == 23 && b.minute == 59 && b.second == 59;
}

const char* kMonthNames[] = {"January", "February", "March",     "April",   "May",      "June",
                             "July",    "August",   "September", "October", "November", "December"};

// Phrase for the interval itself, without a leading preposition.
std::optional<std::string> period_words(const Interval& i, int offset) {
  if (i.is_point()) return render_date_phrase(i.start, offset, true);
  if (is_local_day(i, offset)) return render_date_phrase(i.start, offset, false);
  Timestamp a = utc_denormalize(i.start, offset);
  Timestamp b = utc_denormalize(i.end, offset);
  if (whole_month(a, b)) return std::string(kMonthNames[a.month - 1]) + " " + std::to_string(a.year);
  if (whole_year(a, b) && a.year == b.year) return std::to_string(a.year);
  return std::nullopt;
}

}  // namespace

std::string date_phrase(TemporalRelation relation, const Interval& interval, int offset_minutes) {
  auto words = period_words(interval, offset_minutes);
  if (relation != TemporalRelation::kDuring) {
    if (!words) throw GenerationError("no phrase for interval " + to_string(interval));
    return std::string(relation == TemporalRelation::kBefore ? "before " : "after ") + *words;
  }
  if (words) {
    bool named_period = !interval.is_point() && !is_local_day(interval, offset_minutes);
    return (named_period ? "in " : "on ") + *words;
  }
  return "from " + render_date_phrase(interval.start, offset_minutes, true) + " to " +
         render_date_phrase(interval.end, offset_minutes, true);
}

std::string generate(const MephistoForm& form, const GenerationOptions& options) {
  if (!options.db) throw ContractViolation("generate: no lexical database");
  if (form.empty()) throw GenerationError("empty form");
  return Realizer(form, options).sentence(form);
}

std::string noun_phrase(const MephistoForm& form, const Term& at, const GenerationOptions& options) {
  if (!options.db) throw ContractViolation("noun_phrase: no lexical database");
  if (at.kind != TermKind::kAt) throw ContractViolation("noun_phrase: not an @-term");
  return Realizer(form, options).describe(at);
}

RoundtripResult validate_roundtrip(const MephistoForm& form, const Parser& parser,
                                   const TimeContext& time, const GenerationOptions& options) {
  RoundtripResult r;
  try {
    r.text = generate(form, options);
  } catch (const GenerationError& e) {
    r.error = e.what();
    return r;
  }
  auto trees = parser.parse(prepare(r.text, *options.db), time);
  if (trees.empty()) {
    r.error = "generated text does not parse";
    return r;
  }
  TranslationOptions topt{options.db, Interval::point(time.utterance), time.offset_minutes};
  for (const auto& tree : trees) {
    std::vector<DeepGraph> graphs;
    try {
      graphs = resolve(to_graph(tree), DiscourseContext{});
    } catch (const std::exception&) {
      continue;
    }
    for (const auto& g : graphs) {
      SymbolTable symbols;
      try {
        MephistoForm back = translate(g, &symbols, topt).form;
        if (alpha_equal(back, form)) {
          r.ok = r.exact = true;
          return r;
        }
        r.ok = r.ok || alpha_equal(back, form, golden_tolerance());
      } catch (const ContractViolation&) {
      }
    }
  }
  if (!r.ok) r.error = "no reading translates back to the form";
  return r;
}

std::vector<std::string> render_report(const MephistoForm& clauses,
                                       const GenerationOptions& options) {
  std::string id, cls;
  std::vector<std::string> out;
  std::optional<Term> position;
  std::optional<Interval> when;
  std::map<std::string, std::string> attrs;
  auto number = [](const Term& t) {
    return t.kind == TermKind::kInteger ? std::to_string(t.value) : t.name;
  };
  for (const auto& c : clauses) {
    if (is_typing(c)) {
      (has_feature(c.args[1], "proper_noun") ? id : cls) = c.name;
    } else if (c.is_compound("position") && c.args.size() == 3) {
      position = c;
    } else if (c.is_compound("during") && c.args.size() == 2) {
      when = interval_from_term(c.args[1]);
    } else if (c.kind == TermKind::kCompound && c.args.size() == 2 && is_at(c.args[0]) &&
               !is_feature_list(c.args[1])) {
      attrs[c.name] = number(c.args[1]);
    }
  }
  if (id.empty()) return out;
  std::string name = id;
  if (const AliasEntry* a = options.db->aliases.reverse(cls)) {
    std::string words;
    for (const auto& w : a->surface) words += (words.empty() ? "" : " ") + w;
    cls = words;
  } else {
    std::replace(cls.begin(), cls.end(), '_', ' ');
  }
  if (!cls.empty()) {
    bool vowel = std::string("aeiou").find(cls[0]) != std::string::npos;
    out.push_back(name + " is " + (vowel ? "an " : "a ") + cls + ".");
  }
  if (position) {
    std::string s = name + " was at latitude " + number(position->args[1]) + " and longitude " +
                    number(position->args[2]);
    if (when) s += " " + date_phrase(TemporalRelation::kDuring, *when, options.offset_minutes);
    out.push_back(s + ".");
  }
  if (attrs.count("heading") || attrs.count("speed")) {
    std::string s = name;
    if (attrs.count("heading")) s += " was heading " + attrs["heading"] + " degrees";
    if (attrs.count("speed"))
      s += std::string(attrs.count("heading") ? " at " : " was moving at ") + attrs["speed"] +
           " knots";
    out.push_back(s + ".");
  }
  if (attrs.count("allegiance")) out.push_back(name + " is " + attrs["allegiance"] + ".");
  if (attrs.count("nationality"))
    out.push_back(name + " has nationality " + attrs["nationality"] + ".");
  return out;
}

}  // namespace cnl
