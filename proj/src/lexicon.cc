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

#include "cnl/lexicon.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef CNL_DATA_DIR
#define CNL_DATA_DIR "data"
#endif

namespace cnl {

namespace {

struct PosName {
  Pos pos;
  const char* name;
};

constexpr PosName kPosNames[] = {
    {Pos::kCommonNoun, "common_noun"}, {Pos::kProperNoun, "proper_noun"},
    {Pos::kPronoun, "pronoun"},        {Pos::kMainVerb, "main_verb"},
    {Pos::kAuxiliary, "auxiliary"},    {Pos::kModal, "modal"},
    {Pos::kAdjective, "adjective"},    {Pos::kArticle, "article"},
    {Pos::kCardinal, "cardinal"},      {Pos::kOrdinal, "ordinal"},
    {Pos::kPreposition, "preposition"}, {Pos::kConjunction, "conjunction"},
    {Pos::kWhWord, "wh_word"},         {Pos::kDirectional, "directional"},
    {Pos::kAdverb, "adverb"},
};

constexpr const char* kAdjClassNames[] = {
    "ordinal", "noun",  "subjective", "evaluative", "objective",
    "amplifier", "weak", "size",      "girth",      "height",
    "shape",   "age",   "century",    "participle", "colour",
    "compass", "provenance", "religion", "denominal"};

const std::set<std::string, std::less<>>& allowed_keys(Pos pos) {
  static const std::set<std::string, std::less<>> noun = {
      "gender", "number", "mass_count", "alienability", "syntactic_dependencies",
      "animacy", "type"};
  static const std::set<std::string, std::less<>> pronoun = {
      "gender", "number", "case", "kind", "animacy", "person", "type"};
  static const std::set<std::string, std::less<>> verb = {
      "semantic_type", "agreement", "tense",          "aspect",
      "mood",          "syntactic_frame", "semantic_frame", "aktionsart",
      "vform",         "person"};
  static const std::set<std::string, std::less<>> aux = {
      "agreement", "tense", "vform", "mood", "polarity", "person", "kind"};
  static const std::set<std::string, std::less<>> adjective = {"usage", "order_class"};
  static const std::set<std::string, std::less<>> article = {"definiteness", "number",
                                                             "kind"};
  static const std::set<std::string, std::less<>> cardinal = {"value", "number", "kind"};
  static const std::set<std::string, std::less<>> ordinal = {"value"};
  static const std::set<std::string, std::less<>> wh = {"kind", "animacy", "number"};
  static const std::set<std::string, std::less<>> other = {"kind"};
  switch (pos) {
    case Pos::kCommonNoun:
    case Pos::kProperNoun: return noun;
    case Pos::kPronoun: return pronoun;
    case Pos::kMainVerb: return verb;
    case Pos::kAuxiliary:
    case Pos::kModal: return aux;
    case Pos::kAdjective: return adjective;
    case Pos::kArticle: return article;
    case Pos::kCardinal: return cardinal;
    case Pos::kOrdinal: return ordinal;
    case Pos::kWhWord: return wh;
    default: return other;
  }
}

const std::set<std::string, std::less<>> kAktionsart = {"state", "activity",
                                                        "accomplishment", "achievement"};

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Calls fn(line_number, line) for each non-blank, non-comment line.
template <typename Fn>
void for_each_line(std::string_view content, Fn fn) {
  size_t n = 0;
  for (const auto& raw : split(content, '\n')) {
    ++n;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    fn(n, line);
  }
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw LoadError(file.string(), 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_vowel(char c) { return std::string_view("aeiou").find(c) != std::string_view::npos; }

bool doubles_final(std::string_view w) {
  if (w.size() < 3) return false;
  char a = w[w.size() - 3], b = w[w.size() - 2], c = w.back();
  if (is_vowel(a) || !is_vowel(b) || is_vowel(c)) return false;
  if (c == 'w' || c == 'x' || c == 'y') return false;
  int groups = 0;
  bool in_vowel = false;
  for (char ch : w) {
    bool v = is_vowel(ch);
    if (v && !in_vowel) ++groups;
    in_vowel = v;
  }
  return groups == 1;
}

const std::map<std::string, std::string, std::less<>>& irregular_plurals() {
  static const std::map<std::string, std::string, std::less<>> m = {
      {"woman", "women"},       {"man", "men"},         {"child", "children"},
      {"person", "people"},     {"mouse", "mice"},      {"foot", "feet"},
      {"tooth", "teeth"},       {"sheep", "sheep"},     {"fish", "fish"},
      {"aircraft", "aircraft"}, {"fisherman", "fishermen"},
      {"policeman", "policemen"}, {"gentleman", "gentlemen"},
      {"chairman", "chairmen"}, {"knife", "knives"},    {"wife", "wives"},
      {"life", "lives"},        {"leaf", "leaves"},     {"half", "halves"},
      {"shelf", "shelves"},     {"wolf", "wolves"},     {"thief", "thieves"},
      {"crisis", "crises"},     {"radio", "radios"},    {"photo", "photos"},
      {"series", "series"},     {"headquarters", "headquarters"},
      {"species", "species"},   {"deer", "deer"},       {"binoculars", "binoculars"},
      {"barracks", "barracks"},
  };
  return m;
}

struct VerbIrregular {
  const char* lemma;
  const char* past;
};

const std::map<std::string, std::string, std::less<>>& irregular_pasts() {
  static const std::map<std::string, std::string, std::less<>> m = [] {
    static const VerbIrregular table[] = {
        {"have", "had"},     {"do", "did"},          {"go", "went"},
        {"come", "came"},    {"see", "saw"},         {"give", "gave"},
        {"stand", "stood"},  {"read", "read"},       {"sleep", "slept"},
        {"say", "said"},     {"tell", "told"},       {"make", "made"},
        {"take", "took"},    {"find", "found"},      {"know", "knew"},
        {"write", "wrote"},  {"bring", "brought"},   {"buy", "bought"},
        {"sell", "sold"},    {"send", "sent"},       {"hear", "heard"},
        {"meet", "met"},     {"build", "built"},     {"leave", "left"},
        {"lose", "lost"},    {"win", "won"},         {"eat", "ate"},
        {"drink", "drank"},  {"hold", "held"},       {"keep", "kept"},
        {"forget", "forgot"}, {"teach", "taught"},   {"think", "thought"},
        {"run", "ran"},      {"fly", "flew"},        {"drive", "drove"},
        {"swim", "swam"},    {"sit", "sat"},         {"hit", "hit"},
        {"cut", "cut"},      {"put", "put"},         {"lend", "lent"},
        {"catch", "caught"}, {"fight", "fought"},    {"feel", "felt"},
        {"speak", "spoke"},  {"break", "broke"},     {"choose", "chose"},
        {"begin", "began"},  {"sing", "sang"},       {"steal", "stole"},
        {"wear", "wore"},    {"shoot", "shot"},      {"get", "got"},
        {"let", "let"},      {"set", "set"},         {"spend", "spent"},
        {"lead", "led"},     {"ride", "rode"},       {"rise", "rose"},
        {"fall", "fell"},    {"grow", "grew"},       {"throw", "threw"},
        {"draw", "drew"},    {"understand", "understood"},
        {"become", "became"}, {"sink", "sank"},      {"hide", "hid"},
        {"feed", "fed"},     {"pay", "paid"},        {"lay", "laid"},
        {"patrol", "patrolled"}, {"travel", "travelled"},
        {"control", "controlled"}, {"signal", "signalled"},
        {"cancel", "cancelled"}, {"visit", "visited"}, {"open", "opened"},
        {"enter", "entered"}, {"order", "ordered"},  {"answer", "answered"},
        {"deliver", "delivered"}, {"monitor", "monitored"},
        {"remember", "remembered"}, {"offer", "offered"},
        {"board", "boarded"},
    };
    std::map<std::string, std::string, std::less<>> out;
    for (const auto& e : table) out[e.lemma] = e.past;
    return out;
  }();
  return m;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string sibilant_s(std::string_view w) {
  std::string s(w);
  if (ends_with(s, "s") || ends_with(s, "x") || ends_with(s, "z") ||
      ends_with(s, "ch") || ends_with(s, "sh"))
    return s + "es";
  if (s.size() >= 2 && s.back() == 'y' && !is_vowel(s[s.size() - 2]))
    return s.substr(0, s.size() - 1) + "ies";
  return s + "s";
}

LexEntry with(const LexEntry& base, std::string surface,
              std::initializer_list<std::pair<const char*, const char*>> feats) {
  LexEntry e = base;
  e.surface = std::move(surface);
  for (const auto& [k, v] : feats) e.features.set(k, v);
  return e;
}

}  // namespace

std::string_view to_string(Pos pos) {
  for (const auto& p : kPosNames)
    if (p.pos == pos) return p.name;
  return "?";
}

std::optional<Pos> pos_from_string(std::string_view text) {
  for (const auto& p : kPosNames)
    if (text == p.name) return p.pos;
  return std::nullopt;
}

bool is_noun(Pos pos) { return pos == Pos::kCommonNoun || pos == Pos::kProperNoun; }

bool is_verb(Pos pos) {
  return pos == Pos::kMainVerb || pos == Pos::kAuxiliary || pos == Pos::kModal;
}

int precedence(AdjClass c) { return static_cast<int>(c); }

std::string_view to_string(AdjClass c) { return kAdjClassNames[static_cast<int>(c)]; }

std::optional<AdjClass> adj_class_from_string(std::string_view text) {
  for (int i = 0; i < kAdjClassCount; ++i)
    if (text == kAdjClassNames[i]) return static_cast<AdjClass>(i);
  return std::nullopt;
}

bool adjective_order_valid(std::span<const AdjClass> classes) {
  for (size_t i = 1; i < classes.size(); ++i)
    if (precedence(classes[i]) < precedence(classes[i - 1])) return false;
  return true;
}

std::optional<std::string> FeatureBundle::get(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string FeatureBundle::get_or(std::string_view key, std::string_view fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? std::string(fallback) : it->second;
}

bool FeatureBundle::has(std::string_view key) const { return values_.contains(key); }

bool FeatureBundle::has(std::string_view key, std::string_view value) const {
  auto it = values_.find(key);
  if (it == values_.end()) return false;
  for (const auto& v : split(it->second, ','))
    if (v == value) return true;
  return false;
}

void FeatureBundle::set(std::string key, std::string value) {
  values_[std::move(key)] = std::move(value);
}

void FeatureBundle::erase(std::string_view key) {
  auto it = values_.find(key);
  if (it != values_.end()) values_.erase(it);
}

std::string FeatureBundle::to_string() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

LoadError::LoadError(std::string source, size_t line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
      line_(line) {}

std::string_view to_string(VerbForm f) {
  switch (f) {
    case VerbForm::kPresent: return "present";
    case VerbForm::kThirdSingular: return "3sg";
    case VerbForm::kPast: return "past";
    case VerbForm::kIng: return "ing";
  }
  return "?";
}

std::optional<VerbForm> verb_form_from_string(std::string_view text) {
  for (VerbForm f : {VerbForm::kPresent, VerbForm::kThirdSingular, VerbForm::kPast,
                     VerbForm::kIng})
    if (to_string(f) == text) return f;
  return std::nullopt;
}

std::string plural_of(std::string_view noun) {
  size_t cut = noun.rfind('_');
  std::string head(cut == std::string_view::npos ? noun : noun.substr(cut + 1));
  std::string prefix(cut == std::string_view::npos ? "" : noun.substr(0, cut + 1));
  auto it = irregular_plurals().find(head);
  if (it != irregular_plurals().end()) return prefix + it->second;
  return prefix + sibilant_s(head);
}

std::string verb_form(std::string_view lemma, VerbForm form) {
  std::string w(lemma);
  switch (form) {
    case VerbForm::kPresent:
      return w;
    case VerbForm::kThirdSingular:
      if (w == "have") return "has";
      if (w == "do" || w == "go") return w + "es";
      return sibilant_s(w);
    case VerbForm::kPast: {
      auto it = irregular_pasts().find(w);
      if (it != irregular_pasts().end()) return it->second;
      if (ends_with(w, "e")) return w + "d";
      if (w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2]))
        return w.substr(0, w.size() - 1) + "ied";
      if (doubles_final(w)) return w + w.back() + "ed";
      return w + "ed";
    }
    case VerbForm::kIng: {
      if (w == "see" || w == "be" || w == "flee") return w + "ing";
      if (ends_with(w, "ie")) return w.substr(0, w.size() - 2) + "ying";
      auto it = irregular_pasts().find(w);
      if (it != irregular_pasts().end() && ends_with(it->second, "lled") &&
          !ends_with(w, "ll"))
        return w + w.back() + "ing";
      if (ends_with(w, "e") && !ends_with(w, "ee") && !ends_with(w, "ye") &&
          !ends_with(w, "oe"))
        return w.substr(0, w.size() - 1) + "ing";
      if (doubles_final(w)) return w + w.back() + "ing";
      return w + "ing";
    }
  }
  return w;
}

std::vector<LexEntry> inflect(const LexEntry& base) {
  std::vector<LexEntry> out;
  if (base.pos == Pos::kCommonNoun && !base.features.has("number") &&
      base.features.get_or("mass_count", "count") == "count") {
    std::string plural = plural_of(base.lemma);
    if (plural == base.lemma) {
      out.push_back(with(base, base.surface, {{"number", "singular,plural"}}));
    } else {
      out.push_back(with(base, base.surface, {{"number", "singular"}}));
      out.push_back(with(base, plural, {{"number", "plural"}}));
    }
    return out;
  }
  if (base.pos == Pos::kCommonNoun && !base.features.has("number")) {
    out.push_back(with(base, base.surface, {{"number", "singular"}}));
    return out;
  }
  if (base.pos == Pos::kProperNoun && !base.features.has("number")) {
    out.push_back(with(base, base.surface, {{"number", "singular"}}));
    return out;
  }
  bool inflecting_aux = base.pos == Pos::kAuxiliary && !base.features.has("vform");
  if ((base.pos == Pos::kMainVerb || inflecting_aux) && base.lemma == "be") {
    out.push_back(with(base, "be", {{"vform", "base"}}));
    out.push_back(with(base, "am", {{"vform", "present"}, {"tense", "present"},
                                    {"agreement", "1sg"}}));
    out.push_back(with(base, "is", {{"vform", "3sg"}, {"tense", "present"},
                                    {"agreement", "3sg"}}));
    out.push_back(with(base, "are", {{"vform", "present"}, {"tense", "present"},
                                     {"agreement", "non3sg"}}));
    out.push_back(with(base, "was", {{"vform", "past"}, {"tense", "past"},
                                     {"agreement", "sg"}}));
    out.push_back(with(base, "were", {{"vform", "past"}, {"tense", "past"},
                                      {"agreement", "pl"}}));
    out.push_back(with(base, "being", {{"vform", "ing"}}));
    return out;
  }
  if (base.pos == Pos::kMainVerb || inflecting_aux) {
    out.push_back(with(base, verb_form(base.lemma, VerbForm::kPresent),
                       {{"vform", "present"}, {"tense", "present"},
                        {"agreement", "non3sg"}}));
    out.push_back(with(base, verb_form(base.lemma, VerbForm::kThirdSingular),
                       {{"vform", "3sg"}, {"tense", "present"}, {"agreement", "3sg"}}));
    out.push_back(with(base, verb_form(base.lemma, VerbForm::kPast),
                       {{"vform", "past"}, {"tense", "past"}, {"agreement", "any"}}));
    out.push_back(with(base, verb_form(base.lemma, VerbForm::kIng), {{"vform", "ing"}}));
    return out;
  }
  out.push_back(base);
  return out;
}

std::string reinflect(const LexEntry& e) {
  if (e.pos == Pos::kCommonNoun) {
    auto number = e.features.get_or("number", "singular");
    if (number == "plural") return plural_of(e.lemma);
    return e.lemma;
  }
  if ((e.pos == Pos::kMainVerb || e.pos == Pos::kAuxiliary) && e.features.has("vform")) {
    std::string vf = e.features.get_or("vform", "");
    if (e.lemma == "be") {
      std::string agr = e.features.get_or("agreement", "");
      if (vf == "base") return "be";
      if (vf == "ing") return "being";
      if (vf == "3sg") return "is";
      if (vf == "present") return agr == "1sg" ? "am" : "are";
      if (vf == "past") return agr == "pl" ? "were" : "was";
    }
    if (auto f = verb_form_from_string(vf)) return verb_form(e.lemma, *f);
  }
  return e.surface;
}

void Lexicon::add(const LexEntry& base) {
  base_.push_back(base);
  for (auto& form : inflect(base)) forms_[form.surface].push_back(std::move(form));
}

Lexicon Lexicon::parse(std::string_view content, std::string_view source) {
  Lexicon lex;
  std::set<std::pair<std::string, Pos>> seen;
  std::string src(source);
  for_each_line(content, [&](size_t n, const std::string& line) {
    auto fields = split(line, '\t');
    if (fields.size() < 3 || fields.size() > 4)
      throw LoadError(src, n, "expected 3 or 4 tab-separated fields");
    LexEntry e;
    e.surface = trim(fields[0]);
    e.lemma = trim(fields[1]);
    if (e.surface.empty() || e.lemma.empty())
      throw LoadError(src, n, "empty surface or lemma");
    if (std::any_of(e.surface.begin(), e.surface.end(),
                    [](unsigned char c) { return std::isspace(c); }))
      throw LoadError(src, n, "surface contains whitespace: '" + e.surface + "'");
    auto pos = pos_from_string(trim(fields[2]));
    if (!pos) throw LoadError(src, n, "unknown part of speech '" + fields[2] + "'");
    e.pos = *pos;
    if (fields.size() == 4 && !trim(fields[3]).empty()) {
      for (const auto& kv : split(trim(fields[3]), ';')) {
        if (trim(kv).empty()) continue;
        size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
          throw LoadError(src, n, "malformed feature '" + kv + "'");
        std::string key = trim(kv.substr(0, eq));
        if (!allowed_keys(e.pos).contains(key))
          throw LoadError(src, n, "feature '" + key + "' not allowed on " +
                                      std::string(to_string(e.pos)));
        e.features.set(key, trim(kv.substr(eq + 1)));
      }
    }
    if (e.pos == Pos::kAdjective) {
      auto cls = e.features.get("order_class");
      if (!cls || !adj_class_from_string(*cls))
        throw LoadError(src, n, "adjective needs exactly one known order_class");
    }
    if (e.pos == Pos::kMainVerb) {
      auto ak = e.features.get("aktionsart");
      if (!ak || !kAktionsart.contains(*ak))
        throw LoadError(src, n, "main verb needs an aktionsart value");
    }
    if (!seen.insert({e.surface, e.pos}).second)
      throw LoadError(src, n, "duplicate entry '" + e.surface + "' (" +
                                  std::string(to_string(e.pos)) + ")");
    lex.add(e);
  });
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& file) {
  return parse(read_file(file), file.string());
}

std::vector<LexEntry> Lexicon::lookup(std::string_view surface,
                                      bool sentence_initial) const {
  std::vector<LexEntry> out;
  auto it = forms_.find(std::string(surface));
  if (it != forms_.end()) out = it->second;
  if (sentence_initial) {
    std::string low = lower(surface);
    if (low != surface) {
      auto lt = forms_.find(low);
      if (lt != forms_.end()) {
        for (const auto& e : lt->second)
          if (e.pos != Pos::kProperNoun) out.push_back(e);
      }
    }
  }
  return out;
}

bool Lexicon::known(std::string_view surface, bool sentence_initial) const {
  return !lookup(surface, sentence_initial).empty();
}

const LexEntry* Lexicon::find_lemma(std::string_view lemma, Pos pos) const {
  for (const auto& e : base_)
    if (e.lemma == lemma && e.pos == pos) return &e;
  return nullptr;
}

bool Lexicon::resident(std::string_view atom) const {
  if (forms_.contains(std::string(atom))) return true;
  return std::any_of(base_.begin(), base_.end(),
                     [&](const LexEntry& e) { return e.lemma == atom; });
}

std::set<LexEntry> Lexicon::all_forms() const {
  std::set<LexEntry> out;
  for (const auto& [_, v] : forms_) out.insert(v.begin(), v.end());
  return out;
}

std::string_view to_string(AcronymPosition p) {
  switch (p) {
    case AcronymPosition::kPreNominal: return "pre_nominal";
    case AcronymPosition::kPostNominal: return "post_nominal";
    case AcronymPosition::kFree: return "free";
  }
  return "?";
}

AcronymLexicon AcronymLexicon::parse(std::string_view content, std::string_view source) {
  AcronymLexicon lex;
  std::string src(source);
  for_each_line(content, [&](size_t n, const std::string& line) {
    auto fields = split(line, '\t');
    if (fields.size() != 3) throw LoadError(src, n, "expected 3 tab-separated fields");
    AcronymEntry e;
    e.acronym = trim(fields[0]);
    e.expansion = split_words(fields[1]);
    std::string pos = trim(fields[2]);
    if (e.acronym.empty()) throw LoadError(src, n, "empty acronym");
    if (e.expansion.empty()) throw LoadError(src, n, "empty expansion");
    if (pos == "pre_nominal") e.position = AcronymPosition::kPreNominal;
    else if (pos == "post_nominal") e.position = AcronymPosition::kPostNominal;
    else if (pos == "free") e.position = AcronymPosition::kFree;
    else throw LoadError(src, n, "unknown position '" + pos + "'");
    if (lex.index_.contains(e.acronym))
      throw LoadError(src, n, "duplicate acronym '" + e.acronym + "'");
    lex.index_[e.acronym] = lex.entries_.size();
    lex.entries_.push_back(std::move(e));
  });
  return lex;
}

const AcronymEntry* AcronymLexicon::find(std::string_view acronym) const {
  auto it = index_.find(acronym);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

AliasLexicon AliasLexicon::parse(std::string_view content, std::string_view source) {
  AliasLexicon lex;
  std::string src(source);
  for_each_line(content, [&](size_t n, const std::string& line) {
    auto fields = split(line, '\t');
    if (fields.size() != 2) throw LoadError(src, n, "expected 2 tab-separated fields");
    AliasEntry e;
    e.surface = split_words(fields[0]);
    e.atom = trim(fields[1]);
    if (e.surface.empty()) throw LoadError(src, n, "empty alias surface");
    if (e.atom.empty() || e.atom.find_first_of(" \t") != std::string::npos)
      throw LoadError(src, n, "alias atom must be one token");
    if (lex.index_.contains(e.surface)) throw LoadError(src, n, "duplicate alias");
    lex.index_[e.surface] = lex.entries_.size();
    lex.reverse_.emplace(e.atom, lex.entries_.size());
    lex.max_length_ = std::max(lex.max_length_, e.surface.size());
    lex.entries_.push_back(std::move(e));
  });
  return lex;
}

const AliasEntry* AliasLexicon::match(std::span<const std::string> tokens) const {
  auto it = index_.find(std::vector<std::string>(tokens.begin(), tokens.end()));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

const AliasEntry* AliasLexicon::reverse(std::string_view atom) const {
  auto it = reverse_.find(atom);
  return it == reverse_.end() ? nullptr : &entries_[it->second];
}

Taxonomy Taxonomy::parse(std::string_view content, std::string_view source) {
  Taxonomy tax;
  std::string src(source);
  for_each_line(content, [&](size_t n, const std::string& line) {
    auto fields = split(line, '\t');
    if (fields.size() != 2) throw LoadError(src, n, "expected child<TAB>parent");
    std::string child = trim(fields[0]), parent = trim(fields[1]);
    if (tax.parent_.contains(child)) throw LoadError(src, n, "duplicate type " + child);
    if (parent != "-" && !tax.parent_.contains(parent))
      throw LoadError(src, n, "parent '" + parent + "' must be declared first");
    tax.parent_[child] = parent;
  });
  return tax;
}

bool Taxonomy::is_a(std::string_view type, std::string_view ancestor) const {
  std::string cur(type);
  for (int guard = 0; guard < 64; ++guard) {
    if (cur == ancestor) return true;
    auto it = parent_.find(cur);
    if (it == parent_.end() || it->second == "-") return false;
    cur = it->second;
  }
  return false;
}

std::optional<std::string> Taxonomy::parent(std::string_view type) const {
  auto it = parent_.find(type);
  if (it == parent_.end() || it->second == "-") return std::nullopt;
  return it->second;
}

bool Taxonomy::known(std::string_view type) const { return parent_.contains(type); }

LexicalDatabase LexicalDatabase::load(const std::filesystem::path& dir) {
  LexicalDatabase db;
  db.lexicon = Lexicon::load(dir / "lexicon.tsv");
  auto acr = dir / "acronyms.tsv";
  db.acronyms = AcronymLexicon::parse(read_file(acr), acr.string());
  auto ali = dir / "aliases.tsv";
  db.aliases = AliasLexicon::parse(read_file(ali), ali.string());
  auto tax = dir / "taxonomy.tsv";
  db.taxonomy = Taxonomy::parse(read_file(tax), tax.string());
  for (const auto& a : db.aliases.entries()) {
    if (!db.lexicon.resident(a.atom))
      throw LoadError(ali.string(), 0, "alias atom '" + a.atom + "' is not in the lexicon");
  }
  for (const auto& a : db.acronyms.entries()) {
    for (const auto& w : a.expansion)
      if (!db.lexicon.resident(w))
        throw LoadError(acr.string(), 0,
                        "expansion word '" + w + "' of '" + a.acronym + "' is not in the lexicon");
  }
  for (const auto& e : db.lexicon.base_entries()) {
    auto type = e.features.get("type");
    if (type && !db.taxonomy.known(*type))
      throw LoadError((dir / "lexicon.tsv").string(), 0,
                      "type '" + *type + "' of '" + e.surface + "' is not in the taxonomy");
  }
  return db;
}

const std::filesystem::path& LexicalDatabase::default_dir() {
  static const std::filesystem::path dir = [] {
    if (const char* env = std::getenv("CNL_LEXICON_DIR")) return std::filesystem::path(env);
    return std::filesystem::path(CNL_DATA_DIR) / "lexicon";
  }();
  return dir;
}

}  // namespace cnl
