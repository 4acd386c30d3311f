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

// Lexical database: word-form entries with part of speech and feature
// bundles, inflection, adjective ordering, and the alias, acronym and
// taxonomy sub-lexicons.

#ifndef CNL_LEXICON_H_
#define CNL_LEXICON_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cnl {

enum class Pos {
  kCommonNoun,
  kProperNoun,
  kPronoun,
  kMainVerb,
  kAuxiliary,
  kModal,
  kAdjective,
  kArticle,
  kCardinal,
  kOrdinal,
  kPreposition,
  kConjunction,
  kWhWord,
  kDirectional,
  kAdverb,
};

std::string_view to_string(Pos pos);
std::optional<Pos> pos_from_string(std::string_view text);
bool is_noun(Pos pos);
bool is_verb(Pos pos);

// Declared in precedence order: an attributive sequence must not
// decrease under this ordering.
enum class AdjClass {
  kOrdinal,
  kNoun,
  kSubjective,
  kEvaluative,
  kObjective,
  kAmplifier,
  kWeak,
  kSize,
  kGirth,
  kHeight,
  kShape,
  kAge,
  kCentury,
  kParticiple,
  kColour,
  kCompass,
  kProvenance,
  kReligion,
  kDenominal,
};

inline constexpr int kAdjClassCount = 19;
int precedence(AdjClass c);
std::string_view to_string(AdjClass c);
std::optional<AdjClass> adj_class_from_string(std::string_view text);
bool adjective_order_valid(std::span<const AdjClass> classes);

// Key/value features; a value may hold a comma-separated list.
class FeatureBundle {
 public:
  std::optional<std::string> get(std::string_view key) const;
  std::string get_or(std::string_view key, std::string_view fallback) const;
  bool has(std::string_view key) const;
  // True if the (possibly list-valued) feature contains `value`.
  bool has(std::string_view key, std::string_view value) const;
  void set(std::string key, std::string value);
  void erase(std::string_view key);
  const std::map<std::string, std::string, std::less<>>& values() const {
    return values_;
  }
  std::string to_string() const;

  bool operator==(const FeatureBundle&) const = default;
  auto operator<=>(const FeatureBundle&) const = default;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

struct LexEntry {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::kCommonNoun;
  FeatureBundle features;

  bool operator==(const LexEntry&) const = default;
  auto operator<=>(const LexEntry&) const = default;
};

class LoadError : public std::runtime_error {
 public:
  LoadError(std::string source, size_t line, const std::string& message);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Inflection tables.
enum class VerbForm { kPresent, kThirdSingular, kPast, kIng };
std::string_view to_string(VerbForm f);
std::optional<VerbForm> verb_form_from_string(std::string_view text);
std::string plural_of(std::string_view noun);
std::string verb_form(std::string_view lemma, VerbForm form);
// All inflected entries derivable from one base entry, the base included.
std::vector<LexEntry> inflect(const LexEntry& base);
// Recomputes the surface of an inflected entry from lemma and features.
std::string reinflect(const LexEntry& entry);

class Lexicon {
 public:
  Lexicon() = default;
  // Format: surface<TAB>lemma<TAB>pos<TAB>key=value;key=value, '#' comments.
  static Lexicon parse(std::string_view content, std::string_view source = "lexicon");
  static Lexicon load(const std::filesystem::path& file);

  // Entries for a token. Proper nouns match case-sensitively; other parts of
  // speech also match a lower-cased token when `sentence_initial`.
  std::vector<LexEntry> lookup(std::string_view surface,
                               bool sentence_initial = false) const;
  bool known(std::string_view surface, bool sentence_initial = false) const;
  // First base entry with this lemma and part of speech.
  const LexEntry* find_lemma(std::string_view lemma, Pos pos) const;
  // Any entry whose surface or lemma equals `atom`.
  bool resident(std::string_view atom) const;

  const std::vector<LexEntry>& base_entries() const { return base_; }
  size_t form_count() const { return forms_.size(); }
  std::set<LexEntry> all_forms() const;

 private:
  void add(const LexEntry& base);

  std::vector<LexEntry> base_;
  std::unordered_map<std::string, std::vector<LexEntry>> forms_;
};

enum class AcronymPosition { kPreNominal, kPostNominal, kFree };
std::string_view to_string(AcronymPosition p);

struct AcronymEntry {
  std::string acronym;
  std::vector<std::string> expansion;
  AcronymPosition position = AcronymPosition::kFree;
};

class AcronymLexicon {
 public:
  static AcronymLexicon parse(std::string_view content,
                              std::string_view source = "acronyms");
  const AcronymEntry* find(std::string_view acronym) const;
  const std::vector<AcronymEntry>& entries() const { return entries_; }

 private:
  std::vector<AcronymEntry> entries_;
  std::map<std::string, size_t, std::less<>> index_;
};

struct AliasEntry {
  std::vector<std::string> surface;
  std::string atom;
};

class AliasLexicon {
 public:
  static AliasLexicon parse(std::string_view content,
                            std::string_view source = "aliases");
  const std::vector<AliasEntry>& entries() const { return entries_; }
  // Length of the longest surface sequence.
  size_t max_length() const { return max_length_; }
  // Atom for an exact token sequence.
  const AliasEntry* match(std::span<const std::string> tokens) const;
  // Surface words for an atom, if it is an alias target.
  const AliasEntry* reverse(std::string_view atom) const;

 private:
  std::vector<AliasEntry> entries_;
  std::map<std::vector<std::string>, size_t> index_;
  std::map<std::string, size_t, std::less<>> reverse_;
  size_t max_length_ = 0;
};

// Shallow is-a hierarchy over entity types (the noun feature "type").
class Taxonomy {
 public:
  static Taxonomy parse(std::string_view content, std::string_view source = "taxonomy");
  bool is_a(std::string_view type, std::string_view ancestor) const;
  std::optional<std::string> parent(std::string_view type) const;
  bool known(std::string_view type) const;

 private:
  std::map<std::string, std::string, std::less<>> parent_;
};

struct LexicalDatabase {
  Lexicon lexicon;
  AcronymLexicon acronyms;
  AliasLexicon aliases;
  Taxonomy taxonomy;

  // Reads lexicon.tsv, acronyms.tsv, aliases.tsv and taxonomy.tsv from
  // `dir` and cross-validates alias atoms and acronym expansions.
  static LexicalDatabase load(const std::filesystem::path& dir);
  static const std::filesystem::path& default_dir();
};

}  // namespace cnl

#endif  // CNL_LEXICON_H_
