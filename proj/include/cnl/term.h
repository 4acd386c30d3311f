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

// Mephisto logical terms: construction, textual serialization, and
// alpha-equivalence modulo renaming of skolem, time and space symbols.
//
// Text grammar (whitespace is insignificant outside quotes):
//
//   form    := term (',' term)* '.'?
//   term    := conj ('=>' term)?
//   conj    := unary ('&' unary)*
//   unary   := '~' unary | primary
//   primary := '(' term ')' | '[' args? ']' | '@(' term ',' term ',' term ')'
//            | 'identical[' term ',' term ']' | atom ('(' args ')')?
//            | integer | decimal | '...'
//
// Atoms are identifiers or single-quoted strings. Identifiers of the form
// skcN, t_N and s_N are symbols, everything else is an atom.

#ifndef CNL_TERM_H_
#define CNL_TERM_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cnl {

enum class TermKind {
  kAtom,
  kInteger,
  kNumber,       // decimal literal, kept as text
  kSymbol,       // skcN, t_N or s_N
  kCompound,     // functor(args)
  kList,         // [args]
  kAt,           // @(label, time, space)
  kNegation,     // ~term
  kImplication,  // lhs => rhs
  kConjunction,  // a & b & ...
  kIdentical,    // identical[a, b]
};

enum class SymbolClass { kSkolem, kTime, kSpace };

// Classifies an identifier as a renamable symbol, if it is one.
std::optional<SymbolClass> symbol_class(std::string_view name);

struct Term {
  TermKind kind = TermKind::kAtom;
  std::string name;  // atom text, functor, symbol name or decimal literal
  int64_t value = 0;
  std::vector<Term> args;

  static Term atom(std::string name);
  static Term integer(int64_t value);
  static Term number(std::string literal);
  static Term symbol(std::string name);
  static Term compound(std::string functor, std::vector<Term> args);
  static Term list(std::vector<Term> items);
  static Term at(Term label, Term time, Term space);
  static Term negation(Term body);
  static Term implication(Term lhs, Term rhs);
  static Term conjunction(std::vector<Term> items);
  static Term identical(Term a, Term b);
  // Atom or symbol depending on the spelling of `name`.
  static Term identifier(std::string name);

  bool is_atom(std::string_view n) const {
    return kind == TermKind::kAtom && name == n;
  }
  bool is_compound(std::string_view functor) const {
    return kind == TermKind::kCompound && name == functor;
  }
  bool is_symbol() const { return kind == TermKind::kSymbol; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b);
};

// A Mephisto form is a conjunction of top-level clauses.
using MephistoForm = std::vector<Term>;

class TermSyntaxError : public std::runtime_error {
 public:
  TermSyntaxError(size_t position, const std::string& message);
  size_t position() const { return position_; }

 private:
  size_t position_;
};

std::string print_term(const Term& t);
// Clauses joined by ',' and terminated with '.'.
std::string print_form(const MephistoForm& form);

Term read_term(std::string_view text);
MephistoForm read_form(std::string_view text);

// True if the term contains no symbols and no @-terms, i.e. it is a
// bracketed list of linguistic features such as [definite,singular].
bool is_feature_list(const Term& t);
bool contains_symbols(const Term& t);
void collect_symbols(const Term& t, std::set<std::string>* out);
Term substitute(const Term& t, const std::map<std::string, Term>& bindings);

// Monotone per-session allocator for fresh skcN, t_N and s_N symbols.
class SymbolTable {
 public:
  std::string next_skolem() { return "skc" + std::to_string(++skolems_); }
  std::string next_time() { return "t_" + std::to_string(++times_); }
  std::string next_space() { return "s_" + std::to_string(++spaces_); }

  int skolem_count() const { return skolems_; }
  int time_count() const { return times_; }
  int space_count() const { return spaces_; }

 private:
  int skolems_ = 0;
  int times_ = 0;
  int spaces_ = 0;
};

struct AlphaOptions {
  // Feature lists in `b` may be a subset of those in `a`; the ellipsis
  // atom `...` in `b` is ignored.
  bool feature_superset = false;
  // When `b` has no clause of a given annotation kind (animacy, gender,
  // temporal constraint), clauses of that kind in `a` are not compared.
  bool ignore_absent_annotation_kinds = false;
};

// True iff a consistent bijective renaming of skcN/t_N/s_N symbols maps
// `a` onto `b`, insensitive to clause order and conjunct order, with
// feature lists compared as sets.
bool alpha_equal(const MephistoForm& a, const MephistoForm& b,
                 const AlphaOptions& options = {});
bool alpha_equal_terms(const Term& a, const Term& b,
                       const AlphaOptions& options = {});

// Matching options for comparing translator output against hand-copied
// reference forms whose feature lists and side clauses were elided.
inline AlphaOptions golden_tolerance() {
  return AlphaOptions{.feature_superset = true,
                      .ignore_absent_annotation_kinds = true};
}

}  // namespace cnl

#endif  // CNL_TERM_H_
