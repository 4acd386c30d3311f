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

// Surface pipeline: tokenization, alias folding, acronym expansion,
// lexical prechecks and sentence/paragraph segmentation.

#ifndef CNL_SURFACE_H_
#define CNL_SURFACE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnl/lexicon.h"

namespace cnl {

enum class TokenKind { kWord, kNumeral, kTimeLiteral, kPunctuation, kFoldedAtom };
std::string_view to_string(TokenKind k);

struct Token {
  std::string text;
  size_t begin = 0;  // byte offsets into the source text
  size_t end = 0;
  TokenKind kind = TokenKind::kWord;
  // Set on tokens produced by acronym expansion.
  std::optional<AcronymPosition> position;

  bool operator==(const Token&) const = default;
};

using TokenStream = std::vector<Token>;

// Total: splits on whitespace and punctuation, keeps clock times such as
// 13:59:59 whole and splits a trailing genitive 's into its own token.
TokenStream tokenize(std::string_view text);

// Longest match, leftmost first. A sentence-initial capital is also
// tried lower-cased.
TokenStream fold_aliases(const TokenStream& ts, const AliasLexicon& aliases);
// A period written directly after a title acronym ("Dr.") is dropped.
TokenStream expand_acronyms(const TokenStream& ts, const AcronymLexicon& acronyms);

enum class Severity { kUnknownWord, kOutOfGrammar };
std::string_view to_string(Severity s);

struct InputDiagnostic {
  Severity severity = Severity::kUnknownWord;
  size_t begin = 0;
  size_t end = 0;
  std::string token;  // the offending token for unknown words
  std::string message;
  std::vector<std::string> suggestions;
};

// True for tokens that need no lexicon entry (numbers, clock times,
// punctuation).
bool self_evident(const Token& t);
// Index of the first word-like token, or ts.size().
size_t first_word_index(const TokenStream& ts);
// One unknown_word diagnostic per out-of-vocabulary token.
std::vector<InputDiagnostic> lexical_diagnostics(const TokenStream& ts,
                                                 const Lexicon& lex);

struct Sentence {
  TokenStream tokens;  // includes the terminating punctuation, if any
  size_t begin = 0;
  size_t end = 0;
  std::string text;
};

struct Paragraph {
  std::vector<Sentence> sentences;
};

// Splits on blank lines, then on . ? ! tokens. A period attached to a
// known acronym does not end a sentence.
std::vector<Paragraph> segment(std::string_view text,
                               const AcronymLexicon* acronyms = nullptr);
std::vector<Sentence> split_sentences(const TokenStream& ts, std::string_view source,
                                      const AcronymLexicon* acronyms = nullptr);

// Tokenize, fold aliases, then expand acronyms.
TokenStream prepare(std::string_view text, const LexicalDatabase& db);

}  // namespace cnl

#endif  // CNL_SURFACE_H_
