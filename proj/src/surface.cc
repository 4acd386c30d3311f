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

#include "cnl/surface.h"

#include <algorithm>
#include <cctype>

namespace cnl {

namespace {

bool is_word_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '\'' || c >= 0x80;
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Length of a clock literal H:MM or H:MM:SS at `i`, or 0.
size_t clock_length(std::string_view s, size_t i) {
  size_t j = i;
  auto digits = [&](size_t min, size_t max) {
    size_t k = 0;
    while (j < s.size() && is_digit(s[j]) && k < max) {
      ++j;
      ++k;
    }
    return k >= min;
  };
  if (!digits(1, 2)) return 0;
  for (int group = 0; group < 2; ++group) {
    if (j >= s.size() || s[j] != ':') {
      if (group == 0) return 0;
      break;
    }
    size_t save = j;
    ++j;
    if (!digits(2, 2)) {
      if (group == 0) return 0;
      j = save;
      break;
    }
  }
  if (j < s.size() && is_word_char(static_cast<unsigned char>(s[j])) && s[j] != '\'')
    return 0;
  return j - i;
}

bool starts_with_ci(std::string_view s, size_t i, std::string_view prefix) {
  if (s.size() - i < prefix.size()) return false;
  for (size_t k = 0; k < prefix.size(); ++k)
    if (std::tolower(static_cast<unsigned char>(s[i + k])) != prefix[k]) return false;
  return true;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

bool is_terminator(const Token& t) {
  return t.kind == TokenKind::kPunctuation &&
         (t.text == "." || t.text == "?" || t.text == "!");
}

// "Dr." and the like: an acronym directly followed by a period that is
// not the last token.
bool abbreviation_period(const TokenStream& ts, size_t i, const AcronymLexicon* acronyms) {
  if (!acronyms || i == 0 || i + 1 >= ts.size() || ts[i].text != ".") return false;
  const Token& prev = ts[i - 1];
  if (prev.end != ts[i].begin || prev.kind != TokenKind::kWord) return false;
  const AcronymEntry* a = acronyms->find(prev.text);
  return a && a->position != AcronymPosition::kFree;
}

}  // namespace

std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::kWord: return "word";
    case TokenKind::kNumeral: return "numeral";
    case TokenKind::kTimeLiteral: return "time_literal";
    case TokenKind::kPunctuation: return "punctuation";
    case TokenKind::kFoldedAtom: return "folded_atom";
  }
  return "?";
}

std::string_view to_string(Severity s) {
  return s == Severity::kUnknownWord ? "unknown_word" : "out_of_grammar";
}

TokenStream tokenize(std::string_view s) {
  TokenStream out;
  size_t i = 0;
  auto emit = [&](size_t b, size_t e, TokenKind k) {
    out.push_back(Token{std::string(s.substr(b, e - b)), b, e, k, std::nullopt});
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (is_digit(s[i])) {
      if (size_t n = clock_length(s, i)) {
        emit(i, i + n, TokenKind::kTimeLiteral);
        i += n;
        continue;
      }
      size_t j = i;
      while (j < s.size()) {
        unsigned char d = static_cast<unsigned char>(s[j]);
        if (d == '.' && j + 1 < s.size() && is_digit(s[j + 1])) {
          ++j;
          continue;
        }
        if (!is_word_char(d) || d == '\'') break;
        ++j;
      }
      emit(i, j, TokenKind::kNumeral);
      i = j;
      continue;
    }
    if (starts_with_ci(s, i, "a.m.") || starts_with_ci(s, i, "p.m.")) {
      emit(i, i + 4, TokenKind::kWord);
      i += 4;
      continue;
    }
    if (c == '\'' && i + 1 < s.size() && (s[i + 1] == 's' || s[i + 1] == 'S') &&
        (i + 2 >= s.size() || !is_word_char(static_cast<unsigned char>(s[i + 2])))) {
      emit(i, i + 2, TokenKind::kWord);
      i += 2;
      continue;
    }
    if (is_word_char(c) && c != '\'' && c != '-') {
      size_t j = i;
      while (j < s.size() && is_word_char(static_cast<unsigned char>(s[j]))) ++j;
      // Trailing apostrophes and hyphens are not part of the word.
      while (j > i + 1 && (s[j - 1] == '\'' || s[j - 1] == '-')) --j;
      if (j - i > 2 && s[j - 2] == '\'' && (s[j - 1] == 's' || s[j - 1] == 'S')) {
        emit(i, j - 2, TokenKind::kWord);
        emit(j - 2, j, TokenKind::kWord);
      } else {
        emit(i, j, TokenKind::kWord);
      }
      i = j;
      continue;
    }
    emit(i, i + 1, TokenKind::kPunctuation);
    ++i;
  }
  return out;
}

TokenStream fold_aliases(const TokenStream& ts, const AliasLexicon& aliases) {
  TokenStream out;
  size_t first = first_word_index(ts);
  size_t i = 0;
  while (i < ts.size()) {
    const AliasEntry* hit = nullptr;
    size_t hit_len = 0;
    size_t max_len = std::min(aliases.max_length(), ts.size() - i);
    for (size_t len = max_len; len >= 1 && !hit; --len) {
      std::vector<std::string> words;
      bool ok = true;
      for (size_t k = i; k < i + len; ++k) {
        if (ts[k].kind != TokenKind::kWord) {
          ok = false;
          break;
        }
        words.push_back(ts[k].text);
      }
      if (!ok) continue;
      hit = aliases.match(words);
      if (!hit && i == first) {
        words[0] = lower(words[0]);
        hit = aliases.match(words);
      }
      if (hit) hit_len = len;
    }
    if (hit) {
      Token t{hit->atom, ts[i].begin, ts[i + hit_len - 1].end, TokenKind::kFoldedAtom,
              std::nullopt};
      out.push_back(std::move(t));
      i += hit_len;
    } else {
      out.push_back(ts[i]);
      ++i;
    }
  }
  return out;
}

TokenStream expand_acronyms(const TokenStream& ts, const AcronymLexicon& acronyms) {
  TokenStream out;
  for (size_t i = 0; i < ts.size(); ++i) {
    const Token& t = ts[i];
    if (abbreviation_period(ts, i, &acronyms)) continue;
    const AcronymEntry* a = t.kind == TokenKind::kWord ? acronyms.find(t.text) : nullptr;
    if (!a) {
      out.push_back(t);
      continue;
    }
    for (const auto& w : a->expansion) {
      TokenKind kind = w.find('_') != std::string::npos ? TokenKind::kFoldedAtom
                                                         : TokenKind::kWord;
      out.push_back(Token{w, t.begin, t.end, kind, a->position});
    }
  }
  return out;
}

bool self_evident(const Token& t) {
  return t.kind == TokenKind::kNumeral || t.kind == TokenKind::kTimeLiteral ||
         t.kind == TokenKind::kPunctuation;
}

size_t first_word_index(const TokenStream& ts) {
  for (size_t i = 0; i < ts.size(); ++i)
    if (ts[i].kind == TokenKind::kWord || ts[i].kind == TokenKind::kFoldedAtom) return i;
  return ts.size();
}

std::vector<InputDiagnostic> lexical_diagnostics(const TokenStream& ts,
                                                 const Lexicon& lex) {
  std::vector<InputDiagnostic> out;
  size_t first = first_word_index(ts);
  for (size_t i = 0; i < ts.size(); ++i) {
    const Token& t = ts[i];
    if (self_evident(t) || lex.known(t.text, i == first)) continue;
    InputDiagnostic d;
    d.severity = Severity::kUnknownWord;
    d.begin = t.begin;
    d.end = t.end;
    d.token = t.text;
    d.message = "unknown word '" + t.text + "'";
    std::vector<std::pair<size_t, std::string>> near;
    std::string probe = lower(t.text);
    std::set<std::string> surfaces;
    for (const auto& e : lex.all_forms()) surfaces.insert(e.surface);
    for (const auto& s : surfaces) {
      size_t dist = edit_distance(probe, lower(s));
      if (dist <= 2) near.emplace_back(dist, s);
    }
    std::sort(near.begin(), near.end());
    for (size_t k = 0; k < near.size() && k < 3; ++k) d.suggestions.push_back(near[k].second);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Sentence> split_sentences(const TokenStream& ts, std::string_view source,
                                      const AcronymLexicon* acronyms) {
  std::vector<Sentence> out;
  Sentence cur;
  auto flush = [&] {
    if (cur.tokens.empty()) return;
    cur.begin = cur.tokens.front().begin;
    cur.end = cur.tokens.back().end;
    if (cur.end <= source.size())
      cur.text = std::string(source.substr(cur.begin, cur.end - cur.begin));
    out.push_back(std::move(cur));
    cur = Sentence{};
  };
  for (size_t i = 0; i < ts.size(); ++i) {
    cur.tokens.push_back(ts[i]);
    if (is_terminator(ts[i]) && !abbreviation_period(ts, i, acronyms)) flush();
  }
  flush();
  return out;
}

std::vector<Paragraph> segment(std::string_view text, const AcronymLexicon* acronyms) {
  std::vector<Paragraph> out;
  size_t start = 0;
  size_t line_start = 0;
  auto close = [&](size_t end) {
    std::string_view chunk = text.substr(start, end - start);
    TokenStream ts = tokenize(chunk);
    for (auto& t : ts) {
      t.begin += start;
      t.end += start;
    }
    Paragraph p;
    p.sentences = split_sentences(ts, text, acronyms);
    if (!p.sentences.empty()) out.push_back(std::move(p));
  };
  while (line_start <= text.size()) {
    size_t nl = text.find('\n', line_start);
    size_t line_end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(line_start, line_end - line_start);
    bool blank = std::all_of(line.begin(), line.end(),
                             [](unsigned char c) { return std::isspace(c); });
    if (blank && nl != std::string_view::npos) {
      close(line_start);
      start = line_end + 1;
    }
    if (nl == std::string_view::npos) break;
    line_start = nl + 1;
  }
  if (start < text.size()) close(text.size());
  return out;
}

TokenStream prepare(std::string_view text, const LexicalDatabase& db) {
  return expand_acronyms(fold_aliases(tokenize(text), db.aliases), db.acronyms);
}

}  // namespace cnl
