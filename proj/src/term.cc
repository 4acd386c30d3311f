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

#include "cnl/term.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <tuple>

namespace cnl {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool needs_quotes(const std::string& name) {
  if (name == "...") return false;
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
    return true;
  if (!std::all_of(name.begin(), name.end(), is_ident_char)) return true;
  return symbol_class(name).has_value();
}

}  // namespace

std::optional<SymbolClass> symbol_class(std::string_view name) {
  if (name.size() > 3 && name.substr(0, 3) == "skc" &&
      all_digits(name.substr(3)))
    return SymbolClass::kSkolem;
  if (name.size() > 2 && name.substr(0, 2) == "t_" && all_digits(name.substr(2)))
    return SymbolClass::kTime;
  if (name.size() > 2 && name.substr(0, 2) == "s_" && all_digits(name.substr(2)))
    return SymbolClass::kSpace;
  return std::nullopt;
}

Term Term::atom(std::string name) {
  Term t;
  t.kind = TermKind::kAtom;
  t.name = std::move(name);
  return t;
}

Term Term::integer(int64_t value) {
  Term t;
  t.kind = TermKind::kInteger;
  t.value = value;
  return t;
}

Term Term::number(std::string literal) {
  Term t;
  t.kind = TermKind::kNumber;
  t.name = std::move(literal);
  return t;
}

Term Term::symbol(std::string name) {
  Term t;
  t.kind = TermKind::kSymbol;
  t.name = std::move(name);
  return t;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  Term t;
  t.kind = TermKind::kCompound;
  t.name = std::move(functor);
  t.args = std::move(args);
  return t;
}

Term Term::list(std::vector<Term> items) {
  Term t;
  t.kind = TermKind::kList;
  t.args = std::move(items);
  return t;
}

Term Term::at(Term label, Term time, Term space) {
  Term t;
  t.kind = TermKind::kAt;
  t.args = {std::move(label), std::move(time), std::move(space)};
  return t;
}

Term Term::negation(Term body) {
  Term t;
  t.kind = TermKind::kNegation;
  t.args = {std::move(body)};
  return t;
}

Term Term::implication(Term lhs, Term rhs) {
  Term t;
  t.kind = TermKind::kImplication;
  t.args = {std::move(lhs), std::move(rhs)};
  return t;
}

Term Term::conjunction(std::vector<Term> items) {
  std::vector<Term> flat;
  for (auto& item : items) {
    if (item.kind == TermKind::kConjunction) {
      for (auto& inner : item.args) flat.push_back(std::move(inner));
    } else {
      flat.push_back(std::move(item));
    }
  }
  if (flat.size() == 1) return std::move(flat.front());
  Term t;
  t.kind = TermKind::kConjunction;
  t.args = std::move(flat);
  return t;
}

Term Term::identical(Term a, Term b) {
  Term t;
  t.kind = TermKind::kIdentical;
  t.args = {std::move(a), std::move(b)};
  return t;
}

Term Term::identifier(std::string name) {
  if (symbol_class(name)) return symbol(std::move(name));
  return atom(std::move(name));
}

bool operator==(const Term& a, const Term& b) {
  return a.kind == b.kind && a.name == b.name && a.value == b.value &&
         a.args == b.args;
}

bool operator<(const Term& a, const Term& b) {
  return std::tie(a.kind, a.name, a.value, a.args) <
         std::tie(b.kind, b.name, b.value, b.args);
}

TermSyntaxError::TermSyntaxError(size_t position, const std::string& message)
    : std::runtime_error("term syntax error at " + std::to_string(position) +
                         ": " + message),
      position_(position) {}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_into(const Term& t, std::string* out);

void print_args(const std::vector<Term>& args, std::string* out) {
  for (size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out->push_back(',');
    print_into(args[i], out);
  }
}

void print_operand(const Term& t, bool wrap, std::string* out) {
  if (wrap) out->push_back('(');
  print_into(t, out);
  if (wrap) out->push_back(')');
}

void print_into(const Term& t, std::string* out) {
  switch (t.kind) {
    case TermKind::kAtom:
      if (needs_quotes(t.name)) {
        out->push_back('\'');
        for (char c : t.name) {
          if (c == '\'' || c == '\\') out->push_back('\\');
          out->push_back(c);
        }
        out->push_back('\'');
      } else {
        out->append(t.name);
      }
      break;
    case TermKind::kInteger:
      out->append(std::to_string(t.value));
      break;
    case TermKind::kNumber:
    case TermKind::kSymbol:
      out->append(t.name);
      break;
    case TermKind::kCompound:
      print_into(Term::atom(t.name), out);
      out->push_back('(');
      print_args(t.args, out);
      out->push_back(')');
      break;
    case TermKind::kList:
      out->push_back('[');
      print_args(t.args, out);
      out->push_back(']');
      break;
    case TermKind::kAt:
      out->append("@(");
      print_args(t.args, out);
      out->push_back(')');
      break;
    case TermKind::kIdentical:
      out->append("identical[");
      print_args(t.args, out);
      out->push_back(']');
      break;
    case TermKind::kNegation: {
      const Term& body = t.args[0];
      out->push_back('~');
      print_operand(body,
                    body.kind == TermKind::kImplication ||
                        body.kind == TermKind::kConjunction,
                    out);
      break;
    }
    case TermKind::kImplication: {
      const Term& lhs = t.args[0];
      const Term& rhs = t.args[1];
      print_operand(lhs,
                    lhs.kind == TermKind::kImplication ||
                        lhs.kind == TermKind::kConjunction,
                    out);
      out->append(" => ");
      print_operand(rhs, rhs.kind == TermKind::kConjunction, out);
      break;
    }
    case TermKind::kConjunction:
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i > 0) out->append(" & ");
        print_operand(t.args[i], t.args[i].kind == TermKind::kImplication,
                      out);
      }
      break;
  }
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, &out);
  return out;
}

std::string print_form(const MephistoForm& form) {
  std::string out;
  for (size_t i = 0; i < form.size(); ++i) {
    if (i > 0) out.push_back(',');
    print_into(form[i], &out);
  }
  out.push_back('.');
  return out;
}

// ---------------------------------------------------------------------------
// Reading

namespace {

class TermReader {
 public:
  explicit TermReader(std::string_view text) : text_(text) {}

  Term read_single() {
    Term t = parse_term();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      skip_ws();
    }
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

  MephistoForm read_form() {
    MephistoForm form;
    skip_ws();
    if (pos_ == text_.size()) return form;
    form.push_back(parse_term());
    while (true) {
      skip_ws();
      if (pos_ == text_.size()) break;
      char c = text_[pos_];
      if (c == ',') {
        ++pos_;
        form.push_back(parse_term());
      } else if (c == '.') {
        ++pos_;
        skip_ws();
        if (pos_ != text_.size()) fail("input after form terminator");
        break;
      } else {
        fail(std::string("expected ',' or '.' but found '") + c + "'");
      }
    }
    return form;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw TermSyntaxError(pos_, message);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool consume(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!consume(token)) fail("expected '" + std::string(token) + "'");
  }

  Term parse_term() {
    Term lhs = parse_conj();
    if (consume("=>")) {
      Term rhs = parse_term();
      return Term::implication(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Term parse_conj() {
    std::vector<Term> items;
    items.push_back(parse_unary());
    while (consume("&")) items.push_back(parse_unary());
    if (items.size() == 1) return std::move(items.front());
    return Term::conjunction(std::move(items));
  }

  Term parse_unary() {
    if (consume("~")) return Term::negation(parse_unary());
    return parse_primary();
  }

  std::vector<Term> parse_args(char close) {
    std::vector<Term> args;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == close) {
      ++pos_;
      return args;
    }
    while (true) {
      args.push_back(parse_term());
      skip_ws();
      if (pos_ >= text_.size()) fail("unexpected end of input in argument list");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == close) {
        ++pos_;
        return args;
      }
      fail(std::string("expected ',' or '") + close + "'");
    }
  }

  Term parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term inner = parse_term();
      expect(")");
      return inner;
    }
    if (c == '[') {
      ++pos_;
      return Term::list(parse_args(']'));
    }
    if (c == '@') {
      ++pos_;
      expect("(");
      size_t start = pos_;
      auto args = parse_args(')');
      if (args.size() != 3) {
        pos_ = start;
        fail("@-term must have exactly 3 arguments");
      }
      return Term::at(std::move(args[0]), std::move(args[1]),
                      std::move(args[2]));
    }
    if (text_.substr(pos_, 3) == "...") {
      pos_ += 3;
      return Term::atom("...");
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      return parse_number();
    }
    if (c == '\'') {
      std::string name = parse_quoted();
      if (consume("(")) return Term::compound(std::move(name), parse_args(')'));
      return Term::atom(std::move(name));
    }
    if (is_ident_start(c)) {
      size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (pos_ < text_.size() && text_[pos_] == '(') {
        if (symbol_class(name)) fail("symbol '" + name + "' used as functor");
        ++pos_;
        return Term::compound(std::move(name), parse_args(')'));
      }
      if (name == "identical" && pos_ < text_.size() && text_[pos_] == '[') {
        ++pos_;
        size_t args_start = pos_;
        auto args = parse_args(']');
        if (args.size() != 2) {
          pos_ = args_start;
          fail("identical[...] takes exactly 2 arguments");
        }
        return Term::identical(std::move(args[0]), std::move(args[1]));
      }
      if (pos_ < text_.size() && text_[pos_] == '[')
        fail("'[' after atom '" + name + "'");
      return Term::identifier(std::move(name));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Term parse_number() {
    size_t start = pos_;
    if (text_[pos_] == '-') ++pos_;
    size_t digits = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == digits) fail("expected digits");
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      return Term::number(std::string(text_.substr(start, pos_ - start)));
    }
    return Term::integer(std::stoll(std::string(text_.substr(start, pos_ - start))));
  }

  std::string parse_quoted() {
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '\'') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out.push_back(text_[pos_++]);
    }
    if (pos_ >= text_.size()) fail("unterminated quoted atom");
    ++pos_;
    return out;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

Term read_term(std::string_view text) { return TermReader(text).read_single(); }

MephistoForm read_form(std::string_view text) {
  return TermReader(text).read_form();
}

// ---------------------------------------------------------------------------
// Utilities

bool contains_symbols(const Term& t) {
  if (t.kind == TermKind::kSymbol || t.kind == TermKind::kAt) return true;
  return std::any_of(t.args.begin(), t.args.end(), contains_symbols);
}

bool is_feature_list(const Term& t) {
  return t.kind == TermKind::kList && !contains_symbols(t);
}

void collect_symbols(const Term& t, std::set<std::string>* out) {
  if (t.kind == TermKind::kSymbol) out->insert(t.name);
  for (const auto& a : t.args) collect_symbols(a, out);
}

Term substitute(const Term& t, const std::map<std::string, Term>& bindings) {
  if (t.kind == TermKind::kSymbol) {
    auto it = bindings.find(t.name);
    return it == bindings.end() ? t : it->second;
  }
  Term out = t;
  for (auto& a : out.args) a = substitute(a, bindings);
  return out;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace {

enum class AnnotationKind { kNone, kAnimacy, kGender, kTemporal };

AnnotationKind annotation_kind(const Term& clause) {
  if (clause.kind != TermKind::kCompound) return AnnotationKind::kNone;
  const std::string& f = clause.name;
  if (clause.args.size() == 1 && clause.args[0].kind == TermKind::kAt) {
    if (f == "animate" || f == "inanimate") return AnnotationKind::kAnimacy;
    if (f == "female" || f == "male" || f == "neuter")
      return AnnotationKind::kGender;
  }
  if ((f == "before" || f == "after" || f == "during") &&
      clause.args.size() == 2 && clause.args[0].is_symbol())
    return AnnotationKind::kTemporal;
  return AnnotationKind::kNone;
}

// Cheap shape key used to prune candidate pairings.
std::string shape_key(const Term& t) {
  std::string key = std::to_string(static_cast<int>(t.kind));
  if (t.kind == TermKind::kCompound || t.kind == TermKind::kAtom) key += t.name;
  if (t.kind != TermKind::kList) key += "/" + std::to_string(t.args.size());
  if (t.kind == TermKind::kNegation) key += shape_key(t.args[0]);
  return key;
}

class AlphaMatcher {
 public:
  explicit AlphaMatcher(const AlphaOptions& options) : options_(options) {}

  using Cont = std::function<bool()>;

  bool match(const Term& a, const Term& b, const Cont& k) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case TermKind::kAtom:
      case TermKind::kNumber:
        return a.name == b.name && k();
      case TermKind::kInteger:
        return a.value == b.value && k();
      case TermKind::kSymbol: {
        size_t mark = trail_.size();
        if (!bind(a.name, b.name)) return false;
        if (k()) return true;
        undo(mark);
        return false;
      }
      case TermKind::kCompound:
        if (a.name != b.name || a.args.size() != b.args.size()) return false;
        return match_seq(a.args, b.args, 0, k);
      case TermKind::kList:
        if (is_feature_list(a) && is_feature_list(b))
          return features_match(a, b) && k();
        if (a.args.size() != b.args.size()) return false;
        return match_seq(a.args, b.args, 0, k);
      case TermKind::kAt:
      case TermKind::kIdentical:
      case TermKind::kNegation:
      case TermKind::kImplication:
        if (a.args.size() != b.args.size()) return false;
        return match_seq(a.args, b.args, 0, k);
      case TermKind::kConjunction: {
        if (a.args.size() != b.args.size()) return false;
        std::vector<const Term*> as, bs;
        for (const auto& t : a.args) as.push_back(&t);
        for (const auto& t : b.args) bs.push_back(&t);
        return match_bag(as, bs, k);
      }
    }
    return false;
  }

  bool match_bag(std::vector<const Term*> as, std::vector<const Term*> bs,
                 const Cont& k) {
    if (as.empty()) return bs.empty() && k();
    const Term* head = as.back();
    as.pop_back();
    std::string key = shape_key(*head);
    for (size_t j = 0; j < bs.size(); ++j) {
      if (shape_key(*bs[j]) != key) continue;
      std::vector<const Term*> rest = bs;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      if (match(*head, *bs[j], [&] { return match_bag(as, rest, k); }))
        return true;
    }
    return false;
  }

 private:
  bool match_seq(const std::vector<Term>& a, const std::vector<Term>& b,
                 size_t i, const Cont& k) {
    if (i == a.size()) return k();
    return match(a[i], b[i], [&] { return match_seq(a, b, i + 1, k); });
  }

  bool features_match(const Term& a, const Term& b) const {
    std::set<std::string> fa, fb;
    for (const auto& t : a.args) fa.insert(print_term(t));
    for (const auto& t : b.args) {
      if (options_.feature_superset && t.is_atom("...")) continue;
      fb.insert(print_term(t));
    }
    if (options_.feature_superset)
      return std::includes(fa.begin(), fa.end(), fb.begin(), fb.end());
    return fa == fb;
  }

  bool bind(const std::string& a, const std::string& b) {
    if (symbol_class(a) != symbol_class(b)) return false;
    auto it = forward_.find(a);
    if (it != forward_.end()) return it->second == b;
    if (backward_.count(b)) return false;
    forward_[a] = b;
    backward_[b] = a;
    trail_.push_back(a);
    return true;
  }

  void undo(size_t mark) {
    while (trail_.size() > mark) {
      const std::string& a = trail_.back();
      backward_.erase(forward_[a]);
      forward_.erase(a);
      trail_.pop_back();
    }
  }

  const AlphaOptions& options_;
  std::map<std::string, std::string> forward_;
  std::map<std::string, std::string> backward_;
  std::vector<std::string> trail_;
};

}  // namespace

bool alpha_equal(const MephistoForm& a, const MephistoForm& b,
                 const AlphaOptions& options) {
  std::vector<const Term*> as, bs;
  std::set<AnnotationKind> present_in_b;
  for (const auto& t : b) {
    bs.push_back(&t);
    present_in_b.insert(annotation_kind(t));
  }
  for (const auto& t : a) {
    AnnotationKind kind = annotation_kind(t);
    if (options.ignore_absent_annotation_kinds && kind != AnnotationKind::kNone &&
        !present_in_b.count(kind))
      continue;
    as.push_back(&t);
  }
  if (as.size() != bs.size()) return false;
  AlphaMatcher matcher(options);
  return matcher.match_bag(as, bs, [] { return true; });
}

bool alpha_equal_terms(const Term& a, const Term& b,
                       const AlphaOptions& options) {
  AlphaMatcher matcher(options);
  return matcher.match(a, b, [] { return true; });
}

}  // namespace cnl
