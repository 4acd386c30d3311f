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

#include "cnl/parser.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

#include "cnl/errors.h"

namespace cnl {

const Node* Node::child(std::string_view l) const {
  for (const auto& k : kids)
    if (k.label == l) return &k;
  return nullptr;
}

const Node* Node::with_role(std::string_view r) const {
  for (const auto& k : kids)
    if (k.role == r) return &k;
  return nullptr;
}

std::vector<const Node*> Node::all_with_role(std::string_view r) const {
  std::vector<const Node*> out;
  for (const auto& k : kids)
    if (k.role == r) out.push_back(&k);
  return out;
}

std::string_view to_string(SentenceKind k) {
  switch (k) {
    case SentenceKind::kDeclarative: return "declarative";
    case SentenceKind::kInterrogative: return "interrogative";
    case SentenceKind::kDirective: return "directive";
    case SentenceKind::kIndirect: return "indirect";
  }
  return "?";
}

std::string_view to_string(QuerySlot s) {
  switch (s) {
    case QuerySlot::kSubject: return "subject";
    case QuerySlot::kObject: return "object";
    case QuerySlot::kPredicate: return "predicate";
    case QuerySlot::kTemporal: return "temporal";
    case QuerySlot::kLocational: return "locational";
    case QuerySlot::kYesNo: return "yes_no";
  }
  return "?";
}

namespace {

void render(const Node& n, int depth, std::string* out) {
  out->append("(").append(n.label);
  if (n.kids.empty()) {
    if (!n.word.empty()) out->append(" ").append(n.word);
    out->append(")");
    return;
  }
  bool flat = std::all_of(n.kids.begin(), n.kids.end(),
                          [](const Node& k) { return k.kids.empty(); });
  for (const auto& k : n.kids) {
    if (flat) {
      out->append(" ");
    } else {
      out->append("\n").append(static_cast<size_t>(depth + 1) * 2, ' ');
    }
    render(k, depth + 1, out);
  }
  out->append(")");
}

}  // namespace

std::string ParseTree::bracketed() const {
  std::string out;
  render(root, 0, &out);
  return out;
}

QueryFocus parse_query_focus(const ParseTree& tree) {
  if (tree.kind != SentenceKind::kInterrogative || !tree.focus)
    throw ContractViolation("parse_query_focus: tree is not interrogative");
  return *tree.focus;
}

namespace {

constexpr size_t kCap = Parser::kMaxTrees;
constexpr int kMaxGenitiveDepth = 5;

struct Span {
  Node node;
  size_t end = 0;
};
using Spans = std::vector<Span>;

enum class Case { kNominative, kAccusative, kAny };

// NP parse flags.
constexpr int kNoWidePP = 1;  // no PP attached to a whole conjunction
constexpr int kPpObject = 2;  // object of a preposition: no time-typed heads

struct AdjunctState {
  bool main_time = false;
  bool before = false;
  bool after = false;
  bool freq = false;
  bool dir = false;
  int pps = 0;
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

Node branch(std::string label, std::vector<Node> kids, std::string role = {}) {
  Node n;
  n.label = std::move(label);
  n.role = std::move(role);
  n.kids = std::move(kids);
  return n;
}

void copy_feature(const FeatureBundle& from, std::string_view key, FeatureBundle* to) {
  if (auto v = from.get(key)) to->set(std::string(key), *v);
}

bool agrees(const LexEntry& verb, const FeatureBundle& subj) {
  std::string agr = verb.features.get_or("agreement", "any");
  std::string num = subj.get_or("number", "singular");
  std::string person = subj.get_or("person", "3");
  if (agr == "any") return true;
  if (agr == "3sg") return num == "singular" && person == "3";
  if (agr == "non3sg") return num == "plural" || person != "3";
  if (agr == "1sg") return num == "singular" && person == "1";
  if (agr == "sg") return num == "singular";
  if (agr == "pl") return num == "plural" || person == "2";
  return false;
}

bool finite(const LexEntry& v) {
  std::string vf = v.features.get_or("vform", "");
  return vf == "3sg" || vf == "present" || vf == "past";
}

bool base_form(const LexEntry& v) {
  std::string vf = v.features.get_or("vform", "");
  if (v.lemma == "be") return vf == "base";
  return vf == "present" && v.surface == v.lemma;
}

std::string tense_of(const LexEntry& v) {
  if (v.pos == Pos::kModal) return v.features.get_or("tense", "present");
  return v.features.get_or("tense", "present");
}

class Grammar {
 public:
  Grammar(const LexicalDatabase& db, const TokenStream& ts, const TimeContext& tc)
      : db_(db), ts_(ts), tc_(tc) {
    n_ = ts.size();
    if (n_ > 0 && ts[n_ - 1].kind == TokenKind::kPunctuation &&
        (ts[n_ - 1].text == "." || ts[n_ - 1].text == "?" || ts[n_ - 1].text == "!")) {
      terminal_ = ts[n_ - 1].text;
      --n_;
    }
    size_t first = first_word_index(ts);
    entries_.resize(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
      const Token& t = ts[i];
      if (t.kind == TokenKind::kNumeral && all_digits(t.text) && t.text.size() <= 6) {
        LexEntry e{t.text, t.text, Pos::kCardinal, {}};
        e.features.set("value", t.text);
        e.features.set("number", t.text == "1" ? "singular" : "plural");
        entries_[i].push_back(std::move(e));
      } else if (t.kind == TokenKind::kWord || t.kind == TokenKind::kFoldedAtom) {
        entries_[i] = db.lexicon.lookup(t.text, i == first);
      }
    }
  }

  std::vector<ParseTree> sentences() {
    std::vector<ParseTree> out;
    if (n_ == 0) return out;
    if (terminal_ != "?") {
      declaratives(&out);
      conditionals(&out);
      directives(&out);
    }
    if (terminal_ == "?" || terminal_.empty()) questions(&out);
    std::vector<ParseTree> unique;
    for (auto& t : out) {
      if (std::find(unique.begin(), unique.end(), t) == unique.end())
        unique.push_back(std::move(t));
      if (unique.size() >= kCap) break;
    }
    return unique;
  }

 private:
  // Lexical access.

  std::vector<const LexEntry*> at(size_t i, Pos pos) const {
    std::vector<const LexEntry*> out;
    if (i >= n_) return out;
    for (const auto& e : entries_[i])
      if (e.pos == pos) out.push_back(&e);
    return out;
  }

  const LexEntry* word(size_t i, Pos pos, std::string_view lemma) const {
    for (const auto* e : at(i, pos))
      if (e->lemma == lemma) return e;
    return nullptr;
  }

  const LexEntry* kind(size_t i, Pos pos, std::string_view k) const {
    for (const auto* e : at(i, pos))
      if (e->features.has("kind", k)) return e;
    return nullptr;
  }

  // Tokens expanded from a positional acronym may only fill that position.
  bool positional(size_t i) const {
    return i < ts_.size() && ts_[i].position &&
           *ts_[i].position != AcronymPosition::kFree;
  }

  Node leaf(std::string label, size_t i, const LexEntry* e, std::string role = {}) const {
    Node n;
    n.label = std::move(label);
    n.role = std::move(role);
    n.word = ts_[i].text;
    n.token = static_cast<int>(i);
    if (e) n.entry = *e;
    return n;
  }

  // Noun phrases.

  Spans np(size_t i, Case c, int flags) {
    auto key = std::make_tuple(i, static_cast<int>(c), flags);
    if (auto it = np_memo_.find(key); it != np_memo_.end()) return it->second;
    Spans out;
    Spans heads = enp(i, c, flags);
    for (const auto& h : heads) {
      Node n = branch("NP", {h.node});
      n.feats = h.node.feats;
      out.push_back({std::move(n), h.end});
    }
    for (const auto& h : heads) {
      const LexEntry* conj = kind(h.end, Pos::kConjunction, "coordinating");
      if (!conj || conj->lemma != "and") continue;
      for (const auto& rest : np(h.end + 1, c, flags | kNoWidePP)) {
        const Node& inner = rest.node.kids.front();
        Node npc = branch("NPC", {h.node, leaf("CONJ", h.end, conj), inner});
        npc.feats.set("number", "plural");
        npc.feats.set("person", "3");
        npc.feats.set("conj", conj->lemma);
        std::string g1 = h.node.feats.get_or("gender", "");
        std::string g2 = inner.feats.get_or("gender", "");
        if (!g1.empty() && g1 == g2) npc.feats.set("gender", g1);
        if (h.node.feats.has("animacy", "animate") && inner.feats.has("animacy", "animate"))
          npc.feats.set("animacy", "animate");
        Node whole = branch("NP", {npc});
        whole.feats = npc.feats;
        out.push_back({whole, rest.end});
        if (!(flags & kNoWidePP)) {
          for (auto& pp : this->pp(rest.end, flags)) {
            Node wide = whole;
            pp.node.role = "postmod";
            wide.kids.push_back(branch("POSTMOD", {pp.node}, "postmod"));
            out.push_back({std::move(wide), pp.end});
          }
        }
        if (out.size() >= kCap) break;
      }
    }
    if (out.size() > kCap) out.resize(kCap);
    np_memo_[key] = out;
    return out;
  }

  Spans enp(size_t i, Case c, int flags) {
    Spans out;
    if (i >= n_) return out;
    // Pronouns.
    for (const auto* e : at(i, Pos::kPronoun)) {
      if (positional(i)) break;
      bool ok = c == Case::kAny ||
                e->features.has("case", c == Case::kNominative ? "nominative" : "accusative");
      if (!ok) continue;
      Node n = branch("ENP", {leaf("PRON", i, e)});
      n.feats.set("definiteness", "pronoun");
      for (auto key : {"number", "person", "gender", "animacy", "kind", "type"})
        copy_feature(e->features, key, &n.feats);
      out.push_back({std::move(n), i + 1});
    }
    std::vector<Span> owners = proper_spans(i);
    out.insert(out.end(), owners.begin(), owners.end());
    // Determiner + NP2.
    for (const auto* d : at(i, Pos::kArticle)) {
      if (d->features.has("kind", "genitive") || positional(i)) continue;
      for (bool postmod : {false, true}) {
        for (auto& n2 : np2(i + 1, d, flags, postmod)) {
          Span s = determined(leaf("DET", i, d), std::move(n2));
          if (!postmod) owners.push_back(s);
          out.push_back(std::move(s));
        }
      }
    }
    // Bare NP2.
    for (bool postmod : {false, true}) {
      for (auto& n2 : np2(i, nullptr, flags, postmod)) {
        Node n = branch("ENP", {n2.node});
        n.feats = n2.node.feats;
        Span s{std::move(n), n2.end};
        if (!postmod) owners.push_back(s);
        out.push_back(std::move(s));
      }
    }
    // Genitive chains.
    for (int depth = 0; depth < kMaxGenitiveDepth && !owners.empty(); ++depth) {
      std::vector<Span> next;
      for (const auto& o : owners) {
        const LexEntry* gen = kind(o.end, Pos::kArticle, "genitive");
        if (!gen) continue;
        for (bool postmod : {false, true}) {
          for (auto& n2 : np2(o.end + 1, gen, flags, postmod)) {
            Node owner = o.node;
            owner.role = "owner";
            Node gd = branch("GEN-DET", {owner, leaf("GEN", o.end, gen)});
            Node n = branch("ENP", {gd, n2.node});
            n.feats = n2.node.feats;
            n.feats.set("definiteness", "definite");
            Span s{std::move(n), n2.end};
            if (!postmod) next.push_back(s);
            out.push_back(std::move(s));
          }
        }
      }
      owners = std::move(next);
    }
    if (out.size() > kCap) out.resize(kCap);
    return out;
  }

  Span determined(Node det, Span n2) const {
    Node n = branch("ENP", {det, n2.node});
    n.feats = n2.node.feats;
    n.feats.set("definiteness", det.entry->features.get_or("definiteness", "definite"));
    n.feats.set("det", det.entry->lemma);
    return {std::move(n), n2.end};
  }

  Spans proper_spans(size_t i) const {
    Spans out;
    size_t k = i;
    std::optional<Node> title;
    if (k < n_) {
      bool pre = ts_[k].position && *ts_[k].position == AcronymPosition::kPreNominal;
      for (const auto* e : at(k, Pos::kCommonNoun)) {
        if (!e->features.has("syntactic_dependencies", "title")) continue;
        if (!at(k + 1, Pos::kProperNoun).empty()) {
          title = leaf("TITLE", k, e);
          break;
        }
      }
      if (pre && !title) return out;
      if (title) ++k;
    }
    if (positional(k)) return out;
    for (const auto* e : at(k, Pos::kProperNoun)) {
      if (e->features.has("type", "time")) continue;
      std::vector<Node> kids;
      if (title) kids.push_back(*title);
      kids.push_back(leaf("PROP-N", k, e));
      size_t end = k + 1;
      if (end < n_ && ts_[end].position &&
          *ts_[end].position == AcronymPosition::kPostNominal && !entries_[end].empty()) {
        kids.push_back(leaf("POST-TITLE", end, &entries_[end].front()));
        ++end;
      }
      Node n = branch("ENP", std::move(kids));
      n.feats.set("definiteness", "proper");
      n.feats.set("person", "3");
      n.feats.set("number", e->features.get_or("number", "singular"));
      for (auto key : {"gender", "animacy", "type"}) copy_feature(e->features, key, &n.feats);
      out.push_back({std::move(n), end});
    }
    return out;
  }

  struct Premod {
    const LexEntry* quantity = nullptr;
    size_t quantity_token = 0;
    std::vector<std::pair<size_t, const LexEntry*>> mods;  // ordinals, adjectives
  };

  void premods(size_t i, Premod cur, std::vector<std::pair<Premod, size_t>>* out) const {
    out->push_back({cur, i});
    if (i >= n_ || positional(i) || out->size() > 256) return;
    bool first = !cur.quantity && cur.mods.empty();
    if (first) {
      for (const auto* q : at(i, Pos::kCardinal)) {
        Premod next = cur;
        next.quantity = q;
        next.quantity_token = i;
        premods(i + 1, next, out);
      }
    }
    for (const auto* o : at(i, Pos::kOrdinal)) {
      Premod next = cur;
      next.mods.push_back({i, o});
      premods(i + 1, next, out);
    }
    for (const auto* a : at(i, Pos::kAdjective)) {
      if (!a->features.has("usage", "attributive")) continue;
      Premod next = cur;
      next.mods.push_back({i, a});
      premods(i + 1, next, out);
    }
  }

  Node mod_node(size_t i, const LexEntry* e) const {
    return leaf(e->pos == Pos::kOrdinal ? "ORD" : "ADJ", i, e);
  }

  Node premod_node(const Premod& p) const {
    std::vector<Node> mods;
    for (const auto& [i, e] : p.mods) mods.push_back(mod_node(i, e));
    if (!p.quantity) return branch("PREMOD", std::move(mods));
    Node q = leaf("Q", p.quantity_token, p.quantity);
    if (mods.empty()) return branch("PREMOD", {branch("COMP", {q})});
    if (mods.size() == 1)
      return branch("PREMOD", {branch("MOD", {branch("COMP", {q}), branch("MOD", mods)})});
    Node last = mods.back();
    mods.pop_back();
    mods.insert(mods.begin(), q);
    return branch("PREMOD",
                  {branch("MOD", {branch("ADJUNCT", mods), branch("MOD", {last})})});
  }

  static std::vector<std::string> numbers(const FeatureBundle& f) {
    std::vector<std::string> out;
    for (auto n : {"singular", "plural"})
      if (f.has("number", n)) out.push_back(n);
    return out;
  }

  Spans np2(size_t i, const LexEntry* det, int flags, bool postmod) {
    Spans out;
    std::vector<std::pair<Premod, size_t>> options;
    premods(i, Premod{}, &options);
    for (const auto& [p, h] : options) {
      if (h >= n_ || positional(h)) continue;
      std::vector<AdjClass> classes;
      for (const auto& [k, e] : p.mods) {
        if (e->pos == Pos::kOrdinal) {
          classes.push_back(AdjClass::kOrdinal);
        } else if (auto c = adj_class_from_string(e->features.get_or("order_class", ""))) {
          classes.push_back(*c);
        }
      }
      if (!adjective_order_valid(classes)) continue;
      for (const auto* noun : at(h, Pos::kCommonNoun)) {
        if ((flags & kPpObject) && noun->features.has("type", "time")) continue;
        std::vector<std::string> num = numbers(noun->features);
        auto narrow = [&num](const FeatureBundle& f) {
          if (!f.has("number")) return;
          std::vector<std::string> keep;
          for (const auto& x : num)
            if (f.has("number", x)) keep.push_back(x);
          num = keep;
        };
        if (det) narrow(det->features);
        if (p.quantity) narrow(p.quantity->features);
        if (num.empty()) continue;
        std::string number = num.size() == 1 ? num.front() : "singular";
        bool mass = noun->features.has("mass_count", "mass");
        if (!det && !p.quantity && number != "plural" && !mass) continue;
        std::vector<Node> kids;
        if (p.quantity || !p.mods.empty()) kids.push_back(premod_node(p));
        kids.push_back(leaf("N", h, noun));
        Node n = branch("NP2", std::move(kids));
        n.feats.set("number", number);
        n.feats.set("person", "3");
        n.feats.set("definiteness", det ? "definite" : "bare");
        for (auto key : {"gender", "animacy", "type", "mass_count"})
          copy_feature(noun->features, key, &n.feats);
        if (p.quantity) n.feats.set("quantity", p.quantity->lemma);
        if (!postmod) {
          out.push_back({std::move(n), h + 1});
          continue;
        }
        for (auto& pp : this->pp(h + 1, flags & ~kNoWidePP)) {
          std::string prep = pp.node.feats.get_or("prep", "");
          if (prep != "from" && motion_preposition(prep)) continue;
          Node with = n;
          pp.node.role = "postmod";
          with.kids.push_back(branch("POSTMOD", {pp.node}, "postmod"));
          out.push_back({std::move(with), pp.end});
        }
      }
    }
    return out;
  }

  Spans pp(size_t i, int flags) {
    Spans out;
    for (const auto* p : at(i, Pos::kPreposition)) {
      for (auto& obj : np(i + 1, Case::kAccusative, (flags & ~kNoWidePP) | kPpObject)) {
        obj.node.role = "obj";
        Node n = branch("PP", {leaf("P", i, p), obj.node});
        n.feats.set("prep", p->lemma);
        out.push_back({std::move(n), obj.end});
      }
    }
    return out;
  }

  // Verb phrases.

  struct VpRequest {
    bool finite = true;
    FeatureBundle subject;
    bool gap = false;
    std::string gap_word;
    // Generic subjects read a present/past homograph ("read") as present.
    bool generic = false;
  };

  Node gap_node(const VpRequest& r) const {
    Node g;
    g.label = "GAP";
    g.word = r.gap_word;
    Node n = branch("NP", {g});
    n.feats.set("gap", r.gap_word);
    return n;
  }

  size_t negation(size_t i, std::vector<Node>* kids, FeatureBundle* feats) const {
    if (const LexEntry* neg = kind(i, Pos::kAdverb, "negation")) {
      kids->push_back(leaf("NEG", i, neg));
      feats->set("negated", "1");
      return i + 1;
    }
    return i;
  }

  Spans vp(size_t i, const VpRequest& req) {
    Spans out;
    if (i >= n_) return out;
    if (req.finite) {
      for (const auto* aux : at(i, Pos::kAuxiliary)) {
        if (aux->lemma != "do" || !finite(*aux) || !agrees(*aux, req.subject)) continue;
        std::vector<Node> pre{leaf("AUX", i, aux)};
        FeatureBundle f;
        f.set("tense", tense_of(*aux));
        f.set("aux", "do");
        size_t j = negation(i + 1, &pre, &f);
        VpRequest base = req;
        base.finite = false;
        for (auto& v : main_verb(j, base, pre, f)) out.push_back(std::move(v));
      }
      for (const auto* m : at(i, Pos::kModal)) {
        std::vector<Node> pre{leaf("MODAL", i, m)};
        FeatureBundle f;
        f.set("tense", m->features.get_or("tense", "present"));
        f.set("modal", m->lemma);
        size_t j = i + 1;
        if (m->features.has("polarity", "negative")) {
          f.set("negated", "1");
        } else {
          j = negation(j, &pre, &f);
        }
        VpRequest base = req;
        base.finite = false;
        for (auto& v : main_verb(j, base, pre, f)) out.push_back(std::move(v));
      }
    }
    for (auto& v : main_verb(i, req, {}, {})) out.push_back(std::move(v));
    if (out.size() > kCap) out.resize(kCap);
    return out;
  }

  Spans main_verb(size_t i, const VpRequest& req, const std::vector<Node>& pre,
                  const FeatureBundle& pre_feats) {
    Spans out;
    auto usable = [&](const LexEntry& v) {
      return req.finite ? finite(v) && agrees(v, req.subject) : base_form(v);
    };
    for (const auto* v : at(i, Pos::kMainVerb)) {
      if (!usable(*v)) continue;
      if (req.finite) {
        std::string drop = req.generic ? "past" : "present";
        bool homograph = std::any_of(entries_[i].begin(), entries_[i].end(),
                                     [&](const LexEntry& o) {
                                       return o.pos == Pos::kMainVerb && o.lemma == v->lemma &&
                                              &o != v && usable(o) &&
                                              tense_of(o) != tense_of(*v);
                                     });
        if (homograph && tense_of(*v) == drop) continue;
      }
      FeatureBundle f = pre_feats;
      if (req.finite) f.set("tense", tense_of(*v));
      f.set("vform", v->features.get_or("vform", ""));
      std::vector<Node> kids = pre;
      kids.push_back(leaf("V", i, v));
      size_t j = i + 1;
      if (v->lemma == "be") {
        if (req.finite && !f.has("negated")) j = negation(j, &kids, &f);
        copula(j, v, req, kids, f, &out);
        continue;
      }
      for (const auto& frame_view : split_list(v->features.get_or("syntactic_frame", ""))) {
        f.set("frame", frame_view);
        for (auto& [comp_kids, end] : complements(j, frame_view, req)) {
          std::vector<Node> all = kids;
          all.insert(all.end(), comp_kids.begin(), comp_kids.end());
          finish_vp(end, v, all, f, &out);
        }
      }
    }
    return out;
  }

  static std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
      size_t comma = s.find(',', start);
      if (comma == std::string::npos) comma = s.size();
      if (comma > start) out.push_back(s.substr(start, comma - start));
      start = comma + 1;
    }
    return out;
  }

  using KidSpans = std::vector<std::pair<std::vector<Node>, size_t>>;

  // Object NP or the gap standing in for it.
  KidSpans object(size_t i, std::string role, bool* gap_used, bool allow_gap,
                  const VpRequest& req) {
    KidSpans out;
    if (allow_gap && !*gap_used) {
      Node g = gap_node(req);
      g.role = role;
      out.push_back({{g}, i});
    }
    for (auto& o : np(i, Case::kAccusative, 0)) {
      o.node.role = role;
      out.push_back({{o.node}, o.end});
    }
    return out;
  }

  KidSpans complements(size_t i, const std::string& frame, const VpRequest& req) {
    KidSpans out;
    // Enumerates which NP slot (if any) takes the gap.
    auto slots = [&](std::vector<std::string> roles) {
      KidSpans acc{{{}, i}};
      std::vector<bool> used{false};
      for (const auto& role : roles) {
        KidSpans next;
        std::vector<bool> next_used;
        for (size_t a = 0; a < acc.size(); ++a) {
          bool g = used[a];
          if (role == "iobj_to") {
            const LexEntry* to = word(acc[a].second, Pos::kPreposition, "to");
            if (!to) continue;
            bool gg = g;
            for (auto& [kids, end] : object(acc[a].second + 1, "obj", &gg, req.gap, req)) {
              std::vector<Node> all = acc[a].first;
              Node p = branch("PP", {leaf("P", acc[a].second, to), kids.front()}, "iobj");
              p.feats.set("prep", "to");
              all.push_back(p);
              bool used_now = g || kids.front().feats.has("gap");
              next.push_back({all, end});
              next_used.push_back(used_now);
            }
            continue;
          }
          bool gg = g;
          bool gap_here = req.gap && role != "iobj";
          for (auto& [kids, end] : object(acc[a].second, role, &gg, gap_here, req)) {
            std::vector<Node> all = acc[a].first;
            all.push_back(kids.front());
            next.push_back({all, end});
            next_used.push_back(g || kids.front().feats.has("gap"));
          }
        }
        acc = std::move(next);
        used = std::move(next_used);
      }
      for (size_t a = 0; a < acc.size(); ++a)
        if (used[a] == req.gap) out.push_back(acc[a]);
    };
    if (frame == "intransitive") {
      slots({});
    } else if (frame == "transitive") {
      slots({"obj"});
    } else if (frame == "ditransitive") {
      slots({"iobj", "obj"});
    } else if (frame == "ditransitive_to") {
      slots({"obj", "iobj_to"});
    } else if (frame == "speech" || frame == "speech_addressee") {
      if (req.gap) return out;
      KidSpans pre{{{}, i}};
      if (frame == "speech_addressee") {
        pre.clear();
        for (auto& o : np(i, Case::kAccusative, 0)) {
          o.node.role = "iobj";
          pre.push_back({{o.node}, o.end});
        }
      }
      for (auto& [kids, j] : pre) {
        const LexEntry* that = kind(j, Pos::kConjunction, "complementizer");
        if (!that) continue;
        for (auto& c : clause(j + 1)) {
          std::vector<Node> all = kids;
          all.push_back(branch("SBAR", {leaf("COMP", j, that), c.node}, "comp"));
          out.push_back({all, c.end});
        }
      }
    }
    return out;
  }

  void copula(size_t i, const LexEntry* v, const VpRequest& req, std::vector<Node> kids,
              FeatureBundle f, Spans* out) {
    f.set("frame", "copula");
    if (req.gap) return;
    for (auto& o : np(i, Case::kAny, 0)) {
      std::vector<Node> all = kids;
      all.push_back(branch("PRED", {o.node}, "pred"));
      finish_vp(o.end, v, all, f, out);
    }
    for (const auto* a : at(i, Pos::kAdjective)) {
      if (!a->features.has("usage", "predicative") || positional(i)) continue;
      std::vector<Node> all = kids;
      all.push_back(branch("PRED", {leaf("ADJ", i, a)}, "pred"));
      finish_vp(i + 1, v, all, f, out);
    }
    for (auto& p : pp(i, 0)) {
      std::vector<Node> all = kids;
      all.push_back(branch("PRED", {p.node}, "pred"));
      finish_vp(p.end, v, all, f, out);
    }
  }

  void finish_vp(size_t i, const LexEntry* v, const std::vector<Node>& kids,
                 const FeatureBundle& f, Spans* out) {
    std::string tense = f.get_or("tense", "present");
    TemporalDirection dir =
        tense == "future" ? TemporalDirection::kFuture : TemporalDirection::kPast;
    std::vector<std::pair<std::vector<Node>, size_t>> adj;
    adjuncts(i, v, dir, AdjunctState{}, {}, &adj);
    for (auto& [extra, end] : adj) {
      Node n = branch("VP", kids);
      n.kids.insert(n.kids.end(), extra.begin(), extra.end());
      n.feats = f;
      out->push_back({std::move(n), end});
      if (out->size() >= kCap) return;
    }
  }

  static bool motion_preposition(std::string_view p) {
    return p == "to" || p == "from" || p == "into" || p == "towards" || p == "onto";
  }

  void adjuncts(size_t i, const LexEntry* v, TemporalDirection dir, AdjunctState st,
                std::vector<Node> acc, std::vector<std::pair<std::vector<Node>, size_t>>* out) {
    out->push_back({acc, i});
    if (i >= n_ || out->size() > 256) return;
    bool motion = v->features.has("semantic_type", "motion");
    if (st.pps < 3) {
      for (auto& p : pp(i, 0)) {
        if (motion_preposition(p.node.feats.get_or("prep", "")) && !motion) continue;
        AdjunctState next = st;
        ++next.pps;
        auto more = acc;
        p.node.role = "adjunct";
        more.push_back(p.node);
        adjuncts(p.end, v, dir, next, std::move(more), out);
      }
    }
    if (!st.dir) {
      for (const auto* d : at(i, Pos::kDirectional)) {
        AdjunctState next = st;
        next.dir = true;
        auto more = acc;
        more.push_back(leaf("DIR", i, d, "adjunct"));
        adjuncts(i + 1, v, dir, next, std::move(more), out);
      }
    }
    if (!st.freq) {
      if (const LexEntry* f = kind(i, Pos::kAdverb, "multiplicative")) {
        AdjunctState next = st;
        next.freq = true;
        auto more = acc;
        more.push_back(leaf("FREQ", i, f, "adjunct"));
        adjuncts(i + 1, v, dir, next, std::move(more), out);
      }
    }
    if (auto t = time_phrase(i, dir)) {
      AdjunctState next = st;
      bool* slot = &next.main_time;
      if (t->node.time->kind == TimeRef::Kind::kConstraint) {
        if (t->node.time->relation == TemporalRelation::kBefore) slot = &next.before;
        if (t->node.time->relation == TemporalRelation::kAfter) slot = &next.after;
      }
      if (!*slot) {
        *slot = true;
        auto more = acc;
        more.push_back(t->node);
        adjuncts(t->end, v, dir, next, std::move(more), out);
      }
    }
  }

  // Longest temporal phrase starting at i.
  std::optional<Span> time_phrase(size_t i, TemporalDirection dir) {
    if (i >= n_) return std::nullopt;
    const Token& t = ts_[i];
    if (t.kind != TokenKind::kTimeLiteral && t.kind != TokenKind::kNumeral &&
        !may_start_time_phrase(lower(t.text)) && !may_start_time_phrase(t.text))
      return std::nullopt;
    auto key = std::make_pair(i, static_cast<int>(dir));
    if (auto it = time_memo_.find(key); it != time_memo_.end()) return it->second;
    TimeContext tc = tc_;
    tc.direction = dir;
    std::optional<Span> found;
    for (size_t j = n_; j > i && !found; --j) {
      std::vector<std::string> words;
      for (size_t k = i; k < j; ++k) words.push_back(ts_[k].text);
      if (auto ref = try_parse_time_expression(words, tc)) {
        Node n;
        n.label = "TIME";
        n.role = "adjunct";
        n.token = static_cast<int>(i);
        std::string text;
        for (const auto& w : words) text += (text.empty() ? "" : " ") + w;
        n.word = text;
        n.time = *ref;
        n.feats.set("span_end", std::to_string(j));
        found = Span{std::move(n), j};
      }
    }
    time_memo_[key] = found;
    return found;
  }

  // Clauses and sentences.

  Spans clause(size_t i) {
    if (auto it = clause_memo_.find(i); it != clause_memo_.end()) return it->second;
    Spans out;
    for (auto& s : np(i, Case::kNominative, 0)) {
      s.node.role = "subj";
      for (bool always : {false, true}) {
        size_t j = s.end;
        std::vector<Node> kids{s.node};
        const LexEntry* adv = nullptr;
        if (always) {
          adv = word(j, Pos::kAdverb, "always");
          if (!adv) continue;
          kids.push_back(leaf("ADV", j, adv));
          ++j;
        }
        VpRequest req;
        req.subject = s.node.feats;
        req.generic = always || generic_subject(s.node.feats);
        for (auto& v : vp(j, req)) {
          Node c = branch("CLAUSE", kids);
          v.node.role = "head";
          c.kids.push_back(v.node);
          if (always) c.feats.set("always", "1");
          out.push_back({std::move(c), v.end});
        }
      }
      if (out.size() >= kCap) break;
    }
    clause_memo_[i] = out;
    return out;
  }

  static bool generic_subject(const FeatureBundle& f) {
    std::string det = f.get_or("det", "");
    if (det == "all" || det == "every" || det == "each" || det == "no") return true;
    return f.get_or("definiteness", "") == "bare" && !f.has("quantity");
  }

  static bool speech(const Node& clause) {
    const Node* vp = clause.child("VP");
    return vp && vp->child("SBAR");
  }

  void declaratives(std::vector<ParseTree>* out) {
    for (auto& c : clause(0)) {
      if (c.end != n_) continue;
      ParseTree t;
      bool indirect = speech(c.node);
      t.root = branch(indirect ? "INDIRECT" : "DECL", {c.node});
      t.kind = indirect ? SentenceKind::kIndirect : SentenceKind::kDeclarative;
      out->push_back(std::move(t));
    }
  }

  void conditionals(std::vector<ParseTree>* out) {
    const LexEntry* if_word = word(0, Pos::kConjunction, "if");
    if (!if_word) return;
    for (auto& a : clause(1)) {
      size_t j = a.end;
      if (j < n_ && ts_[j].text == ",") ++j;
      const LexEntry* then = word(j, Pos::kConjunction, "then");
      if (!then) continue;
      for (auto& b : clause(j + 1)) {
        if (b.end != n_) continue;
        a.node.role = "antecedent";
        Node cons = b.node;
        cons.role = "consequent";
        ParseTree t;
        t.root = branch("COND", {leaf("CONJ", 0, if_word), a.node, leaf("CONJ", j, then), cons});
        out->push_back(std::move(t));
      }
    }
  }

  void directives(std::vector<ParseTree>* out) {
    if (n_ != 5) return;
    const LexEntry* show = word(0, Pos::kMainVerb, "show");
    if (!show || !base_form(*show)) return;
    const LexEntry* on = word(3, Pos::kPreposition, "on");
    if (!on) return;
    for (const auto* cls : at(1, Pos::kCommonNoun)) {
      if (positional(1)) break;
      for (const auto* report : at(2, Pos::kCommonNoun)) {
        if (report->lemma != "situation_report") continue;
        for (const auto* id : at(4, Pos::kProperNoun)) {
          Node obj = branch("NP", {branch("NP2", {branch("MOD", {leaf("N", 1, cls)}),
                                                  leaf("N", 2, report)})},
                            "obj");
          Node track = branch("NP", {branch("ENP", {leaf("PROP-N", 4, id)})}, "obj");
          Node p = branch("PP", {leaf("P", 3, on), track}, "adjunct");
          ParseTree t;
          t.root = branch("DIRECTIVE", {leaf("V", 0, show), obj, p});
          t.kind = SentenceKind::kDirective;
          out->push_back(std::move(t));
        }
      }
    }
  }

  // Wh-phrase: who/what alone, or what/which + common noun.
  Spans whnp(size_t i) {
    Spans out;
    for (const auto* w : at(i, Pos::kWhWord)) {
      if (w->lemma != "who" && w->lemma != "what" && w->lemma != "which") continue;
      if (w->lemma != "which") {
        Node n = branch("NP", {leaf("WH", i, w)});
        n.feats.set("number", "singular");
        n.feats.set("person", "3");
        n.feats.set("wh", w->lemma);
        if (w->lemma == "who") n.feats.set("animacy", "animate");
        out.push_back({std::move(n), i + 1});
      }
      if (w->lemma == "who") continue;
      for (const auto* noun : at(i + 1, Pos::kCommonNoun)) {
        Node n = branch("NP", {leaf("WH", i, w), leaf("N", i + 1, noun)});
        n.feats.set("number", noun->features.has("number", "plural") &&
                                      !noun->features.has("number", "singular")
                                  ? "plural"
                                  : "singular");
        n.feats.set("person", "3");
        n.feats.set("wh", w->lemma);
        for (auto key : {"gender", "animacy", "type"}) copy_feature(noun->features, key, &n.feats);
        out.push_back({std::move(n), i + 2});
      }
    }
    return out;
  }

  static std::string indefinite_binder(const Node& n) {
    if (n.label == "PRON" && n.entry && n.entry->features.has("kind", "indefinite"))
      return n.entry->lemma;
    if (n.label == "SBAR") return {};
    for (const auto& k : n.kids) {
      std::string b = indefinite_binder(k);
      if (!b.empty()) return b;
    }
    return {};
  }

  void push_query(Node root, QuerySlot slot, std::string binder,
                  std::vector<ParseTree>* out) {
    ParseTree t;
    t.root = std::move(root);
    t.kind = SentenceKind::kInterrogative;
    t.focus = QueryFocus{slot, std::move(binder)};
    out->push_back(std::move(t));
  }

  // Aux or modal at i, then a nominative subject, then a base VP.
  struct Inverted {
    Node clause;
    size_t end;
  };

  std::vector<Inverted> inverted(size_t i, bool gap, const std::string& gap_word) {
    std::vector<Inverted> out;
    std::vector<std::pair<const LexEntry*, std::string>> heads;
    for (const auto* a : at(i, Pos::kAuxiliary))
      if (a->lemma == "do" && finite(*a)) heads.push_back({a, "AUX"});
    for (const auto* m : at(i, Pos::kModal)) heads.push_back({m, "MODAL"});
    for (const auto& [head, label] : heads) {
      for (auto& s : np(i + 1, Case::kNominative, 0)) {
        if (label == "AUX" && !agrees(*head, s.node.feats)) continue;
        std::vector<Node> pre{leaf(label, i, head)};
        FeatureBundle f;
        f.set("tense", head->features.get_or("tense", "present"));
        if (label == "AUX") f.set("aux", "do");
        if (label == "MODAL") f.set("modal", head->lemma);
        size_t j = s.end;
        if (head->features.has("polarity", "negative")) {
          f.set("negated", "1");
        } else {
          j = negation(j, &pre, &f);
        }
        VpRequest req;
        req.finite = false;
        req.subject = s.node.feats;
        req.gap = gap;
        req.gap_word = gap_word;
        s.node.role = "subj";
        for (auto& v : main_verb(j, req, pre, f)) {
          v.node.role = "head";
          out.push_back({branch("CLAUSE", {s.node, v.node}), v.end});
        }
      }
    }
    // Inverted copula: be + subject + predicate.
    if (!gap) {
      for (const auto* be : at(i, Pos::kMainVerb)) {
        if (be->lemma != "be" || !finite(*be)) continue;
        for (auto& s : np(i + 1, Case::kNominative, 0)) {
          if (!agrees(*be, s.node.feats)) continue;
          std::vector<Node> kids{leaf("V", i, be)};
          FeatureBundle f;
          f.set("tense", tense_of(*be));
          f.set("vform", be->features.get_or("vform", ""));
          size_t j = negation(s.end, &kids, &f);
          VpRequest req;
          req.subject = s.node.feats;
          Spans vps;
          copula(j, be, req, kids, f, &vps);
          s.node.role = "subj";
          for (auto& v : vps) {
            v.node.role = "head";
            out.push_back({branch("CLAUSE", {s.node, v.node}), v.end});
          }
        }
      }
    }
    return out;
  }

  void questions(std::vector<ParseTree>* out) {
    // Subject questions.
    for (auto& w : whnp(0)) {
      VpRequest req;
      req.subject = w.node.feats;
      for (auto& v : vp(w.end, req)) {
        if (v.end != n_) continue;
        Node subj = w.node;
        subj.role = "subj";
        v.node.role = "head";
        push_query(branch("QUERY", {branch("CLAUSE", {subj, v.node})}), QuerySlot::kSubject,
                   w.node.feats.get_or("wh", ""), out);
      }
    }
    // Object and predicate questions.
    for (auto& w : whnp(0)) {
      std::string wh = w.node.feats.get_or("wh", "");
      for (auto& inv : inverted(w.end, true, wh)) {
        if (inv.end != n_) continue;
        const Node* vp = inv.clause.child("VP");
        const Node* v = vp ? vp->child("V") : nullptr;
        bool predicate = v && v->entry && v->entry->lemma == "do";
        Node whn = w.node;
        whn.role = "wh";
        push_query(branch("QUERY", {whn, inv.clause}),
                   predicate ? QuerySlot::kPredicate : QuerySlot::kObject, wh, out);
      }
    }
    // When / where.
    for (const auto* w : at(0, Pos::kWhWord)) {
      if (w->lemma != "when" && w->lemma != "where") continue;
      QuerySlot slot = w->lemma == "when" ? QuerySlot::kTemporal : QuerySlot::kLocational;
      for (auto& inv : inverted(1, false, {})) {
        if (inv.end != n_) continue;
        const Node* vp = inv.clause.child("VP");
        // A bare inverted copula needs no predicate: "Where is the woman?"
        if (vp && vp->child("PRED") && vp->child("V")->entry->lemma == "be") continue;
        push_query(branch("QUERY", {leaf("WH", 0, w, "wh"), inv.clause}), slot, w->lemma, out);
      }
      for (const auto* be : at(1, Pos::kMainVerb)) {
        if (be->lemma != "be" || !finite(*be)) continue;
        for (auto& s : np(2, Case::kNominative, 0)) {
          if (s.end != n_ || !agrees(*be, s.node.feats)) continue;
          s.node.role = "subj";
          Node vpn = branch("VP", {leaf("V", 1, be)}, "head");
          vpn.feats.set("tense", tense_of(*be));
          vpn.feats.set("frame", "copula");
          push_query(branch("QUERY", {leaf("WH", 0, w, "wh"), branch("CLAUSE", {s.node, vpn})}),
                     slot, w->lemma, out);
        }
      }
    }
    // Stranded preposition: What region is she in?
    for (auto& w : whnp(0)) {
      if (n_ < 4) continue;
      auto preps = at(n_ - 1, Pos::kPreposition);
      if (preps.empty()) continue;
      const LexEntry* p = preps.front();
      for (const auto* be : at(w.end, Pos::kMainVerb)) {
        if (be->lemma != "be" || !finite(*be)) continue;
        for (auto& s : np(w.end + 1, Case::kNominative, 0)) {
          if (s.end != n_ - 1 || !agrees(*be, s.node.feats)) continue;
          s.node.role = "subj";
          Node g = gap_node(VpRequest{true, {}, true, w.node.feats.get_or("wh", "")});
          g.role = "obj";
          for (const auto& [k, v] : w.node.feats.values())
            if (k != "wh") g.feats.set(k, v);
          Node pp = branch("PP", {leaf("P", n_ - 1, p), g});
          pp.feats.set("prep", p->lemma);
          Node vpn = branch("VP", {leaf("V", w.end, be), branch("PRED", {pp}, "pred")}, "head");
          vpn.feats.set("tense", tense_of(*be));
          vpn.feats.set("frame", "copula");
          Node whn = w.node;
          whn.role = "wh";
          push_query(branch("QUERY", {whn, branch("CLAUSE", {s.node, vpn})}),
                     QuerySlot::kLocational, w.node.feats.get_or("wh", ""), out);
        }
      }
    }
    // Yes/no.
    for (auto& inv : inverted(0, false, {})) {
      if (inv.end != n_) continue;
      std::string binder = indefinite_binder(inv.clause);
      push_query(branch("QUERY", {inv.clause}), QuerySlot::kYesNo, binder, out);
    }
  }

  const LexicalDatabase& db_;
  const TokenStream& ts_;
  TimeContext tc_;
  size_t n_ = 0;
  std::string terminal_;
  std::vector<std::vector<LexEntry>> entries_;
  std::map<std::tuple<size_t, int, int>, Spans> np_memo_;
  std::map<size_t, Spans> clause_memo_;
  std::map<std::pair<size_t, int>, std::optional<Span>> time_memo_;
};

}  // namespace

std::vector<ParseTree> Parser::parse(const TokenStream& ts, const TimeContext& time) const {
  Grammar g(db_, ts, time);
  return g.sentences();
}

std::vector<InputDiagnostic> precheck(const TokenStream& ts, const Parser& parser,
                                      const TimeContext& time) {
  auto diags = lexical_diagnostics(ts, parser.database().lexicon);
  if (!diags.empty() || ts.empty()) return diags;
  if (parser.parse(ts, time).empty()) {
    InputDiagnostic d;
    d.severity = Severity::kOutOfGrammar;
    d.begin = ts.front().begin;
    d.end = ts.back().end;
    d.message = "sentence is outside the controlled grammar";
    diags.push_back(std::move(d));
  }
  return diags;
}

}  // namespace cnl
