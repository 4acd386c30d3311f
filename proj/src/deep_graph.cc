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

#include "cnl/deep_graph.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "cnl/errors.h"

namespace cnl {

std::string_view to_string(GraphNodeKind k) {
  switch (k) {
    case GraphNodeKind::kClause: return "clause";
    case GraphNodeKind::kEntity: return "entity";
    case GraphNodeKind::kModifier: return "modifier";
    case GraphNodeKind::kTime: return "time";
    case GraphNodeKind::kConditional: return "conditional";
    case GraphNodeKind::kDirective: return "directive";
  }
  return "?";
}

std::string_view to_string(SelectionStatus s) {
  return s == SelectionStatus::kUnique ? "unique" : "awaiting_selection";
}

std::vector<int> DeepGraph::targets(int from, std::string_view label) const {
  std::vector<int> out;
  for (const auto& e : edges)
    if (e.from == from && e.label == label) out.push_back(e.to);
  return out;
}

std::optional<int> DeepGraph::target(int from, std::string_view label) const {
  for (const auto& e : edges)
    if (e.from == from && e.label == label) return e.to;
  return std::nullopt;
}

std::vector<GraphEdge> DeepGraph::edges_from(int from, std::string_view prefix) const {
  std::vector<GraphEdge> out;
  for (const auto& e : edges)
    if (e.from == from && e.label.starts_with(prefix)) out.push_back(e);
  return out;
}

std::optional<int> DeepGraph::parent(int to, std::string* label) const {
  for (const auto& e : edges) {
    if (e.to != to) continue;
    if (label) *label = e.label;
    return e.from;
  }
  return std::nullopt;
}

std::string DeepGraph::serialize() const {
  std::string out = "kind " + std::string(to_string(kind)) + "\nroot " + std::to_string(root) + "\n";
  if (focus)
    out += "focus " + std::string(to_string(focus->slot)) + " " + focus->binder + "\n";
  for (const auto& n : nodes) {
    out += "n" + std::to_string(n.id) + " " + std::string(to_string(n.kind)) + " " + n.lemma +
           " {" + n.feats.to_string() + "}";
    if (n.time) {
      out += " " + std::string(to_string(n.time->relation)) + " " + to_string(n.time->interval);
    }
    out += " @" + std::to_string(n.token) + "\n";
  }
  for (const auto& e : edges)
    out += "e" + std::to_string(e.from) + " " + e.label + " " + std::to_string(e.to) + "\n";
  return out;
}

uint64_t DeepGraph::digest() const {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string DeepGraph::digest_hex() const {
  static const char* kHex = "0123456789abcdef";
  uint64_t h = digest();
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::vector<std::string> DeepGraph::preference_features() const {
  std::vector<std::string> out;
  std::set<int> members;
  for (const auto& e : edges)
    if (e.label == "member") members.insert(e.to);
  for (const auto& e : edges) {
    if (e.label.starts_with("adjunct:")) {
      out.push_back("attach:vp");
    } else if (e.label.starts_with("postmod:")) {
      if (node(e.from).feats.has("class", "conj")) {
        out.push_back("scope:wide");
      } else {
        out.push_back("attach:np");
        if (members.count(e.from)) out.push_back("scope:narrow");
      }
    }
  }
  return out;
}

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

class Builder {
 public:
  explicit Builder(DeepGraph* g) : g_(g) {}

  int add(GraphNodeKind kind, std::string lemma, int token) {
    GraphNode n;
    n.id = static_cast<int>(g_->nodes.size());
    n.kind = kind;
    n.lemma = std::move(lemma);
    n.token = token;
    g_->nodes.push_back(std::move(n));
    return g_->nodes.back().id;
  }

  void edge(int from, std::string label, int to) {
    g_->edges.push_back(GraphEdge{from, std::move(label), to});
  }

  GraphNode& at(int id) { return g_->node(id); }

  int clause(const Node& c) {
    const Node* vp = c.child("VP");
    const Node* v = vp ? vp->child("V") : nullptr;
    if (!vp || !v || !v->entry) throw ContractViolation("to_graph: clause without verb");
    int id = add(GraphNodeKind::kClause, v->entry->lemma, v->token);
    FeatureBundle f = vp->feats;
    for (auto key : {"aktionsart", "semantic_type"})
      if (auto val = v->entry->features.get(key)) f.set(key, *val);
    f.set("surface", lower(v->word));
    if (c.feats.has("always")) f.set("always", "1");
    at(id).feats = f;
    if (const Node* s = c.with_role("subj")) edge(id, "subj", np(*s));
    for (const auto& k : vp->kids) {
      if (k.role == "obj") {
        edge(id, "obj", np(k));
      } else if (k.role == "iobj") {
        if (k.label == "PP") {
          int e = np(*k.with_role("obj"));
          at(e).feats.set("prep", "to");
          edge(id, "iobj", e);
        } else {
          edge(id, "iobj", np(k));
        }
      } else if (k.label == "SBAR") {
        edge(id, "comp", clause(*k.child("CLAUSE")));
      } else if (k.label == "PRED") {
        const Node& p = k.kids.front();
        if (p.label == "ADJ") {
          edge(id, "pred", modifier(p));
        } else if (p.label == "PP") {
          edge(id, "pred:" + p.feats.get_or("prep", ""), np(*p.with_role("obj")));
        } else {
          edge(id, "pred", np(p));
        }
      } else if (k.label == "PP") {
        edge(id, "adjunct:" + k.feats.get_or("prep", ""), np(*k.with_role("obj")));
      } else if (k.label == "DIR") {
        edge(id, "dir", modifier(k));
      } else if (k.label == "FREQ") {
        edge(id, "freq", modifier(k));
      } else if (k.label == "TIME") {
        int t = add(GraphNodeKind::kTime, k.word, k.token);
        at(t).time = k.time;
        edge(id, "time", t);
      }
    }
    return id;
  }

  int modifier(const Node& leaf) {
    int id = add(GraphNodeKind::kModifier, leaf.entry ? leaf.entry->lemma : lower(leaf.word),
                 leaf.token);
    FeatureBundle f;
    if (leaf.entry) {
      f.set("pos", std::string(to_string(leaf.entry->pos)));
      for (const auto& [k, v] : leaf.entry->features.values()) f.set(k, v);
    }
    f.set("surface", lower(leaf.word));
    at(id).feats = f;
    return id;
  }

  // NP, NPC or ENP node to an entity.
  int np(const Node& n) {
    if (n.label == "NP") {
      const Node& head = n.kids.front();
      int id;
      if (head.label == "WH") {
        id = wh(n);
      } else if (head.label == "GAP") {
        id = add(GraphNodeKind::kEntity, head.word, head.token);
        at(id).feats = n.feats;
        at(id).feats.set("class", "gap");
        at(id).feats.set("surface", head.word);
      } else {
        id = np(head);
      }
      for (size_t k = 1; k < n.kids.size(); ++k) postmod(id, n.kids[k]);
      return id;
    }
    if (n.label == "NPC") {
      int id = add(GraphNodeKind::kEntity, n.feats.get_or("conj", "and"), n.kids[1].token);
      at(id).feats = n.feats;
      at(id).feats.set("class", "conj");
      std::vector<const Node*> parts;
      const Node* cur = &n;
      while (cur->label == "NPC") {
        parts.push_back(&cur->kids[0]);
        cur = &cur->kids[2];
      }
      parts.push_back(cur);
      std::string surface;
      for (const Node* p : parts) {
        int m = np(*p);
        edge(id, "member", m);
        surface += (surface.empty() ? "" : " and ") + at(m).feats.get_or("surface", "");
      }
      at(id).feats.set("surface", surface);
      return id;
    }
    return enp(n);
  }

  int wh(const Node& n) {
    const Node& w = n.kids.front();
    const Node* noun = n.child("N");
    std::string lemma = noun ? noun->entry->lemma : w.entry->lemma;
    int id = add(GraphNodeKind::kEntity, lemma, noun ? noun->token : w.token);
    at(id).feats = n.feats;
    at(id).feats.set("class", "wh");
    at(id).feats.set("surface", lower(w.word) + (noun ? " " + noun->word : ""));
    return id;
  }

  int enp(const Node& n) {
    const Node& first = n.kids.front();
    if (first.label == "PRON") {
      int id = add(GraphNodeKind::kEntity, first.entry->lemma, first.token);
      FeatureBundle f = n.feats;
      f.set("class", "pronoun");
      f.set("pron_kind", first.entry->features.get_or("kind", "personal"));
      f.set("surface", lower(first.word));
      at(id).feats = f;
      return id;
    }
    const Node* prop = n.child("PROP-N");
    if (prop) {
      int id = add(GraphNodeKind::kEntity, prop->entry->lemma, prop->token);
      FeatureBundle f = n.feats;
      f.set("class", "proper");
      std::string surface = prop->word;
      if (const Node* t = n.child("TITLE")) {
        f.set("title", t->entry->lemma);
        surface = t->word + " " + surface;
      }
      if (const Node* t = n.child("POST-TITLE")) {
        f.set("post_title", t->entry->lemma);
        surface += " " + t->word;
      }
      f.set("surface", surface);
      at(id).feats = f;
      return id;
    }
    const Node* n2 = n.child("NP2");
    if (!n2) throw ContractViolation("to_graph: unexpected noun phrase " + first.label);
    const Node* noun = n2->child("N");
    int id = add(GraphNodeKind::kEntity, noun->entry->lemma, noun->token);
    FeatureBundle f = n.feats;
    f.set("class", "common");
    std::string surface;
    if (const Node* det = n.child("DET")) {
      surface = lower(det->word);
      auto k = det->entry->features.get("kind");
      if (k && det->entry->features.has("definiteness", "possessive")) {
        int owner = add(GraphNodeKind::kEntity, *k, det->token);
        FeatureBundle of;
        of.set("class", "pronoun");
        of.set("pron_kind", "personal");
        of.set("definiteness", "pronoun");
        of.set("surface", *k);
        possessive_features(*k, &of);
        at(owner).feats = of;
        edge(id, "owner", owner);
      }
    }
    if (const Node* gd = n.child("GEN-DET")) {
      int owner = enp(gd->kids.front());
      edge(id, "owner", owner);
      surface = at(owner).feats.get_or("surface", "") + " 's";
    }
    if (const Node* pre = n2->child("PREMOD")) premod(id, *pre, &f, &surface);
    surface += (surface.empty() ? "" : " ") + noun->word;
    f.set("surface", surface);
    at(id).feats = f;
    for (const auto& k : n2->kids)
      if (k.label == "POSTMOD") postmod(id, k);
    return id;
  }

  void premod(int id, const Node& n, FeatureBundle* f, std::string* surface) {
    if (n.kids.empty()) {
      if (n.label == "Q") {
        f->set("quantity", n.entry->lemma);
        if (auto v = n.entry->features.get("value")) f->set("quantity_value", *v);
        if (n.entry->features.has("kind", "vague")) f->set("quantity_kind", "vague");
      } else {
        edge(id, "mod", modifier(n));
      }
      *surface += (surface->empty() ? "" : " ") + lower(n.word);
      return;
    }
    for (const auto& k : n.kids) premod(id, k, f, surface);
  }

  void postmod(int id, const Node& pm) {
    if (pm.label != "POSTMOD") return;
    const Node& pp = pm.kids.front();
    edge(id, "postmod:" + pp.feats.get_or("prep", ""), np(*pp.with_role("obj")));
  }

  static void possessive_features(const std::string& pron, FeatureBundle* f) {
    f->set("person", "3");
    f->set("number", pron == "they" ? "plural" : "singular");
    if (pron == "he") f->set("gender", "male");
    if (pron == "she") f->set("gender", "female");
    if (pron == "he" || pron == "she") f->set("animacy", "animate");
    if (pron == "it") {
      f->set("gender", "neuter");
      f->set("animacy", "inanimate");
    }
  }

 private:
  DeepGraph* g_;
};

}  // namespace

DeepGraph to_graph(const ParseTree& tree) {
  DeepGraph g;
  g.kind = tree.kind;
  g.focus = tree.focus;
  Builder b(&g);
  const Node& r = tree.root;
  if (r.label == "DECL" || r.label == "INDIRECT") {
    g.root = b.clause(r.kids.front());
  } else if (r.label == "COND") {
    int id = b.add(GraphNodeKind::kConditional, "if", r.kids.front().token);
    g.root = id;
    b.edge(id, "antecedent", b.clause(*r.with_role("antecedent")));
    b.edge(id, "consequent", b.clause(*r.with_role("consequent")));
  } else if (r.label == "DIRECTIVE") {
    const Node& v = r.kids[0];
    int id = b.add(GraphNodeKind::kDirective, v.entry->lemma, v.token);
    g.root = id;
    const Node& n2 = r.kids[1].kids.front();
    const Node& cls = n2.kids[0].kids.front();
    const Node& report = n2.kids[1];
    int obj = b.add(GraphNodeKind::kEntity, report.entry->lemma, report.token);
    b.at(obj).feats.set("class", "common");
    b.at(obj).feats.set("report_class", cls.entry->lemma);
    b.at(obj).feats.set("surface", cls.word + " " + report.word);
    b.edge(id, "obj", obj);
    const Node& track = r.kids[2].kids[1];
    b.edge(id, "track", b.np(track));
  } else if (r.label == "QUERY") {
    const Node* c = r.child("CLAUSE");
    if (!c) throw ContractViolation("to_graph: query without clause");
    const Node* whnp = r.with_role("wh");
    g.root = b.clause(*c);
    if (whnp && whnp->label == "WH") b.at(g.root).feats.set("wh", whnp->entry->lemma);
    if (whnp && whnp->label == "NP") {
      // The fronted wh-phrase describes the gap it binds.
      for (auto& n : g.nodes) {
        if (!n.feats.has("class", "gap")) continue;
        if (const Node* noun = whnp->child("N")) {
          n.lemma = noun->entry->lemma;
          n.token = noun->token;
          n.feats.set("surface", lower(whnp->kids.front().word) + " " + noun->word);
        }
        for (auto key : {"animacy", "gender", "type"})
          if (auto v = whnp->feats.get(key)) n.feats.set(key, *v);
      }
    }
  } else {
    throw ContractViolation("to_graph: unknown root " + r.label);
  }
  return g;
}

int PreferenceProfile::score(const DeepGraph& g) const {
  int total = 0;
  for (const auto& f : g.preference_features())
    for (const auto& r : rules)
      if (r.feature == f) total += r.score;
  return total;
}

namespace {

std::string phrase(const DeepGraph& g, int id) {
  const GraphNode& n = g.node(id);
  return n.feats.get_or("surface", n.lemma);
}

std::string describe(const DeepGraph& g, const GraphEdge& e) {
  const GraphNode& from = g.node(e.from);
  std::string label = e.label;
  if (label.starts_with("postmod:")) {
    bool plural = from.feats.has("number", "plural");
    return phrase(g, e.from) + (plural ? ", which are " : ", which is ") + label.substr(8) +
           " " + phrase(g, e.to);
  }
  if (label.starts_with("adjunct:"))
    return phrase(g, e.from) + " " + label.substr(8) + " " + phrase(g, e.to);
  return phrase(g, e.from) + " " + label + " " + phrase(g, e.to);
}

// Edges keyed by node lemma and token so that graphs with different node
// numbering compare.
std::string edge_key(const DeepGraph& g, const GraphEdge& e) {
  const GraphNode& a = g.node(e.from);
  const GraphNode& b = g.node(e.to);
  return a.lemma + "@" + std::to_string(a.token) + " " + e.label + " " + b.lemma + "@" +
         std::to_string(b.token);
}

}  // namespace

std::vector<std::string> paraphrase(const std::vector<DeepGraph>& graphs) {
  std::vector<std::set<std::string>> keys(graphs.size());
  for (size_t i = 0; i < graphs.size(); ++i)
    for (const auto& e : graphs[i].edges) keys[i].insert(edge_key(graphs[i], e));
  std::vector<std::string> out;
  for (size_t i = 0; i < graphs.size(); ++i) {
    std::vector<std::string> parts;
    for (const auto& e : graphs[i].edges) {
      std::string k = edge_key(graphs[i], e);
      bool shared = std::all_of(keys.begin(), keys.end(),
                                [&](const std::set<std::string>& s) { return s.count(k) > 0; });
      if (!shared) parts.push_back(describe(graphs[i], e));
    }
    for (const auto& n : graphs[i].nodes) {
      auto ref = n.feats.get("referent_surface");
      if (!ref) continue;
      bool shared = std::all_of(graphs.begin(), graphs.end(), [&](const DeepGraph& o) {
        return n.id < static_cast<int>(o.nodes.size()) &&
               o.node(n.id).feats.get("referent_surface") == ref;
      });
      if (!shared) parts.push_back(n.feats.get_or("surface", n.lemma) + " = " + *ref);
    }
    std::string text;
    for (const auto& p : parts) text += (text.empty() ? "" : "; ") + p;
    if (text.empty()) text = "reading " + std::to_string(i + 1);
    out.push_back(std::move(text));
  }
  return out;
}

InterpretationSet rank(std::vector<DeepGraph> candidates, const PreferenceProfile& prefs) {
  if (candidates.empty()) throw ContractViolation("rank: no candidates");
  std::vector<int> scores;
  for (const auto& c : candidates) scores.push_back(prefs.score(c));
  std::vector<size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  int best = scores[order.front()];
  InterpretationSet set;
  for (size_t i : order) {
    if (scores[i] != best) break;
    set.candidates.push_back(std::move(candidates[i]));
    set.scores.push_back(scores[i]);
  }
  set.status = set.candidates.size() == 1 ? SelectionStatus::kUnique
                                          : SelectionStatus::kAwaitingSelection;
  set.paraphrases = paraphrase(set.candidates);
  return set;
}

DeepGraph select(InterpretationSet* set, size_t index) {
  if (set->status == SelectionStatus::kUnique)
    throw ContractViolation("select: interpretation set is already unique");
  if (index >= set->candidates.size())
    throw std::out_of_range("select: candidate index " + std::to_string(index) +
                            " out of range");
  DeepGraph chosen = set->candidates[index];
  set->candidates = {chosen};
  set->scores = {set->scores[index]};
  set->paraphrases = {set->paraphrases[index]};
  set->status = SelectionStatus::kUnique;
  return chosen;
}

}  // namespace cnl
