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

#include "cnl/context.h"

#include <algorithm>

#include "cnl/errors.h"

namespace cnl {

namespace {

constexpr int kDemonstrativeWindow = 2;

int role_rank(std::string_view role) {
  if (role == "subj") return 0;
  if (role == "obj") return 1;
  return 2;
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (const auto& i : items) {
    if (!out.empty()) out += sep;
    out += i;
  }
  return out;
}

bool contains(const std::vector<std::string>& v, std::string_view x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Unknown values unify with anything.
bool unify(const FeatureBundle& anaphor, std::string_view gender, std::string_view animacy,
           std::string_view number) {
  auto ok = [&](std::string_view key, std::string_view value) {
    auto own = anaphor.get(key);
    return !own || own->empty() || value.empty() || anaphor.has(key, value);
  };
  std::string_view g = gender == "neuter" ? "" : gender;
  if (anaphor.has("gender", "neuter") && (g == "female" || g == "male")) return false;
  if (!anaphor.has("gender", "neuter") && !ok("gender", g)) return false;
  return ok("animacy", animacy) && ok("number", number);
}

struct Candidate {
  int rank = 0;
  int recency = 0;
  std::string skolem;
  int node = -1;
  std::string predicate;
  std::vector<std::string> features;
  std::string surface;
};

class Resolver {
 public:
  Resolver(const DeepGraph& g, const DiscourseContext& ctx) : g_(g), ctx_(ctx) {}

  std::vector<DeepGraph> run() {
    std::vector<DeepGraph> out{g_};
    for (const auto& n : g_.nodes) {
      if (n.kind == GraphNodeKind::kClause && n.lemma == "do" && vp_anaphor(n)) {
        for (auto& h : out) bind_vp(&h, n.id);
        continue;
      }
      if (n.kind != GraphNodeKind::kEntity) continue;
      std::vector<Candidate> best = candidates(n);
      if (best.empty()) continue;
      std::vector<DeepGraph> next;
      for (const auto& h : out) {
        for (const auto& c : best) {
          DeepGraph copy = h;
          bind(&copy.node(n.id), c);
          next.push_back(std::move(copy));
        }
      }
      out = std::move(next);
    }
    return out;
  }

 private:
  bool vp_anaphor(const GraphNode& c) const {
    if (g_.kind == SentenceKind::kInterrogative) return false;
    return !g_.target(c.id, "obj") && !g_.target(c.id, "comp");
  }

  void bind_vp(DeepGraph* h, int cid) const {
    if (!ctx_.last_event) throw UnresolvedAnaphor("do", "no earlier event for 'do'");
    std::vector<std::string> items;
    for (const auto& a : ctx_.last_event->args) {
      if (a.kind != TermKind::kAt) continue;
      const Referent* r = ctx_.find(a.args[0].name);
      if (!r) continue;
      items.push_back(r->skolem + "=" + r->predicate + "=" + join(r->features, ','));
    }
    GraphNode& c = h->node(cid);
    c.feats.set("vp_functor", ctx_.last_event->functor);
    c.feats.set("vp_args", join(items, '|'));
  }

  static void bind(GraphNode* n, const Candidate& c) {
    if (c.node >= 0) {
      n->feats.set("bound_node", std::to_string(c.node));
    } else {
      n->feats.set("referent", c.skolem);
      n->feats.set("referent_pred", c.predicate);
      n->feats.set("referent_feats", join(c.features, ','));
    }
    n->feats.set("referent_surface", c.surface);
  }

  // Clause that owns an entity, and the label of the edge into it.
  std::pair<int, std::string> clause_of(int id) const {
    std::string label;
    std::string first;
    int cur = id;
    while (true) {
      auto p = g_.parent(cur, &label);
      if (!p) return {-1, first};
      if (first.empty() || g_.node(cur).feats.has("class", "conj") ||
          g_.node(*p).feats.has("class", "conj"))
        first = label;
      if (g_.node(*p).kind == GraphNodeKind::kClause) return {*p, first};
      cur = *p;
    }
  }

  std::string role_in_clause(int id) const {
    std::string label = clause_of(id).second;
    if (label == "subj") return "subj";
    if (label == "obj" || label == "iobj") return "obj";
    return "oblique";
  }

  static bool referential(const GraphNode& n) {
    std::string cls = n.feats.get_or("class", "");
    if (cls == "proper") return true;
    if (cls != "common") return false;
    std::string d = n.feats.get_or("definiteness", "");
    if (d == "universal" || d == "negative") return false;
    return !(d == "bare" && !n.feats.has("quantity"));
  }

  std::vector<Candidate> candidates(const GraphNode& n) const {
    std::string cls = n.feats.get_or("class", "");
    if (cls == "pronoun") return pronoun(n);
    if (cls == "proper") return named(n);
    if (cls == "common") {
      std::string d = n.feats.get_or("definiteness", "");
      if (d == "definite" || d == "demonstrative") return definite(n, d == "demonstrative");
    }
    return {};
  }

  static Candidate from_referent(const Referent& r) {
    Candidate c;
    c.rank = role_rank(r.role);
    c.recency = r.sentence;
    c.skolem = r.skolem;
    c.predicate = r.predicate;
    c.features = r.features;
    c.surface = r.surface;
    return c;
  }

  std::vector<Candidate> named(const GraphNode& n) const {
    for (auto it = ctx_.referents.rbegin(); it != ctx_.referents.rend(); ++it)
      if (it->predicate == n.lemma && contains(it->features, "proper_noun"))
        return {from_referent(*it)};
    return {};
  }

  std::vector<Candidate> definite(const GraphNode& n, bool demonstrative) const {
    std::string number = n.feats.get_or("number", "singular");
    for (auto it = ctx_.referents.rbegin(); it != ctx_.referents.rend(); ++it) {
      if (it->predicate != n.lemma || it->number != number) continue;
      if (demonstrative && ctx_.sentence - it->sentence > kDemonstrativeWindow) continue;
      return {from_referent(*it)};
    }
    return {};
  }

  std::vector<Candidate> pronoun(const GraphNode& n) const {
    std::string kind = n.feats.get_or("pron_kind", "personal");
    if (kind == "indefinite" || n.feats.get_or("person", "3") != "3") return {};
    if (kind == "reflexive" || kind == "reciprocal") return clause_bound(n, kind);
    std::string label;
    auto parent = g_.parent(n.id, &label);
    bool owner = parent && label == "owner";
    int clause = clause_of(n.id).first;
    std::vector<Candidate> all;
    for (const auto& r : ctx_.referents)
      if (unify(n.feats, r.gender, r.animacy, r.number)) all.push_back(from_referent(r));
    for (const auto& m : g_.nodes) {
      if (m.kind != GraphNodeKind::kEntity || m.token >= n.token || !referential(m)) continue;
      if (owner && parent && *parent == m.id) continue;
      if (!owner && clause_of(m.id).first == clause) continue;
      std::string gender = m.feats.get_or("gender", "");
      if (!unify(n.feats, gender, m.feats.get_or("animacy", ""),
                 m.feats.get_or("number", "singular")))
        continue;
      Candidate c;
      c.rank = role_rank(role_in_clause(m.id));
      c.recency = ctx_.sentence;
      c.node = m.id;
      c.surface = m.feats.get_or("surface", m.lemma);
      all.push_back(c);
    }
    if (all.empty())
      throw UnresolvedAnaphor(n.lemma, "no antecedent for '" + n.feats.get_or("surface", n.lemma) + "'");
    int best_rank = 3;
    for (const auto& c : all) best_rank = std::min(best_rank, c.rank);
    int best_recency = -1;
    for (const auto& c : all)
      if (c.rank == best_rank) best_recency = std::max(best_recency, c.recency);
    std::vector<Candidate> best;
    for (const auto& c : all) {
      if (c.rank != best_rank || c.recency != best_recency) continue;
      bool dup = std::any_of(best.begin(), best.end(), [&](const Candidate& b) {
        return b.node == c.node && b.skolem == c.skolem;
      });
      if (!dup) best.push_back(c);
    }
    // A referent mentioned again in this sentence is one candidate, not two.
    std::vector<Candidate> merged;
    for (const auto& c : best) {
      if (c.node < 0) {
        bool restated = std::any_of(best.begin(), best.end(), [&](const Candidate& b) {
          return b.node >= 0 && g_.node(b.node).feats.get_or("referent", "") == c.skolem;
        });
        if (restated) continue;
      }
      merged.push_back(c);
    }
    return merged;
  }

  std::vector<Candidate> clause_bound(const GraphNode& n, const std::string& kind) const {
    int clause = clause_of(n.id).first;
    auto subj = clause >= 0 ? g_.target(clause, "subj") : std::nullopt;
    if (!subj || *subj == n.id)
      throw UnresolvedAnaphor(n.lemma, "'" + n.lemma + "' needs a clause subject");
    const GraphNode& s = g_.node(*subj);
    bool plural = s.feats.has("class", "conj") || s.feats.has("number", "plural");
    bool ok = kind == "reciprocal"
                  ? plural
                  : unify(n.feats, s.feats.get_or("gender", ""), s.feats.get_or("animacy", ""),
                          s.feats.get_or("number", "singular"));
    if (!ok)
      throw UnresolvedAnaphor(n.lemma, "'" + n.lemma + "' does not agree with its subject");
    Candidate c;
    c.node = *subj;
    c.surface = s.feats.get_or("surface", s.lemma);
    return {c};
  }

  const DeepGraph& g_;
  const DiscourseContext& ctx_;
};

}  // namespace

std::string_view to_string(AnaphorKind k) {
  switch (k) {
    case AnaphorKind::kPersonal: return "personal";
    case AnaphorKind::kReflexive: return "reflexive";
    case AnaphorKind::kReciprocal: return "reciprocal";
    case AnaphorKind::kIndefinite: return "indefinite";
    case AnaphorKind::kDemonstrative: return "demonstrative";
    case AnaphorKind::kVpDo: return "vp_do";
  }
  return "?";
}

void DiscourseContext::paragraph_break() {
  ++paragraph;
  sentence = 0;
  referents.clear();
  last_event.reset();
}

const Referent* DiscourseContext::find(const std::string& skolem) const {
  for (const auto& r : referents)
    if (r.skolem == skolem) return &r;
  return nullptr;
}

std::vector<DeepGraph> resolve(const DeepGraph& g, const DiscourseContext& ctx) {
  return Resolver(g, ctx).run();
}

void advance(DiscourseContext* ctx, const Translation& t) {
  for (const auto& e : t.entities) {
    if (e.universal || e.variable || e.predicate.empty()) continue;
    Referent r;
    r.skolem = e.skolem;
    r.predicate = e.predicate;
    r.features = e.features;
    for (const auto& f : e.features) {
      if (f == "female" || f == "male") r.gender = f;
      if (f == "animate" || f == "inanimate") r.animacy = f;
      if (f == "singular" || f == "plural") r.number = f;
    }
    r.role = e.role;
    r.sentence = ctx->sentence;
    r.paragraph = ctx->paragraph;
    r.surface = e.surface;
    auto it = std::find_if(ctx->referents.begin(), ctx->referents.end(),
                           [&](const Referent& x) { return x.skolem == r.skolem; });
    if (it == ctx->referents.end()) {
      ctx->referents.push_back(std::move(r));
    } else {
      if (role_rank(r.role) < role_rank(it->role) || it->sentence < r.sentence) it->role = r.role;
      it->sentence = r.sentence;
    }
  }
  if (t.event && t.kind != SentenceKind::kInterrogative) ctx->last_event = t.event;
  ++ctx->sentence;
}

}  // namespace cnl
