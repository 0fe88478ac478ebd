#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "opal/operads.hpp"

namespace opal {

namespace {

using El = SetOperad::El;
using Dec = DecoratedTree::Dec;

struct LocalCtx {
  const SetOperad* base = nullptr;
  std::set<El> sbar;
  int vertex_bound = 3;

  bool is_unit(El e) const {
    const Profile& p = base->profile_of_el(e);
    return p.arity() == 1 && p.in[0] == p.out && base->unit(p.out) == e;
  }

  // decoration candidates for a vertex profile, alternation left to the caller
  std::vector<Dec> candidates(const Profile& vp) const {
    std::vector<Dec> out;
    for (El e : base->elements(vp)) out.push_back({false, e});
    if (vp.arity() == 1) {
      Profile rev{{vp.out}, vp.in[0]};
      for (El s : sbar)
        if (base->profile_of_el(s) == rev) out.push_back({true, s});
    }
    return out;
  }

  static bool alternation_ok(const PlanarTree& t, const std::vector<Dec>& phi) {
    for (int e = 0; e < t.internal_edge_count(); ++e) {
      int child = t.edge_child(e);
      int parent = t.parent_of(child);
      if (phi[child].inverse == phi[parent].inverse) return false;
    }
    return true;
  }

  // rebuilds the decoration vector after a surgery, following tags
  static std::vector<Dec> remap(const PlanarTree& before, const std::vector<Dec>& phi,
                                const PlanarTree& after) {
    std::vector<Dec> out(after.vertex_count());
    for (int v = 0; v < after.vertex_count(); ++v) {
      int old = before.index_of_tag(after.tag(v));
      if (old < 0) throw std::logic_error("localized operad: lost decoration");
      out[v] = phi[old];
    }
    return out;
  }

  // removes one unary vertex with no decoration repair; used for the
  // cancellation of an adjacent x, inverse-x pair where both vertices go
  DecoratedTree splice_raw(const DecoratedTree& dt, int v) const {
    SubstStep st = substitute(dt.tree, v, PlanarTree::exceptional(dt.tree.vertex_profile(v).out));
    DecoratedTree out;
    out.tree = st.result;
    if (!out.tree.is_exceptional()) out.phi = remap(dt.tree, dt.phi, out.tree);
    return out;
  }

  // removes one unary vertex by substituting the exceptional edge, repairing
  // the alternation across a merged edge by composing decorations
  std::optional<DecoratedTree> splice_out(const DecoratedTree& dt, int v) const {
    SubstStep st = substitute(dt.tree, v, PlanarTree::exceptional(dt.tree.vertex_profile(v).out));
    DecoratedTree out;
    out.tree = st.result;
    if (out.tree.is_exceptional()) {
      return out;  // nothing left to decorate
    }
    out.phi = remap(dt.tree, dt.phi, out.tree);
    // repair a merged edge whose endpoints now have the same kind
    for (int e = 0; e < int(st.edges.size()); ++e) {
      if (st.edges[e].kind != SubstStep::EdgeSrc::Merged) continue;
      int child = out.tree.edge_child(e);
      int parent = out.tree.parent_of(child);
      if (out.phi[child].inverse != out.phi[parent].inverse) continue;
      EdgeContraction ec = contract_edge(out.tree, e);
      Dec merged;
      if (out.phi[child].inverse) {
        auto z = base->compose_at(out.phi[child].el, 0, out.phi[parent].el);
        if (!z || !sbar.count(*z)) return std::nullopt;
        merged = {true, *z};
      } else {
        auto z = base->compose_at(out.phi[parent].el, ec.slot, out.phi[child].el);
        if (!z) return std::nullopt;
        merged = {false, *z};
      }
      std::vector<Dec> phi2(ec.result.vertex_count());
      for (int u = 0; u < out.tree.vertex_count(); ++u) {
        if (u == child) continue;
        phi2[ec.vertex_map[u]] = out.phi[u];
      }
      phi2[ec.merged_vertex] = merged;
      out.tree = ec.result;
      out.phi = std::move(phi2);
    }
    return out;
  }

  // all one-step reductions by the generating identifications
  std::vector<DecoratedTree> reductions(const DecoratedTree& dt) const {
    std::vector<DecoratedTree> out;
    if (dt.tree.is_exceptional()) return out;
    const PlanarTree& t = dt.tree;
    // cancellation of an adjacent inverse pair
    for (int e = 0; e < t.internal_edge_count(); ++e) {
      int child = t.edge_child(e);
      int parent = t.parent_of(child);
      if (t.vertex_profile(child).arity() != 1 || t.vertex_profile(parent).arity() != 1) continue;
      const Dec &a = dt.phi[child], &b = dt.phi[parent];
      if (a.inverse == b.inverse || !(a.el == b.el)) continue;
      if (!sbar.count(a.el)) continue;
      // both vertices vanish together: contract the pair into one loop-shaped
      // vertex, which then splices out like a unit
      EdgeContraction ec = contract_edge(t, e);
      DecoratedTree merged;
      merged.tree = ec.result;
      merged.phi.resize(ec.result.vertex_count());
      for (int u = 0; u < t.vertex_count(); ++u) {
        if (u == child) continue;
        merged.phi[ec.vertex_map[u]] = dt.phi[u];
      }
      out.push_back(splice_raw(merged, ec.merged_vertex));
    }
    // unit and inverse-unit vertices vanish
    for (int v = 0; v < t.vertex_count(); ++v) {
      const Dec& d = dt.phi[v];
      Profile vp = t.vertex_profile(v);
      if (vp.arity() != 1 || vp.in[0] != vp.out) continue;
      bool unit_like = (!d.inverse && is_unit(d.el)) || (d.inverse && is_unit(d.el));
      if (!unit_like) continue;
      auto r = splice_out(dt, v);
      if (r) out.push_back(*r);
    }
    return out;
  }

  DecoratedTree greedy_reduce(const DecoratedTree& dt) const {
    DecoratedTree cur = dt;
    while (true) {
      auto nexts = reductions(cur);
      if (nexts.empty()) return cur;
      cur = nexts.front();
    }
  }

  // minimum over the vertex-reordering orbit (rule 4)
  DecoratedTree orbit_min(const DecoratedTree& dt) const {
    if (dt.tree.is_exceptional()) return dt;
    long orbit = 1;
    std::vector<std::uint64_t> tags;
    for (int v = 0; v < dt.tree.vertex_count(); ++v) {
      int a = dt.tree.vertex_profile(v).arity();
      long f = 1;
      for (int k = 2; k <= a; ++k) f *= k;
      orbit *= f;
      tags.push_back(dt.tree.tag(v));
    }
    if (orbit > 100000) throw std::logic_error("localized operad: reordering orbit too large");
    DecoratedTree best = dt;
    bool haveBest = false;
    auto rec = [&](auto&& self, const DecoratedTree& cur, size_t k) -> void {
      if (k == tags.size()) {
        if (!haveBest || cur < best) {
          best = cur;
          haveBest = true;
        }
        return;
      }
      int v = cur.tree.index_of_tag(tags[k]);
      int a = cur.tree.vertex_profile(v).arity();
      for (const Perm& s : all_perms(a)) {
        if (perm_is_id(s)) {
          self(self, cur, k + 1);
          continue;
        }
        if (cur.phi[v].inverse) continue;  // unary anyway
        auto acted = base->act(cur.phi[v].el, s);
        if (!acted) continue;
        DecoratedTree next;
        next.tree = reorder_at_vertex(cur.tree, v, s);
        next.phi = remap(cur.tree, cur.phi, next.tree);
        next.phi[next.tree.index_of_tag(tags[k])] = {false, *acted};
        self(self, next, k + 1);
      }
    };
    rec(rec, dt, 0);
    return best;
  }

  DecoratedTree canonical(const DecoratedTree& dt) const { return orbit_min(greedy_reduce(dt)); }
};

}  // namespace

LocalizedOperad localize_operad(const SetOperad& base, const std::vector<SetOperad::El>& s,
                                int vertex_bound) {
  auto ctx = std::make_shared<LocalCtx>();
  ctx->base = &base;
  ctx->vertex_bound = vertex_bound;
  // close S under unary composition
  for (El e : s) {
    if (base.profile_of_el(e).arity() != 1)
      throw std::invalid_argument("localize_operad: S must consist of unary elements");
    ctx->sbar.insert(e);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<El> cur(ctx->sbar.begin(), ctx->sbar.end());
    for (El a : cur)
      for (El b : cur) {
        if (base.profile_of_el(a).in[0] != base.profile_of_el(b).out) continue;
        auto ab = base.compose_at(a, 0, b);
        if (ab && ctx->sbar.insert(*ab).second) grew = true;
      }
  }

  // enumerate all alternating decorated trees within the vertex bound
  std::vector<DecoratedTree> all;
  std::vector<Profile> profiles;
  {
    std::vector<std::vector<Color>> layer{{}};
    for (int n = 0; n <= base.arity_bound(); ++n) {
      for (const auto& in : layer)
        for (Color d = 0; d < base.color_count(); ++d) profiles.push_back({in, d});
      std::vector<std::vector<Color>> next;
      for (const auto& in : layer)
        for (Color x = 0; x < base.color_count(); ++x) {
          auto e = in;
          e.push_back(x);
          next.push_back(e);
        }
      layer = std::move(next);
    }
  }
  auto decorate_all = [&](const PlanarTree& t, auto&& sink) {
    if (t.is_exceptional()) {
      sink(DecoratedTree{t, {}});
      return;
    }
    std::vector<std::vector<Dec>> cand(t.vertex_count());
    for (int v = 0; v < t.vertex_count(); ++v) cand[v] = ctx->candidates(t.vertex_profile(v));
    std::vector<Dec> phi(t.vertex_count());
    auto rec = [&](auto&& self, int v) -> void {
      if (v == t.vertex_count()) {
        if (LocalCtx::alternation_ok(t, phi)) sink(DecoratedTree{t, phi});
        return;
      }
      for (const Dec& d : cand[v]) {
        int parent = t.parent_of(v);
        if (parent >= 0 && phi[parent].inverse == d.inverse) continue;
        phi[v] = d;
        self(self, v + 1);
      }
    };
    rec(rec, 0);
  };
  for (const Profile& p : profiles)
    for (const PlanarTree& t : enumerate_trees(base.color_count(), p, vertex_bound - 1))
      decorate_all(t, [&](DecoratedTree dt) { all.push_back(std::move(dt)); });

  // union-find across one-step reductions and vertex reorderings
  std::map<DecoratedTree, int> idx;
  for (int i = 0; i < int(all.size()); ++i) idx[all[i]] = i;
  std::vector<int> uf(all.size());
  for (size_t i = 0; i < uf.size(); ++i) uf[i] = int(i);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  auto unite = [&](int a, int b) { uf[find(a)] = find(b); };
  auto index_of = [&](const DecoratedTree& dt) -> int {
    auto it = idx.find(dt);
    return it == idx.end() ? -1 : it->second;
  };
  for (int i = 0; i < int(all.size()); ++i) {
    for (const DecoratedTree& r : ctx->reductions(all[i])) {
      int j = index_of(r);
      if (j < 0) throw std::logic_error("localize_operad: reduction escaped the enumeration");
      unite(i, j);
    }
    // adjacent-transposition reorderings generate rule 4
    const DecoratedTree& dt = all[i];
    if (!dt.tree.is_exceptional()) {
      for (int v = 0; v < dt.tree.vertex_count(); ++v) {
        int a = dt.tree.vertex_profile(v).arity();
        for (int k = 0; k + 1 < a; ++k) {
          Perm t = perm_id(a);
          std::swap(t[k], t[k + 1]);
          auto acted = base.act(dt.phi[v].el, t);
          if (!acted) continue;
          DecoratedTree next;
          next.tree = reorder_at_vertex(dt.tree, v, t);
          next.phi = LocalCtx::remap(dt.tree, dt.phi, next.tree);
          next.phi[next.tree.index_of_tag(dt.tree.tag(v))] = {dt.phi[v].inverse, *acted};
          int j = index_of(next);
          if (j < 0) throw std::logic_error("localize_operad: reordering escaped the enumeration");
          unite(i, j);
        }
      }
    }
  }

  LocalizedOperad out;
  out.base = &base;
  out.sbar.assign(ctx->sbar.begin(), ctx->sbar.end());

  // assemble classes
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < int(all.size()); ++i) groups[find(i)].push_back(i);
  auto classes = std::make_shared<std::vector<DecoratedTree>>();
  auto member_lists = std::make_shared<std::vector<std::vector<DecoratedTree>>>();
  auto class_index = std::make_shared<std::map<DecoratedTree, int>>();
  bool confluent = true;
  std::vector<std::pair<DecoratedTree, std::vector<int>>> ordered;
  for (auto& [root, members] : groups) {
    DecoratedTree least = all[members[0]];
    for (int i : members)
      if (all[i] < least) least = all[i];
    ordered.push_back({least, members});
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [least, members] : ordered) {
    int cls = int(classes->size());
    classes->push_back(least);
    member_lists->emplace_back();
    std::set<DecoratedTree> canons;
    for (int i : members) {
      member_lists->back().push_back(all[i]);
      (*class_index)[all[i]] = cls;
      canons.insert(ctx->canonical(all[i]));
    }
    std::sort(member_lists->back().begin(), member_lists->back().end());
    if (canons.size() != 1) confluent = false;
  }
  out.confluent = confluent;

  // the localized operad proper
  SetOperad& op = out.op;
  op.set_arity_bound(base.arity_bound());
  op.set_partial(true);
  for (Color c = 0; c < base.color_count(); ++c) op.add_color(base.color_name(c));
  auto el_of_class = std::make_shared<std::vector<El>>();
  for (int cls = 0; cls < int(classes->size()); ++cls) {
    const DecoratedTree& rep = (*classes)[cls];
    Profile p = rep.tree.profile();
    el_of_class->push_back(op.add_element(p, rep.str(base)));
  }
  auto class_of_el = std::make_shared<std::map<El, int>>();
  for (int cls = 0; cls < int(classes->size()); ++cls) (*class_of_el)[(*el_of_class)[cls]] = cls;
  for (Color c = 0; c < base.color_count(); ++c) {
    DecoratedTree up{PlanarTree::exceptional(c), {}};
    auto it = class_index->find(up);
    if (it == class_index->end()) throw std::logic_error("localize_operad: missing unit class");
    op.set_unit(c, (*el_of_class)[it->second]);
  }

  auto lookup_class = [ctx, class_index](const DecoratedTree& dt) -> std::optional<int> {
    auto it = class_index->find(dt);
    if (it != class_index->end()) return it->second;
    DecoratedTree red = ctx->greedy_reduce(dt);
    it = class_index->find(red);
    if (it != class_index->end()) return it->second;
    DecoratedTree canon = ctx->orbit_min(red);
    it = class_index->find(canon);
    if (it != class_index->end()) return it->second;
    return std::nullopt;
  };

  // composition: graft representatives, repair the new edge, reduce
  auto compose_dec = [ctx, lookup_class](const DecoratedTree& a, int i,
                                         const DecoratedTree& b) -> std::optional<DecoratedTree> {
    if (a.tree.is_exceptional()) return b;
    if (b.tree.is_exceptional()) return a;
    Profile pa = a.tree.profile();
    std::vector<PlanarTree> branches;
    for (int j = 0; j < pa.arity(); ++j)
      branches.push_back(j == i ? b.tree : PlanarTree::exceptional(pa.in[j]));
    PlanarTree tl = PlanarTree::two_level(pa, [&] {
      std::vector<std::vector<Color>> bs;
      for (auto& br : branches) bs.push_back(br.profile().in);
      return bs;
    }());
    std::vector<PlanarTree> assignment{a.tree};
    assignment.insert(assignment.end(), branches.begin(), branches.end());
    TreeMorphism m = substitute_all(tl, assignment);
    DecoratedTree res;
    res.tree = m.source;
    res.phi.resize(res.tree.vertex_count());
    for (int v = 0; v < a.tree.vertex_count(); ++v) res.phi[m.source_vertex[0][v]] = a.phi[v];
    for (int v = 0; v < b.tree.vertex_count(); ++v)
      res.phi[m.source_vertex[1 + i][v]] = b.phi[v];
    // repair the grafting edge if both endpoints carry the same kind
    int newEdge = -1;
    int bRoot = m.source_vertex[1 + i][0];
    for (int e = 0; e < res.tree.internal_edge_count(); ++e)
      if (res.tree.edge_child(e) == bRoot) newEdge = e;
    if (newEdge >= 0) {
      int child = res.tree.edge_child(newEdge);
      int parent = res.tree.parent_of(child);
      if (res.phi[child].inverse == res.phi[parent].inverse) {
        EdgeContraction ec = contract_edge(res.tree, newEdge);
        Dec merged;
        if (res.phi[child].inverse) {
          auto z = ctx->base->compose_at(res.phi[child].el, 0, res.phi[parent].el);
          if (!z || !ctx->sbar.count(*z)) return std::nullopt;
          merged = {true, *z};
        } else {
          auto z = ctx->base->compose_at(res.phi[parent].el, ec.slot, res.phi[child].el);
          if (!z) return std::nullopt;
          merged = {false, *z};
        }
        std::vector<Dec> phi2(ec.result.vertex_count());
        for (int u = 0; u < res.tree.vertex_count(); ++u) {
          if (u == child) continue;
          phi2[ec.vertex_map[u]] = res.phi[u];
        }
        phi2[ec.merged_vertex] = merged;
        res.tree = ec.result;
        res.phi = std::move(phi2);
      }
    }
    return ctx->greedy_reduce(res);
  };

  op.set_rules(
      [classes, el_of_class, class_of_el, lookup_class, compose_dec](
          const SetOperad&, El p, int i, El q) -> std::optional<El> {
        const DecoratedTree& a = (*classes)[class_of_el->at(p)];
        const DecoratedTree& b = (*classes)[class_of_el->at(q)];
        auto res = compose_dec(a, i, b);
        if (!res) return std::nullopt;
        auto cls = lookup_class(*res);
        if (!cls) return std::nullopt;
        return (*el_of_class)[*cls];
      },
      [classes, el_of_class, class_of_el, lookup_class](const SetOperad&, El p,
                                                        const Perm& sigma) -> std::optional<El> {
        const DecoratedTree& a = (*classes)[class_of_el->at(p)];
        DecoratedTree res{reorder(a.tree, sigma), a.phi};
        auto cls = lookup_class(res);
        if (!cls) return std::nullopt;
        return (*el_of_class)[*cls];
      });

  out.ell = [base = &base, class_index, el_of_class, ctx](El x) -> El {
    DecoratedTree dt{PlanarTree::corolla(base->profile_of_el(x)), {Dec{false, x}}};
    DecoratedTree red = ctx->greedy_reduce(dt);
    auto it = class_index->find(red);
    if (it == class_index->end()) throw std::logic_error("localized operad: ell escaped");
    return (*el_of_class)[it->second];
  };
  out.reduce = [ctx](const DecoratedTree& dt) { return ctx->greedy_reduce(dt); };
  out.class_of = [lookup_class, el_of_class](const DecoratedTree& dt) -> std::optional<El> {
    auto cls = lookup_class(dt);
    if (!cls) return std::nullopt;
    return (*el_of_class)[*cls];
  };
  out.members = [member_lists, class_of_el](El e) { return (*member_lists)[class_of_el->at(e)]; };
  out.reductions = [ctx](const DecoratedTree& dt) { return ctx->reductions(dt); };

  // stabilization: compositions close and the next enumeration layer collapses
  bool closed = true;
  for (const auto& p : op.all_elements()) {
    const Profile& pp = op.profile_of_el(p);
    for (int i = 0; i < pp.arity() && closed; ++i)
      for (const auto& q : op.all_elements()) {
        if (op.profile_of_el(q).out != pp.in[i]) continue;
        if (pp.arity() + op.profile_of_el(q).arity() - 1 > op.arity_bound()) continue;
        if (!op.compose_at(p, i, q)) {
          closed = false;
          break;
        }
      }
    if (!closed) break;
  }
  bool collapsed = true;
  for (const Profile& p : profiles) {
    if (!collapsed) break;
    for (const PlanarTree& t : enumerate_trees(base.color_count(), p, vertex_bound)) {
      if (t.vertex_count() != vertex_bound + 1) continue;
      decorate_all(t, [&](DecoratedTree dt) {
        if (!collapsed) return;
        if (!lookup_class(dt)) collapsed = false;
      });
      if (!collapsed) break;
    }
  }
  out.status = (closed && collapsed) ? LocalizationStatus::Complete : LocalizationStatus::Truncated;
  return out;
}

}  // namespace opal
