#include "opal/bv.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace opal {

namespace {

// J[T] (x) Q^D with the decoration factor last: flat index j * D + dec
ChainComplex summand_complex(const ChainComplex& jpart, int d) {
  std::vector<int> dims;
  std::vector<QMat> diffs;
  for (int k = 0; k <= jpart.top_degree(); ++k) dims.push_back(jpart.dim(k) * d);
  for (int k = 1; k <= jpart.top_degree(); ++k) diffs.push_back(jpart.d(k).kron(QMat::identity(d)));
  return ChainComplex(std::move(dims), std::move(diffs));
}

std::vector<PlanarTree> morphism_pool(const SetOperad& o, const PlanarTree& t, int budget) {
  std::set<PlanarTree> pool;
  std::set<Profile> seen;
  for (int v = 0; v < t.vertex_count(); ++v) {
    Profile p = t.vertex_profile(v);
    if (!seen.insert(p).second) continue;
    for (const auto& h : enumerate_trees(o.color_count(), p, budget)) pool.insert(h);
  }
  return {pool.begin(), pool.end()};
}

}  // namespace

int BvEntry::tree_index(const PlanarTree& t) const {
  for (int i = 0; i < int(trees.size()); ++i)
    if (trees[i] == t) return i;
  return -1;
}

int BvEntry::summand_offset(int t, int degree) const {
  int off = 0;
  for (int i = 0; i < t; ++i) off += jparts[i].dim(degree) * int(decorations[i].size());
  return off;
}

QVec BvEntry::class_vector(int t, int degree, int j, int dec) const {
  int col = summand_offset(t, degree) + j * int(decorations[t].size()) + dec;
  QMat p = quot.projection(degree);
  QVec out(p.rows(), Q(0));
  for (int r = 0; r < p.rows(); ++r) out[r] = p.at(r, col);
  return out;
}

BvEntry build_wn_entry(const SetOperad& o, const Profile& profile, int n) {
  if (o.partial()) throw std::invalid_argument("build_wn_entry: needs a total operad");
  BvEntry e;
  e.op = &o;
  e.profile = profile;
  e.level = n;

  std::vector<PlanarTree> pool = enumerate_trees(o.color_count(), profile, n);
  for (const PlanarTree& t : pool) {
    // the decoration set, empty when any vertex entry is empty
    std::vector<std::vector<SetOperad::El>> decs{{}};
    bool zero = false;
    for (int v = 0; v < t.vertex_count() && !zero; ++v) {
      Profile vp = t.vertex_profile(v);
      if (vp.arity() > o.arity_bound())
        throw std::invalid_argument("build_wn_entry: vertex arity exceeds the operad bound");
      auto els = o.elements(vp);
      if (els.empty()) {
        zero = true;
        break;
      }
      std::vector<std::vector<SetOperad::El>> next;
      for (const auto& tuple : decs)
        for (const auto& el : els) {
          auto ext = tuple;
          ext.push_back(el);
          next.push_back(ext);
        }
      decs = std::move(next);
    }
    if (zero) continue;
    e.trees.push_back(t);
    e.jparts.push_back(j_power(t.internal_edge_count()));
    e.dec_index.emplace_back();
    for (int i = 0; i < int(decs.size()); ++i) e.dec_index.back()[decs[i]] = i;
    e.decorations.push_back(std::move(decs));
  }

  std::vector<ChainComplex> parts;
  for (int t = 0; t < int(e.trees.size()); ++t)
    parts.push_back(summand_complex(e.jparts[t], int(e.decorations[t].size())));
  e.pre = parts.empty() ? ChainComplex::concentrated(0) : direct_sum(parts);

  // relation legs from generating single-vertex substitutions
  struct Rel {
    int target;  // tree index of T
    int source;  // tree index of K
    ChainMap jmap;
    QMat decmap;  // D_K -> D_T
  };
  std::vector<Rel> rels;
  for (int t = 0; t < int(e.trees.size()); ++t) {
    const PlanarTree& T = e.trees[t];
    if (T.is_exceptional()) continue;
    int budget = n - T.internal_edge_count();
    for (const TreeMorphism& m : enumerate_generating_morphisms(T, morphism_pool(o, T, budget))) {
      if (m.source.internal_edge_count() > n) continue;
      int k = e.tree_index(m.source);
      if (k < 0) continue;  // the source summand is zero
      Rel r;
      r.target = t;
      r.source = k;
      r.jmap = j_functor_map(m);
      int dk = int(e.decorations[k].size()), dt = int(e.decorations[t].size());
      r.decmap = QMat(dt, dk);
      for (int d = 0; d < dk; ++d) {
        const auto& tuple = e.decorations[k][d];
        std::vector<SetOperad::El> image;
        for (int v = 0; v < T.vertex_count(); ++v) {
          std::vector<SetOperad::El> sub;
          for (int idx : m.source_vertex[v]) sub.push_back(tuple[idx]);
          auto g = o.structure_map(m.assignment[v], sub);
          if (!g) throw std::logic_error("build_wn_entry: composition escaped the arity bound");
          image.push_back(*g);
        }
        auto it = e.dec_index[t].find(image);
        if (it == e.dec_index[t].end())
          throw std::logic_error("build_wn_entry: composed decoration not found");
        r.decmap.at(it->second, d) = 1;
      }
      rels.push_back(std::move(r));
    }
  }

  // assemble the difference of the two legs as one chain map into the sum
  std::vector<ChainComplex> relParts;
  for (const Rel& r : rels)
    relParts.push_back(summand_complex(e.jparts[r.target], int(e.decorations[r.source].size())));
  ChainComplex relSrc = relParts.empty() ? ChainComplex::concentrated(0) : direct_sum(relParts);
  int top = std::max(e.pre.top_degree(), relSrc.top_degree());
  std::vector<QMat> mats;
  for (int k = 0; k <= top; ++k) {
    QMat m(e.pre.dim(k), relSrc.dim(k));
    int colOff = 0;
    for (const Rel& r : rels) {
      int dk = int(e.decorations[r.source].size());
      int cols = e.jparts[r.target].dim(k) * dk;
      // leg A: (J-map (x) id) into the K summand
      QMat a = r.jmap.at(k).kron(QMat::identity(dk));
      int aOff = e.summand_offset(r.source, k);
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
          if (a.at(i, j) != 0) m.at(aOff + i, colOff + j) += a.at(i, j);
      // leg B: (id (x) gamma) into the T summand
      QMat b = QMat::identity(e.jparts[r.target].dim(k)).kron(r.decmap);
      int bOff = e.summand_offset(r.target, k);
      for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
          if (b.at(i, j) != 0) m.at(bOff + i, colOff + j) -= b.at(i, j);
      colOff += cols;
    }
    mats.push_back(std::move(m));
  }
  ChainMap rel(relSrc, e.pre, std::move(mats));
  e.quot = cokernel(rel);
  return e;
}

AugmentationData augmentation(const BvEntry& e) {
  AugmentationData out;
  const SetOperad& o = *e.op;
  int target = o.entry_size(e.profile);
  // eta on the presummand: counits then the tree structure morphism
  QMat etaPre(target, e.pre.dim(0));
  for (int t = 0; t < int(e.trees.size()); ++t) {
    int dcount = int(e.decorations[t].size());
    int joff = e.summand_offset(t, 0);
    int jdim = e.jparts[t].dim(0);
    for (int d = 0; d < dcount; ++d) {
      auto g = o.structure_map(e.trees[t], e.decorations[t][d]);
      if (!g) throw std::logic_error("augmentation: structure map escaped the arity bound");
      for (int j = 0; j < jdim; ++j) etaPre.at(g->idx, joff + j * dcount + d) = 1;
    }
  }
  // descent through the quotient: eta kills the relations, so it factors as
  // etaBar = etaPre . section with etaBar . proj == etaPre
  out.eta = etaPre * e.quot.section(0);
  out.report.require(out.eta * e.quot.projection(0) == etaPre,
                     "augmentation does not descend through the quotient");

  int corolla = e.tree_index(PlanarTree::corolla(e.profile));
  if (corolla < 0) {
    if (target != 0) out.report.fail("corolla summand missing for a nonempty entry");
    out.xi = QMat(e.quot.quotient.dim(0), target);
    return out;
  }
  out.xi = QMat(e.quot.quotient.dim(0), target);
  for (int x = 0; x < target; ++x) {
    // decorations of the corolla are the entry elements in order
    QVec cls = e.class_vector(corolla, 0, 0, x);
    for (int r = 0; r < int(cls.size()); ++r) out.xi.at(r, x) = cls[r];
  }
  out.report.require((out.eta * out.xi).is_identity(), "eta . xi is not the identity");
  return out;
}

ChainMap filtration_inclusion(const BvEntry& lower, const BvEntry& upper) {
  if (!(lower.profile == upper.profile) || lower.level + 1 != upper.level)
    throw std::invalid_argument("filtration_inclusion: levels must be adjacent");
  int top = std::max(lower.pre.top_degree(), upper.pre.top_degree());
  std::vector<QMat> incs;
  for (int k = 0; k <= top; ++k) {
    QMat inc(upper.pre.dim(k), lower.pre.dim(k));
    for (int t = 0; t < int(lower.trees.size()); ++t) {
      int u = upper.tree_index(lower.trees[t]);
      if (u < 0) throw std::logic_error("filtration_inclusion: summand missing upstairs");
      int rows = lower.jparts[t].dim(k) * int(lower.decorations[t].size());
      int lo = lower.summand_offset(t, k), uo = upper.summand_offset(u, k);
      for (int i = 0; i < rows; ++i) inc.at(uo + i, lo + i) = 1;
    }
    incs.push_back(std::move(inc));
  }
  std::vector<QMat> mats;
  for (int k = 0; k <= top; ++k)
    mats.push_back(upper.quot.projection(k) * incs[k] * lower.quot.section(k));
  return ChainMap(lower.quot.quotient, upper.quot.quotient, std::move(mats));
}

CheckReport w_composition_check(const SetOperad& o, int arity_bound, int n) {
  CheckReport rep;
  // pools per profile
  std::map<Profile, std::vector<PlanarTree>> pools;
  std::vector<Profile> profiles;
  {
    std::vector<std::vector<Color>> layer{{}};
    for (int a = 0; a <= arity_bound; ++a) {
      for (const auto& in : layer)
        for (Color d = 0; d < o.color_count(); ++d) profiles.push_back({in, d});
      std::vector<std::vector<Color>> next;
      for (const auto& in : layer)
        for (Color x = 0; x < o.color_count(); ++x) {
          auto e2 = in;
          e2.push_back(x);
          next.push_back(e2);
        }
      layer = std::move(next);
    }
  }
  for (const Profile& p : profiles) pools[p] = enumerate_trees(o.color_count(), p, n);

  auto decorations_of = [&](const PlanarTree& t) {
    std::vector<std::vector<SetOperad::El>> decs{{}};
    for (int v = 0; v < t.vertex_count(); ++v) {
      auto els = o.elements(t.vertex_profile(v));
      if (els.empty()) return std::vector<std::vector<SetOperad::El>>{};
      std::vector<std::vector<SetOperad::El>> next;
      for (const auto& tuple : decs)
        for (const auto& el : els) {
          auto ext = tuple;
          ext.push_back(el);
          next.push_back(ext);
        }
      decs = std::move(next);
    }
    return decs;
  };

  // composition against the augmentation on grafting generators
  for (const Profile& tp : profiles) {
    if (tp.arity() < 1) continue;
    for (const PlanarTree& T : pools[tp]) {
      auto decT = decorations_of(T);
      if (decT.empty()) continue;
      // pick branch trees per input color, bounded in total size
      std::vector<std::vector<PlanarTree>> branchChoices;
      for (Color c : tp.in) {
        std::vector<PlanarTree> opts;
        for (const Profile& bp : profiles)
          if (bp.out == c)
            for (const PlanarTree& h : pools[bp])
              if (h.internal_edge_count() <= n) opts.push_back(h);
        branchChoices.push_back(std::move(opts));
      }
      std::vector<PlanarTree> chosen(tp.arity(), PlanarTree::exceptional(0));
      auto rec = [&](auto&& self, int slot, int usedEdges, int usedArity) -> void {
        if (usedEdges > n || usedArity > arity_bound) return;
        if (slot == tp.arity()) {
          PlanarTree g = graft(T, chosen);
          // combined decorations evaluate compatibly with gamma
          std::vector<std::vector<std::vector<SetOperad::El>>> decB;
          for (const auto& b : chosen) decB.push_back(decorations_of(b));
          for (const auto& db : decB)
            if (db.empty()) return;
          TreeMorphism m = substitute_all(
              PlanarTree::two_level(tp, [&] {
                std::vector<std::vector<Color>> out2;
                for (const auto& b : chosen) out2.push_back(b.profile().in);
                return out2;
              }()),
              [&] {
                std::vector<PlanarTree> a{T};
                a.insert(a.end(), chosen.begin(), chosen.end());
                return a;
              }());
          for (const auto& xt : decT) {
            std::vector<SetOperad::El> branchVals;
            std::vector<std::vector<SetOperad::El>> branchDecs;
            // take the first decoration of every branch and also iterate all
            // decorations when the branch sets are small
            std::vector<int> decIdx(chosen.size(), 0);
            auto run = [&](auto&& self2, size_t bi) -> void {
              if (bi == chosen.size()) {
                // assemble the decoration of the grafting
                std::vector<SetOperad::El> combined(m.source.vertex_count());
                for (int v = 0; v < T.vertex_count(); ++v)
                  combined[m.source_vertex[0][v]] = xt[v];
                for (size_t b = 0; b < chosen.size(); ++b)
                  for (int v = 0; v < chosen[b].vertex_count(); ++v)
                    combined[m.source_vertex[1 + b][v]] = decB[b][decIdx[b]][v];
                auto lhs = o.structure_map(m.source, combined);
                std::vector<SetOperad::El> vals;
                bool escaped = false;
                for (size_t b = 0; b < chosen.size(); ++b) {
                  auto vb = o.structure_map(chosen[b], decB[b][decIdx[b]]);
                  if (!vb) {
                    escaped = true;
                    break;
                  }
                  vals.push_back(*vb);
                }
                auto rootVal = o.structure_map(T, xt);
                if (escaped || !rootVal || !lhs) return;
                auto rhs = o.gamma(*rootVal, vals);
                if (!rhs) return;
                if (!(*lhs == *rhs))
                  rep.fail("composition vs augmentation fails over " + g.str());
                return;
              }
              for (int d = 0; d < int(decB[bi].size()); ++d) {
                decIdx[bi] = d;
                self2(self2, bi + 1);
              }
            };
            run(run, 0);
          }
          return;
        }
        for (const PlanarTree& b : branchChoices[slot]) {
          chosen[slot] = b;
          self(self, slot + 1,
               usedEdges + b.internal_edge_count() + (b.is_exceptional() ? 0 : 1),
               usedArity + b.profile().arity());
        }
        chosen[slot] = PlanarTree::exceptional(tp.in[slot]);
      };
      rec(rec, 0, T.internal_edge_count(), 0);
    }
  }

  // unit clause: grafting with exceptional edges is neutral on summands
  for (const Profile& tp : profiles) {
    if (tp.arity() < 1) continue;
    for (const PlanarTree& T : pools[tp]) {
      auto decT = decorations_of(T);
      if (decT.empty()) continue;
      std::vector<PlanarTree> ups;
      for (Color c : tp.in) ups.push_back(PlanarTree::exceptional(c));
      rep.require(graft(T, ups) == T, "grafting with units moves the summand " + T.str());
      for (const auto& xt : decT) {
        std::vector<SetOperad::El> units;
        for (Color c : tp.in) units.push_back(o.unit(c));
        auto val = o.structure_map(T, xt);
        if (!val) continue;
        auto lhs = o.gamma(*val, units);
        if (!lhs || !(*lhs == *val)) rep.fail("unit clause fails over " + T.str());
      }
    }
  }

  // equivariance clause on permuted corolla summands, at the entry level
  for (const Profile& tp : profiles) {
    int a = tp.arity();
    if (a < 2 || a > arity_bound) continue;
    if (o.entry_size(tp) == 0) continue;
    for (const Perm& s : all_perms(a)) {
      if (perm_is_id(s)) continue;
      Profile moved{act_right(tp.in, s), tp.out};
      BvEntry entry = build_wn_entry(o, moved, 0);
      PlanarTree permCor = PlanarTree::permuted_corolla(tp, s);
      PlanarTree plainCor = PlanarTree::corolla(moved);
      int tPerm = entry.tree_index(permCor);
      int tPlain = entry.tree_index(plainCor);
      if (tPerm < 0 || tPlain < 0) {
        rep.fail("missing corolla summands for " + profile_str(moved));
        continue;
      }
      for (int x = 0; x < int(entry.decorations[tPerm].size()); ++x) {
        SetOperad::El el = entry.decorations[tPerm][x][0];
        auto movedEl = o.act(el, s);
        int y = entry.dec_index[tPlain].at({*movedEl});
        if (!(entry.class_vector(tPerm, 0, 0, x) == entry.class_vector(tPlain, 0, 0, y)))
          rep.fail("equivariance clause fails on " + o.element_name(el) + " with " + perm_str(s));
      }
    }
  }
  return rep;
}

CheckReport check_w_algebra(const SetOperad& o, const VectAlgebra& x, int n) {
  CheckReport rep;
  std::vector<Profile> profiles;
  {
    std::vector<std::vector<Color>> layer{{}};
    for (int a = 0; a <= o.arity_bound(); ++a) {
      for (const auto& in : layer)
        for (Color d = 0; d < o.color_count(); ++d) profiles.push_back({in, d});
      std::vector<std::vector<Color>> next;
      for (const auto& in : layer)
        for (Color cx = 0; cx < o.color_count(); ++cx) {
          auto e2 = in;
          e2.push_back(cx);
          next.push_back(e2);
        }
      layer = std::move(next);
    }
  }
  auto decorations_of = [&](const PlanarTree& t) {
    std::vector<std::vector<SetOperad::El>> decs{{}};
    for (int v = 0; v < t.vertex_count(); ++v) {
      auto els = o.elements(t.vertex_profile(v));
      if (els.empty()) return std::vector<std::vector<SetOperad::El>>{};
      std::vector<std::vector<SetOperad::El>> next;
      for (const auto& tuple : decs)
        for (const auto& el : els) {
          auto ext = tuple;
          ext.push_back(el);
          next.push_back(ext);
        }
      decs = std::move(next);
    }
    return decs;
  };
  auto theta_of = [&](const PlanarTree& t,
                      const std::vector<SetOperad::El>& dec) -> std::optional<QMat> {
    auto g = o.structure_map(t, dec);
    if (!g) return std::nullopt;  // the composite escapes the truncation
    return x.map_of(*g);
  };

  // unity: the exceptional edge acts as the identity
  for (Color c = 0; c < o.color_count(); ++c)
    rep.require(x.map_of(o.unit(c)).is_identity(),
                "unity fails at color " + o.color_name(c));
  // unit consequence: the one-vertex linear graph decorated by the unit
  for (Color c = 0; c < o.color_count(); ++c) {
    PlanarTree lin = PlanarTree::linear({c, c});
    auto th = theta_of(lin, {o.unit(c)});
    rep.require(th.has_value() && th->is_identity(),
                "unit-decorated linear vertex does not act as the identity at " + o.color_name(c));
  }

  std::map<Profile, std::vector<PlanarTree>> pools;
  for (const Profile& p : profiles) pools[p] = enumerate_trees(o.color_count(), p, n);

  // associativity over graftings
  for (const Profile& tp : profiles) {
    if (tp.arity() < 1) continue;
    for (const PlanarTree& T : pools[tp]) {
      auto decT = decorations_of(T);
      if (decT.empty()) continue;
      std::vector<std::vector<PlanarTree>> branchChoices;
      for (Color c : tp.in) {
        std::vector<PlanarTree> opts;
        for (const Profile& bp : profiles)
          if (bp.out == c)
            for (const PlanarTree& h : pools[bp]) opts.push_back(h);
        branchChoices.push_back(std::move(opts));
      }
      std::vector<PlanarTree> chosen(tp.arity(), PlanarTree::exceptional(0));
      auto rec = [&](auto&& self, int slot, int usedEdges, int usedArity) -> void {
        if (usedEdges > n || usedArity > o.arity_bound()) return;
        if (slot == tp.arity()) {
          std::vector<std::vector<std::vector<SetOperad::El>>> decB;
          for (const auto& b : chosen) {
            decB.push_back(decorations_of(b));
            if (decB.back().empty()) return;
          }
          PlanarTree g = graft(T, chosen);
          auto decG = decorations_of(g);
          for (const auto& xt : decT) {
            std::vector<int> decIdx(chosen.size(), 0);
            auto run = [&](auto&& self2, size_t bi) -> void {
              if (bi == chosen.size()) {
                QMat inner(1, 1);
                inner.at(0, 0) = 1;
                bool escaped = false;
                for (size_t b = 0; b < chosen.size(); ++b) {
                  auto tb = theta_of(chosen[b], decB[b][decIdx[b]]);
                  if (!tb) {
                    escaped = true;
                    break;
                  }
                  inner = inner.kron(*tb);
                }
                auto troot = theta_of(T, xt);
                if (escaped || !troot) return;
                QMat lhs = *troot * inner;
                // the combined decoration of the grafting
                TreeMorphism m = substitute_all(
                    PlanarTree::two_level(tp, [&] {
                      std::vector<std::vector<Color>> out2;
                      for (const auto& b : chosen) out2.push_back(b.profile().in);
                      return out2;
                    }()),
                    [&] {
                      std::vector<PlanarTree> a2{T};
                      a2.insert(a2.end(), chosen.begin(), chosen.end());
                      return a2;
                    }());
                std::vector<SetOperad::El> combined(m.source.vertex_count());
                for (int v = 0; v < T.vertex_count(); ++v)
                  combined[m.source_vertex[0][v]] = xt[v];
                for (size_t b = 0; b < chosen.size(); ++b)
                  for (int v = 0; v < chosen[b].vertex_count(); ++v)
                    combined[m.source_vertex[1 + b][v]] = decB[b][decIdx[b]][v];
                auto rhs = theta_of(m.source, combined);
                if (rhs && !(lhs == *rhs)) rep.fail("associativity fails over " + g.str());
                return;
              }
              for (int d = 0; d < int(decB[bi].size()); ++d) {
                decIdx[bi] = d;
                self2(self2, bi + 1);
              }
            };
            run(run, 0);
          }
          return;
        }
        for (const PlanarTree& b : branchChoices[slot]) {
          chosen[slot] = b;
          self(self, slot + 1,
               usedEdges + b.internal_edge_count() + (b.is_exceptional() ? 0 : 1),
               usedArity + b.profile().arity());
        }
        chosen[slot] = PlanarTree::exceptional(tp.in[slot]);
      };
      rec(rec, 0, T.internal_edge_count(), 0);
      (void)decT;
    }
  }

  // equivariance
  for (const Profile& tp : profiles) {
    int a = tp.arity();
    if (a < 2) continue;
    for (const PlanarTree& T : pools[tp]) {
      auto decT = decorations_of(T);
      if (decT.empty()) continue;
      std::vector<int> fdims;
      for (Color c : tp.in) fdims.push_back(x.dim(c));
      for (const Perm& s : all_perms(a)) {
        if (perm_is_id(s)) continue;
        PlanarTree ts = reorder(T, s);
        QMat perm = tensor_perm_matrix(fdims, s);
        for (const auto& xt : decT) {
          auto a1 = theta_of(ts, xt), a2 = theta_of(T, xt);
          if (!a1 || !a2) continue;
          if (!(*a1 * perm == *a2))
            rep.fail("equivariance fails over " + T.str() + " with " + perm_str(s));
        }
      }
    }
  }

  // wedge condition over generating substitutions
  for (const Profile& tp : profiles) {
    for (const PlanarTree& T : pools[tp]) {
      auto decT = decorations_of(T);
      if (T.is_exceptional()) continue;
      int budget = n - T.internal_edge_count();
      for (const TreeMorphism& m : enumerate_generating_morphisms(T, morphism_pool(o, T, budget))) {
        if (m.source.internal_edge_count() > n) continue;
        auto decK = decorations_of(m.source);
        for (const auto& dk : decK) {
          std::vector<SetOperad::El> composed;
          bool escaped = false;
          for (int v = 0; v < T.vertex_count() && !escaped; ++v) {
            std::vector<SetOperad::El> sub;
            for (int idx : m.source_vertex[v]) sub.push_back(dk[idx]);
            auto cm = o.structure_map(m.assignment[v], sub);
            if (!cm)
              escaped = true;  // the composed decoration leaves the truncation
            else
              composed.push_back(*cm);
          }
          if (escaped) continue;
          auto a1 = theta_of(m.source, dk), a2 = theta_of(T, composed);
          if (!a1 || !a2) continue;
          if (!(*a1 == *a2)) rep.fail("wedge condition fails over " + T.str());
        }
      }
      (void)decT;
    }
  }
  return rep;
}

}  // namespace opal
