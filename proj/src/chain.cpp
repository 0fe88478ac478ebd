#include "opal/chain.hpp"

#include <algorithm>
#include <stdexcept>

namespace opal {

ChainComplex::ChainComplex(std::vector<int> dims, std::vector<QMat> diffs)
    : dims_(std::move(dims)), d_(std::move(diffs)) {
  if (dims_.empty()) dims_ = {0};
  if (int(d_.size()) > std::max(0, int(dims_.size()) - 1))
    throw std::invalid_argument("ChainComplex: too many differentials");
  d_.resize(std::max<size_t>(0, dims_.size() - 1));
  for (int k = 1; k < int(dims_.size()); ++k) {
    QMat& m = d_[k - 1];
    if (m.rows() == 0 && m.cols() == 0) m = QMat(dims_[k - 1], dims_[k]);
    if (m.rows() != dims_[k - 1] || m.cols() != dims_[k])
      throw std::invalid_argument("ChainComplex: differential shape mismatch at degree " + std::to_string(k));
  }
  for (int k = 2; k < int(dims_.size()); ++k)
    if (!(d(k - 1) * d(k)).is_zero())
      throw std::invalid_argument("ChainComplex: d^2 != 0 at degree " + std::to_string(k));
}

ChainComplex ChainComplex::concentrated(int dim0) { return ChainComplex({dim0}, {}); }

QMat ChainComplex::d(int k) const {
  if (k >= 1 && k < int(dims_.size())) return d_[k - 1];
  return QMat(dim(k - 1), dim(k));
}

int ChainComplex::total_dim() const {
  int t = 0;
  for (int x : dims_) t += x;
  return t;
}

bool ChainComplex::operator==(const ChainComplex& o) const {
  int top = std::max(top_degree(), o.top_degree());
  for (int k = 0; k <= top; ++k) {
    if (dim(k) != o.dim(k)) return false;
    if (k >= 1 && !(d(k) == o.d(k))) return false;
  }
  return true;
}

ChainMap::ChainMap(ChainComplex src, ChainComplex dst, std::vector<QMat> mats)
    : src_(std::move(src)), dst_(std::move(dst)), f_(std::move(mats)) {
  int top = std::max(src_.top_degree(), dst_.top_degree());
  f_.resize(top + 1);
  for (int k = 0; k <= top; ++k) {
    QMat& m = f_[k];
    if (m.rows() == 0 && m.cols() == 0) m = QMat(dst_.dim(k), src_.dim(k));
    if (m.rows() != dst_.dim(k) || m.cols() != src_.dim(k))
      throw std::invalid_argument("ChainMap: shape mismatch at degree " + std::to_string(k));
  }
  for (int k = 1; k <= top; ++k)
    if (!(dst_.d(k) * at(k) == at(k - 1) * src_.d(k)))
      throw std::invalid_argument("ChainMap: does not commute with differentials at degree " +
                                  std::to_string(k));
}

QMat ChainMap::at(int k) const {
  if (k >= 0 && k < int(f_.size())) return f_[k];
  return QMat(dst_.dim(k), src_.dim(k));
}

ChainMap ChainMap::compose(const ChainMap& inner) const {
  int top = std::max({src_.top_degree(), dst_.top_degree(), inner.src_.top_degree()});
  std::vector<QMat> m;
  for (int k = 0; k <= top; ++k) m.push_back(at(k) * inner.at(k));
  return ChainMap(inner.src_, dst_, std::move(m));
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
  int top = std::max(src_.top_degree(), dst_.top_degree());
  std::vector<QMat> m;
  for (int k = 0; k <= top; ++k) m.push_back(at(k) + o.at(k));
  return ChainMap(src_, dst_, std::move(m));
}

ChainMap ChainMap::operator-(const ChainMap& o) const {
  int top = std::max(src_.top_degree(), dst_.top_degree());
  std::vector<QMat> m;
  for (int k = 0; k <= top; ++k) m.push_back(at(k) - o.at(k));
  return ChainMap(src_, dst_, std::move(m));
}

bool ChainMap::operator==(const ChainMap& o) const {
  int top = std::max({src_.top_degree(), dst_.top_degree(), o.src_.top_degree(), o.dst_.top_degree()});
  for (int k = 0; k <= top; ++k)
    if (!(at(k) == o.at(k))) return false;
  return true;
}

bool ChainMap::is_zero() const {
  for (int k = 0; k <= std::max(src_.top_degree(), dst_.top_degree()); ++k)
    if (!at(k).is_zero()) return false;
  return true;
}

bool ChainMap::injective() const {
  for (int k = 0; k <= src_.top_degree(); ++k)
    if (at(k).rank() != src_.dim(k)) return false;
  return true;
}

ChainMap ChainMap::identity(const ChainComplex& c) {
  std::vector<QMat> m;
  for (int k = 0; k <= c.top_degree(); ++k) m.push_back(QMat::identity(c.dim(k)));
  return ChainMap(c, c, std::move(m));
}

ChainMap ChainMap::zero(ChainComplex src, ChainComplex dst) {
  return ChainMap(std::move(src), std::move(dst), {});
}

std::vector<int> homology(const ChainComplex& c) {
  std::vector<int> h(c.top_degree() + 1, 0);
  for (int k = 0; k <= c.top_degree(); ++k)
    h[k] = c.dim(k) - c.d(k).rank() - c.d(k + 1).rank();
  return h;
}

TensorIndexer::TensorIndexer(std::vector<ChainComplex> factors) : factors_(std::move(factors)) {
  int top = 0;
  for (const auto& f : factors_) top += f.top_degree();
  basis_.resize(top + 1);
  pos_.resize(top + 1);
  int m = int(factors_.size());
  // enumerate splits in lex order by generating degree vectors recursively
  std::vector<int> deg(m, 0);
  auto rec = [&](auto&& self, int f, int used) -> void {
    if (f == m) {
      int k = used;
      std::vector<int> idx(m, 0);
      auto ric = [&](auto&& s2, int g) -> void {
        if (g == m) {
          basis_[k].push_back({deg, idx});
          return;
        }
        for (int i = 0; i < factors_[g].dim(deg[g]); ++i) {
          idx[g] = i;
          s2(s2, g + 1);
        }
        idx[g] = 0;
      };
      bool nonzero = true;
      for (int g = 0; g < m; ++g)
        if (factors_[g].dim(deg[g]) == 0) nonzero = false;
      if (nonzero || m == 0) ric(ric, 0);
      return;
    }
    for (int kk = 0; kk <= factors_[f].top_degree(); ++kk) {
      if (used + kk > top) break;
      deg[f] = kk;
      self(self, f + 1, used + kk);
    }
    deg[f] = 0;
  };
  if (m == 0) {
    basis_[0].push_back({{}, {}});
  } else {
    rec(rec, 0, 0);
  }
  for (int k = 0; k <= top; ++k)
    for (int i = 0; i < int(basis_[k].size()); ++i) pos_[k][basis_[k][i]] = i;

  // assemble the total complex
  std::vector<int> dims(top + 1, 0);
  for (int k = 0; k <= top; ++k) dims[k] = int(basis_[k].size());
  std::vector<QMat> diffs;
  for (int k = 1; k <= top; ++k) {
    QMat d(dims[k - 1], dims[k]);
    for (int col = 0; col < dims[k]; ++col) {
      const Elem& e = basis_[k][col];
      int signExp = 0;
      for (int f = 0; f < m; ++f) {
        if (e.deg[f] >= 1) {
          const QMat& df = factors_[f].d(e.deg[f]);
          for (int r = 0; r < df.rows(); ++r) {
            if (df.at(r, e.idx[f]) == 0) continue;
            Elem t = e;
            t.deg[f] -= 1;
            t.idx[f] = r;
            auto it = pos_[k - 1].find(t);
            if (it == pos_[k - 1].end()) throw std::logic_error("tensor: missing basis element");
            Q coeff = df.at(r, e.idx[f]);
            if (signExp % 2 == 1) coeff = -coeff;
            d.at(it->second, col) += coeff;
          }
        }
        signExp += e.deg[f];
      }
    }
    diffs.push_back(std::move(d));
  }
  total_ = ChainComplex(std::move(dims), std::move(diffs));
}

const std::vector<TensorIndexer::Elem>& TensorIndexer::basis(int k) const {
  static const std::vector<Elem> empty;
  if (k < 0 || k >= int(basis_.size())) return empty;
  return basis_[k];
}

int TensorIndexer::index_of(int k, const Elem& e) const {
  auto it = pos_[k].find(e);
  if (it == pos_[k].end()) throw std::logic_error("TensorIndexer: element not found");
  return it->second;
}

ChainComplex tensor_all(const std::vector<ChainComplex>& factors) {
  return TensorIndexer(factors).total();
}

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b) { return tensor_all({a, b}); }

ChainComplex direct_sum(const std::vector<ChainComplex>& parts) {
  int top = 0;
  for (const auto& p : parts) top = std::max(top, p.top_degree());
  std::vector<int> dims(top + 1, 0);
  std::vector<QMat> diffs;
  for (int k = 0; k <= top; ++k)
    for (const auto& p : parts) dims[k] += p.dim(k);
  for (int k = 1; k <= top; ++k) {
    QMat d(dims[k - 1], dims[k]);
    int ro = 0, co = 0;
    for (const auto& p : parts) {
      QMat pd = p.d(k);
      for (int i = 0; i < pd.rows(); ++i)
        for (int j = 0; j < pd.cols(); ++j)
          if (pd.at(i, j) != 0) d.at(ro + i, co + j) = pd.at(i, j);
      ro += p.dim(k - 1);
      co += p.dim(k);
    }
    diffs.push_back(std::move(d));
  }
  return ChainComplex(std::move(dims), std::move(diffs));
}

QMat Cokernel::projection(int k) const {
  if (k >= 0 && k < int(proj.size())) return proj[k];
  return QMat(0, 0);
}

QMat Cokernel::section(int k) const {
  if (k < 0 || k >= int(proj.size())) return QMat(0, 0);
  int amb = proj[k].cols();
  QMat s(amb, quotient.dim(k));
  for (int j = 0; j < quotient.dim(k); ++j) s.at(rep_cols[k][j], j) = 1;
  return s;
}

Cokernel cokernel(const ChainMap& f) {
  const ChainComplex& D = f.dst();
  int top = D.top_degree();
  Cokernel out;
  out.proj.resize(top + 1);
  out.rep_cols.resize(top + 1);
  std::vector<int> qdims(top + 1, 0);
  for (int k = 0; k <= top; ++k) {
    QMat img = f.at(k);                 // columns span the subspace to kill
    QMat rows = img.transpose();        // rows span it
    std::vector<int> piv;
    QMat r = rows.rref(&piv);
    std::vector<bool> ispiv(D.dim(k), false);
    for (int c : piv) ispiv[c] = true;
    for (int j = 0; j < D.dim(k); ++j)
      if (!ispiv[j]) out.rep_cols[k].push_back(j);
    qdims[k] = int(out.rep_cols[k].size());
    // projection: reduce pivot coordinates away, keep the rest
    QMat P(qdims[k], D.dim(k));
    for (int j = 0; j < D.dim(k); ++j) {
      // image of e_j
      QVec v(D.dim(k), Q(0));
      v[j] = 1;
      for (int i = 0; i < int(piv.size()); ++i) {
        if (v[piv[i]] == 0) continue;
        Q c = v[piv[i]];
        for (int t = 0; t < D.dim(k); ++t) v[t] -= c * r.at(i, t);
      }
      for (int q = 0; q < qdims[k]; ++q) P.at(q, j) = v[out.rep_cols[k][q]];
    }
    out.proj[k] = std::move(P);
  }
  std::vector<QMat> qd;
  for (int k = 1; k <= top; ++k) {
    QMat sec(D.dim(k), qdims[k]);
    for (int j = 0; j < qdims[k]; ++j) sec.at(out.rep_cols[k][j], j) = 1;
    qd.push_back(out.proj[k - 1] * (D.d(k) * sec));
  }
  out.quotient = ChainComplex(std::move(qdims), std::move(qd));
  return out;
}

namespace {

enum JLabel { kE0 = 0, kE1 = 1, kH = 2, kZero = 3 };

JLabel mu_fold(JLabel a, JLabel b) {
  if (a == kZero || b == kZero) return kZero;
  if (a == kH && b == kH) return kZero;
  if (a == kH) return b == kE0 ? kH : kZero;
  if (b == kH) return a == kE0 ? kH : kZero;
  return (a == kE1 || b == kE1) ? kE1 : kE0;
}

JLabel label_of(int deg, int idx) { return deg == 0 ? (idx == 0 ? kE0 : kE1) : kH; }

Segment make_segment() {
  Segment s;
  s.J = ChainComplex({2, 1}, {[] {
    QMat d(2, 1);
    d.at(0, 0) = -1;  // d h = e1 - e0
    d.at(1, 0) = 1;
    return d;
  }()});
  s.unit = ChainComplex::concentrated(1);
  ChainComplex jj = tensor(s.J, s.J);
  // basis in degree 0: e0e0, e0e1, e1e0, e1e1; degree 1: e0h, e1h, he0, he1; degree 2: hh
  QMat mu0(2, 4), mu1(1, 4), mu2(0, 1);
  mu0.at(0, 0) = 1;  // e0e0 -> e0
  mu0.at(1, 1) = 1;  // e0e1 -> e1
  mu0.at(1, 2) = 1;  // e1e0 -> e1
  mu0.at(1, 3) = 1;  // e1e1 -> e1
  mu1.at(0, 0) = 1;  // e0h -> h
  mu1.at(0, 2) = 1;  // he0 -> h
  s.mu = ChainMap(jj, s.J, {mu0, mu1, mu2});
  {
    QMat m0(2, 1);
    m0.at(0, 0) = 1;
    s.end0 = ChainMap(s.unit, s.J, {m0});
  }
  {
    QMat m1(2, 1);
    m1.at(1, 0) = 1;
    s.end1 = ChainMap(s.unit, s.J, {m1});
  }
  {
    QMat e(1, 2);
    e.at(0, 0) = 1;
    e.at(0, 1) = 1;
    s.eps = ChainMap(s.J, s.unit, {e, QMat(0, 1)});
  }
  return s;
}

}  // namespace

const Segment& segment() {
  static const Segment s = make_segment();
  return s;
}

CheckReport check_segment(const Segment& s) {
  CheckReport rep;
  // the multiplication table agrees with the fold used by j_power_map
  rep.require(j_power_map(2, {{JFactorSpec::Merge, {0, 1}}}, {}) == s.mu,
              "segment: multiplication table disagrees with the fold");
  // mu is associative
  ChainMap muId = j_power_map(3, {{JFactorSpec::Merge, {0, 1}}, {JFactorSpec::Take, {2}}}, {});
  ChainMap idMu = j_power_map(3, {{JFactorSpec::Take, {0}}, {JFactorSpec::Merge, {1, 2}}}, {});
  rep.require(s.mu.compose(muId) == s.mu.compose(idMu), "segment: mu not associative");
  // 0 is a two-sided unit
  ChainMap ins0l = j_power_map(1, {{JFactorSpec::Insert0, {}}, {JFactorSpec::Take, {0}}}, {});
  ChainMap ins0r = j_power_map(1, {{JFactorSpec::Take, {0}}, {JFactorSpec::Insert0, {}}}, {});
  rep.require(s.mu.compose(ins0l) == ChainMap::identity(s.J), "segment: 0 not a left unit");
  rep.require(s.mu.compose(ins0r) == ChainMap::identity(s.J), "segment: 0 not a right unit");
  // mu is commutative
  ChainMap swap = j_power_map(2, {{JFactorSpec::Take, {1}}, {JFactorSpec::Take, {0}}}, {});
  rep.require(s.mu.compose(swap) == s.mu, "segment: mu not commutative");
  // 1 is absorbing
  ChainMap ins1l = j_power_map(1, {{JFactorSpec::Insert1, {}}, {JFactorSpec::Take, {0}}}, {});
  ChainMap ins1r = j_power_map(1, {{JFactorSpec::Take, {0}}, {JFactorSpec::Insert1, {}}}, {});
  ChainMap oneEps = s.end1.compose(s.eps);
  rep.require(s.mu.compose(ins1l) == oneEps, "segment: 1 not left absorbing");
  rep.require(s.mu.compose(ins1r) == oneEps, "segment: 1 not right absorbing");
  // counit
  ChainMap epses = j_power_map(2, {}, {0, 1});
  rep.require(s.eps.compose(s.mu) == epses, "segment: eps not multiplicative");
  rep.require(s.eps.compose(s.end0) == ChainMap::identity(s.unit), "segment: eps 0 != id");
  rep.require(s.eps.compose(s.end1) == ChainMap::identity(s.unit), "segment: eps 1 != id");
  return rep;
}

ChainComplex j_power(int n) {
  std::vector<ChainComplex> fs(n, segment().J);
  return tensor_all(fs);
}

ChainMap j_power_map(int src_factors, const std::vector<JFactorSpec>& dst,
                     const std::vector<int>& eps_drops) {
  const Segment& sg = segment();
  std::vector<ChainComplex> sf(src_factors, sg.J);
  TensorIndexer src(sf);
  std::vector<ChainComplex> df(dst.size(), sg.J);
  TensorIndexer dstIx(df);

  // every source factor must be consumed exactly once
  std::vector<int> use(src_factors, 0);
  for (const auto& spec : dst)
    for (int s : spec.srcs) use.at(s)++;
  for (int s : eps_drops) use.at(s)++;
  for (int s = 0; s < src_factors; ++s)
    if (use[s] != 1) throw std::invalid_argument("j_power_map: source factor used " + std::to_string(use[s]) + " times");

  // consumption order of surviving source factors
  std::vector<int> order;
  for (const auto& spec : dst)
    for (int s : spec.srcs) order.push_back(s);
  std::vector<int> posIn(src_factors, -1);
  for (int i = 0; i < int(order.size()); ++i) posIn[order[i]] = i;

  int top = std::max(src.total().top_degree(), dstIx.total().top_degree());
  std::vector<QMat> mats(top + 1);
  for (int k = 0; k <= top; ++k) mats[k] = QMat(dstIx.total().dim(k), src.total().dim(k));

  for (int k = 0; k <= src.total().top_degree(); ++k) {
    const auto& bas = src.basis(k);
    for (int col = 0; col < int(bas.size()); ++col) {
      const auto& e = bas[col];
      std::vector<JLabel> lab(src_factors);
      for (int f = 0; f < src_factors; ++f) lab[f] = label_of(e.deg[f], e.idx[f]);
      bool dead = false;
      for (int s : eps_drops)
        if (lab[s] == kH) dead = true;  // counit kills h
      if (dead) continue;
      // Koszul sign: inversions among odd factors in the consumption order
      long inv = 0;
      for (int a = 0; a < src_factors; ++a)
        for (int b = a + 1; b < src_factors; ++b) {
          if (lab[a] != kH || lab[b] != kH) continue;
          if (posIn[a] < 0 || posIn[b] < 0) continue;
          if (posIn[a] > posIn[b]) ++inv;
        }
      // evaluate destination factors
      TensorIndexer::Elem t;
      t.deg.resize(dst.size());
      t.idx.resize(dst.size());
      bool zero = false;
      for (int g = 0; g < int(dst.size()) && !zero; ++g) {
        const auto& spec = dst[g];
        JLabel val;
        switch (spec.kind) {
          case JFactorSpec::Insert0:
            val = kE0;
            break;
          case JFactorSpec::Insert1:
            val = kE1;
            break;
          case JFactorSpec::Take:
            val = lab[spec.srcs[0]];
            break;
          case JFactorSpec::Merge: {
            val = lab[spec.srcs[0]];
            for (size_t i = 1; i < spec.srcs.size(); ++i) val = mu_fold(val, lab[spec.srcs[i]]);
            break;
          }
        }
        if (val == kZero) {
          zero = true;
          break;
        }
        t.deg[g] = (val == kH) ? 1 : 0;
        t.idx[g] = (val == kH) ? 0 : int(val);
      }
      if (zero) continue;
      int tdeg = 0;
      for (int d : t.deg) tdeg += d;
      int row = dstIx.index_of(tdeg, t);
      if (tdeg != k) {
        // degree is only lost through eps-drops of h (already zeroed) or mu on h's
        // (already zeroed), so this cannot happen
        throw std::logic_error("j_power_map: degree mismatch");
      }
      mats[k].at(row, col) = (inv % 2 == 0) ? Q(1) : Q(-1);
    }
  }
  return ChainMap(src.total(), dstIx.total(), std::move(mats));
}

ChainMap j_functor_map(const TreeMorphism& m) {
  int cur = m.target.internal_edge_count();
  ChainMap acc = ChainMap::identity(j_power(cur));
  for (const auto& step : m.steps) {
    std::vector<JFactorSpec> specs;
    for (const auto& es : step.edges) {
      switch (es.kind) {
        case SubstStep::EdgeSrc::FromSource:
          specs.push_back({JFactorSpec::Take, {es.src_a}});
          break;
        case SubstStep::EdgeSrc::FromInserted:
          specs.push_back({JFactorSpec::Insert0, {}});
          break;
        case SubstStep::EdgeSrc::Merged:
          specs.push_back({JFactorSpec::Merge, {es.src_a, es.src_b}});
          break;
      }
    }
    acc = j_power_map(cur, specs, step.eps_edges).compose(acc);
    cur = int(step.edges.size());
  }
  return acc;
}

Grafting graft_with_edges(const PlanarTree& base, const std::vector<PlanarTree>& branches) {
  Grafting g;
  Profile pg = base.profile();
  if (pg.arity() < 1) throw std::invalid_argument("graft_with_edges: base tree has no inputs");
  if (int(branches.size()) != pg.arity())
    throw std::invalid_argument("graft_with_edges: branch count mismatch");
  std::vector<std::vector<Color>> bs;
  for (int j = 0; j < pg.arity(); ++j) {
    if (branches[j].profile().out != pg.in[j])
      throw std::invalid_argument("graft_with_edges: branch color mismatch");
    bs.push_back(branches[j].profile().in);
  }
  PlanarTree tl = PlanarTree::two_level(pg, bs);
  std::vector<PlanarTree> assignment{base};
  assignment.insert(assignment.end(), branches.begin(), branches.end());
  g.morphism = substitute_all(tl, assignment);
  g.result = g.morphism.source;

  // locate each result vertex inside its originating factor
  int n = g.result.vertex_count();
  std::vector<std::pair<int, int>> origin(n, {-1, -1});  // (assignment slot, vertex within)
  for (int v = 0; v < int(assignment.size()); ++v)
    for (int i = 0; i < int(g.morphism.source_vertex[v].size()); ++i)
      origin[g.morphism.source_vertex[v][i]] = {v, i};
  std::vector<int> offset(assignment.size(), 0);
  int total = 0;
  for (int v = 0; v < int(assignment.size()); ++v) {
    offset[v] = total;
    total += std::max(0, assignment[v].vertex_count() - 1);
  }
  std::vector<JFactorSpec> specs;
  for (int e = 0; e < g.result.internal_edge_count(); ++e) {
    auto [slot, i] = origin[g.result.edge_child(e)];
    if (i == 0)
      specs.push_back({JFactorSpec::Insert1, {}});  // edge created by the grafting
    else
      specs.push_back({JFactorSpec::Take, {offset[slot] + i - 1}});
  }
  g.pi = j_power_map(total, specs, {});
  return g;
}

}  // namespace opal
