#include "opal/algebras.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace opal {

namespace {

// left fold of a monoid multiplication: X^{(x) n} -> X
QMat mult_fold(const QMat& mult, const QVec& unit, int dim, int n) {
  if (n == 0) {
    QMat m(dim, 1);
    for (int i = 0; i < dim; ++i) m.at(i, 0) = unit[i];
    return m;
  }
  QMat acc = QMat::identity(dim);
  int accFactors = 1;
  while (accFactors < n) {
    // acc: X^{(x) accFactors} -> X; extend by one factor
    acc = mult * acc.kron(QMat::identity(dim));
    ++accFactors;
  }
  return acc;
}

}  // namespace

int VectAlgebra::tensor_dim(const std::vector<Color>& cs) const {
  int d = 1;
  for (Color c : cs) d *= dims_[c];
  return d;
}

void VectAlgebra::set_map(SetOperad::El e, QMat m) {
  const Profile& p = op_->profile_of_el(e);
  if (m.rows() != dims_[p.out] || m.cols() != tensor_dim(p.in))
    throw std::invalid_argument("VectAlgebra: matrix shape mismatch for " + op_->element_name(e));
  maps_[{e.pid, e.idx}] = std::move(m);
}

bool VectAlgebra::has_map(SetOperad::El e) const { return maps_.count({e.pid, e.idx}) > 0; }

const QMat& VectAlgebra::map_of(SetOperad::El e) const {
  auto it = maps_.find({e.pid, e.idx});
  if (it == maps_.end())
    throw std::logic_error("VectAlgebra: missing structure map for " + op_->element_name(e));
  return it->second;
}

QMat tensor_perm_matrix(const std::vector<int>& dims, const Perm& sigma) {
  int n = int(dims.size());
  std::vector<int> tdims(n);
  for (int i = 0; i < n; ++i) tdims[i] = dims[sigma[i]];
  int total = 1;
  for (int d : dims) total *= d;
  QMat m(total, total);
  if (total == 0) return m;
  if (n == 0) {
    m.at(0, 0) = 1;
    return m;
  }
  std::vector<int> idx(n, 0);
  auto flat = [&](const std::vector<int>& dd, const std::vector<int>& ii) {
    int v = 0;
    for (size_t k = 0; k < dd.size(); ++k) v = v * dd[k] + ii[k];
    return v;
  };
  while (true) {
    std::vector<int> tidx(n);
    for (int i = 0; i < n; ++i) tidx[i] = idx[sigma[i]];
    m.at(flat(tdims, tidx), flat(dims, idx)) = 1;
    int k = n - 1;
    while (k >= 0) {
      if (++idx[k] < dims[k]) break;
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return m;
}

CheckReport VectAlgebra::check() const {
  CheckReport rep;
  const SetOperad& o = *op_;
  for (const auto& e : o.all_elements())
    if (!has_map(e)) rep.fail("missing structure map for " + o.element_name(e));
  if (!rep.ok()) return rep;

  for (Color c = 0; c < o.color_count(); ++c) {
    if (!map_of(o.unit(c)).is_identity())
      rep.fail("unit map is not the identity at color " + o.color_name(c));
  }

  // associativity through the partial compositions
  for (const auto& p : o.all_elements()) {
    const Profile& pp = o.profile_of_el(p);
    for (int i = 0; i < pp.arity(); ++i)
      for (int qp = 0; qp < o.profile_count(); ++qp) {
        if (o.profile_of(qp).out != pp.in[i]) continue;
        for (int qi = 0; qi < o.entry_size(qp); ++qi) {
          SetOperad::El q{qp, qi};
          auto comp = o.compose_at(p, i, q);
          if (!comp) continue;
          int pre = 1, post = 1;
          for (int k = 0; k < i; ++k) pre *= dims_[pp.in[k]];
          for (int k = i + 1; k < pp.arity(); ++k) post *= dims_[pp.in[k]];
          QMat inner = QMat::identity(pre).kron(map_of(q)).kron(QMat::identity(post));
          if (!(map_of(*comp) == map_of(p) * inner))
            rep.fail("associativity fails on " + o.element_name(p) + " o_" + std::to_string(i) +
                     " " + o.element_name(q));
        }
      }
  }

  // equivariance
  for (const auto& p : o.all_elements()) {
    const Profile& pp = o.profile_of_el(p);
    int n = pp.arity();
    if (n < 2) continue;
    std::vector<int> fdims;
    for (Color c : pp.in) fdims.push_back(dims_[c]);
    for (const Perm& s : all_perms(n)) {
      auto ps = o.act(p, s);
      if (!ps) continue;
      QMat perm = tensor_perm_matrix(fdims, s);
      if (!(map_of(*ps) * perm == map_of(p)))
        rep.fail("equivariance fails on " + o.element_name(p) + " with " + perm_str(s));
    }
  }
  return rep;
}

VectAlgebra pullback_algebra(const OperadMorphism& f, const VectAlgebra& y) {
  VectAlgebra x(f.src);
  for (Color c = 0; c < f.src->color_count(); ++c) x.set_dim(c, y.dim(f.on_color(c)));
  for (const auto& e : f.src->all_elements()) {
    auto img = f.on_el(e);
    if (!img) throw std::invalid_argument("pullback_algebra: morphism undefined on an element");
    x.set_map(e, y.map_of(*img));
  }
  return x;
}

CheckReport AqftModel::check_structure() const {
  CheckReport rep;
  const FinCategory& c = *cat;
  for (Obj o = 0; o < c.object_count(); ++o) {
    int d = dims[o];
    const QMat& m = mult[o];
    if (m.rows() != d || m.cols() != d * d) {
      rep.fail("multiplication shape wrong at " + c.object_name(o));
      continue;
    }
    QMat mId = m * m.kron(QMat::identity(d));
    QMat idM = m * QMat::identity(d).kron(m);
    rep.require(mId == idM, "monoid associativity fails at " + c.object_name(o));
    QMat u(d, 1);
    for (int i = 0; i < d; ++i) u.at(i, 0) = unit[o][i];
    rep.require(m * u.kron(QMat::identity(d)) == QMat::identity(d),
                "left unit fails at " + c.object_name(o));
    rep.require(m * QMat::identity(d).kron(u) == QMat::identity(d),
                "right unit fails at " + c.object_name(o));
  }
  for (Mor f = 0; f < c.morphism_count(); ++f) {
    const QMat& af = morph[f];
    if (af.rows() != dims[c.cod(f)] || af.cols() != dims[c.dom(f)]) {
      rep.fail("morphism matrix shape wrong on " + c.morphism_name(f));
      continue;
    }
    rep.require(af * mult[c.dom(f)] == mult[c.cod(f)] * af.kron(af),
                "morphism not multiplicative on " + c.morphism_name(f));
    rep.require(af.apply(unit[c.dom(f)]) == unit[c.cod(f)],
                "morphism not unital on " + c.morphism_name(f));
  }
  for (Obj o = 0; o < c.object_count(); ++o)
    rep.require(morph[c.identity(o)].is_identity(), "identity of " + c.object_name(o) + " not mapped to the identity");
  for (Mor f = 0; f < c.morphism_count(); ++f)
    for (Mor g = 0; g < c.morphism_count(); ++g) {
      auto gf = c.compose(g, f);
      if (!gf) continue;
      rep.require(morph[*gf] == morph[g] * morph[f],
                  "functoriality fails on " + c.morphism_name(g) + " . " + c.morphism_name(f));
    }
  return rep;
}

bool AqftModel::operator==(const AqftModel& o) const {
  return dims == o.dims && mult == o.mult && unit == o.unit && morph == o.morph;
}

VectAlgebra aqft_to_algebra(const AqftModel& m, const SetOperad& ocbar) {
  const FinCategory& c = *m.cat;
  VectAlgebra x(&ocbar);
  for (Color col = 0; col < ocbar.color_count(); ++col) {
    Obj o = *c.object_by_name(ocbar.color_name(col));
    x.set_dim(col, m.dims[o]);
  }
  for (const auto& e : ocbar.all_elements()) {
    auto [sigma, names] = parse_aqft_element_name(ocbar.element_name(e));
    const Profile& p = ocbar.profile_of_el(e);
    int n = p.arity();
    Obj d = *c.object_by_name(ocbar.color_name(p.out));
    // theta = fold . left-permute . (tensor of morphism maps)
    QMat mapped(1, 1);
    mapped.at(0, 0) = 1;
    std::vector<int> outDims;
    for (int j = 0; j < n; ++j) {
      Mor f = *c.morphism_by_name(names[j]);
      mapped = mapped.kron(m.morph[f]);
      outDims.push_back(m.dims[d]);
    }
    QMat perm = tensor_perm_matrix(outDims, perm_inverse(sigma));
    QMat fold = mult_fold(m.mult[d], m.unit[d], m.dims[d], n);
    x.set_map(e, fold * perm * mapped);
  }
  return x;
}

CheckReport check_aqft(const AqftModel& m, const OrthRelation& site, const std::vector<Mor>& s,
                       const SetOperad& ocbar) {
  CheckReport rep = m.check_structure();
  const FinCategory& c = *m.cat;
  // causality for every orthogonal pair
  for (auto [g1, g2] : site.pairs()) {
    Obj d = c.cod(g1);
    const QMat &a1 = m.morph[g1], &a2 = m.morph[g2];
    QMat lhs = m.mult[d] * a1.kron(a2);
    QMat swap = tensor_perm_matrix({m.dims[c.dom(g2)], m.dims[c.dom(g1)]}, {1, 0});
    QMat rhs = m.mult[d] * a2.kron(a1) * swap;
    if (!(lhs == rhs))
      rep.fail("causality fails on (" + c.morphism_name(g1) + ", " + c.morphism_name(g2) + ")");
  }
  for (Mor f : s)
    rep.require(m.morph[f].inverse().has_value(),
                "time-slice fails: " + c.morphism_name(f) + " not invertible");
  // the same data as an algebra over the AQFT operad must pass its own checks
  CheckReport viaOperad = aqft_to_algebra(m, ocbar).check();
  bool structural = rep.ok();
  rep.merge(viaOperad, "operad algebra path");
  if (structural != viaOperad.ok())
    rep.fail("functor presentation and operad presentation disagree");
  return rep;
}

namespace {

struct ConfigLookup {
  const ConfiguredStructure* site;
  const SetOperad* pfa;
  const FinCategory* cat;

  std::optional<SetOperad::El> element(Obj target, const Config& cfg) const {
    Profile p;
    p.out = target;
    std::vector<std::string> names;
    for (Mor m : cfg) {
      p.in.push_back(cat->dom(m));
      names.push_back(cat->morphism_name(m));
    }
    return pfa->element_by_name(p, pfa_element_name(names));
  }
};

}  // namespace

PfaFromAqft check_pfa_from_aqft(const VectAlgebra& y, const ConfiguredStructure& site,
                                const SetOperad& pfa, const SetOperad& ocbar,
                                const std::optional<AqftModel>& candidate) {
  const FinCategory& c = site.base();
  ConfigLookup look{&site, &pfa, &c};
  int nObj = c.object_count();
  std::vector<int> dims(nObj);
  for (Obj o = 0; o < nObj; ++o) dims[o] = y.dim(*pfa.color_by_name(c.object_name(o)));

  // forced units
  std::vector<QVec> units(nObj);
  for (Obj o = 0; o < nObj; ++o) {
    auto e = look.element(o, {});
    if (!e) return {PfaFromAqft::No, "missing empty configuration at " + c.object_name(o), {}};
    const QMat& u = y.map_of(*e);
    units[o].resize(dims[o]);
    for (int i = 0; i < dims[o]; ++i) units[o][i] = u.at(i, 0);
  }

  // unknowns: one multiplication matrix per object, flattened row-major
  std::vector<int> offset(nObj + 1, 0);
  for (Obj o = 0; o < nObj; ++o) offset[o + 1] = offset[o] + dims[o] * dims[o] * dims[o];
  int unknowns = offset[nObj];
  std::vector<QVec> rows;
  QVec rhs;
  std::vector<std::string> rowDesc;
  auto muVar = [&](Obj o, int r, int cc) { return offset[o] + r * dims[o] * dims[o] + cc; };
  auto addRow = [&](QVec row, Q b, std::string desc) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
    rowDesc.push_back(std::move(desc));
  };

  // unit laws: mu(1, x) = x and mu(x, 1) = x
  for (Obj o = 0; o < nObj; ++o) {
    int d = dims[o];
    for (int x = 0; x < d; ++x)
      for (int r = 0; r < d; ++r) {
        QVec rowL(unknowns, Q(0)), rowR(unknowns, Q(0));
        for (int u = 0; u < d; ++u) {
          if (units[o][u] == 0) continue;
          rowL[muVar(o, r, u * d + x)] += units[o][u];
          rowR[muVar(o, r, x * d + u)] += units[o][u];
        }
        addRow(std::move(rowL), Q(r == x ? 1 : 0), "left unit at " + c.object_name(o));
        addRow(std::move(rowR), Q(r == x ? 1 : 0), "right unit at " + c.object_name(o));
      }
  }

  // binary configurations pin mu through the structure maps
  for (const auto& [t, cfg] : site.all()) {
    if (cfg.size() != 2) continue;
    auto e = look.element(t, cfg);
    if (!e) continue;
    const QMat& lam = y.map_of(*e);
    const QMat& a1 = y.map_of(*look.element(c.cod(cfg[0]), {cfg[0]}));
    const QMat& a2 = y.map_of(*look.element(c.cod(cfg[1]), {cfg[1]}));
    int d = dims[t];
    int s1 = a1.cols(), s2 = a2.cols();
    // mu_t (a1 (x) a2) = lam
    for (int r = 0; r < d; ++r)
      for (int x1 = 0; x1 < s1; ++x1)
        for (int x2 = 0; x2 < s2; ++x2) {
          QVec row(unknowns, Q(0));
          for (int u = 0; u < d; ++u)
            for (int v = 0; v < d; ++v) {
              Q coef = a1.at(u, x1) * a2.at(v, x2);
              if (coef != 0) row[muVar(t, r, u * d + v)] += coef;
            }
          addRow(std::move(row), lam.at(r, x1 * s2 + x2),
                 "binary configuration " + config_str(c, t, cfg));
        }
  }

  // morphisms must become monoid maps: lam{g} mu_dom = mu_cod (lam{g} (x) lam{g})
  for (Mor g = 0; g < c.morphism_count(); ++g) {
    Obj a = c.dom(g), b = c.cod(g);
    const QMat& ag = y.map_of(*look.element(b, {g}));
    int da = dims[a], db = dims[b];
    for (int r = 0; r < db; ++r)
      for (int x1 = 0; x1 < da; ++x1)
        for (int x2 = 0; x2 < da; ++x2) {
          QVec row(unknowns, Q(0));
          // lhs: sum_u ag[r][u] mu_a[u][x1 x2]
          for (int u = 0; u < da; ++u)
            if (ag.at(r, u) != 0) row[muVar(a, u, x1 * da + x2)] += ag.at(r, u);
          // rhs: sum_{uv} mu_b[r][u v] ag[u][x1] ag[v][x2]
          for (int u = 0; u < db; ++u)
            for (int v = 0; v < db; ++v) {
              Q coef = ag.at(u, x1) * ag.at(v, x2);
              if (coef != 0) row[muVar(b, r, u * db + v)] -= coef;
            }
          addRow(std::move(row), Q(0), "hom compatibility along " + c.morphism_name(g));
        }
  }

  QMat a(int(rows.size()), unknowns);
  for (int i = 0; i < int(rows.size()); ++i)
    for (int j = 0; j < unknowns; ++j) a.at(i, j) = rows[i][j];
  LinSolve sol = solve_full(a, rhs);
  if (!sol.consistent) {
    // identify a small inconsistent witness: re-solve incrementally
    std::string witness = "inconsistent multiplication constraints";
    for (int k = 1; k <= int(rows.size()); ++k) {
      QMat ak(k, unknowns);
      QVec bk(rhs.begin(), rhs.begin() + k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < unknowns; ++j) ak.at(i, j) = rows[i][j];
      if (!solve_full(ak, bk).consistent) {
        witness = "constraint \"" + rowDesc[k - 1] + "\" contradicts the earlier ones";
        break;
      }
    }
    return {PfaFromAqft::No, witness, {}};
  }

  std::vector<QMat> mu(nObj);
  if (sol.nullity > 0) {
    if (!candidate) return {PfaFromAqft::Undetermined, "multiplications underdetermined", {}};
    // verify the supplied candidate against the linear system
    QVec flat(unknowns, Q(0));
    for (Obj o = 0; o < nObj; ++o)
      for (int r = 0; r < dims[o]; ++r)
        for (int cc = 0; cc < dims[o] * dims[o]; ++cc)
          flat[muVar(o, r, cc)] = candidate->mult[o].at(r, cc);
    if (!(a.apply(flat) == rhs))
      return {PfaFromAqft::Undetermined, "candidate violates the linear constraints", {}};
    for (Obj o = 0; o < nObj; ++o) mu[o] = candidate->mult[o];
  } else {
    for (Obj o = 0; o < nObj; ++o) {
      mu[o] = QMat(dims[o], dims[o] * dims[o]);
      for (int r = 0; r < dims[o]; ++r)
        for (int cc = 0; cc < dims[o] * dims[o]; ++cc)
          mu[o].at(r, cc) = sol.particular[muVar(o, r, cc)];
    }
  }

  // assemble the reconstructed model and verify the nonlinear axioms
  AqftModel model;
  model.cat = &c;
  model.dims = dims;
  model.mult = mu;
  model.unit = units;
  model.morph.resize(c.morphism_count());
  for (Mor g = 0; g < c.morphism_count(); ++g) model.morph[g] = y.map_of(*look.element(c.cod(g), {g}));
  CheckReport structural = model.check_structure();
  if (!structural.ok()) return {PfaFromAqft::No, structural.failures.front(), {}};

  // condition on every configuration: lam{f_i} = mu-fold after the single maps
  for (const auto& [t, cfg] : site.all()) {
    if (cfg.size() < 2) continue;
    auto e = look.element(t, cfg);
    if (!e) continue;
    QMat mapped(1, 1);
    mapped.at(0, 0) = 1;
    for (Mor f : cfg) mapped = mapped.kron(y.map_of(*look.element(t, {f})));
    QMat fold = mult_fold(mu[t], units[t], dims[t], int(cfg.size()));
    if (!(y.map_of(*e) == fold * mapped))
      return {PfaFromAqft::No,
              "structure map of " + config_str(c, t, cfg) + " is not the iterated multiplication",
              {}};
  }

  // the delta-pullback must reproduce the input bit-exactly
  VectAlgebra viaDelta = pullback_algebra(comparison_delta(site, pfa, ocbar),
                                          aqft_to_algebra(model, ocbar));
  for (const auto& e : pfa.all_elements()) {
    if (!(viaDelta.map_of(e) == y.map_of(e)))
      return {PfaFromAqft::No, "delta-pullback mismatch on " + pfa.element_name(e), {}};
  }
  return {PfaFromAqft::Yes, "", model};
}

VectAlgebra build_afact(const QMat& mult, const QVec& unit, int dim,
                        const ConfiguredStructure& site, const SetOperad& pfa, Obj least,
                        const std::vector<int>& object_order) {
  const FinCategory& c = site.base();
  VectAlgebra y(&pfa);
  for (Color col = 0; col < pfa.color_count(); ++col) {
    Obj o = *c.object_by_name(pfa.color_name(col));
    y.set_dim(col, o == least ? 1 : dim);
  }
  for (const auto& e : pfa.all_elements()) {
    auto names = parse_pfa_element_name(pfa.element_name(e));
    const Profile& p = pfa.profile_of_el(e);
    Obj target = *c.object_by_name(pfa.color_name(p.out));
    int n = p.arity();
    std::vector<Obj> doms;
    std::vector<int> fdims;
    for (int j = 0; j < n; ++j) {
      Mor f = *c.morphism_by_name(names[j]);
      doms.push_back(c.dom(f));
      fdims.push_back(doms.back() == least ? 1 : dim);
    }
    // stable order of factors by spatial position
    std::vector<int> order(n);
    for (int j = 0; j < n; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](int aIdx, int bIdx) { return object_order[doms[aIdx]] < object_order[doms[bIdx]]; });
    int tdim = target == least ? 1 : dim;
    int srcDim = 1;
    for (int d : fdims) srcDim *= d;
    QMat m(tdim, srcDim);
    std::vector<int> idx(n, 0);
    int col = 0;
    while (true) {
      // multiply the chosen basis elements in spatial order
      QVec val(tdim, Q(0));
      if (tdim == 1) {
        val[0] = 1;
      } else {
        for (int i = 0; i < tdim; ++i) val[i] = unit[i];
      }
      for (int k : order) {
        if (fdims[k] == 1) continue;  // unit scalar from the least element
        QVec factor(dim, Q(0));
        factor[idx[k]] = 1;
        // val = mult(val (x) factor)
        QVec next(dim, Q(0));
        for (int r = 0; r < dim; ++r)
          for (int u = 0; u < dim; ++u) {
            if (val[u] == 0) continue;
            const Q& coef = mult.at(r, u * dim + idx[k]);
            if (coef != 0) next[r] += coef * val[u];
          }
        val = std::move(next);
      }
      for (int r = 0; r < tdim; ++r) m.at(r, col) = val[r];
      ++col;
      int k = n - 1;
      while (k >= 0) {
        if (++idx[k] < fdims[k]) break;
        idx[k] = 0;
        --k;
      }
      if (k < 0) break;
    }
    y.set_map(e, std::move(m));
  }
  return y;
}

CheckReport check_special_structure(const VectAlgebra& y, const ConfiguredStructure& site,
                                    const SetOperad& pfa, Obj least) {
  CheckReport rep;
  const FinCategory& c = site.base();
  ConfigLookup look{&site, &pfa, &c};
  int d0 = y.dim(*pfa.color_by_name(c.object_name(least)));

  auto e00 = look.element(least, {c.identity(least), c.identity(least)});
  if (!e00) {
    rep.fail("site lacks the doubled identity configuration at the least element");
    return rep;
  }
  QMat mu0 = y.map_of(*e00);
  QVec unit0(d0);
  {
    const QMat& u = y.map_of(*look.element(least, {}));
    for (int i = 0; i < d0; ++i) unit0[i] = u.at(i, 0);
  }
  QMat u0(d0, 1);
  for (int i = 0; i < d0; ++i) u0.at(i, 0) = unit0[i];
  rep.require(mu0 * mu0.kron(QMat::identity(d0)) == mu0 * QMat::identity(d0).kron(mu0),
              "least-element multiplication not associative");
  rep.require(mu0 * u0.kron(QMat::identity(d0)) == QMat::identity(d0),
              "least-element multiplication not left unital");
  rep.require(mu0 * QMat::identity(d0).kron(u0) == QMat::identity(d0),
              "least-element multiplication not right unital");
  rep.require(mu0 * tensor_perm_matrix({d0, d0}, {1, 0}) == mu0,
              "least-element multiplication not commutative");

  for (Obj o = 0; o < c.object_count(); ++o) {
    auto arrow = c.hom(least, o);
    if (arrow.empty()) {
      rep.fail("no morphism from the least element to " + c.object_name(o));
      continue;
    }
    Mor z = arrow.front();
    auto act = look.element(o, {z, c.identity(o)});
    if (!act) {
      rep.fail("missing action configuration at " + c.object_name(o));
      continue;
    }
    int dd = y.dim(*pfa.color_by_name(c.object_name(o)));
    const QMat& av = y.map_of(*act);
    // associativity of the action over mu0
    rep.require(av * mu0.kron(QMat::identity(dd)) == av * QMat::identity(d0).kron(av),
                "module associativity fails at " + c.object_name(o));
    rep.require(av * u0.kron(QMat::identity(dd)) == QMat::identity(dd),
                "module unit fails at " + c.object_name(o));
  }

  // actions commute with the underlying diagram maps
  for (Mor g = 0; g < c.morphism_count(); ++g) {
    Obj a = c.dom(g), b = c.cod(g);
    Mor za = c.hom(least, a).empty() ? -1 : c.hom(least, a).front();
    Mor zb = c.hom(least, b).empty() ? -1 : c.hom(least, b).front();
    if (za < 0 || zb < 0) continue;
    auto actA = look.element(a, {za, c.identity(a)});
    auto actB = look.element(b, {zb, c.identity(b)});
    if (!actA || !actB) continue;
    const QMat& lg = y.map_of(*look.element(b, {g}));
    int da = y.dim(*pfa.color_by_name(c.object_name(a)));
    rep.require(lg * y.map_of(*actA) == y.map_of(*actB) * QMat::identity(d0).kron(lg),
                "action does not commute with " + c.morphism_name(g));
    (void)da;
  }
  return rep;
}

CheckReport check_pointed_diagram(const VectAlgebra& y, const ConfiguredStructure& site,
                                  const SetOperad& pfa) {
  CheckReport rep;
  const FinCategory& c = site.base();
  ConfigLookup look{&site, &pfa, &c};
  for (Mor g = 0; g < c.morphism_count(); ++g) {
    Obj a = c.dom(g), b = c.cod(g);
    const QMat& lg = y.map_of(*look.element(b, {g}));
    const QMat& ua = y.map_of(*look.element(a, {}));
    const QMat& ub = y.map_of(*look.element(b, {}));
    rep.require(lg * ua == ub, "points not preserved along " + c.morphism_name(g));
  }
  return rep;
}

VectAlgebra extend_along_localization(const LocalizedOperad& loc, const VectAlgebra& y) {
  const SetOperad& base = *loc.base;
  const SetOperad& lop = loc.op;
  VectAlgebra x(&lop);
  for (Color c = 0; c < lop.color_count(); ++c) x.set_dim(c, y.dim(c));

  auto vertex_matrix = [&](const DecoratedTree::Dec& d) -> QMat {
    if (!d.inverse) return y.map_of(d.el);
    auto inv = y.map_of(d.el).inverse();
    if (!inv) throw std::invalid_argument("extend_along_localization: structure map not invertible");
    return *inv;
  };

  auto evaluate = [&](const DecoratedTree& dt) -> QMat {
    if (dt.tree.is_exceptional()) return QMat::identity(y.dim(dt.tree.exceptional_color()));
    GraftDecomposition gd = decompose_grafting(dt.tree);
    int pos = 0;
    auto eval = [&](auto&& self, const GraftRecipe& r) -> QMat {
      if (r.is_exceptional) return QMat::identity(y.dim(r.color));
      QMat root = vertex_matrix(dt.phi[pos++]);
      if (r.branches.empty()) return root;
      QMat inner(1, 1);
      inner.at(0, 0) = 1;
      for (const auto& b : r.branches) inner = inner.kron(self(self, b));
      return root * inner;
    };
    QMat planar = eval(eval, gd.recipe);
    Profile tp = dt.tree.profile();
    std::vector<int> fdims;
    for (Color cc : tp.in) fdims.push_back(y.dim(cc));
    // theta_{p sigma} = theta_p . P_{sigma^{-1}} on the reordered factors
    Perm inv = perm_inverse(gd.input_permutation);
    return planar * tensor_perm_matrix(fdims, inv);
  };

  // members of a class all evaluate identically; assert while assigning
  for (const auto& e : lop.all_elements()) {
    auto members = loc.members(e);
    QMat value = evaluate(members.front());
    for (const auto& m : members)
      if (!(evaluate(m) == value))
        throw std::logic_error("extend_along_localization: value not constant on a class");
    x.set_map(e, value);
  }
  (void)base;
  return x;
}

}  // namespace opal
