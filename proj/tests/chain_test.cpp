#include <doctest.h>

#include <random>

#include "opal/chain.hpp"

using namespace opal;

TEST_CASE("segment shape and laws") {
  const Segment& s = segment();
  CHECK(s.J.dim(0) == 2);
  CHECK(s.J.dim(1) == 1);
  CHECK(check_segment(s).ok());

  ChainComplex jj = tensor(s.J, s.J);
  CHECK(jj.dim(0) == 4);
  CHECK(jj.dim(1) == 4);
  CHECK(jj.dim(2) == 1);

  auto h = homology(jj);
  CHECK(h[0] == 1);
  CHECK(h[1] == 0);
  CHECK(h[2] == 0);

  auto hj = homology(s.J);
  CHECK(hj[0] == 1);
  CHECK(hj[1] == 0);
}

TEST_CASE("tensor unit and cokernel") {
  const Segment& s = segment();
  ChainComplex ground = ChainComplex::concentrated(1);
  ChainComplex jg = tensor(s.J, ground);
  CHECK(jg.dim(0) == s.J.dim(0));
  CHECK(jg.dim(1) == s.J.dim(1));
  CHECK(jg.d(1) == s.J.d(1));

  ChainMap z = ChainMap::zero(ChainComplex::concentrated(0), s.J);
  Cokernel ck = cokernel(z);
  CHECK(ck.quotient == s.J);

  Cokernel ck2 = cokernel(ChainMap::identity(s.J));
  CHECK(ck2.quotient.total_dim() == 0);
}

TEST_CASE("flat tensors have the expected dims under regrouping") {
  const Segment& sg = segment();
  ChainComplex j3flat = tensor_all({sg.J, sg.J, sg.J});
  ChainComplex j3left = tensor(tensor(sg.J, sg.J), sg.J);
  CHECK(homology(j3flat) == homology(j3left));
  for (int k = 0; k <= j3flat.top_degree(); ++k) CHECK(j3flat.dim(k) == j3left.dim(k));
  CHECK(j3flat.total_dim() == 27);
}

TEST_CASE("j_power_map basics") {
  const Segment& sg = segment();
  ChainMap m = j_power_map(2, {{JFactorSpec::Merge, {0, 1}}}, {});
  CHECK(m == sg.mu);

  ChainMap swap = j_power_map(2, {{JFactorSpec::Take, {1}}, {JFactorSpec::Take, {0}}}, {});
  CHECK(swap.compose(swap) == ChainMap::identity(swap.src()));
  CHECK(swap.at(2).at(0, 0) == -1);  // h (x) h picks up a sign

  CHECK(sg.mu.compose(swap) == sg.mu);

  ChainMap ins0 = j_power_map(1, {{JFactorSpec::Insert0, {}}, {JFactorSpec::Take, {0}}}, {});
  CHECK(sg.mu.compose(ins0) == ChainMap::identity(sg.J));

  ChainMap ins1 = j_power_map(1, {{JFactorSpec::Insert1, {}}, {JFactorSpec::Take, {0}}}, {});
  CHECK(sg.mu.compose(ins1) == sg.end1.compose(sg.eps));

  ChainMap epses = j_power_map(2, {}, {0, 1});
  CHECK(sg.eps.compose(sg.mu) == epses);
}

TEST_CASE("j_functor_map cases") {
  // single-vertex substitution of a 1-edge tree into a corolla: ground -> J at the 0-end
  PlanarTree cor = PlanarTree::corolla({{0}, 1});
  PlanarTree lin = PlanarTree::linear({0, 0, 1});
  auto m = substitute_all(cor, {lin});
  ChainMap jm = j_functor_map(m);
  CHECK(jm.src().dim(0) == 1);
  CHECK(jm.dst() == segment().J);
  CHECK(jm.at(0).at(0, 0) == 1);
  CHECK(jm.at(0).at(1, 0) == 0);

  // exceptional edge between two vertices of a 3-vertex linear graph: mu
  PlanarTree lin3 = PlanarTree::linear({0, 0, 0, 0});
  std::vector<PlanarTree> hs{PlanarTree::corolla({{0}, 0}), PlanarTree::exceptional(0),
                             PlanarTree::corolla({{0}, 0})};
  auto m2 = substitute_all(lin3, hs);
  ChainMap jm2 = j_functor_map(m2);
  CHECK(jm2 == segment().mu);

  // exceptional edge at a boundary unary vertex: eps
  PlanarTree lin2 = PlanarTree::linear({0, 0, 0});
  auto m3 = substitute_all(lin2, {PlanarTree::exceptional(0), PlanarTree::corolla({{0}, 0})});
  ChainMap jm3 = j_functor_map(m3);
  CHECK(jm3 == segment().eps);
}

TEST_CASE("j_functor_map order independence on a fully exceptional chain") {
  PlanarTree lin3 = PlanarTree::linear({0, 0, 0, 0});
  std::vector<PlanarTree> up3(3, PlanarTree::exceptional(0));
  ChainMap forward = j_functor_map(substitute_all(lin3, up3));
  PlanarTree cur = lin3;
  std::vector<std::uint64_t> tags{lin3.tag(0), lin3.tag(1), lin3.tag(2)};
  ChainMap acc = ChainMap::identity(j_power(2));
  int edges = 2;
  for (int v = 2; v >= 0; --v) {
    int idx = cur.index_of_tag(tags[v]);
    SubstStep st = substitute(cur, idx, PlanarTree::exceptional(0));
    std::vector<JFactorSpec> specs;
    for (auto& es : st.edges) {
      if (es.kind == SubstStep::EdgeSrc::FromSource)
        specs.push_back({JFactorSpec::Take, {es.src_a}});
      else if (es.kind == SubstStep::EdgeSrc::Merged)
        specs.push_back({JFactorSpec::Merge, {es.src_a, es.src_b}});
      else
        specs.push_back({JFactorSpec::Insert0, {}});
    }
    acc = j_power_map(edges, specs, st.eps_edges).compose(acc);
    edges = int(st.edges.size());
    cur = st.result;
  }
  CHECK(acc == forward);
}

TEST_CASE("grafting length-one map") {
  PlanarTree base = PlanarTree::corolla({{0}, 0});
  PlanarTree branch = PlanarTree::corolla({{0}, 0});
  Grafting g = graft_with_edges(base, {branch});
  CHECK(g.result.internal_edge_count() == 1);
  CHECK(g.pi.src().dim(0) == 1);
  CHECK(g.pi.at(0).at(1, 0) == 1);  // the 1-end
  CHECK(g.pi.at(0).at(0, 0) == 0);

  PlanarTree two = PlanarTree::corolla({{0, 0}, 0});
  Grafting g2 = graft_with_edges(two, {PlanarTree::exceptional(0), PlanarTree::exceptional(0)});
  CHECK(g2.result == two);
  CHECK(g2.pi == ChainMap::identity(ChainComplex::concentrated(1)));
}

TEST_CASE("tensor powers of J are acyclic above degree zero") {
  for (int n = 1; n <= 3; ++n) {
    ChainComplex t = j_power(n);
    auto h = homology(t);
    CHECK(h[0] == 1);
    for (int k = 1; k <= t.top_degree(); ++k) CHECK(h[k] == 0);
  }
}
