#include <doctest.h>

#include <random>

#include "opal/trees.hpp"

using namespace opal;

namespace {

// The worked substitution from the tree chapter: T has vertices w, u, v with
// colors a..g; K = T(H_u, H_v, H_w) has internal edges colored c, f, g.
struct WorkedExample {
  enum : Color { A, B, C, D, E, F, G };
  PlanarTree T, Hu, Hv, Hw, K;
  TreeMorphism m;

  WorkedExample() {
    // T: root w (c,d;e), children u (a,b;c), v (d;d)
    PlanarTree tl = PlanarTree::two_level({{C, D}, E}, {{A, B}, {D}});
    T = tl;  // two-level with root (c,d;e), u at slot 0 (a,b;c), v at slot 1 (d;d)
    // H_u: u1 (a,b,f;c) with u2 (;f) under the f slot
    PlanarTree hu = PlanarTree::corolla({{A, B, F}, C});
    Hu = substitute(hu, 0, hu).result;  // placeholder, replaced below
    {
      PlanarTree u1 = PlanarTree::corolla({{A, B, F}, C});
      PlanarTree u2 = PlanarTree::corolla({{}, F});
      PlanarTree up_a = PlanarTree::exceptional(A), up_b = PlanarTree::exceptional(B);
      Hu = graft(u1, {up_a, up_b, u2});
    }
    Hv = PlanarTree::exceptional(D);
    {
      PlanarTree w1 = PlanarTree::corolla({{C, G}, E});
      PlanarTree w2 = PlanarTree::corolla({{D}, G});
      Hw = graft(w1, {PlanarTree::exceptional(C), w2});
    }
    m = substitute_all(T, {Hw, Hu, Hv});  // assignment indexed by T's preorder: w, u, v
    K = m.source;
  }
};

PlanarTree random_tree(std::mt19937_64& rng, int num_colors, int max_edges) {
  std::uniform_int_distribution<int> colorD(0, num_colors - 1);
  Color out = colorD(rng);
  std::uniform_int_distribution<int> arityD(0, 3);
  // random profile
  Profile p;
  p.out = out;
  int n = arityD(rng);
  for (int i = 0; i < n; ++i) p.in.push_back(colorD(rng));
  auto pool = enumerate_trees(num_colors, p, max_edges);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  return pool[pick(rng)];
}

}  // namespace

TEST_CASE("basic builders") {
  PlanarTree cor = PlanarTree::corolla({{0, 1}, 2});
  CHECK(cor.vertex_count() == 1);
  CHECK(cor.leaf_count() == 2);
  CHECK(cor.profile() == Profile{{0, 1}, 2});
  CHECK(cor.input_order() == std::vector<int>{0, 1});

  PlanarTree up = PlanarTree::exceptional(3);
  CHECK(up.is_exceptional());
  CHECK(up.profile() == Profile{{3}, 3});

  PlanarTree lin = PlanarTree::linear({0, 1, 2});
  CHECK(lin.vertex_count() == 2);
  CHECK(lin.internal_edge_count() == 1);
  CHECK(lin.edge_color(0) == 1);
  CHECK(lin.profile() == Profile{{0}, 2});

  PlanarTree tlin = PlanarTree::truncated_linear({0, 1});
  CHECK(tlin.vertex_count() == 2);
  CHECK(tlin.profile() == Profile{{}, 1});

  PlanarTree pc = PlanarTree::permuted_corolla({{0, 1}, 2}, {1, 0});
  CHECK(pc.profile() == Profile{{1, 0}, 2});
  CHECK(!(pc == PlanarTree::corolla({{1, 0}, 2})));
}

TEST_CASE("substitution cases") {
  // exceptional into the one-vertex (c;c) corolla
  PlanarTree lin_cc = PlanarTree::linear({5, 5});
  auto st = substitute(lin_cc, 0, PlanarTree::exceptional(5));
  CHECK(st.result == PlanarTree::exceptional(5));

  // substituting the matching corolla is the identity
  PlanarTree t = PlanarTree::two_level({{0, 1}, 2}, {{0}, {1, 1}});
  for (int v = 0; v < t.vertex_count(); ++v) {
    auto s = substitute(t, v, PlanarTree::corolla(t.vertex_profile(v)));
    CHECK(s.result == t);
  }

  // substituting corollas everywhere is the identity
  std::vector<PlanarTree> cors;
  for (int v = 0; v < t.vertex_count(); ++v) cors.push_back(PlanarTree::corolla(t.vertex_profile(v)));
  CHECK(substitute_all(t, cors).source == t);
}

TEST_CASE("worked substitution example") {
  WorkedExample ex;
  CHECK(ex.T.profile() == Profile{{ex.A, ex.B, ex.D}, ex.E});
  CHECK(ex.K.profile() == ex.T.profile());
  CHECK(ex.K.vertex_count() == 4);
  CHECK(ex.K.internal_edge_count() == 3);
  std::vector<Color> edgeColors;
  for (int e = 0; e < 3; ++e) edgeColors.push_back(ex.K.edge_color(e));
  std::sort(edgeColors.begin(), edgeColors.end());
  CHECK(edgeColors == std::vector<Color>{ex.C, ex.F, ex.G});
  // vertex-set decomposition |Vt(K)| = sum |Vt(H_v)|
  CHECK(ex.K.vertex_count() == ex.Hw.vertex_count() + ex.Hu.vertex_count() + ex.Hv.vertex_count());
}

TEST_CASE("grafting") {
  // grafting with exceptional edges has no effect
  PlanarTree g = PlanarTree::two_level({{0, 1}, 2}, {{2}, {}});
  std::vector<PlanarTree> ups;
  for (Color c : g.profile().in) ups.push_back(PlanarTree::exceptional(c));
  CHECK(graft(g, ups) == g);

  // Graft(up_d; G) = G
  CHECK(graft(PlanarTree::exceptional(2), {g}) == g);

  // edge count |Graft(G; H_j)| = |G| + sum |H_j| + #{non-exceptional branches}
  PlanarTree h1 = PlanarTree::linear({1, 2});
  PlanarTree h2 = PlanarTree::exceptional(1);
  PlanarTree base = PlanarTree::corolla({{2, 1}, 0});
  PlanarTree res = graft(base, {h1, h2});
  CHECK(res.internal_edge_count() == 0 + 0 + 1);
}

TEST_CASE("reorder is a right action") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    PlanarTree t = random_tree(rng, 2, 2);
    int n = t.leaf_count();
    auto perms = all_perms(n);
    std::uniform_int_distribution<size_t> pick(0, perms.size() - 1);
    Perm s = perms[pick(rng)], u = perms[pick(rng)];
    CHECK(reorder(reorder(t, s), u) == reorder(t, perm_compose(s, u)));
    CHECK(reorder(t, perm_id(n)) == t);
  }
}

TEST_CASE("enumerate_trees") {
  // profile (c;c), n = 0: the exceptional edge and the one-vertex linear graph
  auto ts = enumerate_trees(1, Profile{{0}, 0}, 0);
  CHECK(ts.size() == 2);

  // profile (c1,c2;d) with distinct colors, n = 0: permuted corollas only
  auto pc = enumerate_trees(3, Profile{{0, 1}, 2}, 0);
  CHECK(pc.size() == 2);
  for (const auto& t : pc) CHECK(t.vertex_count() == 1);

  // profile ((0);1) over two colors, n = 1: corolla, two 2-vertex linear graphs,
  // and four trees with a nullary child vertex
  auto e = enumerate_trees(2, Profile{{0}, 1}, 1);
  int linear = 0, nullary = 0, corollas = 0;
  for (const auto& t : e) {
    if (t.vertex_count() == 1)
      ++corollas;
    else if (t.vertex_profile(1).arity() == 0 || t.vertex_profile(0).arity() == 2)
      ++nullary;
    else
      ++linear;
  }
  CHECK(corollas == 1);
  CHECK(e.size() == 7);
}

TEST_CASE("decompose_grafting round-trips") {
  // corolla decomposes to itself
  PlanarTree cor = PlanarTree::corolla({{0, 1}, 0});
  auto d = decompose_grafting(cor);
  CHECK(recompose(d.recipe) == cor);
  CHECK(perm_is_id(d.input_permutation));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    PlanarTree t = random_tree(rng, 2, 2);
    auto dec = decompose_grafting(t);
    CHECK(reorder(recompose(dec.recipe), dec.input_permutation) == t);
  }
}

TEST_CASE("substitution order independence and associativity") {
  std::mt19937_64 rng(13);
  int done = 0;
  for (int trial = 0; trial < 400 && done < 200; ++trial) {
    PlanarTree t = random_tree(rng, 2, 1);
    if (t.is_exceptional() || t.vertex_count() < 2) continue;
    std::vector<PlanarTree> hs;
    bool ok = true;
    for (int v = 0; v < t.vertex_count(); ++v) {
      auto pool = enumerate_trees(2, t.vertex_profile(v), 1);
      if (pool.empty()) {
        ok = false;
        break;
      }
      std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
      hs.push_back(pool[pick(rng)]);
    }
    if (!ok) continue;
    ++done;
    PlanarTree forward = substitute_all(t, hs).source;
    // reversed single-substitution order gives the same tree
    PlanarTree cur = t;
    std::vector<std::uint64_t> tags;
    for (int v = 0; v < t.vertex_count(); ++v) tags.push_back(t.tag(v));
    for (int v = t.vertex_count() - 1; v >= 0; --v) {
      int idx = cur.index_of_tag(tags[v]);
      cur = substitute(cur, idx, hs[v]).result;
    }
    CHECK(cur == forward);
  }
  CHECK(done >= 100);
}

TEST_CASE("generating morphisms") {
  // Lin(c,c,c) with the exceptional edge at either vertex
  PlanarTree lin3 = PlanarTree::linear({0, 0, 0});
  auto pool = enumerate_trees(1, Profile{{0}, 0}, 1);
  auto ms = enumerate_generating_morphisms(lin3, pool);
  int exceptional_sources = 0;
  for (const auto& m : ms)
    if (m.source == PlanarTree::linear({0, 0})) ++exceptional_sources;
  CHECK(exceptional_sources == 2);

  // a corolla target: one morphism per non-corolla pool member of its profile
  PlanarTree cor = PlanarTree::corolla({{0}, 0});
  auto ms2 = enumerate_generating_morphisms(cor, pool);
  CHECK(ms2.size() == pool.size() - 1);  // everything except the corolla itself
}

TEST_CASE("dot output") {
  PlanarTree t = PlanarTree::two_level({{0, 1}, 2}, {{0}, {}});
  std::string d = t.dot({"a", "b", "c"});
  CHECK(d.find("digraph") != std::string::npos);
  CHECK(d.find("label=\"b\"") != std::string::npos);
}
