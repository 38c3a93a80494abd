#include "doctest.h"

#include "artifact/cacti.hpp"

using namespace artifact;

namespace {

std::vector<BWTree> trees_up_to(int n) {
  std::vector<BWTree> out;
  for (int j = 1; j <= n; ++j)
    for (auto& t : enumerate_trees(j)) out.push_back(std::move(t));
  return out;
}

SparseIntMatrix dense(const std::vector<std::vector<int>>& a) {
  SparseIntMatrix m(a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a[r].size(); ++c) m.add(static_cast<int>(r), static_cast<int>(c), Int(a[r][c]));
  return m;
}

}  // namespace

TEST_CASE("sparse and dense linear algebra") {
  auto m = dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(rank_rational(m) == 3);
  auto s = smith_form(m);
  CHECK(s.rank == 3);
  REQUIRE(s.invariant_factors.size() == 3);
  CHECK(s.invariant_factors[0] == 2);
  CHECK(s.invariant_factors[1] == 6);
  CHECK(s.invariant_factors[2] == 12);

  auto singular = dense({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  CHECK(rank_rational(singular) == 2);
  CHECK(smith_form(singular).rank == 2);
  CHECK(smith_form(singular).invariant_factors.empty());

  RatMatrix r{{Rat(1), Rat(2)}, {Rat(3), Rat(4)}};
  CHECK(determinant(r) == -2);
  CHECK(rank(r) == 2);
  auto ns = nullspace({{Rat(1), Rat(1), Rat(0)}}, 3);
  CHECK(ns.size() == 2);

  auto a = dense({{1, 1}, {0, 1}}), b = dense({{1, -1}, {0, 0}});
  CHECK(a.multiply(b).nonzeros() == 2);
  CHECK(dense({{0, 0}}).is_zero());
}

TEST_CASE("tree flags roundtrip") {
  for (const auto& t : trees_up_to(4)) {
    auto g = tree_flags(t);
    CHECK(tree_from_flags(g) == t);
  }
}

TEST_CASE("ribbon duality") {
  for (const auto& t : trees_up_to(4)) {
    CAPTURE(t.str());
    auto gamma = ribbon_from_tree(t);
    CHECK(gamma.marked_spineless_treelike());
    CHECK(gamma.genus() == 0);
    CHECK(gamma.cycle_count() == t.lobes() + 1);
    CHECK(dual_tree(gamma) == t);
    // flag-level roundtrips in both directions
    auto tau = tree_flags(t);
    CHECK(tree_flags_of_ribbon(ribbon_of_tree_flags(tau)) == tau);
    CHECK(ribbon_of_tree_flags(tree_flags_of_ribbon(gamma)) == gamma);
    CHECK(read_ribbon(write_ribbon(gamma)) == gamma);
  }
}

TEST_CASE("ribbon input validation") {
  CHECK_THROWS_AS(read_ribbon("flags 2\nf0 0\niota 0 1\ndelta 0 0\nnext 0 1\n"), InputError);
  CHECK_THROWS_AS(read_ribbon("iota 1 0\n"), InputError);
  auto g = ribbon_from_tree(BWTree::parse("b[b[w1[] w2[]]]"));
  g.next[0] = g.next[1];
  CHECK_THROWS_AS(g.validate(), InputError);
}

TEST_CASE("S1 gluing") {
  S1Graph s{Rat(1), {Rat(0), Rat(1, 2)}}, sp{Rat(1), {Rat(0), Rat(1, 3)}};
  auto g = glue_s1(s, sp);
  CHECK(g.graph.theta == std::vector<Rat>{Rat(0), Rat(1, 3), Rat(1, 2)});
  CHECK(g.coincident == 0);
  // base points are identified, every other point adds a vertex
  CHECK(g.graph.theta.size() == s.theta.size() + sp.theta.size() - 1);
  auto h = glue_s1(s, S1Graph{Rat(1), {Rat(0), Rat(1, 2)}});
  CHECK(h.coincident == 1);
  CHECK(h.graph.theta.size() < s.theta.size() + 1);
  CHECK(S1Graph{Rat(2), {Rat(0), Rat(1, 4)}}.metric() == std::vector<Rat>{Rat(1, 2), Rat(3, 2)});
  CHECK_THROWS_AS(glue_s1(S1Graph{Rat(1), {Rat(1, 2)}}, sp), InputError);
}

TEST_CASE("gluing into a lobe of a ribbon graph") {
  auto c = read_cactus("b[b[w1[] w2[]]]\narc 1 1\narc 2 1\n");
  auto g = cactus_ribbon(c);
  auto out = glue_sub(g, 1, S1Graph{Rat(1), {Rat(0), Rat(1, 4), Rat(1, 2)}});
  CHECK(out.coincident == 0);
  CHECK(out.graph.vertices == g.vertices + 2);
  CHECK(out.graph.genus() == 0);
  CHECK(out.graph.cycle_count() == g.cycle_count());
  Rat total = 0;
  for (std::size_t f = 0; f < out.graph.mu.size(); ++f)
    if (out.graph.cycle_label[f] == 1) total += out.graph.mu[f];
  CHECK(total == 1);
}

TEST_CASE("scaling composition") {
  auto r = scaling_compose({Rat(2), Rat(3)}, 2, {Rat(1), Rat(1)});
  CHECK(r == std::vector<Rat>{Rat(2), Rat(3, 2), Rat(3, 2)});
  CHECK_THROWS_AS(scaling_compose({Rat(1)}, 2, {Rat(1)}), InputError);
}

TEST_CASE("cactus files and chord diagrams") {
  auto c = read_cactus("b[b[w1[b[w2[]]] w3[]]]\narc 1 1/3\narc 2 2/3\narc 3 1\narc 4 1\n");
  CHECK(c.normalized());
  CHECK(c.outside_length() == 3);
  CHECK(read_cactus(c.str()) == c);
  auto d = chord_diagram(c);
  CHECK(d.theta.size() == 4);
  CHECK(d.theta.back() + d.length.back() == 3);
  CHECK(cactus_from_chords(d) == c);
  CHECK_THROWS_AS(read_cactus("b[b[w1[]]]\narc 2 1\n"), InputError);
  CHECK_THROWS_AS(read_cactus("b[b[w1[] w2[]]]\narc 1 1\n"), InputError);
  CHECK_THROWS_AS(read_cactus("b[b[w1[]]]\narc 1 -1\n"), InputError);

  std::uint64_t state = 7;
  for (int n = 1; n <= 5; ++n)
    for (int j = 0; j < 20; ++j) {
      auto r = random_normalized_cactus(n, state);
      CHECK(r.normalized());
      CHECK(cactus_from_chords(chord_diagram(r)) == r);
      auto g = cactus_ribbon(r);
      CHECK(g.marked_spineless_treelike());
      CHECK(dual_tree(g) == r.type);
    }
}

TEST_CASE("cactus gluing") {
  auto unit = read_cactus("b[b[w1[]]]\narc 1 1\n");
  auto c = read_cactus("b[b[w1[b[w2[]]] w3[]]]\narc 1 1/3\narc 2 2/3\narc 3 1\narc 4 1\n");
  for (int i = 1; i <= 3; ++i) CHECK(glue_cacti(c, i, unit, GlueMode::normalized).cactus == c);
  CHECK(glue_cacti(unit, 1, c, GlueMode::normalized).cactus == c);

  auto two = read_cactus("b[b[w1[] w2[]]]\narc 1 1\narc 2 1\n");
  auto g = glue_cacti(c, 1, two, GlueMode::normalized);
  CHECK(g.merged == 0);
  CHECK(g.cactus.normalized());
  CHECK(g.cactus.type.lobes() == 4);
  CHECK(compose(c.type, 1, two.type).coefficient(g.cactus.type.str()) != 0);

  std::uint64_t state = 11;
  for (int j = 0; j < 40; ++j) {
    auto a = random_normalized_cactus(3, state), b = random_normalized_cactus(2, state);
    const int i = 1 + j % 3;
    auto base = glue_cacti(a, i, b, GlueMode::normalized);
    Rat ri = a.lobe_length(i), R = b.outside_length();
    for (auto mode : {GlueMode::right, GlueMode::left, GlueMode::symmetric}) {
      auto other = glue_cacti(a, i, b, mode);
      CHECK(other.cactus.type == base.cactus.type);
      CHECK(other.merged == base.merged);
    }
    CHECK(glue_cacti(a, i, b, GlueMode::right).cactus.lobe_length(i) == ri * b.lobe_length(1) / R);
  }
  CHECK(parse_glue_mode("symmetric") == GlueMode::symmetric);
  CHECK_THROWS_AS(parse_glue_mode("sideways"), InputError);
}

TEST_CASE("glued cells decompose with the composition sign") {
  for (auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{1, 3}, std::pair{3, 1}}) {
    CAPTURE(n);
    CAPTURE(m);
    auto rep = verify_cell_composition(n, m, 100, 5);
    CHECK(rep.samples == 100);
    for (const auto& s : rep.counterexamples) MESSAGE(s);
    CHECK(rep.failures == 0);
  }
}

TEST_CASE("cellular chains of the cactus complex") {
  const std::vector<std::vector<std::size_t>> betti{{1}, {1, 1}, {1, 3, 2}, {1, 6, 11, 6}};
  for (int n = 1; n <= 4; ++n) {
    auto cx = build_cell_complex(n, 2);
    for (int k = 2; k < n; ++k) CHECK(cx.boundary[k].multiply(cx.boundary[k - 1]).is_zero());
    auto rows = homology(cx, 2);
    for (int k = 0; k < n; ++k) {
      CAPTURE(k);
      CHECK(rows[k].betti == betti[n - 1][k]);
      CHECK(rows[k].torsion.empty());
      CHECK(rows[k].snf_agrees);
    }
  }
  auto table = homology_table(homology(build_cell_complex(2)), 2);
  CHECK(table == "n k cells rank betti torsion\n2 0 2 0 1 -\n2 1 2 1 1 -\n");
}
