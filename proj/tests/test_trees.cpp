#include "doctest.h"

#include "artifact/trees.hpp"

#include <functional>
#include <set>

using namespace artifact;

namespace {

// Contracted cppin images are white trees under a black root; read them back
// as rooted trees without going through uncppin.
RootedTree white_tree_to_rooted(const BWTree& t, int v) {
  RootedTree r;
  r.label = t[v].label;
  for (int c : t[v].children) r.children.push_back(white_tree_to_rooted(t, c));
  return r;
}

}  // namespace

TEST_CASE("tree literals parse and reserialize") {
  for (const char* s : {"b[b[w1[]]]", "b[b[w1[] w2[]]]", "b[b[w1[b[w2[]]]]]"}) {
    auto t = BWTree::parse(s);
    CHECK(t.str() == s);
  }
  CHECK(BWTree::parse("b[ b[w2[]  w1[] ] ]").str() == "b[b[w2[] w1[]]]");
  CHECK(BWTree::parse("b[b[w1[b[w2[]]]]]").dim() == 1);
  CHECK_THROWS_AS(BWTree::parse("b[b[w1[] w3[]]]"), InputError);
  CHECK_THROWS_AS(BWTree::parse("b[b[w1[w2[]]]]"), InputError);
  CHECK_THROWS_AS(BWTree::parse("b[b[w1[]]"), InputError);
  CHECK_NOTHROW(BWTree::parse("b[b[w1[w2[]]]]", TreeClass::any));
}

TEST_CASE("enumeration counts and roundtrip") {
  const std::vector<std::vector<std::size_t>> expected = {
      {1}, {2, 2}, {6, 18, 12}, {24, 144, 240, 120}, {120, 1200, 3600, 4200, 1680}};
  for (int n = 1; n <= 5; ++n) {
    long long euler = 0;
    for (int k = 0; k < n; ++k) {
      const auto& lits = enumerate_literals(n, k);
      CHECK(lits.size() == expected[n - 1][k]);
      euler += (k % 2 ? -1 : 1) * static_cast<long long>(lits.size());
      CHECK(std::is_sorted(lits.begin(), lits.end()));
      if (n <= 4)
        for (const auto& s : lits) {
          auto t = BWTree::parse(s);
          CHECK(t.str() == s);
          CHECK(t.lobes() == n);
          CHECK(t.dim() == k);
          int sum = 0;
          for (int w : t.whites()) sum += static_cast<int>(t[w].children.size());
          CHECK(sum == t.dim());
          CHECK(t.no_tails());
        }
    }
    CHECK(euler == (n == 1 ? 1 : 0));
    CHECK(enumerate_literals(n, n).empty());
  }
}

TEST_CASE("outside order") {
  auto unit = BWTree::parse("b[b[w1[]]]");
  auto seq = outside_order(unit);
  REQUIRE(seq.size() == 5);
  CHECK(seq.front() == OutsideItem{true, 1});
  CHECK(seq[1] == OutsideItem{false, 1});
  CHECK(seq[3] == OutsideItem{false, 2});
  CHECK(seq.back() == OutsideItem{false, 0});
  auto t = BWTree::parse("b[b[w1[] w2[]]]");
  auto edges = outside_edges(t);
  CHECK(edges == std::vector<int>{1, 2, 3});
  CHECK(t[2].label == 1);
  CHECK(t[3].label == 2);
}

TEST_CASE("contract, branch and cut") {
  auto unit = BWTree::parse("b[b[w1[]]]");
  CHECK(contract_edge(unit, 1).str() == "b[w1[]]");
  for (const auto& t : enumerate_trees(3))
    for (int e = 1; e < t.size(); ++e) {
      if (t[e].color == Color::white && t[t[e].parent].color == Color::white) continue;
      CHECK(contract_edge(t, e).size() == t.size() - 1);
    }

  auto t = BWTree::parse("b[b[w1[b[w2[]]]]]");
  auto [c, br] = cut(t, t.white_vertex(1));
  CHECK(c.str() == "b[b[w1[]]]");
  REQUIRE(br.size() == 1);
  CHECK(br[0].str() == "b[b[w2[]]]");
  auto [same, none] = cut(t, t.white_vertex(2));
  CHECK(same == t);
  CHECK(none.empty());

  for (const auto& x : enumerate_trees(4))
    for (int w : x.whites()) {
      auto [cx, bx] = cut(x, w);
      std::multiset<int> labels;
      for (int v : cx.whites()) labels.insert(cx[v].label);
      for (const auto& b : bx)
        for (int v : b.whites()) labels.insert(b[v].label);
      CHECK(labels == std::multiset<int>{1, 2, 3, 4});
    }
}

TEST_CASE("rooted trees and cppin") {
  CHECK(cppin(parse_rooted("r1[]")).str() == "+1*b[b[w1[]]]");
  CHECK(cppin(parse_rooted("r1[r2[]]")).str() == "+1*b[b[w1[b[w2[]]]]]");
  auto star = cppin(parse_rooted("r1[r2[] r3[]]"));
  CHECK(star.size() == 2);
  CHECK(parse_rooted("r1[r3[] r2[]]").str() == "r1[r2[] r3[]]");
  CHECK_THROWS_AS(cppin(parse_rooted("r[r[]]")), InputError);

  const std::vector<std::size_t> unlabelled = {1, 1, 2, 4, 9, 20};
  const std::vector<std::size_t> labelled = {1, 2, 9, 64, 625};
  for (int n = 1; n <= 6; ++n) CHECK(enumerate_rooted(n).size() == unlabelled[n - 1]);
  for (int n = 1; n <= 5; ++n) CHECK(enumerate_labelled_rooted(n).size() == labelled[n - 1]);

  for (int n = 1; n <= 4; ++n)
    for (const auto& r : enumerate_labelled_rooted(n)) {
      auto chain = cppin(r);
      std::set<std::string> terms;
      for (const auto& [lit, c] : chain.terms()) {
        CHECK(c == 1);
        terms.insert(lit);
        auto t = BWTree::parse(lit);
        CHECK(t.dim() == n - 1);
        CHECK(uncppin(t) == r);
      }
      // closed under reordering the children of any single white vertex
      for (const auto& lit : terms) {
        auto t = BWTree::parse(lit);
        for (int w : t.whites()) {
          auto node = t.to_node();
          std::function<PlanarNode*(PlanarNode&)> find = [&](PlanarNode& x) -> PlanarNode* {
            if (x.color == Color::white && x.label == t[w].label) return &x;
            for (auto& ch : x.children)
              if (auto* p = find(ch)) return p;
            return nullptr;
          };
          auto* target = find(node);
          if (target->children.size() < 2) continue;
          std::reverse(target->children.begin(), target->children.end());
          CHECK(terms.count(serialize(node)) == 1);
        }
      }
      // contracting every black edge recovers the rooted tree
      auto t = BWTree::parse(chain.terms().begin()->first);
      for (bool changed = true; changed;) {
        changed = false;
        for (int e = 1; e < t.size(); ++e)
          if (t[e].color == Color::black) {
            t = contract_edge(t, e);
            changed = true;
            break;
          }
      }
      auto back = white_tree_to_rooted(t, 1);
      back.canonicalize();
      CHECK(back == r);
    }
}

TEST_CASE("st_infinity") {
  for (const auto& t : enumerate_trees(3))
    if (t.dim() == t.lobes() - 1) CHECK(st_infinity(t).str() == "+1*" + t.str());
  CHECK(st_infinity(BWTree::parse("b[b[w1[] w2[] w3[]]]")).empty());
  auto ww = BWTree::parse("b[w1[w2[]]]", TreeClass::any);
  auto img = st_infinity(ww);
  REQUIRE(img.size() == 1);
  CHECK(img.terms().begin()->first == "b[b[w1[b[w2[]]]]]");
  auto bb = BWTree::parse("b[w1[b[w2[] b[w3[] w4[]]]]]", TreeClass::any);
  CHECK(st_infinity(bb).str() == "+1*b[b[w1[b[w2[] w3[] w4[]]]]]");
  CHECK_THROWS_AS(st_infinity(BWTree::parse("b[b[w1[t]]]")), InputError);
}

TEST_CASE("chain literals") {
  auto c = TreeChain::parse("-1*b[b[w2[] w1[]]] +1*b[b[w1[] w2[]]]");
  CHECK(c.str() == "+1*b[b[w1[] w2[]]] -1*b[b[w2[] w1[]]]");
  CHECK(TreeChain::parse("0").empty());
  CHECK((c - c).empty());
  CHECK_THROWS_AS(TreeChain::parse("+1*b[b[w1[]]] +1*b[b[w1[] w2[]]]"), InputError);
  CHECK(TreeChain::parse("+2*b[b[w1[]]]").scaled(-3).str() == "-6*b[b[w1[]]]");
}
