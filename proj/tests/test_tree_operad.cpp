#include "doctest.h"

#include "artifact/tree_operad.hpp"

#include <algorithm>
#include <numeric>

using namespace artifact;

namespace {

std::vector<BWTree> trees_up_to(int n) {
  std::vector<BWTree> out;
  for (int j = 1; j <= n; ++j)
    for (auto& t : enumerate_trees(j)) out.push_back(std::move(t));
  return out;
}

TreeChain from_map(const std::map<std::string, Int>& m) {
  TreeChain c;
  for (const auto& [s, x] : m) c.add(s, x);
  return c;
}

}  // namespace

TEST_CASE("weighted shuffle sign") {
  // T = (t), S = (s): t before s costs wt(t) wt(s)
  CHECK(shuffle_sign({{1}, {1}, {true, false}}) == -1);
  CHECK(shuffle_sign({{1}, {1}, {false, true}}) == 1);
  CHECK(shuffle_sign({{2}, {1}, {true, false}}) == 1);
  CHECK(shuffle_sign({{1, 1}, {3}, {true, false, false}}) == 1);
  CHECK(shuffle_sign({{1, 1}, {1, 1}, {false, true, false, true}}) == -1);
  WeightedShuffle bad{{1}, {1}, {true, true}};
  CHECK_FALSE(bad.valid());
  CHECK_THROWS_AS(shuffle_sign(bad), InputError);
  CHECK(WeightedShuffle{{1}, {1}, {false, true}}.is_sh_prime());
}

TEST_CASE("grafting") {
  auto host = BWTree::parse("b[b[w1[]]]");
  auto branch_with = [](int label) {
    return BWTree::from_node(PlanarNode::black({PlanarNode::black({PlanarNode::white(label)})}));
  };
  auto br = branch_with(2);
  auto terms = graft_all_terms(host, {br});
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].tree.str() == "b[b[w1[b[w2[]]]]]");
  CHECK(terms[0].sign == 1);

  auto host2 = BWTree::parse("b[b[w1[b[w2[]]]]]");
  auto slots = graft_slots(host2, host2.whites());
  CHECK(slots.size() == 3);
  // w2 is deeper, so its slot precedes the closing slot of w1
  CHECK(host2[slots[1].white].label == 2);
  auto all = graft_all(host2, {branch_with(3)});
  CHECK(all.size() == 3);
  CHECK(all.coefficient("b[b[w1[b[w3[]] b[w2[]]]]]") == -1);
  CHECK(all.coefficient("b[b[w1[b[w2[b[w3[]]]]]]]") == 1);
  CHECK(all.coefficient("b[b[w1[b[w2[]] b[w3[]]]]]") == 1);
}

TEST_CASE("composition examples") {
  auto unit = BWTree::parse("b[b[w1[]]]");
  auto cup = BWTree::parse("b[b[w1[] w2[]]]");
  CHECK(compose(cup, 1, unit).str() == "+1*" + cup.str());
  CHECK(compose(unit, 1, cup).str() == "+1*" + cup.str());
  CHECK(compose(cup, 2, cup).str() == "+1*b[b[w1[] w2[] w3[]]]");
  auto edge = BWTree::parse("b[b[w1[b[w2[]]]]]");
  auto c = compose(edge, 1, cup);
  CHECK(c.size() == 2);
  CHECK_THROWS_AS(compose(cup, 3, unit), InputError);
}

TEST_CASE("cut-and-graft agrees with subtree contraction") {
  auto small = trees_up_to(3);
  long checked = 0;
  for (const auto& a : small)
    for (const auto& b : small) {
      if (a.lobes() + b.lobes() > 5) continue;
      for (int i = 1; i <= a.lobes(); ++i) {
        auto x = compose(a, i, b);
        auto y = compose_contraction(a, i, b);
        CHECK_MESSAGE(x == y, a.str(), " o_", i, " ", b.str());
        ++checked;
      }
    }
  CHECK(checked > 0);
}

TEST_CASE("Koszul provenance sign matches the composition sign") {
  for (const auto& a : trees_up_to(3))
    for (const auto& b : trees_up_to(3))
      for (int i = 1; i <= a.lobes(); ++i)
        for (const auto& term : compose_terms(a, i, b)) CHECK(term.sign == term.koszul);
}

TEST_CASE("associativity, parallel composition and unit") {
  auto ts = trees_up_to(3);
  auto unit = BWTree::parse("b[b[w1[]]]");
  for (bool signed_ : {true, false}) {
    for (const auto& a : ts) {
      for (int i = 1; i <= a.lobes(); ++i) {
        CHECK(compose(a, i, unit, signed_) == TreeChain(a));
      }
      CHECK(compose(unit, 1, a, signed_) == TreeChain(a));
    }
    for (const auto& a : ts)
      for (const auto& b : ts)
        for (const auto& c : ts) {
          if (a.lobes() + b.lobes() + c.lobes() > 6) continue;
          TreeChain A(a), B(b), C(c);
          for (int i = 1; i <= a.lobes(); ++i)
            for (int j = 1; j <= b.lobes(); ++j) {
              auto lhs = compose(compose(A, i, B, signed_), i + j - 1, C, signed_);
              auto rhs = compose(A, i, compose(B, j, C, signed_), signed_);
              CHECK(lhs == rhs);
            }
          for (int i = 1; i <= a.lobes(); ++i)
            for (int j = i + 1; j <= a.lobes(); ++j) {
              auto lhs = compose(compose(A, j, C, signed_), i, B, signed_);
              auto rhs = compose(compose(A, i, B, signed_), j + b.lobes() - 1, C, signed_);
              int s = signed_ ? parity_sign(static_cast<long long>(b.dim()) * c.dim()) : 1;
              CHECK(lhs == rhs.scaled(s));
            }
        }
  }
}

TEST_CASE("equivariance") {
  auto ts = trees_up_to(3);
  for (const auto& a : ts)
    for (const auto& b : ts) {
      const int n = a.lobes(), m = b.lobes();
      std::vector<int> s(n), sp(m);
      std::iota(s.begin(), s.end(), 1);
      std::iota(sp.begin(), sp.end(), 1);
      std::reverse(s.begin(), s.end());
      if (m > 1) std::rotate(sp.begin(), sp.begin() + 1, sp.end());
      for (int i = 1; i <= n; ++i) {
        // block permutation induced by (s, sp) at position i
        std::vector<int> pi(n + m - 1);
        const int si = s[i - 1];
        for (int l = 1; l <= n + m - 1; ++l) {
          if (l < i) pi[l - 1] = s[l - 1] < si ? s[l - 1] : s[l - 1] + m - 1;
          else if (l < i + m) pi[l - 1] = si + sp[l - i] - 1;
          else {
            int o = s[l - m];
            pi[l - 1] = o < si ? o : o + m - 1;
          }
        }
        auto lhs = sym_action(pi, compose(a, i, b));
        auto rhs = compose(sym_action(s, TreeChain(a)), si, sym_action(sp, TreeChain(b)));
        CHECK(lhs == rhs);
      }
    }
}

TEST_CASE("differential squares to zero and is a derivation") {
  CHECK(differential(BWTree::parse("b[b[w1[b[w2[]]]]]")).str() == "+1*b[b[w1[] w2[]]] -1*b[b[w2[] w1[]]]");
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k < n; ++k)
      for (const auto& lit : enumerate_literals(n, k)) CHECK(differential(differential(TreeChain(BWTree::parse(lit)))).empty());

  auto ts = trees_up_to(3);
  for (const auto& a : ts)
    for (const auto& b : ts)
      for (int i = 1; i <= a.lobes(); ++i) {
        TreeChain A(a), B(b);
        auto lhs = differential(compose(A, i, B));
        auto rhs = compose(differential(A), i, B) + compose(A, i, differential(B)).scaled(parity_sign(a.dim()));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("tail differentials") {
  // on corollas the outer mode reproduces the Hochschild pattern
  auto cor = BWTree::parse("b[b[w1[t t]]]");
  auto d = tail_differential(cor, TailMode::outer);
  CHECK(d.at("b[b[t w1[t t]]]") == 1);
  CHECK(d.at("b[b[w1[b[t t] t]]]") == -1);
  CHECK(d.at("b[b[w1[t b[t t]]]]") == 1);
  CHECK(d.at("b[b[w1[t t] t]]") == -1);

  for (int n = 1; n <= 3; ++n)
    for (const auto& t : enumerate_trees(n))
      for (const auto& [k, part] : foliage(t, 3)) {
        std::map<std::string, Int> m(part.terms().begin(), part.terms().end());
        CHECK(tail_differential(tail_differential(m, TailMode::outer), TailMode::outer).empty());
      }

  // the in-place variant matches the outer one on corollas up to normalization
  auto full = tail_differential(BWTree::parse("b[b[w1[t]]]"), TailMode::full);
  CHECK(full.size() == 3);
}

TEST_CASE("foliage and tail insertion") {
  auto t = BWTree::parse("b[b[w1[b[w2[]]]]]");
  auto f = foliage(t, 2);
  CHECK(f.at(0).size() == 1);
  CHECK(f.at(1).size() == 3);
  CHECK(f.at(2).size() == 6);

  // F(a o_i b) = F(a) o F(b) in every total tail count (unsigned)
  auto ts = trees_up_to(2);
  for (const auto& a : ts)
    for (const auto& b : ts)
      for (int i = 1; i <= a.lobes(); ++i) {
        const int budget = 2;
        std::map<int, TreeChain> L, R;
        const auto composed = compose(a, i, b, false);
        for (const auto& [lit, c] : composed.terms())
          for (const auto& [k, part] : foliage(BWTree::parse(lit), budget)) L[k] += part.scaled(c);
        // tails of the outer factor survive; those at white i feed the inner tails
        for (const auto& [ka, pa] : foliage(a, budget))
          for (const auto& [la, ca] : pa.terms()) {
            BWTree fa = BWTree::parse(la);
            const int arity = static_cast<int>(fa[fa.white_vertex(i)].children.size());
            const auto fb_all = foliage(b, arity);
            auto it = fb_all.find(arity);
            if (it == fb_all.end()) continue;
            for (const auto& [lb, cb] : it->second.terms()) {
              auto s = compose_foliated(fa, i, BWTree::parse(lb));
              REQUIRE_FALSE(s.empty());
              R[ka].add(s, ca * cb);
            }
          }
        CHECK(L.size() == R.size());
        for (const auto& [k, part] : L) CHECK(part == R[k]);
      }
}

TEST_CASE("orientations") {
  auto t = BWTree::parse("b[b[w2[b[w1[]]] w3[]]]");
  CHECK(orientation_sign(t, Orientation::nat) == 1);
  CHECK(orientation_sign(t, Orientation::nat_rev) == 1);
  auto c = TreeChain(BWTree::parse("b[b[w1[b[w3[]] b[w2[]]]]]"));
  CHECK(orientation_sign(BWTree::parse("b[b[w1[b[w3[]] b[w2[]]]]]"), Orientation::lab) == -1);
  CHECK(orientation_sign(BWTree::parse("b[b[w1[b[w3[]] b[w2[]]]]]"), Orientation::op) == 1);
  CHECK_THROWS_AS(orientation_sign(BWTree::parse("b[b[w1[b[w2[] w3[]]]]]"), Orientation::lab), InputError);
  for (auto o : {Orientation::op, Orientation::lab, Orientation::nat_rev, Orientation::op_rev, Orientation::lab_rev}) {
    auto there = convert_orientation(c, o);
    CHECK(convert_orientation(there, Orientation::nat) == c);
  }
  // sym_action is a group action in every orientation
  for (auto o : {Orientation::nat, Orientation::op, Orientation::lab})
    for (const auto& lit : enumerate_literals(3, 2)) {
      TreeChain x = convert_orientation(TreeChain(BWTree::parse(lit)), o);
      std::vector<int> s{2, 3, 1}, r{3, 2, 1};
      std::vector<int> rs(3);
      for (int l = 0; l < 3; ++l) rs[l] = r[s[l] - 1];
      CHECK(sym_action(r, sym_action(s, x, o), o) == sym_action(rs, x, o));
    }
}

TEST_CASE("shift markers") {
  auto ts = trees_up_to(3);
  for (const auto& a : ts)
    for (const auto& b : ts)
      for (int i = 1; i <= a.lobes(); ++i) {
        ShiftedChain A{TreeChain(a), {}}, B{TreeChain(b), {}};
        auto plus = compose_shifted(shift(A, 1), i, shift(B, 1));
        CHECK(plus.chain == compose(a, i, b, true));
        auto minus = compose_shifted(shift(A, -1), i, shift(B, -1));
        CHECK(minus.chain == compose(a, i, b, false));
      }
  ShiftedChain z{TreeChain(BWTree::parse("b[b[w1[]]]")), {1}};
  CHECK_THROWS_AS(shift(z, 1), InputError);
  CHECK_THROWS_AS(compose_shifted(z, 1, shift(z, -1)), InputError);
}

TEST_CASE("operad axiom verifier") {
  OperadVerifyOptions opt;
  opt.nmax = 2;
  opt.samples = 30;
  opt.sample_lobes = 3;
  opt.seed = 7;
  opt.threads = 2;
  auto r = verify_operad(opt);
  CHECK(r.ok());
  CHECK(r.sequential.checks > 0);
  CHECK(r.parallel.checks > 0);
  CHECK(r.equivariance.checks > 0);
  opt.threads = 1;
  auto again = verify_operad(opt);
  CHECK(again.sequential.checks == r.sequential.checks);
  CHECK(again.equivariance.checks == r.equivariance.checks);
}
