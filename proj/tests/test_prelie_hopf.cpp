#include "doctest.h"

#include "artifact/prelie_hopf.hpp"

#include <numeric>

using namespace artifact;

namespace {

HopfElement el(const char* f) { return ck_element(f); }

HopfTensor tensor(std::initializer_list<std::pair<std::pair<const char*, const char*>, int>> xs) {
  HopfTensor out;
  for (const auto& [lr, c] : xs) out[{lr.first, lr.second}] = c;
  return out;
}

std::vector<RootedTree> labelled_up_to(int n) {
  std::vector<RootedTree> out;
  for (int k = 1; k <= n; ++k)
    for (auto& t : enumerate_labelled_rooted(k)) out.push_back(std::move(t));
  return out;
}

std::vector<BWTree> bw_trees_up_to(int n) {
  std::vector<BWTree> out;
  for (int k = 1; k <= n; ++k)
    for (auto& t : enumerate_trees(k)) out.push_back(std::move(t));
  return out;
}

}  // namespace

TEST_CASE("connes-kreimer coproduct and antipode on small trees") {
  CHECK(ck_coproduct(el("r[]")) == tensor({{{"r[]", "1"}, 1}, {{"1", "r[]"}, 1}}));
  CHECK(ck_coproduct(el("r[r[]]")) == tensor({{{"r[r[]]", "1"}, 1}, {{"r[]", "r[]"}, 1}, {{"1", "r[r[]]"}, 1}}));
  CHECK(ck_antipode(el("r[]")) == HopfElement{{"r[]", Rat(-1)}});
  CHECK(ck_antipode(el("r[r[]]")) == HopfElement{{"r[r[]]", Rat(-1)}, {"r[]*r[]", Rat(1)}});
  // the corolla: two single cuts and one double cut
  const HopfTensor v = ck_coproduct(el("r[r[] r[]]"));
  CHECK(v.at({"r[]", "r[r[]]"}) == 2);
  CHECK(v.at({"r[]*r[]", "r[]"}) == 1);
  CHECK(ck_counit(el("1")) == 1);
  CHECK(ck_counit(el("r[]")) == 0);
  CHECK(hopf_str(ck_antipode(el("r[r[]]"))) == "+1 * r[]*r[]\n-1 * r[r[]]\n");
}

TEST_CASE("forest counts") {
  const std::vector<std::size_t> commutative{1, 1, 2, 4, 9, 20}, planar{1, 1, 2, 5, 14, 42};
  for (int d = 0; d <= 5; ++d) {
    CHECK(forests_of_degree(d).size() == commutative[d]);
    CHECK(forests_of_degree(d, true).size() == planar[d]);
  }
  CHECK(forest_degree("r[r[]]*r[]") == 3);
  CHECK_THROWS_AS(ck_element("r1[]"), InputError);
}

TEST_CASE("hopf axioms, commutative and planar") {
  const auto c = verify_hopf_axioms(5);
  CHECK(c.ok());
  CHECK(c.checks > 100);
  const auto p = verify_hopf_axioms(4, true);
  CHECK(p.ok());
  // the planar antipode reverses products
  CHECK(ck_antipode(ck_product(el("r[]"), ck_element("r[r[]]", true), true), true) !=
        ck_product(ck_antipode(el("r[]"), true), ck_antipode(ck_element("r[r[]]", true), true), true));
}

TEST_CASE("symmetry factors") {
  CHECK(symmetry_factor(parse_rooted("r[]")) == 1);
  CHECK(symmetry_factor(parse_rooted("r[r[] r[]]")) == 2);
  CHECK(symmetry_factor(parse_rooted("r[r[] r[] r[]]")) == 6);
  CHECK(symmetry_factor(parse_rooted("r[r[r[] r[]] r[r[] r[]]]")) == 8);
}

TEST_CASE("duality with the enveloping algebra") {
  const auto rep = verify_ck_duality(4);
  CHECK(rep.ok());
  INFO(rep.first_mismatch);
  CHECK(rep.forests == rep.pbw);
  CHECK(rep.forests == std::vector<std::size_t>{1, 1, 2, 4, 9});
}

TEST_CASE("free pre-lie products on small trees") {
  const auto dot = prelie_element("r[]");
  const auto l2 = prelie_element("r[r[]]");
  CHECK(prelie_product(dot, dot) == l2);
  auto assoc = prelie_product(prelie_product(dot, dot), dot);
  for (const auto& [t, c] : prelie_product(dot, prelie_product(dot, dot))) assoc[t] -= c;
  std::erase_if(assoc, [](const auto& kv) { return kv.second == 0; });
  CHECK(assoc == prelie_element("r[r[] r[]]"));
  CHECK(prelie_str(prelie_bracket(dot, l2)) == "-1*r[r[] r[]]");
}

TEST_CASE("grafting and the cell route give the same product") {
  std::vector<RootedTree> shapes;
  for (int n = 1; n <= 3; ++n)
    for (auto& t : enumerate_rooted(n)) shapes.push_back(std::move(t));
  for (const auto& s : shapes)
    for (const auto& t : shapes) {
      INFO(s.str() << " o " << t.str());
      CHECK(graft_product(s, t) == cell_product(s, t));
    }
}

TEST_CASE("pre-lie relation on the top cells") {
  for (bool graded : {false, true}) {
    const auto rep = prelie_relation_check(graded);
    INFO("graded " << graded << (rep.counterexamples.empty() ? "" : " " + rep.counterexamples.front()));
    CHECK(rep.ok());
    CHECK(rep.operad_checks == 1);
    CHECK(rep.closure_checks == 384);
    CHECK(rep.triple_checks > 0);
    if (graded) CHECK(rep.root_rule_checks > 0);
  }
}

TEST_CASE("coinvariants and symmetric cells") {
  for (int n = 1; n <= 4; ++n) {
    std::size_t labelled = 1;
    for (int j = 1; j < n; ++j) labelled *= n;
    CHECK(labelled_symmetric_cells(n) == labelled);
    CHECK(coinvariant_dimension(n) == enumerate_rooted(n).size());
  }
  CHECK(coinvariant_dimension(5) == enumerate_rooted(5).size());
}

TEST_CASE("rooted-tree insertion operad") {
  const RootedTreeOperad o;
  const auto trees = labelled_up_to(3);
  CHECK(insertion_compose(parse_rooted("r1[r2[]]"), 1, parse_rooted("r1[r2[]]")).size() == 2);
  for (const auto& s : trees)
    for (const auto& t : trees) {
      const OpChain a = RootedTreeOperad::tree(s), b = RootedTreeOperad::tree(t);
      CHECK(o.compose(o.unit(), 1, a) == a);
      for (int i = 1; i <= a.arity; ++i) CHECK(o.compose(a, i, o.unit()) == a);
      for (const auto& u : labelled_up_to(2)) {
        const OpChain c = RootedTreeOperad::tree(u);
        for (int i = 1; i <= a.arity; ++i)
          for (int j = 1; j <= b.arity; ++j)
            CHECK(o.compose(o.compose(a, i, b), i + j - 1, c) == o.compose(a, i, o.compose(b, j, c)));
      }
    }
  // its circle product is pre-Lie, and the even bracket satisfies Jacobi
  for (const auto& s : labelled_up_to(2))
    for (const auto& t : labelled_up_to(2))
      for (const auto& u : labelled_up_to(2)) {
        const OpChain a = RootedTreeOperad::tree(s), b = RootedTreeOperad::tree(t), c = RootedTreeOperad::tree(u);
        CHECK(prelie_defect(o, a, b, c, false, false).is_zero());
        OpChain jac = lie_bracket(o, a, lie_bracket(o, b, c, Parity::even), Parity::even);
        jac += lie_bracket(o, b, lie_bracket(o, c, a, Parity::even), Parity::even);
        jac += lie_bracket(o, c, lie_bracket(o, a, b, Parity::even), Parity::even);
        CHECK(jac.is_zero());
      }
}

TEST_CASE("composition sign of symmetric cells") {
  CHECK(symmetric_composition_sign(parse_rooted("r1[r2[]]"), 2, parse_rooted("r1[r2[]]")) == -1);
  CHECK(symmetric_composition_sign(parse_rooted("r1[r2[]]"), 1, parse_rooted("r1[r2[]]")) == 1);
}

TEST_CASE("the endomorphism operad reproduces the cochain operations") {
  const AssocAlgebra a = AssocAlgebra::dual_numbers();
  const EndOperad o{a.dim};
  const OperadAlgebra<EndOperad> alg(o, Cochain::multiplication(a));
  std::mt19937_64 rng(7);

  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 2; ++q) {
      const Cochain f = random_cochain(a, p, rng), g = random_cochain(a, q, rng), h = random_cochain(a, 1, rng);
      // the operad cup carries the Koszul twist (-1)^{pq}
      CHECK(alg.cup(f, g) == cup(a, f, g) * Rat((p * q) & 1 ? -1 : 1));
      if (p + q > 0) CHECK(circle_product(o, f, g) == circle(f, g));
      CHECK(generalized_brace(o, f, {g, h}) == brace(f, {g, h}));
      CHECK(generalized_brace(o, f, {g}) == brace(f, {g}));
    }
  for (int p = 0; p <= 3; ++p) {
    const Cochain f = random_cochain(a, p, rng);
    CHECK(alg.delta(f) == hochschild_delta(a, f) * Rat(-1));
    CHECK(alg.delta(alg.delta(f)).is_zero());
  }

  // symmetric group action against pointwise evaluation
  const Cochain f = random_cochain(a, 3, rng);
  const std::vector<int> sigma{2, 3, 1};
  const Cochain g = o.act(sigma, f);
  for (std::size_t x = 0; x < g.inputs(); ++x) {
    std::vector<AssocAlgebra::Element> ys, xs;
    for (std::size_t r = x, j = 0; j < 3; ++j, r /= a.dim) ys.insert(ys.begin(), a.basis(static_cast<int>(r % a.dim)));
    for (int l = 0; l < 3; ++l) xs.push_back(ys[sigma[l] - 1]);
    for (int k = 0; k < a.dim; ++k) CHECK(g.at(x, k) == evaluate(f, xs)[k]);
  }

  for (const auto& t : bw_trees_up_to(3)) {
    for (int s = 0; s < 3; ++s) {
      std::vector<Cochain> fs;
      for (int j = 0; j < t.lobes(); ++j) fs.push_back(random_cochain(a, 1 + static_cast<int>(rng() % 3), rng));
      INFO(t.str());
      CHECK(alg.act(t, fs) == act(a, t, fs));
      CHECK(alg.act_differential(t, fs) == act_differential(a, t, fs));
    }
  }
}

TEST_CASE("gerstenhaber bracket on the endomorphism operad") {
  const AssocAlgebra a = AssocAlgebra::dual_numbers();
  const EndOperad o{a.dim};
  std::mt19937_64 rng(11);
  for (int p = 1; p <= 2; ++p)
    for (int q = 1; q <= 2; ++q)
      for (int r = 1; r <= 2; ++r) {
        const Cochain f = random_cochain(a, p, rng), g = random_cochain(a, q, rng), h = random_cochain(a, r, rng);
        CHECK(lie_bracket(o, f, g, Parity::odd) == bracket(f, g));
        // graded pre-Lie with the graded circle product
        CHECK(prelie_defect(o, f, g, h, true, true).is_zero());
        // odd Jacobi: {f,{g,h}} = {{f,g},h} + (-1)^{(p-1)(q-1)} {g,{f,h}}
        Cochain lhs = lie_bracket(o, f, lie_bracket(o, g, h, Parity::odd), Parity::odd);
        Cochain rhs = lie_bracket(o, lie_bracket(o, f, g, Parity::odd), h, Parity::odd);
        const Cochain other = lie_bracket(o, g, lie_bracket(o, f, h, Parity::odd), Parity::odd);
        if (((p - 1) * (q - 1)) & 1) rhs -= other;
        else rhs += other;
        CHECK(lhs == rhs);
      }
}

TEST_CASE("operad algebra needs an associative multiplication") {
  AssocAlgebra a = AssocAlgebra::dual_numbers();
  Cochain mu = Cochain::multiplication(a);
  mu.at(3, 0) = 1;  // e*e = 1 and e*1 = 0: (ee)e = e but e(ee) = 0
  mu.at(2, 1) = 0;
  CHECK_THROWS_AS(OperadAlgebra<EndOperad>(EndOperad{a.dim}, mu), InputError);
  CHECK_THROWS_AS(OperadAlgebra<EndOperad>(EndOperad{a.dim}, Cochain::identity(a.dim)), InputError);
}

TEST_CASE("generic action passes the randomized deligne checks") {
  const AssocAlgebra a = AssocAlgebra::matrix_algebra(2);
  const OperadAlgebra<EndOperad> alg(EndOperad{a.dim}, Cochain::multiplication(a));
  DeligneOptions opt;
  opt.nmax = 3;
  opt.samples = 2;
  opt.max_total_degree = 4;
  opt.seed = 5;
  const auto rep = verify_operad_algebra<EndOperad>(
      alg, [&](int q, std::mt19937_64& rng) { return random_cochain(a, q, rng); }, opt);
  INFO((rep.counterexamples.empty() ? "" : rep.counterexamples.front()));
  CHECK(rep.ok());
}
