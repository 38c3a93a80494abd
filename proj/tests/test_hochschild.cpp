#include "doctest.h"

#include "artifact/hochschild.hpp"
#include "artifact/linalg.hpp"

#include <fstream>
#include <sstream>

using namespace artifact;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(ARTIFACT_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

using Elt = AssocAlgebra::Element;

Elt column(const Cochain& f, std::size_t x) {
  Elt e(f.dim);
  for (int k = 0; k < f.dim; ++k) e[k] = f.at(x, k);
  return e;
}

std::vector<int> digits(std::size_t x, int d, int q) {
  std::vector<int> out(q);
  for (int j = q - 1; j >= 0; --j) {
    out[j] = static_cast<int>(x % d);
    x /= d;
  }
  return out;
}

// Is v in the span of delta applied to (q-1)-cochains?
bool coboundary(const AssocAlgebra& a, const Cochain& v) {
  RatMatrix m;
  Cochain e(a.dim, v.deg - 1);
  for (std::size_t r = 0; r < e.v.size(); ++r) {
    Cochain b(a.dim, v.deg - 1);
    b.v[r] = 1;
    m.push_back(hochschild_delta(a, b).v);
  }
  const std::size_t before = rank(m);
  m.push_back(v.v);
  return rank(m) == before;
}

}  // namespace

TEST_CASE("algebra files") {
  auto dual = AssocAlgebra::parse(slurp("dual_numbers.alg"));
  CHECK(dual.c == AssocAlgebra::dual_numbers().c);
  auto m2 = AssocAlgebra::parse(slurp("m2.alg"));
  CHECK(m2.c == AssocAlgebra::matrix_algebra(2).c);
  CHECK(AssocAlgebra::parse(m2.str()).c == m2.c);
  // (e1 e1) e1 = e2 e1 = 0 but e1 (e1 e1) = e1 e2 = e1
  CHECK_THROWS_AS(AssocAlgebra::parse("dim 3\nunit 1 0 0\nmul 0 0 = 1 0 0\nmul 0 1 = 0 1 0\nmul 0 2 = 0 0 1\n"
                                      "mul 1 0 = 0 1 0\nmul 2 0 = 0 0 1\nmul 1 1 = 0 0 1\nmul 1 2 = 0 1 0\n"),
                  InputError);
  CHECK_NOTHROW(AssocAlgebra::parse("dim 2\nunit 1 0\nmul 0 0 = 1 0\nmul 0 1 = 0 1\nmul 1 0 = 0 1\nmul 1 1 = 1 0\n"));
  CHECK_THROWS_AS(AssocAlgebra::parse("dim 2\nunit 1 0\nmul 0 0 = 1 0\nmul 1 1 = 0 1\n"), InputError);
  CHECK_THROWS_AS(AssocAlgebra::parse("dim 1\nmul 0 0 = 1\n"), InputError);
  CHECK_THROWS_AS(AssocAlgebra::parse("unit 1\n"), InputError);

  auto f = Cochain::parse("deg 2\nentry 0 1 -> 1 = 3/2\nentry 1 1 -> 0 = -1\n", 2);
  CHECK(f.at(1, 1) == Rat(3, 2));
  CHECK(f.at(3, 0) == -1);
  CHECK(Cochain::parse(f.str(), 2) == f);
  CHECK_THROWS_AS(Cochain::parse("deg 1\nentry 2 -> 0 = 1\n", 2), InputError);
  CHECK_THROWS_AS(Cochain::parse("entry 0 -> 0 = 1\n", 2), InputError);
}

TEST_CASE("insertions and cups") {
  const auto a = AssocAlgebra::dual_numbers();
  const auto mu = Cochain::multiplication(a);
  const auto id = Cochain::identity(a.dim);
  std::mt19937_64 rng(3);
  auto f = random_cochain(a, 2, rng), g = random_cochain(a, 2, rng);
  CHECK(insert(f, 1, id) == f);
  CHECK(insert(f, 2, id) == f);

  auto mm = insert(mu, 1, mu);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        CHECK(column(mm, (x * 2 + y) * 2 + z) == a.multiply(a.multiply(a.basis(x), a.basis(y)), a.basis(z)));

  // pointwise oracle on every basis tuple
  for (int i = 1; i <= 2; ++i) {
    auto h = insert(f, i, g);
    for (std::size_t x = 0; x < h.inputs(); ++x) {
      auto dg = digits(x, 2, 3);
      std::vector<Elt> inner{a.basis(dg[i - 1]), a.basis(dg[i])};
      std::vector<Elt> outer;
      for (int j = 0; j < 3; ++j) {
        if (j == i - 1) outer.push_back(evaluate(g, inner));
        else if (j != i) outer.push_back(a.basis(dg[j]));
      }
      CHECK(column(h, x) == evaluate(f, outer));
    }
  }
  CHECK_THROWS_AS(insert(f, 3, g), InputError);

  const auto one = Cochain::element(a.unit);
  CHECK(cup(a, one, f) == f);
  CHECK(cup(a, id, id) == mu);
  auto h = random_cochain(a, 1, rng);
  CHECK(cup(a, cup(a, f, g), h) == cup(a, f, cup(a, g, h)));
}

TEST_CASE("circle product, bracket and the differential") {
  const auto m2 = AssocAlgebra::matrix_algebra(2);
  const auto a = AssocAlgebra::dual_numbers();
  std::mt19937_64 rng(9);
  auto f2 = random_cochain(a, 2, rng), g1 = random_cochain(a, 1, rng);
  CHECK(circle(f2, g1) == insert(f2, 1, g1) + insert(f2, 2, g1));

  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) {
      if (p + q == 0) continue;
      auto f = random_cochain(a, p, rng), g = random_cochain(a, q, rng);
      Cochain swapped = bracket(g, f) * Rat(((p - 1) * (q - 1)) & 1 ? 1 : -1);
      CHECK(bracket(f, g) == swapped);
    }
  // graded Jacobi
  for (int p = 1; p <= 2; ++p)
    for (int q = 1; q <= 2; ++q)
      for (int r = 1; r <= 2; ++r) {
        auto f = random_cochain(a, p, rng), g = random_cochain(a, q, rng), h = random_cochain(a, r, rng);
        auto s = [](int x, int y) { return Rat(((x - 1) * (y - 1)) & 1 ? -1 : 1); };
        Cochain j = bracket(f, bracket(g, h)) * s(p, r) + bracket(g, bracket(h, f)) * s(q, p) +
                    bracket(h, bracket(f, g)) * s(r, q);
        CHECK(j.is_zero());
      }

  const auto mu = Cochain::multiplication(m2);
  CHECK(bracket(mu, mu).is_zero());
  // x id(y) - id(xy) + id(x) y leaves the product
  CHECK(hochschild_delta(m2, Cochain::identity(4)) == mu);

  auto x = random_cochain(m2, 0, rng);
  Elt xe = x.v;
  auto dx = hochschild_delta(m2, x);
  for (int i = 0; i < 4; ++i) {
    Elt expect = m2.multiply(m2.basis(i), xe);
    auto right = m2.multiply(xe, m2.basis(i));
    for (int k = 0; k < 4; ++k) expect[k] -= right[k];
    CHECK(column(dx, i) == expect);
  }
  for (int q = 0; q <= 2; ++q) {
    auto f = random_cochain(m2, q, rng);
    CHECK(hochschild_delta(m2, hochschild_delta(m2, f)).is_zero());
    // delta is a bracket with the multiplication
    CHECK(hochschild_delta(m2, f) == bracket(mu, f) * Rat(q % 2 ? 1 : -1));
  }
}

TEST_CASE("braces") {
  const auto a = AssocAlgebra::dual_numbers();
  std::mt19937_64 rng(21);
  auto f = random_cochain(a, 3, rng);
  CHECK(*brace(f, {}) == f);
  for (int q = 0; q <= 2; ++q) {
    auto g = random_cochain(a, q, rng);
    CHECK(*brace(f, {g}) == circle(f, g));
  }
  auto f2 = random_cochain(a, 2, rng), g1 = random_cochain(a, 1, rng), h1 = random_cochain(a, 1, rng);
  CHECK(*brace(f2, {g1, h1}) == insert(insert(f2, 2, h1), 1, g1));
  CHECK(brace(f2, {g1, h1, g1})->is_zero());
  CHECK(brace(f2, {g1, h1, g1})->deg == 2);
  CHECK_FALSE(brace(random_cochain(a, 0, rng), {random_cochain(a, 0, rng)}).has_value());

  // f{g}{h} = f{g{h}} + f{g,h} + (-1)^{(|g|-1)(|h|-1)} f{h,g}
  for (int q = 0; q <= 2; ++q)
    for (int r = 0; r <= 2; ++r) {
      auto g = random_cochain(a, q, rng), h = random_cochain(a, r, rng);
      Cochain lhs = *brace(*brace(f, {g}), {h});
      Cochain rhs = *brace(f, {g, h}) +
                    *brace(f, {h, g}) * Rat(((q - 1) * (r - 1)) & 1 ? -1 : 1);
      if (auto gh = brace(g, {h})) rhs += *brace(f, {*gh});
      CHECK(lhs == rhs);
    }
}

TEST_CASE("flow-chart action") {
  const auto a = AssocAlgebra::dual_numbers();
  std::mt19937_64 rng(33);
  auto unit = BWTree::parse("b[b[w1[]]]");
  for (int p = 0; p <= 3; ++p) {
    auto f = random_cochain(a, p, rng);
    CHECK(*act(a, unit, {f}) == f);
  }
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) {
      auto f = random_cochain(a, p, rng), g = random_cochain(a, q, rng);
      CHECK(*act(a, BWTree::parse("b[b[w1[] w2[]]]"), {f, g}) == cup(a, f, g));
      if (p + q == 0) continue;
      TreeChain c;
      c.add("b[b[w1[b[w2[]]]]]", Int(1));
      c.add("b[b[w2[b[w1[]]]]]", Int(1));
      CHECK(*act(a, c, {f, g}) == bracket(f, g) * Rat(((p + 1) * q) & 1 ? 1 : -1));
    }
  // two routes: braces and cups, and the foliage evaluated pointwise
  for (int n = 1; n <= 3; ++n)
    for (const auto& t : enumerate_trees(n)) {
      std::vector<Cochain> fs;
      int total = 0;
      for (int j = 0; j < n; ++j) {
        int q = static_cast<int>(rng() % 3);
        if (total + q > 4) q = 0;
        total += q;
        fs.push_back(random_cochain(a, q, rng));
      }
      auto x = act(a, t, fs), y = act_foliage(a, t, fs);
      REQUIRE(x.has_value() == y.has_value());
      if (x) CHECK(*x == *y);
    }
  // multilinear in each slot
  auto t = BWTree::parse("b[b[w1[b[w2[] w3[]]]]]");
  auto f = random_cochain(a, 2, rng), g = random_cochain(a, 1, rng), h = random_cochain(a, 1, rng),
       g2 = random_cochain(a, 1, rng);
  CHECK(*act(a, t, {f, g + g2 * Rat(3), h}) == *act(a, t, {f, g, h}) + *act(a, t, {f, g2, h}) * Rat(3));
  CHECK(act(a, t, {f, g, h}, SlotOrder::w).has_value());
  CHECK_THROWS_AS(act(a, t, {f, g}), InputError);

  CHECK(reversal_sign({1, 1}) == -1);
  CHECK(reversal_sign({1, 2, 1, 1}) == -1);
  CHECK(reversal_sign({1, 1, 1, 1}) == 1);
}

TEST_CASE("Deligne checks on small algebras") {
  DeligneOptions opt;
  opt.nmax = 2;
  opt.samples = 4;
  opt.threads = 2;
  for (const auto& a : {AssocAlgebra::dual_numbers(), AssocAlgebra::matrix_algebra(2)}) {
    auto rep = verify_deligne(a, opt);
    for (const auto& s : rep.counterexamples) MESSAGE(s);
    CHECK(rep.ok());
    CHECK(rep.composition_checks > 0);
    CHECK(rep.differential_checks > 0);
    CHECK(rep.equivariance_checks > 0);
  }
  opt.threads = 1;
  auto one = verify_deligne(AssocAlgebra::dual_numbers(), opt);
  opt.threads = 3;
  auto three = verify_deligne(AssocAlgebra::dual_numbers(), opt);
  CHECK(one.composition_checks == three.composition_checks);
}

TEST_CASE("Hochschild cohomology") {
  auto m2 = cohomology(AssocAlgebra::matrix_algebra(2), 2);
  CHECK(m2 == std::vector<std::size_t>{1, 0, 0});
  auto dual = cohomology(AssocAlgebra::dual_numbers(), 2);
  CHECK(dual[0] == 2);
  CHECK(dual[1] == 1);

  // the derivation e -> e is a cocycle; brackets with coboundaries stay exact
  const auto a = AssocAlgebra::dual_numbers();
  Cochain d(2, 1);
  d.at(1, 1) = 1;
  CHECK(hochschild_delta(a, d).is_zero());
  CHECK_FALSE(coboundary(a, d));
  std::mt19937_64 rng(4);
  for (int s = 0; s < 10; ++s) {
    auto h = random_cochain(a, 1, rng);
    auto b = bracket(d, hochschild_delta(a, h));
    CHECK(hochschild_delta(a, b).is_zero());
    CHECK(coboundary(a, b));
  }
}

TEST_CASE("cup product is homotopy commutative") {
  const auto golden = parse_homotopy_signs(slurp("homotopy_signs.txt"));
  for (const auto& a : {AssocAlgebra::dual_numbers(), AssocAlgebra::matrix_algebra(2)}) {
    CHECK(calibrate_homotopy_signs(a, 4, 1) == golden);
    std::mt19937_64 rng(8);
    int checked = 0;
    for (int s = 0; s < 13; ++s)
      for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) {
          if (a.dim == 4 && p + q > 3) continue;
          auto f = random_cochain(a, p, rng), g = random_cochain(a, q, rng);
          CHECK(homotopy_identity(a, golden, f, g));
          ++checked;
        }
    CHECK(checked >= 100);
  }
  CHECK(parse_homotopy_signs(homotopy_signs_str(golden)) == golden);
  CHECK_THROWS_AS(parse_homotopy_signs("0 0 1 1 1\n"), InputError);
}
