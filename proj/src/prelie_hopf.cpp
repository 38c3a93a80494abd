#include "artifact/prelie_hopf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <tuple>

#include "artifact/linalg.hpp"

namespace artifact {

// ============================================================ End(V)

Cochain EndOperad::act(const std::vector<int>& sigma, const Cochain& f) const {
  const int n = f.deg;
  if (static_cast<int>(sigma.size()) != n) throw InputError("permutation size does not match the arity");
  Cochain g(f.dim, n);
  std::vector<int> y(n), x(n);
  for (std::size_t Y = 0; Y < g.inputs(); ++Y) {
    std::size_t r = Y;
    for (int j = n - 1; j >= 0; --j) {
      y[j] = static_cast<int>(r % f.dim);
      r /= f.dim;
    }
    std::size_t X = 0;
    for (int l = 0; l < n; ++l) X = X * f.dim + y[sigma[l] - 1];
    for (int k = 0; k < f.dim; ++k) g.at(Y, k) = f.at(X, k);
  }
  return g;
}

// ============================================================ OpChain

void OpChain::add(const std::string& literal, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = terms.emplace(literal, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

OpChain& OpChain::operator+=(const OpChain& o) {
  if (arity != o.arity && !o.is_zero() && !is_zero())
    throw InputError("cannot add operations of arity " + std::to_string(arity) + " and " + std::to_string(o.arity));
  if (is_zero()) arity = o.arity;
  for (const auto& [lit, c] : o.terms) add(lit, c);
  return *this;
}

OpChain& OpChain::operator-=(const OpChain& o) { return *this += o * Rat(-1); }

OpChain OpChain::operator*(const Rat& s) const {
  OpChain out(arity);
  if (s == 0) return out;
  for (const auto& [lit, c] : terms) out.terms.emplace(lit, c * s);
  return out;
}

Rat OpChain::coefficient(const std::string& literal) const {
  auto it = terms.find(literal);
  return it == terms.end() ? Rat(0) : it->second;
}

namespace {

std::string signed_rat(const Rat& c) {
  std::string s = to_string(c);
  return c > 0 ? "+" + s : s;
}

}  // namespace

std::string OpChain::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [lit, c] : terms) {
    if (!s.empty()) s += ' ';
    s += signed_rat(c) + "*" + lit;
  }
  return s;
}

// ======================================================= rooted-tree insertion

namespace {

RootedTree relabel(const RootedTree& t, const std::function<int(int)>& f) {
  RootedTree r;
  r.label = f(t.label);
  for (const auto& c : t.children) r.children.push_back(relabel(c, f));
  return r;
}

void check_labels(const RootedTree& t, const char* what) {
  std::vector<int> seen;
  std::function<void(const RootedTree&)> walk = [&](const RootedTree& x) {
    seen.push_back(x.label);
    for (const auto& c : x.children) walk(c);
  };
  walk(t);
  std::sort(seen.begin(), seen.end());
  for (std::size_t j = 0; j < seen.size(); ++j)
    if (seen[j] != static_cast<int>(j) + 1) throw InputError(std::string(what) + " must be labelled 1..n");
}

bool attach(RootedTree& t, int label, const RootedTree& branch) {
  if (t.label == label) {
    t.children.push_back(branch);
    return true;
  }
  for (auto& c : t.children)
    if (attach(c, label, branch)) return true;
  return false;
}

// Labels 1..n in preorder on an unlabelled tree.
RootedTree label_preorder(const RootedTree& t) {
  int next = 0;
  std::function<RootedTree(const RootedTree&)> go = [&](const RootedTree& x) {
    RootedTree r;
    r.label = ++next;
    for (const auto& c : x.children) r.children.push_back(go(c));
    return r;
  };
  return go(t);
}

std::string canonical_shape(const RootedTree& t) { return parse_rooted(t.shape()).str(); }

}  // namespace

std::vector<RootedTree> insertion_compose(const RootedTree& s, int i, const RootedTree& t) {
  check_labels(s, "the outer tree");
  check_labels(t, "the inserted tree");
  const int n = s.size(), m = t.size();
  if (i < 1 || i > n) throw InputError("insertion index out of range");
  const RootedTree inner = relabel(t, [&](int l) { return l + i - 1; });
  auto outer_label = [&](int l) { return l < i ? l : l + m - 1; };

  std::vector<RootedTree> orphans;
  std::function<void(const RootedTree&)> find = [&](const RootedTree& x) {
    if (x.label == i) {
      for (const auto& c : x.children) orphans.push_back(relabel(c, outer_label));
      return;
    }
    for (const auto& c : x.children) find(c);
  };
  find(s);

  std::vector<RootedTree> out;
  std::vector<int> target(orphans.size(), 0);
  for (;;) {
    RootedTree filled = inner;
    for (std::size_t j = 0; j < orphans.size(); ++j) attach(filled, target[j] + i, orphans[j]);
    std::function<RootedTree(const RootedTree&)> rebuild = [&](const RootedTree& x) {
      if (x.label == i) return filled;
      RootedTree r;
      r.label = outer_label(x.label);
      for (const auto& c : x.children) r.children.push_back(rebuild(c));
      return r;
    };
    RootedTree r = rebuild(s);
    r.canonicalize();
    out.push_back(std::move(r));
    std::size_t j = 0;
    while (j < target.size() && ++target[j] == m) target[j++] = 0;
    if (j == target.size()) break;
  }
  return out;
}

OpChain RootedTreeOperad::tree(const RootedTree& t) {
  check_labels(t, "an operation");
  RootedTree c = t;
  c.canonicalize();
  OpChain out(t.size());
  out.add(c.str(), 1);
  return out;
}

OpChain RootedTreeOperad::unit() const { return tree(parse_rooted("r1[]")); }

OpChain RootedTreeOperad::compose(const OpChain& a, int i, const OpChain& b) const {
  if (i < 1 || i > a.arity) throw InputError("composition index out of range");
  OpChain out(a.arity + b.arity - 1);
  for (const auto& [x, cx] : a.terms)
    for (const auto& [y, cy] : b.terms)
      for (const auto& r : insertion_compose(parse_rooted(x), i, parse_rooted(y))) out.add(r.str(), cx * cy);
  return out;
}

OpChain RootedTreeOperad::act(const std::vector<int>& sigma, const OpChain& a) const {
  if (static_cast<int>(sigma.size()) != a.arity) throw InputError("permutation size does not match the arity");
  OpChain out(a.arity);
  for (const auto& [x, c] : a.terms) {
    RootedTree r = relabel(parse_rooted(x), [&](int l) { return sigma[l - 1]; });
    r.canonicalize();
    out.add(r.str(), c);
  }
  return out;
}

// ============================================================ top cells

OpChain TopCellOperad::unit() const {
  OpChain out(1);
  out.add("b[b[w1[]]]", 1);
  return out;
}

OpChain TopCellOperad::cppin(const RootedTree& t) const {
  OpChain out(t.size());
  const TreeChain image = artifact::cppin(t);
  for (const auto& [lit, c] : image.terms()) out.add(lit, Rat(c.str()));
  return out;
}

OpChain TopCellOperad::compose(const OpChain& a, int i, const OpChain& b) const {
  if (i < 1 || i > a.arity) throw InputError("composition index out of range");
  OpChain out(a.arity + b.arity - 1);
  for (const auto& [x, cx] : a.terms) {
    const BWTree tx = BWTree::parse(x);
    const int sx = graded ? orientation_sign(tx, Orientation::lab_rev) : 1;
    for (const auto& [y, cy] : b.terms) {
      const BWTree ty = BWTree::parse(y);
      const int sy = graded ? orientation_sign(ty, Orientation::lab_rev) : 1;
      const TreeChain composed = artifact::compose(tx, i, ty, graded);
      for (const auto& [lit, c] : composed.terms()) {
        int s = sx * sy;
        if (graded) s *= orientation_sign(BWTree::parse(lit), Orientation::lab_rev);
        out.add(lit, cx * cy * Rat(c.str()) * s);
      }
    }
  }
  return out;
}

OpChain TopCellOperad::act(const std::vector<int>& sigma, const OpChain& a) const {
  OpChain out(a.arity);
  const Orientation o = graded ? Orientation::lab_rev : Orientation::nat;
  for (const auto& [x, c] : a.terms) {
    TreeChain one;
    one.orientation = o;
    one.add(x, Int(1));
    const TreeChain moved = sym_action(sigma, one, o);
    for (const auto& [lit, s] : moved.terms()) out.add(lit, c * Rat(s.str()));
  }
  return out;
}

std::map<std::string, Rat> TopCellOperad::symmetric_coefficients(const OpChain& a) const {
  std::map<std::string, std::vector<std::pair<std::string, Rat>>> groups;
  for (const auto& [lit, c] : a.terms) groups[uncppin(BWTree::parse(lit)).str()].push_back({lit, c});
  std::map<std::string, Rat> out;
  for (const auto& [tree, terms] : groups) {
    const auto image = artifact::cppin(parse_rooted(tree));
    bool ok = image.size() == terms.size();
    for (const auto& [lit, c] : terms) ok = ok && c == terms.front().second && image.terms().count(lit);
    if (!ok) throw InputError("not a combination of cppin images: " + a.str());
    out[tree] = terms.front().second;
  }
  return out;
}

// ===================================================== free pre-Lie algebra

namespace {

void add_to(PreLieElement& x, const std::string& key, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = x.emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) x.erase(it);
  }
}

RootedTree unlabelled(std::string_view literal) {
  RootedTree t = parse_rooted(literal);
  std::function<bool(const RootedTree&)> any_label = [&](const RootedTree& x) {
    if (x.label) return true;
    for (const auto& c : x.children)
      if (any_label(c)) return true;
    return false;
  };
  if (any_label(t)) throw InputError("expected an unlabelled rooted tree, got '" + std::string(literal) + "'");
  return t;
}

}  // namespace

PreLieElement graft_product(const RootedTree& s, const RootedTree& t) {
  PreLieElement out;
  const int n = s.size();
  for (int v = 0; v < n; ++v) {
    int k = 0;
    std::function<RootedTree(const RootedTree&)> go = [&](const RootedTree& x) {
      RootedTree r;
      const bool here = k++ == v;
      for (const auto& c : x.children) r.children.push_back(go(c));
      if (here) r.children.push_back(t);
      return r;
    };
    add_to(out, canonical_shape(go(s)), 1);
  }
  return out;
}

PreLieElement cell_product(const RootedTree& s, const RootedTree& t) {
  const TopCellOperad o{false};
  const OpChain p = o.cppin(parse_rooted("r1[r2[]]"));
  const OpChain x = o.compose(o.compose(p, 2, o.cppin(label_preorder(t))), 1, o.cppin(label_preorder(s)));
  PreLieElement out;
  for (const auto& [tree, c] : o.symmetric_coefficients(x)) add_to(out, canonical_shape(parse_rooted(tree)), c);
  return out;
}

PreLieElement prelie_product(const PreLieElement& a, const PreLieElement& b) {
  PreLieElement out;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b)
      for (const auto& [z, cz] : cell_product(parse_rooted(x), parse_rooted(y))) add_to(out, z, cx * cy * cz);
  return out;
}

PreLieElement prelie_bracket(const PreLieElement& a, const PreLieElement& b) {
  PreLieElement out = prelie_product(a, b);
  for (const auto& [z, c] : prelie_product(b, a)) add_to(out, z, -c);
  return out;
}

PreLieElement prelie_element(std::string_view tree_literal) { return {{unlabelled(tree_literal).str(), Rat(1)}}; }

std::string prelie_str(const PreLieElement& x) {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& [lit, c] : x) {
    if (!s.empty()) s += ' ';
    s += signed_rat(c) + "*" + lit;
  }
  return s;
}

// ====================================================== relation checks

int symmetric_composition_sign(const RootedTree& s, int i, const RootedTree& t) {
  const int n = s.size(), m = t.size();
  int smaller = 0;
  for (int l = 1; l < i && l <= n; ++l)
    if (l != s.label) ++smaller;
  long long e = static_cast<long long>(m - 1) * smaller;
  // the edge above vertex i now hangs from the root of t and takes its label
  if (s.label != i) e += m - t.label;
  return parity_sign(e);
}

PreLieReport prelie_relation_check(bool graded, int max_lobes, int max_total) {
  PreLieReport rep;
  const TopCellOperad o{graded};
  auto note = [&](const std::string& what) {
    if (rep.counterexamples.size() < 10) rep.counterexamples.push_back(what);
  };

  // Binary cells. The graded relation is the one for odd inputs:
  // assoc(x1,x2,x3) = P o_1 P + P o_2 P is antisymmetric in x2, x3.
  {
    const OpChain p = o.cppin(parse_rooted("r1[r2[]]"));
    OpChain r = o.compose(p, 1, p);
    if (graded) r += o.compose(p, 2, p);
    else r -= o.compose(p, 2, p);
    OpChain swapped = o.act({1, 3, 2}, r);
    OpChain defect = r;
    if (graded) defect += swapped;
    else defect -= swapped;
    ++rep.operad_checks;
    if (!defect.is_zero()) {
      ++rep.operad_failures;
      note("relation r on the binary cell: " + defect.str());
    }
  }

  std::vector<RootedTree> labelled;
  for (int n = 1; n <= max_lobes; ++n)
    for (auto& t : enumerate_labelled_rooted(n)) labelled.push_back(std::move(t));
  std::vector<OpChain> cells;
  for (const auto& t : labelled) cells.push_back(o.cppin(t));

  // Circle-product relation. On the signed cells the Koszul signs of the
  // composition already make the plain circle product graded pre-Lie, and
  // adding the index signs cancels them again.
  for (const auto& a : cells)
    for (const auto& b : cells)
      for (const auto& c : cells) {
        if (a.arity + b.arity + c.arity > max_total) continue;
        std::vector<OpChain> defects;
        if (graded) {
          defects.push_back(prelie_defect(o, a, b, c, false, true));
          defects.push_back(prelie_defect(o, a, b, c, true, false));
        } else {
          defects.push_back(prelie_defect(o, a, b, c, false, false));
        }
        for (const auto& d : defects) {
          ++rep.triple_checks;
          if (!d.is_zero()) {
            ++rep.triple_failures;
            note("pre-Lie relation on " + a.str() + " | " + b.str() + " | " + c.str());
          }
        }
      }

  for (const auto& s : labelled)
    for (const auto& t : labelled)
      for (int i = 1; i <= s.size(); ++i) {
        const OpChain lhs = o.compose(o.cppin(s), i, o.cppin(t));
        OpChain rhs(s.size() + t.size() - 1);
        for (const auto& r : insertion_compose(s, i, t)) rhs += o.cppin(r);
        const std::string where = s.str() + " o_" + std::to_string(i) + " " + t.str();
        ++rep.closure_checks;
        if (!(lhs == rhs || lhs == rhs * Rat(-1))) {
          ++rep.closure_failures;
          note("not a cppin image: " + where);
          continue;
        }
        const int expected = graded ? symmetric_composition_sign(s, i, t) : 1;
        ++rep.sign_checks;
        if (!(lhs == rhs * Rat(expected))) {
          ++rep.sign_failures;
          note("composition sign: " + where);
        }
        // the root-position rule, on inserted trees rooted at label 1
        if (graded && t.label == 1 && s.label != i) {
          const int n = t.size();
          const int rule = parity_sign(s.label < i ? (i - 1) * (n - 1) : i * (n - 1));
          ++rep.root_rule_checks;
          if (!(lhs == rhs * Rat(rule))) {
            ++rep.root_rule_failures;
            note("root-position sign rule: " + where);
          }
        }
      }
  return rep;
}

std::size_t coinvariant_dimension(int n) {
  if (n < 1) throw InputError("arity must be positive");
  const TopCellOperad o{false};
  const auto trees = enumerate_labelled_rooted(n);
  std::map<std::string, int> index;
  for (std::size_t j = 0; j < trees.size(); ++j) index[trees[j].str()] = static_cast<int>(j);
  SparseIntMatrix m(trees.size() * std::max(0, n - 1), trees.size());
  int row = 0;
  for (std::size_t j = 0; j < trees.size(); ++j)
    for (int k = 1; k < n; ++k) {
      std::vector<int> sigma(n);
      std::iota(sigma.begin(), sigma.end(), 1);
      std::swap(sigma[k - 1], sigma[k]);
      for (const auto& [tree, c] : o.symmetric_coefficients(o.act(sigma, o.cppin(trees[j])))) {
        if (!c.get_den().get_ui() || c.get_den() != 1) throw InputError("non-integral relabelling");
        m.add(row, index.at(tree), Int(c.get_num().get_str()));
      }
      m.add(row, static_cast<int>(j), Int(-1));
      ++row;
    }
  return trees.size() - rank_rational(m);
}

std::size_t labelled_symmetric_cells(int n) {
  std::map<std::string, std::set<std::string>> groups;
  for (const auto& t : enumerate_trees(n, n - 1)) groups[uncppin(t).str()].insert(t.str());
  std::size_t count = 0;
  for (const auto& [tree, lits] : groups) {
    std::set<std::string> image;
    const TreeChain cells = cppin(parse_rooted(tree));
    for (const auto& [lit, c] : cells.terms()) image.insert(lit);
    if (image == lits) ++count;
  }
  return count;
}

// ========================================================= Connes-Kreimer

namespace {

using Forest = std::vector<RootedTree>;

std::string key(Forest f, bool planar) {
  if (!planar) {
    for (auto& t : f) t.canonicalize();
    std::sort(f.begin(), f.end());
  }
  return forest_str(f);
}

Forest parse_unlabelled_forest(std::string_view text, bool planar) {
  Forest f = parse_forest(text, !planar);
  std::function<void(const RootedTree&)> check = [&](const RootedTree& x) {
    if (x.label) throw InputError("Hopf algebra forests are unlabelled: '" + std::string(text) + "'");
    for (const auto& c : x.children) check(c);
  };
  for (const auto& t : f) check(t);
  return f;
}

void add_to(HopfTensor& x, const std::pair<std::string, std::string>& k, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = x.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) x.erase(it);
  }
}

std::string concat(const std::string& a, const std::string& b, bool planar) {
  if (a == "1") return b;
  if (b == "1") return a;
  Forest f = parse_forest(a, !planar), g = parse_forest(b, !planar);
  f.insert(f.end(), g.begin(), g.end());
  return key(std::move(f), planar);
}

struct Cut {
  Forest pruned;
  RootedTree trunk;
};

// Admissible cuts with a nonempty trunk, the empty cut included.
std::vector<Cut> cuts(const RootedTree& t) {
  std::vector<Cut> partial{{{}, RootedTree{}}};
  partial.front().trunk.label = t.label;
  for (const auto& c : t.children) {
    std::vector<Cut> next;
    const auto below = cuts(c);
    for (const auto& p : partial) {
      Cut cut = p;
      cut.pruned.push_back(c);
      next.push_back(std::move(cut));
      for (const auto& q : below) {
        Cut keep = p;
        keep.pruned.insert(keep.pruned.end(), q.pruned.begin(), q.pruned.end());
        keep.trunk.children.push_back(q.trunk);
        next.push_back(std::move(keep));
      }
    }
    partial = std::move(next);
  }
  return partial;
}

HopfTensor tree_coproduct(const RootedTree& t, bool planar) {
  HopfTensor out;
  add_to(out, {key({t}, planar), "1"}, 1);
  for (const auto& c : cuts(t)) add_to(out, {key(c.pruned, planar), key({c.trunk}, planar)}, 1);
  return out;
}

HopfTensor tensor_product(const HopfTensor& a, const HopfTensor& b, bool planar) {
  HopfTensor out;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b)
      add_to(out, {concat(x.first, y.first, planar), concat(x.second, y.second, planar)}, cx * cy);
  return out;
}

HopfTensor forest_coproduct(const std::string& f, bool planar) {
  HopfTensor out{{{"1", "1"}, Rat(1)}};
  if (f == "1") return out;
  for (const auto& t : parse_forest(f, !planar)) out = tensor_product(out, tree_coproduct(t, planar), planar);
  return out;
}

HopfElement forest_antipode(const std::string& f, bool planar, std::map<std::string, HopfElement>& memo) {
  if (f == "1") return {{"1", Rat(1)}};
  if (auto it = memo.find(f); it != memo.end()) return it->second;
  // m(S x id) Delta = 0 on F != 1: S(F) = -sum over the other terms S(F') F''
  HopfElement s;
  for (const auto& [lr, c] : forest_coproduct(f, planar)) {
    if (lr.first == f) continue;
    for (const auto& [g, cg] : forest_antipode(lr.first, planar, memo))
      add_to(s, concat(g, lr.second, planar), -c * cg);
  }
  memo.emplace(f, s);
  return s;
}

std::vector<RootedTree> planar_trees(int n);

std::vector<Forest> planar_forests(int n) {
  if (n == 0) return {Forest{}};
  std::vector<Forest> out;
  for (int j = 1; j <= n; ++j)
    for (const auto& t : planar_trees(j))
      for (auto rest : planar_forests(n - j)) {
        rest.insert(rest.begin(), t);
        out.push_back(std::move(rest));
      }
  return out;
}

std::vector<RootedTree> planar_trees(int n) {
  std::vector<RootedTree> out;
  for (auto& f : planar_forests(n - 1)) {
    RootedTree t;
    t.children = std::move(f);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

HopfElement ck_element(std::string_view forest_literal, bool planar) {
  return {{key(parse_unlabelled_forest(forest_literal, planar), planar), Rat(1)}};
}

HopfElement ck_product(const HopfElement& a, const HopfElement& b, bool planar) {
  HopfElement out;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b) add_to(out, concat(x, y, planar), cx * cy);
  return out;
}

HopfTensor ck_coproduct(const HopfElement& a, bool planar) {
  HopfTensor out;
  for (const auto& [f, c] : a)
    for (const auto& [lr, d] : forest_coproduct(f, planar)) add_to(out, lr, c * d);
  return out;
}

HopfElement ck_antipode(const HopfElement& a, bool planar) {
  std::map<std::string, HopfElement> memo;
  HopfElement out;
  for (const auto& [f, c] : a)
    for (const auto& [g, d] : forest_antipode(f, planar, memo)) add_to(out, g, c * d);
  return out;
}

Rat ck_counit(const HopfElement& a) {
  auto it = a.find("1");
  return it == a.end() ? Rat(0) : it->second;
}

int forest_degree(std::string_view forest_literal) {
  int d = 0;
  for (const auto& t : parse_forest(forest_literal, false)) d += t.size();
  return d;
}

std::vector<std::string> forests_of_degree(int n, bool planar) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (auto& f : planar_forests(n)) {
    std::string k = key(std::move(f), planar);
    if (seen.insert(k).second) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Int symmetry_factor(const RootedTree& t) {
  Int s = 1;
  std::map<std::string, int> mult;
  for (const auto& c : t.children) {
    s *= symmetry_factor(c);
    ++mult[canonical_shape(c)];
  }
  for (const auto& [shape, k] : mult)
    for (int j = 2; j <= k; ++j) s *= j;
  return s;
}

std::string hopf_str(const HopfElement& x) {
  if (x.empty()) return "0\n";
  std::string s;
  for (const auto& [f, c] : x) s += signed_rat(c) + " * " + f + "\n";
  return s;
}

std::string hopf_str(const HopfTensor& x) {
  if (x.empty()) return "0\n";
  std::string s;
  for (const auto& [lr, c] : x) s += signed_rat(c) + " * " + lr.first + " ⊗ " + lr.second + "\n";
  return s;
}

HopfReport verify_hopf_axioms(int max_degree, bool planar) {
  HopfReport rep;
  auto check = [&](bool ok, const std::string& what) {
    ++rep.checks;
    if (!ok) {
      ++rep.failures;
      if (rep.counterexamples.size() < 10) rep.counterexamples.push_back(what);
    }
  };
  std::map<std::string, HopfElement> memo;
  std::vector<std::string> all;
  for (int d = 0; d <= max_degree; ++d)
    for (auto& f : forests_of_degree(d, planar)) all.push_back(f);

  using Triple = std::map<std::tuple<std::string, std::string, std::string>, Rat>;
  for (const auto& f : all) {
    const HopfTensor d = forest_coproduct(f, planar);
    const int deg = forest_degree(f);
    const Rat eps = f == "1" ? 1 : 0;

    bool graded = true;
    for (const auto& [lr, c] : d) graded = graded && forest_degree(lr.first) + forest_degree(lr.second) == deg;
    check(graded, "coproduct not graded on " + f);

    HopfElement left, right;
    for (const auto& [lr, c] : d) {
      if (lr.first == "1") add_to(left, lr.second, c);
      if (lr.second == "1") add_to(right, lr.first, c);
    }
    const HopfElement self{{f, Rat(1)}};
    check(left == self && right == self, "counit fails on " + f);

    Triple lhs, rhs;
    for (const auto& [lr, c] : d) {
      for (const auto& [ab, e] : forest_coproduct(lr.first, planar))
        lhs[{ab.first, ab.second, lr.second}] += c * e;
      for (const auto& [ab, e] : forest_coproduct(lr.second, planar))
        rhs[{lr.first, ab.first, ab.second}] += c * e;
    }
    std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
    check(lhs == rhs, "coassociativity fails on " + f);

    HopfElement sl, sr;
    for (const auto& [lr, c] : d) {
      for (const auto& [g, e] : forest_antipode(lr.first, planar, memo)) add_to(sl, concat(g, lr.second, planar), c * e);
      for (const auto& [g, e] : forest_antipode(lr.second, planar, memo)) add_to(sr, concat(lr.first, g, planar), c * e);
    }
    HopfElement unit;
    add_to(unit, "1", eps);
    check(sl == unit && sr == unit, "antipode identity fails on " + f);
  }

  for (const auto& f : all)
    for (const auto& g : all) {
      if (f == "1" || g == "1" || forest_degree(f) + forest_degree(g) > max_degree) continue;
      const HopfElement fe{{f, Rat(1)}}, ge{{g, Rat(1)}};
      const HopfElement fg = ck_product(fe, ge, planar);
      check(ck_coproduct(fg, planar) == tensor_product(ck_coproduct(fe, planar), ck_coproduct(ge, planar), planar),
            "coproduct not multiplicative on " + f + " * " + g);
      HopfElement sfg;
      for (const auto& [x, c] : fg)
        for (const auto& [y, e] : forest_antipode(x, planar, memo)) add_to(sfg, y, c * e);
      check(sfg == ck_product(forest_antipode(g, planar, memo), forest_antipode(f, planar, memo), planar),
            "antipode not anti-multiplicative on " + f + " * " + g);
    }
  return rep;
}

// ======================================================== duality with U(L)

namespace {

using Word = std::vector<int>;
using UElement = std::map<Word, Rat>;

class Duality {
 public:
  explicit Duality(int max_degree) : max_(max_degree) {
    for (int d = 1; d <= max_; ++d) {
      auto trees = enumerate_rooted(d);
      std::vector<std::string> lits;
      for (const auto& t : trees) lits.push_back(t.str());
      std::sort(lits.begin(), lits.end());
      for (const auto& l : lits) {
        index_[l] = static_cast<int>(basis_.size());
        basis_.push_back(l);
        degree_.push_back(d);
        sigma_.push_back(Rat(symmetry_factor(parse_rooted(l)).str()));
      }
    }
  }

  std::vector<Word> pbw(int d) const {
    std::vector<Word> out;
    Word w;
    std::function<void(int, int)> go = [&](int from, int left) {
      if (left == 0) {
        out.push_back(w);
        return;
      }
      for (int j = from; j < static_cast<int>(basis_.size()); ++j) {
        if (degree_[j] > left) continue;
        w.push_back(j);
        go(j, left - degree_[j]);
        w.pop_back();
      }
    };
    go(0, d);
    return out;
  }

  int degree(const Word& w) const {
    int d = 0;
    for (int j : w) d += degree_[j];
    return d;
  }

  // [x_a, x_b] in the tree basis
  const std::vector<std::pair<int, Rat>>& bracket(int a, int b) {
    auto k = std::make_pair(a, b);
    if (auto it = brackets_.find(k); it != brackets_.end()) return it->second;
    std::vector<std::pair<int, Rat>> out;
    for (const auto& [lit, c] : prelie_bracket(prelie_element(basis_[a]), prelie_element(basis_[b])))
      out.push_back({index_.at(lit), c});
    return brackets_.emplace(k, std::move(out)).first->second;
  }

  // Rewrites a word in the PBW basis with x_a x_b = x_b x_a + [x_a, x_b].
  const UElement& normal_order(const Word& w) {
    if (auto it = ordered_.find(w); it != ordered_.end()) return it->second;
    UElement out;
    std::size_t j = 0;
    while (j + 1 < w.size() && w[j] <= w[j + 1]) ++j;
    if (j + 1 >= w.size()) {
      out[w] = 1;
    } else {
      Word swapped = w;
      std::swap(swapped[j], swapped[j + 1]);
      for (const auto& [v, c] : normal_order(swapped)) out[v] += c;
      for (const auto& [z, c] : bracket(w[j], w[j + 1])) {
        Word shorter(w.begin(), w.begin() + j);
        shorter.push_back(z);
        shorter.insert(shorter.end(), w.begin() + j + 2, w.end());
        for (const auto& [v, e] : normal_order(shorter)) out[v] += c * e;
      }
      std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    }
    return ordered_.emplace(w, std::move(out)).first->second;
  }

  UElement product(const Word& u, const Word& v) {
    Word w = u;
    w.insert(w.end(), v.begin(), v.end());
    return normal_order(w);
  }

  // Subwords of a PBW word are PBW words.
  std::map<std::pair<Word, Word>, Rat> coproduct(const Word& w) const {
    std::map<std::pair<Word, Word>, Rat> out;
    const std::size_t k = w.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      Word l, r;
      for (std::size_t j = 0; j < k; ++j) (mask >> j & 1 ? l : r).push_back(w[j]);
      out[{l, r}] += 1;
    }
    return out;
  }

  // <F, x_1..x_k> = <Delta^{(k-1)} F, x_k (x) .. (x) x_1>, <t, x_t> = |Aut t|.
  Rat pairing(const std::string& f, const Word& w) {
    auto k = std::make_pair(f, w);
    if (auto it = pairings_.find(k); it != pairings_.end()) return it->second;
    Rat out = 0;
    if (w.empty()) {
      out = f == "1" ? 1 : 0;
    } else if (w.size() == 1) {
      out = f == basis_[w[0]] ? sigma_[w[0]] : Rat(0);
    } else {
      const Word rest(w.begin(), w.end() - 1);
      const std::string& last = basis_[w.back()];
      for (const auto& [lr, c] : forest_coproduct(f, false))
        if (lr.first == last) out += c * sigma_[w.back()] * pairing(lr.second, rest);
    }
    pairings_.emplace(k, out);
    return out;
  }

  int max_degree() const { return max_; }

 private:
  int max_;
  std::vector<std::string> basis_;
  std::vector<int> degree_;
  std::vector<Rat> sigma_;
  std::map<std::string, int> index_;
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rat>>> brackets_;
  std::map<Word, UElement> ordered_;
  std::map<std::pair<std::string, Word>, Rat> pairings_;
};

std::string word_str(const Word& w) {
  std::string s = "[";
  for (std::size_t j = 0; j < w.size(); ++j) s += (j ? " " : "") + std::to_string(w[j]);
  return s + "]";
}

}  // namespace

DualityReport verify_ck_duality(int max_degree) {
  if (max_degree < 0 || max_degree > 5) throw InputError("duality is checked up to degree 5");
  DualityReport rep;
  rep.max_degree = max_degree;
  Duality du(max_degree);
  auto check = [&](bool ok, const std::string& what) {
    ++rep.checks;
    if (!ok) {
      if (rep.failures == 0) rep.first_mismatch = what;
      ++rep.failures;
    }
  };

  std::vector<std::vector<std::string>> forests(max_degree + 1);
  std::vector<std::vector<Word>> words(max_degree + 1);
  for (int d = 0; d <= max_degree; ++d) {
    forests[d] = forests_of_degree(d, false);
    words[d] = du.pbw(d);
    rep.forests.push_back(forests[d].size());
    rep.pbw.push_back(words[d].size());
    bool square = forests[d].size() == words[d].size();
    check(square, "degree " + std::to_string(d) + ": " + std::to_string(forests[d].size()) + " forests but " +
                      std::to_string(words[d].size()) + " PBW monomials");
    if (!square) continue;
    RatMatrix m;
    for (const auto& f : forests[d]) {
      std::vector<Rat> row;
      for (const auto& w : words[d]) row.push_back(du.pairing(f, w));
      m.push_back(std::move(row));
    }
    check(rank(m) == forests[d].size(), "degree " + std::to_string(d) + ": the pairing is degenerate");
  }

  // H_CK product against the coproduct of U
  for (int a = 1; a <= max_degree; ++a)
    for (int b = 1; a + b <= max_degree; ++b)
      for (const auto& f : forests[a])
        for (const auto& g : forests[b]) {
          const std::string fg = ck_product({{f, 1}}, {{g, 1}}).begin()->first;
          for (const auto& w : words[a + b]) {
            Rat rhs = 0;
            for (const auto& [lr, c] : du.coproduct(w))
              if (du.degree(lr.first) == a) rhs += c * du.pairing(f, lr.first) * du.pairing(g, lr.second);
            check(du.pairing(fg, w) == rhs, "<" + f + " * " + g + ", " + word_str(w) + ">");
          }
        }

  // H_CK coproduct against the product of U (this is where the bracket enters)
  for (int a = 1; a <= max_degree; ++a)
    for (int b = 1; a + b <= max_degree; ++b)
      for (const auto& u : words[a])
        for (const auto& v : words[b]) {
          const UElement uv = du.product(u, v);
          for (const auto& f : forests[a + b]) {
            Rat lhs = 0;
            for (const auto& [w, c] : uv) lhs += c * du.pairing(f, w);
            Rat rhs = 0;
            for (const auto& [lr, c] : forest_coproduct(f, false))
              rhs += c * du.pairing(lr.first, v) * du.pairing(lr.second, u);
            check(lhs == rhs, "<" + f + ", " + word_str(u) + " " + word_str(v) + ">");
          }
        }
  return rep;
}

}  // namespace artifact
