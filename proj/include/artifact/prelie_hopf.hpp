#pragma once

#include "artifact/operad_algebra.hpp"
#include "artifact/tree_operad.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace artifact {

// ------------------------------------------------------- tree-valued operads

// Rational combination of tree literals, all of one arity.
struct OpChain {
  int arity = 0;
  std::map<std::string, Rat> terms;

  OpChain() = default;
  explicit OpChain(int n) : arity(n) {}
  void add(const std::string& literal, const Rat& c);
  OpChain& operator+=(const OpChain& o);
  OpChain& operator-=(const OpChain& o);
  OpChain operator*(const Rat& s) const;
  bool operator==(const OpChain& o) const { return arity == o.arity && terms == o.terms; }
  bool is_zero() const { return terms.empty(); }
  Rat coefficient(const std::string& literal) const;
  std::string str() const;
};

// Labelled rooted trees under insertion: s o_i t puts t in place of vertex i
// and regrafts the children of i onto every vertex of t in all ways.
struct RootedTreeOperad {
  using Element = OpChain;
  int arity(const OpChain& a) const { return a.arity; }
  OpChain compose(const OpChain& a, int i, const OpChain& b) const;
  OpChain zero(int n) const { return OpChain(n); }
  OpChain unit() const;
  OpChain act(const std::vector<int>& sigma, const OpChain& a) const;
  static OpChain tree(const RootedTree& t);
};
std::vector<RootedTree> insertion_compose(const RootedTree& s, int i, const RootedTree& t);

// Cells of normalized spineless cacti with the tree composition. graded:
// signed composition, coefficients read in the Lab-bar orientation (so that
// cppin images have all coefficients +1). Otherwise the unsigned
// composition of the shifted cells.
struct TopCellOperad {
  using Element = OpChain;
  bool graded = false;
  int arity(const OpChain& a) const { return a.arity; }
  OpChain compose(const OpChain& a, int i, const OpChain& b) const;
  OpChain zero(int n) const { return OpChain(n); }
  OpChain unit() const;
  OpChain act(const std::vector<int>& sigma, const OpChain& a) const;
  OpChain cppin(const RootedTree& t) const;
  // Coefficients of the cppin images making up a symmetric combination,
  // keyed by labelled rooted tree. Throws if `a` is not symmetric.
  std::map<std::string, Rat> symmetric_coefficients(const OpChain& a) const;
};

// ------------------------------------- free pre-Lie algebra on one generator

// Combination of unlabelled rooted trees; the literal is the canonical shape.
using PreLieElement = std::map<std::string, Rat>;

// s o t = sum over vertices v of s of t grafted onto v.
PreLieElement graft_product(const RootedTree& s, const RootedTree& t);
// The same product read off the shifted top cells: the coinvariant class of
// (P o_2 cppin(t)) o_1 cppin(s) for the binary cell P = cppin(r1[r2[]]).
PreLieElement cell_product(const RootedTree& s, const RootedTree& t);
PreLieElement prelie_product(const PreLieElement& a, const PreLieElement& b);
PreLieElement prelie_bracket(const PreLieElement& a, const PreLieElement& b);
PreLieElement prelie_element(std::string_view tree_literal);
std::string prelie_str(const PreLieElement& x);

// ------------------------------------------------------ relation checks

struct PreLieReport {
  long operad_checks = 0, operad_failures = 0;    // relation r among binary cells
  long triple_checks = 0, triple_failures = 0;    // circle-product relation on triples
  long closure_checks = 0, closure_failures = 0;  // cppin(s) o_i cppin(t) = +-cppin(s o_i t)
  long sign_checks = 0, sign_failures = 0;        // label rule on every case
  long root_rule_checks = 0, root_rule_failures = 0;  // root-position rule, inserted tree rooted at label 1
  std::vector<std::string> counterexamples;
  bool ok() const {
    return operad_failures + triple_failures + closure_failures + sign_failures + root_rule_failures == 0;
  }
};

// graded: signed cells in Lab-bar, relation with odd inputs; otherwise the
// shifted cells with the ungraded relation. Triples range over cppin images
// with at most `max_lobes` lobes each and at most `max_total` in all; the
// composition signs are checked for trees with at most `max_lobes` vertices.
PreLieReport prelie_relation_check(bool graded, int max_lobes = 3, int max_total = 6);

// Expected sign of cppin(s) o_i cppin(t) against cppin(s o_i t) in Lab-bar.
int symmetric_composition_sign(const RootedTree& s, int i, const RootedTree& t);

// dim of the S_n-coinvariants of the symmetric shifted top cells of arity n.
std::size_t coinvariant_dimension(int n);
// Number of symmetric combinations of top cells with n lobes: top cells
// grouped by their rooted tree, each group checked to be a cppin image.
std::size_t labelled_symmetric_cells(int n);

// ---------------------------------------------------- Connes-Kreimer Hopf

// Forest literal -> coefficient, "1" the empty forest. Commutative forests
// are sorted canonical trees; planar forests keep tree and forest order.
using HopfElement = std::map<std::string, Rat>;
using HopfTensor = std::map<std::pair<std::string, std::string>, Rat>;

HopfElement ck_element(std::string_view forest_literal, bool planar = false);
HopfElement ck_product(const HopfElement& a, const HopfElement& b, bool planar = false);
// Admissible cuts: pruned forest on the left, trunk on the right.
HopfTensor ck_coproduct(const HopfElement& a, bool planar = false);
HopfElement ck_antipode(const HopfElement& a, bool planar = false);
Rat ck_counit(const HopfElement& a);
int forest_degree(std::string_view forest_literal);
std::vector<std::string> forests_of_degree(int n, bool planar = false);
// |Aut(t)| of an unlabelled rooted tree.
Int symmetry_factor(const RootedTree& t);

std::string hopf_str(const HopfElement& x);
std::string hopf_str(const HopfTensor& x);

struct HopfReport {
  long checks = 0, failures = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return failures == 0; }
};
// Coassociativity, counit, both antipode identities, multiplicativity of the
// coproduct and anti-multiplicativity of the antipode on all forests (and
// pairs) up to the given degree.
HopfReport verify_hopf_axioms(int max_degree, bool planar = false);

struct DualityReport {
  int max_degree = 0;
  std::vector<std::size_t> forests, pbw;  // per degree 0..max_degree
  long checks = 0, failures = 0;
  std::string first_mismatch;
  bool ok() const { return failures == 0; }
};
// The enveloping algebra of the rooted-tree Lie algebra (bracket from the
// cell product) paired with H_CK through <t, t> = |Aut t|.
DualityReport verify_ck_duality(int max_degree);

}  // namespace artifact
