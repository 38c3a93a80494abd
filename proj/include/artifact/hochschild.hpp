#pragma once

#include "artifact/tree_operad.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace artifact {

// Finite-dimensional associative unital algebra given by structure
// constants: e_i e_j = sum_k c[i][j][k] e_k.
struct AssocAlgebra {
  int dim = 0;
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<Rat>>> c;
  std::vector<Rat> unit;

  using Element = std::vector<Rat>;
  Element multiply(const Element& a, const Element& b) const;
  Element basis(int i) const;
  // Throws InputError unless associative and unital on all basis elements.
  void validate() const;

  static AssocAlgebra dual_numbers();       // Q[e]/(e^2), basis 1, e
  static AssocAlgebra matrix_algebra(int n);  // M_n(Q), basis E_ij row-major
  static AssocAlgebra parse(const std::string& text);
  std::string str() const;
};

// Dense q-cochain A^{(x)q} -> A. Entry (x_1..x_q; k) lives at
// (x_1 d^{q-1} + ... + x_q) * d + k.
struct Cochain {
  int dim = 0;
  int deg = 0;
  std::vector<Rat> v;

  Cochain() = default;
  Cochain(int d, int q);
  std::size_t inputs() const;  // d^q
  Rat& at(std::size_t x, int k) { return v[x * dim + k]; }
  const Rat& at(std::size_t x, int k) const { return v[x * dim + k]; }
  bool is_zero() const;
  Cochain& operator+=(const Cochain& o);
  Cochain& operator-=(const Cochain& o);
  Cochain operator*(const Rat& s) const;
  bool operator==(const Cochain& o) const { return dim == o.dim && deg == o.deg && v == o.v; }

  static Cochain identity(int d);                       // id_1
  static Cochain element(const AssocAlgebra::Element&);  // 0-cochain
  static Cochain multiplication(const AssocAlgebra& a);  // mu
  static Cochain parse(const std::string& text, int d);
  std::string str() const;
};

Cochain operator+(Cochain a, const Cochain& b);
Cochain operator-(Cochain a, const Cochain& b);

// Multilinear evaluation on arbitrary elements (the pointwise oracle).
AssocAlgebra::Element evaluate(const Cochain& f, const std::vector<AssocAlgebra::Element>& xs);

Cochain insert(const Cochain& f, int i, const Cochain& g);  // f o_i g, unsigned
Cochain cup(const AssocAlgebra& a, const Cochain& f, const Cochain& g);
Cochain circle(const Cochain& f, const Cochain& g);
Cochain bracket(const Cochain& f, const Cochain& g);
Cochain hochschild_delta(const AssocAlgebra& a, const Cochain& f);
// f{g_1..g_n}: inserts into strictly increasing slots, sign from the
// shifted degrees |g|-1 passing the inputs in front. Zero when n > |f|;
// nullopt only when the result degree would be negative.
std::optional<Cochain> brace(const Cochain& f, const std::vector<Cochain>& gs);

// Slot order used for the tensor-factor signs of the action: W is the
// preorder interleaving of white vertices and white edges, W-bar its reverse.
enum class SlotOrder { w, w_bar };
// Koszul sign of reversing a sequence of graded slots.
int reversal_sign(const std::vector<int>& degrees);

// (-1)^{|t|} times the Koszul sign taking (white edges in Nat order, inputs
// of the given degrees) to the slot order. Shared by every flow-chart action.
int action_sign(const BWTree& t, const std::vector<int>& degrees, SlotOrder order = SlotOrder::w_bar);

// The flow-chart action rho(t) on cochains f_1..f_n (f_j decorates the
// white vertex labelled j). Degree of the result is sum |f_j| - |t|.
// Returns the zero cochain of that degree when a brace runs out of slots;
// nullopt only when that degree is negative.
std::optional<Cochain> act(const AssocAlgebra& a, const BWTree& t, const std::vector<Cochain>& fs,
                           SlotOrder order = SlotOrder::w_bar);
std::optional<Cochain> act(const AssocAlgebra& a, const TreeChain& c, const std::vector<Cochain>& fs,
                           SlotOrder order = SlotOrder::w_bar);
// Same action through the foliage: each foliated tree whose white vertices
// have exactly |f_w| inputs is evaluated pointwise as a composite.
std::optional<Cochain> act_foliage(const AssocAlgebra& a, const BWTree& t, const std::vector<Cochain>& fs,
                                   SlotOrder order = SlotOrder::w_bar);

// The differential on multilinear maps of cochains:
// D(F)(f) = delta(F(f)) - (-1)^k sum_i (-1)^{|f_1|+..+|f_{i-1}|} F(.., delta f_i, ..).
std::optional<Cochain> act_differential(const AssocAlgebra& a, const BWTree& t, const std::vector<Cochain>& fs);

Cochain random_cochain(const AssocAlgebra& a, int q, std::mt19937_64& rng, int range = 2);

struct DeligneOptions {
  int nmax = 3;       // composite trees with at most this many lobes
  int samples = 20;   // random cochain tuples per case
  int max_total_degree = 5;
  std::uint64_t seed = 1;
  int threads = 1;
};
struct DeligneReport {
  long composition_checks = 0, composition_failures = 0;
  long differential_checks = 0, differential_failures = 0;
  long equivariance_checks = 0, equivariance_failures = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return composition_failures + differential_failures + equivariance_failures == 0; }
};
DeligneReport verify_deligne(const AssocAlgebra& a, const DeligneOptions& opt);

// dim HH^q for q = 0..qmax.
std::vector<std::size_t> cohomology(const AssocAlgebra& a, int qmax);

// Signs (e1, e2, e3) with f u g - (-1)^{pq} g u f = e1 delta(f o g) + e2 (delta f) o g + e3 f o delta g,
// one triple per parity class (p mod 2, q mod 2), indexed 2 (p mod 2) + (q mod 2).
using HomotopySigns = std::vector<std::array<int, 3>>;
// Finds the triples empirically; a class with no or several consistent
// triples yields {0,0,0}.
HomotopySigns calibrate_homotopy_signs(const AssocAlgebra& a, int samples, std::uint64_t seed);
bool homotopy_identity(const AssocAlgebra& a, const HomotopySigns& s, const Cochain& f, const Cochain& g);
HomotopySigns parse_homotopy_signs(const std::string& text);
std::string homotopy_signs_str(const HomotopySigns& s);

}  // namespace artifact
