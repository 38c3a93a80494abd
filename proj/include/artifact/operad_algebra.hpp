#pragma once

// Structures every operad with a direct sum carries: the circle product and
// its pre-Lie and Lie algebras, generalized braces and, given an associative
// multiplication element, the flow-chart action of the bipartite tree operad.

#include "artifact/action_check.hpp"
#include "artifact/hochschild.hpp"

#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace artifact {

// Elements are homogeneous: one arity each. The direct-sum degree of an
// element of arity n is n - 1.
template <class O>
concept OperadInterface = requires(const O& o, const typename O::Element& a, typename O::Element& b, int i,
                                   const std::vector<int>& sigma) {
  { o.arity(a) } -> std::convertible_to<int>;
  { o.compose(a, i, a) } -> std::same_as<typename O::Element>;
  { o.zero(i) } -> std::same_as<typename O::Element>;
  { o.unit() } -> std::same_as<typename O::Element>;
  { o.act(sigma, a) } -> std::same_as<typename O::Element>;  // sigma[l-1] = new position of input l
  { b += a };
  { b -= a };
  { a * Rat(1) } -> std::same_as<typename O::Element>;
  { a == a } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
};

template <class E>
using DirectSumElement = std::map<int, E>;  // arity -> component

// sum_i (-1)^{(i-1)(n+1)} a o_i b, or the plain sum when !graded.
template <OperadInterface O>
typename O::Element circle_product(const O& o, const typename O::Element& a, const typename O::Element& b,
                                   bool graded = true) {
  const int m = o.arity(a), n = o.arity(b);
  if (m + n - 1 < 0) throw InputError("circle product of two arity-0 elements");
  auto out = o.zero(m + n - 1);
  for (int i = 1; i <= m; ++i) {
    auto t = o.compose(a, i, b);
    if (graded && (((i - 1) * (n + 1)) & 1)) out -= t;
    else out += t;
  }
  return out;
}

template <OperadInterface O>
DirectSumElement<typename O::Element> circle_product(const O& o, const DirectSumElement<typename O::Element>& a,
                                                     const DirectSumElement<typename O::Element>& b,
                                                     bool graded = true) {
  DirectSumElement<typename O::Element> out;
  for (const auto& [m, x] : a)
    for (const auto& [n, y] : b) {
      if (m == 0) continue;
      auto t = circle_product(o, x, y, graded);
      auto it = out.find(m + n - 1);
      if (it == out.end()) out.emplace(m + n - 1, std::move(t));
      else it->second += t;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

enum class Parity { even, odd };

// even: [a,b] = a o b - b o a with the plain circle product.
// odd:  {a,b} = a o b - (-1)^{(m+1)(n+1)} b o a with the graded one, m and n
// the arities (the direct-sum degrees shifted back by one).
template <OperadInterface O>
typename O::Element lie_bracket(const O& o, const typename O::Element& a, const typename O::Element& b, Parity p) {
  const bool graded = p == Parity::odd;
  auto out = circle_product(o, a, b, graded);
  auto back = circle_product(o, b, a, graded);
  const int m = o.arity(a), n = o.arity(b);
  if (graded && (((m + 1) * (n + 1)) & 1)) out += back;
  else out -= back;
  return out;
}

// (a o b) o c - a o (b o c) - s ((a o c) o b - a o (c o b)) with
// s = (-1)^{|b||c|} when `graded_relation`, 1 otherwise.
template <OperadInterface O>
typename O::Element prelie_defect(const O& o, const typename O::Element& a, const typename O::Element& b,
                                  const typename O::Element& c, bool graded_circle, bool graded_relation) {
  auto assoc = [&](const auto& x, const auto& y, const auto& z) {
    auto l = circle_product(o, circle_product(o, x, y, graded_circle), z, graded_circle);
    l -= circle_product(o, x, circle_product(o, y, z, graded_circle), graded_circle);
    return l;
  };
  auto out = assoc(a, b, c);
  auto swapped = assoc(a, c, b);
  const int db = o.arity(b) - 1, dc = o.arity(c) - 1;
  if (graded_relation && ((db * dc) & 1)) out += swapped;
  else out -= swapped;
  return out;
}

// op{op'_1..op'_n}: the op'_j go into strictly increasing inputs of op, the
// sign is that of the cochain braces with arity in place of degree. Zero
// when n exceeds the arity; nullopt when the result arity would be negative.
template <OperadInterface O>
std::optional<typename O::Element> generalized_brace(const O& o, const typename O::Element& op,
                                                     const std::vector<typename O::Element>& gs) {
  const int p = o.arity(op), n = static_cast<int>(gs.size());
  if (n == 0) return op;
  int arity = p - n;
  for (const auto& g : gs) arity += o.arity(g);
  if (arity < 0) return std::nullopt;
  auto out = o.zero(arity);
  if (n > p) return out;
  std::vector<int> s(n);
  for (int j = 0; j < n; ++j) s[j] = j + 1;
  for (;;) {
    // highest slot first, so the lower slot numbers stay valid
    auto h = op;
    for (int j = n - 1; j >= 0; --j) h = o.compose(h, s[j], gs[j]);
    long long e = 0, shift = 0;
    for (int j = 0; j < n; ++j) {
      const int q = o.arity(gs[j]);
      e += static_cast<long long>(s[j] + shift - 1) * (q + 1);
      shift += q - 1;
    }
    if (e & 1) out -= h;
    else out += h;
    int j = n - 1;
    while (j >= 0 && s[j] == p - (n - 1 - j)) --j;
    if (j < 0) break;
    ++s[j];
    for (int l = j + 1; l < n; ++l) s[l] = s[l - 1] + 1;
  }
  return out;
}

// An operad with an associative multiplication element in arity 2.
template <OperadInterface O>
class OperadAlgebra {
 public:
  using Element = typename O::Element;

  OperadAlgebra(O o, Element mu) : o_(std::move(o)), mu_(std::move(mu)) {
    if (o_.arity(mu_) != 2) throw InputError("the multiplication element must have arity 2");
    if (!(o_.compose(mu_, 1, mu_) == o_.compose(mu_, 2, mu_)))
      throw InputError("the multiplication element is not associative");
  }

  const O& operad() const { return o_; }
  const Element& mu() const { return mu_; }

  // a u b = (-1)^{pq} (mu o_1 a) o_{p+1} b for arities p, q.
  Element cup(const Element& a, const Element& b) const {
    const int p = o_.arity(a), q = o_.arity(b);
    Element r = o_.compose(o_.compose(mu_, 1, a), p + 1, b);
    return ((p * q) & 1) ? r * Rat(-1) : r;
  }

  // df = f o mu - (-1)^{|f|} mu o f with the graded circle product.
  Element delta(const Element& f) const {
    Element out = circle_product(o_, f, mu_, true);
    Element back = circle_product(o_, mu_, f, true);
    if ((o_.arity(f) - 1) & 1) out += back;
    else out -= back;
    return out;
  }

  std::optional<Element> act(const BWTree& t, const std::vector<Element>& fs,
                             SlotOrder order = SlotOrder::w_bar) const {
    check(t, fs);
    const int total = total_arity(t, fs);
    if (total < 0) return std::nullopt;
    std::function<std::optional<Element>(int)> value = [&](int v) -> std::optional<Element> {
      std::vector<Element> vals;
      for (int c : t[v].children) {
        auto x = value(c);
        if (!x) return std::nullopt;
        vals.push_back(std::move(*x));
      }
      if (t[v].color == Color::white) return generalized_brace(o_, fs[t[v].label - 1], vals);
      Element acc = std::move(vals.front());
      for (std::size_t j = 1; j < vals.size(); ++j) acc = cup(acc, vals[j]);
      return acc;
    };
    auto flow = value(1);
    if (!flow) return o_.zero(total);
    std::vector<int> degrees;
    for (const auto& f : fs) degrees.push_back(o_.arity(f));
    return action_sign(t, degrees, order) < 0 ? *flow * Rat(-1) : *flow;
  }

  std::optional<Element> act(const TreeChain& c, const std::vector<Element>& fs,
                             SlotOrder order = SlotOrder::w_bar) const {
    if (c.empty()) throw InputError("the action of the empty chain has no degree");
    std::optional<Element> out;
    for (const auto& [lit, x] : c.terms()) {
      auto r = act(BWTree::parse(lit), fs, order);
      if (!r) return std::nullopt;
      Element term = *r * Rat(x.str());
      if (out) *out += term;
      else out = std::move(term);
    }
    return out;
  }

  // D(F)(f) = d F(f) - (-1)^k sum_i (-1)^{|f_1|+..+|f_{i-1}|} F(.., d f_i, ..)
  // with d = -delta, the normalization under which End(A) recovers the
  // Hochschild differential.
  std::optional<Element> act_differential(const BWTree& t, const std::vector<Element>& fs) const {
    check(t, fs);
    const int total = total_arity(t, fs) + 1;
    if (total < 0) return std::nullopt;
    Element out = o_.zero(total);
    if (auto r = act(t, fs)) out -= delta(*r);
    const bool k_odd = t.dim() & 1;
    int prefix = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      auto g = fs;
      g[i] = delta(fs[i]) * Rat(-1);
      if (auto r = act(t, g)) {
        if (k_odd == static_cast<bool>(prefix & 1)) out -= *r;
        else out += *r;
      }
      prefix += o_.arity(fs[i]);
    }
    return out;
  }

 private:
  void check(const BWTree& t, const std::vector<Element>& fs) const {
    if (!t.bipartite() || !t.no_tails()) throw InputError("the action needs a bipartite tree without tails");
    if (static_cast<int>(fs.size()) != t.lobes())
      throw InputError("tree has " + std::to_string(t.lobes()) + " lobes but " + std::to_string(fs.size()) +
                       " operations were given");
  }
  int total_arity(const BWTree& t, const std::vector<Element>& fs) const {
    int s = -t.dim();
    for (const auto& f : fs) s += o_.arity(f);
    return s;
  }

  O o_;
  Element mu_;
};

// Composition, differential and equivariance of the action, as for cochains.
template <OperadInterface O>
DeligneReport verify_operad_algebra(const OperadAlgebra<O>& alg,
                                    std::function<typename O::Element(int, std::mt19937_64&)> random,
                                    const DeligneOptions& opt) {
  struct Backend {
    using Value = typename O::Element;
    const OperadAlgebra<O>& alg;
    std::function<Value(int, std::mt19937_64&)> gen;
    std::optional<Value> act(const BWTree& t, const std::vector<Value>& fs) const { return alg.act(t, fs); }
    std::optional<Value> act(const TreeChain& c, const std::vector<Value>& fs) const { return alg.act(c, fs); }
    std::optional<Value> act_differential(const BWTree& t, const std::vector<Value>& fs) const {
      return alg.act_differential(t, fs);
    }
    Value random(int q, std::mt19937_64& rng) const { return gen(q, rng); }
    Value zero(int q) const { return alg.operad().zero(q); }
    int degree(const Value& v) const { return alg.operad().arity(v); }
  };
  return verify_action(Backend{alg, std::move(random)}, opt);
}

// The endomorphism operad of a d-dimensional space; elements are cochains.
struct EndOperad {
  using Element = Cochain;
  int dim = 2;
  int arity(const Cochain& f) const { return f.deg; }
  Cochain compose(const Cochain& a, int i, const Cochain& b) const { return insert(a, i, b); }
  Cochain zero(int n) const { return Cochain(dim, n); }
  Cochain unit() const { return Cochain::identity(dim); }
  // (sigma f)(x_1..x_n) = f(x_{sigma(1)}..x_{sigma(n)})
  Cochain act(const std::vector<int>& sigma, const Cochain& f) const;
};

}  // namespace artifact
