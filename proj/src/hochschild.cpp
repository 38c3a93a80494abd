#include "artifact/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "artifact/action_check.hpp"
#include "artifact/linalg.hpp"

namespace artifact {

namespace {

std::size_t ipow(int d, int q) {
  std::size_t r = 1;
  for (int j = 0; j < q; ++j) r *= static_cast<std::size_t>(d);
  return r;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (...) {
  }
  throw InputError("expected an integer, got '" + s + "'");
}

void same_shape(const Cochain& a, const Cochain& b) {
  if (a.dim != b.dim || a.deg != b.deg)
    throw InputError("cochains of degree " + std::to_string(a.deg) + " and " + std::to_string(b.deg) +
                     " cannot be added");
}

}  // namespace

// ================================================================ algebras

AssocAlgebra::Element AssocAlgebra::multiply(const Element& a, const Element& b) const {
  Element out(dim, Rat(0));
  for (int i = 0; i < dim; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (b[j] == 0) continue;
      Rat s = a[i] * b[j];
      for (int k = 0; k < dim; ++k)
        if (c[i][j][k] != 0) out[k] += s * c[i][j][k];
    }
  }
  return out;
}

AssocAlgebra::Element AssocAlgebra::basis(int i) const {
  Element e(dim, Rat(0));
  e.at(i) = 1;
  return e;
}

void AssocAlgebra::validate() const {
  if (dim < 1) throw InputError("algebra dimension must be positive");
  if (static_cast<int>(c.size()) != dim || static_cast<int>(unit.size()) != dim)
    throw InputError("structure constants do not match the dimension");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        if (multiply(multiply(basis(i), basis(j)), basis(k)) != multiply(basis(i), multiply(basis(j), basis(k))))
          throw InputError("algebra is not associative on basis triple (" + std::to_string(i) + "," +
                           std::to_string(j) + "," + std::to_string(k) + ")");
  for (int i = 0; i < dim; ++i)
    if (multiply(unit, basis(i)) != basis(i) || multiply(basis(i), unit) != basis(i))
      throw InputError("unit law fails on basis element " + std::to_string(i));
}

AssocAlgebra AssocAlgebra::dual_numbers() {
  AssocAlgebra a;
  a.dim = 2;
  a.names = {"1", "e"};
  a.c.assign(2, std::vector<std::vector<Rat>>(2, std::vector<Rat>(2, Rat(0))));
  a.c[0][0][0] = 1;
  a.c[0][1][1] = 1;
  a.c[1][0][1] = 1;
  a.unit = {Rat(1), Rat(0)};
  a.validate();
  return a;
}

AssocAlgebra AssocAlgebra::matrix_algebra(int n) {
  AssocAlgebra a;
  a.dim = n * n;
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) a.names.push_back("E" + std::to_string(r + 1) + std::to_string(s + 1));
  a.c.assign(a.dim, std::vector<std::vector<Rat>>(a.dim, std::vector<Rat>(a.dim, Rat(0))));
  a.unit.assign(a.dim, Rat(0));
  for (int r = 0; r < n; ++r) {
    a.unit[r * n + r] = 1;
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) a.c[r * n + s][s * n + t][r * n + t] = 1;
  }
  a.validate();
  return a;
}

AssocAlgebra AssocAlgebra::parse(const std::string& text) {
  AssocAlgebra a;
  std::istringstream in(text);
  bool have_unit = false;
  for (std::string line; std::getline(in, line);) {
    auto w = words(line);
    if (w.empty() || w[0][0] == '#') continue;
    if (w[0] == "dim") {
      if (w.size() != 2 || a.dim) throw InputError("bad 'dim' line");
      a.dim = to_int(w[1]);
      if (a.dim < 1 || a.dim > 16) throw InputError("algebra dimension must be in 1..16");
      a.c.assign(a.dim, std::vector<std::vector<Rat>>(a.dim, std::vector<Rat>(a.dim, Rat(0))));
      for (int i = 0; i < a.dim; ++i) a.names.push_back("e" + std::to_string(i));
      continue;
    }
    if (!a.dim) throw InputError("algebra file must start with 'dim d'");
    if (w[0] == "names") {
      if (static_cast<int>(w.size()) != a.dim + 1) throw InputError("'names' needs one name per basis element");
      a.names.assign(w.begin() + 1, w.end());
    } else if (w[0] == "unit") {
      if (static_cast<int>(w.size()) != a.dim + 1) throw InputError("'unit' needs d coordinates");
      a.unit.clear();
      for (std::size_t j = 1; j < w.size(); ++j) a.unit.push_back(parse_rational(w[j]));
      have_unit = true;
    } else if (w[0] == "mul") {
      if (static_cast<int>(w.size()) != a.dim + 4 || w[3] != "=") throw InputError("expected 'mul i j = q_0 .. q_{d-1}'");
      int i = to_int(w[1]), j = to_int(w[2]);
      if (i < 0 || j < 0 || i >= a.dim || j >= a.dim) throw InputError("basis index out of range in '" + line + "'");
      for (int k = 0; k < a.dim; ++k) a.c[i][j][k] = parse_rational(w[4 + k]);
    } else {
      throw InputError("unknown algebra line '" + line + "'");
    }
  }
  if (!a.dim) throw InputError("empty algebra file");
  if (!have_unit) throw InputError("algebra file lacks a 'unit' line");
  a.validate();
  return a;
}

std::string AssocAlgebra::str() const {
  std::ostringstream out;
  out << "dim " << dim << "\nnames";
  for (const auto& n : names) out << ' ' << n;
  out << "\nunit";
  for (const auto& q : unit) out << ' ' << to_string(q);
  out << '\n';
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (std::all_of(c[i][j].begin(), c[i][j].end(), [](const Rat& x) { return x == 0; })) continue;
      out << "mul " << i << ' ' << j << " =";
      for (const auto& q : c[i][j]) out << ' ' << to_string(q);
      out << '\n';
    }
  return out.str();
}

// ================================================================ cochains

Cochain::Cochain(int d, int q) : dim(d), deg(q), v(ipow(d, q) * static_cast<std::size_t>(d), Rat(0)) {
  if (d < 1 || q < 0) throw InputError("cochain needs d >= 1 and q >= 0");
}

std::size_t Cochain::inputs() const { return ipow(dim, deg); }

bool Cochain::is_zero() const {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

Cochain& Cochain::operator+=(const Cochain& o) {
  same_shape(*this, o);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += o.v[j];
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
  same_shape(*this, o);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] -= o.v[j];
  return *this;
}

Cochain Cochain::operator*(const Rat& s) const {
  Cochain out = *this;
  for (auto& x : out.v) x *= s;
  return out;
}

Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }

Cochain Cochain::identity(int d) {
  Cochain f(d, 1);
  for (int x = 0; x < d; ++x) f.at(x, x) = 1;
  return f;
}

Cochain Cochain::element(const AssocAlgebra::Element& e) {
  Cochain f(static_cast<int>(e.size()), 0);
  f.v = e;
  return f;
}

Cochain Cochain::multiplication(const AssocAlgebra& a) {
  Cochain f(a.dim, 2);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (int k = 0; k < a.dim; ++k) f.at(i * a.dim + j, k) = a.c[i][j][k];
  return f;
}

Cochain Cochain::parse(const std::string& text, int d) {
  std::istringstream in(text);
  std::optional<Cochain> f;
  for (std::string line; std::getline(in, line);) {
    auto w = words(line);
    if (w.empty() || w[0][0] == '#') continue;
    if (!f) {
      if (w[0] != "deg" || w.size() != 2) throw InputError("cochain file must start with 'deg q'");
      int q = to_int(w[1]);
      if (q < 0 || q > 6) throw InputError("cochain degree must be in 0..6");
      f.emplace(d, q);
      continue;
    }
    // entry i_1 .. i_q -> k = p/q
    const int q = f->deg;
    if (w[0] != "entry" || static_cast<int>(w.size()) != q + 5 || w[q + 1] != "->" || w[q + 3] != "=")
      throw InputError("expected 'entry i_1 .. i_q -> k = p/q', got '" + line + "'");
    std::size_t x = 0;
    for (int j = 0; j < q; ++j) {
      int i = to_int(w[1 + j]);
      if (i < 0 || i >= d) throw InputError("input index out of range in '" + line + "'");
      x = x * d + i;
    }
    int k = to_int(w[q + 2]);
    if (k < 0 || k >= d) throw InputError("output index out of range in '" + line + "'");
    f->at(x, k) = parse_rational(w[q + 4]);
  }
  if (!f) throw InputError("empty cochain file");
  return *f;
}

std::string Cochain::str() const {
  std::ostringstream out;
  out << "deg " << deg << '\n';
  std::vector<int> digits(deg);
  for (std::size_t x = 0; x < inputs(); ++x) {
    std::size_t r = x;
    for (int j = deg - 1; j >= 0; --j) {
      digits[j] = static_cast<int>(r % dim);
      r /= dim;
    }
    for (int k = 0; k < dim; ++k) {
      if (at(x, k) == 0) continue;
      out << "entry";
      for (int i : digits) out << ' ' << i;
      out << " -> " << k << " = " << to_string(at(x, k)) << '\n';
    }
  }
  return out.str();
}

AssocAlgebra::Element evaluate(const Cochain& f, const std::vector<AssocAlgebra::Element>& xs) {
  if (static_cast<int>(xs.size()) != f.deg) throw InputError("wrong number of arguments");
  AssocAlgebra::Element out(f.dim, Rat(0));
  std::function<void(int, std::size_t, const Rat&)> rec = [&](int j, std::size_t x, const Rat& w) {
    if (j == f.deg) {
      for (int k = 0; k < f.dim; ++k) out[k] += w * f.at(x, k);
      return;
    }
    for (int i = 0; i < f.dim; ++i)
      if (xs[j][i] != 0) rec(j + 1, x * f.dim + i, w * xs[j][i]);
  };
  rec(0, 0, Rat(1));
  return out;
}

Cochain insert(const Cochain& f, int i, const Cochain& g) {
  const int p = f.deg, q = g.deg, d = f.dim;
  if (g.dim != d) throw InputError("cochains over different algebras");
  if (i < 1 || i > p) throw InputError("insertion slot " + std::to_string(i) + " out of range 1.." + std::to_string(p));
  Cochain h(d, p + q - 1);
  const std::size_t B = ipow(d, q), C = ipow(d, p - i);
  for (std::size_t x = 0; x < h.inputs(); ++x) {
    const std::size_t c = x % C, b = (x / C) % B, a = x / C / B;
    for (int m = 0; m < d; ++m) {
      const Rat& gm = g.at(b, m);
      if (gm == 0) continue;
      const std::size_t fx = (a * d + m) * C + c;
      for (int k = 0; k < d; ++k)
        if (f.at(fx, k) != 0) h.at(x, k) += gm * f.at(fx, k);
    }
  }
  return h;
}

Cochain cup(const AssocAlgebra& a, const Cochain& f, const Cochain& g) {
  if (f.dim != a.dim || g.dim != a.dim) throw InputError("cochains over different algebras");
  Cochain h(a.dim, f.deg + g.deg);
  const std::size_t B = g.inputs();
  AssocAlgebra::Element fa(a.dim), gb(a.dim);
  for (std::size_t x = 0; x < f.inputs(); ++x) {
    for (int k = 0; k < a.dim; ++k) fa[k] = f.at(x, k);
    if (std::all_of(fa.begin(), fa.end(), [](const Rat& r) { return r == 0; })) continue;
    for (std::size_t y = 0; y < B; ++y) {
      for (int k = 0; k < a.dim; ++k) gb[k] = g.at(y, k);
      auto prod = a.multiply(fa, gb);
      for (int k = 0; k < a.dim; ++k) h.at(x * B + y, k) = prod[k];
    }
  }
  return h;
}

Cochain circle(const Cochain& f, const Cochain& g) {
  const int p = f.deg, q = g.deg;
  if (p + q - 1 < 0) throw InputError("circle product of two 0-cochains has negative degree");
  Cochain h(f.dim, p + q - 1);
  for (int i = 1; i <= p; ++i) {
    Cochain t = insert(f, i, g);
    if (((i - 1) * (q + 1)) & 1) h -= t;
    else h += t;
  }
  return h;
}

Cochain bracket(const Cochain& f, const Cochain& g) {
  const int p = f.deg, q = g.deg;
  Cochain h = circle(f, g);
  if (((p - 1) * (q - 1)) & 1) h += circle(g, f);
  else h -= circle(g, f);
  return h;
}

Cochain hochschild_delta(const AssocAlgebra& a, const Cochain& f) {
  const int q = f.deg, d = a.dim;
  if (f.dim != d) throw InputError("cochain over a different algebra");
  Cochain h(d, q + 1);
  std::vector<int> x(q + 1);
  std::vector<std::size_t> pw(q + 2, 1);
  for (int j = q; j >= 0; --j) pw[j] = pw[j + 1] * d;  // pw[j] = d^{q+1-j}
  for (std::size_t X = 0; X < h.inputs(); ++X) {
    std::size_t r = X;
    for (int j = q; j >= 0; --j) {
      x[j] = static_cast<int>(r % d);
      r /= d;
    }
    // x_1 f(x_2..)
    const std::size_t tail = X % pw[1];
    for (int m = 0; m < d; ++m) {
      const Rat& fm = f.at(tail, m);
      if (fm == 0) continue;
      for (int k = 0; k < d; ++k)
        if (a.c[x[0]][m][k] != 0) h.at(X, k) += fm * a.c[x[0]][m][k];
    }
    // (-1)^j f(.., x_j x_{j+1}, ..)
    for (int j = 1; j <= q; ++j) {
      const bool neg = j & 1;
      const std::size_t before = X / pw[j - 1];  // x_1..x_{j-1}
      const std::size_t after = X % pw[j + 1];   // x_{j+2}..
      for (int m = 0; m < d; ++m) {
        const Rat& cm = a.c[x[j - 1]][x[j]][m];
        if (cm == 0) continue;
        const std::size_t fx = (before * d + m) * pw[j + 1] + after;
        for (int k = 0; k < d; ++k) {
          if (f.at(fx, k) == 0) continue;
          if (neg) h.at(X, k) -= cm * f.at(fx, k);
          else h.at(X, k) += cm * f.at(fx, k);
        }
      }
    }
    // (-1)^{q+1} f(x_1..x_q) x_{q+1}
    const std::size_t head = X / d;
    const bool neg = (q + 1) & 1;
    for (int m = 0; m < d; ++m) {
      const Rat& fm = f.at(head, m);
      if (fm == 0) continue;
      for (int k = 0; k < d; ++k) {
        const Rat& cm = a.c[m][x[q]][k];
        if (cm == 0) continue;
        if (neg) h.at(X, k) -= fm * cm;
        else h.at(X, k) += fm * cm;
      }
    }
  }
  return h;
}

std::optional<Cochain> brace(const Cochain& f, const std::vector<Cochain>& gs) {
  const int p = f.deg, n = static_cast<int>(gs.size());
  if (n == 0) return f;
  int deg = p - n;
  for (const auto& g : gs) deg += g.deg;
  if (deg < 0) return std::nullopt;
  Cochain out(f.dim, deg);
  if (n > p) return out;
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 1);
  for (;;) {
    Cochain h = f;
    for (int j = n - 1; j >= 0; --j) h = insert(h, s[j], gs[j]);
    long long e = 0, shift = 0;
    for (int j = 0; j < n; ++j) {
      e += static_cast<long long>(s[j] + shift - 1) * (gs[j].deg + 1);
      shift += gs[j].deg - 1;
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

int reversal_sign(const std::vector<int>& degrees) {
  long long odd = 0;
  for (int x : degrees) odd += x & 1;
  return parity_sign(odd * (odd - 1) / 2);
}

// ================================================================== action

namespace {

// Koszul sign of (L_1..L_k in Nat order, f_1..f_n) -> slot order.
int slot_sign(const BWTree& t, const std::vector<int>& input_degrees, SlotOrder order) {
  const auto& we = t.white_edges();
  const int k = static_cast<int>(we.size());
  std::vector<int> degrees(k, 1);
  degrees.insert(degrees.end(), input_degrees.begin(), input_degrees.end());
  std::map<int, int> nat;
  for (int j = 0; j < k; ++j) nat[we[j]] = j;
  std::vector<int> seq;
  for (int v = 0; v < t.size(); ++v) {
    if (t[v].color == Color::white) seq.push_back(k + t[v].label - 1);
    else if (nat.count(v)) seq.push_back(nat[v]);
  }
  if (order == SlotOrder::w_bar) std::reverse(seq.begin(), seq.end());
  return koszul_sign(degrees, seq);
}

std::vector<int> degrees_of(const std::vector<Cochain>& fs) {
  std::vector<int> d;
  for (const auto& f : fs) d.push_back(f.deg);
  return d;
}

void check_arguments(const AssocAlgebra& a, const BWTree& t, const std::vector<Cochain>& fs) {
  if (!t.bipartite() || !t.no_tails()) throw InputError("the action needs a bipartite tree without tails");
  if (static_cast<int>(fs.size()) != t.lobes())
    throw InputError("tree has " + std::to_string(t.lobes()) + " lobes but " + std::to_string(fs.size()) +
                     " cochains were given");
  for (const auto& f : fs)
    if (f.dim != a.dim) throw InputError("cochain over a different algebra");
}

int total_degree(const BWTree& t, const std::vector<Cochain>& fs) {
  int s = -t.dim();
  for (const auto& f : fs) s += f.deg;
  return s;
}

}  // namespace

int action_sign(const BWTree& t, const std::vector<int>& degrees, SlotOrder order) {
  return slot_sign(t, degrees, order) * parity_sign(t.dim());
}

std::optional<Cochain> act(const AssocAlgebra& a, const BWTree& t, const std::vector<Cochain>& fs, SlotOrder order) {
  check_arguments(a, t, fs);
  const int total = total_degree(t, fs);
  if (total < 0) return std::nullopt;
  std::function<std::optional<Cochain>(int)> value = [&](int v) -> std::optional<Cochain> {
    std::vector<Cochain> vals;
    for (int c : t[v].children) {
      auto x = value(c);
      if (!x) return std::nullopt;
      vals.push_back(std::move(*x));
    }
    if (t[v].color == Color::white) return brace(fs[t[v].label - 1], vals);
    // twisted cup: f u' g = (-1)^{|f||g|} f u g
    Cochain acc = std::move(vals.front());
    for (std::size_t j = 1; j < vals.size(); ++j) {
      bool neg = (acc.deg * vals[j].deg) & 1;
      acc = cup(a, acc, vals[j]);
      if (neg) acc = acc * Rat(-1);
    }
    return acc;
  };
  auto flow = value(1);
  if (!flow) return Cochain(a.dim, total);
  int sign = slot_sign(t, degrees_of(fs), order) * parity_sign(t.dim());
  return sign < 0 ? *flow * Rat(-1) : *flow;
}

std::optional<Cochain> act(const AssocAlgebra& a, const TreeChain& c, const std::vector<Cochain>& fs,
                           SlotOrder order) {
  if (c.empty()) throw InputError("the action of the empty chain has no degree");
  std::optional<Cochain> out;
  for (const auto& [lit, x] : c.terms()) {
    auto r = act(a, BWTree::parse(lit), fs, order);
    if (!r) return std::nullopt;
    Cochain term = *r * Rat(x.str());
    if (out) *out += term;
    else out = std::move(term);
  }
  return out;
}

std::optional<Cochain> act_foliage(const AssocAlgebra& a, const BWTree& t, const std::vector<Cochain>& fs,
                                   SlotOrder order) {
  check_arguments(a, t, fs);
  const int total = total_degree(t, fs);
  if (total < 0) return std::nullopt;
  Cochain out(a.dim, total);
  const FoliatedSum fol = foliage(t, total);
  auto it = fol.find(total);
  if (it == fol.end()) return out;
  const int global = slot_sign(t, degrees_of(fs), order) * parity_sign(t.dim());
  for (const auto& [lit, coeff] : it->second.terms()) {
    const BWTree u = BWTree::parse(lit, TreeClass::any);
    bool fits = true;
    for (int w : u.whites())
      if (static_cast<int>(u[w].children.size()) != fs[u[w].label - 1].deg) fits = false;
    if (!fits) continue;
    // inputs below each vertex
    std::vector<int> leaves(u.size(), 0);
    for (int v = u.size() - 1; v >= 0; --v) {
      if (u[v].color == Color::tail) leaves[v] = 1;
      for (int c : u[v].children) leaves[v] += leaves[c];
    }
    long long e = 0;
    for (int v = 0; v < u.size(); ++v) {
      int before = 0;
      const auto& ch = u[v].children;
      for (std::size_t j = 0; j < ch.size(); ++j) {
        if (u[v].color == Color::white && u[ch[j]].color == Color::black)
          e += static_cast<long long>(before) * (leaves[ch[j]] + 1);
        if (u[v].color == Color::black && v >= 1) e += static_cast<long long>(before) * leaves[ch[j]];
        before += leaves[ch[j]];
      }
    }
    const Rat sign = Rat(parity_sign(e) * global) * Rat(coeff.str());
    // pointwise evaluation of the composite on every basis tuple
    std::vector<int> digits(total);
    std::function<AssocAlgebra::Element(int, std::size_t&)> eval = [&](int v, std::size_t& pos) {
      if (u[v].color == Color::tail) return a.basis(digits[pos++]);
      std::vector<AssocAlgebra::Element> args;
      for (int c : u[v].children) args.push_back(eval(c, pos));
      if (u[v].color == Color::white) return evaluate(fs[u[v].label - 1], args);
      AssocAlgebra::Element acc = args.front();
      for (std::size_t j = 1; j < args.size(); ++j) acc = a.multiply(acc, args[j]);
      return acc;
    };
    for (std::size_t X = 0; X < out.inputs(); ++X) {
      std::size_t r = X;
      for (int j = total - 1; j >= 0; --j) {
        digits[j] = static_cast<int>(r % a.dim);
        r /= a.dim;
      }
      std::size_t pos = 0;
      auto val = eval(1, pos);
      for (int k = 0; k < a.dim; ++k) out.at(X, k) += sign * val[k];
    }
  }
  return out;
}

std::optional<Cochain> act_differential(const AssocAlgebra& a, const BWTree& t, const std::vector<Cochain>& fs) {
  check_arguments(a, t, fs);
  const int total = total_degree(t, fs) + 1;
  if (total < 0) return std::nullopt;
  Cochain out(a.dim, total);
  if (auto r = act(a, t, fs)) out += hochschild_delta(a, *r);
  const bool k_odd = t.dim() & 1;
  int prefix = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto g = fs;
    g[i] = hochschild_delta(a, fs[i]);
    if (auto r = act(a, t, g)) {
      // - (-1)^k (-1)^{prefix}
      if (k_odd == static_cast<bool>(prefix & 1)) out -= *r;
      else out += *r;
    }
    prefix += fs[i].deg;
  }
  return out;
}

Cochain random_cochain(const AssocAlgebra& a, int q, std::mt19937_64& rng, int range) {
  Cochain f(a.dim, q);
  std::uniform_int_distribution<int> dist(-range, range);
  for (auto& x : f.v) x = dist(rng);
  return f;
}

// ======================================================== Deligne checks

namespace {

struct CochainBackend {
  using Value = Cochain;
  const AssocAlgebra& a;
  std::optional<Cochain> act(const BWTree& t, const std::vector<Cochain>& fs) const {
    return artifact::act(a, t, fs);
  }
  std::optional<Cochain> act(const TreeChain& c, const std::vector<Cochain>& fs) const {
    return artifact::act(a, c, fs);
  }
  std::optional<Cochain> act_differential(const BWTree& t, const std::vector<Cochain>& fs) const {
    return artifact::act_differential(a, t, fs);
  }
  Cochain random(int q, std::mt19937_64& rng) const { return random_cochain(a, q, rng); }
  Cochain zero(int q) const { return Cochain(a.dim, q); }
  int degree(const Cochain& f) const { return f.deg; }
};

}  // namespace

DeligneReport verify_deligne(const AssocAlgebra& a, const DeligneOptions& opt) {
  a.validate();
  return verify_action(CochainBackend{a}, opt);
}

// ============================================================= cohomology

namespace {

// Matrix of delta on q-cochains, one row per basis cochain, cleared of
// denominators row by row.
SparseIntMatrix delta_matrix(const AssocAlgebra& a, int q) {
  const std::size_t rows = ipow(a.dim, q) * a.dim, cols = ipow(a.dim, q + 1) * a.dim;
  SparseIntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    Cochain e(a.dim, q);
    e.v[r] = 1;
    Cochain de = hochschild_delta(a, e);
    mpz_class l = 1;
    for (const auto& x : de.v)
      if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c)
      if (de.v[c] != 0) {
        Rat y = de.v[c] * l;
        m.add(static_cast<int>(r), static_cast<int>(c), Int(y.get_num().get_str()));
      }
  }
  return m;
}

}  // namespace

std::vector<std::size_t> cohomology(const AssocAlgebra& a, int qmax) {
  a.validate();
  if (qmax < 0 || ipow(a.dim, qmax + 2) > 100000) throw InputError("cohomology degree outside the supported range");
  std::vector<std::size_t> rk;
  for (int q = 0; q <= qmax; ++q) rk.push_back(rank_rational(delta_matrix(a, q)));
  std::vector<std::size_t> out;
  for (int q = 0; q <= qmax; ++q) out.push_back(ipow(a.dim, q) * a.dim - rk[q] - (q ? rk[q - 1] : 0));
  return out;
}

// ================================================ homotopy commutativity

namespace {

std::array<Cochain, 4> homotopy_terms(const AssocAlgebra& a, const Cochain& f, const Cochain& g) {
  const int p = f.deg, q = g.deg;
  Cochain lhs = cup(a, f, g);
  if ((p * q) & 1) lhs += cup(a, g, f);
  else lhs -= cup(a, g, f);
  Cochain t1 = p + q >= 1 ? hochschild_delta(a, circle(f, g)) : Cochain(a.dim, p + q);
  Cochain t2 = circle(hochschild_delta(a, f), g);
  Cochain t3 = p >= 1 ? circle(f, hochschild_delta(a, g)) : Cochain(a.dim, p + q);
  return {lhs, t1, t2, t3};
}

bool holds(const std::array<Cochain, 4>& t, const std::array<int, 3>& s) {
  Cochain r = t[0];
  for (int j = 0; j < 3; ++j) r -= t[j + 1] * Rat(s[j]);
  return r.is_zero();
}

}  // namespace

HomotopySigns calibrate_homotopy_signs(const AssocAlgebra& a, int samples, std::uint64_t seed) {
  HomotopySigns out(4, {0, 0, 0});
  std::mt19937_64 rng(mix_seed(seed, 7));
  for (int cls = 0; cls < 4; ++cls) {
    const int p = (cls >> 1) ? 1 : 2, q = (cls & 1) ? 1 : 2;
    std::vector<std::array<Cochain, 4>> data;
    for (int s = 0; s < samples; ++s) data.push_back(homotopy_terms(a, random_cochain(a, p, rng), random_cochain(a, q, rng)));
    std::vector<std::array<int, 3>> good;
    for (int m = 0; m < 8; ++m) {
      std::array<int, 3> s{(m & 1) ? -1 : 1, (m & 2) ? -1 : 1, (m & 4) ? -1 : 1};
      if (std::all_of(data.begin(), data.end(), [&](const auto& t) { return holds(t, s); })) good.push_back(s);
    }
    if (good.size() == 1) out[cls] = good.front();
  }
  return out;
}

bool homotopy_identity(const AssocAlgebra& a, const HomotopySigns& s, const Cochain& f, const Cochain& g) {
  if (s.size() != 4) throw InputError("homotopy signs need four parity classes");
  return holds(homotopy_terms(a, f, g), s[2 * (f.deg & 1) + (g.deg & 1)]);
}

HomotopySigns parse_homotopy_signs(const std::string& text) {
  HomotopySigns out(4, {0, 0, 0});
  std::vector<bool> seen(4, false);
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    auto w = words(line);
    if (w.empty() || w[0][0] == '#') continue;
    if (w.size() != 5) throw InputError("expected 'p q e1 e2 e3', got '" + line + "'");
    int p = to_int(w[0]), q = to_int(w[1]);
    if (p < 0 || p > 1 || q < 0 || q > 1) throw InputError("parity classes are 0 or 1");
    for (int j = 0; j < 3; ++j) {
      int e = to_int(w[2 + j]);
      if (e != 1 && e != -1) throw InputError("signs must be 1 or -1");
      out[2 * p + q][j] = e;
    }
    seen[2 * p + q] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw InputError("all four parity classes are required");
  return out;
}

std::string homotopy_signs_str(const HomotopySigns& s) {
  std::ostringstream out;
  out << "# p q e1 e2 e3 (degrees mod 2)\n";
  for (int cls = 0; cls < 4; ++cls)
    out << (cls >> 1) << ' ' << (cls & 1) << ' ' << s[cls][0] << ' ' << s[cls][1] << ' ' << s[cls][2] << '\n';
  return out.str();
}

}  // namespace artifact
