#include "artifact/cacti.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace artifact {

// ============================================================ ribbon graphs

int RibbonGraph::predecessor(int f) const {
  // successor = next o iota, so predecessor = iota o next^{-1}
  for (int g = 0; g < flags(); ++g)
    if (successor(g) == f) return g;
  throw InputError("flag has no predecessor");
}

std::vector<int> RibbonGraph::cycle_of_flag() const {
  std::vector<int> cyc(flags(), -1);
  int count = 0;
  for (int f = 0; f < flags(); ++f) {
    if (cyc[f] >= 0) continue;
    for (int g = f; cyc[g] < 0; g = next[g]) cyc[g] = count;
    ++count;
  }
  return cyc;
}

int RibbonGraph::cycle_count() const {
  auto c = cycle_of_flag();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

int RibbonGraph::genus() const {
  int chi = vertices - flags() / 2 + cycle_count();
  if ((2 - chi) % 2 != 0) throw InputError("odd Euler characteristic");
  return (2 - chi) / 2;
}

void RibbonGraph::validate() const {
  const int F = flags();
  if (static_cast<int>(delta.size()) != F || static_cast<int>(next.size()) != F)
    throw InputError("ribbon graph arrays differ in length");
  if (F == 0 || f0 < 0 || f0 >= F) throw InputError("marked flag out of range");
  std::vector<int> seen(F, 0);
  for (int f = 0; f < F; ++f) {
    if (iota[f] < 0 || iota[f] >= F || next[f] < 0 || next[f] >= F) throw InputError("flag index out of range");
    if (iota[f] == f || iota[iota[f]] != f) throw InputError("iota must be a fixed-point-free involution");
    if (delta[f] < 0 || delta[f] >= vertices) throw InputError("vertex index out of range");
    ++seen[next[f]];
  }
  for (int f = 0; f < F; ++f)
    if (seen[f] != 1) throw InputError("N is not a permutation");
  for (int f = 0; f < F; ++f)
    if (delta[successor(f)] != delta[f]) throw InputError("successor leaves the vertex");
  if (!mu.empty() && static_cast<int>(mu.size()) != F) throw InputError("metric size mismatch");
  for (int f = 0; f < static_cast<int>(mu.size()); ++f)
    if (mu[f] != mu[iota[f]]) throw InputError("metric differs on the two flags of an edge");
}

bool RibbonGraph::marked_spineless_treelike() const {
  validate();
  if (genus() != 0) return false;
  auto cyc = cycle_of_flag();
  const int c0 = cyc[f0];
  for (int f = 0; f < flags(); ++f)
    if (cyc[f] != c0 && cyc[iota[f]] != c0) return false;
  std::vector<int> valence(vertices, 0);
  for (int f = 0; f < flags(); ++f) ++valence[delta[f]];
  for (int v = 0; v < vertices; ++v)
    if (valence[v] < (v == delta[f0] ? 2 : 3)) return false;
  return true;
}

RibbonGraph tree_flags(const BWTree& t) {
  RibbonGraph g;
  const int V = t.size();
  if (V < 3) throw InputError("tree has no edges below the root");
  const int F = 2 * (V - 2);
  auto down = [](int v) { return 2 * (v - 2); };
  auto up = [](int v) { return 2 * (v - 2) + 1; };
  g.iota.resize(F);
  g.delta.resize(F);
  g.next.resize(F);
  g.vertices = V - 1;
  for (int v = 2; v < V; ++v) {
    g.iota[down(v)] = up(v);
    g.iota[up(v)] = down(v);
    g.delta[down(v)] = t[v].parent - 1;
    g.delta[up(v)] = v - 1;
  }
  std::vector<int> succ(F);
  for (int u = 1; u < V; ++u) {
    std::vector<int> around;
    if (u != 1) around.push_back(up(u));
    for (int c : t[u].children) around.push_back(down(c));
    for (std::size_t j = 0; j < around.size(); ++j) succ[around[j]] = around[(j + 1) % around.size()];
  }
  for (int f = 0; f < F; ++f) g.next[f] = succ[g.iota[f]];
  g.f0 = down(t[1].children.front());
  for (int u = 1; u < V; ++u) {
    g.color.push_back(t[u].color);
    g.label.push_back(t[u].label);
  }
  g.validate();
  return g;
}

BWTree tree_from_flags(const RibbonGraph& g) {
  g.validate();
  if (g.color.size() != static_cast<std::size_t>(g.vertices)) throw InputError("flag tree needs vertex colours");
  std::vector<bool> visited(g.vertices, false);
  std::function<PlanarNode(int, int)> build = [&](int u, int parent_flag) {
    if (visited[u]) throw InputError("flag structure is not a tree");
    visited[u] = true;
    PlanarNode n{g.color[u], g.color[u] == Color::white ? g.label[u] : 0, {}};
    std::vector<int> around;
    if (parent_flag < 0) {
      int f = g.f0;
      do {
        around.push_back(f);
        f = g.successor(f);
      } while (f != g.f0);
    } else {
      for (int f = g.successor(parent_flag); f != parent_flag; f = g.successor(f)) around.push_back(f);
    }
    for (int h : around) n.children.push_back(build(g.delta[g.iota[h]], g.iota[h]));
    return n;
  };
  PlanarNode root = build(g.delta[g.f0], -1);
  return BWTree::from_node(PlanarNode::black({root}));
}

RibbonGraph ribbon_of_tree_flags(const RibbonGraph& tau) {
  tau.validate();
  const int F = tau.flags();
  std::vector<int> inv_next(F);
  for (int f = 0; f < F; ++f) inv_next[tau.next[f]] = f;
  std::vector<int> black_index(tau.vertices, -1);
  int nb = 0;
  for (int v = 0; v < tau.vertices; ++v)
    if (tau.color[v] != Color::white) black_index[v] = nb++;
  auto is_black = [&](int f) { return tau.color[tau.delta[f]] != Color::white; };

  RibbonGraph g;
  g.vertices = nb;
  g.f0 = tau.f0;
  g.iota.resize(F);
  g.delta.resize(F);
  g.next.resize(F);
  g.cycle_label.resize(F);
  for (int f = 0; f < F; ++f) {
    if (is_black(f)) {
      g.delta[f] = black_index[tau.delta[f]];
      g.iota[f] = tau.next[f];
      g.next[f] = tau.next[tau.next[f]];
      g.cycle_label[f] = 0;
    } else {
      g.delta[f] = black_index[tau.delta[tau.iota[f]]];
      g.iota[f] = inv_next[f];
      g.next[f] = tau.iota[inv_next[f]];
      g.cycle_label[f] = tau.label[tau.delta[f]];
    }
  }
  g.validate();
  return g;
}

RibbonGraph tree_flags_of_ribbon(const RibbonGraph& gamma) {
  if (!gamma.marked_spineless_treelike()) throw InputError("ribbon graph is not marked spineless treelike");
  const int F = gamma.flags();
  auto cyc = gamma.cycle_of_flag();
  const int c0 = cyc[gamma.f0];
  std::vector<int> inv_next(F);
  for (int f = 0; f < F; ++f) inv_next[gamma.next[f]] = f;
  std::map<int, int> white_of_cycle;
  for (int f = 0; f < F; ++f)
    if (cyc[f] != c0 && !white_of_cycle.count(cyc[f])) {
      int id = gamma.vertices + static_cast<int>(white_of_cycle.size());
      white_of_cycle[cyc[f]] = id;
    }
  RibbonGraph t;
  t.vertices = gamma.vertices + static_cast<int>(white_of_cycle.size());
  t.f0 = gamma.f0;
  t.iota.resize(F);
  t.delta.resize(F);
  t.next.resize(F);
  t.color.assign(t.vertices, Color::black);
  t.label.assign(t.vertices, 0);
  for (int f = 0; f < F; ++f) {
    if (cyc[f] == c0) {
      t.delta[f] = gamma.delta[f];
      t.iota[f] = gamma.next[gamma.iota[f]];
      t.next[f] = gamma.iota[f];
    } else {
      int w = white_of_cycle[cyc[f]];
      t.delta[f] = w;
      t.iota[f] = gamma.iota[inv_next[f]];
      t.next[f] = gamma.next[gamma.iota[f]];
      t.color[w] = Color::white;
      if (gamma.cycle_label.empty()) throw InputError("ribbon graph lacks cycle labels");
      t.label[w] = gamma.cycle_label[f];
    }
  }
  t.validate();
  // renumber vertices in preorder, the numbering tree_flags uses
  std::vector<int> order(t.vertices, -1);
  int next_id = 0;
  std::function<void(int, int)> visit = [&](int u, int parent_flag) {
    order[u] = next_id++;
    int start = parent_flag < 0 ? t.f0 : t.successor(parent_flag);
    int stop = parent_flag < 0 ? t.f0 : parent_flag;
    int f = start;
    do {
      if (f == stop && parent_flag >= 0) break;
      visit(t.delta[t.iota[f]], t.iota[f]);
      f = t.successor(f);
    } while (f != stop);
  };
  visit(t.delta[t.f0], -1);
  RibbonGraph r = t;
  for (int f = 0; f < F; ++f) r.delta[f] = order[t.delta[f]];
  for (int v = 0; v < t.vertices; ++v) {
    r.color[order[v]] = t.color[v];
    r.label[order[v]] = t.label[v];
  }
  return r;
}

RibbonGraph ribbon_from_tree(const BWTree& t) {
  if (!t.bipartite() || !t.no_tails()) throw InputError("tree is not a bipartite tree without tails");
  return ribbon_of_tree_flags(tree_flags(t));
}

BWTree dual_tree(const RibbonGraph& gamma) { return tree_from_flags(tree_flags_of_ribbon(gamma)); }

namespace {

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
    if (used != s.size()) throw InputError("");
    return v;
  } catch (...) {
    throw InputError("expected an integer, got '" + s + "'");
  }
}

}  // namespace

RibbonGraph read_ribbon(const std::string& text) {
  RibbonGraph g;
  int F = -1;
  std::istringstream in(text);
  auto read_ints = [&](const std::vector<std::string>& w) {
    std::vector<int> v;
    for (std::size_t j = 1; j < w.size(); ++j) v.push_back(to_int(w[j]));
    if (static_cast<int>(v.size()) != F) throw InputError("'" + w[0] + "' needs one entry per flag");
    return v;
  };
  for (std::string line; std::getline(in, line);) {
    auto w = words(line);
    if (w.empty() || w[0][0] == '#') continue;
    if (w[0] == "flags" && w.size() == 2) F = to_int(w[1]);
    else if (F < 0) throw InputError("ribbon file must start with 'flags F'");
    else if (w[0] == "f0" && w.size() == 2) g.f0 = to_int(w[1]);
    else if (w[0] == "iota") g.iota = read_ints(w);
    else if (w[0] == "delta") g.delta = read_ints(w);
    else if (w[0] == "next") g.next = read_ints(w);
    else if (w[0] == "cycle-label") g.cycle_label = read_ints(w);
    else if (w[0] == "mu") {
      if (static_cast<int>(w.size()) != F + 1) throw InputError("'mu' needs one entry per flag");
      for (std::size_t j = 1; j < w.size(); ++j) g.mu.push_back(parse_rational(w[j]));
    } else throw InputError("unknown ribbon line '" + line + "'");
  }
  if (F <= 0 || g.iota.empty() || g.delta.empty() || g.next.empty()) throw InputError("incomplete ribbon graph");
  g.vertices = *std::max_element(g.delta.begin(), g.delta.end()) + 1;
  g.validate();
  return g;
}

std::string write_ribbon(const RibbonGraph& g) {
  std::ostringstream out;
  auto row = [&](const char* name, const std::vector<int>& v) {
    out << name;
    for (int x : v) out << ' ' << x;
    out << '\n';
  };
  out << "flags " << g.flags() << "\nf0 " << g.f0 << '\n';
  row("iota", g.iota);
  row("delta", g.delta);
  row("next", g.next);
  if (!g.cycle_label.empty()) row("cycle-label", g.cycle_label);
  if (!g.mu.empty()) {
    out << "mu";
    for (const auto& q : g.mu) out << ' ' << to_string(q);
    out << '\n';
  }
  return out.str();
}

// ================================================================ S1 graphs

void S1Graph::validate() const {
  if (radius <= 0) throw InputError("S1 graph radius must be positive");
  if (theta.empty() || theta[0] != 0) throw InputError("S1 graph needs theta_0 = 0");
  for (std::size_t j = 1; j < theta.size(); ++j)
    if (theta[j] <= theta[j - 1] || theta[j] >= 1) throw InputError("marked points must increase within [0,1)");
}

std::vector<Rat> S1Graph::metric() const {
  std::vector<Rat> out;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    Rat end = j + 1 < theta.size() ? theta[j + 1] : Rat(1);
    out.push_back((end - theta[j]) * radius);
  }
  return out;
}

S1Glue glue_s1(const S1Graph& s, const S1Graph& sp) {
  s.validate();
  sp.validate();
  S1Glue g;
  g.graph.radius = s.radius;
  std::vector<Rat> all = s.theta;
  for (std::size_t j = 1; j < sp.theta.size(); ++j) {
    if (std::binary_search(s.theta.begin(), s.theta.end(), sp.theta[j])) ++g.coincident;
    else all.push_back(sp.theta[j]);
  }
  std::sort(all.begin(), all.end());
  g.graph.theta = std::move(all);
  return g;
}

int lobe_base_flag(const RibbonGraph& g, int lobe) {
  if (g.cycle_label.empty()) throw InputError("ribbon graph lacks cycle labels");
  int f = g.f0;
  do {
    if (g.cycle_label[g.iota[f]] == lobe) return g.next[g.iota[f]];
    f = g.next[f];
  } while (f != g.f0);
  throw InputError("no lobe labelled " + std::to_string(lobe));
}

SubGlue glue_sub(const RibbonGraph& g0, int lobe, const S1Graph& sp) {
  sp.validate();
  if (g0.mu.empty()) throw InputError("gluing needs a metric");
  SubGlue out{g0, 0};
  RibbonGraph& g = out.graph;
  const int base = lobe_base_flag(g, lobe);
  Rat length = 0;
  for (int f = base;;) {
    length += g.mu[f];
    f = g.next[f];
    if (f == base) break;
  }
  for (std::size_t j = 1; j < sp.theta.size(); ++j) {
    const Rat p = sp.theta[j] * length;
    Rat s = 0;
    int f = base;
    while (!(s + g.mu[f] > p)) {
      s += g.mu[f];
      f = g.next[f];
    }
    if (s == p) {
      ++out.coincident;
      continue;
    }
    // subdivide the edge {f, iota f} at offset p - s
    const int fi = g.iota[f];
    const int a = g.flags(), c = a + 1, v = g.vertices++;
    const int n_f = g.next[f], n_fi = g.next[fi];
    const Rat m = g.mu[f];
    g.iota.push_back(f);
    g.iota.push_back(fi);
    g.iota[f] = a;
    g.iota[fi] = c;
    g.delta.push_back(v);
    g.delta.push_back(v);
    g.next.push_back(n_fi);
    g.next.push_back(n_f);
    g.next[f] = c;
    g.next[fi] = a;
    g.cycle_label.push_back(g.cycle_label[fi]);
    g.cycle_label.push_back(g.cycle_label[f]);
    g.mu[f] = p - s;
    g.mu[fi] = m - (p - s);
    g.mu.push_back(p - s);
    g.mu.push_back(m - (p - s));
  }
  g.validate();
  return out;
}

// ==================================================================== cacti

namespace {

// Tree with arc lengths, used while building glued cacti.
struct MNode {
  Color color = Color::black;
  int label = 0;
  Rat arc = 0;
  std::vector<MNode> ch;
};

void flatten(const MNode& n, PlanarNode& p, std::vector<Rat>& arcs) {
  p = PlanarNode{n.color, n.label, {}};
  arcs.push_back(n.arc);
  for (const auto& c : n.ch) {
    p.children.emplace_back();
    flatten(c, p.children.back(), arcs);
  }
}

SpinelessCactus from_mnode(const MNode& root) {
  PlanarNode p;
  std::vector<Rat> arcs;
  flatten(root, p, arcs);
  for (std::size_t j = 0; j < 2 && j < arcs.size(); ++j) arcs[j] = 0;
  return SpinelessCactus::make(BWTree::from_node(p), std::move(arcs));
}

MNode to_mnode(const SpinelessCactus& c, int v, const Rat& scale, const std::function<int(int)>& relabel) {
  MNode n{c.type[v].color, c.type[v].color == Color::white ? relabel(c.type[v].label) : 0,
          v >= 2 ? c.arc[v] * scale : Rat(0), {}};
  for (int ch : c.type[v].children) n.ch.push_back(to_mnode(c, ch, scale, relabel));
  return n;
}

std::uint64_t next_random(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  return mix_seed(state, 0);
}

}  // namespace

SpinelessCactus SpinelessCactus::make(BWTree type, std::vector<Rat> arcs) {
  SpinelessCactus c{std::move(type), std::move(arcs)};
  c.validate();
  return c;
}

void SpinelessCactus::validate() const {
  if (!type.bipartite() || !type.no_tails()) throw InputError("cactus type must be a bipartite tree without tails");
  if (static_cast<int>(arc.size()) != type.size()) throw InputError("one arc length per edge required");
  for (int e = 2; e < type.size(); ++e)
    if (arc[e] <= 0) throw InputError("arc lengths must be positive");
}

Rat SpinelessCactus::lobe_length(int label) const {
  int w = type.white_vertex(label);
  Rat r = arc[w];
  for (int d : type[w].children) r += arc[d];
  return r;
}

Rat SpinelessCactus::outside_length() const {
  Rat r = 0;
  for (int e = 2; e < type.size(); ++e) r += arc[e];
  return r;
}

bool SpinelessCactus::normalized() const {
  for (int l = 1; l <= type.lobes(); ++l)
    if (lobe_length(l) != 1) return false;
  return true;
}

Rat SpinelessCactus::position_on_lobe(int black) const {
  int w = type[black].parent;
  if (w < 0 || type[w].color != Color::white) throw InputError("not a black vertex on a lobe");
  Rat p = arc[w];
  for (int d : type[w].children) {
    if (d == black) return p;
    p += arc[d];
  }
  return p;
}

std::string SpinelessCactus::str() const {
  std::string s = type.str() + "\n";
  for (int e = 2; e < type.size(); ++e) s += "arc " + std::to_string(e - 1) + " " + to_string(arc[e]) + "\n";
  return s;
}

SpinelessCactus read_cactus(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<BWTree> type;
  std::vector<std::optional<Rat>> given;
  while (std::getline(in, line)) {
    auto w = words(line);
    if (w.empty() || w[0][0] == '#') continue;
    if (!type) {
      type = BWTree::parse(line);
      given.assign(type->size(), std::nullopt);
      continue;
    }
    if (w[0] != "arc" || w.size() != 3) throw InputError("expected 'arc <edge> <p/q>', got '" + line + "'");
    int k = to_int(w[1]);
    if (k < 1 || k + 1 >= type->size())
      throw InputError("arc index " + w[1] + " out of range 1.." + std::to_string(type->size() - 2));
    if (given[k + 1]) throw InputError("arc " + w[1] + " given twice");
    given[k + 1] = parse_rational(w[2]);
  }
  if (!type) throw InputError("empty cactus file");
  std::vector<Rat> arcs(type->size(), Rat(0));
  for (int e = 2; e < type->size(); ++e) {
    if (!given[e]) throw InputError("missing arc " + std::to_string(e - 1));
    arcs[e] = *given[e];
  }
  return SpinelessCactus::make(*type, std::move(arcs));
}

RibbonGraph cactus_ribbon(const SpinelessCactus& c) {
  c.validate();
  RibbonGraph g = ribbon_from_tree(c.type);
  g.mu.assign(g.flags(), Rat(0));
  for (int e = 2; e < c.type.size(); ++e) {
    // the flag of edge e at its black end
    int fb = c.type[e].color == Color::white ? 2 * (e - 2) : 2 * (e - 2) + 1;
    g.mu[fb] = c.arc[e];
    g.mu[g.iota[fb]] = c.arc[e];
  }
  g.validate();
  return g;
}

ChordDiagram chord_diagram(const SpinelessCactus& c) {
  ChordDiagram d;
  Rat t = 0;
  auto emit = [&](int start, int lobe, const Rat& len) {
    d.theta.push_back(t);
    d.vertex.push_back(start);
    d.lobe.push_back(lobe);
    d.length.push_back(len);
    t += len;
  };
  std::function<void(int)> walk_black;
  std::function<void(int)> walk_lobe = [&](int w) {
    const int lab = c.type[w].label;
    emit(c.type[w].parent, lab, c.arc[w]);
    for (int x : c.type[w].children) {
      walk_black(x);
      emit(x, lab, c.arc[x]);
    }
  };
  walk_black = [&](int b) {
    for (int w : c.type[b].children) walk_lobe(w);
  };
  walk_black(1);
  return d;
}

SpinelessCactus cactus_from_chords(const ChordDiagram& d) {
  const std::size_t A = d.theta.size();
  if (A == 0 || d.vertex.size() != A || d.lobe.size() != A || d.length.size() != A)
    throw InputError("malformed chord diagram");
  // nodes: index 0 is the base black vertex
  struct Node {
    Color color;
    int label;
    Rat arc;
    std::vector<int> ch;
  };
  std::vector<Node> nodes{{Color::black, 0, 0, {}}};
  std::map<int, int> node_of_vertex{{d.vertex[0], 0}};
  std::map<int, int> white_of_lobe, base_of_lobe;
  std::vector<int> stack;
  for (std::size_t a = 0; a < A; ++a) {
    const int x = d.vertex[a], L = d.lobe[a];
    auto xv = node_of_vertex.find(x);
    if (xv == node_of_vertex.end()) throw InputError("chord diagram visits an unknown point");
    if (!white_of_lobe.count(L)) {
      int w = static_cast<int>(nodes.size());
      nodes.push_back({Color::white, L, d.length[a], {}});
      nodes[xv->second].ch.push_back(w);
      white_of_lobe[L] = w;
      base_of_lobe[L] = x;
      stack.push_back(L);
    } else {
      if (stack.empty() || stack.back() != L) throw InputError("chord diagram is not treelike");
      nodes[xv->second].arc = d.length[a];
    }
    const int y = d.vertex[(a + 1) % A];
    if (y == base_of_lobe[L]) {
      stack.pop_back();
    } else {
      if (node_of_vertex.count(y)) throw InputError("chord diagram revisits a point inside a lobe");
      int b = static_cast<int>(nodes.size());
      nodes.push_back({Color::black, 0, 0, {}});
      nodes[white_of_lobe[L]].ch.push_back(b);
      node_of_vertex[y] = b;
    }
  }
  if (!stack.empty()) throw InputError("chord diagram leaves a lobe open");
  std::function<MNode(int)> build = [&](int i) {
    MNode m{nodes[i].color, nodes[i].label, nodes[i].arc, {}};
    for (int c : nodes[i].ch) m.ch.push_back(build(c));
    return m;
  };
  MNode root{Color::black, 0, 0, {build(0)}};
  return from_mnode(root);
}

GlueMode parse_glue_mode(const std::string& s) {
  if (s == "normalized") return GlueMode::normalized;
  if (s == "right" || s == "right-scaled") return GlueMode::right;
  if (s == "left" || s == "left-scaled") return GlueMode::left;
  if (s == "symmetric") return GlueMode::symmetric;
  throw InputError("unknown glue mode '" + s + "' (normalized, right, left, symmetric)");
}

std::string to_string(GlueMode m) {
  switch (m) {
    case GlueMode::normalized: return "normalized";
    case GlueMode::right: return "right";
    case GlueMode::left: return "left";
    case GlueMode::symmetric: return "symmetric";
  }
  return "?";
}

CactusGlue glue_cacti(const SpinelessCactus& c, int i, const SpinelessCactus& cp, GlueMode mode) {
  c.validate();
  cp.validate();
  const int n = c.type.lobes(), m = cp.type.lobes();
  if (i < 1 || i > n) throw InputError("lobe index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
  const int vi = c.type.white_vertex(i);
  const Rat ri = c.lobe_length(i), R = cp.outside_length();
  Rat lam, lamp, kappa;  // scale of c, scale of cp, lobe i -> outside of cp
  switch (mode) {
    case GlueMode::normalized: lam = 1; lamp = 1; kappa = R / ri; break;
    case GlueMode::right: lam = 1; lamp = ri / R; kappa = 1; break;
    case GlueMode::left: lam = R / ri; lamp = 1; kappa = R / ri; break;
    case GlueMode::symmetric: lam = R; lamp = ri; kappa = R; break;
  }
  auto c_label = [&](int l) { return l > i ? l + m - 1 : l; };
  auto p_label = [&](int l) { return l + i - 1; };

  // inserted points: black children of lobe i, with their hanging lobes
  struct Point {
    Rat pos;
    std::vector<MNode> hanging;
  };
  std::vector<Point> pts;
  for (int d : c.type[vi].children) {
    Point p{c.position_on_lobe(d) * kappa, {}};
    for (int w : c.type[d].children) p.hanging.push_back(to_mnode(c, w, lam, c_label));
    pts.push_back(std::move(p));
  }
  std::size_t q = 0;
  Rat t = 0;
  int merged = 0;

  std::function<MNode(int)> walk_black;
  std::function<MNode(int)> walk_white = [&](int w) {
    MNode node{Color::white, p_label(cp.type[w].label), 0, {}};
    // arc after `edge`, landing new black vertices strictly inside it
    auto run_arc = [&](Rat& edge_arc, const Rat& len) {
      const Rat start = t, end = t + len;
      Rat last = start;
      Rat* prev = &edge_arc;
      std::vector<MNode> born;
      while (q < pts.size() && pts[q].pos < end) {
        if (pts[q].pos <= start) throw InputError("internal: point behind the walk");
        *prev = pts[q].pos - last;
        MNode b{Color::black, 0, 0, std::move(pts[q].hanging)};
        born.push_back(std::move(b));
        last = pts[q].pos;
        prev = nullptr;
        ++q;
        // the new vertex's own arc is filled in by the next split or the end
        prev = &born.back().arc;
      }
      *prev = end - last;
      t = end;
      return born;
    };
    std::vector<MNode> born = run_arc(node.arc, cp.arc[w] * lamp);
    for (auto& b : born) node.ch.push_back(std::move(b));
    for (int x : cp.type[w].children) {
      node.ch.push_back(walk_black(x));
      MNode& xb = node.ch.back();
      born = run_arc(xb.arc, cp.arc[x] * lamp);
      for (auto& b : born) node.ch.push_back(std::move(b));
    }
    return node;
  };
  walk_black = [&](int b) {
    MNode node{Color::black, 0, 0, {}};
    auto visit = [&] {
      while (q < pts.size() && pts[q].pos == t) {
        ++merged;
        for (auto& h : pts[q].hanging) node.ch.push_back(std::move(h));
        ++q;
      }
    };
    const auto& ch = cp.type[b].children;
    for (std::size_t j = 0; j < ch.size(); ++j) {
      if (t > 0) visit();
      node.ch.push_back(walk_white(ch[j]));
    }
    if (b != 1) visit();
    return node;
  };
  MNode inner = walk_black(1);
  if (q != pts.size()) throw InputError("internal: points left after gluing");

  std::function<MNode(int)> build = [&](int v) {
    MNode node{c.type[v].color, c.type[v].color == Color::white ? c_label(c.type[v].label) : 0,
               v >= 2 ? c.arc[v] * lam : Rat(0), {}};
    for (int ch : c.type[v].children) {
      if (ch == vi) {
        for (auto& x : inner.ch) node.ch.push_back(std::move(x));
      } else {
        node.ch.push_back(build(ch));
      }
    }
    return node;
  };
  MNode root = build(0);
  return {from_mnode(root), merged};
}

std::vector<Rat> scaling_compose(const std::vector<Rat>& r, int i, const std::vector<Rat>& rp) {
  if (i < 1 || i > static_cast<int>(r.size())) throw InputError("scaling index out of range");
  Rat R = 0;
  for (const auto& x : rp) {
    if (x <= 0) throw InputError("scaling entries must be positive");
    R += x;
  }
  for (const auto& x : r)
    if (x <= 0) throw InputError("scaling entries must be positive");
  std::vector<Rat> out(r.begin(), r.begin() + (i - 1));
  for (const auto& x : rp) out.push_back(r[i - 1] / R * x);
  out.insert(out.end(), r.begin() + i, r.end());
  return out;
}

SpinelessCactus random_normalized_cactus(int n, std::uint64_t& state, int denominator) {
  std::size_t total = 0;
  for (int k = 0; k < n; ++k) total += enumerate_literals(n, k).size();
  std::size_t pick = next_random(state) % total;
  std::string lit;
  for (int k = 0; k < n; ++k) {
    const auto& l = enumerate_literals(n, k);
    if (pick < l.size()) {
      lit = l[pick];
      break;
    }
    pick -= l.size();
  }
  BWTree t = BWTree::parse(lit);
  std::vector<Rat> arcs(t.size(), Rat(0));
  for (int w : t.whites()) {
    std::vector<int> members{w};
    for (int d : t[w].children) members.push_back(d);
    std::vector<long> weight;
    long sum = 0;
    for (std::size_t j = 0; j < members.size(); ++j) {
      weight.push_back(1 + static_cast<long>(next_random(state) % static_cast<std::uint64_t>(denominator)));
      sum += weight.back();
    }
    for (std::size_t j = 0; j < members.size(); ++j) arcs[members[j]] = Rat(weight[j], sum);
  }
  for (auto& a : arcs) a.canonicalize();
  return SpinelessCactus::make(std::move(t), std::move(arcs));
}

// ========================================================== cell complex

CellComplex build_cell_complex(int n, int threads) {
  if (n < 1) throw InputError("n must be positive");
  CellComplex cx;
  cx.n = n;
  for (int k = 0; k < n; ++k) cx.cells.push_back(enumerate_literals(n, k));
  cx.boundary.resize(n);
  for (int k = 1; k < n; ++k) {
    const auto& src = cx.cells[k];
    const auto& dst = cx.cells[k - 1];
    std::unordered_map<std::string, int> index;
    for (std::size_t j = 0; j < dst.size(); ++j) index.emplace(dst[j], static_cast<int>(j));
    SparseIntMatrix b(src.size(), dst.size());
    const int T = std::max(1, threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < T; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < src.size(); r += T) {
          const TreeChain d = differential(BWTree::parse(src[r]));
          for (const auto& [lit, c] : d.terms()) b.add(static_cast<int>(r), index.at(lit), c);
        }
      });
    for (auto& th : pool) th.join();
    cx.boundary[k] = std::move(b);
  }
  return cx;
}

std::vector<HomologyRow> homology(const CellComplex& cx, int threads) {
  const int n = cx.n;
  std::vector<std::size_t> qrank(n + 1, 0), zrank(n + 1, 0);
  std::vector<std::vector<Int>> factors(n + 1);
  std::vector<std::thread> pool;
  std::vector<int> jobs;
  for (int k = 1; k < n; ++k) jobs.push_back(k);
  const int T = std::max(1, threads);
  for (int w = 0; w < T; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t j = w; j < jobs.size(); j += T) {
        int k = jobs[j];
        qrank[k] = rank_rational(cx.boundary[k]);
        auto s = smith_form(cx.boundary[k]);
        zrank[k] = s.rank;
        factors[k] = s.invariant_factors;
      }
    });
  for (auto& th : pool) th.join();
  std::vector<HomologyRow> rows;
  for (int k = 0; k < n; ++k) {
    HomologyRow r;
    r.k = k;
    r.cells = cx.cells[k].size();
    r.rank = qrank[k];
    r.betti = r.cells - qrank[k] - qrank[k + 1];
    r.torsion = factors[k + 1];
    r.snf_agrees = qrank[k] == zrank[k] && qrank[k + 1] == zrank[k + 1];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string homology_table(const std::vector<HomologyRow>& rows, int n) {
  std::ostringstream out;
  out << "n k cells rank betti torsion\n";
  for (const auto& r : rows) {
    out << n << ' ' << r.k << ' ' << r.cells << ' ' << r.rank << ' ' << r.betti << ' ';
    if (r.torsion.empty()) out << '-';
    for (std::size_t j = 0; j < r.torsion.size(); ++j) out << (j ? "," : "") << r.torsion[j];
    out << '\n';
  }
  return out.str();
}

// ================================================ cell composition check

std::optional<std::pair<SpinelessCactus, SpinelessCactus>> decompose(const SpinelessCactus& c, int i, int m) {
  const BWTree& t = c.type;
  const int N = t.lobes();
  if (i < 1 || m < 1 || i + m - 1 > N) return std::nullopt;
  auto in_s = [&](int v) { return t[v].color == Color::white && t[v].label >= i && t[v].label <= i + m - 1; };
  int beta = -1;
  for (int v = 0; v < t.size(); ++v) {
    if (!in_s(v)) continue;
    int p = t[v].parent;
    if (t[p].parent >= 0 && in_s(t[p].parent)) continue;
    if (beta >= 0 && beta != p) return std::nullopt;
    beta = p;
  }
  if (beta < 0) return std::nullopt;
  std::vector<int> block;
  const auto& bch = t[beta].children;
  for (std::size_t k = 0; k < bch.size(); ++k)
    if (in_s(bch[k])) block.push_back(static_cast<int>(k));
  for (std::size_t k = 1; k < block.size(); ++k)
    if (block[k] != block[k - 1] + 1) return std::nullopt;
  auto kind = [&](int d) {  // 1 all S, 0 none, -1 mixed
    bool any = false, all = true;
    for (int x : t[d].children) {
      any = any || in_s(x);
      all = all && in_s(x);
    }
    return all ? 1 : (any ? -1 : 0);
  };
  for (int v = 0; v < t.size(); ++v)
    if (in_s(v))
      for (int d : t[v].children)
        if (kind(d) < 0) return std::nullopt;

  // the inserted cactus: S lobes, dropping points that carry only other lobes
  std::vector<Rat> drop_time;
  Rat time = 0;
  std::function<MNode(int)> ext_white = [&](int w) {
    MNode node{Color::white, t[w].label - (i - 1), c.arc[w], {}};
    Rat* open = &node.arc;
    time += c.arc[w];
    for (int d : t[w].children) {
      if (kind(d) == 1) {
        MNode b{Color::black, 0, c.arc[d], {}};
        for (int x : t[d].children) b.ch.push_back(ext_white(x));
        node.ch.push_back(std::move(b));
        open = &node.ch.back().arc;
      } else {
        drop_time.push_back(time);
        *open += c.arc[d];
      }
      time += c.arc[d];
    }
    return node;
  };
  MNode b1{Color::black, 0, 0, {}};
  for (int k : block) b1.ch.push_back(ext_white(bch[k]));
  SpinelessCactus inner = from_mnode(MNode{Color::black, 0, 0, {std::move(b1)}});
  const Rat R = inner.outside_length();

  // the host: lobe i is the outside circle of the inner cactus, length 1
  std::vector<int> dropped;
  for (int v = 0; v < t.size(); ++v)
    if (t[v].color == Color::black && t[v].parent >= 0 && in_s(t[v].parent) && kind(v) == 0) dropped.push_back(v);
  std::function<MNode(int)> con = [&](int v) {
    MNode node{t[v].color, 0, v >= 2 ? c.arc[v] : Rat(0), {}};
    if (t[v].color == Color::white) node.label = t[v].label > i + m - 1 ? t[v].label - (m - 1) : t[v].label;
    for (std::size_t k = 0; k < t[v].children.size(); ++k) {
      int ch = t[v].children[k];
      if (v == beta && in_s(ch)) {
        if (static_cast<int>(k) != block.front()) continue;
        MNode vi{Color::white, i, drop_time.empty() ? Rat(1) : drop_time.front() / R, {}};
        for (std::size_t j = 0; j < dropped.size(); ++j) {
          MNode d = con(dropped[j]);
          Rat next = j + 1 < dropped.size() ? drop_time[j + 1] : R;
          d.arc = (next - drop_time[j]) / R;
          vi.ch.push_back(std::move(d));
        }
        node.ch.push_back(std::move(vi));
        continue;
      }
      node.ch.push_back(con(ch));
    }
    return node;
  };
  SpinelessCactus host = from_mnode(con(0));
  return std::make_pair(host, inner);
}

namespace {

std::vector<Rat> nat_coordinates(const SpinelessCactus& c) {
  std::vector<Rat> x;
  for (int e : c.type.white_edges()) x.push_back(c.arc[e]);
  return x;
}

// Move length eps from the outgoing arc of a white vertex to white edge e.
SpinelessCactus nudge(SpinelessCactus c, int e, const Rat& eps) {
  c.arc[e] += eps;
  c.arc[c.type[e].parent] -= eps;
  return c;
}

Rat min_arc(const SpinelessCactus& c) {
  Rat m = 0;
  for (int e = 2; e < c.type.size(); ++e)
    if (m == 0 || c.arc[e] < m) m = c.arc[e];
  return m;
}

}  // namespace

CellCompositionReport verify_cell_composition(int n, int m, int samples, std::uint64_t seed) {
  CellCompositionReport rep;
  std::uint64_t state = mix_seed(seed, static_cast<std::uint64_t>(n) * 131 + static_cast<std::uint64_t>(m));
  auto fail = [&](const std::string& why) {
    ++rep.failures;
    if (rep.counterexamples.size() < 5) rep.counterexamples.push_back(why);
  };
  int attempts = 0;
  while (rep.samples < samples) {
    if (++attempts > 20 * samples + 100) {
      fail("too many degenerate samples");
      break;
    }
    SpinelessCactus c = random_normalized_cactus(n, state);
    SpinelessCactus cp = random_normalized_cactus(m, state);
    const int i = 1 + static_cast<int>(next_random(state) % static_cast<std::uint64_t>(n));
    CactusGlue g = glue_cacti(c, i, cp, GlueMode::normalized);
    if (g.merged > 0) {
      ++rep.merged;
      continue;
    }
    ++rep.samples;
    const std::string tag = c.type.str() + " o_" + std::to_string(i) + " " + cp.type.str();
    if (!g.cactus.normalized()) {
      fail(tag + ": glued cactus is not normalized");
      continue;
    }
    TreeChain comp = compose(c.type, i, cp.type);
    Int coeff = comp.coefficient(g.cactus.type.str());
    if (coeff == 0) {
      fail(tag + ": type " + g.cactus.type.str() + " not in the composition");
      continue;
    }
    auto parts = decompose(g.cactus, i, m);
    if (!parts || !(parts->first == c) || !(parts->second == cp)) {
      fail(tag + ": decomposition does not reproduce the factors");
      continue;
    }
    // orientation: Jacobian of the gluing map in Nat coordinates
    const auto base = nat_coordinates(g.cactus);
    Rat eps = std::min({min_arc(c), min_arc(cp), min_arc(g.cactus)}) / (4 * (m + 1));
    RatMatrix jac(base.size());
    bool stable = true;
    auto column = [&](const SpinelessCactus& a, const SpinelessCactus& b) {
      CactusGlue h = glue_cacti(a, i, b, GlueMode::normalized);
      if (h.merged || !(h.cactus.type == g.cactus.type)) {
        stable = false;
        return;
      }
      auto x = nat_coordinates(h.cactus);
      for (std::size_t r = 0; r < base.size(); ++r) jac[r].push_back((x[r] - base[r]) / eps);
    };
    for (int e : c.type.white_edges()) column(nudge(c, e, eps), cp);
    for (int e : cp.type.white_edges()) column(c, nudge(cp, e, eps));
    if (!stable) {
      fail(tag + ": perturbation left the cell");
      continue;
    }
    Rat det = base.empty() ? Rat(1) : determinant(jac);
    int sign = det > 0 ? 1 : (det < 0 ? -1 : 0);
    if (sign == 0 || Int(sign) != coeff)
      fail(tag + ": orientation sign " + std::to_string(sign) + " vs coefficient " + coeff.str() + " for " +
           g.cactus.type.str());
  }
  return rep;
}

}  // namespace artifact
