#include "artifact/trees.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <set>

namespace artifact {

namespace {

struct Reader {
  std::string_view s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("tree literal: " + what + " at offset " + std::to_string(pos) + " in '" +
                     std::string(s) + "'");
  }
  void expect(char c) {
    skip();
    if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  int integer() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected label");
    if (pos - start > 6) fail("label too large");
    return std::stoi(std::string(s.substr(start, pos - start)));
  }

  PlanarNode node() {
    skip();
    if (pos >= s.size()) fail("unexpected end");
    char c = s[pos];
    PlanarNode n;
    if (c == 't') {
      ++pos;
      return PlanarNode::tail();
    }
    if (c == 'b') {
      ++pos;
      n.color = Color::black;
    } else if (c == 'w') {
      ++pos;
      n.color = Color::white;
      n.label = integer();
      if (n.label <= 0) fail("labels must be positive");
    } else {
      fail(std::string("unexpected '") + c + "'");
    }
    expect('[');
    for (;;) {
      skip();
      if (pos >= s.size()) fail("unterminated '['");
      if (s[pos] == ']') {
        ++pos;
        return n;
      }
      n.children.push_back(node());
    }
  }
};

void serialize_into(const PlanarNode& n, std::string& out) {
  switch (n.color) {
    case Color::tail:
      out += 't';
      return;
    case Color::black:
      out += "b[";
      break;
    case Color::white:
      out += 'w';
      out += std::to_string(n.label);
      out += '[';
      break;
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += ' ';
    serialize_into(n.children[i], out);
  }
  out += ']';
}

}  // namespace

std::string serialize(const PlanarNode& n) {
  std::string out;
  serialize_into(n, out);
  return out;
}

void BWTree::index(const PlanarNode& root) {
  v_.clear();
  white_edges_.clear();
  lobes_ = 0;
  struct Frame {
    const PlanarNode* node;
    int parent;
  };
  std::vector<Frame> stack{{&root, -1}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    int id = static_cast<int>(v_.size());
    v_.push_back({f.node->color, f.node->label, f.parent, {}});
    if (f.parent >= 0) {
      v_[f.parent].children.push_back(id);
      if (v_[f.parent].color == Color::white) white_edges_.push_back(id);
    }
    if (f.node->color == Color::white) ++lobes_;
    for (auto it = f.node->children.rbegin(); it != f.node->children.rend(); ++it) stack.push_back({&*it, id});
  }
  text_ = serialize(root);
}

BWTree BWTree::from_node(const PlanarNode& root, bool planted) {
  if (root.color != Color::black || (planted && root.children.size() != 1))
    throw InputError("planted tree needs a black root with exactly one child");
  BWTree t;
  t.index(root);
  return t;
}

BWTree BWTree::parse(std::string_view text, TreeClass cls) {
  Reader r{text};
  PlanarNode root = r.node();
  r.skip();
  if (r.pos != text.size()) r.fail("trailing characters");
  BWTree t = from_node(root);
  std::vector<int> labels;
  for (const auto& v : t.v_)
    if (v.color == Color::white) labels.push_back(v.label);
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != static_cast<int>(i) + 1) throw InputError("labels must be exactly 1..n in '" + std::string(text) + "'");
  if (cls == TreeClass::bipartite && !t.bipartite())
    throw InputError("tree is not planted bipartite: '" + std::string(text) + "'");
  return t;
}

PlanarNode BWTree::subtree(int v) const {
  PlanarNode n{v_[v].color, v_[v].label, {}};
  n.children.reserve(v_[v].children.size());
  for (int c : v_[v].children) n.children.push_back(subtree(c));
  return n;
}

PlanarNode BWTree::to_node() const { return subtree(0); }

int BWTree::white_vertex(int label) const {
  for (int i = 0; i < size(); ++i)
    if (v_[i].color == Color::white && v_[i].label == label) return i;
  throw InputError("no white vertex with label " + std::to_string(label));
}

std::vector<int> BWTree::whites() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (v_[i].color == Color::white) out.push_back(i);
  return out;
}

bool BWTree::bipartite() const {
  if (size() < 2 || v_[1].color != Color::black) return false;
  for (int i = 2; i < size(); ++i) {
    if (v_[i].color == Color::tail) continue;
    if (v_[i].color == v_[v_[i].parent].color) return false;
  }
  return true;
}

bool BWTree::no_tails() const {
  for (int i = 1; i < size(); ++i)
    if (v_[i].color != Color::white && v_[i].children.empty()) return false;
  return true;
}

bool BWTree::stable() const {
  for (int i = 1; i < size(); ++i)
    if (v_[i].color == Color::black && v_[i].children.size() == 1) return false;
  return true;
}

std::pair<int, int> literal_shape(std::string_view s) {
  int n = 0, k = 0;
  std::vector<char> stack;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == 'b' || c == 'w' || c == 't') {
      if (!stack.empty() && stack.back() == 'w') ++k;
      if (c == 'w') ++n;
      if (c != 't') stack.push_back(c);
    } else if (c == ']') {
      if (!stack.empty()) stack.pop_back();
    }
  }
  return {n, k};
}

std::vector<OutsideItem> outside_order(const BWTree& t) {
  std::vector<OutsideItem> out;
  for (int v = 1; v < t.size(); ++v) {
    out.push_back({true, v});
    out.push_back({false, v});
  }
  out.push_back({false, 0});
  return out;
}

std::vector<int> outside_edges(const BWTree& t) {
  std::vector<int> e(t.size() - 1);
  std::iota(e.begin(), e.end(), 1);
  return e;
}

BWTree contract_edge(const BWTree& t, int edge) {
  if (edge <= 0 || edge >= t.size()) throw InputError("invalid edge id " + std::to_string(edge));
  const int parent = t[edge].parent;
  const Vertex& c = t[edge];
  const Vertex& p = t[parent];
  if (c.color == Color::white && p.color == Color::white)
    throw InputError("cannot contract an edge between two labelled vertices");
  std::function<PlanarNode(int)> build = [&](int v) {
    PlanarNode n{t[v].color, t[v].label, {}};
    if (v == parent) {
      if (c.color == Color::white) {
        n.color = Color::white;
        n.label = c.label;
      }
      for (int ch : t[v].children) {
        if (ch == edge) {
          for (int g : c.children) n.children.push_back(build(g));
        } else {
          n.children.push_back(build(ch));
        }
      }
    } else {
      for (int ch : t[v].children) n.children.push_back(build(ch));
    }
    return n;
  };
  return BWTree::from_node(build(0), false);
}

BWTree branch(const BWTree& t, int edge) {
  if (edge <= 1 || edge >= t.size()) throw InputError("invalid edge id " + std::to_string(edge));
  if (!t.is_white_edge(edge)) throw InputError("branch expects a white edge");
  return BWTree::from_node(PlanarNode::black({t.subtree(edge)}));
}

std::pair<BWTree, std::vector<BWTree>> cut(const BWTree& t, int w) {
  if (w <= 0 || w >= t.size() || t[w].color != Color::white) throw InputError("cut expects a white vertex");
  std::vector<BWTree> branches;
  for (int c : t[w].children) branches.push_back(branch(t, c));
  std::function<PlanarNode(int)> build = [&](int v) {
    PlanarNode n{t[v].color, t[v].label, {}};
    if (v != w)
      for (int ch : t[v].children) n.children.push_back(build(ch));
    return n;
  };
  return {BWTree::from_node(build(0)), std::move(branches)};
}

void for_each_white(PlanarNode& n, const std::function<void(PlanarNode&)>& f) {
  if (n.color == Color::white) f(n);
  for (auto& c : n.children) for_each_white(c, f);
}

PlanarNode relabel(PlanarNode n, const std::map<int, int>& map) {
  for_each_white(n, [&](PlanarNode& w) {
    auto it = map.find(w.label);
    if (it != map.end()) w.label = it->second;
  });
  return n;
}

// ------------------------------------------------------------ RootedTree

bool RootedTree::operator<(const RootedTree& o) const {
  std::string a = shape(), b = o.shape();
  if (a != b) return a < b;
  return str() < o.str();
}

void RootedTree::canonicalize() {
  for (auto& c : children) c.canonicalize();
  std::sort(children.begin(), children.end());
}

std::string RootedTree::str() const {
  std::string s = "r";
  if (label) s += std::to_string(label);
  s += '[';
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) s += ' ';
    s += children[i].str();
  }
  return s + ']';
}

std::string RootedTree::shape() const {
  std::string s = "r[";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) s += ' ';
    s += children[i].shape();
  }
  return s + ']';
}

int RootedTree::size() const {
  int n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

namespace {

RootedTree rooted_node(Reader& r) {
  r.skip();
  if (r.pos >= r.s.size() || r.s[r.pos] != 'r') r.fail("expected 'r'");
  ++r.pos;
  RootedTree t;
  if (r.pos < r.s.size() && std::isdigit(static_cast<unsigned char>(r.s[r.pos]))) {
    t.label = r.integer();
    if (t.label <= 0) r.fail("labels must be positive");
  }
  r.expect('[');
  for (;;) {
    r.skip();
    if (r.pos >= r.s.size()) r.fail("unterminated '['");
    if (r.s[r.pos] == ']') {
      ++r.pos;
      return t;
    }
    t.children.push_back(rooted_node(r));
  }
}

}  // namespace

RootedTree parse_rooted(std::string_view text, bool canonical) {
  Reader r{text};
  RootedTree t = rooted_node(r);
  r.skip();
  if (r.pos != text.size()) r.fail("trailing characters");
  if (canonical) t.canonicalize();
  return t;
}

std::vector<RootedTree> parse_forest(std::string_view text, bool canonical) {
  std::vector<RootedTree> forest;
  Reader r{text};
  r.skip();
  if (r.pos < text.size() && text[r.pos] == '1') {
    ++r.pos;
    r.skip();
    if (r.pos != text.size()) r.fail("trailing characters after empty forest");
    return forest;
  }
  for (;;) {
    forest.push_back(rooted_node(r));
    if (canonical) forest.back().canonicalize();
    r.skip();
    if (r.pos == text.size()) break;
    r.expect('*');
  }
  if (canonical) std::sort(forest.begin(), forest.end());
  return forest;
}

std::string forest_str(const std::vector<RootedTree>& forest) {
  if (forest.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < forest.size(); ++i) {
    if (i) s += '*';
    s += forest[i].str();
  }
  return s;
}

// ------------------------------------------------------------- TreeChain

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::nat: return "Nat";
    case Orientation::op: return "Op";
    case Orientation::lab: return "Lab";
    case Orientation::nat_rev: return "Nat-bar";
    case Orientation::op_rev: return "Op-bar";
    case Orientation::lab_rev: return "Lab-bar";
  }
  return "?";
}

void TreeChain::add(const std::string& literal, const Int& c) {
  if (c == 0) return;
  auto [n, k] = literal_shape(literal);
  add(literal, c, n, k);
}

void TreeChain::add(const std::string& literal, const Int& c, int n, int k) {
  if (c == 0) return;
  if (lobes_ < 0) {
    lobes_ = n;
    degree_ = k;
  } else if (n != lobes_ || k != degree_) {
    throw InputError("inhomogeneous chain: '" + literal + "' has (n,k)=(" + std::to_string(n) + "," +
                     std::to_string(k) + "), chain has (" + std::to_string(lobes_) + "," +
                     std::to_string(degree_) + ")");
  }
  auto [it, inserted] = terms_.try_emplace(literal, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TreeChain& TreeChain::operator+=(const TreeChain& o) {
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

TreeChain& TreeChain::operator-=(const TreeChain& o) {
  for (const auto& [t, c] : o.terms_) add(t, -c);
  return *this;
}

TreeChain TreeChain::scaled(const Int& c) const {
  TreeChain r;
  r.orientation = orientation;
  if (c == 0) return r;
  for (const auto& [t, x] : terms_) r.add(t, x * c);
  return r;
}

Int TreeChain::coefficient(const std::string& literal) const {
  auto it = terms_.find(literal);
  return it == terms_.end() ? Int(0) : it->second;
}

std::string TreeChain::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [t, c] : terms_) {
    if (!s.empty()) s += ' ';
    s += (c > 0 ? "+" : "") + c.str() + "*" + t;
  }
  return s;
}

TreeChain TreeChain::parse(std::string_view text) {
  TreeChain chain;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (text.substr(pos) == "0") return chain;
  while (skip(), pos < text.size()) {
    std::size_t star = text.find('*', pos);
    if (star == std::string_view::npos) throw InputError("chain literal: missing '*'");
    std::string coef(text.substr(pos, star - pos));
    if (coef.empty() || coef == "+" || coef == "-") coef += "1";
    if (coef[0] == '+') coef.erase(0, 1);
    Int c;
    try {
      c = Int(coef);
    } catch (...) {
      throw InputError("chain literal: bad coefficient '" + coef + "'");
    }
    pos = star + 1;
    std::size_t start = pos;
    int depth = 0;
    bool opened = false;
    while (pos < text.size()) {
      char ch = text[pos++];
      if (ch == '[') {
        ++depth;
        opened = true;
      } else if (ch == ']') {
        if (--depth == 0 && opened) break;
      }
    }
    if (depth != 0 || !opened) throw InputError("chain literal: unbalanced tree");
    BWTree t = BWTree::parse(text.substr(start, pos - start));
    chain.add(t.str(), c);
  }
  return chain;
}

// ------------------------------------------------------------ cppin et al.

namespace {

// All pinnings of a labelled rooted tree as white subtrees.
std::vector<PlanarNode> pinnings(const RootedTree& t) {
  if (t.label <= 0) throw InputError("cppin needs a fully labelled rooted tree");
  std::vector<std::vector<PlanarNode>> child_options;
  for (const auto& c : t.children) child_options.push_back(pinnings(c));
  std::vector<PlanarNode> out;
  std::vector<int> order(t.children.size());
  std::iota(order.begin(), order.end(), 0);
  do {
    // product over the children's own pinnings
    std::vector<std::size_t> idx(order.size(), 0);
    for (;;) {
      PlanarNode w = PlanarNode::white(t.label);
      for (std::size_t j = 0; j < order.size(); ++j)
        w.children.push_back(PlanarNode::black({child_options[order[j]][idx[j]]}));
      out.push_back(std::move(w));
      std::size_t j = 0;
      while (j < idx.size() && ++idx[j] == child_options[order[j]].size()) idx[j++] = 0;
      if (j == idx.size()) break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

RootedTree uncppin_white(const BWTree& t, int w) {
  RootedTree r;
  r.label = t[w].label;
  for (int b : t[w].children) {
    if (t[b].color != Color::black || t[b].children.size() != 1)
      throw InputError("uncppin expects a top-dimensional cell");
    r.children.push_back(uncppin_white(t, t[b].children[0]));
  }
  return r;
}

}  // namespace

TreeChain cppin(const RootedTree& t) {
  TreeChain out;
  for (auto& w : pinnings(t)) out.add(serialize(PlanarNode::black({PlanarNode::black({std::move(w)})})), 1);
  return out;
}

RootedTree uncppin(const BWTree& t) {
  if (t[1].children.size() != 1) throw InputError("uncppin expects a top-dimensional cell");
  RootedTree r = uncppin_white(t, t[1].children[0]);
  r.canonicalize();
  return r;
}

TreeChain st_infinity(const BWTree& t) {
  TreeChain out;
  for (int v = 1; v < t.size(); ++v) {
    if (t[v].color == Color::tail || (t[v].color == Color::black && t[v].children.empty()))
      throw InputError("st_infinity expects a tree without tails");
    if (t[v].color == Color::black && t[v].children.size() > 2) return out;
  }
  // Contract black-black edges below the root edge, then separate adjacent
  // whites (and a white next to the root) by a fresh black vertex.
  std::function<std::vector<PlanarNode>(int)> contracted_children = [&](int v) {
    std::vector<PlanarNode> ch;
    for (int c : t[v].children) {
      if (v != 0 && t[v].color == Color::black && t[c].color == Color::black) {
        auto inner = contracted_children(c);
        for (auto& x : inner) ch.push_back(std::move(x));
      } else {
        PlanarNode n{t[c].color, t[c].label, contracted_children(c)};
        ch.push_back(std::move(n));
      }
    }
    return ch;
  };
  std::function<void(PlanarNode&, bool)> separate = [&](PlanarNode& n, bool is_root) {
    for (auto& c : n.children) {
      separate(c, false);
      if (c.color == Color::white && (n.color == Color::white || is_root)) c = PlanarNode::black({std::move(c)});
    }
  };
  PlanarNode root = PlanarNode::black(contracted_children(0));
  separate(root, true);
  out.add(serialize(root), 1);
  return out;
}

// ----------------------------------------------------------- enumeration

namespace {

std::vector<std::vector<int>> compositions(int n) {
  std::vector<std::vector<int>> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  for (int f = 1; f <= n; ++f)
    for (auto& r : compositions(n - f)) {
      r.insert(r.begin(), f);
      out.push_back(std::move(r));
    }
  return out;
}

std::vector<PlanarNode> shapes_white(int nw);

std::vector<PlanarNode> product_shapes(const std::vector<int>& parts, bool black_parent) {
  std::vector<std::vector<PlanarNode>> opts;
  for (int p : parts) {
    if (black_parent) {
      opts.push_back(shapes_white(p));
    } else {
      // a black child carrying p whites: compositions into white shapes
      std::vector<PlanarNode> bl;
      for (const auto& comp : compositions(p))
        for (auto& kids : product_shapes(comp, true)) bl.push_back(PlanarNode::black(std::move(kids.children)));
      opts.push_back(std::move(bl));
    }
  }
  std::vector<PlanarNode> out;
  std::vector<std::size_t> idx(parts.size(), 0);
  for (;;) {
    PlanarNode holder;
    for (std::size_t j = 0; j < parts.size(); ++j) holder.children.push_back(opts[j][idx[j]]);
    out.push_back(std::move(holder));
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] == opts[j].size()) idx[j++] = 0;
    if (j == idx.size()) break;
  }
  return out;
}

std::vector<PlanarNode> shapes_white(int nw) {
  std::vector<PlanarNode> out;
  if (nw == 1) {
    out.push_back(PlanarNode::white(0));
    return out;
  }
  for (const auto& comp : compositions(nw - 1))
    for (auto& holder : product_shapes(comp, false)) out.push_back(PlanarNode::white(0, std::move(holder.children)));
  return out;
}

void label_preorder(PlanarNode& n, const std::vector<int>& perm, std::size_t& next) {
  if (n.color == Color::white) n.label = perm[next++];
  for (auto& c : n.children) label_preorder(c, perm, next);
}

}  // namespace

const std::vector<std::string>& enumerate_literals(int n, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<std::string>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (n < 1) throw InputError("enumerate needs n >= 1");
  // fill all dimensions for this n at once
  std::map<int, std::set<std::string>> by_dim;
  for (const auto& comp : compositions(n)) {
    for (auto& holder : product_shapes(comp, true)) {
      PlanarNode shape = PlanarNode::black({PlanarNode::black(std::move(holder.children))});
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 1);
      do {
        PlanarNode t = shape;
        std::size_t next = 0;
        label_preorder(t, perm, next);
        std::string s = serialize(t);
        by_dim[literal_shape(s).second].insert(std::move(s));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  for (int d = 0; d <= std::max(n - 1, k); ++d) {
    auto& vec = cache[{n, d}];
    vec.assign(by_dim[d].begin(), by_dim[d].end());
  }
  return cache[key];
}

std::vector<BWTree> enumerate_trees(int n, std::optional<int> k) {
  std::vector<BWTree> out;
  int lo = k ? *k : 0, hi = k ? *k : n - 1;
  for (int d = lo; d <= hi; ++d)
    for (const auto& s : enumerate_literals(n, d)) out.push_back(BWTree::parse(s));
  return out;
}

std::vector<RootedTree> enumerate_rooted(int n) {
  if (n < 1) return {};
  std::vector<std::vector<RootedTree>> by_size(n + 1);
  by_size[1].push_back(RootedTree{});
  for (int m = 2; m <= n; ++m) {
    // multisets of smaller trees with total size m-1, chosen in
    // non-increasing canonical order
    std::vector<RootedTree> pool;
    for (int s = 1; s < m; ++s)
      for (const auto& t : by_size[s]) pool.push_back(t);
    std::sort(pool.begin(), pool.end());
    std::vector<int> sizes;
    for (const auto& t : pool) sizes.push_back(t.size());
    std::set<std::string> seen;
    std::vector<RootedTree> chosen;
    std::function<void(int, std::size_t)> rec = [&](int remaining, std::size_t from) {
      if (remaining == 0) {
        RootedTree r;
        r.children = chosen;
        r.canonicalize();
        if (seen.insert(r.str()).second) by_size[m].push_back(r);
        return;
      }
      for (std::size_t i = from; i < pool.size(); ++i) {
        if (sizes[i] > remaining) continue;
        chosen.push_back(pool[i]);
        rec(remaining - sizes[i], i);
        chosen.pop_back();
      }
    };
    rec(m - 1, 0);
    std::sort(by_size[m].begin(), by_size[m].end());
  }
  return by_size[n];
}

std::vector<RootedTree> enumerate_labelled_rooted(int n) {
  std::vector<RootedTree> out;
  if (n < 1) return out;
  // Pruefer sequences give the labelled free trees; every vertex may be the root.
  std::vector<std::vector<int>> trees;
  std::vector<int> seq(std::max(n - 2, 0), 1);
  for (;;) {
    std::vector<std::vector<int>> adj(n + 1);
    if (n == 2) {
      adj[1].push_back(2);
      adj[2].push_back(1);
    } else if (n > 2) {
      std::vector<int> degree(n + 1, 1);
      for (int x : seq) ++degree[x];
      for (int x : seq) {
        int leaf = 1;
        while (degree[leaf] != 1) ++leaf;
        adj[leaf].push_back(x);
        adj[x].push_back(leaf);
        --degree[leaf];
        --degree[x];
      }
      int u = 0, v = 0;
      for (int i = 1; i <= n; ++i)
        if (degree[i] == 1) (u ? v : u) = i;
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (int root = 1; root <= n; ++root) {
      std::function<RootedTree(int, int)> build = [&](int v, int from) {
        RootedTree t;
        t.label = v;
        for (int w : adj[v])
          if (w != from) t.children.push_back(build(w, v));
        return t;
      };
      RootedTree t = build(root, 0);
      t.canonicalize();
      out.push_back(std::move(t));
    }
    std::size_t j = 0;
    while (j < seq.size() && ++seq[j] > n) seq[j++] = 1;
    if (j == seq.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const RootedTree& a, const RootedTree& b) { return a.str() < b.str(); });
  return out;
}

}  // namespace artifact
