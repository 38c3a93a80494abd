#pragma once

#include "artifact/arith.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace artifact {

enum class Color : std::uint8_t { black, white, tail };

// Mutable recursive form used while building or rewriting trees.
struct PlanarNode {
  Color color = Color::black;
  int label = 0;
  std::vector<PlanarNode> children;

  static PlanarNode black(std::vector<PlanarNode> ch = {}) { return {Color::black, 0, std::move(ch)}; }
  static PlanarNode white(int label, std::vector<PlanarNode> ch = {}) { return {Color::white, label, std::move(ch)}; }
  static PlanarNode tail() { return {Color::tail, 0, {}}; }
  bool is_white() const { return color == Color::white; }
};

std::string serialize(const PlanarNode& n);

struct Vertex {
  Color color = Color::black;
  int label = 0;
  int parent = -1;
  std::vector<int> children;
};

enum class TreeClass { any, bipartite };

// A planted planar black/white tree. Vertices are stored in preorder, so
// vertex 0 is the root and the preorder index is the outside order of first
// visits. An edge is named by its upper endpoint; edge 1 is the root edge.
class BWTree {
 public:
  BWTree() = default;
  static BWTree parse(std::string_view text, TreeClass cls = TreeClass::bipartite);
  // `planted` = false admits the rooted trees produced by contracting the
  // root edge.
  static BWTree from_node(const PlanarNode& root, bool planted = true);
  PlanarNode to_node() const;
  PlanarNode subtree(int v) const;

  const std::string& str() const { return text_; }
  int size() const { return static_cast<int>(v_.size()); }
  const Vertex& operator[](int i) const { return v_[i]; }
  const std::vector<Vertex>& vertices() const { return v_; }

  int lobes() const { return lobes_; }
  // |E_w|: incoming edges of white vertices, tails included.
  int dim() const { return static_cast<int>(white_edges_.size()); }
  const std::vector<int>& white_edges() const { return white_edges_; }
  int white_vertex(int label) const;
  std::vector<int> whites() const;
  bool is_white_edge(int e) const { return e > 0 && v_[v_[e].parent].color == Color::white; }

  bool bipartite() const;
  bool no_tails() const;
  bool stable() const;

  bool operator==(const BWTree& o) const { return text_ == o.text_; }
  bool operator<(const BWTree& o) const { return text_ < o.text_; }

 private:
  void index(const PlanarNode& root);
  std::vector<Vertex> v_;
  std::vector<int> white_edges_;
  std::string text_;
  int lobes_ = 0;
};

// Lobe count and white-edge count read directly from a canonical literal.
std::pair<int, int> literal_shape(std::string_view text);

struct OutsideItem {
  bool is_edge;
  int id;  // vertex id, or edge id (= upper vertex id)
  bool operator==(const OutsideItem&) const = default;
};

// The outside path with first visits recorded: root edge first, root last.
std::vector<OutsideItem> outside_order(const BWTree& t);
std::vector<int> outside_edges(const BWTree& t);

BWTree contract_edge(const BWTree& t, int edge);
BWTree branch(const BWTree& t, int edge);
std::pair<BWTree, std::vector<BWTree>> cut(const BWTree& t, int white_vertex);

// Internal engines allow any distinct positive labels; `map` renames them.
PlanarNode relabel(PlanarNode n, const std::map<int, int>& map);
void for_each_white(PlanarNode& n, const std::function<void(PlanarNode&)>& f);

// ---------------------------------------------------------------- RootedTree

struct RootedTree {
  int label = 0;  // 0 = unlabelled
  std::vector<RootedTree> children;

  void canonicalize();
  std::string str() const;
  std::string shape() const;  // labels erased
  int size() const;
  bool operator==(const RootedTree& o) const { return str() == o.str(); }
  bool operator<(const RootedTree& o) const;
};

// `canonical` = false keeps the planar order (and the order of the forest).
RootedTree parse_rooted(std::string_view text, bool canonical = true);
std::vector<RootedTree> parse_forest(std::string_view text, bool canonical = true);
std::string forest_str(const std::vector<RootedTree>& forest);

// ----------------------------------------------------------------- TreeChain

enum class Orientation { nat, op, lab, nat_rev, op_rev, lab_rev };
std::string to_string(Orientation o);

class TreeChain {
 public:
  TreeChain() = default;
  explicit TreeChain(const BWTree& t, const Int& c = 1) { add(t.str(), c); }

  void add(const std::string& literal, const Int& c);
  void add(const BWTree& t, const Int& c) { add(t.str(), c); }
  // For callers that already know the (lobes, degree) of the literal.
  void add(const std::string& literal, const Int& c, int n, int k);
  TreeChain& operator+=(const TreeChain& o);
  TreeChain& operator-=(const TreeChain& o);
  TreeChain scaled(const Int& c) const;
  TreeChain operator+(const TreeChain& o) const { TreeChain r = *this; return r += o; }
  TreeChain operator-(const TreeChain& o) const { TreeChain r = *this; return r -= o; }

  const std::map<std::string, Int>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int lobes() const { return lobes_; }
  int degree() const { return degree_; }
  Int coefficient(const std::string& literal) const;

  Orientation orientation = Orientation::nat;

  std::string str() const;
  static TreeChain parse(std::string_view text);
  bool operator==(const TreeChain& o) const { return terms_ == o.terms_; }

 private:
  std::map<std::string, Int> terms_;
  int lobes_ = -1;
  int degree_ = -1;
};

// ------------------------------------------------------- structural maps

TreeChain cppin(const RootedTree& t);
// Inverse of cppin on a single top-cell term: contract the black edges.
RootedTree uncppin(const BWTree& t);
TreeChain st_infinity(const BWTree& t);

std::vector<BWTree> enumerate_trees(int n, std::optional<int> k = std::nullopt);
const std::vector<std::string>& enumerate_literals(int n, int k);
std::vector<RootedTree> enumerate_rooted(int n);          // unlabelled
std::vector<RootedTree> enumerate_labelled_rooted(int n);  // labels 1..n

}  // namespace artifact
