#include "artifact/tree_operad.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <numeric>

namespace artifact {

bool WeightedShuffle::valid() const {
  std::size_t nt = std::count(from_t.begin(), from_t.end(), true);
  return nt == t_weights.size() && from_t.size() - nt == s_weights.size();
}

int shuffle_sign(const WeightedShuffle& sh) {
  if (!sh.valid()) throw InputError("shuffle does not merge the two sequences");
  long long e = 0, s_after = 0;
  std::size_t si = sh.s_weights.size(), ti = sh.t_weights.size();
  for (std::size_t p = sh.from_t.size(); p-- > 0;) {
    if (sh.from_t[p]) {
      e += static_cast<long long>(sh.t_weights[--ti]) * s_after;
    } else {
      s_after += sh.s_weights[--si];
    }
  }
  return parity_sign(e);
}

namespace {

struct TreeInfo {
  std::vector<int> end;    // one past the last vertex of the subtree
  std::vector<int> depth;
  std::vector<int> nat;    // Nat index of a white edge, -1 otherwise
};

TreeInfo info(const BWTree& t) {
  TreeInfo in;
  int n = t.size();
  in.end.assign(n, 0);
  in.depth.assign(n, 0);
  in.nat.assign(n, -1);
  for (int v = n - 1; v >= 0; --v) {
    in.end[v] = v + 1;
    if (!t[v].children.empty()) in.end[v] = in.end[t[v].children.back()];
  }
  for (int v = 1; v < n; ++v) in.depth[v] = in.depth[t[v].parent] + 1;
  const auto& we = t.white_edges();
  for (std::size_t j = 0; j < we.size(); ++j) in.nat[we[j]] = static_cast<int>(j);
  return in;
}

int slot_position(const BWTree& t, const TreeInfo& in, const GraftSlot& s) {
  const auto& ch = t[s.white].children;
  return s.slot < static_cast<int>(ch.size()) ? ch[s.slot] : in.end[s.white];
}

// Calls f on every non-decreasing sequence of length r over [0, n).
void for_each_multichoice(int n, int r, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> a(r, 0);
  if (r == 0) {
    f(a);
    return;
  }
  if (n == 0) return;
  for (;;) {
    f(a);
    int j = r - 1;
    while (j >= 0 && a[j] == n - 1) --j;
    if (j < 0) return;
    int v = a[j] + 1;
    for (int q = j; q < r; ++q) a[q] = v;
  }
}

PlanarNode relabelled_node(const BWTree& t, const std::function<int(int)>& f) {
  PlanarNode n = t.to_node();
  for_each_white(n, [&](PlanarNode& w) { w.label = f(w.label); });
  return n;
}

}  // namespace

std::vector<GraftSlot> graft_slots(const BWTree& host, const std::vector<int>& whites) {
  TreeInfo in = info(host);
  std::vector<GraftSlot> slots;
  for (int w : whites)
    for (int j = 0; j <= static_cast<int>(host[w].children.size()); ++j) slots.push_back({w, j});
  std::stable_sort(slots.begin(), slots.end(), [&](const GraftSlot& a, const GraftSlot& b) {
    int pa = slot_position(host, in, a), pb = slot_position(host, in, b);
    if (pa != pb) return pa < pb;
    return in.depth[a.white] > in.depth[b.white];
  });
  return slots;
}

BWTree graft(const BWTree& host, const std::vector<BWTree>& branches, const std::vector<GraftSlot>& slots) {
  if (slots.size() != branches.size()) throw InputError("one slot per branch required");
  std::map<std::pair<int, int>, std::vector<int>> at;
  for (std::size_t j = 0; j < slots.size(); ++j) {
    const auto& s = slots[j];
    if (s.white <= 0 || s.white >= host.size() || host[s.white].color != Color::white ||
        s.slot < 0 || s.slot > static_cast<int>(host[s.white].children.size()))
      throw InputError("invalid grafting slot");
    at[{s.white, s.slot}].push_back(static_cast<int>(j));
  }
  std::function<PlanarNode(int)> build = [&](int v) {
    PlanarNode n{host[v].color, host[v].label, {}};
    const auto& ch = host[v].children;
    for (std::size_t j = 0; j <= ch.size(); ++j) {
      auto it = at.find({v, static_cast<int>(j)});
      if (it != at.end())
        for (int b : it->second) n.children.push_back(branches[b].subtree(1));
      if (j < ch.size()) n.children.push_back(build(ch[j]));
    }
    return n;
  };
  return BWTree::from_node(build(0));
}

WeightedShuffle graft_shuffle(const BWTree& host, const std::vector<BWTree>& branches,
                              const std::vector<GraftSlot>& slots) {
  TreeInfo in = info(host);
  // branches sorted by their place along the outside path; ties keep order
  std::vector<std::pair<int, int>> pos;  // (host preorder position, branch)
  for (std::size_t j = 0; j < slots.size(); ++j) pos.push_back({slot_position(host, in, slots[j]), static_cast<int>(j)});
  WeightedShuffle sh;
  for (std::size_t j = 0; j < pos.size(); ++j) {
    if (j && pos[j].first < pos[j - 1].first) throw InputError("grafting does not preserve the branch order");
    sh.t_weights.push_back(1 + branches[pos[j].second].dim());
  }
  std::size_t b = 0;
  for (int e : host.white_edges()) {
    while (b < pos.size() && pos[b].first <= e) {
      sh.from_t.push_back(true);
      ++b;
    }
    sh.s_weights.push_back(1);
    sh.from_t.push_back(false);
  }
  for (; b < pos.size(); ++b) sh.from_t.push_back(true);
  return sh;
}

std::vector<GraftTerm> graft_all_terms(const BWTree& host, const std::vector<BWTree>& branches,
                                       const std::vector<int>& whites) {
  auto slots = graft_slots(host, whites.empty() ? host.whites() : whites);
  std::vector<GraftTerm> out;
  for_each_multichoice(static_cast<int>(slots.size()), static_cast<int>(branches.size()),
                       [&](const std::vector<int>& a) {
                         std::vector<GraftSlot> chosen;
                         for (int x : a) chosen.push_back(slots[x]);
                         out.push_back({graft(host, branches, chosen),
                                        shuffle_sign(graft_shuffle(host, branches, chosen)), a});
                       });
  return out;
}

TreeChain graft_all(const BWTree& host, const std::vector<BWTree>& branches, const std::vector<int>& whites,
                    bool signed_) {
  TreeChain out;
  for (const auto& g : graft_all_terms(host, branches, whites)) out.add(g.tree, signed_ ? g.sign : 1);
  return out;
}

// ------------------------------------------------------------- compose

namespace {

// White labels of t above `cut_label` move up by `t_shift`; labels of tp move
// up by `p_shift`. This performs the operadic relabelling while building.
std::vector<CompositionTerm> compose_impl(const BWTree& t, int vi, const BWTree& tp, int cut_label, int t_shift,
                                          int p_shift) {
  TreeInfo it = info(t), ip = info(tp);
  const int k = t.dim(), kp = tp.dim();
  const int end = it.end[vi];

  int Q = 0, B = 0;
  for (int e : t.white_edges()) {
    if (e >= end) ++Q;
    else if (e > vi) ++B;
  }
  const auto& roots = t[vi].children;
  std::vector<int> weight;
  for (int c : roots) {
    int inner = 0;
    for (int e : t.white_edges())
      if (e > c && e < it.end[c]) ++inner;
    weight.push_back(1 + inner);
  }
  // tp white edges at or after each preorder position
  std::vector<int> tp_after(tp.size() + 1, 0);
  for (int v = tp.size() - 1; v >= 0; --v) tp_after[v] = tp_after[v + 1] + (ip.nat[v] >= 0 ? 1 : 0);

  const auto slots = graft_slots(tp, tp.whites());
  const int base = parity_sign(static_cast<long long>(kp) * (Q + B));
  const int r = static_cast<int>(roots.size());

  std::vector<CompositionTerm> out;
  std::vector<int> origin;  // white-edge provenance in result preorder
  origin.reserve(k + kp);

  // slot index of (white of tp, child position)
  std::vector<std::vector<int>> slot_of(tp.size());
  for (std::size_t x = 0; x < slots.size(); ++x) {
    auto& row = slot_of[slots[x].white];
    if (row.empty()) row.assign(tp[slots[x].white].children.size() + 1, -1);
    row[slots[x].slot] = static_cast<int>(x);
  }
  std::vector<int> first(slots.size() + 1);  // branches in slot x: [first[x], first[x+1])

  // The result is written straight into its literal, in preorder.
  std::string lit;
  auto open = [&](Color c, int label) {
    if (c == Color::tail) {
      lit += 't';
      return false;
    }
    if (c == Color::black) {
      lit += "b[";
    } else {
      lit += 'w';
      lit += std::to_string(label);
      lit += '[';
    }
    return true;
  };
  auto t_label = [&](int v) { return t[v].label > cut_label ? t[v].label + t_shift : t[v].label; };
  std::function<void(int)> copy_t = [&](int v) {
    if (!open(t[v].color, t_label(v))) return;
    bool sep = false;
    for (int c : t[v].children) {
      if (sep) lit += ' ';
      sep = true;
      if (it.nat[c] >= 0) origin.push_back(it.nat[c]);
      copy_t(c);
    }
    lit += ']';
  };
  std::function<void(int)> emit_p = [&](int v) {
    const bool white = tp[v].color == Color::white;
    if (!open(tp[v].color, white ? tp[v].label + p_shift : 0)) return;
    const auto& ch = tp[v].children;
    bool sep = false;
    for (std::size_t j = 0; j <= ch.size(); ++j) {
      if (white) {
        int x = slot_of[v][j];
        for (int bi = first[x]; bi < first[x + 1]; ++bi) {
          if (sep) lit += ' ';
          sep = true;
          origin.push_back(it.nat[roots[bi]]);
          copy_t(roots[bi]);
        }
      }
      if (j < ch.size()) {
        if (sep) lit += ' ';
        sep = true;
        if (ip.nat[ch[j]] >= 0) origin.push_back(k + ip.nat[ch[j]]);
        emit_p(ch[j]);
      }
    }
    lit += ']';
  };
  std::function<void(int)> emit_t = [&](int v) {
    if (!open(t[v].color, t_label(v))) return;
    bool sep = false;
    for (int c : t[v].children) {
      if (c == vi) {
        for (int pc : tp[1].children) {
          if (sep) lit += ' ';
          sep = true;
          emit_p(pc);
        }
        continue;
      }
      if (sep) lit += ' ';
      sep = true;
      if (it.nat[c] >= 0) origin.push_back(it.nat[c]);
      emit_t(c);
    }
    lit += ']';
  };

  for_each_multichoice(static_cast<int>(slots.size()), r, [&](const std::vector<int>& a) {
    long long e = 0;
    std::fill(first.begin(), first.end(), 0);
    for (int j = 0; j < r; ++j) {
      e += static_cast<long long>(weight[j]) * tp_after[slot_position(tp, ip, slots[a[j]])];
      ++first[a[j] + 1];
    }
    std::partial_sum(first.begin(), first.end(), first.begin());
    origin.clear();
    lit.clear();
    emit_t(0);
    out.push_back({lit, base * parity_sign(e), permutation_sign(origin)});
  });
  return out;
}

}  // namespace

std::vector<CompositionTerm> compose_at(const BWTree& t, int label, const BWTree& tp) {
  return compose_impl(t, t.white_vertex(label), tp, std::numeric_limits<int>::max(), 0, 0);
}

std::vector<CompositionTerm> compose_terms(const BWTree& t, int i, const BWTree& tp) {
  const int n = t.lobes(), m = tp.lobes();
  if (i < 1 || i > n) throw InputError("composition index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
  return compose_impl(t, t.white_vertex(i), tp, i, m - 1, i - 1);
}

TreeChain compose(const BWTree& t, int i, const BWTree& tp, bool signed_) {
  TreeChain out;
  for (const auto& term : compose_terms(t, i, tp)) out.add(term.tree, signed_ ? term.sign : 1);
  return out;
}

namespace {

// Composition terms for literal pairs, shared across chain-level calls.
class TermCache {
 public:
  std::shared_ptr<const std::vector<CompositionTerm>> get(const std::string& a, int i, const std::string& b) {
    std::string key = a;
    key += '|';
    key += std::to_string(i);
    key += '|';
    key += b;
    {
      std::lock_guard lock(mu_);
      auto f = map_.find(key);
      if (f != map_.end()) return f->second;
    }
    auto terms = std::make_shared<const std::vector<CompositionTerm>>(
        compose_terms(BWTree::parse(a), i, BWTree::parse(b)));
    std::lock_guard lock(mu_);
    if (map_.size() >= kLimit) map_.clear();
    map_.emplace(std::move(key), terms);
    return terms;
  }

 private:
  static constexpr std::size_t kLimit = 1 << 20;
  std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const std::vector<CompositionTerm>>> map_;
};

TermCache& term_cache() {
  static TermCache c;
  return c;
}

}  // namespace

TreeChain compose(const TreeChain& t, int i, const TreeChain& tp, bool signed_) {
  TreeChain out;
  if (t.empty() || tp.empty()) return out;
  const int n = t.lobes() + tp.lobes() - 1, k = t.degree() + tp.degree();
  for (const auto& [a, ca] : t.terms())
    for (const auto& [b, cb] : tp.terms()) {
      Int c = ca * cb;
      for (const auto& term : *term_cache().get(a, i, b)) out.add(term.tree, signed_ ? c * term.sign : c, n, k);
    }
  return out;
}

// ---------------------------------------------- subtree contraction

namespace {

int contraction_sign(const BWTree& cand, const BWTree& t, int i, const BWTree& tp) {
  const int m = tp.lobes();
  auto in_s = [&](int v) { return cand[v].color == Color::white && cand[v].label >= i && cand[v].label <= i + m - 1; };
  int beta = -1;
  std::vector<int> ws;
  for (int v = 0; v < cand.size(); ++v) {
    if (!in_s(v)) continue;
    ws.push_back(v);
    int p = cand[v].parent;
    int pp = cand[p].parent;
    if (pp >= 0 && in_s(pp)) continue;
    if (beta >= 0 && beta != p) return 0;
    beta = p;
  }
  if (beta < 0) return 0;
  std::vector<int> idx;
  const auto& bch = cand[beta].children;
  for (std::size_t k = 0; k < bch.size(); ++k)
    if (in_s(bch[k])) idx.push_back(static_cast<int>(k));
  for (std::size_t k = 1; k < idx.size(); ++k)
    if (idx[k] != idx[k - 1] + 1) return 0;
  auto all_s = [&](int d) {
    for (int x : cand[d].children)
      if (!in_s(x)) return false;
    return true;
  };
  for (int w : ws)
    for (int d : cand[w].children) {
      bool any = false;
      for (int x : cand[d].children) any = any || in_s(x);
      if (any && !all_s(d)) return 0;
    }

  std::vector<int> ids_p, ids_t;
  std::function<PlanarNode(int)> ext = [&](int v) {
    PlanarNode n = PlanarNode::white(cand[v].label - (i - 1));
    for (int d : cand[v].children) {
      if (!all_s(d)) continue;
      ids_p.push_back(d);
      PlanarNode b = PlanarNode::black();
      for (int x : cand[d].children) b.children.push_back(ext(x));
      n.children.push_back(std::move(b));
    }
    return n;
  };
  PlanarNode b1 = PlanarNode::black();
  for (int k : idx) b1.children.push_back(ext(bch[k]));
  if (serialize(PlanarNode::black({b1})) != tp.str()) return 0;

  const int beta_end = [&] {
    int e = beta;
    while (!cand[e].children.empty()) e = cand[e].children.back();
    return e + 1;
  }();
  std::function<PlanarNode(int)> con = [&](int v) {
    PlanarNode n{cand[v].color, cand[v].label, {}};
    if (n.color == Color::white && n.label > i + m - 1) n.label -= m - 1;
    for (std::size_t k = 0; k < cand[v].children.size(); ++k) {
      int c = cand[v].children[k];
      if (v == beta && in_s(c)) {
        if (static_cast<int>(k) != idx.front()) continue;
        PlanarNode vi = PlanarNode::white(i);
        for (int u = beta + 1; u < beta_end; ++u)
          if (cand[u].color == Color::black && in_s(cand[u].parent) && !all_s(u)) {
            ids_t.push_back(u);
            vi.children.push_back(con(u));
          }
        n.children.push_back(std::move(vi));
        continue;
      }
      if (cand[v].color == Color::white) ids_t.push_back(c);
      n.children.push_back(con(c));
    }
    return n;
  };
  if (serialize(con(0)) != t.str()) return 0;

  std::vector<int> rank(cand.size(), -1);
  const auto& we = cand.white_edges();
  for (std::size_t j = 0; j < we.size(); ++j) rank[we[j]] = static_cast<int>(j);
  std::vector<int> seq;
  for (int x : ids_t) seq.push_back(rank[x]);
  for (int x : ids_p) seq.push_back(rank[x]);
  return permutation_sign(seq);
}

}  // namespace

TreeChain compose_contraction(const BWTree& t, int i, const BWTree& tp) {
  const int n = t.lobes(), m = tp.lobes();
  if (i < 1 || i > n) throw InputError("composition index out of range");
  TreeChain out;
  for (const auto& lit : enumerate_literals(n + m - 1, t.dim() + tp.dim())) {
    BWTree cand = BWTree::parse(lit);
    if (int s = contraction_sign(cand, t, i, tp)) out.add(lit, s);
  }
  return out;
}

TreeChain compose_contraction(const TreeChain& t, int i, const TreeChain& tp) {
  TreeChain out;
  for (const auto& [a, ca] : t.terms())
    for (const auto& [b, cb] : tp.terms())
      out += compose_contraction(BWTree::parse(a), i, BWTree::parse(b)).scaled(ca * cb);
  return out;
}

// -------------------------------------------------------- differential

namespace {

void preorder_ptrs(PlanarNode& n, std::vector<PlanarNode*>& out) {
  out.push_back(&n);
  for (auto& c : n.children) preorder_ptrs(c, out);
}

}  // namespace

TreeChain differential(const BWTree& t) {
  if (!t.no_tails()) throw InputError("differential expects a tree without tails; use tail_differential");
  TreeChain out;
  const auto& we = t.white_edges();
  std::vector<int> pos(t.size(), 0);
  for (std::size_t j = 0; j < we.size(); ++j) pos[we[j]] = static_cast<int>(j) + 1;
  const PlanarNode root = t.to_node();
  for (int w : t.whites()) {
    const auto& ch = t[w].children;
    const int m = static_cast<int>(ch.size());
    if (m == 0) continue;
    const int p = t[w].parent;
    const auto& pch = t[p].children;
    const int at = static_cast<int>(std::find(pch.begin(), pch.end(), w) - pch.begin());
    for (int j = 0; j <= m; ++j) {
      PlanarNode copy = root;
      std::vector<PlanarNode*> ptr;
      preorder_ptrs(copy, ptr);
      PlanarNode& W = *ptr[w];
      PlanarNode& BP = *ptr[p];
      int sign;
      if (j == 0 || j == m) {
        // collapse against the outgoing edge: grandchildren move to the parent
        int d = (j == 0) ? 0 : m - 1;
        sign = (j == 0) ? parity_sign(pos[ch[0]]) : parity_sign(pos[ch[m - 1]] - 1);
        std::vector<PlanarNode> moved = std::move(W.children[d].children);
        W.children.erase(W.children.begin() + d);
        int insert_at = (j == 0) ? at : at + 1;
        BP.children.insert(BP.children.begin() + insert_at, std::make_move_iterator(moved.begin()),
                           std::make_move_iterator(moved.end()));
      } else {
        sign = parity_sign(pos[ch[j]]);
        auto& prev = W.children[j - 1].children;
        auto& cur = W.children[j].children;
        prev.insert(prev.end(), std::make_move_iterator(cur.begin()), std::make_move_iterator(cur.end()));
        W.children.erase(W.children.begin() + j);
      }
      out.add(serialize(copy), sign);
    }
  }
  return out;
}

TreeChain differential(const TreeChain& c) {
  TreeChain out;
  for (const auto& [lit, x] : c.terms()) out += differential(BWTree::parse(lit)).scaled(x);
  return out;
}

// ---------------------------------------------------------------- tails

PlanarNode normalize_tails(PlanarNode n) {
  std::function<void(PlanarNode&, bool)> rec = [&](PlanarNode& v, bool protect) {
    for (auto& c : v.children) rec(c, false);
    if (v.color != Color::black || protect) return;
    std::vector<PlanarNode> flat;
    for (auto& c : v.children) {
      if (c.color == Color::black) {
        for (auto& g : c.children) flat.push_back(std::move(g));
      } else {
        flat.push_back(std::move(c));
      }
    }
    v.children = std::move(flat);
  };
  // the root and its child stay separate
  for (auto& c : n.children) {
    for (auto& g : c.children) rec(g, false);
    if (c.color == Color::black) {
      std::vector<PlanarNode> flat;
      for (auto& g : c.children) {
        if (g.color == Color::black) {
          for (auto& h : g.children) flat.push_back(std::move(h));
        } else {
          flat.push_back(std::move(g));
        }
      }
      c.children = std::move(flat);
    }
  }
  return n;
}

namespace {

int count_before(const PlanarNode& root, const PlanarNode* target, bool& found) {
  int count = 0;
  std::function<void(const PlanarNode&)> rec = [&](const PlanarNode& v) {
    if (found) return;
    if (&v == target) {
      found = true;
      return;
    }
    if (v.color == Color::white || v.color == Color::tail) ++count;
    for (const auto& c : v.children) rec(c);
  };
  rec(root);
  return count;
}

void add_term(std::map<std::string, Int>& out, const std::string& s, const Int& c) {
  if (c == 0) return;
  auto [it, ins] = out.try_emplace(s, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

}  // namespace

std::map<std::string, Int> tail_differential(const BWTree& t, TailMode mode) {
  std::map<std::string, Int> out;
  const PlanarNode root = t.to_node();
  if (mode == TailMode::full) {
    for (int v = 1; v < t.size(); ++v) {
      if (t[v].color == Color::white) continue;
      const int arity = static_cast<int>(t[v].children.size());
      const int options = (t[v].color == Color::tail) ? 1 : arity + 1;
      for (int pos = 0; pos < options; ++pos) {
        PlanarNode copy = root;
        std::vector<PlanarNode*> ptr;
        preorder_ptrs(copy, ptr);
        PlanarNode& V = *ptr[v];
        const PlanarNode* plus;
        if (V.color == Color::tail) {
          V = PlanarNode::black({PlanarNode::tail(), PlanarNode::tail()});
          plus = &V.children[0];
        } else {
          V.children.insert(V.children.begin() + pos, PlanarNode::tail());
          plus = &V.children[pos];
        }
        bool found = false;
        int before = count_before(copy, plus, found);
        add_term(out, serialize(copy), parity_sign(before));
      }
    }
    return out;
  }
  // outer: the Hochschild coboundary of the evaluated composite
  std::vector<int> tails;
  for (int v = 0; v < t.size(); ++v)
    if (t[v].color == Color::tail) tails.push_back(v);
  const int N = static_cast<int>(tails.size());
  {
    PlanarNode first = root;
    first.children[0].children.insert(first.children[0].children.begin(), PlanarNode::tail());
    add_term(out, serialize(normalize_tails(first)), 1);
    PlanarNode last = root;
    last.children[0].children.push_back(PlanarNode::tail());
    add_term(out, serialize(normalize_tails(last)), parity_sign(N + 1));
  }
  for (int j = 0; j < N; ++j) {
    PlanarNode copy = root;
    std::vector<PlanarNode*> ptr;
    preorder_ptrs(copy, ptr);
    *ptr[tails[j]] = PlanarNode::black({PlanarNode::tail(), PlanarNode::tail()});
    add_term(out, serialize(normalize_tails(copy)), parity_sign(j + 1));
  }
  return out;
}

std::map<std::string, Int> tail_differential(const std::map<std::string, Int>& c, TailMode mode) {
  std::map<std::string, Int> out;
  for (const auto& [lit, x] : c)
    for (const auto& [s, y] : tail_differential(BWTree::parse(lit), mode)) add_term(out, s, x * y);
  return out;
}

int tail_count(const BWTree& t) {
  int n = 0;
  for (const auto& v : t.vertices()) n += v.color == Color::tail;
  return n;
}

FoliatedSum foliage(const BWTree& t, int budget) {
  FoliatedSum out;
  const auto whites = t.whites();
  // tails[w][slot]
  std::map<int, std::vector<int>> tails;
  for (int w : whites) tails[w].assign(t[w].children.size() + 1, 0);
  std::function<PlanarNode(int)> build = [&](int v) {
    PlanarNode n{t[v].color, t[v].label, {}};
    const auto& ch = t[v].children;
    for (std::size_t j = 0; j <= ch.size(); ++j) {
      if (t[v].color == Color::white)
        for (int q = 0; q < tails[v][j]; ++q) n.children.push_back(PlanarNode::tail());
      if (j < ch.size()) n.children.push_back(build(ch[j]));
    }
    return n;
  };
  // distribute tails over all (white, slot) pairs
  std::vector<std::pair<int, int>> cells;
  for (int w : whites)
    for (std::size_t j = 0; j < tails[w].size(); ++j) cells.push_back({w, static_cast<int>(j)});
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t c, int left, int used) {
    if (c == cells.size()) {
      out[used].add(serialize(build(0)), 1);
      return;
    }
    for (int q = 0; q <= left; ++q) {
      tails[cells[c].first][cells[c].second] = q;
      rec(c + 1, left - q, used + q);
    }
    tails[cells[c].first][cells[c].second] = 0;
  };
  rec(0, budget, 0);
  return out;
}

std::string compose_foliated(const BWTree& t, int i, const BWTree& tp) {
  const int n = t.lobes(), m = tp.lobes();
  if (i < 1 || i > n) throw InputError("composition index out of range");
  const int vi = t.white_vertex(i);
  if (static_cast<int>(t[vi].children.size()) != tail_count(tp)) return {};
  std::function<PlanarNode(int)> copy_t = [&](int v) {
    PlanarNode x{t[v].color, t[v].label, {}};
    if (x.color == Color::white && x.label > i) x.label += m - 1;
    for (int c : t[v].children) x.children.push_back(copy_t(c));
    return x;
  };
  std::size_t next = 0;
  std::function<PlanarNode(int)> build_p = [&](int v) {
    if (tp[v].color == Color::tail) return copy_t(t[vi].children[next++]);
    PlanarNode x{tp[v].color, tp[v].label, {}};
    if (x.color == Color::white) x.label += i - 1;
    for (int c : tp[v].children) x.children.push_back(build_p(c));
    return x;
  };
  std::function<PlanarNode(int)> build_t = [&](int v) {
    PlanarNode x{t[v].color, t[v].label, {}};
    if (x.color == Color::white && x.label > i) x.label += m - 1;
    for (int c : t[v].children) {
      if (c == vi) {
        for (int pc : tp[1].children) x.children.push_back(build_p(pc));
      } else {
        x.children.push_back(build_t(c));
      }
    }
    return x;
  };
  return serialize(build_t(0));
}

// ------------------------------------------------- symmetric group, signs

int orientation_sign(const BWTree& t, Orientation o) {
  const auto& we = t.white_edges();
  const int k = static_cast<int>(we.size());
  std::vector<std::pair<std::pair<int, int>, int>> keyed;
  for (int j = 0; j < k; ++j) {
    int e = we[j];
    int w = t[e].parent;
    std::pair<int, int> key;
    switch (o) {
      case Orientation::nat:
      case Orientation::nat_rev:
        key = {0, j};
        break;
      case Orientation::op:
      case Orientation::op_rev: {
        const auto& ch = t[w].children;
        key = {t[w].label, static_cast<int>(std::find(ch.begin(), ch.end(), e) - ch.begin())};
        break;
      }
      case Orientation::lab:
      case Orientation::lab_rev:
        if (t[e].color != Color::black || t[e].children.size() != 1)
          throw InputError("Lab orientation is defined for top-dimensional cells only");
        key = {t[t[e].children[0]].label, 0};
        break;
    }
    keyed.push_back({key, j});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> seq;
  for (auto& x : keyed) seq.push_back(x.second);
  int s = permutation_sign(seq);
  if (o == Orientation::nat_rev || o == Orientation::op_rev || o == Orientation::lab_rev)
    s *= parity_sign(static_cast<long long>(k) * (k - 1) / 2);
  return s;
}

TreeChain convert_orientation(const TreeChain& c, Orientation to) {
  TreeChain out;
  out.orientation = to;
  for (const auto& [lit, x] : c.terms()) {
    BWTree t = BWTree::parse(lit);
    out.add(lit, x * orientation_sign(t, c.orientation) * orientation_sign(t, to));
  }
  return out;
}

TreeChain sym_action(const std::vector<int>& sigma, const TreeChain& c) {
  return sym_action(sigma, c, c.orientation);
}

TreeChain sym_action(const std::vector<int>& sigma, const TreeChain& c, Orientation o) {
  TreeChain out;
  out.orientation = o;
  if (c.empty()) return out;
  std::vector<int> check = sigma;
  std::sort(check.begin(), check.end());
  for (std::size_t j = 0; j < check.size(); ++j)
    if (check[j] != static_cast<int>(j) + 1) throw InputError("not a permutation");
  if (static_cast<int>(sigma.size()) != c.lobes()) throw InputError("permutation size does not match the chain");
  for (const auto& [lit, x] : c.terms()) {
    BWTree t = BWTree::parse(lit);
    BWTree s = BWTree::from_node(relabelled_node(t, [&](int l) { return sigma[l - 1]; }));
    out.add(s.str(), x * orientation_sign(t, o) * orientation_sign(s, o));
  }
  return out;
}

ShiftedChain shift(const ShiftedChain& c, int by) {
  int m = c.marker.shift + by;
  if (m < -1 || m > 1) throw InputError("shift marker must stay within -1..1");
  return {c.chain, {m}};
}

ShiftedChain compose_shifted(const ShiftedChain& a, int i, const ShiftedChain& b) {
  if (a.marker.shift != b.marker.shift) throw InputError("composing chains with different shifts");
  const int s = a.marker.shift;
  ShiftedChain out{{}, a.marker};
  for (const auto& [x, cx] : a.chain.terms()) {
    BWTree tx = BWTree::parse(x);
    for (const auto& [y, cy] : b.chain.terms()) {
      BWTree ty = BWTree::parse(y);
      for (const auto& term : compose_terms(tx, i, ty)) {
        int sign = s == 0 ? term.sign : (s > 0 ? term.koszul : term.sign * term.koszul);
        out.chain.add(term.tree, cx * cy * sign);
      }
    }
  }
  return out;
}

}  // namespace artifact
