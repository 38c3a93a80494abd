#pragma once

// Randomized checks shared by every implementation of the flow-chart action:
// operadic composition, compatibility with the differentials and
// S_n-equivariance, on all trees with at most nmax lobes.

#include "artifact/hochschild.hpp"
#include "artifact/tree_operad.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace artifact {

namespace action_check_detail {

struct Case {
  int kind;  // 0 composition, 1 differential, 2 equivariance
  BWTree t;
  int i = 0;
  BWTree tp;
  std::vector<int> sigma;
};

inline std::vector<BWTree> trees_up_to(int n) {
  std::vector<BWTree> out;
  for (int j = 1; j <= n; ++j)
    for (auto& t : enumerate_trees(j)) out.push_back(std::move(t));
  return out;
}

// Each white vertex with r black children needs an operation of degree >= r
// to give a nonzero brace; sample degrees above those floors.
inline std::vector<int> sample_degrees(const std::vector<int>& floor, int cap, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> extra(0, 2);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<int> d = floor;
    int s = 0;
    for (auto& x : d) {
      x += extra(rng);
      s += x;
    }
    if (s <= cap) return d;
  }
  return floor;
}

inline std::vector<int> degree_floor(const TreeChain& c, int n) {
  std::vector<int> fl(n, 0);
  for (const auto& [lit, x] : c.terms()) {
    BWTree t = BWTree::parse(lit);
    for (int w : t.whites())
      fl[t[w].label - 1] = std::max(fl[t[w].label - 1], static_cast<int>(t[w].children.size()));
  }
  return fl;
}

}  // namespace action_check_detail

// Backend requirements: a Value type with ==, * Rat; act(BWTree | TreeChain,
// values), act_differential(BWTree, values), random(q, rng), zero(q) and
// degree(value).
template <class Backend>
DeligneReport verify_action(const Backend& b, const DeligneOptions& opt) {
  using Value = typename Backend::Value;
  using namespace action_check_detail;
  std::vector<Case> cases;
  const auto trees = trees_up_to(opt.nmax);
  for (const auto& t : trees)
    for (int i = 1; i <= t.lobes(); ++i)
      for (const auto& tp : trees)
        if (t.lobes() + tp.lobes() - 1 <= opt.nmax) cases.push_back({0, t, i, tp, {}});
  for (const auto& t : trees) cases.push_back({1, t, 0, t, {}});
  for (const auto& t : trees) {
    std::vector<int> sigma(t.lobes());
    std::iota(sigma.begin(), sigma.end(), 1);
    do cases.push_back({2, t, 0, t, sigma});
    while (std::next_permutation(sigma.begin(), sigma.end()));
  }

  auto same = [](const std::optional<Value>& x, const std::optional<Value>& y) {
    if (!x || !y) return !x && !y;
    return *x == *y;
  };
  auto describe = [&](const std::vector<Value>& fs) {
    std::string s = "degrees";
    for (const auto& f : fs) s += " " + std::to_string(b.degree(f));
    return s;
  };

  struct Partial {
    long checks[3] = {0, 0, 0}, failures[3] = {0, 0, 0};
    std::vector<std::string> examples;
  };
  auto run_case = [&](std::size_t idx) {
    Partial p;
    const auto& cs = cases[idx];
    std::mt19937_64 rng(mix_seed(opt.seed, idx));
    const int n = cs.kind == 0 ? cs.t.lobes() + cs.tp.lobes() - 1 : cs.t.lobes();
    TreeChain composite;
    if (cs.kind == 0) composite = compose(cs.t, cs.i, cs.tp);
    else composite.add(cs.t.str(), Int(1));
    const auto floor = degree_floor(composite, n);
    for (int s = 0; s < opt.samples; ++s) {
      auto degs = sample_degrees(floor, opt.max_total_degree, rng);
      std::vector<Value> fs;
      for (int q : degs) fs.push_back(b.random(q, rng));
      bool ok = true;
      if (cs.kind == 0) {
        const int m = cs.tp.lobes(), i = cs.i;
        auto lhs = b.act(composite, fs);
        std::vector<Value> inner(fs.begin() + (i - 1), fs.begin() + (i - 1 + m));
        auto mid = b.act(cs.tp, inner);
        std::optional<Value> rhs;
        if (mid) {
          std::vector<Value> outer(fs.begin(), fs.begin() + (i - 1));
          outer.push_back(*mid);
          outer.insert(outer.end(), fs.begin() + (i - 1 + m), fs.end());
          rhs = b.act(cs.t, outer);
          int before = 0;
          for (int j = 0; j < i - 1; ++j) before += b.degree(fs[j]);
          if (rhs && ((cs.tp.dim() * before) & 1)) rhs = *rhs * Rat(-1);
        }
        ok = same(lhs, rhs);
      } else if (cs.kind == 1) {
        auto lhs = b.act_differential(cs.t, fs);
        TreeChain d = differential(cs.t);
        std::optional<Value> rhs;
        if (d.empty()) {
          if (lhs) rhs = b.zero(b.degree(*lhs));
        } else {
          rhs = b.act(d, fs);
        }
        ok = same(lhs, rhs);
      } else {
        const TreeChain moved = sym_action(cs.sigma, composite, Orientation::nat);
        auto lhs = b.act(moved, fs);
        std::vector<Value> permuted;
        std::vector<int> degrees, order;
        for (const auto& f : fs) degrees.push_back(b.degree(f));
        for (int j = 0; j < n; ++j) {
          permuted.push_back(fs[cs.sigma[j] - 1]);
          order.push_back(cs.sigma[j] - 1);
        }
        auto rhs = b.act(composite, permuted);
        if (rhs && koszul_sign(degrees, order) < 0) rhs = *rhs * Rat(-1);
        ok = same(lhs, rhs);
      }
      ++p.checks[cs.kind];
      if (!ok) {
        ++p.failures[cs.kind];
        if (p.examples.size() < 3) {
          static const char* names[] = {"composition", "differential", "equivariance"};
          std::string what = std::string(names[cs.kind]) + ": " + cs.t.str();
          if (cs.kind == 0) what += " o_" + std::to_string(cs.i) + " " + cs.tp.str();
          p.examples.push_back(what + " " + describe(fs));
        }
      }
    }
    return p;
  };

  std::vector<Partial> parts(cases.size());
  const int T = std::max(1, opt.threads);
  std::vector<std::thread> pool;
  for (int w = 0; w < T; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t j = w; j < cases.size(); j += T) parts[j] = run_case(j);
    });
  for (auto& th : pool) th.join();

  DeligneReport rep;
  for (const auto& p : parts) {
    rep.composition_checks += p.checks[0];
    rep.differential_checks += p.checks[1];
    rep.equivariance_checks += p.checks[2];
    rep.composition_failures += p.failures[0];
    rep.differential_failures += p.failures[1];
    rep.equivariance_failures += p.failures[2];
    for (const auto& e : p.examples)
      if (rep.counterexamples.size() < 10) rep.counterexamples.push_back(e);
  }
  return rep;
}

}  // namespace artifact
