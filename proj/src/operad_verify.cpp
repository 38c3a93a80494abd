#include "artifact/tree_operad.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>

namespace artifact {

namespace {

// (signed coefficient, unsigned coefficient) per result literal
using Acc = std::unordered_map<std::string, std::pair<long long, long long>>;

struct Parsed {
  BWTree tree;
  int sign;
};

std::vector<Parsed> first_level(const BWTree& a, int i, const BWTree& b) {
  std::vector<Parsed> out;
  for (auto& x : compose_terms(a, i, b)) out.push_back({BWTree::parse(x.tree), x.sign});
  return out;
}

void prune(Acc& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->second.first == 0 && it->second.second == 0) it = m.erase(it);
    else ++it;
  }
}

// Rewrites every white label l of a literal to perm[l-1].
std::string relabel_literal(const std::string& s, const std::vector<int>& perm) {
  std::string out;
  out.reserve(s.size() + 4);
  for (std::size_t p = 0; p < s.size();) {
    out += s[p];
    if (s[p++] != 'w') continue;
    int l = 0;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) l = 10 * l + (s[p++] - '0');
    out += std::to_string(perm[l - 1]);
  }
  return out;
}

// Permutation acting on the labels of a o_i b induced by s on a and sp on b.
std::vector<int> block_permutation(const std::vector<int>& s, int i, const std::vector<int>& sp) {
  const int n = static_cast<int>(s.size()), m = static_cast<int>(sp.size());
  const int si = s[i - 1];
  auto outer = [&](int o) { return o < si ? o : o + m - 1; };
  std::vector<int> pi(n + m - 1);
  for (int l = 1; l <= n + m - 1; ++l) {
    if (l < i) pi[l - 1] = outer(s[l - 1]);
    else if (l < i + m) pi[l - 1] = si + sp[l - i] - 1;
    else pi[l - 1] = outer(s[l - m]);
  }
  return pi;
}

void record(AxiomTally& t, bool ok, const std::string& what) {
  ++t.checks;
  if (ok) return;
  ++t.failures;
  if (t.counterexamples.size() < 5) t.counterexamples.push_back(what);
}

std::string describe(const BWTree& a, int i, const BWTree& b, int j, const BWTree& c) {
  return a.str() + " i=" + std::to_string(i) + " " + b.str() + " j=" + std::to_string(j) + " " + c.str();
}

// (a o_i b) o_{i+j-1} c  vs  a o_i (b o_j c)
bool sequential_ok(const BWTree& a, int i, const std::vector<Parsed>& ab, const BWTree& c, int j,
                   const std::vector<Parsed>& bc, Acc& L, Acc& R) {
  L.clear();
  R.clear();
  for (const auto& p : ab)
    for (const auto& x : compose_terms(p.tree, i + j - 1, c)) {
      auto& e = L[x.tree];
      e.first += p.sign * x.sign;
      e.second += 1;
    }
  for (const auto& p : bc)
    for (const auto& x : compose_terms(a, i, p.tree)) {
      auto& e = R[x.tree];
      e.first += p.sign * x.sign;
      e.second += 1;
    }
  prune(L);
  prune(R);
  return L == R;
}

// (a o_j c) o_i b  vs  (-1)^{|b||c|} (a o_i b) o_{j+|b|-1} c, for i < j
bool parallel_ok(int i, const std::vector<Parsed>& ac, const BWTree& b, int j, const std::vector<Parsed>& ab,
                 const BWTree& c, Acc& L, Acc& R) {
  L.clear();
  R.clear();
  const int s = parity_sign(static_cast<long long>(b.dim()) * c.dim());
  for (const auto& p : ac)
    for (const auto& x : compose_terms(p.tree, i, b)) {
      auto& e = L[x.tree];
      e.first += p.sign * x.sign;
      e.second += 1;
    }
  for (const auto& p : ab)
    for (const auto& x : compose_terms(p.tree, j + b.lobes() - 1, c)) {
      auto& e = R[x.tree];
      e.first += s * p.sign * x.sign;
      e.second += 1;
    }
  prune(L);
  prune(R);
  return L == R;
}

bool equivariance_ok(const BWTree& a, int i, const BWTree& b, const std::vector<int>& s,
                     const std::vector<int>& sp, Acc& L, Acc& R) {
  L.clear();
  R.clear();
  const auto pi = block_permutation(s, i, sp);
  for (const auto& x : compose_terms(a, i, b)) {
    auto& e = L[relabel_literal(x.tree, pi)];
    e.first += x.sign;
    e.second += 1;
  }
  BWTree sa = BWTree::parse(relabel_literal(a.str(), s));
  BWTree sb = BWTree::parse(relabel_literal(b.str(), sp));
  for (const auto& x : compose_terms(sa, s[i - 1], sb)) {
    auto& e = R[x.tree];
    e.first += x.sign;
    e.second += 1;
  }
  prune(L);
  prune(R);
  return L == R;
}

bool unit_ok(const BWTree& a, const BWTree& unit) {
  for (int i = 1; i <= a.lobes(); ++i) {
    auto t = compose_terms(a, i, unit);
    if (t.size() != 1 || t[0].tree != a.str() || t[0].sign != 1) return false;
  }
  auto t = compose_terms(unit, 1, a);
  return t.size() == 1 && t[0].tree == a.str() && t[0].sign == 1;
}

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

void merge(AxiomTally& into, const AxiomTally& from) {
  into.checks += from.checks;
  into.failures += from.failures;
  for (const auto& c : from.counterexamples)
    if (into.counterexamples.size() < 5) into.counterexamples.push_back(c);
}

void merge(OperadVerification& into, const OperadVerification& from) {
  merge(into.sequential, from.sequential);
  merge(into.parallel, from.parallel);
  merge(into.unit, from.unit);
  merge(into.equivariance, from.equivariance);
}

// Runs job(x) for x in [0, count) on up to `threads` workers; results are
// merged in index order so the report does not depend on scheduling.
void run_indexed(int count, int threads, const std::function<void(int, OperadVerification&)>& job,
                 OperadVerification& total) {
  std::vector<OperadVerification> parts(count);
  threads = std::max(1, std::min(threads, count));
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (int x = w; x < count; x += threads) job(x, parts[x]);
    });
  for (auto& th : pool) th.join();
  for (const auto& p : parts) merge(total, p);
}

}  // namespace

OperadVerification verify_operad(const OperadVerifyOptions& opt) {
  if (opt.nmax < 1) throw InputError("nmax must be at least 1");
  OperadVerification total;
  const BWTree unit = BWTree::parse("b[b[w1[]]]");

  std::vector<BWTree> ts;
  for (int n = 1; n <= opt.nmax; ++n)
    for (auto& t : enumerate_trees(n)) ts.push_back(std::move(t));
  const int N = static_cast<int>(ts.size());

  // first[x][y][i-1] = x o_i y with each summand parsed
  std::vector<std::vector<std::vector<std::vector<Parsed>>>> first(N, std::vector<std::vector<std::vector<Parsed>>>(N));
  run_indexed(N, opt.threads, [&](int x, OperadVerification&) {
    for (int y = 0; y < N; ++y)
      for (int i = 1; i <= ts[x].lobes(); ++i) first[x][y].push_back(first_level(ts[x], i, ts[y]));
  }, total);

  std::vector<std::vector<std::vector<int>>> perms(opt.nmax + 1);
  for (int n = 1; n <= opt.nmax; ++n) perms[n] = permutations(n);

  run_indexed(N, opt.threads, [&](int ai, OperadVerification& r) {
    Acc L, R;
    const BWTree& a = ts[ai];
    record(r.unit, unit_ok(a, unit), a.str());
    for (int bi = 0; bi < N; ++bi) {
      const BWTree& b = ts[bi];
      for (int i = 1; i <= a.lobes(); ++i)
        for (const auto& s : perms[a.lobes()])
          for (const auto& sp : perms[b.lobes()])
            record(r.equivariance, equivariance_ok(a, i, b, s, sp, L, R), a.str() + " i=" + std::to_string(i) + " " + b.str());
      for (int ci = 0; ci < N; ++ci) {
        const BWTree& c = ts[ci];
        for (int i = 1; i <= a.lobes(); ++i)
          for (int j = 1; j <= b.lobes(); ++j)
            record(r.sequential, sequential_ok(a, i, first[ai][bi][i - 1], c, j, first[bi][ci][j - 1], L, R),
                   describe(a, i, b, j, c));
        for (int i = 1; i <= a.lobes(); ++i)
          for (int j = i + 1; j <= a.lobes(); ++j)
            record(r.parallel, parallel_ok(i, first[ai][ci][j - 1], b, j, first[ai][bi][i - 1], c, L, R),
                   describe(a, i, b, j, c));
      }
    }
  }, total);

  if (opt.samples > 0) {
    auto pool = enumerate_trees(opt.sample_lobes);
    std::mt19937_64 rng(mix_seed(opt.seed, 0));
    auto pick = [&](int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };
    auto random_perm = [&](int n) {
      std::vector<int> p(n);
      std::iota(p.begin(), p.end(), 1);
      for (int q = n - 1; q > 0; --q) std::swap(p[q], p[pick(q + 1)]);
      return p;
    };
    struct Sample {
      int a, b, c, i, j, pi, pj;
      std::vector<int> s, sp;
    };
    const int n = opt.sample_lobes;
    std::vector<Sample> samples;
    for (int q = 0; q < opt.samples; ++q) {
      Sample x;
      x.a = pick(static_cast<int>(pool.size()));
      x.b = pick(static_cast<int>(pool.size()));
      x.c = pick(static_cast<int>(pool.size()));
      x.i = 1 + pick(n);
      x.j = 1 + pick(n);
      x.pi = 1 + pick(n);
      x.pj = 1 + pick(n);
      x.s = random_perm(n);
      x.sp = random_perm(n);
      samples.push_back(std::move(x));
    }
    run_indexed(opt.samples, opt.threads, [&](int q, OperadVerification& r) {
      const Sample& x = samples[q];
      const BWTree &a = pool[x.a], &b = pool[x.b], &c = pool[x.c];
      Acc L, R;
      record(r.sequential,
             sequential_ok(a, x.i, first_level(a, x.i, b), c, x.j, first_level(b, x.j, c), L, R),
             describe(a, x.i, b, x.j, c));
      if (n >= 2) {
        int i = std::min(x.pi, x.pj), j = std::max(x.pi, x.pj);
        if (i == j) j = (j == n) ? (i = n - 1, n) : j + 1;
        record(r.parallel, parallel_ok(i, first_level(a, j, c), b, j, first_level(a, i, b), c, L, R),
               describe(a, i, b, j, c));
      }
      record(r.equivariance, equivariance_ok(a, x.i, b, x.s, x.sp, L, R), a.str() + " " + b.str());
      record(r.unit, unit_ok(a, unit), a.str());
    }, total);
  }
  return total;
}

}  // namespace artifact
