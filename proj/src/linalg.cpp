#include "artifact/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace artifact {

namespace {

using Row = std::vector<std::pair<int, mpz_class>>;

mpz_class to_mpz(const Int& v) { return mpz_class(v.str()); }
Int to_int(const mpz_class& v) { return Int(v.get_str()); }

// a*x - b*y on sorted sparse rows
Row combine(const mpz_class& a, const Row& x, const mpz_class& b, const Row& y) {
  Row out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back({x[i].first, a * x[i].second});
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.push_back({y[j].first, -b * y[j].second});
      ++j;
    } else {
      mpz_class v = a * x[i].second - b * y[j].second;
      if (v != 0) out.push_back({x[i].first, v});
      ++i;
      ++j;
    }
  }
  return out;
}

void primitive(Row& r) {
  if (r.empty()) return;
  mpz_class g = 0;
  for (auto& [c, v] : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (r.front().second < 0) g = -g;
  for (auto& [c, v] : r) v /= g;
}

}  // namespace

void SparseIntMatrix::add(int r, int c, const Int& v) {
  if (v == 0) return;
  auto& row = data.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, int k) { return e.first < k; });
  if (it != row.end() && it->first == c) {
    it->second += v;
    if (it->second == 0) row.erase(it);
  } else {
    row.insert(it, {c, v});
  }
}

std::size_t SparseIntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data) n += r.size();
  return n;
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& o) const {
  if (cols != o.rows) throw InputError("matrix shapes do not compose");
  SparseIntMatrix out(rows, o.cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::map<int, Int> acc;
    for (const auto& [k, a] : data[r])
      for (const auto& [c, b] : o.data[k]) acc[c] += a * b;
    for (auto& [c, v] : acc)
      if (v != 0) out.data[r].push_back({c, v});
  }
  return out;
}

std::size_t rank_rational(const SparseIntMatrix& m) {
  // Fraction-free echelon basis keyed by leading column; exact over Q.
  std::vector<Row> rows;
  for (const auto& r : m.data) {
    if (r.empty()) continue;
    Row x;
    for (const auto& [c, v] : r) x.push_back({c, to_mpz(v)});
    rows.push_back(std::move(x));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.size() < b.size(); });
  std::map<int, Row> basis;
  for (auto& x : rows) {
    while (!x.empty()) {
      auto it = basis.find(x.front().first);
      if (it == basis.end()) {
        primitive(x);
        int lead = x.front().first;
        basis.emplace(lead, std::move(x));
        break;
      }
      const Row& p = it->second;
      mpz_class g = gcd(p.front().second, x.front().second);
      x = combine(p.front().second / g, x, x.front().second / g, p);
      primitive(x);
    }
  }
  return basis.size();
}

namespace {

std::vector<Int> dense_smith_diagonal(std::vector<std::vector<mpz_class>> a) {
  const std::size_t R = a.size(), C = R ? a[0].size() : 0;
  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    for (;;) {
      // smallest nonzero entry in the trailing block becomes the pivot
      std::size_t pr = R, pc = C;
      for (std::size_t r = t; r < R; ++r)
        for (std::size_t c = t; c < C; ++c)
          if (a[r][c] != 0 && (pr == R || abs(a[r][c]) < abs(a[pr][pc]))) {
            pr = r;
            pc = c;
          }
      if (pr == R) goto done;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t r = t + 1; r < R; ++r) {
        if (a[r][t] == 0) continue;
        mpz_class q = a[r][t] / a[t][t];
        for (std::size_t c = t; c < C; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < C; ++c) {
        if (a[t][c] == 0) continue;
        mpz_class q = a[t][c] / a[t][t];
        for (std::size_t r = t; r < R; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) clean = false;
      }
      if (clean) break;
    }
    diag.push_back(abs(a[t][t]));
  }
done:
  // enforce the divisibility chain
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      mpz_class g = gcd(diag[i], diag[j]);
      mpz_class l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  std::vector<Int> out;
  for (auto& d : diag) out.push_back(to_int(d));
  return out;
}

}  // namespace

SmithForm smith_form(const SparseIntMatrix& m) {
  std::vector<std::map<int, mpz_class>> rows(m.rows);
  std::vector<std::set<int>> cols(m.cols);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (const auto& [c, v] : m.data[r]) {
      rows[r][c] = to_mpz(v);
      cols[c].insert(static_cast<int>(r));
    }
  std::vector<bool> alive(m.rows, true);
  SmithForm out;
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (!alive[r] || rows[r].empty()) continue;
      int pc = -1;
      for (const auto& [c, v] : rows[r])
        if (abs(v) == 1 && (pc < 0 || cols[c].size() < cols[pc].size())) pc = c;
      if (pc < 0) continue;
      const mpz_class pv = rows[r][pc];
      std::vector<int> others(cols[pc].begin(), cols[pc].end());
      for (int o : others) {
        if (o == static_cast<int>(r)) continue;
        mpz_class f = rows[o][pc] * pv;  // pv is a unit
        for (const auto& [c, v] : rows[r]) {
          auto& e = rows[o][c];
          e -= f * v;
          if (e == 0) {
            rows[o].erase(c);
            cols[c].erase(o);
          } else {
            cols[c].insert(o);
          }
        }
      }
      for (const auto& [c, v] : rows[r]) cols[c].erase(static_cast<int>(r));
      rows[r].clear();
      alive[r] = false;
      ++out.rank;
      progress = true;
    }
  }
  // dense finish on what is left
  std::vector<int> rr, cc;
  for (std::size_t r = 0; r < m.rows; ++r)
    if (alive[r] && !rows[r].empty()) rr.push_back(static_cast<int>(r));
  for (std::size_t c = 0; c < m.cols; ++c)
    if (!cols[c].empty()) cc.push_back(static_cast<int>(c));
  if (!rr.empty()) {
    std::vector<std::vector<mpz_class>> d(rr.size(), std::vector<mpz_class>(cc.size()));
    for (std::size_t i = 0; i < rr.size(); ++i)
      for (std::size_t j = 0; j < cc.size(); ++j) {
        auto it = rows[rr[i]].find(cc[j]);
        if (it != rows[rr[i]].end()) d[i][j] = it->second;
      }
    for (const auto& f : dense_smith_diagonal(std::move(d))) {
      ++out.rank;
      if (f > 1) out.invariant_factors.push_back(f);
    }
  }
  std::sort(out.invariant_factors.begin(), out.invariant_factors.end());
  return out;
}

std::size_t rank(RatMatrix m) {
  std::size_t r = 0;
  const std::size_t C = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < C && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < C; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

Rat determinant(RatMatrix m) {
  const std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[c].size() != n) throw InputError("determinant of a non-square matrix");
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[c], m[p]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

std::vector<std::vector<Rat>> nullspace(RatMatrix m, std::size_t cols) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    Rat inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace artifact
