#pragma once

#include "artifact/arith.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace artifact {

// Row-sparse integer matrix; each row sorted by column, no explicit zeros.
struct SparseIntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<std::pair<int, Int>>> data;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r) {}
  void add(int r, int c, const Int& v);  // accumulates
  std::size_t nonzeros() const;
  SparseIntMatrix multiply(const SparseIntMatrix& o) const;
  bool is_zero() const { return nonzeros() == 0; }
};

// Rank over Q by sparse elimination with rational arithmetic.
std::size_t rank_rational(const SparseIntMatrix& m);

// Smith normal form over Z. Unit pivots are eliminated sparsely; whatever
// remains is finished densely.
struct SmithForm {
  std::size_t rank = 0;
  std::vector<Int> invariant_factors;  // diagonal entries > 1, ascending
};
SmithForm smith_form(const SparseIntMatrix& m);

// Dense rational helpers.
using RatMatrix = std::vector<std::vector<Rat>>;
std::size_t rank(RatMatrix m);
Rat determinant(RatMatrix m);
// Basis of {x : m x = 0}.
std::vector<std::vector<Rat>> nullspace(RatMatrix m, std::size_t cols);

}  // namespace artifact
