#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace artifact {

// Chain coefficients are almost always +-1, so the small-value optimisation
// of cpp_int matters more than raw bignum speed. Geometry and cochains use
// GMP rationals.
using Int = boost::multiprecision::cpp_int;
using Rat = mpq_class;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rat parse_rational(std::string_view text);
std::string to_string(const Rat& q);
std::string to_string(const Int& z);

inline int parity_sign(long long e) { return (e & 1) ? -1 : 1; }

// Sign of the permutation that sorts `seq` (entries distinct).
int permutation_sign(const std::vector<int>& seq);

// Koszul sign of moving graded items into a new order: `order[j]` is the
// original index of the item placed at position j.
int koszul_sign(const std::vector<int>& degrees, const std::vector<int>& order);

// splitmix64, used to derive per-shard seeds deterministically.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace artifact
