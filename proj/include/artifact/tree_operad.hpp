#pragma once

#include "artifact/trees.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace artifact {

// Two ordered, weighted sequences and a merge of them. `from_t[p]` says
// whether position p of the merge is taken by the next element of T.
struct WeightedShuffle {
  std::vector<int> s_weights;
  std::vector<int> t_weights;
  std::vector<bool> from_t;

  bool valid() const;
  // minimum of the merge lies in S
  bool is_sh_prime() const { return valid() && (from_t.empty() || !from_t.front()); }
};

// (-1)^{sum over t in T, s in S with t before s of wt(s) wt(t)}
int shuffle_sign(const WeightedShuffle& sh);

// A place to graft a branch: before child `slot` of white vertex `white`
// (slot == arity means after the last child). Vertex ids refer to the host.
struct GraftSlot {
  int white;
  int slot;
  bool operator==(const GraftSlot&) const = default;
};

// Grafting positions listed in the order they occur along the outside path.
std::vector<GraftSlot> graft_slots(const BWTree& host, const std::vector<int>& whites);

struct GraftTerm {
  BWTree tree;
  int sign;                    // weighted shuffle sign
  std::vector<int> positions;  // index into graft_slots per branch
};

// gr(host; branches; slots): branch j (a planted tree b[b[...]]) has its
// black child attached at `slots[j]`; several branches in one slot keep
// their order.
BWTree graft(const BWTree& host, const std::vector<BWTree>& branches, const std::vector<GraftSlot>& slots);

// The merged order of host white edges and branch root edges for a grafting,
// with branch weight 1 + |E_w(branch)|.
WeightedShuffle graft_shuffle(const BWTree& host, const std::vector<BWTree>& branches,
                              const std::vector<GraftSlot>& slots);

// Signed sum over all order-preserving graftings onto the given white
// vertices (all whites of the host when `whites` is empty).
std::vector<GraftTerm> graft_all_terms(const BWTree& host, const std::vector<BWTree>& branches,
                                       const std::vector<int>& whites = {});
TreeChain graft_all(const BWTree& host, const std::vector<BWTree>& branches, const std::vector<int>& whites = {},
                    bool signed_ = true);

// One summand of a composition with every available sign attached.
struct CompositionTerm {
  std::string tree;
  int sign;     // from cut, leaf grafting and the weighted shuffle
  int koszul;   // from tracking each white edge back to its source
};

// Label-set engine: `label` must be a label of t; the label sets of t minus
// {label} and of tp must be disjoint.
std::vector<CompositionTerm> compose_at(const BWTree& t, int label, const BWTree& tp);
// Integer wrapper with operadic relabelling.
std::vector<CompositionTerm> compose_terms(const BWTree& t, int i, const BWTree& tp);

TreeChain compose(const BWTree& t, int i, const BWTree& tp, bool signed_ = true);
TreeChain compose(const TreeChain& t, int i, const TreeChain& tp, bool signed_ = true);

// Subtree-contraction engine: all trees containing tp^{+i} as a labelled
// subtree whose contraction is t, each with the sign of the edge shuffle.
TreeChain compose_contraction(const BWTree& t, int i, const BWTree& tp);
TreeChain compose_contraction(const TreeChain& t, int i, const TreeChain& tp);

// Cell boundary with the sign convention fixed for Nat (see README).
TreeChain differential(const BWTree& t);
TreeChain differential(const TreeChain& c);

// ------------------------------------------------------------ tails

enum class TailMode {
  full,   // every non-root black vertex, tails split in place
  outer,  // first/last tail at the root's child plus tail splits
};

// Contract black-black edges except the root edge.
PlanarNode normalize_tails(PlanarNode n);
std::map<std::string, Int> tail_differential(const BWTree& t, TailMode mode = TailMode::outer);
std::map<std::string, Int> tail_differential(const std::map<std::string, Int>& c, TailMode mode = TailMode::outer);

// Truncated foliage F(t): tails added to white vertices in all slots, at
// most `budget` tails in total. Keyed by tail count (each part homogeneous).
using FoliatedSum = std::map<int, TreeChain>;
FoliatedSum foliage(const BWTree& t, int budget);
int tail_count(const BWTree& t);
// Plug the children of white vertex i of t into the tails of tp.
std::string compose_foliated(const BWTree& t, int i, const BWTree& tp);

// ------------------------------------------------ symmetric group, signs

// sigma[l-1] is the new label of the vertex labelled l.
TreeChain sym_action(const std::vector<int>& sigma, const TreeChain& c);
TreeChain sym_action(const std::vector<int>& sigma, const TreeChain& c, Orientation o);
// Permutation sign between the Nat order and the order `o` of the white edges.
int orientation_sign(const BWTree& t, Orientation o);
TreeChain convert_orientation(const TreeChain& c, Orientation to);

// Degree annotation of white edges: +1 tensors with L, -1 with its dual.
struct ShiftMarker {
  int shift = 0;
};

struct ShiftedChain {
  TreeChain chain;
  ShiftMarker marker;
};

ShiftedChain shift(const ShiftedChain& c, int by);
// +1: unsigned tree composition, signs from permuting the L factors.
// -1: signed tree composition, signs from permuting the dual factors.
ShiftedChain compose_shifted(const ShiftedChain& a, int i, const ShiftedChain& b);

}  // namespace artifact

namespace artifact {

// ------------------------------------------------------ axiom verification

struct AxiomTally {
  long long checks = 0;
  long long failures = 0;
  std::vector<std::string> counterexamples;  // first few only
};

struct OperadVerification {
  AxiomTally sequential, parallel, unit, equivariance;
  bool ok() const {
    return sequential.failures + parallel.failures + unit.failures + equivariance.failures == 0;
  }
};

struct OperadVerifyOptions {
  int nmax = 3;             // exhaustive over all trees with at most nmax lobes
  int samples = 500;        // random triples with exactly sample_lobes lobes each
  int sample_lobes = 4;
  std::uint64_t seed = 1;
  int threads = 1;
};

// Each check covers the signed and the unsigned composition at once.
OperadVerification verify_operad(const OperadVerifyOptions& opt);

}  // namespace artifact
