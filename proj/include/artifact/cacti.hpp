#pragma once

#include "artifact/linalg.hpp"
#include "artifact/tree_operad.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace artifact {

// ----------------------------------------------------------- ribbon graphs

// Flag-level graph. `next` is the cycle map N: the flag following iota(f)
// in the cyclic order at its vertex, so the successor of f at its own
// vertex is next[iota[f]].
struct RibbonGraph {
  std::vector<int> iota, delta, next;
  int vertices = 0;
  int f0 = 0;
  // Bipartite trees only: colour and label per vertex.
  std::vector<Color> color;
  std::vector<int> label;
  // Cactus graphs: label of the cycle each flag lies on (0 = outside).
  std::vector<int> cycle_label;
  // Optional metric, per flag (equal on both flags of an edge).
  std::vector<Rat> mu;

  int flags() const { return static_cast<int>(iota.size()); }
  int successor(int f) const { return next[iota[f]]; }
  int predecessor(int f) const;  // inverse of successor
  std::vector<int> cycle_of_flag() const;  // cycle index per flag
  int cycle_count() const;
  int genus() const;
  // iota an involution without fixed points, successor preserves vertices
  void validate() const;
  bool marked_spineless_treelike() const;
  bool operator==(const RibbonGraph&) const = default;
};

// A planted tree as flags: two flags per edge below the root's black child,
// f0 the first flag at that vertex. The planting edge has no flags.
RibbonGraph tree_flags(const BWTree& t);
BWTree tree_from_flags(const RibbonGraph& g);

// Gamma(tau) and tau(Gamma) on flag structures.
RibbonGraph ribbon_of_tree_flags(const RibbonGraph& tree);
RibbonGraph tree_flags_of_ribbon(const RibbonGraph& gamma);

RibbonGraph ribbon_from_tree(const BWTree& t);
BWTree dual_tree(const RibbonGraph& gamma);

// Text format: `flags F`, `f0 x`, `iota ...`, `delta ...`, `next ...`,
// `cycle-label ...` and optionally `mu ...`; one line each.
RibbonGraph read_ribbon(const std::string& text);
std::string write_ribbon(const RibbonGraph& g);

// --------------------------------------------------------------- S1 graphs

struct S1Graph {
  Rat radius = 1;
  std::vector<Rat> theta{Rat(0)};  // 0 = theta_0 < ... < 1

  void validate() const;
  std::vector<Rat> metric() const;  // arc lengths, scaled by radius
};

struct S1Glue {
  S1Graph graph;
  int coincident = 0;  // marked points of S' that landed on points of S
};
S1Glue glue_s1(const S1Graph& s, const S1Graph& sp);

// Insert the points of sp (rescaled to the lobe length) into the lobe with
// the given label, measured from the lobe's distinguished flag.
struct SubGlue {
  RibbonGraph graph;
  int coincident = 0;
};
SubGlue glue_sub(const RibbonGraph& g, int lobe, const S1Graph& sp);
// The lobe's distinguished flag: N(iota(f)) for the first f on the outside
// cycle whose involute lies on the lobe.
int lobe_base_flag(const RibbonGraph& g, int lobe);

// ------------------------------------------------------------------- cacti

struct SpinelessCactus {
  BWTree type;
  // arc[e] for each edge id e >= 2 (the arc following edge e at its white
  // vertex); entries 0 and 1 are unused.
  std::vector<Rat> arc;

  static SpinelessCactus make(BWTree type, std::vector<Rat> arcs_by_id);
  void validate() const;
  Rat lobe_length(int label) const;
  Rat outside_length() const;
  bool normalized() const;
  // First arc of each black child of a white vertex sits at this offset.
  Rat position_on_lobe(int black) const;
  std::string str() const;  // cactus file text
  bool operator==(const SpinelessCactus& o) const { return type == o.type && arc == o.arc; }
};

// Cactus file: tree literal, then `arc k p/q` with k the edge index in the
// outside order (0 is the root edge, which carries no arc).
SpinelessCactus read_cactus(const std::string& text);

// Metric ribbon graph of a cactus (cycle labels, metric on lobe arcs).
RibbonGraph cactus_ribbon(const SpinelessCactus& c);

// Chord diagram: the outside circle as marked points, each carrying the
// vertex it is glued to and the lobe of the arc starting there.
struct ChordDiagram {
  std::vector<Rat> theta;   // start of each outside arc
  std::vector<int> vertex;  // equivalence class of the point
  std::vector<int> lobe;    // lobe label of the arc
  std::vector<Rat> length;
};
ChordDiagram chord_diagram(const SpinelessCactus& c);
SpinelessCactus cactus_from_chords(const ChordDiagram& d);

enum class GlueMode { normalized, right, left, symmetric };
GlueMode parse_glue_mode(const std::string& s);
std::string to_string(GlueMode m);

struct CactusGlue {
  SpinelessCactus cactus;
  int merged = 0;  // inserted points that hit an existing special point
};
CactusGlue glue_cacti(const SpinelessCactus& c, int i, const SpinelessCactus& cp, GlueMode mode);

std::vector<Rat> scaling_compose(const std::vector<Rat>& r, int i, const std::vector<Rat>& rp);

// Uniform over types with n lobes, then per lobe positive integer weights in
// [1, denominator] normalized to sum 1.
SpinelessCactus random_normalized_cactus(int n, std::uint64_t& state, int denominator = 12);

// ------------------------------------------------------- cell complex K(n)

struct CellComplex {
  int n = 0;
  std::vector<std::vector<std::string>> cells;   // per dimension
  std::vector<SparseIntMatrix> boundary;         // boundary[k]: C_k -> C_{k-1}, k >= 1
};
CellComplex build_cell_complex(int n, int threads = 1);

struct HomologyRow {
  int k = 0;
  std::size_t cells = 0;
  std::size_t rank = 0;  // rank of the boundary out of dimension k
  std::size_t betti = 0;
  std::vector<Int> torsion;  // invariant factors > 1 in degree k
  bool snf_agrees = true;    // rational and integral ranks coincide
};
std::vector<HomologyRow> homology(const CellComplex& cx, int threads = 1);
std::string homology_table(const std::vector<HomologyRow>& rows, int n);

// ------------------------------------------------- cell composition check

struct CellCompositionReport {
  int samples = 0;
  int failures = 0;
  int merged = 0;  // samples whose gluing hit a special point (resampled)
  std::vector<std::string> counterexamples;
};
CellCompositionReport verify_cell_composition(int n, int m, int samples, std::uint64_t seed);

// Cut a glued cactus back into its factors; nullopt if lobes i..i+m-1 do
// not form a glued-in block.
std::optional<std::pair<SpinelessCactus, SpinelessCactus>> decompose(const SpinelessCactus& c, int i, int m);

}  // namespace artifact
