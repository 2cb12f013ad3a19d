#pragma once

// Analysis of a trigraded table: Delta-profile, d_1-standard certification,
// the S-invariant with the d_1 ranks, sl(N) collapse, symmetry and
// unimodality, and the block/zigzag decomposition.
//
// All maps act inside one q_sl(1) = q + a class.  d_1^(i) has degree
// (q + 2i, a - 2i, t + 2 - 2i), so it moves Delta by 2 - 2i; d_1 = d_1^(1)
// runs along lines of fixed (Delta, q + a) with a decreasing.

#include "trihom/homology.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace trihom {

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DeltaProfile {
  std::set<int> support;
  int thickness = 0;   // (max - min)/2 + 1
  bool thin = false;
  std::map<int, TrigradedDims> slices;
};

DeltaProfile delta_profile(const TrigradedDims& h);

enum class D1Status { standard_single_delta, standard_gap, standard_exhaustive, undetermined };
std::string to_string(D1Status s);

// A possible d_1^(i), i >= 2, between two populated cells of the E_1 page.
struct HigherArrow {
  int page = 2;
  Tri source, target;
  bool operator==(const HigherArrow&) const = default;
};

// One consistent outcome of the rank search with some d_1^(i>=2) nonzero.
struct D1Scenario {
  int q_plus_a = 0;
  std::optional<int> S;   // only in the class q + a = 0
  std::vector<std::pair<HigherArrow, long>> higher;   // nonzero ranks only
};

struct D1Certificate {
  D1Status status = D1Status::undetermined;
  std::string reason;
  std::optional<int> S;
  std::map<Tri, long> d1_ranks;   // rank of d_1 out of each cell (zeros omitted)
  std::vector<HigherArrow> potential;
  std::vector<HigherArrow> blocked;   // one end populated, the other empty
  long scenarios_searched = 0;    // complete assignments plus cut branches
  long excluded_scenarios = 0;    // of those, rejected while some d_1^(i>=2) could be nonzero
  std::vector<D1Scenario> open;   // consistent outcomes with d_1^(i>=2) != 0
  bool standard() const { return status != D1Status::undetermined; }
};

// Stage 1: one Delta.  Stage 2: two adjacent Deltas with the gap
// inequality, or no pair of populated cells a higher differential could
// join.  Stage 3: exhaustive page-by-page rank search with E_infinity of
// dimension 1 at some (S, -S, -S).  Throws InvariantError on an empty or
// odd table and when no rank assignment is consistent at all.
D1Certificate certify_d1_standard(const TrigradedDims& h);

struct SInvariant {
  int S = 0;
  std::map<Tri, long> d1_ranks;
  Tri d1_survivor;        // (S, -S, -S)
  Tri d_minus1_survivor;  // image of the above under (q,a,t) -> (-q, a, t + 2q)
};

// Euler characteristic (sign (-1)^(a/2)) per d_1-line; exactly one line,
// with q + a = 0, has |chi| = 1.  Ranks are back-solved along every line.
SInvariant s_invariant(const TrigradedDims& h, const D1Certificate& cert);

struct SlNCollapse {
  int N = 0;
  std::map<std::pair<int, int>, long> dims;   // (q_sl(N), t_DGR) -> dim
  Rat s;                                      // s_{x^N - x} = -S/2
  int j = 0;                                  // 2(N-1) s
  Rat genus_bound;                            // |s|
};

// Requires N > |Delta| (the thickness); throws InvariantError otherwise.
SlNCollapse slN_collapse(const TrigradedDims& h, int N, int S);

struct StructureReport {
  bool symmetric = true;
  std::vector<Tri> symmetry_violations;
  bool unimodal = true;
  std::vector<std::string> unimodality_violations;   // "Delta=.. a=.. q=..mod 4"
  // (Delta, a) -> n -> multiplicity of L(n)
  std::map<std::pair<int, int>, std::map<int, long>> irreps;
};

StructureReport structure_checks(const TrigradedDims& h);

struct Block {
  int delta = 0, a_top = 0, n = 0;   // L(n) at a_top, L(n+1)+L(n-1) at a_top-2, L(n) at a_top-4
  bool operator==(const Block&) const = default;
};
struct Zigzag {
  int type = 1;                      // 1: L(k) over L(k-1); 2: L(k-1) over L(k)
  int delta = 0, a_top = 0, k = 0;
  bool operator==(const Zigzag&) const = default;
};
struct Decomposition {
  std::vector<Block> blocks;
  std::vector<Zigzag> zigzags;
};
struct BlockDecomposition {
  Decomposition primary;                    // first in greedy order
  std::vector<Decomposition> alternatives;  // every consistent decomposition, primary first
  bool unique() const { return alternatives.size() == 1; }
  int zigzag_count(int type) const;
};

// Exhaustive over block/zigzag placements (largest n first, top a-degree
// first), keeping those with exactly one zigzag, its d_1 survivor at
// (S, -S, -S), and the d_1 ranks reproduced.  Throws InvariantError when
// nothing fits.
BlockDecomposition block_decomposition(const TrigradedDims& h, int S, const std::map<Tri, long>& d1_ranks);

// Everything above in one record.
struct InvariantReport {
  std::string name;
  DeltaProfile profile;
  D1Certificate cert;
  std::optional<SInvariant> S;
  std::vector<SlNCollapse> s_values;
  std::optional<Rat> genus_bound;
  StructureReport structure;
  std::optional<BlockDecomposition> blocks;
  std::optional<int> known_s;                 // Rasmussen s, when supplied
  std::vector<std::string> notes;
};

struct AnalyzeOptions {
  std::vector<int> N = {2, 3, 4};   // sl(N) collapses to report (skipped when N <= thickness)
  bool blocks = true;
};

InvariantReport analyze(const std::string& name, const TrigradedDims& h, const AnalyzeOptions& opt = {},
                        std::optional<int> known_s = std::nullopt);

// JSON text of one report (keys in fixed order).
std::string report_json(const InvariantReport& r, int indent = 2);

}  // namespace trihom
