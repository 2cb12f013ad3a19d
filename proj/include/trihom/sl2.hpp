#pragma once

// sl(2) action on reduced HOMFLY-PT homology and the super differentials.
//
// Everything here is finite-dimensional linear algebra over Q on a basis
// of homology classes labelled by (q, a, Delta).  E raises q by 4, H is
// half the q-degree, F is solved from E and H.  d_k has degree
// (q + 2k, a - 2, t), so it shifts Delta by 2k - 2.

#include "trihom/homology.hpp"
#include "trihom/ratlin.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trihom {

struct SL2Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeightLabel {
  int q = 0, a = 0, delta = 0;
  std::string name;
  int weight() const { return q / 2; }
};

struct SL2Action {
  std::vector<WeightLabel> basis;
  RatMatrix E, H, F;
  bool has_F = false;
  size_t dim() const { return basis.size(); }
};

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

bool all_ok(const std::vector<Check>& checks);

// Commutator a b - b a and anticommutator a b + b a of square matrices.
RatMatrix bracket(const RatMatrix& a, const RatMatrix& b);
RatMatrix anti_bracket(const RatMatrix& a, const RatMatrix& b);

// Diagonal matrix of q/2.
RatMatrix weight_matrix(const std::vector<WeightLabel>& basis);

// True if every entry maps label c to a label shifted by (dq, da, dd).
bool has_degree(const RatMatrix& m, const std::vector<WeightLabel>& basis, int dq, int da, int dd,
                std::string* why = nullptr);

// E induced from the chain-level operator on a knot closure.  Throws
// SL2Error when the induced E leaves its (a, Delta) block.
SL2Action action_from_model(HomologyModel& model);
SL2Action induce_E(const BraidWord& b, const ComputeOptions& opt = {});

// E^k : weight -k -> weight k bijective within each (a, Delta).
bool hard_lefschetz(const SL2Action& act, std::string* why = nullptr);

// F from E and H via the lowest-weight decomposition: in weight -n the
// lowest-weight vectors are ker E^(n+1), and F E^k v = k(n-k+1) E^(k-1) v.
// Throws SL2Error if hard Lefschetz fails.
SL2Action solve_F(const SL2Action& act);

// [H,E] = 2E, [H,F] = -2F, [E,F] = H, E of degree (4, 0, 0), hard Lefschetz.
std::vector<Check> bracket_checks(const SL2Action& act);

// exp(E) exp(-F) exp(E): sends weight w to weight -w.
RatMatrix weight_reversal(const SL2Action& act);

// d_{a|b} = (1/b!) ad_F^b(d_N) for a + b = N.  These are divided powers,
// so [E, d_{a|b}] = (a+1) d_{a+1|b-1} and [F, d_{a|b}] = (b+1) d_{a-1|b+1};
// the rescaled family d' = a! b! / N! d satisfies [E, d'_{a|b}] = b d'_{a+1|b-1},
// [F, d'_{a|b}] = a d'_{a-1|b+1}.  The two agree for N = 1.
struct SuperDifferentials {
  int N = 0;
  std::vector<RatMatrix> d;          // d[b] = d_{N-b|b}
  std::vector<RatMatrix> rescaled;   // d'[b]
  const RatMatrix& dN() const { return d.front(); }
  // d_{-1} = [F, d_1] when N = 1
  std::optional<RatMatrix> d_minus1;
  std::vector<Check> checks;
};

// Builds the family and runs every identity.  Throws SL2Error naming the
// first failing bracket.
SuperDifferentials super_differentials(const SL2Action& act, const RatMatrix& dN, int N);

// Solve for d_k with [E, d_k] = 0, the degree of d_k, d_k^2 = 0 and the
// given normalizations.  A normalization pins coordinates of d(e_src), or
// of [F, d](e_src) when via_F; with partial = false every coordinate not
// listed is pinned to zero.  d^2 = 0 is used once enough of d is known to
// make it linear.  Throws SL2Error when inconsistent or underdetermined.
struct Normalization {
  bool via_F = false;
  size_t src = 0;
  SparseVec image;
  bool partial = false;
};
RatMatrix solve_equivariant(const SL2Action& act, int k, const std::vector<Normalization>& norms);

// The deformed differential sum_k c_k d_k on a model with known d_k
// (absent k means d_k = 0), filtered by q_sl(N) = q + N a.
struct ModelDeformation {
  std::map<int, long> graded;   // level -> dimension of the associated graded
  long total = 0;
  int j = 0;                    // lowest populated level
  Rat s;                        // j / (2(N-1))
};
ModelDeformation deform_model(const std::vector<WeightLabel>& basis, const std::map<int, RatMatrix>& d,
                              const Potential& pot);

// Worked examples transcribed as explicit bases: E from the weight
// strings, d_k as far as they are pinned down.
struct ActionFixture {
  std::string knot;
  SL2Action action;
  std::map<std::string, size_t> index;   // generator name -> basis index
  std::map<int, RatMatrix> d;            // k -> d_k
  int S = 0;
  Rat s;                                 // Rasmussen s
  const WeightLabel& label(const std::string& n) const { return action.basis.at(index.at(n)); }
  SparseVec vec(const std::string& n, const Rat& c = 1) const;
};

ActionFixture fixture_10_125();
ActionFixture fixture_11n135();
std::vector<ActionFixture> action_fixtures();

// Labels with (q, a, Delta), then each matrix row by row.
std::string dump_action(const SL2Action& act, const std::map<std::string, RatMatrix>& extra = {});

}  // namespace trihom
