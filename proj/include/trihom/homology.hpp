#pragma once

// Exact homology of the closed reduced bicomplex, degree by degree.
//
// Raw gradings of a chain: Q (q_raw: twice the polynomial degree plus the
// generator shift), h (number of horizontal sources) and v (vertical
// degree).  They map to NS gradings by
//   q = Q - 2h - l + alpha,  a = -2h + beta,  t = 2v + gamma
// with l the crossing count and (alpha, beta, gamma) integer-linear in the
// writhe w and strand count n (see GradingShift).

#include "trihom/braid.hpp"
#include "trihom/ratlin.hpp"
#include "trihom/skein.hpp"
#include "trihom/soergel.hpp"

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace trihom {

struct Tri {
  int q = 0, a = 0, t = 0;
  int delta() const { return q + a + t; }
  int t_dgr() const { return (a - t) / 2; }
  int q_sl(int N) const { return q + N * a; }
  auto operator<=>(const Tri&) const = default;
};

struct TrigradedDims {
  std::map<Tri, long> dims;   // only positive entries

  void add(const Tri& x, long d);
  long at(const Tri& x) const;
  long total() const;
  bool empty() const { return dims.empty(); }
  std::set<int> delta_support() const;
  // sum dim * (-1)^((t-a)/2) q^q a^a, i.e. the Poincare series at t = -1
  LaurentPoly2 euler() const;
  bool all_even() const;
  bool operator==(const TrigradedDims&) const = default;

  // Canonical text: "knot <name>", "convention NS", then one
  // "entry q=.. a=.. t=.. dim=.." per line in increasing (q, a, t).
  std::string to_text(const std::string& name) const;
};

struct HomologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WindowError : HomologyError {
  using HomologyError::HomologyError;
};

// Table of a thin knot from its HOMFLY-PT polynomial: each term c q^i a^j
// goes to (i, j, -sigma - i - j) with dimension |c|.  Throws if a sign does
// not match (-1)^((t-a)/2).
TrigradedDims thin_reconstruction(const LaurentPoly2& P, int sigma);

struct GradingShift {
  // coefficients of (w, n, 1)
  std::array<int, 3> alpha{}, beta{}, gamma{};

  static GradingShift standard();
  Tri apply(int Q, int h, int v, int w, int n, int len) const;
  std::string to_string() const;
  bool operator==(const GradingShift&) const = default;
};

using RawKey = std::array<int, 3>;   // (Q, h, v)
using RawDims = std::map<RawKey, long>;

// Raw triply graded homology in q_raw slices Q in [Qlo, Qhi].
// Slices are independent and are spread over `jobs` threads.
RawDims raw_triply_graded(const BraidWord& b, int Qlo, int Qhi, int jobs = 1);

// Fits the shift constants on the corpus.  The corpus must contain the
// unknot on one and two strands and both trefoils; every knot in it must
// be thin (the targets are thin reconstructions).  Throws HomologyError
// when no integer-linear shift fits.
GradingShift calibrate_shift(const std::vector<BraidWord>& corpus, int jobs = 1);

struct ComputeOptions {
  int jobs = 1;
  std::optional<std::pair<int, int>> window;   // NS q-range; default from the skein polynomial
  GradingShift shift = GradingShift::standard();
  bool grow = true;                            // enlarge the window when the band is populated
};

// Reduced HOMFLY-PT homology of a knot closure.
TrigradedDims compute_triply_graded(const BraidWord& b, const ComputeOptions& opt = {});

// Deformed homology H(H+, dW + dv) for a knot.
struct FilteredHomology {
  Potential pot;
  // associated graded of the q_sl(N) filtration, keyed (q_sl(N), t_DGR)
  std::map<std::pair<int, int>, long> dims;
  // filtration level of each basis class, ascending
  std::vector<int> levels;
  long total() const;
  // For homogeneous dW only: trigraded position of each class in the
  // E-infinity page of the horizontal filtration.
  std::vector<Tri> positions;
};

FilteredHomology compute_deformed(const BraidWord& b, const Potential& pot, const ComputeOptions& opt = {});

// j = filtration level of the generator, s = j / (2(N-1)).
struct JS {
  int j = 0;
  Rat s;
};
JS j_and_s(const FilteredHomology& h);

// Explicit model of the reduced homology with chosen representatives, for
// inducing chain maps (E, dW) on it.
class HomologyModel {
 public:
  struct Class {
    RawKey raw{};
    Tri tri;
  };
  HomologyModel(const BraidWord& b, const Potential* pot, const ComputeOptions& opt = {});
  ~HomologyModel();
  HomologyModel(const HomologyModel&) = delete;
  HomologyModel& operator=(const HomologyModel&) = delete;

  const std::vector<Class>& basis() const;
  const TrigradedDims& dims() const;
  const Bicomplex& complex() const;
  // Matrix of the map induced by a chain operator that commutes or
  // anticommutes with d+ and, modulo d+-homotopy, with dv.  Column j is
  // the image of basis class j.  Throws if an image leaves the model.
  RatMatrix induce(const Op& op);
  // Induced E (from E0 = u - Theta) and induced dW (the d_N map on
  // homology; requires a potential).
  RatMatrix induce_E();
  RatMatrix induce_dW();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace trihom
