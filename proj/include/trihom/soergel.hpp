#pragma once

// Edge rings, the per-crossing resolved Rouquier squares and their tensor
// product, potentials, y-ification and the chain operators xi, u, E.
//
// Local picture at a crossing on strands i, i+1 between levels k-1 and k:
// X = x_i^(k-1), Y = x_{i+1}^(k-1), Z = x_i^(k), and x_{i+1}^(k) = X+Y-Z.
// Each crossing contributes four generators, (w, k) with w in {B, R} and
// k = 1 for the source and 0 for the target of the horizontal arrow.
//
//   d+   source -> target:   R: X - Z        B: (Z - X)(Z - Y)
//   dW   target -> source:   R: W_i/(X - Z)  B: W_i/((X - Z)(Y - Z))
//   dv   positive  B -> R:   source Y - Z, target 1
//        negative  R -> B:   source 1, target Y - Z
//   h    positive  R -> B:   source 1, target Y - Z
//        negative  B -> R:   source Y - Z, target 1
//
// so that dv h + h dv = (Y - Z) id.  Vertical degree: positive B 0, R 1;
// negative R -1, B 0.

#include "trihom/braid.hpp"
#include "trihom/poly.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trihom {

struct SoergelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EdgeRing {
  int strands = 1;
  int length = 0;
  bool closed = true;    // relation (b)
  bool reduced = true;   // relation (c)
  // original variable x_i^(j) has index j*strands + i (0-based i)
  std::vector<std::vector<Rat>> subst;   // per original variable, coefficients over free vars
  std::vector<int> free_original;        // original index of each free variable
  std::vector<std::string> names;        // free variable names

  size_t free_count() const { return free_original.size(); }
  size_t original_count() const { return subst.size(); }
  // x_i^(j) with 0-based i, as a polynomial in the free variables
  Poly x(int i, int j) const;
  static std::string original_name(int i, int j);   // "x1^(0)"
};

// Linear relations imposed, as text ("x1^(0) + x2^(0) = x1^(1) + x2^(1)").
std::vector<std::string> edge_relations(const BraidWord& b, bool closed, bool reduced);
EdgeRing build_edge_ring(const BraidWord& b, bool reduced, bool closed = true);

// dW = x^N + a_N x^(N-1) + ... + a_2 x, stored by coefficient of x^k.
struct Potential {
  std::vector<Rat> dw;   // dw[k] = coefficient of x^k
  int N() const { return static_cast<int>(dw.size()) - 1; }
  bool homogeneous() const;
  std::string to_string() const;
  // "x^3-x", "x^2", "x^3+3x^2+3x".  Must be monic with zero constant term.
  static Potential parse(const std::string& text);
  static Potential power(int N);
  // W(x) = integral of dW with W(0) = 0, as a polynomial in variable v
  Poly W(int v) const;
};

// Sparse operator on the free module with one generator per index:
// cols[g] lists (target generator, coefficient).
class Op {
 public:
  Op() = default;
  explicit Op(size_t n) : cols_(n) {}
  size_t size() const { return cols_.size(); }
  const std::vector<std::pair<uint32_t, Poly>>& col(size_t g) const { return cols_[g]; }
  void add(uint32_t from, uint32_t to, const Poly& p);
  void normalize();   // merge duplicate targets, drop zeros, sort
  bool is_zero() const;
  size_t nnz() const;

  Op operator*(const Op& o) const;   // this after o
  Op operator+(const Op& o) const;
  Op operator-(const Op& o) const;
  Op scaled(const Rat& s) const;
  Op times(const Poly& p) const;     // multiply every entry by p
  bool operator==(const Op& o) const;
  static Op identity(size_t n, const Poly& p);

 private:
  std::vector<std::vector<std::pair<uint32_t, Poly>>> cols_;
};

// Anticommutator a b + b a.
Op anticommutator(const Op& a, const Op& b);
// Commutator a b - b a.
Op commutator(const Op& a, const Op& b);

struct Generator {
  int h = 0;        // horizontal degree (number of sources)
  int v = 0;        // vertical degree
  int qshift = 0;   // internal q-degree of the generator
};

struct Bicomplex {
  BraidWord braid;
  EdgeRing ring;
  std::optional<Potential> pot;
  std::vector<Generator> gens;
  Op d_plus, d_pot, d_v;

  size_t size() const { return gens.size(); }
  std::string label(uint32_t g) const;   // e.g. "Bs.Rt.Bt"
  // one line per nonzero entry: (from, to, polynomial)
  std::string dump(const Op& op) const;
};

Bicomplex build_bicomplex(const BraidWord& b, const Potential* pot, bool reduced, bool closed = true);

// Per-crossing homotopy h_c as an operator on the whole complex.
Op crossing_homotopy(const Bicomplex& c, int crossing);
// kappa_c: target R -> source R by 1 at crossing c, so that
// d+ kappa_c + kappa_c d+ = (x_i - x'_i) on the R-part of crossing c.
Op crossing_contraction(const Bicomplex& c, int crossing);
// Sign with which strand a (by bottom position) passes crossing c:
// -1 at the left input, +1 at the right input, 0 if it misses it.
std::vector<std::vector<int>> strand_signs(const BraidWord& b);

// In the resolved squares the scalar (x_i + x'_{i+1} - x_{i+1} - x'_i) h_c
// is only d+-null-homotopic, so the identities for u and E hold up to the
// explicit term 2[d+, K]:
//   [dv, u] + 2[d+, K] = sum_a (x_a + x'_w(a)) xi_a,
// K = sum_c K_c with K_c = h_c kappa_c (positive) or -kappa_c h_c (negative).
// On H+ = H(C, d+) they hold on the nose.
struct ChainOperators {
  std::vector<Op> xi;   // per strand, by bottom position
  Op u;
  Op K;
  // For knot closures over the reduced closed ring: u - Theta, a chain map
  // for dv, d+ and dW.  Empty when the closure is a link or the ring is open.
  std::optional<Op> E;
  std::vector<std::vector<Rat>> theta;   // antisymmetric correction
};

ChainOperators attach_chain_operators(const Bicomplex& c);

// y-ification.  One y per block of the partition of strands; y's are
// appended after the free ring variables.
struct YComplex {
  const Bicomplex* base = nullptr;
  std::vector<int> block_of;   // strand -> block
  int y_offset = 0;            // index of the first y variable
  Op D_v;                      // dv + sum y_block(a) xi_a
  Poly D_v_squared;            // scalar value of D_v^2 (checked to be scalar)
  Poly y(int block) const { return Poly::var(y_offset + block); }
};

YComplex yify(const Bicomplex& c, const std::vector<int>& block_of, const ChainOperators& ops);
// Partition of strands into closure components.
std::vector<int> component_blocks(const BraidWord& b);
// Partition with each strand in its own block.
std::vector<int> strand_blocks(const BraidWord& b);

// E = sum_a (x_a + x'_{w(a)}) d/dy_{block(a)} + u on a y-ified complex.
// Returns [D, E] evaluated on the y-free generators.
Op commutator_D_E(const YComplex& y, const ChainOperators& ops, const Op* e_part = nullptr);

// Identity suite for one braid.
struct IdentityCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};
std::vector<IdentityCheck> identity_checks(const BraidWord& b, const std::vector<Potential>& pots);

}  // namespace trihom
