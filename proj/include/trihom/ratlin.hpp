#pragma once

// Exact sparse linear algebra over Q.
//
// Two engines live here.  IntEchelon does fraction-free elimination on
// primitive integer rows and is used for plain ranks of large matrices.
// RatEchelon keeps monic rational rows and can carry a "tag" vector per
// row, which is how quotient coordinates (cycles modulo boundaries) are
// read off.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trihom {

using Rat = mpq_class;
using Int = mpz_class;

using SparseVec = std::vector<std::pair<uint32_t, Rat>>;   // sorted, no zeros
using IntVec = std::vector<std::pair<uint32_t, Int>>;

struct Entry {
  size_t row = 0, col = 0;
  Rat val;
};

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols) {}

  // Sums duplicates and drops zeros.  Throws std::out_of_range on bad indices.
  static RatMatrix from_entries(size_t rows, size_t cols, std::vector<Entry> e);
  static RatMatrix identity(size_t n);
  static RatMatrix from_rows(size_t cols, const std::vector<SparseVec>& rows);
  static RatMatrix from_columns(size_t rows, const std::vector<SparseVec>& cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const std::vector<Entry>& entries() const { return e_; }   // row-major order
  size_t nnz() const { return e_.size(); }
  bool is_zero() const { return e_.empty(); }

  Rat at(size_t r, size_t c) const;
  RatMatrix transpose() const;
  std::vector<SparseVec> row_vectors() const;
  SparseVec apply(const SparseVec& x) const;   // M * x

  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  RatMatrix scaled(const Rat& s) const;
  bool operator==(const RatMatrix& o) const;

  std::string to_string() const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Entry> e_;
};

// sparse vector helpers
void axpy(SparseVec& y, const Rat& a, const SparseVec& x);   // y += a x
SparseVec scaled(const SparseVec& x, const Rat& a);
bool is_zero(const SparseVec& x);

// Fraction-free incremental echelon over Z.  Rows are kept primitive.
class IntEchelon {
 public:
  // Returns true if the row was independent of the rows seen so far.
  bool add(IntVec row);
  bool add(const SparseVec& row);
  size_t rank() const { return piv_.size(); }

 private:
  std::map<uint32_t, IntVec> piv_;   // leading index -> row
};

// Rational echelon with optional tags.  Pivot rows are monic; reduction
// scans columns left to right so the remainder has no pivot columns.
class RatEchelon {
 public:
  // Reduce v in place by the stored rows; if coeff is non-null, the tag
  // combination consumed by the reduction is accumulated into it.
  void reduce(SparseVec& v, SparseVec* coeff = nullptr) const;
  // Reduce then insert; returns false if v reduced to zero.
  bool add(SparseVec v, SparseVec tag = {});
  size_t rank() const { return rows_.size(); }
  bool has_pivot(uint32_t c) const { return rows_.count(c) != 0; }
  const std::map<uint32_t, std::pair<SparseVec, SparseVec>>& rows() const { return rows_; }

 private:
  std::map<uint32_t, std::pair<SparseVec, SparseVec>> rows_;   // pivot -> (row, tag)
};

size_t rank(const RatMatrix& m);
size_t rank_of_rows(const std::vector<SparseVec>& rows);

// Basis of {x : m x = 0}, as vectors of length m.cols().
std::vector<SparseVec> kernel_basis(const RatMatrix& m);
// Solutions of rows[i] . x = rhs[i].  `particular` sets the free variables
// to zero; determined[k] says x_k is the same in every solution.
struct LinearSolution {
  bool consistent = true;
  std::vector<Rat> particular;
  std::vector<bool> determined;
  std::vector<SparseVec> kernel;
};
LinearSolution solve_linear(const std::vector<SparseVec>& rows, const std::vector<Rat>& rhs, size_t nvars);

// Basis of the column space of m.
std::vector<SparseVec> image_basis(const RatMatrix& m);

struct HomologyInfo {
  size_t dim = 0;
  size_t rank_in = 0;
  size_t rank_out = 0;
  size_t kernel_dim = 0;
  std::vector<SparseVec> kernel;   // basis of ker(d_out)
};

// d_in : A -> B, d_out : B -> C.  Returns dim ker(d_out) - rank(d_in).
// Throws std::invalid_argument on size mismatch or d_out*d_in != 0.
HomologyInfo homology_dim(const RatMatrix& d_in, const RatMatrix& d_out,
                          bool want_kernel = false);

// Cycles modulo boundaries with explicit representatives.
// Given spanning sets of B subset Z, picks reps of Z/B and reads
// coordinates of any element of Z.
class Quotient {
 public:
  Quotient() = default;
  Quotient(const std::vector<SparseVec>& boundaries,
           const std::vector<SparseVec>& cycles);
  size_t dim() const { return reps_.size(); }
  const std::vector<SparseVec>& reps() const { return reps_; }
  // Coordinates of z (assumed to lie in Z).  Throws if z is not in Z.
  SparseVec coords(SparseVec z) const;
  // True if z lies in B.
  bool in_boundaries(SparseVec z) const;

 private:
  RatEchelon ech_;
  RatEchelon bech_;
  std::vector<SparseVec> reps_;
};

}  // namespace trihom
