#pragma once

// Monomial bases of the bicomplex in fixed raw degrees.  A block is the
// span of (generator, monomial) with fixed (q_raw, horizontal, vertical)
// degree; it is finite dimensional since every ring variable has degree 2.

#include "trihom/ratlin.hpp"
#include "trihom/soergel.hpp"

#include <array>
#include <map>
#include <memory>
#include <vector>

namespace trihom::detail {

using Key3 = std::array<int, 3>;   // (q_raw, h, v)

struct Block {
  Key3 key{};
  std::vector<std::pair<uint32_t, Mono>> basis;
  std::map<std::pair<uint32_t, Mono>, uint32_t> index;
  size_t size() const { return basis.size(); }
};

class Space {
 public:
  explicit Space(const Bicomplex& c);
  const Bicomplex& complex() const { return *c_; }
  // Empty block if no generator matches.  Not thread safe; use one Space
  // per worker.
  const Block& block(const Key3& k);
  // op applied to basis vector i of block k, split by target block.
  std::map<Key3, SparseVec> apply(const Op& op, const Key3& k, uint32_t i);
  // op applied to a vector of block k.
  std::map<Key3, SparseVec> apply(const Op& op, const Key3& k, const SparseVec& x);
  // Images of all basis vectors of k that land in block to (other targets
  // are dropped).
  std::vector<SparseVec> images(const Op& op, const Key3& k, const Key3& to);
  int hmin() const { return hmin_; }
  int hmax() const { return hmax_; }
  int vmin() const { return vmin_; }
  int vmax() const { return vmax_; }

 private:
  const Bicomplex* c_;
  int nvars_;
  std::map<std::pair<int, int>, std::vector<uint32_t>> gens_by_hv_;
  std::map<Key3, std::unique_ptr<Block>> blocks_;
  int hmin_ = 0, hmax_ = 0, vmin_ = 0, vmax_ = 0;
};

// H+ = H(C, d+) blockwise, with chosen representatives.
struct HBlock {
  Key3 key{};
  Quotient quot;                  // cycles modulo boundaries, in block coordinates
  const std::vector<SparseVec>& reps() const { return quot.reps(); }
  size_t dim() const { return quot.dim(); }
};

class HPlus {
 public:
  explicit HPlus(Space& sp) : sp_(&sp) {}
  Space& space() { return *sp_; }
  const HBlock& block(const Key3& k);
  // op applied to representative i of block k, as H+ coordinates per
  // target block.  The chain image must be a d+-cycle.
  std::map<Key3, SparseVec> induce(const Op& op, const Key3& k, uint32_t i);
  // Same for an arbitrary H+ vector of block k.
  std::map<Key3, SparseVec> induce(const Op& op, const Key3& k, const SparseVec& x);
  // Chain vector of an H+ vector.
  SparseVec lift(const Key3& k, const SparseVec& x);

 private:
  Space* sp_;
  std::map<Key3, std::unique_ptr<HBlock>> blocks_;
};

}  // namespace trihom::detail
