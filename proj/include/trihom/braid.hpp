#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trihom {

struct BraidError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A braid word on `strands` strands.  Letter +i is sigma_i, -i its inverse,
// 1 <= i <= strands-1.  Crossings are read bottom to top.
struct BraidWord {
  int strands = 1;
  std::vector<int> word;

  size_t length() const { return word.size(); }
  std::string to_string() const;   // "n=3: 1 -2 1 -2"
  bool operator==(const BraidWord&) const = default;
};

BraidWord parse_braid(std::string_view text);
// Throws BraidError if any letter is out of range.
void validate(const BraidWord& b);

struct ClosureInfo {
  // perm[a] = top position of the strand entering at bottom position a (0-based)
  std::vector<int> perm;
  int writhe = 0;
  int components = 0;
  std::vector<std::vector<int>> cycles;   // bottom positions grouped by component
  bool is_knot() const { return components == 1; }
};

ClosureInfo closure_info(const BraidWord& b);

BraidWord mirror(const BraidWord& b);
// Markov stabilization: add a strand and append sigma_n^{sign}.
BraidWord stabilize(const BraidWord& b, int sign);
// Conjugate by moving the first letter to the end.
BraidWord rotate(const BraidWord& b);

struct SeifertData {
  std::vector<std::vector<int>> seifert_matrix;
  int signature = 0;
};

// Seifert matrix of the canonical surface of the closed braid (stacked
// disks joined by twisted bands) and the signature of V + V^T, normalised
// so that the negative trefoil has signature +2.
SeifertData seifert_data(const BraidWord& b);
// Throws BraidError when the closure is a link.
int signature(const BraidWord& b);

// Signature of a symmetric integer matrix.
int symmetric_signature(const std::vector<std::vector<int>>& m);

}  // namespace trihom
