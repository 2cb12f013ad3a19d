#include "trihom/braid.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace trihom {

std::string BraidWord::to_string() const {
  std::ostringstream os;
  os << "n=" << strands << ":";
  for (int g : word) os << " " << g;
  return os.str();
}

void validate(const BraidWord& b) {
  if (b.strands < 1) throw BraidError("braid: strand count must be at least 1");
  for (int g : b.word)
    if (g == 0 || std::abs(g) >= b.strands)
      throw BraidError("braid: generator index " + std::to_string(g) + " out of range for " +
                       std::to_string(b.strands) + " strands");
}

BraidWord parse_braid(std::string_view text) {
  std::string s(text);
  auto colon = s.find(':');
  if (colon == std::string::npos) throw BraidError("braid: missing ':' in \"" + s + "\"");
  std::string head = s.substr(0, colon);
  head.erase(std::remove_if(head.begin(), head.end(), ::isspace), head.end());
  if (head.size() < 3 || head[0] != 'n' || head[1] != '=')
    throw BraidError("braid: expected \"n=<strands>:\" prefix in \"" + s + "\"");
  BraidWord b;
  try {
    size_t used = 0;
    b.strands = std::stoi(head.substr(2), &used);
    if (used != head.size() - 2) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw BraidError("braid: malformed strand count \"" + head.substr(2) + "\"");
  }
  std::istringstream in(s.substr(colon + 1));
  std::string tok;
  while (in >> tok) {
    size_t used = 0;
    int g = 0;
    try {
      g = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw BraidError("braid: malformed token \"" + tok + "\"");
    }
    if (used != tok.size()) throw BraidError("braid: malformed token \"" + tok + "\"");
    b.word.push_back(g);
  }
  validate(b);
  return b;
}

ClosureInfo closure_info(const BraidWord& b) {
  validate(b);
  ClosureInfo c;
  int n = b.strands;
  // pos_of[a]: current position of the strand that started at a
  std::vector<int> at(n);   // at[p] = starting position of the strand now at p
  std::iota(at.begin(), at.end(), 0);
  for (int g : b.word) {
    int i = std::abs(g) - 1;
    std::swap(at[i], at[i + 1]);
    c.writhe += g > 0 ? 1 : -1;
  }
  c.perm.assign(n, 0);
  for (int p = 0; p < n; ++p) c.perm[at[p]] = p;
  std::vector<bool> seen(n, false);
  for (int a = 0; a < n; ++a) {
    if (seen[a]) continue;
    std::vector<int> cyc;
    for (int x = a; !seen[x]; x = c.perm[x]) {
      seen[x] = true;
      cyc.push_back(x);
    }
    c.cycles.push_back(cyc);
  }
  c.components = static_cast<int>(c.cycles.size());
  return c;
}

BraidWord mirror(const BraidWord& b) {
  BraidWord m = b;
  for (int& g : m.word) g = -g;
  return m;
}

BraidWord stabilize(const BraidWord& b, int sign) {
  BraidWord s = b;
  s.word.push_back(sign > 0 ? b.strands : -b.strands);
  s.strands = b.strands + 1;
  return s;
}

BraidWord rotate(const BraidWord& b) {
  BraidWord r = b;
  if (!r.word.empty()) std::rotate(r.word.begin(), r.word.begin() + 1, r.word.end());
  return r;
}

int symmetric_signature(const std::vector<std::vector<int>>& m0) {
  size_t n = m0.size();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = m0[i][j];
  int sig = 0;
  std::vector<bool> done(n, false);
  for (size_t step = 0; step < n; ++step) {
    // find a nonzero diagonal pivot, else manufacture one by congruence
    int p = -1;
    for (size_t i = 0; i < n && p < 0; ++i)
      if (!done[i] && m[i][i] != 0) p = static_cast<int>(i);
    if (p < 0) {
      int a = -1, c = -1;
      for (size_t i = 0; i < n && a < 0; ++i)
        for (size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && m[i][j] != 0) {
            a = static_cast<int>(i);
            c = static_cast<int>(j);
            break;
          }
      if (a < 0) break;   // remaining block is zero
      // row/col a += row/col c gives diagonal 2 m[a][c] + m[c][c] = 2 m[a][c]
      for (size_t k = 0; k < n; ++k) m[a][k] += m[c][k];
      for (size_t k = 0; k < n; ++k) m[k][a] += m[k][c];
      p = a;
    }
    mpq_class d = m[p][p];
    sig += d > 0 ? 1 : -1;
    done[p] = true;
    for (size_t i = 0; i < n; ++i) {
      if (done[i] || m[i][p] == 0) continue;
      mpq_class f = m[i][p] / d;
      for (size_t k = 0; k < n; ++k) m[i][k] -= f * m[p][k];
    }
    for (size_t i = 0; i < n; ++i)
      if (!done[i]) m[p][i] = m[i][p] = 0;
  }
  return sig;
}

SeifertData seifert_data(const BraidWord& b) {
  validate(b);
  struct Loop {
    int col, lo, hi;   // column and the two consecutive crossings it runs between
  };
  std::vector<Loop> loops;
  for (int col = 1; col < b.strands; ++col) {
    int prev = -1;
    for (int k = 0; k < static_cast<int>(b.word.size()); ++k) {
      if (std::abs(b.word[k]) != col) continue;
      if (prev >= 0) loops.push_back({col, prev, k});
      prev = k;
    }
  }
  auto eps = [&](int k) { return b.word[k] > 0 ? 1 : -1; };
  size_t m = loops.size();
  SeifertData d;
  d.seifert_matrix.assign(m, std::vector<int>(m, 0));
  auto& V = d.seifert_matrix;
  for (size_t A = 0; A < m; ++A) {
    const Loop& x = loops[A];
    V[A][A] = -(eps(x.lo) + eps(x.hi)) / 2;
    for (size_t B = 0; B < m; ++B) {
      if (A == B) continue;
      const Loop& y = loops[B];
      if (y.col == x.col && x.hi == y.lo) {
        // consecutive loops sharing a band
        if (eps(x.hi) > 0)
          V[A][B] = 1;
        else
          V[B][A] = -1;
      } else if (y.col == x.col + 1) {
        if (x.lo < y.lo && y.lo < x.hi && x.hi < y.hi) V[A][B] = -1;
        if (y.lo < x.lo && x.lo < y.hi && y.hi < x.hi) V[A][B] = 1;
      }
    }
  }
  std::vector<std::vector<int>> S(m, std::vector<int>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) S[i][j] = V[i][j] + V[j][i];
  d.signature = symmetric_signature(S);
  return d;
}

int signature(const BraidWord& b) {
  if (!closure_info(b).is_knot()) throw BraidError("signature: closure of " + b.to_string() + " is a link");
  return seifert_data(b).signature;
}

}  // namespace trihom
