#include "trihom/homology.hpp"

#include "space.hpp"

#include <algorithm>
#include <limits>

namespace trihom {

using detail::HPlus;
using detail::Key3;
using detail::Space;

namespace {

struct Col {
  Key3 k;
  uint32_t i;
};

// A finite piece of the deformed complex: H+ blocks in a fixed order.
struct Piece {
  std::vector<Col> cols;
  std::map<std::pair<Key3, uint32_t>, uint32_t> idx;
  size_t size() const { return cols.size(); }
};

Piece make_piece(HPlus& hp, const std::vector<Key3>& keys) {
  Piece p;
  for (auto& k : keys) {
    size_t d = hp.block(k).dim();
    for (uint32_t i = 0; i < d; ++i) {
      p.idx[{k, i}] = static_cast<uint32_t>(p.cols.size());
      p.cols.push_back({k, i});
    }
  }
  return p;
}

// Images of the basis of `from` under dW + dv, in coordinates of `to`.
std::vector<SparseVec> differential(HPlus& hp, const Bicomplex& C, const Piece& from, const Piece& to) {
  std::vector<SparseVec> out(from.size());
  for (size_t c = 0; c < from.size(); ++c) {
    auto [k, i] = from.cols[c];
    std::map<uint32_t, Rat> acc;
    for (const Op* op : {&C.d_pot, &C.d_v})
      for (auto& [tk, v] : hp.induce(*op, k, i))
        for (auto& [j, x] : v) {
          auto it = to.idx.find({tk, j});
          if (it == to.idx.end()) throw HomologyError("deformed: differential leaves the truncated complex");
          acc[it->second] += x;
        }
    for (auto& [j, x] : acc)
      if (x != 0) out[c].emplace_back(j, x);
  }
  return out;
}

// For an echelon basis (leftmost pivots), count rows by the tag of their
// pivot column.
std::map<int, long> pivot_counts(const std::vector<SparseVec>& vecs, const std::vector<int>& tag) {
  RatEchelon e;
  for (auto& v : vecs)
    if (!v.empty()) e.add(v);
  std::map<int, long> out;
  for (auto& [piv, row] : e.rows()) ++out[tag[piv]];
  return out;
}

// Graded pieces of the homology of  in -> mid -> out  for the filtration
// whose leftmost columns of `mid` carry the largest subspaces.
std::map<int, long> filtered_homology(HPlus& hp, const Bicomplex& C, const Piece& in, const Piece& mid,
                                      const Piece& out, const std::vector<int>& tag) {
  std::vector<SparseVec> Z;
  if (out.size() == 0) {
    for (uint32_t i = 0; i < mid.size(); ++i) Z.push_back({{i, Rat(1)}});
  } else {
    Z = kernel_basis(RatMatrix::from_columns(out.size(), differential(hp, C, mid, out)));
  }
  std::vector<SparseVec> B = in.size() ? differential(hp, C, in, mid) : std::vector<SparseVec>{};
  auto z = pivot_counts(Z, tag), b = pivot_counts(B, tag);
  for (auto& [t, c] : b) {
    z[t] -= c;
    if (z[t] < 0) throw HomologyError("deformed: boundary count exceeds cycle count (bug)");
  }
  std::map<int, long> r;
  for (auto& [t, c] : z)
    if (c) r[t] = c;
  return r;
}

}  // namespace

long FilteredHomology::total() const {
  long s = 0;
  for (auto& [k, d] : dims) s += d;
  return s;
}

FilteredHomology compute_deformed(const BraidWord& b, const Potential& pot, const ComputeOptions& opt) {
  if (!closure_info(b).is_knot()) throw HomologyError("deformed homology is only computed for knots");
  TrigradedDims hhh = compute_triply_graded(b, opt);
  ClosureInfo ci = closure_info(b);
  int w = ci.writhe, n = b.strands, len = static_cast<int>(b.length());
  int N = pot.N();
  const GradingShift& S = opt.shift;
  Tri z = S.apply(0, 0, 0, w, n, len);
  // level = q_sl(N) = Q - 2(N+1)h + c_level,  t_DGR = -h - v + c_t
  int c_level = z.q + N * z.a;
  int c_t = (z.a - z.t) / 2;
  auto level_of = [&](int Q, int h) { return Q - 2 * (N + 1) * h + c_level; };

  std::set<int> levels, tvals;
  for (auto& [x, d] : hhh.dims) {
    levels.insert(x.q_sl(N));
    tvals.insert(x.t_dgr());
  }
  FilteredHomology res;
  res.pot = pot;
  if (levels.empty()) return res;
  int J = *levels.rbegin();
  bool homog = pot.homogeneous();

  Bicomplex C = build_bicomplex(b, &pot, true, true);
  Space sp(C);
  HPlus hp(sp);

  // blocks with t_DGR = t, level in [lo, hi]
  auto keys_for = [&](int t, int lo, int hi) {
    std::vector<Key3> ks;
    for (int h = sp.hmin(); h <= sp.hmax(); ++h) {
      int v = c_t - t - h;
      int base = 2 * (N + 1) * h - c_level;   // Q at level 0
      int Qlo = std::max(0, lo + base), Qhi = hi + base;
      for (int Q = Qlo + (Qlo & 1); Q <= Qhi; Q += 2)
        if (sp.block({Q, h, v}).size()) ks.push_back({Q, h, v});
    }
    return ks;
  };

  if (homog) {
    for (int L : levels)
      for (int t : tvals) {
        auto order = [&](std::vector<Key3> ks) {
          std::stable_sort(ks.begin(), ks.end(), [](const Key3& x, const Key3& y) { return x[1] < y[1]; });
          return ks;
        };
        Piece in = make_piece(hp, order(keys_for(t + 1, L, L)));
        Piece mid = make_piece(hp, order(keys_for(t, L, L)));
        Piece out = make_piece(hp, order(keys_for(t - 1, L, L)));
        std::vector<int> tag;
        for (auto& c : mid.cols) tag.push_back(c.k[1]);
        for (auto& [h, d] : filtered_homology(hp, C, in, mid, out, tag)) {
          res.dims[{L, t}] += d;
          for (long r = 0; r < d; ++r) {
            res.levels.push_back(L);
            int Q = L + 2 * (N + 1) * h - c_level;
            res.positions.push_back(S.apply(Q, h, c_t - t - h, w, n, len));
          }
        }
      }
  } else {
    int lowest = std::numeric_limits<int>::max();
    for (int h = sp.hmin(); h <= sp.hmax(); ++h) lowest = std::min(lowest, level_of(0, h));
    for (int t : tvals) {
      auto order = [&](std::vector<Key3> ks) {
        std::stable_sort(ks.begin(), ks.end(), [&](const Key3& x, const Key3& y) {
          return level_of(x[0], x[1]) > level_of(y[0], y[1]);
        });
        return ks;
      };
      Piece in = make_piece(hp, order(keys_for(t + 1, lowest, J)));
      Piece mid = make_piece(hp, order(keys_for(t, lowest, J)));
      Piece out = make_piece(hp, order(keys_for(t - 1, lowest, J)));
      std::vector<int> tag;
      for (auto& c : mid.cols) tag.push_back(level_of(c.k[0], c.k[1]));
      for (auto& [L, d] : filtered_homology(hp, C, in, mid, out, tag)) {
        res.dims[{L, t}] += d;
        for (long r = 0; r < d; ++r) res.levels.push_back(L);
      }
    }
  }
  std::sort(res.levels.begin(), res.levels.end());
  return res;
}

JS j_and_s(const FilteredHomology& h) {
  int N = h.pot.N();
  if (N < 2) throw HomologyError("j_and_s: s is undefined for N = 1");
  if (h.total() != 1) throw HomologyError("j_and_s: deformed homology is " + std::to_string(h.total()) + "-dimensional");
  JS r;
  r.j = h.levels.front();
  r.s = Rat(r.j, 2 * (N - 1));
  r.s.canonicalize();
  return r;
}

}  // namespace trihom
