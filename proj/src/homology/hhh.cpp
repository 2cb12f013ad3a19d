#include "trihom/homology.hpp"

#include "trihom/parallel.hpp"
#include "space.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace trihom {

namespace detail {

// Homology of (H(C, d+), dv) in one q_raw slice, for the requested h.
// Uses rank(dv on H+ from (h,v) to (h,v+1)) = rank Psi - rank d+(h,v) -
// rank d+(h+1,v+1), Psi(x, y) = (d+ x, dv x + d+ y).
RawDims slice_homology(Space& sp, int Q, const std::set<int>& hs) {
  const Bicomplex& C = sp.complex();
  std::map<std::pair<int, int>, long> rplus_cache;
  auto dim = [&](int h, int v) { return static_cast<long>(sp.block({Q, h, v}).size()); };
  auto rplus = [&](int h, int v) -> long {
    auto it = rplus_cache.find({h, v});
    if (it != rplus_cache.end()) return it->second;
    long r = 0;
    if (dim(h, v) && dim(h - 1, v)) r = static_cast<long>(rank_of_rows(sp.images(C.d_plus, {Q, h, v}, {Q, h - 1, v})));
    rplus_cache[{h, v}] = r;
    return r;
  };
  auto rind = [&](int h, int v) -> long {
    if (!dim(h, v) || !dim(h, v + 1)) return 0;
    uint32_t off = static_cast<uint32_t>(dim(h - 1, v));
    auto A = sp.images(C.d_plus, {Q, h, v}, {Q, h - 1, v});
    auto B = sp.images(C.d_v, {Q, h, v}, {Q, h, v + 1});
    std::vector<SparseVec> rows;
    rows.reserve(A.size() + dim(h + 1, v + 1));
    for (size_t i = 0; i < A.size(); ++i) {
      SparseVec r = std::move(A[i]);
      for (auto& [j, c] : B[i]) r.emplace_back(j + off, c);
      rows.push_back(std::move(r));
    }
    for (auto& y : sp.images(C.d_plus, {Q, h + 1, v + 1}, {Q, h, v + 1})) {
      SparseVec r;
      for (auto& [j, c] : y) r.emplace_back(j + off, c);
      rows.push_back(std::move(r));
    }
    return static_cast<long>(rank_of_rows(rows)) - rplus(h, v) - rplus(h + 1, v + 1);
  };
  RawDims out;
  for (int h : hs)
    for (int v = sp.vmin(); v <= sp.vmax(); ++v) {
      long hp = dim(h, v) - rplus(h, v) - rplus(h + 1, v);
      if (hp <= 0) continue;
      long e = hp - rind(h, v) - rind(h, v - 1);
      if (e < 0) throw HomologyError("negative homology dimension (bug)");
      if (e) out[{Q, h, v}] = e;
    }
  return out;
}

}  // namespace detail

using detail::Space;

namespace {

void require_knot(const BraidWord& b) {
  if (!closure_info(b).is_knot())
    throw HomologyError("closure of " + b.to_string() + " is a link; reduced homology is only computed for knots");
}

// Computes the requested (Q, h) cells, skipping those already in `done`.
void fill(const Bicomplex& C, const std::map<int, std::set<int>>& want, std::map<int, std::set<int>>& done,
          RawDims& acc, int jobs) {
  std::vector<std::pair<int, std::set<int>>> todo;
  for (auto& [Q, hs] : want) {
    std::set<int> need;
    for (int h : hs)
      if (!done[Q].count(h)) need.insert(h);
    if (!need.empty()) todo.emplace_back(Q, need);
  }
  std::mutex mu;
  detail::parallel_for(todo.size(), jobs, [&](size_t i) {
    Space sp(C);
    RawDims r = detail::slice_homology(sp, todo[i].first, todo[i].second);
    std::lock_guard<std::mutex> lk(mu);
    acc.insert(r.begin(), r.end());
  });
  for (auto& [Q, hs] : todo) done[Q].insert(hs.begin(), hs.end());
}

}  // namespace

RawDims raw_triply_graded(const BraidWord& b, int Qlo, int Qhi, int jobs) {
  Bicomplex C = build_bicomplex(b, nullptr, true, true);
  Space probe(C);
  std::map<int, std::set<int>> want, done;
  for (int Q = std::max(0, Qlo + (Qlo & 1)); Q <= Qhi; Q += 2)
    for (int h = probe.hmin(); h <= probe.hmax(); ++h) want[Q].insert(h);
  RawDims out;
  fill(C, want, done, out, jobs);
  return out;
}

TrigradedDims compute_triply_graded(const BraidWord& b, const ComputeOptions& opt) {
  require_knot(b);
  ClosureInfo ci = closure_info(b);
  int w = ci.writhe, n = b.strands, len = static_cast<int>(b.length());
  int qlo, qhi;
  if (opt.window) {
    std::tie(qlo, qhi) = *opt.window;
  } else {
    LaurentPoly2 P = homfly_poly(b);
    qlo = qhi = 0;
    bool first = true;
    for (auto& [k, c] : P.terms()) {
      if (first) qlo = qhi = k.first;
      first = false;
      qlo = std::min(qlo, k.first);
      qhi = std::max(qhi, k.first);
    }
    qlo -= 8;
    qhi += 8;
  }
  if (qhi < qlo) throw WindowError("empty q window");

  Bicomplex C = build_bicomplex(b, nullptr, true, true);
  Space probe(C);
  const GradingShift& S = opt.shift;
  Tri zero = S.apply(0, 0, 0, w, n, len);
  int alpha = zero.q + len;   // q = Q - 2h - len + alpha
  std::map<int, std::set<int>> done;
  RawDims raw;
  for (int round = 0;; ++round) {
    std::map<int, std::set<int>> want;
    for (int h = probe.hmin(); h <= probe.hmax(); ++h)
      for (int q = qlo; q <= qhi; ++q) {
        int Q = q + 2 * h + len - alpha;
        if (Q >= 0 && Q % 2 == 0) want[Q].insert(h);
      }
    fill(C, want, done, raw, opt.jobs);

    bool low = false, high = false;
    for (auto& [k, d] : raw) {
      auto [Q, h, v] = k;
      int q = S.apply(Q, h, v, w, n, len).q;
      if (q < qlo || q > qhi) continue;
      int edge = qlo + 2 * h + len - alpha;   // Q at the lower window edge
      if (q < qlo + 4 && edge > 0) low = true;
      if (q > qhi - 4) high = true;
    }
    if (!low && !high) break;
    if (!opt.grow || round >= 16) {
      std::ostringstream os;
      os << "q window [" << qlo << ", " << qhi << "] has homology in its boundary band; enlarge the window";
      throw WindowError(os.str());
    }
    if (low) qlo -= 8;
    if (high) qhi += 8;
  }

  TrigradedDims out;
  for (auto& [k, d] : raw) {
    auto [Q, h, v] = k;
    Tri x = S.apply(Q, h, v, w, n, len);
    if (x.q >= qlo && x.q <= qhi) out.add(x, d);
  }
  return out;
}

GradingShift calibrate_shift(const std::vector<BraidWord>& corpus, int jobs) {
  auto has = [&](const char* s) {
    BraidWord t = parse_braid(s);
    return std::find(corpus.begin(), corpus.end(), t) != corpus.end();
  };
  for (auto* s : {"n=1:", "n=2: 1", "n=2: 1 1 1", "n=2: -1 -1 -1"})
    if (!has(s)) throw HomologyError(std::string("calibration corpus lacks ") + s);

  // per knot: the constant offsets (dq, da, dt) with
  // q = Q - 2h - len + dq, a = -2h + da, t = 2v + dt
  struct Row {
    int w, n;
    std::array<int, 3> off;
  };
  std::vector<Row> rows;
  for (auto& b : corpus) {
    require_knot(b);
    ClosureInfo ci = closure_info(b);
    int len = static_cast<int>(b.length());
    LaurentPoly2 P = homfly_poly(b);
    TrigradedDims target = thin_reconstruction(P, signature(b));
    int qmin = 0, qmax = 0;
    for (auto& [k, c] : P.terms()) {
      qmin = std::min(qmin, k.first);
      qmax = std::max(qmax, k.first);
    }
    // generous raw window: every h, q from qmin-8 to qmax+8 for any offset in [-2n-2l, 2n+2l]
    int spread = 2 * (b.strands + len) + 8;
    RawDims raw = raw_triply_graded(b, 0, qmax + 2 * len + len + spread, jobs);
    if (raw.empty()) throw HomologyError("calibration: empty homology for " + b.to_string());
    std::optional<std::array<int, 3>> found;
    auto [Q0, h0, v0] = raw.begin()->first;
    for (auto& [x, d] : target.dims) {
      std::array<int, 3> off = {x.q - (Q0 - 2 * h0 - len), x.a + 2 * h0, x.t - 2 * v0};
      TrigradedDims mapped;
      for (auto& [k, dd] : raw) {
        auto [Q, h, v] = k;
        mapped.add({Q - 2 * h - len + off[0], -2 * h + off[1], 2 * v + off[2]}, dd);
      }
      if (mapped == target) {
        if (found && *found != off) throw HomologyError("calibration: ambiguous offsets for " + b.to_string());
        found = off;
      }
    }
    if (!found) throw HomologyError("calibration: no offset maps " + b.to_string() + " onto its thin table");
    rows.push_back({ci.writhe, b.strands, *found});
  }

  // integer-linear fit of each offset in (w, n, 1), exact
  GradingShift g;
  for (int comp = 0; comp < 3; ++comp) {
    std::vector<std::array<Rat, 4>> m;
    for (auto& r : rows) m.push_back({Rat(r.w), Rat(r.n), Rat(1), Rat(r.off[comp])});
    size_t rk = 0;
    for (int col = 0; col < 3; ++col) {
      size_t p = rk;
      while (p < m.size() && m[p][col] == 0) ++p;
      if (p == m.size()) throw HomologyError("calibration: corpus does not determine the shift");
      std::swap(m[p], m[rk]);
      Rat f = m[rk][col];
      for (auto& x : m[rk]) x /= f;
      for (size_t i = 0; i < m.size(); ++i)
        if (i != rk && m[i][col] != 0) {
          Rat gi = m[i][col];
          for (int k = 0; k < 4; ++k) m[i][k] -= gi * m[rk][k];
        }
      ++rk;
    }
    for (size_t i = rk; i < m.size(); ++i)
      if (m[i][3] != 0) throw HomologyError("calibration: offsets are not linear in (w, n)");
    std::array<int, 3> c{};
    for (int k = 0; k < 3; ++k) {
      if (m[k][3].get_den() != 1) throw HomologyError("calibration: non-integer shift");
      c[k] = static_cast<int>(m[k][3].get_num().get_si());
    }
    (comp == 0 ? g.alpha : comp == 1 ? g.beta : g.gamma) = c;
  }
  return g;
}

}  // namespace trihom
