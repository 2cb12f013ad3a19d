#include "trihom/soergel.hpp"

#include <sstream>

namespace trihom {

namespace {

// Solve A x = rhs exactly; free unknowns are set to zero.  Returns false
// if inconsistent.
bool solve_linear(std::vector<std::vector<Rat>> A, std::vector<Rat> rhs, std::vector<Rat>& x) {
  size_t m = A.size(), n = m ? A[0].size() : 0;
  std::vector<int> pivcol;
  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t p = r;
    while (p < m && A[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(A[p], A[r]);
    std::swap(rhs[p], rhs[r]);
    Rat f = A[r][c];
    for (auto& v : A[r]) v /= f;
    rhs[r] /= f;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rat g = A[i][c];
      for (size_t k = 0; k < n; ++k) A[i][k] -= g * A[r][k];
      rhs[i] -= g * rhs[r];
    }
    pivcol.push_back(static_cast<int>(c));
    ++r;
  }
  for (size_t i = r; i < m; ++i)
    if (rhs[i] != 0) return false;
  x.assign(n, 0);
  for (size_t i = 0; i < r; ++i) x[pivcol[i]] = rhs[i];
  return true;
}

std::vector<Rat> coeffs_of(const Poly& p, size_t nvars) {
  std::vector<Rat> v(nvars, 0);
  for (auto& [m, c] : p.terms()) {
    if (degree(m) != 1) throw SoergelError("expected a linear form");
    for (size_t i = 0; i < nvars; ++i)
      if (m[i]) v[i] = c;
  }
  return v;
}

}  // namespace

ChainOperators attach_chain_operators(const Bicomplex& C) {
  const BraidWord& b = C.braid;
  int n = b.strands, L = static_cast<int>(b.word.size());
  size_t N = C.size();
  std::vector<Op> h;
  for (int c = 0; c < L; ++c) h.push_back(crossing_homotopy(C, c));
  auto s = strand_signs(b);

  ChainOperators ops;
  for (int a = 0; a < n; ++a) {
    Op x(N);
    for (int c = 0; c < L; ++c)
      if (s[a][c]) x = x + h[c].scaled(s[a][c]);
    ops.xi.push_back(x);
  }
  ops.K = Op(N);
  for (int c = 0; c < L; ++c) {
    Op k = crossing_contraction(C, c);
    ops.K = ops.K + (b.word[c] > 0 ? h[c] * k : (k * h[c]).scaled(-1));
  }
  ops.u = Op(N);
  for (int c = 0; c < L; ++c)
    for (int c2 = c + 1; c2 < L; ++c2) {
      int alpha = 0;
      for (int a = 0; a < n; ++a) alpha += s[a][c] * s[a][c2];
      if (alpha) ops.u = ops.u + (h[c] * h[c2]).scaled(alpha);
    }

  ClosureInfo ci = closure_info(b);
  if (!(C.ring.closed && C.ring.reduced && ci.is_knot())) return ops;

  // Theta = sum_{a<b} theta_ab xi_a xi_b with sum_a Theta_ab e_a = c_b,
  // e_a = x_a - x_w(a), c_a = x_a + x_w(a) at the bottom.
  size_t nv = C.ring.free_count();
  std::vector<std::vector<Rat>> e(n), cc(n);
  for (int a = 0; a < n; ++a) {
    e[a] = coeffs_of(C.ring.x(a, 0) - C.ring.x(ci.perm[a], L), nv);
    cc[a] = coeffs_of(C.ring.x(a, 0) + C.ring.x(ci.perm[a], L), nv);
  }
  std::vector<std::pair<int, int>> unk;
  for (int a = 0; a < n; ++a)
    for (int bb = a + 1; bb < n; ++bb) unk.emplace_back(a, bb);
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> rhs;
  for (int bb = 0; bb < n; ++bb)
    for (size_t f = 0; f < nv; ++f) {
      std::vector<Rat> row(unk.size(), 0);
      for (size_t k = 0; k < unk.size(); ++k) {
        auto [p, q] = unk[k];
        if (q == bb) row[k] += e[p][f];    // Theta_{p,b} = theta_pb
        if (p == bb) row[k] -= e[q][f];    // Theta_{q,b} = -theta_bq
      }
      A.push_back(row);
      rhs.push_back(cc[bb][f]);
    }
  std::vector<Rat> th;
  if (!solve_linear(A, rhs, th)) throw SoergelError("E: correction system is inconsistent");
  ops.theta.assign(n, std::vector<Rat>(n, 0));
  Op Theta(N);
  for (size_t k = 0; k < unk.size(); ++k) {
    auto [p, q] = unk[k];
    ops.theta[p][q] = th[k];
    ops.theta[q][p] = -th[k];
    if (th[k] != 0) Theta = Theta + (ops.xi[p] * ops.xi[q]).scaled(th[k]);
  }
  ops.E = ops.u - Theta;
  return ops;
}

std::vector<int> component_blocks(const BraidWord& b) {
  ClosureInfo ci = closure_info(b);
  std::vector<int> blk(b.strands, 0);
  for (size_t k = 0; k < ci.cycles.size(); ++k)
    for (int a : ci.cycles[k]) blk[a] = static_cast<int>(k);
  return blk;
}

std::vector<int> strand_blocks(const BraidWord& b) {
  std::vector<int> blk(b.strands);
  for (int a = 0; a < b.strands; ++a) blk[a] = a;
  return blk;
}

YComplex yify(const Bicomplex& C, const std::vector<int>& block_of, const ChainOperators& ops) {
  YComplex Y;
  Y.base = &C;
  Y.block_of = block_of;
  Y.y_offset = static_cast<int>(C.ring.free_count());
  int nblocks = 0;
  for (int x : block_of) nblocks = std::max(nblocks, x + 1);
  if (Y.y_offset + nblocks > kMaxVars) throw SoergelError("yify: too many variables");
  Y.D_v = C.d_v;
  for (size_t a = 0; a < ops.xi.size(); ++a) Y.D_v = Y.D_v + ops.xi[a].times(Y.y(block_of[a]));
  Op sq = Y.D_v * Y.D_v;
  // must be a scalar
  bool first = true;
  for (uint32_t g = 0; g < sq.size(); ++g) {
    auto& col = sq.col(g);
    Poly p;
    if (col.size() > 1 || (col.size() == 1 && col[0].first != g))
      throw SoergelError("yify: D_v^2 is not scalar");
    if (col.size() == 1) p = col[0].second;
    if (first) {
      Y.D_v_squared = p;
      first = false;
    } else if (p != Y.D_v_squared) {
      throw SoergelError("yify: D_v^2 is not scalar");
    }
  }
  return Y;
}

Op commutator_D_E(const YComplex& Y, const ChainOperators& ops, const Op* e_part) {
  const Bicomplex& C = *Y.base;
  const Op& E = e_part ? *e_part : ops.u;
  Op r = Y.D_v * E - E * Y.D_v;
  if (e_part) return r;
  // derivation part: sum_a (x_a + x'_w(a)) d/dy_block(a)
  ClosureInfo ci = closure_info(C.braid);
  int L = static_cast<int>(C.braid.word.size());
  int nblocks = 0;
  for (int x : Y.block_of) nblocks = std::max(nblocks, x + 1);
  std::vector<Poly> Cb(nblocks);
  for (int a = 0; a < C.braid.strands; ++a) Cb[Y.block_of[a]] += C.ring.x(a, 0) + C.ring.x(ci.perm[a], L);
  Op der(C.size());
  for (uint32_t g = 0; g < C.size(); ++g)
    for (auto& [t, p] : Y.D_v.col(g)) {
      Poly q;
      for (int k = 0; k < nblocks; ++k) q += p.derivative(Y.y_offset + k) * Cb[k];
      der.add(g, t, q);
    }
  der.normalize();
  return r - der;
}

std::vector<IdentityCheck> identity_checks(const BraidWord& b, const std::vector<Potential>& pots) {
  std::vector<IdentityCheck> out;
  auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
    out.push_back({name, ok, detail});
  };
  int n = b.strands, L = static_cast<int>(b.word.size());
  ClosureInfo ci = closure_info(b);

  // open ring: only crossing relations
  Bicomplex O = build_bicomplex(b, nullptr, false, false);
  size_t N = O.size();
  add("d+^2 = 0", (O.d_plus * O.d_plus).is_zero());
  add("dv^2 = 0", (O.d_v * O.d_v).is_zero());
  add("d+ dv + dv d+ = 0", anticommutator(O.d_plus, O.d_v).is_zero());
  ChainOperators ops = attach_chain_operators(O);
  bool xi_ok = true, xi_plus_ok = true, xi_anti = true;
  for (int a = 0; a < n; ++a) {
    Poly ea = O.ring.x(a, 0) - O.ring.x(ci.perm[a], L);
    if (!(anticommutator(O.d_v, ops.xi[a]) == Op::identity(N, ea))) xi_ok = false;
    if (!anticommutator(O.d_plus, ops.xi[a]).is_zero()) xi_plus_ok = false;
    for (int a2 = a; a2 < n; ++a2)
      if (!anticommutator(ops.xi[a], ops.xi[a2]).is_zero()) xi_anti = false;
  }
  add("[dv, xi_a] = x_a - x'_w(a)", xi_ok);
  add("[d+, xi_a] = 0", xi_plus_ok);
  add("xi_a xi_b + xi_b xi_a = 0", xi_anti);
  Op rhs(N);
  for (int a = 0; a < n; ++a) rhs = rhs + ops.xi[a].times(O.ring.x(a, 0) + O.ring.x(ci.perm[a], L));
  Op hom = commutator(O.d_plus, ops.K).scaled(2);
  add("[dv, u] + 2[d+, K] = sum (x_a + x'_w(a)) xi_a", commutator(O.d_v, ops.u) + hom == rhs);
  add("[d+, u] = 0", commutator(O.d_plus, ops.u).is_zero());
  {
    YComplex Y = yify(O, strand_blocks(b), ops);
    add("[D, E] + 2[d+, K] = 0 (one y per strand)", (commutator_D_E(Y, ops) + hom).is_zero());
  }

  for (auto& pot : pots) {
    std::string tag = " (dW = " + pot.to_string() + ")";
    Bicomplex P = build_bicomplex(b, &pot, false, false);
    Op tot = P.d_plus + P.d_pot;
    Poly curv;
    for (int j = 0; j < n; ++j) {
      std::vector<Poly> img(1);
      img[0] = P.ring.x(j, 0);
      curv += pot.W(0).substitute(img);
      img[0] = P.ring.x(j, L);
      curv = curv - pot.W(0).substitute(img);
    }
    add("(d+ + dW)^2 = sum W(x^(0)) - W(x^(l)) open" + tag, tot * tot == Op::identity(N, curv));
    add("dW dv + dv dW = 0" + tag, anticommutator(P.d_pot, P.d_v).is_zero());
    ChainOperators po = attach_chain_operators(P);
    bool ok = true;
    for (int a = 0; a < n; ++a)
      if (!anticommutator(P.d_pot, po.xi[a]).is_zero()) ok = false;
    add("[dW, xi_a] = 0" + tag, ok);
    Bicomplex Q = build_bicomplex(b, &pot, true, true);
    Op tq = Q.d_plus + Q.d_pot;
    add("(d+ + dW)^2 = 0 closed" + tag, (tq * tq).is_zero());
  }

  // closed reduced ring
  Bicomplex R = build_bicomplex(b, nullptr, true, true);
  ChainOperators ro = attach_chain_operators(R);
  {
    YComplex Y = yify(R, component_blocks(b), ro);
    add("D_v^2 = 0 after closure", Y.D_v_squared.is_zero());
    if (ci.is_knot()) {
      Op rhom = commutator(R.d_plus, ro.K).scaled(2);
      add("[dv, E] + 2[d+, K] = 0", (commutator(R.d_v, *ro.E) + rhom).is_zero());
      add("[d+, E] = 0", commutator(R.d_plus, *ro.E).is_zero());
      add("[D, E] + 2[d+, K] = 0 (knot, single y)", (commutator_D_E(Y, ro, &*ro.E) + rhom).is_zero());
      for (auto& pot : pots) {
        Bicomplex Q = build_bicomplex(b, &pot, true, true);
        ChainOperators qo = attach_chain_operators(Q);
        add("[dW, E] = 0 (dW = " + pot.to_string() + ")", commutator(Q.d_pot, *qo.E).is_zero());
      }
    }
  }
  return out;
}

}  // namespace trihom
