#include "trihom/sl2.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace trihom {

namespace {

using Block = std::pair<int, int>;   // (a, Delta)

// basis indices per (a, Delta) and weight
std::map<Block, std::map<int, std::vector<size_t>>> weight_spaces(const std::vector<WeightLabel>& basis) {
  std::map<Block, std::map<int, std::vector<size_t>>> out;
  for (size_t i = 0; i < basis.size(); ++i) out[{basis[i].a, basis[i].delta}][basis[i].weight()].push_back(i);
  return out;
}

SparseVec unit(size_t i) { return {{static_cast<uint32_t>(i), Rat(1)}}; }

SparseVec power_apply(const RatMatrix& m, SparseVec v, int k) {
  for (int i = 0; i < k && !v.empty(); ++i) v = m.apply(v);
  return v;
}

// E^k restricted to the given indices, as column vectors
std::vector<SparseVec> power_columns(const RatMatrix& E, const std::vector<size_t>& idx, int k) {
  std::vector<SparseVec> cols;
  for (size_t i : idx) cols.push_back(power_apply(E, unit(i), k));
  return cols;
}

RatMatrix exp_nilpotent(const RatMatrix& m) {
  size_t n = m.rows();
  RatMatrix out = RatMatrix::identity(n), term = RatMatrix::identity(n);
  for (size_t k = 1; k <= n + 1; ++k) {
    term = (term * m).scaled(Rat(1, static_cast<long>(k)));
    if (term.is_zero()) return out;
    out = out + term;
  }
  throw SL2Error("exp: matrix is not nilpotent");
}

std::string label_str(const WeightLabel& l) {
  std::ostringstream os;
  os << (l.name.empty() ? "?" : l.name) << "(q=" << l.q << ",a=" << l.a << ",D=" << l.delta << ")";
  return os.str();
}

}  // namespace

bool all_ok(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

RatMatrix bracket(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }
RatMatrix anti_bracket(const RatMatrix& a, const RatMatrix& b) { return a * b + b * a; }

RatMatrix weight_matrix(const std::vector<WeightLabel>& basis) {
  std::vector<Entry> e;
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].q % 2) throw SL2Error("weight_matrix: odd q-degree");
    e.push_back({i, i, Rat(basis[i].weight())});
  }
  return RatMatrix::from_entries(basis.size(), basis.size(), std::move(e));
}

bool has_degree(const RatMatrix& m, const std::vector<WeightLabel>& basis, int dq, int da, int dd, std::string* why) {
  for (auto& e : m.entries()) {
    const WeightLabel &s = basis[e.col], &t = basis[e.row];
    if (t.q - s.q != dq || t.a - s.a != da || t.delta - s.delta != dd) {
      if (why) *why = label_str(s) + " -> " + label_str(t);
      return false;
    }
  }
  return true;
}

SL2Action action_from_model(HomologyModel& model) {
  SL2Action act;
  const auto& cls = model.basis();
  for (size_t i = 0; i < cls.size(); ++i)
    act.basis.push_back({cls[i].tri.q, cls[i].tri.a, cls[i].tri.delta(), "h" + std::to_string(i)});
  act.E = model.induce_E();
  std::string why;
  if (!has_degree(act.E, act.basis, 4, 0, 0, &why)) throw SL2Error("induced E does not preserve (a, Delta): " + why);
  act.H = weight_matrix(act.basis);
  return act;
}

SL2Action induce_E(const BraidWord& b, const ComputeOptions& opt) {
  HomologyModel model(b, nullptr, opt);
  return action_from_model(model);
}

bool hard_lefschetz(const SL2Action& act, std::string* why) {
  for (auto& [blk, ws] : weight_spaces(act.basis)) {
    for (auto& [w, idx] : ws) {
      if (w <= 0) continue;
      auto neg = ws.find(-w);
      size_t dneg = neg == ws.end() ? 0 : neg->second.size();
      if (dneg != idx.size()) {
        if (why)
          *why = "a=" + std::to_string(blk.first) + " Delta=" + std::to_string(blk.second) + ": weights " +
                 std::to_string(-w) + " and " + std::to_string(w) + " differ in dimension";
        return false;
      }
    }
    for (auto& [w, idx] : ws) {
      if (w >= 0) continue;
      if (rank(RatMatrix::from_columns(act.dim(), power_columns(act.E, idx, -w))) != idx.size()) {
        if (why)
          *why = "a=" + std::to_string(blk.first) + " Delta=" + std::to_string(blk.second) + ": E^" +
                 std::to_string(-w) + " is not injective on weight " + std::to_string(w);
        return false;
      }
    }
  }
  return true;
}

SL2Action solve_F(const SL2Action& act) {
  std::string why;
  if (!has_degree(act.E, act.basis, 4, 0, 0, &why)) throw SL2Error("solve_F: E has the wrong degree: " + why);
  if (!hard_lefschetz(act, &why)) throw SL2Error("solve_F: hard Lefschetz fails, no F exists: " + why);
  size_t n = act.dim();
  // adapted basis: strings p, Ep, ..., E^m p over lowest-weight vectors p
  std::vector<SparseVec> adapted;
  std::vector<std::pair<long, long>> fcoef;   // (k, m): F E^k p = k(m-k+1) E^(k-1) p
  for (auto& [blk, ws] : weight_spaces(act.basis)) {
    for (auto& [w, idx] : ws) {
      if (w > 0) continue;
      int m = -w;
      auto ker = kernel_basis(RatMatrix::from_columns(n, power_columns(act.E, idx, m + 1)));
      for (auto& kv : ker) {
        SparseVec p;
        for (auto& [j, c] : kv) axpy(p, c, unit(idx[j]));
        for (int k = 0; k <= m; ++k) {
          adapted.push_back(p);
          fcoef.emplace_back(k, m);
          p = act.E.apply(p);
        }
      }
    }
  }
  RatEchelon ech;
  for (size_t j = 0; j < adapted.size(); ++j)
    if (!ech.add(adapted[j], unit(j))) throw SL2Error("solve_F: weight strings are dependent");
  if (adapted.size() != n) throw SL2Error("solve_F: weight strings do not span");
  std::vector<SparseVec> cols(n);
  for (size_t i = 0; i < n; ++i) {
    SparseVec v = unit(i), c;
    ech.reduce(v, &c);
    for (auto& [j, x] : c) {
      auto [k, m] = fcoef[j];
      if (k == 0) continue;
      axpy(cols[i], x * Rat(k * (m - k + 1)), adapted[j - 1]);
    }
  }
  SL2Action out = act;
  out.F = RatMatrix::from_columns(n, cols);
  out.has_F = true;
  return out;
}

std::vector<Check> bracket_checks(const SL2Action& act) {
  std::vector<Check> out;
  std::string why;
  bool ok = has_degree(act.E, act.basis, 4, 0, 0, &why);
  out.push_back({"E raises q by 4 and preserves (a, Delta)", ok, ok ? "" : why});
  why.clear();
  ok = hard_lefschetz(act, &why);
  out.push_back({"hard Lefschetz", ok, why});
  out.push_back({"[H, E] = 2E", bracket(act.H, act.E) == act.E.scaled(2), ""});
  if (act.has_F) {
    why.clear();
    ok = has_degree(act.F, act.basis, -4, 0, 0, &why);
    out.push_back({"F lowers q by 4", ok, why});
    out.push_back({"[H, F] = -2F", bracket(act.H, act.F) == act.F.scaled(-2), ""});
    out.push_back({"[E, F] = H", bracket(act.E, act.F) == act.H, ""});
  }
  return out;
}

RatMatrix weight_reversal(const SL2Action& act) {
  if (!act.has_F) throw SL2Error("weight_reversal: F not solved");
  RatMatrix e = exp_nilpotent(act.E);
  return e * exp_nilpotent(act.F.scaled(-1)) * e;
}

SuperDifferentials super_differentials(const SL2Action& act0, const RatMatrix& dN, int N) {
  if (N < 1) throw SL2Error("super_differentials: N must be positive");
  SL2Action act = act0.has_F ? act0 : solve_F(act0);
  SuperDifferentials S;
  S.N = N;
  auto& ck = S.checks;
  auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
    ck.push_back({name, ok, detail});
  };
  std::string why;
  add("d_N has degree (2N, -2, 0)", has_degree(dN, act.basis, 2 * N, -2, 2 * N - 2, &why), why);
  add("d_N^2 = 0", (dN * dN).is_zero());
  add("[E, d_N] = 0", bracket(act.E, dN).is_zero());
  if (!ck.back().ok) throw SL2Error("super_differentials: [E, d_N] != 0");

  S.d.push_back(dN);
  for (int b = 1; b <= N; ++b) S.d.push_back(bracket(act.F, S.d.back()).scaled(Rat(1, b)));
  for (int b = 0; b <= N; ++b) {
    int a = N - b;
    std::string tag = "d_{" + std::to_string(a) + "|" + std::to_string(b) + "}";
    const RatMatrix& d = S.d[b];
    add("[H, " + tag + "] = (a-b) " + tag, bracket(act.H, d) == d.scaled(a - b));
    // with the divided powers 1/b! the brackets carry (a+1) and (b+1)
    RatMatrix e_rhs = b ? S.d[b - 1].scaled(a + 1) : RatMatrix(d.rows(), d.cols());
    add("[E, " + tag + "] = (a+1) d_{a+1|b-1}", bracket(act.E, d) == e_rhs);
    RatMatrix f_rhs = a ? S.d[b + 1].scaled(b + 1) : RatMatrix(d.rows(), d.cols());
    add("[F, " + tag + "] = (b+1) d_{a-1|b+1}", bracket(act.F, d) == f_rhs);
  }
  // rescaled by a! b! / N! the family satisfies [E, d] = b d_{a+1|b-1}, [F, d] = a d_{a-1|b+1}
  auto fact = [](int k) {
    Rat r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
  };
  for (int b = 0; b <= N; ++b) S.rescaled.push_back(S.d[b].scaled(fact(N - b) * fact(b) / fact(N)));
  for (int b = 0; b <= N; ++b) {
    int a = N - b;
    std::string tag = "d'_{" + std::to_string(a) + "|" + std::to_string(b) + "}";
    const RatMatrix& d = S.rescaled[b];
    RatMatrix e_rhs = b ? S.rescaled[b - 1].scaled(b) : RatMatrix(d.rows(), d.cols());
    add("[E, " + tag + "] = b d'_{a+1|b-1}", bracket(act.E, d) == e_rhs);
    RatMatrix f_rhs = a ? S.rescaled[b + 1].scaled(a) : RatMatrix(d.rows(), d.cols());
    add("[F, " + tag + "] = a d'_{a-1|b+1}", bracket(act.F, d) == f_rhs);
  }
  // the symmetry exchanges d_{a|b} and d_{b|a}, up to a sign
  RatMatrix w = weight_reversal(act);
  RatMatrix e = exp_nilpotent(act.E.scaled(-1));
  RatMatrix winv = e * exp_nilpotent(act.F) * e;
  add("weight reversal is invertible", w * winv == RatMatrix::identity(act.dim()));
  for (int b = 0; b <= N; ++b) {
    RatMatrix c = w * S.d[b] * winv;
    const RatMatrix& t = S.d[N - b];
    add("weight reversal sends d_{" + std::to_string(N - b) + "|" + std::to_string(b) + "} to +-d_{" +
            std::to_string(b) + "|" + std::to_string(N - b) + "}",
        c == t || c == t.scaled(-1));
  }
  if (N == 1) {
    const RatMatrix& d1 = S.d[0];
    const RatMatrix& dm = S.d[1];
    S.d_minus1 = dm;
    add("[E, d_-1] = d_1", bracket(act.E, dm) == d1);
    add("[F, d_-1] = 0", bracket(act.F, dm).is_zero());
    add("d_-1^2 = 0", (dm * dm).is_zero());
    add("d_-1 d_1 + d_1 d_-1 = 0", anti_bracket(dm, d1).is_zero());
  }
  for (auto& c : ck)
    if (!c.ok) throw SL2Error("super_differentials: " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
  return S;
}

RatMatrix solve_equivariant(const SL2Action& act0, int k, const std::vector<Normalization>& norms) {
  SL2Action act = act0.has_F ? act0 : solve_F(act0);
  size_t n = act.dim();
  const auto& B = act.basis;
  // unknowns: entries (tgt, src) allowed by the degree of d_k
  std::map<std::pair<size_t, size_t>, uint32_t> var;
  std::vector<std::pair<size_t, size_t>> pos;
  for (size_t s = 0; s < n; ++s)
    for (size_t t = 0; t < n; ++t)
      if (B[t].q - B[s].q == 2 * k && B[t].a - B[s].a == -2 && B[t].delta - B[s].delta == 2 * k - 2) {
        var[{t, s}] = static_cast<uint32_t>(pos.size());
        pos.emplace_back(t, s);
      }
  size_t nv = pos.size();
  std::vector<SparseVec> rows;
  std::vector<Rat> rhs;
  auto push = [&](std::map<uint32_t, Rat>& acc, const Rat& r) {
    SparseVec v;
    for (auto& [i, c] : acc)
      if (c != 0) v.emplace_back(i, c);
    if (v.empty() && r == 0) return;
    rows.push_back(std::move(v));
    rhs.push_back(r);
  };
  auto col_entries = [](const RatMatrix& m) {
    std::vector<std::vector<std::pair<size_t, Rat>>> cols(m.cols());
    for (auto& e : m.entries()) cols[e.col].emplace_back(e.row, e.val);
    return cols;
  };
  auto Ec = col_entries(act.E), Fc = col_entries(act.F);
  auto Er = act.E.row_vectors(), Fr = act.F.row_vectors();
  // (M d - d M)[t][s] as a linear form in the unknowns
  auto commutator_form = [&](const std::vector<SparseVec>& Mrows, const std::vector<std::vector<std::pair<size_t, Rat>>>& Mcols,
                             size_t t, size_t s) {
    std::map<uint32_t, Rat> acc;
    for (auto& [j, c] : Mrows[t]) {
      auto it = var.find({j, s});
      if (it != var.end()) acc[it->second] += c;
    }
    for (auto& [j, c] : Mcols[s]) {
      auto it = var.find({t, j});
      if (it != var.end()) acc[it->second] -= c;
    }
    return acc;
  };
  for (size_t s = 0; s < n; ++s)
    for (size_t t = 0; t < n; ++t) {
      auto acc = commutator_form(Er, Ec, t, s);
      push(acc, Rat(0));
    }
  for (auto& nm : norms) {
    if (nm.src >= n) throw SL2Error("solve_equivariant: normalization index out of range");
    std::map<size_t, Rat> want;
    for (auto& [i, c] : nm.image) want[i] = c;
    for (size_t t = 0; t < n; ++t) {
      bool listed = want.count(t) != 0;
      if (nm.partial && !listed) continue;
      std::map<uint32_t, Rat> acc;
      if (nm.via_F) {
        acc = commutator_form(Fr, Fc, t, nm.src);
      } else {
        auto it = var.find({t, nm.src});
        if (it != var.end()) acc[it->second] = 1;
      }
      Rat r = listed ? want[t] : Rat(0);
      if (acc.empty() && r != 0) throw SL2Error("solve_equivariant: normalization has the wrong degree");
      push(acc, r);
    }
  }
  // d^2 = 0, added once linear
  std::vector<std::vector<size_t>> out_of(n);   // unknowns with given src
  for (uint32_t v = 0; v < nv; ++v) out_of[pos[v].second].push_back(v);
  std::set<std::pair<size_t, size_t>> used;
  for (int round = 0;; ++round) {
    LinearSolution sol = solve_linear(rows, rhs, nv);
    if (!sol.consistent) throw SL2Error("solve_equivariant: constraints are inconsistent");
    bool added = false;
    for (size_t s = 0; s < n; ++s)
      for (size_t t = 0; t < n; ++t) {
        if (used.count({t, s})) continue;
        // (d d)[t][s] = sum_j d[t][j] d[j][s]
        std::map<uint32_t, Rat> acc;
        Rat cst = 0;
        bool linear = true, any = false;
        for (uint32_t v1 : out_of[s]) {
          size_t j = pos[v1].first;
          auto it = var.find({t, j});
          if (it == var.end()) continue;
          uint32_t v2 = it->second;
          any = true;
          bool k1 = sol.determined[v1], k2 = sol.determined[v2];
          if (k1 && k2) {
            cst += sol.particular[v1] * sol.particular[v2];
          } else if (k1) {
            acc[v2] += sol.particular[v1];
          } else if (k2) {
            acc[v1] += sol.particular[v2];
          } else {
            linear = false;
            break;
          }
        }
        if (!any || !linear) continue;
        used.insert({t, s});
        push(acc, -cst);
        added = true;
      }
    if (added) continue;
    if (!sol.kernel.empty())
      throw SL2Error("solve_equivariant: " + std::to_string(sol.kernel.size()) + " free parameters remain");
    std::vector<Entry> e;
    for (uint32_t v = 0; v < nv; ++v)
      if (sol.particular[v] != 0) e.push_back({pos[v].first, pos[v].second, sol.particular[v]});
    RatMatrix d = RatMatrix::from_entries(n, n, std::move(e));
    if (!(d * d).is_zero()) throw SL2Error("solve_equivariant: solution does not square to zero");
    return d;
  }
}

ModelDeformation deform_model(const std::vector<WeightLabel>& basis, const std::map<int, RatMatrix>& d,
                              const Potential& pot) {
  int N = pot.N();
  size_t n = basis.size();
  RatMatrix D(n, n);
  for (auto& [k, m] : d) {
    if (k < 1 || k > N) continue;
    if (m.rows() != n || m.cols() != n) throw SL2Error("deform_model: size mismatch");
    D = D + m.scaled(pot.dw[k]);
  }
  if (!(D * D).is_zero()) throw SL2Error("deform_model: deformed differential does not square to zero");
  // columns by level, highest first, so leading entries carry the level
  std::vector<int> level(n);
  for (size_t i = 0; i < n; ++i) level[i] = basis[i].q + N * basis[i].a;
  std::vector<uint32_t> order(n), place(n);
  for (uint32_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) { return level[x] > level[y]; });
  for (uint32_t p = 0; p < n; ++p) place[order[p]] = p;
  auto permute = [&](const SparseVec& v) {
    std::map<uint32_t, Rat> m;
    for (auto& [i, c] : v) m[place[i]] = c;
    return SparseVec(m.begin(), m.end());
  };
  auto counts = [&](const std::vector<SparseVec>& vecs) {
    RatEchelon e;
    for (auto& v : vecs)
      if (!v.empty()) e.add(permute(v));
    std::map<int, long> c;
    for (auto& [p, row] : e.rows()) ++c[level[order[p]]];
    return c;
  };
  std::vector<SparseVec> bnd;
  for (auto& c : D.transpose().row_vectors()) bnd.push_back(c);
  auto z = counts(kernel_basis(D)), b = counts(bnd);
  ModelDeformation out;
  for (auto& [l, c] : z) {
    long r = c - (b.count(l) ? b[l] : 0);
    if (r < 0) throw SL2Error("deform_model: boundary count exceeds cycle count");
    if (r) out.graded[l] = r;
    out.total += r;
  }
  for (auto& [l, c] : b)
    if (!z.count(l)) throw SL2Error("deform_model: boundary count exceeds cycle count");
  if (out.graded.empty()) throw SL2Error("deform_model: deformed homology vanishes");
  out.j = out.graded.begin()->first;
  if (N >= 2) {
    out.s = Rat(out.j, 2 * (N - 1));
    out.s.canonicalize();
  }
  return out;
}

std::string dump_action(const SL2Action& act, const std::map<std::string, RatMatrix>& extra) {
  std::ostringstream os;
  os << "sl2-action dim=" << act.dim() << "\n";
  for (size_t i = 0; i < act.dim(); ++i) {
    const auto& l = act.basis[i];
    os << "basis " << i << " " << (l.name.empty() ? "-" : l.name) << " q=" << l.q << " a=" << l.a
       << " delta=" << l.delta << "\n";
  }
  auto mat = [&](const std::string& name, const RatMatrix& m) {
    os << "matrix " << name << " " << m.rows() << "x" << m.cols() << "\n";
    for (size_t r = 0; r < m.rows(); ++r) {
      for (size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m.at(r, c).get_str();
      os << "\n";
    }
  };
  mat("E", act.E);
  mat("H", act.H);
  if (act.has_F) mat("F", act.F);
  for (auto& [name, m] : extra) mat(name, m);
  return os.str();
}

}  // namespace trihom
