#include "trihom/soergel.hpp"

#include <cctype>
#include <sstream>

namespace trihom {

std::string EdgeRing::original_name(int i, int j) {
  return "x" + std::to_string(i + 1) + "^(" + std::to_string(j) + ")";
}

Poly EdgeRing::x(int i, int j) const { return Poly::linear(subst.at(static_cast<size_t>(j) * strands + i)); }

std::vector<std::string> edge_relations(const BraidWord& b, bool closed, bool reduced) {
  validate(b);
  int n = b.strands, L = static_cast<int>(b.word.size());
  auto nm = EdgeRing::original_name;
  std::vector<std::string> out;
  for (int k = 1; k <= L; ++k) {
    int i = std::abs(b.word[k - 1]) - 1;
    out.push_back(nm(i, k - 1) + " + " + nm(i + 1, k - 1) + " = " + nm(i, k) + " + " + nm(i + 1, k));
  }
  for (int k = 1; k <= L; ++k) {
    int i = std::abs(b.word[k - 1]) - 1;
    for (int j = 0; j < n; ++j)
      if (j != i && j != i + 1) out.push_back(nm(j, k - 1) + " = " + nm(j, k));
  }
  if (closed)
    for (int j = 0; j < n; ++j) out.push_back(nm(j, 0) + " = " + nm(j, L));
  if (reduced) {
    std::string s;
    for (int j = 0; j < n; ++j) s += (j ? " + " : "") + nm(j, 0);
    out.push_back(s + " = 0");
  }
  return out;
}

EdgeRing build_edge_ring(const BraidWord& b, bool reduced, bool closed) {
  validate(b);
  int n = b.strands, L = static_cast<int>(b.word.size());
  int nb = n + L;   // basis: bottom variables, then one fresh variable per crossing
  using Lin = std::vector<Rat>;
  std::vector<std::vector<Lin>> lin(L + 1, std::vector<Lin>(n, Lin(nb, 0)));
  for (int i = 0; i < n; ++i) lin[0][i][i] = 1;
  for (int k = 1; k <= L; ++k) {
    int i = std::abs(b.word[k - 1]) - 1;
    lin[k] = lin[k - 1];
    Lin fresh(nb, 0);
    fresh[n + k - 1] = 1;
    for (int c = 0; c < nb; ++c) lin[k][i + 1][c] = lin[k - 1][i][c] + lin[k - 1][i + 1][c] - fresh[c];
    lin[k][i] = fresh;
  }

  std::vector<Lin> rel;
  if (closed)
    for (int i = 0; i < n; ++i) {
      Lin r(nb);
      for (int c = 0; c < nb; ++c) r[c] = lin[L][i][c] - lin[0][i][c];
      rel.push_back(r);
    }
  if (reduced) {
    Lin r(nb, 0);
    for (int i = 0; i < n; ++i) r[i] = 1;
    rel.push_back(r);
  }

  // reduced row echelon form, pivots preferring bottom variables and then
  // the latest fresh variables
  std::vector<int> priority;
  for (int i = 0; i < n; ++i) priority.push_back(i);
  for (int k = L; k >= 1; --k) priority.push_back(n + k - 1);
  std::vector<std::pair<int, Lin>> piv;   // (column, row)
  for (auto r : rel) {
    for (auto& [pc, pr] : piv)
      if (r[pc] != 0) {
        Rat f = r[pc];
        for (int c = 0; c < nb; ++c) r[c] -= f * pr[c];
      }
    int col = -1;
    for (int c : priority)
      if (r[c] != 0) {
        col = c;
        break;
      }
    if (col < 0) continue;
    Rat f = r[col];
    for (auto& x : r) x /= f;
    for (auto& [pc, pr] : piv)
      if (pr[col] != 0) {
        Rat g = pr[col];
        for (int c = 0; c < nb; ++c) pr[c] -= g * r[c];
      }
    piv.emplace_back(col, r);
  }
  std::vector<int> is_piv(nb, -1);
  for (size_t p = 0; p < piv.size(); ++p) is_piv[piv[p].first] = static_cast<int>(p);

  EdgeRing R;
  R.strands = n;
  R.length = L;
  R.closed = closed;
  R.reduced = reduced;
  std::vector<int> free_of(nb, -1);
  for (int c = 0; c < nb; ++c) {
    if (is_piv[c] >= 0) continue;
    free_of[c] = static_cast<int>(R.free_original.size());
    int orig = c < n ? c : (c - n + 1) * n + (std::abs(b.word[c - n]) - 1);
    R.free_original.push_back(orig);
    R.names.push_back(EdgeRing::original_name(orig % n, orig / n));
  }
  if (R.free_count() > static_cast<size_t>(kMaxVars))
    throw SoergelError("edge ring: " + std::to_string(R.free_count()) + " free variables exceed the limit of " +
                       std::to_string(kMaxVars));
  // basis column -> free coordinates
  std::vector<Lin> basis(nb, Lin(R.free_count(), 0));
  for (int c = 0; c < nb; ++c) {
    if (free_of[c] >= 0) {
      basis[c][free_of[c]] = 1;
    } else {
      const Lin& r = piv[is_piv[c]].second;
      for (int d = 0; d < nb; ++d)
        if (d != c && r[d] != 0) basis[c][free_of[d]] -= r[d];
    }
  }
  R.subst.assign(static_cast<size_t>(L + 1) * n, Lin(R.free_count(), 0));
  for (int j = 0; j <= L; ++j)
    for (int i = 0; i < n; ++i) {
      Lin& out = R.subst[static_cast<size_t>(j) * n + i];
      for (int c = 0; c < nb; ++c)
        if (lin[j][i][c] != 0)
          for (size_t f = 0; f < R.free_count(); ++f) out[f] += lin[j][i][c] * basis[c][f];
    }
  return R;
}

// ---------------------------------------------------------------- Potential

bool Potential::homogeneous() const {
  for (int k = 0; k < N(); ++k)
    if (dw[k] != 0) return false;
  return true;
}

Potential Potential::power(int N) {
  if (N < 1) throw std::invalid_argument("potential: degree must be at least 1");
  Potential p;
  p.dw.assign(N + 1, 0);
  p.dw[N] = 1;
  return p;
}

std::string Potential::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int k = N(); k >= 0; --k) {
    const Rat& c = dw[k];
    if (c == 0) continue;
    Rat a = abs(c);
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? "-" : "+"));
    first = false;
    if (a != 1 || k == 0) os << a.get_str();
    if (k >= 1) os << "x";
    if (k >= 2) os << "^" << k;
  }
  return first ? "0" : os.str();
}

Potential Potential::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto fail = [&](const std::string& why) { throw std::invalid_argument("potential \"" + text + "\": " + why); };
  if (s.empty()) fail("empty");
  std::map<int, Rat> c;
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
    Rat coef = 1;
    size_t st = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
    bool have_num = i > st;
    if (have_num) {
      coef = Rat(s.substr(st, i - st));
      coef.canonicalize();
    }
    if (i < s.size() && s[i] == '*') ++i;
    int k = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      k = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        size_t e0 = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == e0) fail("missing exponent");
        k = std::stoi(s.substr(e0, i - e0));
      }
    } else if (!have_num) {
      fail("unexpected character '" + std::string(1, s[i]) + "'");
    }
    c[k] += sign * coef;
  }
  Potential p;
  int N = 0;
  for (auto& [k, v] : c)
    if (v != 0) N = std::max(N, k);
  if (N < 1) fail("degree must be at least 1");
  p.dw.assign(N + 1, 0);
  for (auto& [k, v] : c) p.dw[k] = v;
  if (p.dw[N] != 1) fail("must be monic");
  if (p.dw[0] != 0) fail("constant term must vanish");
  return p;
}

Poly Potential::W(int v) const {
  Poly w;
  for (int k = 0; k <= N(); ++k)
    if (dw[k] != 0) w += Poly::var(v).pow(k + 1).scaled(dw[k] / Rat(k + 1));
  return w;
}

}  // namespace trihom
