#include "trihom/soergel.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace trihom {

// ---------------------------------------------------------------- Op

void Op::add(uint32_t from, uint32_t to, const Poly& p) {
  if (!p.is_zero()) cols_.at(from).emplace_back(to, p);
}

void Op::normalize() {
  for (auto& c : cols_) {
    if (c.size() < 2) {
      if (c.size() == 1 && c[0].second.is_zero()) c.clear();
      continue;
    }
    std::map<uint32_t, Poly> m;
    for (auto& [t, p] : c) m[t] += p;
    c.clear();
    for (auto& [t, p] : m)
      if (!p.is_zero()) c.emplace_back(t, std::move(p));
  }
}

bool Op::is_zero() const {
  for (auto& c : cols_)
    if (!c.empty()) return false;
  return true;
}

size_t Op::nnz() const {
  size_t s = 0;
  for (auto& c : cols_) s += c.size();
  return s;
}

Op Op::operator*(const Op& o) const {
  Op r(o.size());
  for (size_t g = 0; g < o.size(); ++g)
    for (auto& [m, p] : o.cols_[g])
      for (auto& [t, q] : cols_[m]) r.cols_[g].emplace_back(t, q * p);
  r.normalize();
  return r;
}

Op Op::operator+(const Op& o) const {
  Op r = *this;
  for (size_t g = 0; g < o.size(); ++g)
    for (auto& e : o.cols_[g]) r.cols_[g].push_back(e);
  r.normalize();
  return r;
}

Op Op::operator-(const Op& o) const { return *this + o.scaled(-1); }

Op Op::scaled(const Rat& s) const {
  Op r(size());
  if (s == 0) return r;
  for (size_t g = 0; g < size(); ++g)
    for (auto& [t, p] : cols_[g]) r.cols_[g].emplace_back(t, p.scaled(s));
  return r;
}

Op Op::times(const Poly& q) const {
  Op r(size());
  for (size_t g = 0; g < size(); ++g)
    for (auto& [t, p] : cols_[g]) r.add(static_cast<uint32_t>(g), t, p * q);
  return r;
}

bool Op::operator==(const Op& o) const {
  if (size() != o.size()) return false;
  Op a = *this, b = o;
  a.normalize();
  b.normalize();
  for (size_t g = 0; g < size(); ++g) {
    if (a.cols_[g].size() != b.cols_[g].size()) return false;
    for (size_t k = 0; k < a.cols_[g].size(); ++k)
      if (a.cols_[g][k].first != b.cols_[g][k].first || a.cols_[g][k].second != b.cols_[g][k].second) return false;
  }
  return true;
}

Op Op::identity(size_t n, const Poly& p) {
  Op r(n);
  for (size_t g = 0; g < n; ++g) r.add(static_cast<uint32_t>(g), static_cast<uint32_t>(g), p);
  return r;
}

Op anticommutator(const Op& a, const Op& b) { return a * b + b * a; }
Op commutator(const Op& a, const Op& b) { return a * b - b * a; }

// ---------------------------------------------------------------- local pieces

namespace {

// digit of crossing c: bit 0 = k (1 source, 0 target), bit 1 = R
inline int digit(uint32_t g, int c) { return (g >> (2 * c)) & 3; }
inline uint32_t with_digit(uint32_t g, int c, int d) { return (g & ~(3u << (2 * c))) | (uint32_t(d) << (2 * c)); }
constexpr int TB = 0, SB = 1, TR = 2, SR = 3;

struct Local {
  int from, to;
  Poly p;
};

struct CrossingVars {
  Poly X, Y, Z;
};

CrossingVars crossing_vars(const EdgeRing& R, const BraidWord& b, int c) {
  int i = std::abs(b.word[c]) - 1;
  return {R.x(i, c), R.x(i + 1, c), R.x(i, c + 1)};
}

// Tensor a local map on factor c into the whole complex with Koszul signs.
Op tensor_local(size_t ngen, int c, const std::vector<Local>& loc, bool vertical) {
  Op r(ngen);
  for (uint32_t g = 0; g < ngen; ++g) {
    int d = digit(g, c);
    int par = 0;
    for (int c2 = 0; c2 < c; ++c2) {
      int d2 = digit(g, c2);
      par += (d2 & 1) + (d2 >> 1);
    }
    if (vertical) par += d & 1;
    for (auto& e : loc)
      if (e.from == d) r.add(g, with_digit(g, c, e.to), (par % 2) ? -e.p : e.p);
  }
  return r;
}

}  // namespace

std::string Bicomplex::label(uint32_t g) const {
  std::string s;
  for (size_t c = 0; c < braid.word.size(); ++c) {
    int d = digit(g, static_cast<int>(c));
    if (c) s += ".";
    s += (d & 2) ? "R" : "B";
    s += (d & 1) ? "s" : "t";
  }
  return s.empty() ? "1" : s;
}

std::string Bicomplex::dump(const Op& op) const {
  std::ostringstream os;
  for (uint32_t g = 0; g < op.size(); ++g)
    for (auto& [t, p] : op.col(g)) os << "(" << label(g) << ", " << label(t) << ", " << p.to_string(ring.names) << ")\n";
  return os.str();
}

Bicomplex build_bicomplex(const BraidWord& b, const Potential* pot, bool reduced, bool closed) {
  validate(b);
  int L = static_cast<int>(b.word.size());
  if (L > 12) throw SoergelError("bicomplex: " + std::to_string(L) + " crossings give too many generators");
  Bicomplex C;
  C.braid = b;
  C.ring = build_edge_ring(b, reduced, closed);
  if (pot) C.pot = *pot;
  size_t ngen = size_t(1) << (2 * L);
  C.gens.resize(ngen);
  for (uint32_t g = 0; g < ngen; ++g) {
    Generator& G = C.gens[g];
    for (int c = 0; c < L; ++c) {
      int d = digit(g, c);
      bool pos = b.word[c] > 0;
      G.h += d & 1;
      if (pos) {
        G.v += (d & 2) ? 1 : 0;
        static const int qs[4] = {0, 4, 0, 2};   // TB SB TR SR
        G.qshift += qs[d];
      } else {
        G.v += (d & 2) ? -1 : 0;
        static const int qs[4] = {0, 4, 2, 4};
        G.qshift += qs[d];
      }
    }
  }

  // local W in X, Y, Z (variables 0, 1, 2)
  Poly Wl, W1, W2;
  if (pot) {
    Poly X = Poly::var(0), Y = Poly::var(1), Z = Poly::var(2);
    Wl = pot->W(0) + pot->W(1) - pot->W(2) - pot->W(3).substitute({X, Y, Z, X + Y - Z});
    Poly rem;
    W1 = Wl.divide_linear(0, Z, &rem);
    if (!rem.is_zero()) throw SoergelError("potential: W_i not divisible by (x_i - x'_i)");
    W2 = W1.divide_linear(1, Z, &rem);
    if (!rem.is_zero()) throw SoergelError("potential: W_i not divisible by (x_i - x'_i)(x_{i+1} - x'_i)");
  }

  C.d_plus = Op(ngen);
  C.d_pot = Op(ngen);
  C.d_v = Op(ngen);
  for (int c = 0; c < L; ++c) {
    auto [X, Y, Z] = crossing_vars(C.ring, b, c);
    Poly one = Poly::constant(1);
    std::vector<Local> dp = {{SR, TR, X - Z}, {SB, TB, (Z - X) * (Z - Y)}};
    C.d_plus = C.d_plus + tensor_local(ngen, c, dp, false);
    if (pot) {
      std::vector<Poly> img = {X, Y, Z};
      std::vector<Local> dw = {{TR, SR, W1.substitute(img)}, {TB, SB, W2.substitute(img)}};
      C.d_pot = C.d_pot + tensor_local(ngen, c, dw, false);
    }
    std::vector<Local> dv;
    if (b.word[c] > 0)
      dv = {{SB, SR, Y - Z}, {TB, TR, one}};
    else
      dv = {{SR, SB, one}, {TR, TB, Y - Z}};
    C.d_v = C.d_v + tensor_local(ngen, c, dv, true);
  }
  return C;
}

Op crossing_homotopy(const Bicomplex& C, int c) {
  auto [X, Y, Z] = crossing_vars(C.ring, C.braid, c);
  Poly one = Poly::constant(1);
  std::vector<Local> h;
  if (C.braid.word[c] > 0)
    h = {{SR, SB, one}, {TR, TB, Y - Z}};
  else
    h = {{SB, SR, Y - Z}, {TB, TR, one}};
  return tensor_local(C.size(), c, h, true);
}

Op crossing_contraction(const Bicomplex& C, int c) {
  std::vector<Local> k = {{TR, SR, Poly::constant(1)}};
  return tensor_local(C.size(), c, k, false);
}

std::vector<std::vector<int>> strand_signs(const BraidWord& b) {
  int n = b.strands, L = static_cast<int>(b.word.size());
  std::vector<std::vector<int>> s(n, std::vector<int>(L, 0));
  std::vector<int> at(n);   // at[p] = strand (bottom position) currently at p
  for (int p = 0; p < n; ++p) at[p] = p;
  for (int c = 0; c < L; ++c) {
    int i = std::abs(b.word[c]) - 1;
    s[at[i]][c] = -1;
    s[at[i + 1]][c] = 1;
    std::swap(at[i], at[i + 1]);
  }
  return s;
}

}  // namespace trihom
