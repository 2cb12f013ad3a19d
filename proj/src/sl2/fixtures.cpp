#include "trihom/sl2.hpp"

namespace trihom {

namespace {

// Builds a basis out of weight strings v, Ev, ..., E^(len-1) v.
class Builder {
 public:
  explicit Builder(std::string knot) { f_.knot = std::move(knot); }

  void string(const std::string& v, int len, int q, int a, int delta) {
    for (int j = 0; j < len; ++j) {
      std::string nm = j == 0 ? v : (j == 1 ? "E" : "E" + std::to_string(j)) + v;
      f_.index[nm] = f_.action.basis.size();
      f_.action.basis.push_back({q + 4 * j, a, delta, nm});
      if (j) edges_.emplace_back(f_.action.basis.size() - 2, f_.action.basis.size() - 1);
    }
    len_[v] = len;
  }

  void finish_strings() {
    size_t n = f_.action.basis.size();
    std::vector<Entry> e;
    for (auto [s, t] : edges_) e.push_back({t, s, Rat(1)});
    f_.action.E = RatMatrix::from_entries(n, n, std::move(e));
    f_.action.H = weight_matrix(f_.action.basis);
  }

  // d_k on a string generator, extended along the string by [E, d_k] = 0
  void set(int k, const std::string& v, const std::vector<std::pair<std::string, Rat>>& image) {
    size_t n = f_.action.basis.size();
    RatMatrix& d = f_.d.try_emplace(k, n, n).first->second;
    SparseVec img;
    for (auto& [nm, c] : image) axpy(img, c, f_.vec(nm));
    std::vector<Entry> e = d.entries();
    size_t src = f_.index.at(v);
    for (int j = 0; j < len_.at(v); ++j, ++src) {
      for (auto& [t, c] : img) e.push_back({t, src, c});
      img = f_.action.E.apply(img);
    }
    if (!img.empty()) throw SL2Error("fixture: d_" + std::to_string(k) + " on " + v + " does not commute with E");
    d = RatMatrix::from_entries(n, n, std::move(e));
  }

  ActionFixture& get() { return f_; }

 private:
  ActionFixture f_;
  std::vector<std::pair<size_t, size_t>> edges_;
  std::map<std::string, int> len_;
};

}  // namespace

SparseVec ActionFixture::vec(const std::string& n, const Rat& c) const {
  return {{static_cast<uint32_t>(index.at(n)), c}};
}

// Delta = -2: u (a = 2) spans L(2); y, z (a = 0) span L(3) + L(1); w (a = -2)
// spans L(2).  m is alone in Delta = 0.  d_1 is not written down: it is
// solved from the normalizations d_-1(u) = y, d_1(y) = w and the scale of z.
ActionFixture fixture_10_125() {
  Builder b("10_125");
  b.string("u", 3, -4, 2, -2);
  b.string("y", 4, -6, 0, -2);
  b.string("z", 2, -2, 0, -2);
  b.string("w", 3, -4, -2, -2);
  b.string("m", 1, 0, 0, 0);
  b.finish_strings();
  ActionFixture& f = b.get();
  f.S = 0;
  f.s = -2;
  std::vector<Normalization> norms = {
      {true, f.index.at("u"), f.vec("y"), false},
      {false, f.index.at("y"), f.vec("w"), false},
      {false, f.index.at("u"), f.vec("z"), true},
  };
  f.d[1] = solve_equivariant(f.action, 1, norms);
  b.set(2, "u", {{"m", 1}});
  return f;
}

// Delta = 2 rows a = 8, 6, 4; Delta = 4 rows a = 6, 4, 2.  The d_1 survivor
// is n at (q, a) = (-4, 4).  d_2 is the first of the two cases left open by
// degree reasons (d_2(z) = E^2 beta), with signs fixed by d_1 d_2 + d_2 d_1 = 0.
ActionFixture fixture_11n135() {
  Builder b("11n135");
  b.string("a", 2, -2, 8, 2);
  b.string("b", 1, 0, 8, 2);
  b.string("c", 3, -4, 6, 2);
  b.string("x", 2, -2, 6, 2);
  b.string("e", 1, 0, 6, 2);
  b.string("y", 2, -2, 4, 2);
  b.string("z", 1, 0, 4, 2);
  b.string("k", 3, -4, 6, 4);
  b.string("l", 2, -2, 6, 4);
  b.string("m", 4, -6, 4, 4);
  b.string("n", 3, -4, 4, 4);
  b.string("alpha", 2, -2, 4, 4);
  b.string("beta", 3, -4, 2, 4);
  b.finish_strings();
  b.set(1, "a", {{"Ec", Rat(1, 2)}, {"e", 1}});
  b.set(1, "c", {{"y", 1}});
  b.set(1, "e", {{"Ey", Rat(-1, 2)}});
  b.set(1, "b", {{"Ex", 1}});
  b.set(1, "x", {{"z", 1}});
  b.set(1, "k", {{"Em", 1}, {"alpha", 1}});
  b.set(1, "m", {{"beta", 1}});
  b.set(1, "alpha", {{"Ebeta", -1}});
  b.set(1, "l", {{"En", 1}});
  b.set(2, "b", {{"E2k", 1}});
  b.set(2, "x", {{"E2m", -1}});
  b.set(2, "z", {{"E2beta", 1}});
  ActionFixture& f = b.get();
  f.S = -4;
  f.s = 4;
  return f;
}

std::vector<ActionFixture> action_fixtures() { return {fixture_10_125(), fixture_11n135()}; }

}  // namespace trihom
