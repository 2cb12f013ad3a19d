#include "trihom/homology.hpp"

#include <cstdlib>
#include <sstream>

namespace trihom {

void TrigradedDims::add(const Tri& x, long d) {
  if (d == 0) return;
  long v = at(x) + d;
  if (v < 0) throw HomologyError("negative dimension");
  if (v == 0)
    dims.erase(x);
  else
    dims[x] = v;
}

long TrigradedDims::at(const Tri& x) const {
  auto it = dims.find(x);
  return it == dims.end() ? 0 : it->second;
}

long TrigradedDims::total() const {
  long s = 0;
  for (auto& [k, d] : dims) s += d;
  return s;
}

std::set<int> TrigradedDims::delta_support() const {
  std::set<int> s;
  for (auto& [k, d] : dims) s.insert(k.delta());
  return s;
}

LaurentPoly2 TrigradedDims::euler() const {
  LaurentPoly2 p;
  for (auto& [k, d] : dims) {
    int e = k.t - k.a;
    if (e % 2) throw HomologyError("euler: t - a is odd");
    p.add_term(k.q, k.a, ((e / 2) % 2) ? Rat(-d) : Rat(d));
  }
  return p;
}

bool TrigradedDims::all_even() const {
  for (auto& [k, d] : dims)
    if (k.q % 2 || k.a % 2 || k.t % 2) return false;
  return true;
}

std::string TrigradedDims::to_text(const std::string& name) const {
  std::ostringstream os;
  os << "knot " << name << "\nconvention NS\n";
  for (auto& [k, d] : dims) os << "entry q=" << k.q << " a=" << k.a << " t=" << k.t << " dim=" << d << "\n";
  return os.str();
}

TrigradedDims thin_reconstruction(const LaurentPoly2& P, int sigma) {
  TrigradedDims out;
  for (auto& [key, c] : P.terms()) {
    auto [i, j] = key;
    if (c.get_den() != 1) throw HomologyError("thin reconstruction: non-integer coefficient");
    Tri x{i, j, -sigma - i - j};
    int e = x.t - x.a;
    if (e % 2) throw HomologyError("thin reconstruction: odd t - a");
    int sign = ((e / 2) % 2) ? -1 : 1;
    if ((c > 0 ? 1 : -1) != sign)
      throw HomologyError("thin reconstruction: sign of " + c.get_str() + " q^" + std::to_string(i) + " a^" +
                          std::to_string(j) + " does not fit Delta = " + std::to_string(-sigma));
    out.add(x, std::labs(c.get_num().get_si()));
  }
  return out;
}

GradingShift GradingShift::standard() {
  // frozen output of calibrate_shift on the unknots and trefoils
  GradingShift g;
  g.alpha = {0, 1, -1};
  g.beta = {1, 1, -1};
  g.gamma = {-1, -1, 1};
  return g;
}

Tri GradingShift::apply(int Q, int h, int v, int w, int n, int len) const {
  auto lin = [&](const std::array<int, 3>& c) { return c[0] * w + c[1] * n + c[2]; };
  return {Q - 2 * h - len + lin(alpha), -2 * h + lin(beta), 2 * v + lin(gamma)};
}

std::string GradingShift::to_string() const {
  auto lin = [](const std::array<int, 3>& c) {
    std::ostringstream os;
    os << c[0] << "w " << (c[1] < 0 ? "- " : "+ ") << std::abs(c[1]) << "n " << (c[2] < 0 ? "- " : "+ ")
       << std::abs(c[2]);
    return os.str();
  };
  return "alpha = " + lin(alpha) + ", beta = " + lin(beta) + ", gamma = " + lin(gamma);
}

}  // namespace trihom
