#include "trihom/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace trihom {

int degree(const Mono& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r{};
  for (int i = 0; i < kMaxVars; ++i) {
    int e = a[i] + b[i];
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    r[i] = static_cast<uint8_t>(e);
  }
  return r;
}

namespace {
void mono_rec(int k, int i, int left, Mono& cur, std::vector<Mono>& out) {
  if (i == k - 1) {
    cur[i] = static_cast<uint8_t>(left);
    out.push_back(cur);
    cur[i] = 0;
    return;
  }
  for (int e = left; e >= 0; --e) {
    cur[i] = static_cast<uint8_t>(e);
    mono_rec(k, i + 1, left - e, cur, out);
  }
  cur[i] = 0;
}
}  // namespace

std::vector<Mono> monomials(int k, int d) {
  std::vector<Mono> out;
  if (d < 0) return out;
  if (k == 0) {
    if (d == 0) out.push_back(Mono{});
    return out;
  }
  Mono cur{};
  mono_rec(k, 0, d, cur, out);
  return out;
}

Poly Poly::constant(const Rat& c) {
  Poly p;
  p.add_term(Mono{}, c);
  return p;
}

Poly Poly::var(int i, const Rat& c) {
  if (i < 0 || i >= kMaxVars) throw std::out_of_range("Poly::var: index out of range");
  Mono m{};
  m[i] = 1;
  Poly p;
  p.add_term(m, c);
  return p;
}

Poly Poly::linear(const std::vector<Rat>& coeffs) {
  Poly p;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) p += var(static_cast<int>(i), coeffs[i]);
  return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && degree(t_.begin()->first) == 0); }

Rat Poly::constant_term() const {
  auto it = t_.find(Mono{});
  return it == t_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Mono& m, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

int Poly::var_span() const {
  int s = 0;
  for (auto& [m, c] : t_)
    for (int i = kMaxVars - 1; i >= s; --i)
      if (m[i]) {
        s = i + 1;
        break;
      }
  return s;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (auto& [m, c] : o.t_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (auto& [m1, c1] : t_)
    for (auto& [m2, c2] : o.t_) r.add_term(mono_mul(m1, m2), c1 * c2);
  return r;
}

Poly Poly::scaled(const Rat& s) const {
  Poly r;
  if (s == 0) return r;
  for (auto& [m, c] : t_) r.t_.emplace(m, c * s);
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  Poly r;
  // cache powers per variable
  std::vector<std::vector<Poly>> pw(images.size());
  for (auto& [m, c] : t_) {
    Poly term = constant(c);
    Mono rest{};
    for (int i = 0; i < kMaxVars; ++i) {
      if (!m[i]) continue;
      if (static_cast<size_t>(i) >= images.size()) {
        rest[i] = m[i];
        continue;
      }
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(constant(1));
      while (cache.size() <= m[i]) cache.push_back(cache.back() * images[i]);
      term = term * cache[m[i]];
    }
    if (degree(rest)) {
      Poly mr;
      mr.add_term(rest, 1);
      term = term * mr;
    }
    r += term;
  }
  return r;
}

Poly Poly::divide_linear(int v, const Poly& root, Poly* rem) const {
  // group by the exponent of x_v
  std::map<int, Poly> by;
  int top = 0;
  for (auto& [m, c] : t_) {
    Mono mm = m;
    int e = mm[v];
    mm[v] = 0;
    by[e].add_term(mm, c);
    top = std::max(top, e);
  }
  // Horner: P = sum P_j x^j, Q_{j-1} = P_j + r Q_j
  Poly q_acc;   // Q_j for the current j
  Poly quotient;
  for (int j = top; j >= 1; --j) {
    Poly qj = by[j] + root * q_acc;   // coefficient of x^(j-1)
    if (!qj.is_zero()) {
      Mono xv{};
      xv[v] = static_cast<uint8_t>(j - 1);
      Poly mon;
      mon.add_term(xv, 1);
      quotient += qj * mon;
    }
    q_acc = qj;
  }
  Poly r = by[0] + root * q_acc;
  if (rem) *rem = r;
  return quotient;
}

Poly Poly::derivative(int v) const {
  Poly r;
  for (auto& [m, c] : t_) {
    if (!m[v]) continue;
    Mono mm = m;
    mm[v] -= 1;
    r.add_term(mm, c * m[v]);
  }
  return r;
}

std::map<int, Poly> Poly::homogeneous_parts() const {
  std::map<int, Poly> out;
  for (auto& [m, c] : t_) out[degree(m)].add_term(m, c);
  return out;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest degree first for readability
  std::vector<std::pair<Mono, Rat>> v(t_.rbegin(), t_.rend());
  for (auto& [m, c] : v) {
    Rat a = abs(c);
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    bool any = false;
    if (a != 1 || degree(m) == 0) {
      os << a.get_str();
      any = true;
    }
    for (int i = 0; i < kMaxVars; ++i) {
      if (!m[i]) continue;
      if (any) os << "*";
      os << (static_cast<size_t>(i) < names.size() ? names[i] : "v" + std::to_string(i));
      if (m[i] > 1) os << "^" << int(m[i]);
      any = true;
    }
  }
  return os.str();
}

}  // namespace trihom
