#include "trihom/skein.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace trihom {

// ---------------------------------------------------------------- LaurentPoly2

LaurentPoly2 LaurentPoly2::constant(const Rat& c) { return monomial(0, 0, c); }

LaurentPoly2 LaurentPoly2::monomial(int e1, int e2, const Rat& c) {
  LaurentPoly2 p;
  p.add_term(e1, e2, c);
  return p;
}

Rat LaurentPoly2::coeff(int e1, int e2) const {
  auto it = t_.find({e1, e2});
  return it == t_.end() ? Rat(0) : it->second;
}

void LaurentPoly2::add_term(int e1, int e2, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.emplace(Key{e1, e2}, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

LaurentPoly2 LaurentPoly2::operator+(const LaurentPoly2& o) const {
  LaurentPoly2 r = *this;
  for (auto& [k, c] : o.t_) r.add_term(k.first, k.second, c);
  return r;
}

LaurentPoly2 LaurentPoly2::operator-(const LaurentPoly2& o) const {
  LaurentPoly2 r = *this;
  for (auto& [k, c] : o.t_) r.add_term(k.first, k.second, -c);
  return r;
}

LaurentPoly2 LaurentPoly2::operator*(const LaurentPoly2& o) const {
  LaurentPoly2 r;
  for (auto& [k1, c1] : t_)
    for (auto& [k2, c2] : o.t_) r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
  return r;
}

LaurentPoly2 LaurentPoly2::pow(unsigned k) const {
  LaurentPoly2 r = constant(1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

LaurentPoly2 LaurentPoly2::invert_second() const {
  LaurentPoly2 r;
  for (auto& [k, c] : t_) r.add_term(k.first, -k.second, c);
  return r;
}

std::string LaurentPoly2::to_string() const {
  if (t_.empty()) return "0";
  std::vector<std::pair<Key, Rat>> v(t_.begin(), t_.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    return x.first.second != y.first.second ? x.first.second < y.first.second : x.first.first < y.first.first;
  });
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : v) {
    Rat a = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    os << a.get_str() << "*q^" << k.first << "*a^" << k.second;
    first = false;
  }
  return os.str();
}

LaurentPoly2 LaurentPoly2::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("polynomial: empty text");
  LaurentPoly2 p;
  size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("polynomial: " + why + " at offset " + std::to_string(i) + " in \"" + text + "\"");
  };
  auto read_int = [&]() {
    size_t st = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (st == i || (i == st + 1 && !std::isdigit(static_cast<unsigned char>(s[st])))) fail("expected integer");
    return std::stoi(s.substr(st, i - st));
  };
  if (s == "0") return p;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    Rat c = 1;
    bool have_c = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      size_t st = i;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
      c = Rat(s.substr(st, i - st));
      c.canonicalize();
      have_c = true;
    }
    int eq = 0, ea = 0;
    bool have_var = false;
    while (i < s.size() && (s[i] == '*' || s[i] == 'q' || s[i] == 'a')) {
      if (s[i] == '*') {
        ++i;
        continue;
      }
      char v = s[i++];
      int e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        e = read_int();
      }
      (v == 'q' ? eq : ea) += e;
      have_var = true;
    }
    if (!have_c && !have_var) fail("expected term");
    p.add_term(eq, ea, sign * c);
  }
  return p;
}

// ---------------------------------------------------------------- skein

Homfly za_to_qa(const LaurentPoly2& za) {
  int minz = 0;
  for (auto& [k, c] : za.terms()) minz = std::min(minz, k.first);
  Homfly h;
  h.denominator_power = -minz;
  // (q^-1 - q)^k = sum_m C(k,m) (-1)^m q^(2m-k)
  for (auto& [k, c] : za.terms()) {
    int e = k.first - minz;
    Int binom = 1;
    for (int m = 0; m <= e; ++m) {
      Rat coef = c * Rat(binom) * ((m % 2) ? -1 : 1);
      h.numerator.add_term(2 * m - e, k.second, coef);
      binom = binom * (e - m) / (m + 1);
    }
  }
  return h;
}

LaurentPoly2 SkeinEngine::eval(const BraidWord& b) {
  if (b.word.size() > cap_)
    throw SkeinLimit("skein: " + std::to_string(b.word.size()) + " crossings exceed the cap of " +
                     std::to_string(cap_));
  // conjugation by rotation gives the same closure
  std::vector<int> canon = b.word;
  {
    std::vector<int> r = b.word;
    for (size_t s = 1; s < r.size(); ++s) {
      std::rotate(r.begin(), r.begin() + 1, r.end());
      if (r < canon) canon = r;
    }
  }
  auto key = std::make_pair(b.strands, canon);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  ClosureInfo ci = closure_info(b);
  int L = static_cast<int>(b.word.size());
  std::vector<bool> seen(L, false);
  int bad = -1;
  for (auto& cyc : ci.cycles) {
    int start = cyc.front();
    int pos = start;
    do {
      for (int k = 0; k < L && bad < 0; ++k) {
        int g = b.word[k], i = std::abs(g) - 1;
        if (pos != i && pos != i + 1) continue;
        bool over = g > 0 ? pos == i : pos == i + 1;
        if (!seen[k]) {
          seen[k] = true;
          if (!over) bad = k;
        }
        pos = pos == i ? i + 1 : i;
      }
    } while (pos != start && bad < 0);
    if (bad >= 0) break;
  }

  LaurentPoly2 res;
  if (bad < 0) {
    // descending diagram: unlink
    LaurentPoly2 delta = LaurentPoly2::monomial(-1, -1) - LaurentPoly2::monomial(-1, 1);
    res = delta.pow(ci.components - 1);
  } else {
    BraidWord flip = b, smooth = b;
    flip.word[bad] = -flip.word[bad];
    smooth.word.erase(smooth.word.begin() + bad);
    LaurentPoly2 pf = eval(flip), ps = eval(smooth);
    if (b.word[bad] > 0)   // P+ = a^2 P- + a z P0
      res = LaurentPoly2::monomial(0, 2) * pf + LaurentPoly2::monomial(1, 1) * ps;
    else   // P- = a^-2 P+ - a^-1 z P0
      res = LaurentPoly2::monomial(0, -2) * pf - LaurentPoly2::monomial(1, -1) * ps;
  }
  std::lock_guard<std::mutex> lk(mu_);
  memo_.emplace(key, res);
  return res;
}

LaurentPoly2 SkeinEngine::homfly_za(const BraidWord& b) {
  validate(b);
  return eval(b);
}

Homfly SkeinEngine::homfly(const BraidWord& b) { return za_to_qa(homfly_za(b)); }

size_t SkeinEngine::memo_size() const {
  std::lock_guard<std::mutex> lk(mu_);
  return memo_.size();
}

Homfly homfly(const BraidWord& b, size_t crossing_cap) {
  SkeinEngine e(crossing_cap);
  return e.homfly(b);
}

LaurentPoly2 homfly_poly(const BraidWord& b, size_t crossing_cap) {
  Homfly h = homfly(b, crossing_cap);
  if (h.denominator_power != 0)
    throw std::invalid_argument("homfly: closure of " + b.to_string() + " has a non-Laurent polynomial");
  return h.numerator;
}

}  // namespace trihom
