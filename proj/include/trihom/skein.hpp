#pragma once

#include "trihom/braid.hpp"
#include "trihom/ratlin.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace trihom {

// Finite Laurent polynomial in two variables with rational coefficients.
// Keys are (e1, e2); for HOMFLY-PT data e1 is the q-exponent and e2 the
// a-exponent.
class LaurentPoly2 {
 public:
  using Key = std::pair<int, int>;

  LaurentPoly2() = default;
  static LaurentPoly2 constant(const Rat& c);
  static LaurentPoly2 monomial(int e1, int e2, const Rat& c = 1);

  const std::map<Key, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Rat coeff(int e1, int e2) const;
  void add_term(int e1, int e2, const Rat& c);

  LaurentPoly2 operator+(const LaurentPoly2& o) const;
  LaurentPoly2 operator-(const LaurentPoly2& o) const;
  LaurentPoly2 operator*(const LaurentPoly2& o) const;
  LaurentPoly2 pow(unsigned k) const;
  bool operator==(const LaurentPoly2& o) const { return t_ == o.t_; }

  // e2 -> -e2
  LaurentPoly2 invert_second() const;

  // Canonical text: terms "c*q^i*a^j", a-exponent major, q-exponent minor.
  std::string to_string() const;
  static LaurentPoly2 parse(const std::string& text);

 private:
  std::map<Key, Rat> t_;   // no zero coefficients
};

// HOMFLY-PT polynomial of a braid closure as numerator / (q^-1 - q)^den.
// den is 0 for knots.
struct Homfly {
  LaurentPoly2 numerator;   // (q, a)
  int denominator_power = 0;
};

struct SkeinLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Skein-tree evaluator.  The memo is guarded, so one engine may be shared
// between threads.
class SkeinEngine {
 public:
  explicit SkeinEngine(size_t crossing_cap = 16) : cap_(crossing_cap) {}

  // In variables (z, a) with z = q^-1 - q: a^-1 P(+) - a P(-) = z P(0).
  LaurentPoly2 homfly_za(const BraidWord& b);
  Homfly homfly(const BraidWord& b);
  size_t memo_size() const;

 private:
  LaurentPoly2 eval(const BraidWord& b);
  size_t cap_;
  mutable std::mutex mu_;
  std::map<std::pair<int, std::vector<int>>, LaurentPoly2> memo_;
};

// (z, a) polynomial to (q, a): returns numerator and denominator power.
Homfly za_to_qa(const LaurentPoly2& za);

// Convenience wrappers with a private engine.
Homfly homfly(const BraidWord& b, size_t crossing_cap = 16);
// Throws std::invalid_argument if the result is not a Laurent polynomial.
LaurentPoly2 homfly_poly(const BraidWord& b, size_t crossing_cap = 16);

}  // namespace trihom
