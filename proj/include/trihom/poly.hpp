#pragma once

// Commutative polynomials over Q in at most kMaxVars variables.  Used for
// edge-ring entries of the bicomplex differentials.

#include "trihom/ratlin.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace trihom {

constexpr int kMaxVars = 16;
using Mono = std::array<uint8_t, kMaxVars>;

int degree(const Mono& m);
Mono mono_mul(const Mono& a, const Mono& b);

// All monomials of total degree d in the first k variables, in a fixed order.
std::vector<Mono> monomials(int k, int d);

class Poly {
 public:
  Poly() = default;
  static Poly constant(const Rat& c);
  static Poly var(int i, const Rat& c = 1);
  // sum_i coeffs[i] * x_i
  static Poly linear(const std::vector<Rat>& coeffs);

  const std::map<Mono, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rat constant_term() const;
  void add_term(const Mono& m, const Rat& c);
  // Highest variable index used plus one.
  int var_span() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const { return scaled(-1); }
  Poly scaled(const Rat& s) const;
  Poly& operator+=(const Poly& o);
  Poly pow(unsigned k) const;
  bool operator==(const Poly& o) const { return t_ == o.t_; }
  bool operator!=(const Poly& o) const { return t_ != o.t_; }

  // Replace x_i by images[i] (missing images leave x_i alone).
  Poly substitute(const std::vector<Poly>& images) const;
  // Exact division by (x_v - r) where r does not involve x_v; the remainder
  // is written to *rem.
  Poly divide_linear(int v, const Poly& r, Poly* rem) const;
  // Partial derivative.
  Poly derivative(int v) const;

  // Split into homogeneous parts by total degree.
  std::map<int, Poly> homogeneous_parts() const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::map<Mono, Rat> t_;
};

}  // namespace trihom
