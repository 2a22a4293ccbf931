#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gkm/lattice.hpp"

namespace gkm {

/// Integer polynomial in the two lattice generators u1, u2, stored by graded
/// blocks: degree d occupies d+1 coefficients, the j-th being the coefficient
/// of u1^{d-j} u2^j. A weight (x, y) corresponds to the linear form
/// x*u1 + y*u2.
class Poly2 {
 public:
  Poly2() = default;

  static Poly2 constant(Int c);
  static Poly2 linear(const Weight& w);

  bool is_zero() const;
  int degree() const;  // -1 for the zero polynomial
  bool is_homogeneous(int d) const;
  Poly2 homogeneous_part(int d) const;

  const Int& coeff(int du1, int du2) const;
  void add_coeff(int du1, int du2, const Int& c);

  Poly2 operator-() const;
  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Int& c, const Poly2& p);
  friend bool operator==(const Poly2& a, const Poly2& b);
  friend bool operator!=(const Poly2& a, const Poly2& b) { return !(a == b); }

  /// Exact quotient by the linear form of l, or nullopt when l does not
  /// divide this polynomial over the integers.
  std::optional<Poly2> divided_by_linear(const Weight& l) const;

  Rat eval(const Rat& u1, const Rat& u2) const;

  std::string str() const;  // e.g. "u1^2 - 2*u1*u2 + 3"

 private:
  // c_[off(d) + j] = coefficient of u1^{d-j} u2^j, off(d) = d*(d+1)/2
  std::vector<Int> c_;

  static int off(int d) { return d * (d + 1) / 2; }
  void ensure_degree(int d);
  void trim();
};

}  // namespace gkm
