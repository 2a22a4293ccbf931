#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <optional>
#include <string>
#include <utility>

#include "gkm/errors.hpp"

namespace gkm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Element of the rank-2 weight lattice. Edge labels are always nonzero.
using Weight = Eigen::Matrix<Int, 2, 1>;
using Vec3 = Eigen::Matrix<Int, 3, 1>;
using Mat2 = Eigen::Matrix<Int, 2, 2>;
using Mat3 = Eigen::Matrix<Int, 3, 3>;
using MatX = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;

inline Weight weight(long x, long y) { return Weight{Int(x), Int(y)}; }

inline int sign_of(const Int& v) { return v.sign(); }

inline Int det(const Weight& a, const Weight& b) {
  return a(0) * b(1) - a(1) * b(0);
}

inline Int dot(const Weight& a, const Weight& b) {
  return a(0) * b(0) + a(1) * b(1);
}

inline Int det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a(0) * (b(1) * c(2) - b(2) * c(1)) - a(1) * (b(0) * c(2) - b(2) * c(0)) +
         a(2) * (b(0) * c(1) - b(1) * c(0));
}

inline bool is_zero(const Weight& w) { return w(0).is_zero() && w(1).is_zero(); }

inline bool linearly_independent(const Weight& a, const Weight& b) {
  return !det(a, b).is_zero();
}

/// Whether a and b generate the full lattice, i.e. |det(a,b)| = 1.
inline bool is_basis(const Weight& a, const Weight& b) {
  Int d = det(a, b);
  return d == 1 || d == -1;
}

/// w divided by the gcd of its coordinates (zero stays zero).
Weight primitive(const Weight& w);

/// Canonical representative of {w, -w}: first nonzero coordinate positive.
Weight canonical_rep(const Weight& w);

/// A weight up to sign, stored by its canonical representative.
class UnsignedWeight {
 public:
  UnsignedWeight() : rep_(weight(0, 0)) {}
  explicit UnsignedWeight(const Weight& w) : rep_(canonical_rep(w)) {}

  const Weight& rep() const { return rep_; }

  friend bool operator==(const UnsignedWeight& a, const UnsignedWeight& b) {
    return a.rep_ == b.rep_;
  }
  friend bool operator!=(const UnsignedWeight& a, const UnsignedWeight& b) {
    return !(a == b);
  }

 private:
  Weight rep_;
};

/// Lexicographic order, usable as a map comparator.
struct WeightLess {
  bool operator()(const Weight& a, const Weight& b) const {
    if (a(0) != b(0)) return a(0) < b(0);
    return a(1) < b(1);
  }
};

/// Solves a = b + c*g (signed) or a = ±b + c*g (unsigned, preferring the
/// + solution) for an integer c. g must be nonzero. Absence is a value.
std::optional<Int> congruent_mod(const Weight& a, const Weight& b, const Weight& g,
                                 bool signed_mode);

/// Dual basis (a*, b*) with <a*,a>=1, <a*,b>=0, <b*,a>=0, <b*,b>=1.
/// Throws NotABasisError when det(a,b) is not ±1.
std::pair<Weight, Weight> dual_basis(const Weight& a, const Weight& b);

/// Integer solution (x, y) of w = x*a + y*b, if one exists. Requires a, b
/// linearly independent.
std::optional<std::pair<Int, Int>> expand_in_basis(const Weight& w, const Weight& a,
                                                   const Weight& b);

std::string to_string(const Weight& w);

/// Smith normal form of an integer matrix: returns (U, D, V) with
/// U * A * V = D, U and V unimodular, D diagonal with d_i | d_{i+1}.
struct SmithResult {
  MatX u, d, v;
  int rank = 0;
};
SmithResult smith_normal_form(MatX a);

}  // namespace gkm
