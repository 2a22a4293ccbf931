#include "gkm/poly.hpp"

#include <sstream>

namespace gkm {

namespace {
const Int kZero = 0;
}

Poly2 Poly2::constant(Int c) {
  Poly2 p;
  if (!c.is_zero()) {
    p.c_.resize(1);
    p.c_[0] = std::move(c);
  }
  return p;
}

Poly2 Poly2::linear(const Weight& w) {
  Poly2 p;
  if (!gkm::is_zero(w)) {
    p.c_.resize(3);
    p.c_[1] = w(0);
    p.c_[2] = w(1);
    p.trim();
  }
  return p;
}

bool Poly2::is_zero() const { return c_.empty(); }

int Poly2::degree() const {
  int d = 0;
  while (off(d + 1) < int(c_.size())) ++d;
  return c_.empty() ? -1 : d;
}

bool Poly2::is_homogeneous(int d) const {
  for (int e = 0; off(e) < int(c_.size()); ++e) {
    if (e == d) continue;
    for (int j = 0; j <= e && off(e) + j < int(c_.size()); ++j) {
      if (!c_[off(e) + j].is_zero()) return false;
    }
  }
  return true;
}

Poly2 Poly2::homogeneous_part(int d) const {
  Poly2 p;
  for (int j = 0; j <= d; ++j) {
    const Int& v = coeff(d - j, j);
    if (!v.is_zero()) p.add_coeff(d - j, j, v);
  }
  return p;
}

const Int& Poly2::coeff(int du1, int du2) const {
  int d = du1 + du2;
  int idx = off(d) + du2;
  if (idx >= int(c_.size())) return kZero;
  return c_[idx];
}

void Poly2::add_coeff(int du1, int du2, const Int& c) {
  if (c.is_zero()) return;
  int d = du1 + du2;
  ensure_degree(d);
  c_[off(d) + du2] += c;
  trim();
}

void Poly2::ensure_degree(int d) {
  if (int(c_.size()) < off(d + 1)) c_.resize(off(d + 1));
}

void Poly2::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  // keep whole graded blocks so indices stay aligned
  int d = 0;
  while (off(d + 1) < int(c_.size())) ++d;
  if (!c_.empty()) c_.resize(off(d + 1));
  while (!c_.empty()) {
    bool top_zero = true;
    for (int j = 0; j <= d; ++j) {
      if (!c_[off(d) + j].is_zero()) {
        top_zero = false;
        break;
      }
    }
    if (!top_zero) break;
    c_.resize(off(d));
    --d;
  }
}

Poly2 Poly2::operator-() const {
  Poly2 p = *this;
  for (auto& v : p.c_) v = -v;
  return p;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 p;
  if (a.is_zero() || b.is_zero()) return p;
  int da = a.degree(), db = b.degree();
  p.ensure_degree(da + db);
  for (int d1 = 0; d1 <= da; ++d1) {
    for (int j1 = 0; j1 <= d1; ++j1) {
      const Int& ca = a.c_[Poly2::off(d1) + j1];
      if (ca.is_zero()) continue;
      for (int d2 = 0; d2 <= db; ++d2) {
        for (int j2 = 0; j2 <= d2; ++j2) {
          const Int& cb = b.c_[Poly2::off(d2) + j2];
          if (cb.is_zero()) continue;
          p.c_[Poly2::off(d1 + d2) + j1 + j2] += ca * cb;
        }
      }
    }
  }
  p.trim();
  return p;
}

Poly2 operator*(const Int& c, const Poly2& p) {
  Poly2 r = p;
  if (c.is_zero()) return Poly2();
  for (auto& v : r.c_) v *= c;
  return r;
}

bool operator==(const Poly2& a, const Poly2& b) {
  size_t n = std::max(a.c_.size(), b.c_.size());
  for (size_t i = 0; i < n; ++i) {
    const Int& ca = i < a.c_.size() ? a.c_[i] : kZero;
    const Int& cb = i < b.c_.size() ? b.c_[i] : kZero;
    if (ca != cb) return false;
  }
  return true;
}

std::optional<Poly2> Poly2::divided_by_linear(const Weight& l) const {
  if (gkm::is_zero(l)) throw PreconditionUnmetError("division by zero form");
  if (is_zero()) return Poly2();
  // Divide each homogeneous component f_d by p*u1 + q*u2.
  Poly2 quotient;
  const Int& p = l(0);
  const Int& q = l(1);
  int deg = degree();
  for (int d = 0; d <= deg; ++d) {
    Poly2 fd = homogeneous_part(d);
    if (fd.is_zero()) continue;
    if (d == 0) return std::nullopt;  // nonzero constant is never divisible
    if (!p.is_zero()) {
      // synthetic division: c_j = p*h_j + q*h_{j-1}
      std::vector<Int> h(d);
      for (int j = 0; j < d; ++j) {
        Int num = fd.coeff(d - j, j);
        if (j > 0) num -= q * h[j - 1];
        if (num % p != 0) return std::nullopt;
        h[j] = num / p;
      }
      if (fd.coeff(0, d) != q * h[d - 1]) return std::nullopt;
      for (int j = 0; j < d; ++j) quotient.add_coeff(d - 1 - j, j, h[j]);
    } else {
      // l = q*u2: every monomial needs a u2 factor divisible by q
      if (!fd.coeff(d, 0).is_zero()) return std::nullopt;
      for (int j = 1; j <= d; ++j) {
        Int cj = fd.coeff(d - j, j);
        if (cj % q != 0) return std::nullopt;
        quotient.add_coeff(d - j, j - 1, cj / q);
      }
    }
  }
  return quotient;
}

Rat Poly2::eval(const Rat& u1, const Rat& u2) const {
  Rat total = 0;
  for (int d = 0; off(d) < int(c_.size()); ++d) {
    for (int j = 0; j <= d; ++j) {
      const Int& cv = c_[off(d) + j];
      if (cv.is_zero()) continue;
      Rat term = cv;
      for (int t = 0; t < d - j; ++t) term *= u1;
      for (int t = 0; t < j; ++t) term *= u2;
      total += term;
    }
  }
  return total;
}

std::string Poly2::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    for (int j = 0; j <= d; ++j) {
      const Int& cv = coeff(d - j, j);
      if (cv.is_zero()) continue;
      Int a = abs(cv);
      if (first) {
        if (cv < 0) os << "-";
        first = false;
      } else {
        os << (cv < 0 ? " - " : " + ");
      }
      bool has_var = d > 0;
      if (a != 1 || !has_var) {
        os << a;
        if (has_var) os << "*";
      }
      if (d - j > 0) {
        os << "u1";
        if (d - j > 1) os << "^" << (d - j);
        if (j > 0) os << "*";
      }
      if (j > 0) {
        os << "u2";
        if (j > 1) os << "^" << j;
      }
    }
  }
  return os.str();
}

}  // namespace gkm
