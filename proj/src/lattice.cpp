#include "gkm/lattice.hpp"

#include <cstdlib>
#include <sstream>

namespace gkm {

SearchBudget::SearchBudget() {
  limit_ = uint64_t(1) << 24;
  if (const char* env = std::getenv("GKM_NODE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) limit_ = v;
  }
}

Weight primitive(const Weight& w) {
  if (is_zero(w)) return w;
  Int g = boost::multiprecision::gcd(abs(w(0)), abs(w(1)));
  return Weight{w(0) / g, w(1) / g};
}

Weight canonical_rep(const Weight& w) {
  if (w(0).is_zero()) {
    return w(1) < 0 ? Weight{-w(0), -w(1)} : w;
  }
  return w(0) < 0 ? Weight{-w(0), -w(1)} : w;
}

std::optional<Int> congruent_mod(const Weight& a, const Weight& b, const Weight& g,
                                 bool signed_mode) {
  if (is_zero(g)) throw PreconditionUnmetError("congruent_mod: modulus must be nonzero");
  auto solve = [&g](const Weight& diff) -> std::optional<Int> {
    // diff = c * g
    if (!g(0).is_zero()) {
      Int q = diff(0) / g(0);
      if (q * g(0) == diff(0) && q * g(1) == diff(1)) return q;
      return std::nullopt;
    }
    Int q = diff(1) / g(1);
    if (diff(0).is_zero() && q * g(1) == diff(1)) return q;
    return std::nullopt;
  };
  if (auto c = solve(Weight{a(0) - b(0), a(1) - b(1)})) return c;
  if (!signed_mode) {
    if (auto c = solve(Weight{a(0) + b(0), a(1) + b(1)})) return c;
  }
  return std::nullopt;
}

std::pair<Weight, Weight> dual_basis(const Weight& a, const Weight& b) {
  Int d = det(a, b);
  if (d != 1 && d != -1) {
    throw NotABasisError("dual_basis: determinant " + d.str() + " is not ±1");
  }
  // inverse of [a b] (columns), rows are the dual vectors
  Weight a_dual{b(1) / d, -b(0) / d};
  Weight b_dual{-a(1) / d, a(0) / d};
  return {a_dual, b_dual};
}

std::optional<std::pair<Int, Int>> expand_in_basis(const Weight& w, const Weight& a,
                                                   const Weight& b) {
  Int d = det(a, b);
  if (d.is_zero()) throw PreconditionUnmetError("expand_in_basis: degenerate basis");
  Int xn = w(0) * b(1) - w(1) * b(0);  // det(w, b)
  Int yn = a(0) * w(1) - a(1) * w(0);  // det(a, w)
  if (xn % d != 0 || yn % d != 0) return std::nullopt;
  return std::make_pair(xn / d, yn / d);
}

std::string to_string(const Weight& w) {
  std::ostringstream os;
  os << "(" << w(0) << "," << w(1) << ")";
  return os.str();
}

namespace {

void swap_rows(MatX& m, int i, int j) { m.row(i).swap(m.row(j)); }
void swap_cols(MatX& m, int i, int j) { m.col(i).swap(m.col(j)); }

}  // namespace

SmithResult smith_normal_form(MatX a) {
  const int rows = int(a.rows());
  const int cols = int(a.cols());
  SmithResult res;
  res.u = MatX::Identity(rows, rows);
  res.v = MatX::Identity(cols, cols);

  int t = 0;
  while (t < rows && t < cols) {
    // find pivot with minimal absolute value in the remaining block
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < rows; ++i) {
      for (int j = t; j < cols; ++j) {
        if (a(i, j).is_zero()) continue;
        Int v = abs(a(i, j));
        if (pi < 0 || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    }
    if (pi < 0) break;
    if (pi != t) {
      swap_rows(a, t, pi);
      swap_rows(res.u, t, pi);
    }
    if (pj != t) {
      swap_cols(a, t, pj);
      swap_cols(res.v, t, pj);
    }
    bool reduced = true;
    for (int i = t + 1; i < rows; ++i) {
      if (a(i, t).is_zero()) continue;
      Int q = a(i, t) / a(t, t);
      a.row(i) -= q * a.row(t);
      res.u.row(i) -= q * res.u.row(t);
      if (!a(i, t).is_zero()) reduced = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      if (a(t, j).is_zero()) continue;
      Int q = a(t, j) / a(t, t);
      a.col(j) -= q * a.col(t);
      res.v.col(j) -= q * res.v.col(t);
      if (!a(t, j).is_zero()) reduced = false;
    }
    if (!reduced) continue;  // another pass on the same corner
    // divisibility pass: a(t,t) must divide the rest of the block
    bool divides = true;
    for (int i = t + 1; i < rows && divides; ++i) {
      for (int j = t + 1; j < cols && divides; ++j) {
        if (a(i, j) % a(t, t) != 0) {
          a.row(t) += a.row(i);
          res.u.row(t) += res.u.row(i);
          divides = false;
        }
      }
    }
    if (!divides) continue;
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      res.u.row(t) = -res.u.row(t);
    }
    ++t;
  }
  res.d = a;
  res.rank = t;
  return res;
}

}  // namespace gkm
