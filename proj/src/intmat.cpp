#include "plumbroot/intmat.hpp"

#include <cstdlib>
#include <utility>

namespace plumbroot {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < o.cols_; ++j) {
      i128 acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) {
        acc = checked_add128(acc, i128((*this)(i, k)) * o(k, j));
      }
      r(i, j) = checked_narrow(acc);
    }
  }
  return r;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
  IntVec r(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    i128 acc = 0;
    for (std::size_t k = 0; k < cols_; ++k) {
      acc = checked_add128(acc, i128((*this)(i, k)) * v[k]);
    }
    r[i] = checked_narrow(acc);
  }
  return r;
}

IntMatrix IntMatrix::principal(const std::vector<std::size_t>& idx) const {
  IntMatrix r(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(idx[i], idx[j]);
  }
  return r;
}

std::int64_t determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<std::vector<i128>> a(n, std::vector<i128>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  }
  i128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        i128 v = checked_add128(checked_mul128(a[i][j], a[k][k]),
                                -checked_mul128(a[i][k], a[k][j]));
        a[i][j] = v / prev;  // exact by Sylvester's identity
      }
    }
    prev = a[k][k];
  }
  return checked_narrow(sign * a[n - 1][n - 1]);
}

IntMatrix adjugate(const IntMatrix& m) {
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      std::size_t r = 0;
      for (std::size_t a = 0; a < n; ++a) {
        if (a == i) continue;
        std::size_t c = 0;
        for (std::size_t b = 0; b < n; ++b) {
          if (b == j) continue;
          minor(r, c++) = m(a, b);
        }
        ++r;
      }
      std::int64_t cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      adj(j, i) = cof;  // transpose of the cofactor matrix
    }
  }
  return adj;
}

namespace {

struct SmithState {
  IntMatrix a, u, u_inv, v;
  std::size_t n, k;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < k; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < n; ++c) std::swap(u(i, c), u(j, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(u_inv(r, i), u_inv(r, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < k; ++r) std::swap(v(r, i), v(r, j));
  }
  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, std::int64_t c) {
    if (c == 0) return;
    for (std::size_t col = 0; col < k; ++col) a(i, col) = checked_add(a(i, col), checked_mul(c, a(j, col)));
    for (std::size_t col = 0; col < n; ++col) u(i, col) = checked_add(u(i, col), checked_mul(c, u(j, col)));
    for (std::size_t r = 0; r < n; ++r) u_inv(r, j) = checked_add(u_inv(r, j), checked_mul(-c, u_inv(r, i)));
  }
  // col_i += c * col_j
  void add_col(std::size_t i, std::size_t j, std::int64_t c) {
    if (c == 0) return;
    for (std::size_t r = 0; r < n; ++r) a(r, i) = checked_add(a(r, i), checked_mul(c, a(r, j)));
    for (std::size_t r = 0; r < k; ++r) v(r, i) = checked_add(v(r, i), checked_mul(c, v(r, j)));
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < k; ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < n; ++c) u(i, c) = -u(i, c);
    for (std::size_t r = 0; r < n; ++r) u_inv(r, i) = -u_inv(r, i);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithState st{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.rows()),
                IntMatrix::identity(m.cols()), m.rows(), m.cols()};
  const std::size_t n = st.n, k = st.k;
  const std::size_t diag = std::min(n, k);
  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::size_t pi = n, pj = k;
      for (std::size_t i = t; i < n; ++i) {
        for (std::size_t j = t; j < k; ++j) {
          if (st.a(i, j) != 0 &&
              (pi == n || std::llabs(st.a(i, j)) < std::llabs(st.a(pi, pj)))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == n) break;  // trailing block is zero
      st.swap_rows(t, pi);
      st.swap_cols(t, pj);
      const std::int64_t p = st.a(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        st.add_row(i, t, -floor_div(st.a(i, t), p));
        if (st.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        st.add_col(j, t, -floor_div(st.a(t, j), p));
        if (st.a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility of the trailing block by the pivot.
      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i) {
        for (std::size_t j = t + 1; j < k; ++j) {
          if (st.a(i, j) % p != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == n) break;
      st.add_row(t, bad, 1);
    }
    if (st.a(t, t) < 0) st.negate_row(t);
  }
  SmithForm out;
  out.diagonal.resize(diag);
  for (std::size_t t = 0; t < diag; ++t) out.diagonal[t] = st.a(t, t);
  out.u = std::move(st.u);
  out.u_inv = std::move(st.u_inv);
  out.v = std::move(st.v);
  return out;
}

}  // namespace plumbroot
