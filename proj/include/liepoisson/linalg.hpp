#pragma once

// Small dense linear algebra for dimensions up to 8. Row-major matrices,
// plain std::vector storage; everything is value-semantic.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace lp {

using Vec = std::vector<double>;

struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
  Mat(int r, int c, std::initializer_list<double> init) : rows(r), cols(c), a(init) {
    assert(static_cast<int>(a.size()) == r * c);
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static Mat diag(const Vec& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  bool operator==(const Mat&) const = default;
};

inline Vec operator+(const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}
inline Vec operator-(const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}
inline Vec operator*(double s, const Vec& x) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = s * x[i];
  return r;
}
inline Vec operator-(const Vec& x) { return -1.0 * x; }

inline double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}
inline double norm(const Vec& x) { return std::sqrt(dot(x, x)); }
inline double norm_inf(const Vec& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}
inline Vec normalized(const Vec& x) {
  double n = norm(x);
  Vec r(x.size(), 0.0);
  if (n > 0.0)
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] / n;
  return r;
}
inline Vec cross(const Vec& x, const Vec& y) {
  assert(x.size() == 3 && y.size() == 3);
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}
inline Vec unit(int n, int i) {
  Vec e(static_cast<std::size_t>(n), 0.0);
  e[static_cast<std::size_t>(i)] = 1.0;
  return e;
}
inline bool finite(const Vec& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

inline Mat operator+(const Mat& A, const Mat& B) {
  Mat r(A.rows, A.cols);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = A.a[i] + B.a[i];
  return r;
}
inline Mat operator-(const Mat& A, const Mat& B) {
  Mat r(A.rows, A.cols);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = A.a[i] - B.a[i];
  return r;
}
inline Mat operator*(double s, const Mat& A) {
  Mat r(A.rows, A.cols);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = s * A.a[i];
  return r;
}
inline Vec operator*(const Mat& A, const Vec& x) {
  Vec r(static_cast<std::size_t>(A.rows), 0.0);
  for (int i = 0; i < A.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < A.cols; ++j) s += A(i, j) * x[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(i)] = s;
  }
  return r;
}
inline Mat operator*(const Mat& A, const Mat& B) {
  Mat r(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      double aik = A(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < B.cols; ++j) r(i, j) += aik * B(k, j);
    }
  return r;
}
inline Mat transpose(const Mat& A) {
  Mat r(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) r(j, i) = A(i, j);
  return r;
}
inline double frobenius_norm(const Mat& A) {
  double s = 0.0;
  for (double v : A.a) s += v * v;
  return std::sqrt(s);
}
inline double max_abs(const Mat& A) {
  double m = 0.0;
  for (double v : A.a) m = std::max(m, std::abs(v));
  return m;
}

/// In-place LU solve with partial pivoting. Returns false on a (near-)singular
/// pivot; A and b are consumed.
inline bool solve_inplace(Mat A, Vec b, Vec& x) {
  const int n = A.rows;
  double scale = max_abs(A);
  if (scale == 0.0) return false;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > std::abs(A(p, k))) p = i;
    if (std::abs(A(p, k)) < 1e-14 * scale) return false;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(A(p, j), A(k, j));
      std::swap(b[static_cast<std::size_t>(p)], b[static_cast<std::size_t>(k)]);
    }
    for (int i = k + 1; i < n; ++i) {
      double f = A(i, k) / A(k, k);
      A(i, k) = 0.0;
      for (int j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
      b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(k)];
    }
  }
  x.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = s / A(i, i);
  }
  return true;
}

/// Unit null vector of a numerically rank-deficient square matrix, by
/// Gaussian elimination with full pivoting. If the matrix looks full-rank,
/// the smallest pivot's column is treated as the null direction; defective
/// (Jordan) eigenvalues are handled exactly this way.
inline Vec nullspace_vector(Mat M, double rel_tol = 1e-10) {
  const int n = M.rows;
  const double scale = max_abs(M);
  if (scale == 0.0) return unit(n, 0);

  std::vector<int> pivot_row, pivot_col;
  std::vector<bool> row_used(static_cast<std::size_t>(n), false);
  std::vector<bool> col_used(static_cast<std::size_t>(n), false);
  for (int step = 0; step < n; ++step) {
    double best = 0.0;
    int br = -1, bc = -1;
    for (int r = 0; r < n; ++r) {
      if (row_used[static_cast<std::size_t>(r)]) continue;
      for (int c = 0; c < n; ++c) {
        if (col_used[static_cast<std::size_t>(c)]) continue;
        if (std::abs(M(r, c)) > best) {
          best = std::abs(M(r, c));
          br = r;
          bc = c;
        }
      }
    }
    if (best <= rel_tol * scale) break;
    row_used[static_cast<std::size_t>(br)] = true;
    col_used[static_cast<std::size_t>(bc)] = true;
    pivot_row.push_back(br);
    pivot_col.push_back(bc);
    for (int r = 0; r < n; ++r) {
      if (row_used[static_cast<std::size_t>(r)]) continue;
      double f = M(r, bc) / M(br, bc);
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) M(r, c) -= f * M(br, c);
      M(r, bc) = 0.0;
    }
  }
  if (static_cast<int>(pivot_col.size()) == n) {
    // Numerically full rank: release the last (smallest) pivot.
    col_used[static_cast<std::size_t>(pivot_col.back())] = false;
    pivot_col.pop_back();
    pivot_row.pop_back();
  }

  Vec v(static_cast<std::size_t>(n), 0.0);
  for (int c = 0; c < n; ++c)
    if (!col_used[static_cast<std::size_t>(c)]) {
      v[static_cast<std::size_t>(c)] = 1.0;
      break;  // one free direction is enough
    }
  for (int k = static_cast<int>(pivot_col.size()) - 1; k >= 0; --k) {
    int r = pivot_row[static_cast<std::size_t>(k)];
    int c = pivot_col[static_cast<std::size_t>(k)];
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != c) s += M(r, j) * v[static_cast<std::size_t>(j)];
    v[static_cast<std::size_t>(c)] = -s / M(r, c);
  }
  return normalized(v);
}

} // namespace lp
