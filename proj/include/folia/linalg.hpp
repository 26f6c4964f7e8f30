#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "folia/dual.hpp"
#include "folia/errors.hpp"

namespace folia {

// Dense square matrix over any dual-nestable scalar, row-major.
template <class S>
class SquareMat {
 public:
  SquareMat() : n_(0) {}
  explicit SquareMat(int n) : n_(n), a_(static_cast<size_t>(n) * n, S{}) {}

  int dim() const { return n_; }
  S& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const S& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * n_ + j];
  }

  static SquareMat identity(int n) {
    SquareMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1.0);
    return m;
  }

 private:
  int n_;
  std::vector<S> a_;
};

template <class S>
class Tensor3 {
 public:
  Tensor3() : n_(0) {}
  explicit Tensor3(int n)
      : n_(n), a_(static_cast<size_t>(n) * n * n, S{}) {}
  int dim() const { return n_; }
  S& operator()(int i, int j, int k) {
    return a_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
  }
  const S& operator()(int i, int j, int k) const {
    return a_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
  }

 private:
  int n_;
  std::vector<S> a_;
};

template <class S>
class Tensor4 {
 public:
  Tensor4() : n_(0) {}
  explicit Tensor4(int n)
      : n_(n), a_(static_cast<size_t>(n) * n * n * n, S{}) {}
  int dim() const { return n_; }
  S& operator()(int i, int j, int k, int l) {
    return a_[((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }
  const S& operator()(int i, int j, int k, int l) const {
    return a_[((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }

 private:
  int n_;
  std::vector<S> a_;
};

// Gauss-Jordan inverse with partial pivoting on |value|; works at every dual
// nesting level because comparisons only look at the scalar part.
template <class S>
SquareMat<S> invert(const SquareMat<S>& m, S* det_out = nullptr) {
  const int n = m.dim();
  SquareMat<S> a = m;
  SquareMat<S> inv = SquareMat<S>::identity(n);
  S det(1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(scalar_value(a(col, col)));
    for (int r = col + 1; r < n; ++r) {
      double cand = std::abs(scalar_value(a(r, col)));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best < 1e-14)
      raise(Errc::singular_metric, "matrix has no usable pivot");
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
      det = -det;
    }
    S p = a(col, col);
    det = det * p;
    for (int c = 0; c < n; ++c) {
      a(col, c) = a(col, c) / p;
      inv(col, c) = inv(col, c) / p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      S f = a(r, col);
      if (scalar_value(f) == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        a(r, c) = a(r, c) - f * a(col, c);
        inv(r, c) = inv(r, c) - f * inv(col, c);
      }
    }
  }
  if (det_out) *det_out = det;
  return inv;
}

// g(u, v) for a bilinear form given as a matrix.
template <class S>
S metric_dot(const SquareMat<S>& g, std::span<const S> u,
             std::span<const S> v) {
  S acc{};
  const int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += g(i, j) * u[i] * v[j];
  return acc;
}

// Strip one dual level: entrywise values.
template <class S>
SquareMat<S> values(const SquareMat<Dual<S>>& m) {
  SquareMat<S> out(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) out(i, j) = m(i, j).value();
  return out;
}

// Strip one dual level: entrywise derivative along direction k, as dM/dx^k.
template <class S>
Tensor3<S> grads(const SquareMat<Dual<S>>& m, int dirs) {
  Tensor3<S> out(m.dim());
  for (int k = 0; k < dirs; ++k)
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j) out(k, i, j) = m(i, j).deriv(k);
  return out;
}

// Eigenvalues of a symmetric matrix of plain doubles, ascending.
std::vector<double> sym_eigenvalues(const SquareMat<double>& m);

// (negative, zero, positive) inertia counts of a symmetric matrix, with a
// tolerance for deciding zero.
struct Inertia {
  int negative = 0;
  int zero = 0;
  int positive = 0;
};
Inertia sym_inertia(const SquareMat<double>& m, double tol = 1e-10);

}  // namespace folia
