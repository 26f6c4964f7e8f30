#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace folia {

using std::atan;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
using std::tanh;

// Directions a dual scalar can carry at once; bounds the chart dimension.
inline constexpr int kMaxDualDirs = 4;

inline double scalar_value(double x) { return x; }

// Forward-mode dual scalar: value plus derivatives along up to kMaxDualDirs
// seeded directions. Nesting Dual<Dual<double>> propagates second partials,
// one more level gives third partials; the mixed second partials come out
// symmetric to rounding because the chain rule is applied exactly.
template <class T>
class Dual {
 public:
  Dual() = default;
  Dual(const T& v) : val_(v) {}
  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  Dual(double c) : val_(c) {}

  int dirs() const { return nd_; }
  void set_dirs(int n) {
    if (n < 0 || n > kMaxDualDirs) throw std::length_error("Dual: direction count");
    for (int i = nd_; i < n; ++i) d_[i] = T{};
    nd_ = n;
  }

  const T& value() const { return val_; }
  T& value() { return val_; }

  const T& deriv(int i) const { return i < nd_ ? d_[i] : zero(); }
  T& deriv_mut(int i) {
    if (i >= nd_) set_dirs(i + 1);
    return d_[i];
  }

  Dual& operator+=(const Dual& o) {
    val_ += o.val_;
    merge(o);
    for (int i = 0; i < o.nd_; ++i) d_[i] += o.d_[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    val_ -= o.val_;
    merge(o);
    for (int i = 0; i < o.nd_; ++i) d_[i] -= o.d_[i];
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator-(const Dual& a) {
    Dual r(a);
    r.val_ = -r.val_;
    for (int i = 0; i < r.nd_; ++i) r.d_[i] = -r.d_[i];
    return r;
  }

  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.val_ * b.val_);
    r.nd_ = a.nd_ > b.nd_ ? a.nd_ : b.nd_;
    for (int i = 0; i < r.nd_; ++i)
      r.d_[i] = a.deriv(i) * b.val_ + a.val_ * b.deriv(i);
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    Dual r(a.val_ / b.val_);
    r.nd_ = a.nd_ > b.nd_ ? a.nd_ : b.nd_;
    for (int i = 0; i < r.nd_; ++i)
      r.d_[i] = (a.deriv(i) - r.val_ * b.deriv(i)) / b.val_;
    return r;
  }

  friend Dual operator+(Dual a, double c) { a.val_ += c; return a; }
  friend Dual operator+(double c, Dual a) { a.val_ += c; return a; }
  friend Dual operator-(Dual a, double c) { a.val_ -= c; return a; }
  friend Dual operator-(double c, const Dual& a) { return Dual(c) - a; }
  friend Dual operator*(Dual a, double c) {
    a.val_ *= c;
    for (int i = 0; i < a.nd_; ++i) a.d_[i] *= c;
    return a;
  }
  friend Dual operator*(double c, Dual a) { return a * c; }
  friend Dual operator/(Dual a, double c) { return a * (1.0 / c); }
  friend Dual operator/(double c, const Dual& a) { return Dual(c) / a; }

  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }
  Dual& operator*=(double c) { return *this = *this * c; }
  Dual& operator/=(double c) { return *this = *this * (1.0 / c); }

  // f(value) with derivative factor fp applied by the chain rule.
  Dual chain(const T& f, const T& fp) const {
    Dual r(f);
    r.nd_ = nd_;
    for (int i = 0; i < nd_; ++i) r.d_[i] = fp * d_[i];
    return r;
  }

 private:
  static const T& zero() {
    static const T z{};
    return z;
  }
  void merge(const Dual& o) {
    if (o.nd_ > nd_) set_dirs(o.nd_);
  }

  T val_{};
  std::array<T, kMaxDualDirs> d_{};
  int nd_ = 0;
};

template <class T>
double scalar_value(const Dual<T>& x) {
  return scalar_value(x.value());
}

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T f = sqrt(x.value());
  return x.chain(f, 0.5 / f);
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
  T f = exp(x.value());
  return x.chain(f, f);
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  return x.chain(log(x.value()), 1.0 / x.value());
}
template <class T>
Dual<T> sin(const Dual<T>& x) {
  return x.chain(sin(x.value()), cos(x.value()));
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  return x.chain(cos(x.value()), -sin(x.value()));
}
template <class T>
Dual<T> tan(const Dual<T>& x) {
  T t = tan(x.value());
  return x.chain(t, 1.0 + t * t);
}
template <class T>
Dual<T> atan(const Dual<T>& x) {
  return x.chain(atan(x.value()), 1.0 / (1.0 + x.value() * x.value()));
}
template <class T>
Dual<T> tanh(const Dual<T>& x) {
  T t = tanh(x.value());
  return x.chain(t, 1.0 - t * t);
}
template <class T>
Dual<T> sinh(const Dual<T>& x) {
  return x.chain(sinh(x.value()), cosh(x.value()));
}
template <class T>
Dual<T> cosh(const Dual<T>& x) {
  return x.chain(cosh(x.value()), sinh(x.value()));
}

template <class S>
S powi(S x, int k) {
  S r(1.0);
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

// Lift coordinates to dual scalars seeded with one unit direction per axis.
template <class S>
std::vector<Dual<S>> seed_directions(std::span<const S> x) {
  const int d = static_cast<int>(x.size());
  if (d > kMaxDualDirs) throw std::length_error("seed_directions: too many axes");
  std::vector<Dual<S>> out(d);
  for (int i = 0; i < d; ++i) {
    out[i] = Dual<S>(x[i]);
    out[i].set_dirs(d);
    out[i].deriv_mut(i) = S(1.0);
  }
  return out;
}

// Lift coordinates with a single seeded direction (directional derivative).
template <class S>
std::vector<Dual<S>> seed_one_direction(std::span<const S> x,
                                        std::span<const double> dir) {
  std::vector<Dual<S>> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    out[i] = Dual<S>(x[i]);
    out[i].set_dirs(1);
    out[i].deriv_mut(0) = S(dir[i]);
  }
  return out;
}

}  // namespace folia
