#pragma once

// Exact elements of the cyclotomic field Q(w), w = exp(2*pi*i/n).
//
// Values are stored in the power basis 1, w, ..., w^(phi(n)-1), i.e. reduced
// modulo the n-th cyclotomic polynomial, which makes the representation
// canonical: two elements are equal iff their coefficient vectors are.
// Order 1 (and 2) is the field of rationals.

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mdsg/rational.hpp"

namespace mdsg {

namespace detail {

using IntPoly = std::vector<long long>;  // low degree first

inline IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
  // den is monic
  const std::size_t dn = den.size() - 1;
  if (num.size() <= dn) return {0};
  IntPoly quotient(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long long c = num[i];
    quotient[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quotient;
}

inline IntPoly compute_cyclotomic_polynomial(int n, std::map<int, IntPoly>& cache) {
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  IntPoly poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    poly = poly_divide_exact(poly, compute_cyclotomic_polynomial(d, cache));
  }
  cache.emplace(n, poly);
  return poly;
}

/// Monic integer coefficients of the n-th cyclotomic polynomial (cached).
inline const IntPoly& cyclotomic_polynomial(int n) {
  static std::mutex mutex;
  static std::map<int, IntPoly> cache;
  std::lock_guard lock(mutex);
  compute_cyclotomic_polynomial(n, cache);
  return cache.at(n);  // std::map references are stable
}

}  // namespace detail

class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coeffs_{Rational(0)} {}
  Cyclotomic(Rational value) : order_(1), coeffs_{value} {}  // NOLINT(implicit)
  Cyclotomic(long long value) : Cyclotomic(Rational(value)) {}  // NOLINT(implicit)

  /// w^exponent in Q(w), w = exp(2*pi*i/order).
  static Cyclotomic root_of_unity(int order, long long exponent) {
    if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
    std::vector<Rational> raw(static_cast<std::size_t>(order), Rational(0));
    const long long e = ((exponent % order) + order) % order;
    raw[static_cast<std::size_t>(e)] = Rational(1);
    return from_powers(order, std::move(raw));
  }

  /// Builds sum_j powers[j] * w^j for arbitrary length, reducing exponents mod order.
  static Cyclotomic from_powers(int order, std::vector<Rational> powers) {
    if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
    std::vector<Rational> folded(static_cast<std::size_t>(order), Rational(0));
    for (std::size_t j = 0; j < powers.size(); ++j) {
      if (!powers[j].is_zero()) folded[j % static_cast<std::size_t>(order)] += powers[j];
    }
    Cyclotomic c;
    c.order_ = order;
    c.coeffs_ = reduce(order, std::move(folded));
    return c;
  }

  int order() const { return order_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_rational() const {
    for (std::size_t j = 1; j < coeffs_.size(); ++j)
      if (!coeffs_[j].is_zero()) return false;
    return true;
  }
  bool is_zero() const { return is_rational() && coeffs_[0].is_zero(); }

  Rational rational() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return coeffs_[0];
  }

  std::complex<double> to_complex() const {
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (coeffs_[j].is_zero()) continue;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / order_;
      sum += coeffs_[j].to_double() * std::polar(1.0, angle);
    }
    return sum;
  }
  double real_value() const { return to_complex().real(); }

  Cyclotomic conj() const {
    if (is_rational()) return *this;
    std::vector<Rational> raw(static_cast<std::size_t>(order_), Rational(0));
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
      raw[(static_cast<std::size_t>(order_) - j) % static_cast<std::size_t>(order_)] = coeffs_[j];
    return from_powers(order_, std::move(raw));
  }

  /// "3/2" for rationals, otherwise a polynomial in w such as "1/2 + -1*w^2".
  std::string to_string() const {
    if (is_rational()) return coeffs_[0].to_string();
    std::string out;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (coeffs_[j].is_zero()) continue;
      if (!out.empty()) out += " + ";
      if (j == 0) {
        out += coeffs_[j].to_string();
      } else {
        out += coeffs_[j].to_string() + "*w^" + std::to_string(j);
      }
    }
    return out;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) {
      Cyclotomic r = a;
      for (std::size_t j = 0; j < r.coeffs_.size(); ++j) r.coeffs_[j] += b.coeffs_[j];
      return r;
    }
    if (b.order_ == 1) return a + b.promote(a.order_);
    if (a.order_ == 1) return a.promote(b.order_) + b;
    const int l = std::lcm(a.order_, b.order_);
    return a.promote(l) + b.promote(l);
  }
  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == 1 && b.order_ == 1) return Cyclotomic(a.coeffs_[0] * b.coeffs_[0]);
    if (b.order_ == 1 || a.order_ == 1) {
      const Cyclotomic& poly = b.order_ == 1 ? a : b;
      const Rational& scale = b.order_ == 1 ? b.coeffs_[0] : a.coeffs_[0];
      Cyclotomic r = poly;
      for (auto& c : r.coeffs_) c *= scale;
      return r;
    }
    if (a.order_ != b.order_) {
      const int l = std::lcm(a.order_, b.order_);
      return a.promote(l) * b.promote(l);
    }
    std::vector<Rational> raw(a.coeffs_.size() + b.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (!b.coeffs_[j].is_zero()) raw[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return from_powers(a.order_, std::move(raw));
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Rational& b) {
    Cyclotomic r = a;
    for (auto& c : r.coeffs_) c /= b;
    return r;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
    if (a.is_rational() && b.is_rational()) return a.coeffs_[0] == b.coeffs_[0];
    const int l = std::lcm(a.order_, b.order_);
    return a.promote(l).coeffs_ == b.promote(l).coeffs_;
  }

 private:
  // Re-express in Q(w_target), where order_ divides target.
  Cyclotomic promote(int target) const {
    if (target == order_) return *this;
    if (target % order_ != 0) throw std::logic_error("cyclotomic promotion to non-multiple order");
    const std::size_t step = static_cast<std::size_t>(target / order_);
    std::vector<Rational> raw(static_cast<std::size_t>(target), Rational(0));
    for (std::size_t j = 0; j < coeffs_.size(); ++j) raw[j * step] = coeffs_[j];
    return from_powers(target, std::move(raw));
  }

  static std::vector<Rational> reduce(int order, std::vector<Rational> poly) {
    const detail::IntPoly& phi = detail::cyclotomic_polynomial(order);
    const std::size_t degree = phi.size() - 1;
    // Phi_n divides 1 + x^m + ... + x^((q-1)m), m = n/q, for the smallest prime q | n.
    // That divisor is sparse, so most of the degree is removed cheaply first.
    int q = 2;
    while (q < order && order % q != 0) ++q;
    if (q < order) {
      const auto m = static_cast<std::size_t>(order / q);
      const std::size_t top = m * static_cast<std::size_t>(q - 1);
      for (std::size_t i = poly.size(); i-- > top;) {
        const Rational c = poly[i];
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(q); ++j) poly[i - top + j * m] -= c;
        poly[i] = Rational(0);
      }
      if (poly.size() > top) poly.resize(top);
    }
    std::vector<std::pair<std::size_t, long long>> terms;
    for (std::size_t j = 0; j < degree; ++j)
      if (phi[j] != 0) terms.emplace_back(j, phi[j]);
    for (std::size_t i = poly.size(); i-- > degree;) {
      const Rational c = poly[i];
      if (c.is_zero()) continue;
      const std::size_t base = i - degree;
      for (const auto& [j, p] : terms) {
        if (p == 1) poly[base + j] -= c;
        else if (p == -1) poly[base + j] += c;
        else poly[base + j] -= c * Rational(p);
      }
    }
    poly.resize(degree, Rational(0));
    return poly;
  }

  int order_;
  std::vector<Rational> coeffs_;
};

}  // namespace mdsg
