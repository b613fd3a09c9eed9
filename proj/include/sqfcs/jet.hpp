// jet.hpp — Truncated power-series ("jet") arithmetic in one variable.
//
// A Jet of order K stores coefficients (c_0 ... c_K) of sum_k c_k t^k. All
// operations truncate at K, so propagating the seed (x0 + 1*t) through an
// expression yields its derivatives at x0: f^(n) = n! * coeff[n]. The order
// is a runtime value and must match across operands of a binary operation.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sqfcs {

class Jet {
  public:
    Jet() : c_(1, 0.0) {}
    explicit Jet(std::size_t order, double constant = 0.0)
        : c_(order + 1, 0.0) {
        c_[0] = constant;
    }

    /// Seed x0 + 1*t for differentiation at x0.
    static Jet variable(std::size_t order, double x0 = 0.0) {
        Jet j(order, x0);
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    std::size_t order() const { return c_.size() - 1; }
    double operator[](std::size_t k) const { return c_[k]; }
    double& operator[](std::size_t k) { return c_[k]; }
    double value() const { return c_[0]; }
    const std::vector<double>& coeffs() const { return c_; }

    /// n-th derivative at the expansion point, n! * c_n.
    double derivative(std::size_t n) const {
        check_index(n);
        double fact = 1.0;
        for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<double>(k);
        return fact * c_[n];
    }

    Jet operator-() const {
        Jet r = *this;
        for (double& v : r.c_) v = -v;
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        check_orders(a, b);
        Jet r = a;
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += b.c_[k];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        check_orders(a, b);
        Jet r = a;
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] -= b.c_[k];
        return r;
    }
    friend Jet operator+(const Jet& a, double s) {
        Jet r = a;
        r.c_[0] += s;
        return r;
    }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { return a + (-s); }
    friend Jet operator-(double s, const Jet& a) { return (-a) + s; }

    /// Cauchy product truncated at the common order.
    friend Jet operator*(const Jet& a, const Jet& b) {
        check_orders(a, b);
        const std::size_t K = a.order();
        Jet r(K);
        for (std::size_t n = 0; n <= K; ++n) {
            double acc = 0.0;
            for (std::size_t k = 0; k <= n; ++k) acc += a.c_[k] * b.c_[n - k];
            r.c_[n] = acc;
        }
        return r;
    }
    friend Jet operator*(const Jet& a, double s) {
        Jet r = a;
        for (double& v : r.c_) v *= s;
        return r;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }

    /// Division b = f/g via b_n = (f_n - sum_{k=1..n} g_k b_{n-k}) / g_0.
    friend Jet operator/(const Jet& f, const Jet& g) {
        check_orders(f, g);
        if (g.c_[0] == 0.0)
            throw std::domain_error("Jet division: zero constant term");
        const std::size_t K = f.order();
        Jet b(K);
        b.c_[0] = f.c_[0] / g.c_[0];
        for (std::size_t n = 1; n <= K; ++n) {
            double acc = f.c_[n];
            for (std::size_t k = 1; k <= n; ++k) acc -= g.c_[k] * b.c_[n - k];
            b.c_[n] = acc / g.c_[0];
        }
        return b;
    }
    friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }

  private:
    static void check_orders(const Jet& a, const Jet& b) {
        if (a.order() != b.order())
            throw std::invalid_argument("Jet: order mismatch");
    }
    void check_index(std::size_t n) const {
        if (n >= c_.size())
            throw std::out_of_range("Jet: coefficient index beyond order");
    }

    std::vector<double> c_;
};

/// exp via the recurrence (e^a)' = a' e^a:
///   b_0 = e^{a_0},  b_n = (1/n) sum_{k=1..n} k a_k b_{n-k}.
inline Jet exp(const Jet& a) {
    const std::size_t K = a.order();
    Jet b(K);
    b[0] = std::exp(a[0]);
    for (std::size_t n = 1; n <= K; ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k)
            acc += static_cast<double>(k) * a[k] * b[n - k];
        b[n] = acc / static_cast<double>(n);
    }
    return b;
}

/// sqrt via b^2 = a:
///   b_0 = sqrt(a_0),  b_n = (a_n - sum_{k=1..n-1} b_k b_{n-k}) / (2 b_0).
/// Requires a_0 > 0.
inline Jet sqrt(const Jet& a) {
    if (!(a[0] > 0.0))
        throw std::domain_error("Jet sqrt: constant term must be > 0");
    const std::size_t K = a.order();
    Jet b(K);
    b[0] = std::sqrt(a[0]);
    for (std::size_t n = 1; n <= K; ++n) {
        double acc = a[n];
        for (std::size_t k = 1; k < n; ++k) acc -= b[k] * b[n - k];
        b[n] = acc / (2.0 * b[0]);
    }
    return b;
}

/// e^a - 1 with an exact zero constant term when a_0 == 0.
inline Jet expm1(const Jet& a) {
    Jet b = exp(a);
    if (a[0] == 0.0)
        b[0] = 0.0;
    else
        b[0] = std::expm1(a[0]);
    return b;
}

}  // namespace sqfcs
