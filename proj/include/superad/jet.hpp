#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace superad {

// Truncated Taylor expansion of a scalar signal about one time sample.
// Coefficient k holds f^(k)/k!, so arithmetic on jets propagates exact
// derivatives without nested finite differencing.
class Jet {
public:
    Jet() = default;
    explicit Jet(int order) : c_(static_cast<std::size_t>(order) + 1, 0.0) {}

    static Jet constant(double v, int order) {
        Jet j(order);
        j.c_[0] = v;
        return j;
    }

    // Value v with unit slope: represents the local time variable itself.
    static Jet variable(double v, int order) {
        Jet j(order);
        j.c_[0] = v;
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double value() const { return c_[0]; }

    double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

    // k-th derivative value (undoes the factorial scaling).
    double deriv(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return c_[static_cast<std::size_t>(k)] * f;
    }

    Jet truncated(int order) const {
        assert(order <= this->order());
        Jet j(order);
        for (int k = 0; k <= order; ++k) j.c_[static_cast<std::size_t>(k)] = (*this)[k];
        return j;
    }

    bool is_zero(double tol = 0.0) const {
        for (double v : c_)
            if (std::abs(v) > tol) return false;
        return true;
    }

private:
    std::vector<double> c_{0.0};
};

namespace detail {
inline int common_order(const Jet& a, const Jet& b) {
    return a.order() < b.order() ? a.order() : b.order();
}
} // namespace detail

inline Jet operator+(const Jet& a, const Jet& b) {
    const int m = detail::common_order(a, b);
    Jet r(m);
    for (int k = 0; k <= m; ++k) r[k] = a[k] + b[k];
    return r;
}

inline Jet operator-(const Jet& a, const Jet& b) {
    const int m = detail::common_order(a, b);
    Jet r(m);
    for (int k = 0; k <= m; ++k) r[k] = a[k] - b[k];
    return r;
}

inline Jet operator-(const Jet& a) {
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) r[k] = -a[k];
    return r;
}

inline Jet operator*(const Jet& a, const Jet& b) {
    const int m = detail::common_order(a, b);
    Jet r(m);
    for (int k = 0; k <= m; ++k) {
        double s = 0.0;
        for (int i = 0; i <= k; ++i) s += a[i] * b[k - i];
        r[k] = s;
    }
    return r;
}

inline Jet operator+(const Jet& a, double s) {
    Jet r = a;
    r[0] += s;
    return r;
}
inline Jet operator+(double s, const Jet& a) { return a + s; }
inline Jet operator-(const Jet& a, double s) { return a + (-s); }
inline Jet operator-(double s, const Jet& a) { return (-a) + s; }

inline Jet operator*(double s, const Jet& a) {
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) r[k] = s * a[k];
    return r;
}
inline Jet operator*(const Jet& a, double s) { return s * a; }

inline Jet operator/(const Jet& a, const Jet& b) {
    const int m = detail::common_order(a, b);
    if (b[0] == 0.0) throw std::domain_error("Jet division by zero-valued jet");
    Jet q(m);
    for (int k = 0; k <= m; ++k) {
        double s = a[k];
        for (int i = 0; i < k; ++i) s -= q[i] * b[k - i];
        q[k] = s / b[0];
    }
    return q;
}

inline Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }

inline Jet sqrt(const Jet& a) {
    if (a[0] <= 0.0) throw std::domain_error("Jet sqrt requires positive value");
    Jet s(a.order());
    s[0] = std::sqrt(a[0]);
    for (int k = 1; k <= a.order(); ++k) {
        double acc = a[k];
        for (int i = 1; i < k; ++i) acc -= s[i] * s[k - i];
        s[k] = acc / (2.0 * s[0]);
    }
    return s;
}

// sin and cos share the coupled recurrence, compute both at once.
inline void sin_cos(const Jet& a, Jet& s, Jet& c) {
    const int m = a.order();
    s = Jet(m);
    c = Jet(m);
    s[0] = std::sin(a[0]);
    c[0] = std::cos(a[0]);
    for (int k = 1; k <= m; ++k) {
        double ss = 0.0, cc = 0.0;
        for (int i = 1; i <= k; ++i) {
            ss += i * a[i] * c[k - i];
            cc += i * a[i] * s[k - i];
        }
        s[k] = ss / k;
        c[k] = -cc / k;
    }
    return;
}

inline Jet sin(const Jet& a) {
    Jet s, c;
    sin_cos(a, s, c);
    return s;
}

inline Jet cos(const Jet& a) {
    Jet s, c;
    sin_cos(a, s, c);
    return c;
}

// Drops one order: coefficient k of f' is (k+1) c_{k+1}.
inline Jet derivative(const Jet& a) {
    if (a.order() < 1) throw std::domain_error("Jet derivative of order-0 jet");
    Jet d(a.order() - 1);
    for (int k = 0; k < a.order(); ++k) d[k] = (k + 1) * a[k + 1];
    return d;
}

// Principal value in (-pi, pi]; higher coefficients come from the exact
// derivative d/dt atan2(y, x) = (x y' - y x') / (x^2 + y^2).
inline Jet atan2(const Jet& y, const Jet& x) {
    const int m = detail::common_order(y, x);
    Jet r(m);
    r[0] = std::atan2(y[0], x[0]);
    if (m >= 1) {
        const Jet xt = x.truncated(m - 1);
        const Jet yt = y.truncated(m - 1);
        const Jet num = xt * derivative(y.truncated(m)) - yt * derivative(x.truncated(m));
        const Jet den = xt * xt + yt * yt;
        const Jet d = num / den; // order m-1
        for (int k = 1; k <= m; ++k) r[k] = d[k - 1] / k;
    }
    return r;
}

// Re-expand about t0 + ds (exact for polynomials up to the jet order).
inline Jet recenter(const Jet& a, double ds) {
    const int m = a.order();
    Jet r(m);
    for (int k = m; k >= 0; --k) {
        // Horner in the shift: b_k = sum_j a_j C(j,k) ds^(j-k)
        double acc = 0.0;
        double binom = 1.0;
        double pw = 1.0;
        for (int j = k; j <= m; ++j) {
            acc += a[j] * binom * pw;
            binom = binom * (j + 1) / (j + 1 - k);
            pw *= ds;
        }
        r[k] = acc;
    }
    return r;
}

} // namespace superad
