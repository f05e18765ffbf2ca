#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace superad {

using cplx = std::complex<double>;

// Components of a traceless Hermitian operator X sx + Y sy + Z sz.
// Units: hbar = 1, frequencies in rad/us, time in us.
struct CartesianTriple {
    double x = 0.0, y = 0.0, z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double transverse() const { return std::sqrt(x * x + y * y); }

    friend CartesianTriple operator+(const CartesianTriple& a, const CartesianTriple& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend CartesianTriple operator-(const CartesianTriple& a, const CartesianTriple& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend CartesianTriple operator*(double s, const CartesianTriple& a) {
        return {s * a.x, s * a.y, s * a.z};
    }
};

// theta in [0,pi], phi in [0,2pi). gauge_degenerate marks samples where the
// azimuth (or the whole direction) is undefined and a convention was applied.
struct SphericalTriple {
    double theta = 0.0;
    double phi = 0.0;
    double r = 0.0;
    bool gauge_degenerate = false;
};

// Two complex amplitudes in the bare basis {|1>, |2>}.
struct Spinor {
    cplx c1{0.0, 0.0}, c2{0.0, 0.0};

    double norm() const { return std::sqrt(std::norm(c1) + std::norm(c2)); }
    friend Spinor operator+(const Spinor& a, const Spinor& b) { return {a.c1 + b.c1, a.c2 + b.c2}; }
    friend Spinor operator-(const Spinor& a, const Spinor& b) { return {a.c1 - b.c1, a.c2 - b.c2}; }
    friend Spinor operator*(const cplx& s, const Spinor& a) { return {s * a.c1, s * a.c2}; }
};

inline cplx inner(const Spinor& a, const Spinor& b) {
    return std::conj(a.c1) * b.c1 + std::conj(a.c2) * b.c2;
}

// Dense complex 2x2 matrix, row major.
class Matrix2 {
public:
    Matrix2() = default;
    Matrix2(cplx m00, cplx m01, cplx m10, cplx m11) : m_{m00, m01, m10, m11} {}

    static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Matrix2 from_columns(const Spinor& a, const Spinor& b) {
        return {a.c1, b.c1, a.c2, b.c2};
    }

    cplx operator()(int r, int c) const { return m_[static_cast<std::size_t>(2 * r + c)]; }
    cplx& operator()(int r, int c) { return m_[static_cast<std::size_t>(2 * r + c)]; }

    Matrix2 adjoint() const {
        return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
    }

    friend Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
        return {a.m_[0] * b.m_[0] + a.m_[1] * b.m_[2], a.m_[0] * b.m_[1] + a.m_[1] * b.m_[3],
                a.m_[2] * b.m_[0] + a.m_[3] * b.m_[2], a.m_[2] * b.m_[1] + a.m_[3] * b.m_[3]};
    }
    friend Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
        return {a.m_[0] + b.m_[0], a.m_[1] + b.m_[1], a.m_[2] + b.m_[2], a.m_[3] + b.m_[3]};
    }
    friend Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
        return {a.m_[0] - b.m_[0], a.m_[1] - b.m_[1], a.m_[2] - b.m_[2], a.m_[3] - b.m_[3]};
    }
    friend Matrix2 operator*(const cplx& s, const Matrix2& a) {
        return {s * a.m_[0], s * a.m_[1], s * a.m_[2], s * a.m_[3]};
    }
    friend Spinor operator*(const Matrix2& a, const Spinor& v) {
        return {a.m_[0] * v.c1 + a.m_[1] * v.c2, a.m_[2] * v.c1 + a.m_[3] * v.c2};
    }

    // Largest singular value.
    double operator_norm() const;
    double frobenius_norm() const;

private:
    std::array<cplx, 4> m_{};
};

// [[Z, X-iY], [X+iY, -Z]]
Matrix2 compose(const CartesianTriple& c);

// Inverse of compose for traceless Hermitian input (real parts taken).
CartesianTriple decompose(const Matrix2& m);

// Conventions at degenerate input: transverse part zero keeps phi from
// prev_phi (0 by default); r = 0 maps to theta = pi. Both are flagged.
SphericalTriple to_spherical(const CartesianTriple& c, double prev_phi = 0.0);

CartesianTriple to_cartesian(const SphericalTriple& s);

struct EigenSystem {
    Spinor state1, state2; // |1~> (E = -r) and |2~> (E = +r)
    double e1 = 0.0, e2 = 0.0;
};

// Parallel-transported eigenvectors of compose(s) with gauge phase eps.
EigenSystem eigensystem(const SphericalTriple& s, double eps_phase);
EigenSystem eigensystem(double theta, double phi, double r, double eps_phase);

// Unitary whose columns are the two eigensystem states in the bare basis.
Matrix2 frame_rotation(const SphericalTriple& s, double eps_phase);
Matrix2 frame_rotation(double theta, double phi, double eps_phase);

} // namespace superad
