#include "superad/pauli.hpp"

namespace superad {

double Matrix2::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : m_) s += std::norm(v);
    return std::sqrt(s);
}

double Matrix2::operator_norm() const {
    // Singular values from the 2x2 Gram matrix in closed form.
    const Matrix2 g = adjoint() * (*this);
    const double tr = std::real(g(0, 0) + g(1, 1));
    const double det = std::real(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0));
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    return std::sqrt(std::max(0.0, 0.5 * (tr + disc)));
}

Matrix2 compose(const CartesianTriple& c) {
    return {cplx{c.z, 0.0}, cplx{c.x, -c.y}, cplx{c.x, c.y}, cplx{-c.z, 0.0}};
}

CartesianTriple decompose(const Matrix2& m) {
    return {std::real(m(1, 0)), std::imag(m(1, 0)), std::real(m(0, 0))};
}

SphericalTriple to_spherical(const CartesianTriple& c, double prev_phi) {
    SphericalTriple s;
    s.r = c.norm();
    const double p = c.transverse();
    if (s.r == 0.0) {
        s.theta = M_PI; // matches the Theta_{j>0}(tf) = pi boundary convention
        s.phi = prev_phi;
        s.gauge_degenerate = true;
        return s;
    }
    s.theta = std::atan2(p, c.z);
    if (p == 0.0) {
        s.phi = prev_phi;
        s.gauge_degenerate = true;
    } else {
        s.phi = std::atan2(c.y, c.x);
        if (s.phi < 0.0) s.phi += 2.0 * M_PI;
    }
    return s;
}

CartesianTriple to_cartesian(const SphericalTriple& s) {
    return {s.r * std::sin(s.theta) * std::cos(s.phi),
            s.r * std::sin(s.theta) * std::sin(s.phi),
            s.r * std::cos(s.theta)};
}

EigenSystem eigensystem(double theta, double phi, double r, double eps_phase) {
    const double sh = std::sin(0.5 * theta);
    const double ch = std::cos(0.5 * theta);
    const cplx em = std::polar(1.0, -0.5 * phi);
    const cplx ep = std::polar(1.0, 0.5 * phi);
    const cplx ge = std::polar(1.0, eps_phase);
    EigenSystem es;
    es.state1 = {ge * em * sh, -ge * ep * ch};
    es.state2 = {std::conj(ge) * em * ch, std::conj(ge) * ep * sh};
    es.e1 = -r;
    es.e2 = r;
    return es;
}

EigenSystem eigensystem(const SphericalTriple& s, double eps_phase) {
    return eigensystem(s.theta, s.phi, s.r, eps_phase);
}

Matrix2 frame_rotation(double theta, double phi, double eps_phase) {
    const EigenSystem es = eigensystem(theta, phi, 1.0, eps_phase);
    return Matrix2::from_columns(es.state1, es.state2);
}

Matrix2 frame_rotation(const SphericalTriple& s, double eps_phase) {
    return frame_rotation(s.theta, s.phi, eps_phase);
}

} // namespace superad
