#include "superad/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace superad {

namespace {

Spinor schrodinger_rhs(const CartesianTriple& h, const Spinor& s) {
    const cplx i{0.0, 1.0};
    // -i H psi with H = [[Z, X-iY],[X+iY, -Z]]
    const cplx off{h.x, -h.y};
    return {-i * (h.z * s.c1 + off * s.c2), -i * (std::conj(off) * s.c1 - h.z * s.c2)};
}

// Cubic interpolation of the Hamiltonian at the middle of interval i.
CartesianTriple midpoint(const std::vector<CartesianTriple>& h, int i) {
    const int n = static_cast<int>(h.size());
    auto lc = [&](int a, int b, int c, int d, double wa, double wb, double wc, double wd) {
        return wa * h[static_cast<std::size_t>(a)] + wb * h[static_cast<std::size_t>(b)] +
               wc * h[static_cast<std::size_t>(c)] + wd * h[static_cast<std::size_t>(d)];
    };
    if (n < 4) return 0.5 * (h[static_cast<std::size_t>(i)] + h[static_cast<std::size_t>(i + 1)]);
    if (i == 0) return lc(0, 1, 2, 3, 5.0 / 16, 15.0 / 16, -5.0 / 16, 1.0 / 16);
    if (i >= n - 2) return lc(n - 4, n - 3, n - 2, n - 1, 1.0 / 16, -5.0 / 16, 15.0 / 16, 5.0 / 16);
    return lc(i - 1, i, i + 1, i + 2, -1.0 / 16, 9.0 / 16, 9.0 / 16, -1.0 / 16);
}

} // namespace

StateTrajectory propagate(const std::vector<CartesianTriple>& h, TimeGrid grid, const Spinor& psi0) {
    if (static_cast<int>(h.size()) != grid.n)
        throw std::invalid_argument("propagate: sample count does not match grid");
    if (std::abs(psi0.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("propagate: initial state is not normalized");

    StateTrajectory traj;
    traj.grid = grid;
    traj.psi.resize(h.size());
    traj.psi[0] = psi0;
    const double dt = grid.dt();

    Spinor s = psi0;
    for (int i = 0; i + 1 < grid.n; ++i) {
        const CartesianTriple& ha = h[static_cast<std::size_t>(i)];
        const CartesianTriple hm = midpoint(h, i);
        const CartesianTriple& hb = h[static_cast<std::size_t>(i + 1)];

        const Spinor k1 = schrodinger_rhs(ha, s);
        const Spinor k2 = schrodinger_rhs(hm, s + cplx{0.5 * dt} * k1);
        const Spinor k3 = schrodinger_rhs(hm, s + cplx{0.5 * dt} * k2);
        const Spinor k4 = schrodinger_rhs(hb, s + cplx{dt} * k3);
        s = s + cplx{dt / 6.0} * (k1 + cplx{2.0} * k2 + cplx{2.0} * k3 + k4);

        traj.psi[static_cast<std::size_t>(i + 1)] = s;
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(s.norm() - 1.0));
    }
    return traj;
}

PopulationTrace populations(const StateTrajectory& traj) {
    PopulationTrace tr{SampledFunction(traj.grid), SampledFunction(traj.grid)};
    for (int i = 0; i < traj.grid.n; ++i) {
        tr.p1[i] = std::norm(traj.at(i).c1);
        tr.p2[i] = std::norm(traj.at(i).c2);
    }
    return tr;
}

PopulationTrace adiabatic_overlap(const StateTrajectory& traj, const FrameTrajectory& frame0) {
    if (!(traj.grid == frame0.grid))
        throw std::invalid_argument("adiabatic_overlap: grids differ");
    PopulationTrace tr{SampledFunction(traj.grid), SampledFunction(traj.grid)};
    for (int i = 0; i < traj.grid.n; ++i) {
        const auto ix = static_cast<std::size_t>(i);
        const EigenSystem es = eigensystem(frame0.theta[ix].value(), frame0.phi[ix].value(),
                                           frame0.r[ix].value(), frame0.eps[ix].value());
        tr.p1[i] = std::norm(inner(es.state1, traj.at(i)));
        tr.p2[i] = std::norm(inner(es.state2, traj.at(i)));
    }
    return tr;
}

StateTrajectory superadiabatic_approximation(const IterationStack& stack, int j, const Spinor& psi0) {
    if (j < 1 || j > stack.depth() + 1)
        throw std::out_of_range("superadiabatic_approximation: order outside stack depth");
    const std::vector<Matrix2>& b = stack.frame_product(j);
    const std::vector<double>& phase = stack.radial_integral(j - 1);

    StateTrajectory traj;
    traj.grid = stack.grid();
    traj.psi.resize(b.size());
    const Spinor seed = b.front().adjoint() * psi0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        // U_j = diag(e^{+i int R}, e^{-i int R}) (E_1 = -R, E_2 = +R)
        const cplx up = std::polar(1.0, phase[i]);
        const Spinor u{up * seed.c1, std::conj(up) * seed.c2};
        traj.psi[i] = b[i] * u;
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(traj.psi[i].norm() - 1.0));
    }
    return traj;
}

} // namespace superad
