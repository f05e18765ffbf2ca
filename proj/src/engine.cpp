#include "superad/engine.hpp"

#include <cmath>
#include <stdexcept>

namespace superad {

namespace {

constexpr double kPi = M_PI;

double wrap_2pi(double a) {
    double w = std::fmod(a, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
}

// Remove 2pi branch jumps from the stored a0 values of a jet sequence.
void unwrap_values(std::vector<Jet>& v) {
    double offset = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double raw = v[i][0];
        const double prev = v[i - 1][0];
        double d = raw + offset - prev;
        while (d > kPi) {
            offset -= 2.0 * kPi;
            d -= 2.0 * kPi;
        }
        while (d < -kPi) {
            offset += 2.0 * kPi;
            d += 2.0 * kPi;
        }
        v[i][0] = raw + offset;
    }
}

bool all_zero(const std::vector<Jet>& v, double tol) {
    for (const Jet& j : v)
        if (!j.is_zero(tol)) return false;
    return true;
}

SampledFunction values_of(const TimeGrid& g, const std::vector<Jet>& v, int k = 0) {
    SampledFunction f(g);
    for (int i = 0; i < g.n; ++i) f[i] = v[static_cast<std::size_t>(i)].deriv(k);
    return f;
}

} // namespace

SphericalTriple FrameTrajectory::spherical_at(int i) const {
    const auto ix = static_cast<std::size_t>(i);
    SphericalTriple s;
    s.r = r[ix].value();
    double th = wrap_2pi(theta[ix].value());
    double ph = phi[ix].value();
    if (th > kPi) {
        th = 2.0 * kPi - th;
        ph += kPi;
    }
    s.theta = th;
    s.phi = wrap_2pi(ph);
    s.gauge_degenerate = degenerate[ix];
    return s;
}

SampledFunction FrameTrajectory::theta_samples() const { return values_of(grid, theta); }
SampledFunction FrameTrajectory::phi_samples() const { return values_of(grid, phi); }
SampledFunction FrameTrajectory::eps_samples() const { return values_of(grid, eps); }
SampledFunction FrameTrajectory::r_samples() const { return values_of(grid, r); }
SampledFunction FrameTrajectory::theta_dot_samples() const { return values_of(grid, theta, 1); }
SampledFunction FrameTrajectory::phi_dot_samples() const { return values_of(grid, phi, 1); }

FrameTrajectory make_frame(int order_j, TimeGrid grid, std::vector<JetTriple> triples) {
    const int n = grid.n;
    if (static_cast<int>(triples.size()) != n)
        throw std::invalid_argument("make_frame: sample count does not match grid");
    const int m = triples.front().x.order();
    if (m < 1) throw std::invalid_argument("make_frame: jets must carry at least one derivative");

    FrameTrajectory fr;
    fr.order_j = order_j;
    fr.grid = grid;
    fr.x.reserve(triples.size());
    fr.y.reserve(triples.size());
    fr.z.reserve(triples.size());
    for (auto& t : triples) {
        fr.x.push_back(std::move(t.x));
        fr.y.push_back(std::move(t.y));
        fr.z.push_back(std::move(t.z));
    }
    fr.degenerate.assign(static_cast<std::size_t>(n), false);
    fr.r.resize(static_cast<std::size_t>(n));
    fr.theta.resize(static_cast<std::size_t>(n));
    fr.phi.resize(static_cast<std::size_t>(n));
    fr.eps.resize(static_cast<std::size_t>(n));

    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto ix = static_cast<std::size_t>(i);
        const CartesianTriple c{fr.x[ix].value(), fr.y[ix].value(), fr.z[ix].value()};
        scale = std::max(scale, c.norm());
    }
    const double ztol = 1e-12 * std::max(scale, 1e-300);

    const bool x_zero = all_zero(fr.x, ztol);
    const bool y_zero = all_zero(fr.y, ztol);

    auto radial = [&](std::size_t i) {
        const Jet r2 = fr.x[i] * fr.x[i] + fr.y[i] * fr.y[i] + fr.z[i] * fr.z[i];
        if (r2.value() <= ztol * ztol) {
            // r = 0 convention: theta = pi, flagged
            fr.degenerate[i] = true;
            return Jet(fr.x[i].order());
        }
        return sqrt(r2);
    };

    if (x_zero && y_zero) {
        // Purely longitudinal trajectory.
        for (int i = 0; i < n; ++i) {
            const auto ix = static_cast<std::size_t>(i);
            const double zv = fr.z[ix].value();
            fr.r[ix] = radial(ix);
            fr.phi[ix] = Jet(m);
            if (std::abs(zv) <= ztol) {
                fr.degenerate[ix] = true;
                fr.theta[ix] = Jet::constant(kPi, m);
            } else {
                fr.theta[ix] = Jet::constant(zv < 0.0 ? kPi : 0.0, m);
            }
        }
    } else if (x_zero || y_zero) {
        // Trajectory confined to one transverse axis: keep phi constant and
        // let a signed polar angle run smoothly through the poles.
        const std::vector<Jet>& w = x_zero ? fr.y : fr.x;
        double sign = 1.0, wmax = 0.0;
        for (const Jet& j : w)
            if (std::abs(j.value()) > wmax) {
                wmax = std::abs(j.value());
                sign = j.value() >= 0.0 ? 1.0 : -1.0;
            }
        double phi_c = x_zero ? 0.5 * kPi : 0.0;
        if (sign < 0.0) phi_c += kPi;
        for (int i = 0; i < n; ++i) {
            const auto ix = static_cast<std::size_t>(i);
            fr.r[ix] = radial(ix);
            fr.phi[ix] = Jet::constant(phi_c, m);
            if (std::abs(w[ix].value()) <= ztol) fr.degenerate[ix] = true;
            if (fr.degenerate[ix] && fr.r[ix].is_zero())
                fr.theta[ix] = Jet::constant(kPi, m);
            else
                fr.theta[ix] = atan2(sign * w[ix], fr.z[ix]);
        }
        unwrap_values(fr.theta);
    } else {
        // General trajectory; requires the transverse part to stay away from
        // zero except at flagged samples (phi carried forward there).
        double prev_phi = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto ix = static_cast<std::size_t>(i);
            fr.r[ix] = radial(ix);
            const Jet p2 = fr.x[ix] * fr.x[ix] + fr.y[ix] * fr.y[ix];
            if (p2.value() <= ztol * ztol) {
                fr.degenerate[ix] = true;
                fr.phi[ix] = Jet::constant(prev_phi, m);
                const double zv = fr.z[ix].value();
                fr.theta[ix] = Jet::constant(zv > ztol ? 0.0 : kPi, m);
            } else {
                fr.phi[ix] = atan2(fr.y[ix], fr.x[ix]);
                fr.theta[ix] = atan2(sqrt(p2), fr.z[ix]);
                prev_phi = fr.phi[ix].value();
            }
        }
        unwrap_values(fr.phi);
    }

    // Parallel transport phase: eps_dot = -phi_dot cos(theta) / 2.
    std::vector<double> gv(static_cast<std::size_t>(n));
    std::vector<Jet> gj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto ix = static_cast<std::size_t>(i);
        gj[ix] = -0.5 * (derivative(fr.phi[ix]) * cos(fr.theta[ix].truncated(m - 1)));
        gv[ix] = gj[ix].value();
    }
    const std::vector<double> quad = cumulative_simpson(gv, grid.dt());
    for (int i = 0; i < n; ++i) {
        const auto ix = static_cast<std::size_t>(i);
        Jet e(m);
        e[0] = quad[ix];
        for (int k = 1; k <= m; ++k) e[k] = (k - 1 <= gj[ix].order()) ? gj[ix][k - 1] / k : 0.0;
        fr.eps[ix] = e;
    }
    return fr;
}

SampledFunction parallel_phase(const SampledFunction& theta, const SampledFunction& phi) {
    if (!(theta.grid == phi.grid)) throw std::invalid_argument("parallel_phase: grids differ");
    const SampledFunction pd = derivative(phi);
    SampledFunction g(theta.grid);
    for (int i = 0; i < theta.size(); ++i) g[i] = -0.5 * pd[i] * std::cos(theta[i]);
    return cumulative_simpson(g);
}

std::vector<CartesianTriple> coupling(const FrameTrajectory& frame) {
    const int n = frame.grid.n;
    std::vector<CartesianTriple> k(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto ix = static_cast<std::size_t>(i);
        const double td = frame.theta[ix][1];
        const double pd = frame.phi[ix][1];
        const double th = frame.theta[ix].value();
        const double ph = frame.phi[ix].value();
        const double s2t = std::sin(2.0 * th);
        const double st = std::sin(th);
        k[ix] = {0.5 * (-td * std::sin(ph) - 0.5 * pd * std::cos(ph) * s2t),
                 0.5 * (td * std::cos(ph) - 0.5 * pd * std::sin(ph) * s2t),
                 0.5 * pd * st * st};
    }
    return k;
}

FrameTrajectory lift_frame(const FrameTrajectory& frame) {
    const int m = frame.jet_order();
    if (m < 2) throw std::invalid_argument("lift_frame: jet order exhausted");
    const int mm = m - 1;
    std::vector<JetTriple> next;
    next.reserve(frame.x.size());
    for (std::size_t i = 0; i < frame.x.size(); ++i) {
        const Jet td = derivative(frame.theta[i]);
        const Jet pd = derivative(frame.phi[i]);
        Jet s2e, c2e, st, ct;
        sin_cos(2.0 * frame.eps[i].truncated(mm), s2e, c2e);
        sin_cos(frame.theta[i].truncated(mm), st, ct);
        const Jet ps = pd * st;
        next.push_back({0.5 * (td * s2e - ps * c2e),
                        0.5 * (-(td * c2e) - ps * s2e),
                        -frame.r[i].truncated(mm)});
    }
    return make_frame(frame.order_j + 1, frame.grid, std::move(next));
}

IterationStack iterate_trajectory(TimeGrid grid, std::vector<JetTriple> h0, int j_max) {
    if (j_max < 0) throw std::invalid_argument("iterate: j_max must be >= 0");
    const int m = h0.front().x.order();
    if (m < j_max + 1)
        throw std::invalid_argument("iterate: jet order too low for requested depth");

    IterationStack st;
    st.grid_ = grid;
    st.h0_.reserve(h0.size());
    for (const JetTriple& t : h0)
        st.h0_.push_back({t.x.value(), t.y.value(), t.z.value()});

    st.frames_.push_back(make_frame(0, grid, std::move(h0)));
    for (int j = 0; j < j_max; ++j) st.frames_.push_back(lift_frame(st.frames_.back()));

    const auto n = static_cast<std::size_t>(grid.n);
    st.frame_product_.assign(1, std::vector<Matrix2>(n, Matrix2::identity()));
    for (int j = 0; j <= j_max; ++j) {
        const FrameTrajectory& fr = st.frames_[static_cast<std::size_t>(j)];
        st.coupling_.push_back(coupling(fr));

        std::vector<Matrix2> next(n);
        const std::vector<Matrix2>& prev = st.frame_product_.back();
        std::vector<CartesianTriple> hcd(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Matrix2 a = frame_rotation(fr.theta[i].value(), fr.phi[i].value(), fr.eps[i].value());
            next[i] = prev[i] * a;
            hcd[i] = decompose(prev[i] * compose(st.coupling_.back()[i]) * prev[i].adjoint());
        }
        st.h_cd_.push_back(std::move(hcd));
        st.frame_product_.push_back(std::move(next));

        std::vector<double> rv(n);
        for (std::size_t i = 0; i < n; ++i) rv[i] = fr.r[i].value();
        st.radial_integral_.push_back(cumulative_simpson(rv, grid.dt()));
    }
    return st;
}

IterationStack iterate(const ControlProtocol& protocol, int j_max) {
    if (protocol.n_samples() < 1001)
        throw std::invalid_argument("iterate: protocol must be sampled on >= 1001 points");
    return iterate_trajectory(protocol.grid(), protocol.hamiltonian_jets(), j_max);
}

std::vector<CartesianTriple> IterationStack::h0() const { return h0_; }

std::vector<CartesianTriple> IterationStack::h0_modified(int j) const {
    if (j < 1 || j > depth() + 1)
        throw std::out_of_range("h0_modified: order outside [1, depth+1]");
    const std::vector<CartesianTriple>& cd = h_cd(j - 1);
    std::vector<CartesianTriple> out(h0_.size());
    for (std::size_t i = 0; i < h0_.size(); ++i) out[i] = h0_[i] + cd[i];
    return out;
}

double basis_equivalence_check(const ControlProtocol& protocol, int j, const Matrix2& u) {
    const Matrix2 gram = u * u.adjoint();
    if ((gram - Matrix2::identity()).operator_norm() > 1e-10)
        throw std::invalid_argument("basis_equivalence_check: u is not unitary");

    // Constant basis change acts on Cartesian components as a fixed rotation.
    double rot[3][3];
    const CartesianTriple axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int k = 0; k < 3; ++k) {
        const CartesianTriple col = decompose(u.adjoint() * compose(axes[k]) * u);
        rot[0][k] = col.x;
        rot[1][k] = col.y;
        rot[2][k] = col.z;
    }

    const IterationStack ref = iterate(protocol, j);

    std::vector<JetTriple> rotated = protocol.hamiltonian_jets();
    for (JetTriple& t : rotated) {
        const Jet rx = rot[0][0] * t.x + rot[0][1] * t.y + rot[0][2] * t.z;
        const Jet ry = rot[1][0] * t.x + rot[1][1] * t.y + rot[1][2] * t.z;
        const Jet rz = rot[2][0] * t.x + rot[2][1] * t.y + rot[2][2] * t.z;
        t = {rx, ry, rz};
    }
    const IterationStack alt = iterate_trajectory(protocol.grid(), std::move(rotated), j);

    double dev = 0.0;
    const auto& a = ref.h_cd(j);
    const auto& b = alt.h_cd(j);
    for (std::size_t i = 0; i < a.size(); ++i) {
        // Map back with the transpose (rotation is orthogonal).
        const CartesianTriple bb{rot[0][0] * b[i].x + rot[1][0] * b[i].y + rot[2][0] * b[i].z,
                                 rot[0][1] * b[i].x + rot[1][1] * b[i].y + rot[2][1] * b[i].z,
                                 rot[0][2] * b[i].x + rot[1][2] * b[i].y + rot[2][2] * b[i].z};
        dev = std::max(dev, (a[i] - bb).norm());
    }
    return dev;
}

} // namespace superad
