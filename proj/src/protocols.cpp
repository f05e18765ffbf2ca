#include "superad/protocols.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace superad {

namespace {

constexpr double kPi = M_PI;

// Dense Gaussian elimination with partial pivoting; dimensions here are 4-5.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
        if (a[piv * n + c] == 0.0) throw std::runtime_error("solve_linear: singular system");
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
            std::swap(b[c], b[piv]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r * n + c] / a[c * n + c];
            for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t k = r + 1; k < n; ++k) s -= a[r * n + k] * x[k];
        x[r] = s / a[r * n + r];
    }
    return x;
}

double poly_eval(const double* c, int deg, double t) {
    double v = 0.0;
    for (int i = deg; i >= 0; --i) v = v * t + c[i];
    return v;
}

double poly_eval_dot(const double* c, int deg, double t) {
    double v = 0.0;
    for (int i = deg; i >= 1; --i) v = v * t + i * c[i];
    return v;
}

Jet poly_jet(const double* c, int deg, double t, int order) {
    Jet j(order);
    for (int k = 0; k <= order; ++k) {
        // Taylor coefficient: sum_i c_i C(i,k) t^(i-k)
        double acc = 0.0;
        double binom = 1.0;
        double pw = 1.0;
        for (int i = k; i <= deg; ++i) {
            acc += c[i] * binom * pw;
            binom = binom * (i + 1) / (i + 1 - k);
            pw *= t;
        }
        j[k] = acc;
    }
    return j;
}

} // namespace

ControlProtocol landau_zener(const LZParams& p, int n_samples, int jet_order) {
    if (p.omega0 <= 0.0 || p.tf <= 0.0)
        throw std::invalid_argument("landau_zener: omega0 and tf must be positive");
    if (n_samples < 3) throw std::invalid_argument("landau_zener: need at least 3 samples");
    const TimeGrid grid{p.tf, n_samples};
    return ControlProtocol::from_jets(
        grid, [&](double) { return Jet::constant(p.omega0, jet_order); },
        [&](double t) {
            Jet d(jet_order);
            d[0] = p.alpha * (t - 0.5 * p.tf);
            if (jet_order >= 1) d[1] = p.alpha;
            return d;
        });
}

double adiabaticity_margin(const ControlProtocol& protocol) {
    double margin = 0.0;
    for (int i = 0; i < protocol.n_samples(); ++i) {
        const double w = protocol.omega(i).value();
        const double wd = protocol.omega(i).deriv(1);
        const double d = protocol.delta(i).value();
        const double dd = protocol.delta(i).deriv(1);
        const double om2 = d * d + w * w;
        if (om2 == 0.0) throw std::runtime_error("adiabaticity_margin: level crossing (Omega = 0)");
        const double omega_a = (w * dd - wd * d) / om2;
        margin = std::max(margin, std::abs(omega_a) / (2.0 * std::sqrt(om2)));
    }
    return margin;
}

FeasibilityBounds lz_feasibility(const LZParams& p) {
    FeasibilityBounds fb;
    fb.lower = 2.0 * p.omega0 / p.tf;
    fb.upper = 2.0 * p.omega0 * p.omega0;
    const double a = std::abs(p.alpha);
    fb.feasible = (a > 10.0 * fb.lower) && (a < 0.1 * fb.upper);
    return fb;
}

AnalysisReport shortcut_bc_check(const IterationStack& stack, int j, double ratio_threshold) {
    if (j < 1) throw std::invalid_argument("shortcut_bc_check: j must be >= 1");
    if (stack.depth() < j - 1)
        throw std::invalid_argument("shortcut_bc_check: stack depth below j-1");

    AnalysisReport rep;
    rep.order_j = j;
    rep.threshold = ratio_threshold;

    auto edge_ratio = [&](const FrameTrajectory& fr, int i) {
        const CartesianTriple c = fr.cartesian_at(i);
        const double p = c.transverse();
        if (p == 0.0)
            return std::abs(c.z) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        return std::abs(c.z) / p;
    };

    for (int f = 0; f <= j - 1; ++f) {
        if (j == 1) break; // no conditions for j = 1
        const FrameTrajectory& fr = stack.frame(f);
        BoundaryRatio br;
        br.frame = f;
        br.ratio_start = edge_ratio(fr, 0);
        br.ratio_end = edge_ratio(fr, stack.n_samples() - 1);
        br.required = f >= 1;
        br.pass = br.ratio_start >= ratio_threshold && br.ratio_end >= ratio_threshold;
        if (br.required && !br.pass) rep.pass = false;
        rep.ratios.push_back(br);
    }
    return rep;
}

double InvariantAnsatz::gamma(double t) const { return poly_eval(gamma_coef.data(), 3, t); }
double InvariantAnsatz::beta(double t) const { return poly_eval(beta_coef.data(), 4, t); }
double InvariantAnsatz::gamma_dot(double t) const { return poly_eval_dot(gamma_coef.data(), 3, t); }
double InvariantAnsatz::beta_dot(double t) const { return poly_eval_dot(beta_coef.data(), 4, t); }
Jet InvariantAnsatz::gamma_jet(double t, int order) const {
    return poly_jet(gamma_coef.data(), 3, t, order);
}
Jet InvariantAnsatz::beta_jet(double t, int order) const {
    return poly_jet(beta_coef.data(), 4, t, order);
}

InvariantAnsatz invariant_ansatz(double tf, double nu) {
    if (tf <= 0.0) throw std::invalid_argument("invariant_ansatz: tf must be positive");
    InvariantAnsatz a;
    a.tf = tf;
    a.nu = nu;

    // gamma: cubic through gamma(0)=pi, gamma(tf)=0, gamma_dot(0)=gamma_dot(tf)=0
    {
        const double t2 = tf * tf, t3 = t2 * tf;
        const std::vector<double> m{1, 0, 0,        0,       //
                                    1, tf, t2,      t3,      //
                                    0, 1, 0,        0,       //
                                    0, 1, 2.0 * tf, 3.0 * t2};
        const std::vector<double> x = solve_linear(m, {kPi, 0.0, 0.0, 0.0});
        for (int i = 0; i < 4; ++i) a.gamma_coef[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
    }

    // beta: quartic through beta(0)=beta(tf/2)=beta(tf)=-pi/2,
    // beta_dot(0)=pi/(2 tf), beta_dot(tf)=-pi/(2 tf)
    {
        const double th = 0.5 * tf;
        auto row_val = [](double t) {
            return std::vector<double>{1, t, t * t, t * t * t, t * t * t * t};
        };
        auto row_dot = [](double t) {
            return std::vector<double>{0, 1, 2 * t, 3 * t * t, 4 * t * t * t};
        };
        std::vector<double> m;
        for (const auto& row : {row_val(0.0), row_val(th), row_val(tf), row_dot(0.0), row_dot(tf)})
            m.insert(m.end(), row.begin(), row.end());
        const std::vector<double> x = solve_linear(
            m, {-0.5 * kPi, -0.5 * kPi, -0.5 * kPi, 0.5 * kPi / tf, -0.5 * kPi / tf});
        for (int i = 0; i < 5; ++i) a.beta_coef[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
    }
    return a;
}

InvariantProfiles invariant_profiles(double tf, int n_samples) {
    if (n_samples < 3) throw std::invalid_argument("invariant_profiles: need at least 3 samples");
    const InvariantAnsatz a = invariant_ansatz(tf);
    const TimeGrid grid{tf, n_samples};
    InvariantProfiles pr{SampledFunction(grid), SampledFunction(grid)};
    for (int i = 0; i < n_samples; ++i) {
        pr.gamma[i] = a.gamma(grid.t(i));
        pr.beta[i] = a.beta(grid.t(i));
    }
    return pr;
}

ControlProtocol invariant_to_controls(const InvariantAnsatz& ansatz, int n_samples, int jet_order) {
    if (n_samples < 3) throw std::invalid_argument("invariant_to_controls: need at least 3 samples");
    const TimeGrid grid{ansatz.tf, n_samples};
    const int m = jet_order;
    std::vector<Jet> omega(static_cast<std::size_t>(n_samples));
    std::vector<Jet> delta(static_cast<std::size_t>(n_samples));

    for (int i = 0; i < n_samples; ++i) {
        const double t = grid.t(i);
        const Jet g = ansatz.gamma_jet(t, m + 1);
        const Jet b = ansatz.beta_jet(t, m + 1);
        Jet sb, cb, sg, cg;
        sin_cos(b.truncated(m), sb, cb);
        sin_cos(g.truncated(m), sg, cg);
        if (std::abs(sb.value()) < 0.1)
            throw std::runtime_error("invariant_to_controls: |sin beta| < 0.1, ansatz outside validity");
        const Jet gd = derivative(g); // order m
        const Jet bd = derivative(b);
        omega[static_cast<std::size_t>(i)] = gd / sb;
        if (i > 0 && i < n_samples - 1)
            delta[static_cast<std::size_t>(i)] = bd - (gd / sb) * cb * (cg / sg);
    }

    // Edge samples: cot(gamma) diverges while Omega_R vanishes; the series
    // limit of the product gives Delta = 3 beta_dot at both edges. Higher
    // jet coefficients are recentered from the adjacent interior sample.
    delta[0] = recenter(delta[1], -grid.dt());
    delta[0][0] = 3.0 * ansatz.beta_dot(0.0);
    const auto last = static_cast<std::size_t>(n_samples - 1);
    delta[last] = recenter(delta[last - 1], grid.dt());
    delta[last][0] = 3.0 * ansatz.beta_dot(ansatz.tf);

    return {grid, std::move(omega), std::move(delta)};
}

Matrix2 invariant_matrix(double gamma, double beta, double nu) {
    const double sg = std::sin(gamma), cg = std::cos(gamma);
    const cplx eb = std::polar(1.0, beta);
    return 0.5 * nu * Matrix2{cg, sg * eb, sg * std::conj(eb), -cg};
}

double invariance_residual(const InvariantAnsatz& ansatz, const ControlProtocol& protocol) {
    double res = 0.0;
    const TimeGrid& grid = protocol.grid();
    for (int i = 0; i < grid.n; ++i) {
        const double t = grid.t(i);
        const Jet g = ansatz.gamma_jet(t, 1);
        const Jet b = ansatz.beta_jet(t, 1);
        Jet sg, cg, sb, cb;
        sin_cos(g, sg, cg);
        sin_cos(b, sb, cb);
        const Jet ax = 0.5 * ansatz.nu * (sg * cb);
        const Jet ay = -0.5 * ansatz.nu * (sg * sb);
        const Jet az = 0.5 * ansatz.nu * cg;
        // dI/dt - i [I, H0] in Cartesian form: a_dot - 2 h x a
        const CartesianTriple h{0.5 * protocol.omega(i).value(), 0.0,
                                -0.5 * protocol.delta(i).value()};
        const CartesianTriple a{ax.value(), ay.value(), az.value()};
        const CartesianTriple r{ax.deriv(1) - 2.0 * (h.y * a.z - h.z * a.y),
                                ay.deriv(1) - 2.0 * (h.z * a.x - h.x * a.z),
                                az.deriv(1) - 2.0 * (h.x * a.y - h.y * a.x)};
        res = std::max(res, r.norm());
    }
    return res;
}

} // namespace superad
