// Acceptance gate: nine end-to-end checks of the engine's headline claims.
// Prints one PASS/FAIL line per criterion and exits nonzero on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "superad/engine.hpp"
#include "superad/propagator.hpp"
#include "superad/protocols.hpp"

using namespace superad;

namespace {

const LZParams kSlow{-20.0, 0.2, 0.2};   // gentle sweep (table / population figures)
const LZParams kFast{-2800.0, 30.0, 0.2}; // fast sweep (feasible-region example)

int g_failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail) {
    std::printf("criterion %d [%s]: %s — %s\n", idx, ok ? "PASS" : "FAIL", what, detail.c_str());
    if (!ok) ++g_failures;
}

double worst_drift = 0.0;

StateTrajectory run(const std::vector<CartesianTriple>& h, TimeGrid grid, const Spinor& psi0) {
    StateTrajectory traj = propagate(h, grid, psi0);
    worst_drift = std::max(worst_drift, traj.max_norm_drift);
    return traj;
}

std::pair<double, double> amplitude_maxima(const std::vector<CartesianTriple>& h) {
    double mx = 0.0, my = 0.0;
    for (const auto& v : h) {
        mx = std::max(mx, std::abs(v.x));
        my = std::max(my, std::abs(v.y));
    }
    return {mx, my};
}

void criterion1() {
    const auto start = std::chrono::steady_clock::now();
    const ControlProtocol p = landau_zener(kSlow, 20001, 8);
    const IterationStack stack = iterate(p, 5);
    // expected (|X|max, |Y|max) per modified Hamiltonian; 0 entries use an
    // absolute tolerance, the rest a relative one
    const double want[6][2] = {{0.1, 0.0},  {0.1, 49.9},  {10.0, 0.0},
                               {8.4, 2.8}, {46.8, 28.1}, {56.2, 62.8}};
    bool ok = true;
    std::string detail;
    for (int j = 0; j <= 5; ++j) {
        const auto [mx, my] = amplitude_maxima(j == 0 ? stack.h0() : stack.h0_modified(j));
        const double rel = (j == 5) ? 0.05 : 0.02;
        const double got[2] = {mx, my};
        for (int c = 0; c < 2; ++c) {
            const double w = want[j][c];
            const bool good = (w == 0.0) ? std::abs(got[c]) < 0.05
                                         : std::abs(got[c] - w) <= rel * w;
            if (!good) {
                ok = false;
                detail += " j=" + std::to_string(j) + (c ? " Y " : " X ") + std::to_string(got[c]);
            }
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 60.0) ok = false;
    char buf[64];
    std::snprintf(buf, sizeof buf, "runtime %.1f s%s", secs, detail.c_str());
    report(1, "component maxima table, 2%/5% tolerance, < 60 s", ok, buf);
}

void criterion2() {
    const ControlProtocol p = landau_zener(kSlow, 20001, 8);
    const IterationStack stack = iterate(p, 4);
    const TimeGrid grid = stack.grid();
    std::string detail;
    bool ok = true;
    auto final_p1 = [&](const std::vector<CartesianTriple>& h) {
        const StateTrajectory traj = run(h, grid, {1.0, 0.0});
        return populations(traj).p1[grid.n - 1];
    };
    // With psi0 = |1> the bare and adiabatic bases are misaligned at the
    // edges (tan theta_f = omega0/|Delta(tf)| = 0.1), which caps how complete
    // the inversion can be: residual P1 <= 4 sin^2(theta_f/2) ~ 1e-2. The
    // dichotomy gate is inversion (< 0.02) versus failure (> 0.1).
    const double p1_h1 = final_p1(stack.h0_modified(1));
    if (p1_h1 >= 0.02) ok = false;
    detail = "P1(H^1)=" + std::to_string(p1_h1);
    for (int j : {0, 2, 3, 4}) {
        const double p1 = final_p1(j == 0 ? stack.h0() : stack.h0_modified(j));
        if (p1 <= 0.1) {
            ok = false;
            detail += " P1(H^" + std::to_string(j) + ")=" + std::to_string(p1);
        }
    }
    report(2, "only the first shortcut inverts the population", ok, detail);
}

void criterion3() {
    bool ok = true;
    double worst = 0.0;
    for (const LZParams& lz : {kSlow, kFast}) {
        const ControlProtocol p = landau_zener(lz, 4001, 8);
        const IterationStack stack = iterate(p, 5);
        for (int j = 1; j <= 4; ++j) {
            const StateTrajectory exact = run(stack.h0_modified(j), stack.grid(), {1.0, 0.0});
            const StateTrajectory approx = superadiabatic_approximation(stack, j, {1.0, 0.0});
            for (int i = 0; i < stack.n_samples(); ++i)
                worst = std::max(worst, (exact.at(i) - approx.at(i)).norm());
        }
    }
    if (worst >= 1e-5) ok = false;
    report(3, "factorized evolution matches the propagator for j=1..4", ok,
           "max deviation " + std::to_string(worst));
}

void criterion4() {
    bool ok = true;
    double worst = 0.0;
    for (const LZParams& lz : {kSlow, kFast}) {
        const ControlProtocol p = landau_zener(lz, 8001, 4);
        const IterationStack stack = iterate(p, 1);
        const StateTrajectory traj = run(stack.h0_modified(1), stack.grid(), {1.0, 0.0});
        const PopulationTrace ad = adiabatic_overlap(traj, stack.frame(0));
        for (int i = 0; i < stack.n_samples(); ++i)
            worst = std::max(worst, std::abs(ad.p1[i] - ad.p1[0]));
    }
    if (worst >= 1e-5) ok = false;
    report(4, "instantaneous-eigenbasis populations constant under the first shortcut", ok,
           "max wander " + std::to_string(worst));
}

void criterion5() {
    const ControlProtocol p = landau_zener(kSlow, 2001, 8);
    const Matrix2 swap{0.0, 1.0, 1.0, 0.0};
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    const double c = std::cos(u(rng) * 0.1), s = std::sqrt(1.0 - c * c);
    const cplx pa = std::polar(1.0, u(rng)), pb = std::polar(1.0, u(rng));
    const Matrix2 random_u{c * pa, s * pb, -s * std::conj(pb), c * std::conj(pa)};
    double worst = 0.0;
    for (const Matrix2& m : {Matrix2::identity(), swap, random_u})
        worst = std::max(worst, basis_equivalence_check(p, 3, m));
    report(5, "counterdiabatic terms are reference-basis independent (j<=3)", worst < 1e-6,
           "max operator-norm spread " + std::to_string(worst));
}

void criterion6() {
    const IterationStack slow = iterate(landau_zener(kSlow, 4001, 6), 2);
    const IterationStack fast = iterate(landau_zener(kFast, 4001, 6), 2);
    const bool slow_fails = !shortcut_bc_check(slow, 2, 10.0).pass;
    const bool fast_passes = shortcut_bc_check(fast, 2, 10.0).pass;
    report(6, "j=2 boundary verdicts: gentle sweep fails, fast sweep passes",
           slow_fails && fast_passes,
           std::string("slow=") + (slow_fails ? "fail" : "pass") + " fast=" +
               (fast_passes ? "pass" : "fail"));
}

void criterion7() {
    const double tf = 0.2;
    const InvariantAnsatz ansatz = invariant_ansatz(tf);
    const ControlProtocol p = invariant_to_controls(ansatz, 4001, 8);
    const double residual = invariance_residual(ansatz, p);
    const StateTrajectory traj = run(p.hamiltonian_samples(), p.grid(), {1.0, 0.0});
    const double final_p1 = populations(traj).p1[p.n_samples() - 1];
    double comm = 0.0;
    for (int i : {0, p.n_samples() - 1}) {
        const Matrix2 inv = invariant_matrix(ansatz.gamma(p.grid().t(i)),
                                             ansatz.beta(p.grid().t(i)), ansatz.nu);
        const Matrix2 h = compose({0.5 * p.omega(i).value(), 0.0, -0.5 * p.delta(i).value()});
        comm = std::max(comm, (inv * h - h * inv).operator_norm());
    }
    // dichotomy for the fast sweep the engineered pulse replaces: its first
    // two shortcuts invert while the bare sweep does not
    const IterationStack stack = iterate(landau_zener(kFast, 4001, 6), 2);
    const int last = stack.n_samples() - 1;
    const double p1_h0 = populations(run(stack.h0(), stack.grid(), {1.0, 0.0})).p1[last];
    const double p1_h1 =
        populations(run(stack.h0_modified(1), stack.grid(), {1.0, 0.0})).p1[last];
    const double p1_h2 =
        populations(run(stack.h0_modified(2), stack.grid(), {1.0, 0.0})).p1[last];
    const bool ok = final_p1 < 1e-6 && residual < 1e-6 && comm < 1e-8 && p1_h1 < 1e-2 &&
                    p1_h2 < 1e-2 && p1_h0 > 0.1;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "P1=%.2e residual=%.2e [I,H]=%.2e P1(H^1)=%.2e P1(H^2)=%.2e P1(H0)=%.2f",
                  final_p1, residual, comm, p1_h1, p1_h2, p1_h0);
    report(7, "invariant-engineered pulse: inversion, invariance, endpoint commutation", ok, buf);
}

void criterion8() {
    bool ok = true;
    std::string detail;
    for (const double tf : {2.0, 0.2}) {
        const double expected = 100.0 / tf;
        const double w_lo = 0.5 * expected, w_hi = 2.0 * expected;
        const int steps = 2000;
        const double cell = (w_hi - w_lo) / (steps - 1);
        double first = -1.0;
        for (int k = 0; k < steps; ++k) {
            const double w = w_lo + cell * k;
            const FeasibilityBounds fb = lz_feasibility({-1.0, w, tf});
            if (0.1 * fb.upper > 10.0 * fb.lower) { // nonempty alpha interval
                first = w;
                break;
            }
        }
        if (first < 0.0 || std::abs(first - expected) > cell) ok = false;
        detail += " tf=" + std::to_string(tf) + ": " + std::to_string(first);
    }
    report(8, "feasible-alpha interval opens at omega = 100/tf", ok, detail);
}

void criterion9() {
    // convergence of the final state under grid halving (shared sweep)
    auto final_at = [&](int n) {
        const ControlProtocol p = landau_zener(kFast, n, 2);
        return run(p.hamiltonian_samples(), p.grid(), {1.0, 0.0}).final_state();
    };
    const double e1 = (final_at(501) - final_at(1001)).norm();
    const double e2 = (final_at(1001) - final_at(2001)).norm();
    const double order = std::log2(e1 / e2);
    const bool ok = worst_drift < 1e-7 && order >= 3.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst drift %.2e, observed order %.2f", worst_drift, order);
    report(9, "norm drift < 1e-7 everywhere, >= 3rd-order convergence", ok, buf);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
