#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "superad/propagator.hpp"
#include "superad/protocols.hpp"

using namespace superad;

TEST_CASE("landau_zener samples the linear chirp") {
    const LZParams lz{-20.0, 0.2, 0.2};
    const ControlProtocol p = landau_zener(lz, 1001, 4);
    CHECK(p.omega(0).value() == 0.2);
    CHECK(p.omega(500).deriv(1) == 0.0);
    CHECK(p.delta(0).value() == doctest::Approx(-20.0 * (0.0 - 0.1)));
    CHECK(p.delta(500).value() == doctest::Approx(0.0));
    CHECK(p.delta(123).deriv(1) == doctest::Approx(-20.0));
    CHECK_THROWS(landau_zener({1.0, -1.0, 0.2}, 1001, 4));
}

TEST_CASE("adiabaticity margin of the linear sweep is alpha / (2 omega0^2)") {
    // the maximum of |Omega_a|/(2 Omega) sits at resonance
    const ControlProtocol p = landau_zener({-20.0, 0.2, 0.2}, 4001, 2);
    CHECK(adiabaticity_margin(p) == doctest::Approx(20.0 / (2.0 * 0.2 * 0.2)).epsilon(1e-9));
    const ControlProtocol q = landau_zener({-2800.0, 30.0, 0.2}, 4001, 2);
    CHECK(adiabaticity_margin(q) == doctest::Approx(2800.0 / (2.0 * 30.0 * 30.0)).epsilon(1e-9));
}

TEST_CASE("margin agrees with a finite-difference oracle on a generic protocol") {
    const TimeGrid grid{1.0, 4001};
    const ControlProtocol p = ControlProtocol::from_jets(
        grid,
        [](double t) { return 1.0 + 0.3 * sin(3.0 * Jet::variable(t, 2)); },
        [](double t) { return 2.0 * cos(2.0 * Jet::variable(t, 2)); });
    // recompute from plain samples and FD derivatives
    const SampledFunction w = p.omega_samples();
    const SampledFunction d = p.delta_samples();
    const SampledFunction wd = derivative(w);
    const SampledFunction dd = derivative(d);
    double ref = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double om2 = w[i] * w[i] + d[i] * d[i];
        ref = std::max(ref, std::abs(w[i] * dd[i] - wd[i] * d[i]) / (2.0 * om2 * std::sqrt(om2)));
    }
    CHECK(adiabaticity_margin(p) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("feasibility bounds and crossing") {
    const FeasibilityBounds fb = lz_feasibility({-20.0, 0.2, 0.2});
    CHECK(fb.lower == doctest::Approx(2.0 * 0.2 / 0.2));
    CHECK(fb.upper == doctest::Approx(2.0 * 0.2 * 0.2));
    CHECK_FALSE(fb.feasible); // interval (20, 0.008) is empty
    // the fast reference sweep misses the lower bound (needs |alpha| > 3000)
    CHECK_FALSE(lz_feasibility({-2800.0, 30.0, 0.2}).feasible);
    CHECK(lz_feasibility({-1500.0, 100.0, 2.0}).feasible);
    // interval opens exactly at omega0 = 100 / tf
    const double tf = 2.0;
    CHECK_FALSE(lz_feasibility({-1e9, 49.0, tf}).upper * 0.1 >
                lz_feasibility({-1e9, 49.0, tf}).lower * 10.0);
    CHECK(lz_feasibility({-1e9, 51.0, tf}).upper * 0.1 > lz_feasibility({-1e9, 51.0, tf}).lower * 10.0);
}

TEST_CASE("boundary-condition verdicts for the two reference sweeps") {
    const ControlProtocol slow = landau_zener({-20.0, 0.2, 0.2}, 2001, 6);
    const IterationStack s1 = iterate(slow, 3);
    CHECK_FALSE(shortcut_bc_check(s1, 2, 10.0).pass);

    const ControlProtocol fast = landau_zener({-2800.0, 30.0, 0.2}, 2001, 6);
    const IterationStack s2 = iterate(fast, 3);
    const AnalysisReport rep = shortcut_bc_check(s2, 2, 10.0);
    CHECK(rep.pass);
    // frame 0 is reported but must not gate the verdict
    REQUIRE(rep.ratios.size() == 2);
    CHECK_FALSE(rep.ratios[0].required);
    CHECK(rep.ratios[0].ratio_start < 10.0);
    CHECK(rep.ratios[1].required);
}

TEST_CASE("bc check edge cases") {
    const ControlProtocol p = landau_zener({-20.0, 0.2, 0.2}, 1001, 5);
    const IterationStack stack = iterate(p, 3);
    const AnalysisReport r1 = shortcut_bc_check(stack, 1, 10.0);
    CHECK(r1.pass);
    CHECK(r1.ratios.empty());
    CHECK_THROWS(shortcut_bc_check(stack, 0, 10.0));
    CHECK_THROWS(shortcut_bc_check(stack, 6, 10.0));
    // verdict is monotone in the threshold
    bool prev = true;
    for (double th : {0.1, 1.0, 2.0, 3.0, 100.0}) {
        const bool pass = shortcut_bc_check(stack, 2, th).pass;
        if (!prev) CHECK_FALSE(pass);
        prev = pass;
    }
}

TEST_CASE("invariant ansatz hits its boundary conditions") {
    const double tf = 0.7;
    const InvariantAnsatz a = invariant_ansatz(tf);
    CHECK(a.gamma(0.0) == doctest::Approx(M_PI));
    CHECK(a.gamma(tf) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.gamma_dot(0.0) == doctest::Approx(0.0));
    CHECK(a.gamma_dot(tf) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.beta(0.0) == doctest::Approx(-0.5 * M_PI));
    CHECK(a.beta(0.5 * tf) == doctest::Approx(-0.5 * M_PI));
    CHECK(a.beta(tf) == doctest::Approx(-0.5 * M_PI));
    CHECK(a.beta_dot(0.0) == doctest::Approx(0.5 * M_PI / tf));
    CHECK(a.beta_dot(tf) == doctest::Approx(-0.5 * M_PI / tf));
    // cubic with these constraints has slope -3pi/(2 tf) at the midpoint
    CHECK(a.gamma_dot(0.5 * tf) == doctest::Approx(-1.5 * M_PI / tf));
    // jets agree with the scalar evaluators
    const Jet gj = a.gamma_jet(0.3, 3);
    CHECK(gj.value() == doctest::Approx(a.gamma(0.3)));
    CHECK(gj.deriv(1) == doctest::Approx(a.gamma_dot(0.3)));
}

TEST_CASE("invariant profiles sample the ansatz") {
    const InvariantProfiles pr = invariant_profiles(0.2, 1001);
    CHECK(pr.gamma[0] == doctest::Approx(M_PI));
    CHECK(pr.gamma[1000] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pr.beta[500] == doctest::Approx(-0.5 * M_PI));
}

TEST_CASE("inverse-engineered controls satisfy the defining relations") {
    const double tf = 0.2;
    const InvariantAnsatz a = invariant_ansatz(tf);
    const ControlProtocol p = invariant_to_controls(a, 2001, 6);
    // interior: direct scalar evaluation of the closed-form controls
    for (int i = 50; i < 1950; i += 173) {
        const double t = p.grid().t(i);
        const double w_ref = a.gamma_dot(t) / std::sin(a.beta(t));
        const double d_ref = a.beta_dot(t) - w_ref * std::cos(a.beta(t)) / std::tan(a.gamma(t));
        CHECK(p.omega(i).value() == doctest::Approx(w_ref).epsilon(1e-10));
        CHECK(p.delta(i).value() == doctest::Approx(d_ref).epsilon(1e-8));
    }
    // edges: Omega vanishes, Delta takes the analytic limit 3 beta_dot
    CHECK(std::abs(p.omega(0).value()) < 1e-12);
    CHECK(std::abs(p.omega(2000).value()) < 1e-12);
    CHECK(p.delta(0).value() == doctest::Approx(3.0 * a.beta_dot(0.0)));
    CHECK(p.delta(2000).value() == doctest::Approx(3.0 * a.beta_dot(tf)));
}

TEST_CASE("generated protocol really preserves the invariant") {
    const InvariantAnsatz a = invariant_ansatz(0.2);
    const ControlProtocol p = invariant_to_controls(a, 2001, 6);
    CHECK(invariance_residual(a, p) < 1e-12);
    // and commutes with H0 at both endpoints
    for (int i : {0, 2000}) {
        const double t = p.grid().t(i);
        const Matrix2 inv = invariant_matrix(a.gamma(t), a.beta(t), a.nu);
        const Matrix2 h = compose({0.5 * p.omega(i).value(), 0.0, -0.5 * p.delta(i).value()});
        CHECK((inv * h - h * inv).operator_norm() < 1e-8);
    }
}

TEST_CASE("invariant matrix has eigenvalues +/- nu/2") {
    const Matrix2 m = invariant_matrix(1.1, -0.7, 2.0);
    const CartesianTriple c = decompose(m);
    CHECK(c.norm() == doctest::Approx(1.0)); // nu/2
    CHECK(m.frobenius_norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("driving the engineered protocol inverts the populations") {
    const ControlProtocol p = invariant_to_controls(invariant_ansatz(0.2), 2001, 6);
    const StateTrajectory traj = propagate(p.hamiltonian_samples(), p.grid(), {1.0, 0.0});
    const PopulationTrace pops = populations(traj);
    CHECK(pops.p1[2000] < 1e-6);
    CHECK(traj.max_norm_drift < 1e-7);
}

TEST_CASE("controls are refused when the ansatz leaves its validity window") {
    InvariantAnsatz bad = invariant_ansatz(0.2);
    bad.beta_coef[1] += 40.0; // drives beta across 0 where sin(beta) vanishes
    CHECK_THROWS(invariant_to_controls(bad, 2001, 6));
}
