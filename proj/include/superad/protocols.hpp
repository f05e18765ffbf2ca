#pragma once

#include <array>
#include <vector>

#include "superad/engine.hpp"
#include "superad/protocol.hpp"

namespace superad {

// Linear detuning chirp at constant Rabi frequency:
//   Delta(t) = alpha (t - tf/2), Omega_R(t) = omega0.
struct LZParams {
    double alpha = 0.0;  // chirp, rad/us^2
    double omega0 = 0.0; // rad/us
    double tf = 0.0;     // us
};

ControlProtocol landau_zener(const LZParams& p, int n_samples, int jet_order = 8);

// max over t of |Omega_a| / (2 |Omega|) with
// Omega_a = (Omega_R Delta_dot - Omega_R_dot Delta) / Omega^2,
// Omega = sqrt(Delta^2 + Omega_R^2). Throws on a level crossing (Omega = 0).
double adiabaticity_margin(const ControlProtocol& protocol);

struct FeasibilityBounds {
    double lower = 0.0; // 2 omega0 / tf
    double upper = 0.0; // 2 omega0^2
    bool feasible = false; // 20 omega0/tf < |alpha| < 0.2 omega0^2
};

FeasibilityBounds lz_feasibility(const LZParams& p);

// Boundary ratio |Z| / sqrt(X^2 + Y^2) of one frame at both time edges.
struct BoundaryRatio {
    int frame = 0;
    double ratio_start = 0.0;
    double ratio_end = 0.0;
    bool required = false; // counts toward the verdict
    bool pass = true;
};

struct AnalysisReport {
    int order_j = 1;
    double threshold = 10.0;
    std::vector<BoundaryRatio> ratios;
    bool pass = true;
};

// Verifies the eigenvector-coincidence conditions needed for H0^(j) to act
// as a shortcut: frames 1..j-1 must be polarized along -z at both edges.
// The frame-0 ratio is reported but informational (alignment of the bare
// basis is a standing assumption, not a condition). j = 1 passes vacuously.
AnalysisReport shortcut_bc_check(const IterationStack& stack, int j, double ratio_threshold);

// Polynomial ansatz for the invariant angles:
//   gamma(0) = pi, gamma(tf) = 0, gamma_dot(0) = gamma_dot(tf) = 0
//   beta(0) = beta(tf/2) = beta(tf) = -pi/2,
//   beta_dot(0) = pi/(2 tf), beta_dot(tf) = -pi/(2 tf)
struct InvariantAnsatz {
    std::array<double, 4> gamma_coef{}; // a0..a3
    std::array<double, 5> beta_coef{};  // b0..b4
    double nu = 1.0;
    double tf = 1.0;

    double gamma(double t) const;
    double beta(double t) const;
    double gamma_dot(double t) const;
    double beta_dot(double t) const;
    Jet gamma_jet(double t, int order) const;
    Jet beta_jet(double t, int order) const;
};

InvariantAnsatz invariant_ansatz(double tf, double nu = 1.0);

struct InvariantProfiles {
    SampledFunction gamma, beta;
};

InvariantProfiles invariant_profiles(double tf, int n_samples);

// Inverse-engineered controls Omega_R = gamma_dot / sin(beta),
// Delta = beta_dot - Omega_R cos(beta) cot(gamma); the cot singularity at
// the edges is resolved by the analytic limit of the ansatz. Refuses when
// |sin beta| < 0.1 anywhere.
ControlProtocol invariant_to_controls(const InvariantAnsatz& ansatz, int n_samples,
                                      int jet_order = 8);

// (nu/2) [[cos g, sin g e^{i b}], [sin g e^{-i b}, -cos g]]
Matrix2 invariant_matrix(double gamma, double beta, double nu);

// max over t of || dI/dt - i [I, H0] ||.
double invariance_residual(const InvariantAnsatz& ansatz, const ControlProtocol& protocol);

} // namespace superad
