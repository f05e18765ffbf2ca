#pragma once

#include <vector>

#include "superad/grid.hpp"
#include "superad/jet.hpp"
#include "superad/pauli.hpp"
#include "superad/protocol.hpp"

namespace superad {

// One interaction-picture frame: the Cartesian trajectory of H_j together
// with a continuous (unwrapped) spherical representation, the parallel
// transport phase, and per-sample Taylor jets of all of it.
//
// theta/phi are stored on a continuous branch: theta may leave [0, pi] and
// phi may leave [0, 2pi) so that both stay smooth through pole crossings.
// spherical_at() folds back to the canonical ranges.
struct FrameTrajectory {
    int order_j = 0;
    TimeGrid grid;
    std::vector<Jet> x, y, z, r;
    std::vector<Jet> theta, phi, eps;
    std::vector<bool> degenerate;

    CartesianTriple cartesian_at(int i) const {
        return {x[static_cast<std::size_t>(i)].value(), y[static_cast<std::size_t>(i)].value(),
                z[static_cast<std::size_t>(i)].value()};
    }
    SphericalTriple spherical_at(int i) const;
    double eps_at(int i) const { return eps[static_cast<std::size_t>(i)].value(); }

    SampledFunction theta_samples() const;
    SampledFunction phi_samples() const;
    SampledFunction eps_samples() const;
    SampledFunction r_samples() const;
    SampledFunction theta_dot_samples() const;
    SampledFunction phi_dot_samples() const;

    int jet_order() const { return x.empty() ? -1 : x.front().order(); }
};

// Builds the spherical representation / gauge phase for a Cartesian jet
// trajectory; order_j is only metadata.
FrameTrajectory make_frame(int order_j, TimeGrid grid, std::vector<JetTriple> triples);

// eps(t) = -1/2 int_0^t phi_dot cos(theta); operates on plain samples with
// finite-difference phi_dot (the engine itself uses the jet path).
SampledFunction parallel_phase(const SampledFunction& theta, const SampledFunction& phi);

// Coupling term K_j = i dA_j/dt A_j^dag expressed as Cartesian components.
std::vector<CartesianTriple> coupling(const FrameTrajectory& frame);

// Frame j+1 from frame j:
//   X' = (theta_dot sin 2eps - phi_dot sin theta cos 2eps)/2
//   Y' = (-theta_dot cos 2eps - phi_dot sin theta sin 2eps)/2
//   Z' = -R
// Consumes one jet order.
FrameTrajectory lift_frame(const FrameTrajectory& frame);

// Frames 0..j_max of the iteration plus every derived trajectory.
class IterationStack {
public:
    int depth() const { return static_cast<int>(frames_.size()) - 1; }
    const TimeGrid& grid() const { return grid_; }
    int n_samples() const { return grid_.n; }

    const FrameTrajectory& frame(int j) const { return frames_.at(static_cast<std::size_t>(j)); }
    const std::vector<CartesianTriple>& coupling_terms(int j) const {
        return coupling_.at(static_cast<std::size_t>(j));
    }
    // Counterdiabatic term H_cd^(j) = B_j K_j B_j^dag, j in [0, depth].
    const std::vector<CartesianTriple>& h_cd(int j) const {
        return h_cd_.at(static_cast<std::size_t>(j));
    }
    // Accumulated frame product B_j = A_0 ... A_{j-1}, j in [0, depth+1].
    const std::vector<Matrix2>& frame_product(int j) const {
        return frame_product_.at(static_cast<std::size_t>(j));
    }
    // Running integral of R_j (for the diagonal phase evolution).
    const std::vector<double>& radial_integral(int j) const {
        return radial_integral_.at(static_cast<std::size_t>(j));
    }

    std::vector<CartesianTriple> h0() const;
    // Modified Hamiltonian H0^(j) = H0 + H_cd^(j-1), j in [1, depth+1].
    std::vector<CartesianTriple> h0_modified(int j) const;

    friend IterationStack iterate_trajectory(TimeGrid grid, std::vector<JetTriple> h0, int j_max);

private:
    TimeGrid grid_;
    std::vector<CartesianTriple> h0_;
    std::vector<FrameTrajectory> frames_;
    std::vector<std::vector<CartesianTriple>> coupling_;
    std::vector<std::vector<CartesianTriple>> h_cd_;
    std::vector<std::vector<Matrix2>> frame_product_;
    std::vector<std::vector<double>> radial_integral_;
};

// Core recursion on an arbitrary Cartesian jet trajectory.
IterationStack iterate_trajectory(TimeGrid grid, std::vector<JetTriple> h0, int j_max);

// Standard entry point from a control protocol (X0 = Omega/2, Z0 = -Delta/2).
// Requires n_samples >= 1001 and protocol jets of order >= j_max + 2.
IterationStack iterate(const ControlProtocol& protocol, int j_max);

// Reruns the iteration in the constant basis {u|1>, u|2>} and returns the
// largest operator-norm disagreement of H_cd^(j) over the grid. Throws on
// non-unitary u.
double basis_equivalence_check(const ControlProtocol& protocol, int j, const Matrix2& u);

} // namespace superad
