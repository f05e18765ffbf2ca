#pragma once

#include <vector>

#include "superad/engine.hpp"
#include "superad/grid.hpp"
#include "superad/pauli.hpp"

namespace superad {

struct StateTrajectory {
    TimeGrid grid;
    std::vector<Spinor> psi;
    double max_norm_drift = 0.0; // max | ||psi|| - 1 | over the run

    const Spinor& at(int i) const { return psi[static_cast<std::size_t>(i)]; }
    const Spinor& final_state() const { return psi.back(); }
};

struct PopulationTrace {
    SampledFunction p1, p2;
};

// Fixed-step RK4 for i d(psi)/dt = H(t) psi with the Hamiltonian given by
// Cartesian samples; mid-step values by cubic interpolation. psi0 must be
// normalized. No renormalization is applied; drift is recorded.
StateTrajectory propagate(const std::vector<CartesianTriple>& h, TimeGrid grid, const Spinor& psi0);

PopulationTrace populations(const StateTrajectory& traj);

// Populations in the instantaneous eigenbasis of the frame's Hamiltonian.
PopulationTrace adiabatic_overlap(const StateTrajectory& traj, const FrameTrajectory& frame0);

// Approximate superadiabatic evolution B_j(t) U_j(t) psi0 where U_j carries
// the diagonal phases exp(-i int E_n^{(j-1)}). Exact when propagating under
// H0^(j).
StateTrajectory superadiabatic_approximation(const IterationStack& stack, int j, const Spinor& psi0);

} // namespace superad
