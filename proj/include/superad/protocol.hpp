#pragma once

#include <functional>
#include <vector>

#include "superad/grid.hpp"
#include "superad/jet.hpp"
#include "superad/pauli.hpp"

namespace superad {

struct JetTriple {
    Jet x, y, z;
};

// Rabi frequency and detuning sampled on a uniform grid. Each sample carries
// a Taylor jet so the iteration engine can take repeated time derivatives
// without noise amplification. Factories for analytic protocols fill the jets
// exactly; from_samples falls back to finite differences.
class ControlProtocol {
public:
    ControlProtocol() = default;
    ControlProtocol(TimeGrid grid, std::vector<Jet> omega, std::vector<Jet> delta);

    // omega_fn / delta_fn produce the jet of the control at time t.
    static ControlProtocol from_jets(TimeGrid grid,
                                     const std::function<Jet(double)>& omega_fn,
                                     const std::function<Jet(double)>& delta_fn);

    // Builds jets of the requested order from plain samples with repeated
    // 4th-order finite differencing; usable for shallow iteration depths only.
    static ControlProtocol from_samples(TimeGrid grid,
                                        const std::vector<double>& omega,
                                        const std::vector<double>& delta,
                                        int jet_order);

    const TimeGrid& grid() const { return grid_; }
    int n_samples() const { return grid_.n; }
    int jet_order() const;

    const Jet& omega(int i) const { return omega_[static_cast<std::size_t>(i)]; }
    const Jet& delta(int i) const { return delta_[static_cast<std::size_t>(i)]; }

    SampledFunction omega_samples() const;
    SampledFunction delta_samples() const;

    // H0 components X = Omega_R/2, Y = 0, Z = -Delta/2.
    std::vector<JetTriple> hamiltonian_jets() const;
    std::vector<CartesianTriple> hamiltonian_samples() const;

private:
    TimeGrid grid_;
    std::vector<Jet> omega_, delta_;
};

} // namespace superad
