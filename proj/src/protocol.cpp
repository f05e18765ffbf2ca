#include "superad/protocol.hpp"

#include <stdexcept>

namespace superad {

ControlProtocol::ControlProtocol(TimeGrid grid, std::vector<Jet> omega, std::vector<Jet> delta)
    : grid_(grid), omega_(std::move(omega)), delta_(std::move(delta)) {
    if (static_cast<int>(omega_.size()) != grid_.n || static_cast<int>(delta_.size()) != grid_.n)
        throw std::invalid_argument("ControlProtocol: sample count does not match grid");
}

ControlProtocol ControlProtocol::from_jets(TimeGrid grid,
                                           const std::function<Jet(double)>& omega_fn,
                                           const std::function<Jet(double)>& delta_fn) {
    std::vector<Jet> om, de;
    om.reserve(static_cast<std::size_t>(grid.n));
    de.reserve(static_cast<std::size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) {
        om.push_back(omega_fn(grid.t(i)));
        de.push_back(delta_fn(grid.t(i)));
    }
    return {grid, std::move(om), std::move(de)};
}

ControlProtocol ControlProtocol::from_samples(TimeGrid grid,
                                              const std::vector<double>& omega,
                                              const std::vector<double>& delta,
                                              int jet_order) {
    if (static_cast<int>(omega.size()) != grid.n || static_cast<int>(delta.size()) != grid.n)
        throw std::invalid_argument("from_samples: sample count does not match grid");
    auto build = [&](const std::vector<double>& vals) {
        std::vector<Jet> jets(vals.size(), Jet(jet_order));
        SampledFunction f{grid, vals};
        double fact = 1.0;
        for (int k = 0; k <= jet_order; ++k) {
            if (k > 0) {
                fact *= k;
                f = derivative(f);
            }
            for (int i = 0; i < grid.n; ++i) jets[static_cast<std::size_t>(i)][k] = f[i] / fact;
        }
        return jets;
    };
    return {grid, build(omega), build(delta)};
}

int ControlProtocol::jet_order() const {
    return omega_.empty() ? -1 : omega_.front().order();
}

SampledFunction ControlProtocol::omega_samples() const {
    SampledFunction f(grid_);
    for (int i = 0; i < grid_.n; ++i) f[i] = omega_[static_cast<std::size_t>(i)].value();
    return f;
}

SampledFunction ControlProtocol::delta_samples() const {
    SampledFunction f(grid_);
    for (int i = 0; i < grid_.n; ++i) f[i] = delta_[static_cast<std::size_t>(i)].value();
    return f;
}

std::vector<JetTriple> ControlProtocol::hamiltonian_jets() const {
    std::vector<JetTriple> h;
    h.reserve(omega_.size());
    const int m = jet_order();
    for (int i = 0; i < grid_.n; ++i) {
        h.push_back({0.5 * omega(i), Jet(m), -0.5 * delta(i)});
    }
    return h;
}

std::vector<CartesianTriple> ControlProtocol::hamiltonian_samples() const {
    std::vector<CartesianTriple> h;
    h.reserve(omega_.size());
    for (int i = 0; i < grid_.n; ++i)
        h.push_back({0.5 * omega(i).value(), 0.0, -0.5 * delta(i).value()});
    return h;
}

} // namespace superad
