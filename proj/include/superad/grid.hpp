#pragma once

#include <vector>

namespace superad {

// Uniform time grid on [0, tf].
struct TimeGrid {
    double tf = 1.0;
    int n = 3; // number of samples, spacing tf/(n-1)

    double dt() const { return tf / (n - 1); }
    double t(int i) const { return tf * i / (n - 1); }

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
        return a.tf == b.tf && a.n == b.n;
    }
};

// Real scalar signal sampled on a uniform grid.
struct SampledFunction {
    TimeGrid grid;
    std::vector<double> v;

    SampledFunction() = default;
    SampledFunction(TimeGrid g, std::vector<double> values) : grid(g), v(std::move(values)) {}
    explicit SampledFunction(TimeGrid g) : grid(g), v(static_cast<std::size_t>(g.n), 0.0) {}

    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(v.size()); }

    double max_abs() const;
};

// 4th-order differentiation: central stencil in the interior, one-sided
// 5-point stencils at the two samples nearest each edge. Throws if n < 5.
SampledFunction derivative(const SampledFunction& f);

// Running integral from t=0, composite Simpson at even samples and a
// 3-point closing rule at odd ones; O(dt^4) throughout.
SampledFunction cumulative_simpson(const SampledFunction& f);
std::vector<double> cumulative_simpson(const std::vector<double>& f, double dt);

} // namespace superad
