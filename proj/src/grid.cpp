#include "superad/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace superad {

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

SampledFunction derivative(const SampledFunction& f) {
    const int n = f.size();
    if (n < 5) throw std::invalid_argument("derivative: need at least 5 samples");
    const double h = f.grid.dt();
    SampledFunction d(f.grid);
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
    for (int i = 2; i < n - 2; ++i)
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / (12.0 * h);
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) / (12.0 * h);
    return d;
}

std::vector<double> cumulative_simpson(const std::vector<double>& f, double dt) {
    const int n = static_cast<int>(f.size());
    if (n < 3) throw std::invalid_argument("cumulative_simpson: need at least 3 samples");
    std::vector<double> out(f.size(), 0.0);
    for (int i = 1; i < n; ++i) {
        if (i == 1) {
            out[1] = dt / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]);
        } else if (i % 2 == 0) {
            out[i] = out[i - 2] + dt / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
        } else {
            out[i] = out[i - 1] + dt / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
        }
    }
    return out;
}

SampledFunction cumulative_simpson(const SampledFunction& f) {
    return {f.grid, cumulative_simpson(f.v, f.grid.dt())};
}

} // namespace superad
