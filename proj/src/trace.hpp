#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace zeno {

enum class TraceKind { unperturbed, perturbed, envelope, fit };

/// Complex correlation samples on a strictly increasing time grid.
struct CorrelationTrace {
    TraceKind kind;
    std::vector<double> times;
    std::vector<std::complex<double>> values;
};

/// Uniform grid i * sample_dt, i = 0..floor(total_time/sample_dt).
inline std::vector<double> uniform_time_grid(double total_time, double sample_dt) {
    const auto n = static_cast<std::size_t>(
        std::floor(total_time / sample_dt + 1e-9));
    std::vector<double> times(n + 1);
    for (std::size_t i = 0; i <= n; ++i) times[i] = static_cast<double>(i) * sample_dt;
    return times;
}

}  // namespace zeno
