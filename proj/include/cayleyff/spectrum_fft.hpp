#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <fftw3.h>

#include "spectrum.hpp"

namespace cayleyff {

/// Dense-transform engine: the eigenvalue list is the unnormalized inverse
/// DFT of the weighted indicator vector of the connection-set logs. Same
/// report as the direct engine, O(N log N) instead of O(N * |P_d|).
inline SpectrumReport eigenvalues_transform(const GraphSpec& spec, const LogTable& table, SpectrumKind kind) {
    std::uint64_t N = table.group_order();
    std::vector<std::uint64_t> logs, weights;
    std::uint64_t weight_sum = 0, subgroup_order = 0;
    detail::connection_logs(spec, table, kind, logs, weights, weight_sum, subgroup_order);

    std::vector<std::complex<double>> in(N, 0.0), out(N, 0.0);
    for (std::size_t i = 0; i < logs.size(); ++i) in[logs[i]] += static_cast<double>(weights[i]);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(N), reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return detail::assemble_spectrum_report(spec, table, kind, std::move(out), weight_sum, subgroup_order);
}

}  // namespace cayleyff
