#pragma once

#include <cstdint>
#include <string>

#include "risktax/levy_model.hpp"
#include "risktax/rate_function.hpp"

namespace risktax {

struct MCEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
    double horizon = 0.0;
    std::size_t unresolved_paths = 0;      // neither passage by the horizon
    double truncation_bias_bound = 0.0;    // one-sided, direction in the note
    std::string truncation_note;
    std::string batch_csv;                 // filled when batches are requested

    std::string to_json() const;
};

struct MCConfig {
    std::size_t n_paths = 10000;
    double horizon = 100.0;
    std::uint64_t seed = 1;
    unsigned n_threads = 0;   // 0 = hardware concurrency
    double bm_step = 1e-2;    // grid for Brownian path generation
    std::size_t batches = 0;  // > 0: record per-batch summaries as CSV
};

/// Estimates E_x[e^{-q tau_a^+} 1{tau_a^+ < tau_0^-}] for the natural tax
/// process by exact per-path passage times. Per-path substreams are keyed by
/// the path index and the reduction order is fixed, so the result does not
/// depend on the worker count. Unresolved paths are counted and bounded by
/// e^{-q horizon} each (probability mass when q = 0).
MCEstimate estimate_exit_transform(const LevyModel& model, double x, double a, double q,
                                   const RateFunction& rate, const MCConfig& config);

/// Fraction of paths whose taxed process never passes below zero by the
/// horizon. The finite-horizon bias is non-negative (survival is
/// overestimated); the stated bound dominates each surviving path's residual
/// ruin probability by a fresh restart at its terminal level under the
/// constant sup rate.
MCEstimate estimate_survival(const LevyModel& model, double x, const RateFunction& rate,
                             const MCConfig& config);

}  // namespace risktax
