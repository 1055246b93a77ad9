#include "risktax/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "format.hpp"
#include "risktax/generators.hpp"
#include "risktax/rate_ode.hpp"
#include "risktax/rng.hpp"
#include "risktax/scale_function.hpp"
#include "risktax/taxed_path.hpp"

namespace risktax {

namespace {

// Deterministic reduction: fixed-order pairwise summation, independent of the
// worker partition that produced the values.
double pairwise_sum(const double* data, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

struct MeanSe {
    double mean;
    double se;
};

MeanSe mean_and_se(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    const double mean = pairwise_sum(xs.data(), xs.size()) / n;
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] - mean;
        sq[i] = d * d;
    }
    const double var = xs.size() > 1 ? pairwise_sum(sq.data(), sq.size()) / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

void run_parallel(std::size_t n, unsigned n_threads,
                  const std::function<void(std::size_t, std::size_t)>& work) {
    unsigned workers = n_threads == 0 ? std::thread::hardware_concurrency() : n_threads;
    if (workers == 0) workers = 1;
    workers = std::min<std::size_t>(workers, n);
    if (workers <= 1) {
        work(0, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
}

PiecewiseLinearPath simulate(const LevyModel& model, double x, const MCConfig& config,
                             RngStream& rng) {
    if (model.is_cramer_lundberg())
        return generate_cramer_lundberg(model, x, config.horizon, rng);
    return generate_brownian_drift(model, x, config.horizon, config.bm_step, rng);
}

std::string batch_summary_csv(const std::vector<double>& scores, std::size_t batches) {
    std::string csv = "batch,n_paths,mean,std_error\n";
    const std::size_t per = (scores.size() + batches - 1) / batches;
    for (std::size_t b = 0; b < batches; ++b) {
        const std::size_t lo = b * per;
        const std::size_t hi = std::min(scores.size(), lo + per);
        if (lo >= hi) break;
        const std::vector<double> slice(scores.begin() + lo, scores.begin() + hi);
        const MeanSe ms = mean_and_se(slice);
        csv += std::to_string(b) + "," + std::to_string(hi - lo) + "," +
               detail::fmt17(ms.mean) + "," + detail::fmt17(ms.se) + "\n";
    }
    return csv;
}

}  // namespace

MCEstimate estimate_exit_transform(const LevyModel& model, double x, double a, double q,
                                   const RateFunction& rate, const MCConfig& config) {
    if (config.n_paths < 100)
        throw std::invalid_argument("estimate_exit_transform: need n_paths >= 100");
    if (!(x < a)) throw std::invalid_argument("estimate_exit_transform: need x < a");

    MCEstimate est;
    est.n_paths = config.n_paths;
    est.horizon = config.horizon;

    auto transform = TaxTransform::natural(rate, x);
    if (transform->capped() && a >= transform->limit()) {
        est.truncation_note =
            "degenerate branch: a >= y_infinity, the taxed process is capped below a on "
            "every path; the estimate is exactly 0";
        return est;
    }

    std::vector<double> scores(config.n_paths, 0.0);
    std::vector<unsigned char> unresolved(config.n_paths, 0);

    run_parallel(config.n_paths, config.n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            RngStream rng(config.seed, i);
            TaxedPath taxed(simulate(model, x, config, rng), transform);
            const double tau_up = taxed.first_passage(a, Direction::up);
            const double tau_down = taxed.first_passage(0.0, Direction::down);
            if (tau_up <= config.horizon && tau_up < tau_down)
                scores[i] = std::exp(-q * tau_up);
            else if (!(tau_down <= config.horizon))
                unresolved[i] = 1;
        }
    });

    const MeanSe ms = mean_and_se(scores);
    est.value = ms.mean;
    est.std_error = ms.se;
    for (unsigned char u : unresolved) est.unresolved_paths += u;
    const double per_path = q > 0 ? std::exp(-q * config.horizon) : 1.0;
    est.truncation_bias_bound =
        per_path * static_cast<double>(est.unresolved_paths) / static_cast<double>(est.n_paths);
    est.truncation_note =
        "unresolved paths could still contribute at most e^{-q horizon} each; the bound is "
        "one-sided (the estimate is low)";
    if (config.batches > 0) est.batch_csv = batch_summary_csv(scores, config.batches);
    return est;
}

MCEstimate estimate_survival(const LevyModel& model, double x, const RateFunction& rate,
                             const MCConfig& config) {
    if (config.n_paths < 100)
        throw std::invalid_argument("estimate_survival: need n_paths >= 100");

    MCEstimate est;
    est.n_paths = config.n_paths;
    est.horizon = config.horizon;

    auto transform = TaxTransform::natural(rate, x);

    // Residual ruin probability of a surviving path, dominated by a fresh
    // restart at its terminal level with the constant sup rate (more tax,
    // earlier maxima: pathwise more ruin). Needs positive drift to be useful.
    const bool have_phi0 = model.psi_derivative_at_zero() > 0.0;
    const double tax_exponent = 1.0 / (1.0 - rate.sup_rate());
    const ScaleFunction scale = scale_function(model, 0.0);
    const auto residual_ruin = [&](double level) {
        if (!have_phi0) return 1.0;
        const double phi0 = scale(level) / scale.limit_at_infinity();
        return std::min(1.0, std::max(0.0, 1.0 - std::pow(phi0, tax_exponent)));
    };

    std::vector<double> scores(config.n_paths, 0.0);
    std::vector<double> residuals(config.n_paths, 0.0);

    run_parallel(config.n_paths, config.n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            RngStream rng(config.seed, i);
            TaxedPath taxed(simulate(model, x, config, rng), transform);
            const double tau_down = taxed.first_passage(0.0, Direction::down);
            if (!(tau_down <= config.horizon)) {
                scores[i] = 1.0;
                residuals[i] = residual_ruin(taxed.value(config.horizon));
            }
        }
    });

    const MeanSe ms = mean_and_se(scores);
    est.value = ms.mean;
    est.std_error = ms.se;
    est.truncation_bias_bound =
        pairwise_sum(residuals.data(), residuals.size()) / static_cast<double>(est.n_paths);
    est.truncation_note =
        "finite horizon overestimates survival; the bound dominates each surviving path's "
        "residual ruin probability from its terminal level under the constant sup rate";
    if (config.batches > 0) est.batch_csv = batch_summary_csv(scores, config.batches);
    return est;
}

// ---------------------------------------------------------------------------

std::string MCEstimate::to_json() const {
    std::string j = "{";
    j += "\"value\":" + detail::fmt17(value);
    j += ",\"std_error\":" + detail::fmt17(std_error);
    j += ",\"n_paths\":" + std::to_string(n_paths);
    j += ",\"horizon\":" + detail::fmt17(horizon);
    j += ",\"unresolved_paths\":" + std::to_string(unresolved_paths);
    j += ",\"truncation_bias_bound\":" + detail::fmt17(truncation_bias_bound);
    j += ",\"truncation_note\":\"" + truncation_note + "\"";
    j += "}";
    return j;
}

}  // namespace risktax
