#pragma once

#include <vector>

#include "risktax/rate_function.hpp"

namespace risktax {

/// The accumulated net-of-tax map s -> x + integral_x^s (1 - rate(y)) dy for a
/// latent rate. Strictly increasing and 1-Lipschitz; links the taxed running
/// maximum to the pre-tax one. Forward evaluation is exact (closed-form
/// antiderivative per piece); the inverse solves within the bracketing piece,
/// falling back to bisection on the quadratic pieces of linear-interpolated
/// tables.
class GammaBarMap {
public:
    double base_point() const { return x_; }

    /// Forward map; exact at stored knots.
    double operator()(double s) const;

    /// Inverse map on [x, limit). Returns the stored knot exactly when the
    /// argument equals a knot image; the infinity marker when the argument
    /// reaches or exceeds the limit at infinity.
    double inverse(double u) const;

    /// x + integral_x^inf (1 - rate): infinite whenever the rate stays below
    /// 1, which every representable rate does.
    double limit_at_infinity() const { return limit_; }

    const std::vector<double>& knot_levels() const { return levels_; }
    const std::vector<double>& knot_images() const { return images_; }
    const RateFunction& rate() const { return rate_; }

private:
    friend GammaBarMap gamma_bar(const RateFunction& rate, double x);
    explicit GammaBarMap(RateFunction rate);

    RateFunction rate_;
    double x_;
    std::vector<double> levels_;   // piece boundaries, levels_[0] == x
    std::vector<double> images_;   // map values at the boundaries
    std::vector<double> rate0_;    // rate at the left end of each piece
    std::vector<double> slope_;    // d(rate)/dz within each piece (0 unless linear)
    double tail_rate_;             // constant rate beyond the last boundary
    double limit_;
};

/// Builds the map for a latent rate anchored at x. The rate must be defined
/// from x on (domain mismatch is an error).
GammaBarMap gamma_bar(const RateFunction& rate, double x);

}  // namespace risktax
