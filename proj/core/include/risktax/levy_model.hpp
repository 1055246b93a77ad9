#pragma once

#include <variant>

namespace risktax {

/// Compound Poisson risk model: upward drift at the premium rate, downward
/// jumps at Poisson(claim_intensity) times with Exp(claim_mean) sizes.
struct CramerLundberg {
    double premium_rate;     // c > 0
    double claim_intensity;  // lambda >= 0 (0 = pure drift)
    double claim_mean;       // mean claim size 1/mu > 0
};

struct BrownianWithDrift {
    double drift;
    double volatility;  // sigma > 0
};

/// Parameters of the driving spectrally negative process together with its
/// Laplace exponent psi(theta) = log E[exp(theta * X_1)], theta >= 0.
class LevyModel {
public:
    static LevyModel cramer_lundberg(double premium_rate, double claim_intensity,
                                     double claim_mean);
    static LevyModel brownian_with_drift(double drift, double volatility);

    bool is_cramer_lundberg() const {
        return std::holds_alternative<CramerLundberg>(v_);
    }
    bool is_brownian() const { return std::holds_alternative<BrownianWithDrift>(v_); }

    const CramerLundberg& cramer() const { return std::get<CramerLundberg>(v_); }
    const BrownianWithDrift& brownian() const {
        return std::get<BrownianWithDrift>(v_);
    }

    double laplace_exponent(double theta) const;

    /// psi'(0+): mean drift per unit time; positive drift at infinity means
    /// the process tends to +infinity.
    double psi_derivative_at_zero() const;

private:
    explicit LevyModel(std::variant<CramerLundberg, BrownianWithDrift> v);
    void validate() const;

    std::variant<CramerLundberg, BrownianWithDrift> v_;
};

}  // namespace risktax
