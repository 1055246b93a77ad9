#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace risktax {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1]: abscissa, Gauss weight, Kronrod weight.
inline constexpr double g7k15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
void gk15(const F& f, double a, double b, double& value, double& error) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double g = g7k15[0][1] * f0;
    double k = g7k15[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * g7k15[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        g += g7k15[i][1] * fi;
        k += g7k15[i][2] * fi;
    }
    value = k * half;
    // QUADPACK-style sharpened estimate, capped by the raw G7/K15 difference.
    const double diff = std::fabs((k - g) * half);
    error = std::min(diff, std::pow(200.0 * diff, 1.5));
}

}  // namespace detail

/// Adaptive Gauss-Kronrod 7-15 on [a, b] to an absolute tolerance, by
/// largest-error-first interval refinement.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, double abs_tol,
                                    int max_intervals = 4000) {
    struct Interval {
        double a, b, value, error;
    };
    QuadratureResult result;
    if (a == b) return result;

    std::vector<Interval> stack;
    double v, e;
    detail::gk15(f, a, b, v, e);
    result.evaluations += 15;
    stack.push_back({a, b, v, e});

    auto total_error = [&] {
        double s = 0.0;
        for (const auto& iv : stack) s += iv.error;
        return s;
    };

    while (total_error() > abs_tol) {
        if (static_cast<int>(stack.size()) >= max_intervals) {
            result.converged = false;
            break;
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < stack.size(); ++i)
            if (stack[i].error > stack[worst].error) worst = i;
        const Interval iv = stack[worst];
        const double mid = 0.5 * (iv.a + iv.b);
        Interval left{iv.a, mid, 0, 0}, right{mid, iv.b, 0, 0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        result.evaluations += 30;
        stack[worst] = left;
        stack.push_back(right);
    }

    for (const auto& iv : stack) {
        result.value += iv.value;
        result.error_estimate += iv.error;
    }
    return result;
}

/// Adaptive integration split at the given interior points (rate thresholds,
/// knots) so panel refinement never straddles an integrand kink or jump. The
/// tolerance is divided evenly across the sub-intervals.
template <class F>
QuadratureResult integrate_with_splits(const F& f, double a, double b,
                                       std::vector<double> splits, double abs_tol) {
    splits.push_back(a);
    splits.push_back(b);
    std::sort(splits.begin(), splits.end());
    splits.erase(std::remove_if(splits.begin(), splits.end(),
                                [&](double s) { return s < a || s > b; }),
                 splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());

    QuadratureResult total;
    const double per = abs_tol / static_cast<double>(splits.size() - 1);
    for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
        const QuadratureResult r = integrate_adaptive(f, splits[i], splits[i + 1], per);
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.evaluations += r.evaluations;
        total.converged = total.converged && r.converged;
    }
    return total;
}

}  // namespace risktax
