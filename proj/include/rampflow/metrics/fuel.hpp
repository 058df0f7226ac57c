#pragma once

#include <algorithm>

namespace rampflow::metrics {

// Polynomial consumption proxy (VT-Micro-shaped). Relative comparisons only;
// the constants are documented defaults, not calibrated liters.
struct FuelParams {
    double beta0 = 0.1;      // idle floor, units/s
    double beta1 = 0.01;     // speed term
    double beta2 = 0.00003;  // speed^3 term
    double beta3 = 0.08;     // positive-acceleration work term
};

// Instantaneous rate, units/s. Braking adds nothing beyond the speed terms.
inline double fuel_rate(double v, double a, const FuelParams& p) {
    const double rate = p.beta0 + p.beta1 * v + p.beta2 * v * v * v + p.beta3 * std::max(a, 0.0) * v;
    return std::max(rate, p.beta0);
}

}  // namespace rampflow::metrics
