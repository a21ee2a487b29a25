#pragma once

#include <cmath>
#include <span>

namespace veldrift {

struct LinearFit {
    double slope;
    double intercept;
};

/// Ordinary least squares y = slope * x + intercept. Needs two distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Slope of log|y| against log x.
double log_log_slope(std::span<const double> x, std::span<const double> y);

inline double relative_error(double value, double reference) {
    return (value - reference) / (reference != 0.0 ? std::abs(reference) : 1.0);
}

}  // namespace veldrift
