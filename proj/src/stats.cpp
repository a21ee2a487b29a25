#include "veldrift/stats.hpp"

#include <cmath>
#include <vector>

#include "veldrift/errors.hpp"

namespace veldrift {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidInput("fit_line: need >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw InvalidInput("fit_line: x values are all equal");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) lx[i] = std::log(x[i]);
    for (std::size_t i = 0; i < y.size(); ++i) ly[i] = std::log(std::abs(y[i]));
    return fit_line(lx, ly).slope;
}

}  // namespace veldrift
