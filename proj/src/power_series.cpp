#include "siegel/power_series.hpp"

#include <cmath>
#include <stdexcept>

namespace siegel {

Complex PowerSeries::eval(Complex w) const {
    Complex r{0.0, 0.0};
    for (std::size_t k = coeffs.size(); k-- > 0;) r = r * w + coeffs[k];
    return r * w;
}

Complex PowerSeries::eval_derivative(Complex w) const {
    Complex r{0.0, 0.0};
    for (std::size_t k = coeffs.size(); k-- > 0;)
        r = r * w + coeffs[k] * static_cast<double>(k + 1);
    return r;
}

double radius_of_convergence(const PowerSeries& s) {
    const int M = s.order();
    if (M < 32)
        throw std::invalid_argument("radius_of_convergence needs at least 32 terms");
    const int n0 = std::max(2, (3 * M + 3) / 4); // start of the last-25% window
    double best = 0.0;
    bool any = false;
    for (int n = n0; n <= M; ++n) {
        double mag = std::abs(s.a(n));
        if (mag == 0.0) continue;
        double est = std::pow(mag, -1.0 / n);
        if (!any || est < best) best = est;
        any = true;
    }
    if (!any) throw std::runtime_error("series too short");
    return best;
}

} // namespace siegel
