#ifndef SIEGEL_POWER_SERIES_HPP
#define SIEGEL_POWER_SERIES_HPP

#include <vector>

#include "siegel/complex_util.hpp"

namespace siegel {

/// Truncated power series a_1 w + a_2 w^2 + ... + a_M w^M (no constant term).
struct PowerSeries {
    std::vector<Complex> coeffs; // coeffs[n-1] = a_n

    int order() const { return static_cast<int>(coeffs.size()); }
    Complex a(int n) const { return coeffs[static_cast<std::size_t>(n - 1)]; }

    /// Horner evaluation of the series at w.
    Complex eval(Complex w) const;
    /// Derivative sum_n n a_n w^{n-1}.
    Complex eval_derivative(Complex w) const;
};

/// 1/limsup |a_n|^{1/n} estimated as the minimum of |a_n|^{-1/n} over the
/// tail window (last 25% of coefficients). Requires order >= 32; throws
/// "series too short" when the tail is identically zero.
double radius_of_convergence(const PowerSeries& s);

} // namespace siegel

#endif
