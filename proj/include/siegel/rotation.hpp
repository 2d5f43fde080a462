#ifndef SIEGEL_ROTATION_HPP
#define SIEGEL_ROTATION_HPP

#include <string>
#include <string_view>
#include <vector>

#include "siegel/complex_util.hpp"

namespace siegel {

/// Rotation number theta in (0,1) given as a periodic continued fraction
/// [0; d_1, ..., d_k, (p_1, ..., p_m)] with the parenthesized block repeating
/// forever. All partial quotients are >= 1, so theta is of bounded type.
class RotationNumber {
  public:
    /// Accepts "golden" or a literal like "[0;2,1,(1,3)]" / "[0;(2)]".
    /// Decimal input is rejected: bounded type cannot be certified from it.
    static RotationNumber parse(std::string_view spec);
    static RotationNumber golden() { return parse("golden"); }

    double value() const { return value_; }
    Complex multiplier() const { return multiplier_; } // e^{2 pi i theta}
    const std::vector<int>& preperiod() const { return preperiod_; }
    const std::vector<int>& period() const { return period_; }
    std::string text() const; // canonical "[0;...]" form

    /// |multiplier^n - multiplier|; the linearization resonance guard.
    double denominator_gap(int n) const;

  private:
    RotationNumber(std::vector<int> pre, std::vector<int> per);

    std::vector<int> preperiod_;
    std::vector<int> period_;
    double value_ = 0.0;
    Complex multiplier_;
};

} // namespace siegel

#endif
