#ifndef SIEGEL_FAMILY_HPP
#define SIEGEL_FAMILY_HPP

#include <array>
#include <utility>
#include <vector>

#include "siegel/complex_util.hpp"
#include "siegel/rotation.hpp"

namespace siegel {

enum class Slice { ParamC, ParamA };

/// One member of the family: P_c(z) = lam z + A z^2 + B z^3 with
/// A = -lam(1+1/c)/2, B = lam/(3c) in the c-plane slice (critical points
/// {1, c}), or f_a(z) = lam z + a z^2 + z^3 in the a-plane slice.
class CubicSiegelMap {
  public:
    static CubicSiegelMap c_plane(Complex c, const RotationNumber& rot);
    static CubicSiegelMap a_plane(Complex a, const RotationNumber& rot);

    Complex evaluate(Complex z) const {
        return z * (lam_ + z * (quad_ + z * cubic_));
    }
    Complex derivative(Complex z) const {
        return lam_ + z * (2.0 * quad_ + z * 3.0 * cubic_);
    }

    Slice slice() const { return slice_; }
    Complex parameter() const { return param_; }
    Complex multiplier() const { return lam_; }
    Complex quadratic_coeff() const { return quad_; }
    Complex cubic_coeff() const { return cubic_; }
    const RotationNumber& rotation() const { return rot_; }
    const std::array<Complex, 2>& critical_points() const { return crit_; }

  private:
    CubicSiegelMap(Slice s, Complex param, const RotationNumber& rot,
                   Complex quad, Complex cubic, std::array<Complex, 2> crit)
        : slice_(s), param_(param), rot_(rot), lam_(rot.multiplier()),
          quad_(quad), cubic_(cubic), crit_(crit) {}

    Slice slice_;
    Complex param_;
    RotationNumber rot_;
    Complex lam_;
    Complex quad_;
    Complex cubic_;
    std::array<Complex, 2> crit_;
};

/// eta(c) = (3 lam / 4)(c + 1/c + 2); P_c and f_a are conformally conjugate
/// exactly when a^2 = eta(c). Throws on c = 0.
Complex eta(Complex c, const RotationNumber& rot);

/// The two solutions of 3 lam c^2 + (6 lam - 4 a^2) c + 3 lam = 0; the pair
/// multiplies to 1. A numerically vanishing discriminant yields equal entries.
std::pair<Complex, Complex> a_to_c(Complex a, const RotationNumber& rot);

struct ConjugacyWitness {
    Complex u; // principal branch of sqrt(lam/(3c))
    Complex a; // -lam(1+1/c)/(2u); satisfies f_a(u z) = u P_c(z) and a^2 = eta(c)
};
ConjugacyWitness conjugacy_witness(Complex c, const RotationNumber& rot);

struct OrbitBuffer {
    std::vector<Complex> points;    // points[0] = z0, points[k+1] = P(points[k])
    Complex derivative_product{1.0, 0.0};
    bool escaped = false;
    int escape_step = -1;
};

/// Forward orbit with early stop at |z| > escape_radius.
OrbitBuffer iterate_orbit(const CubicSiegelMap& map, Complex z0, int n_max,
                          double escape_radius = 1e4);

} // namespace siegel

#endif
