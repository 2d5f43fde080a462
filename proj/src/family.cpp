#include "siegel/family.hpp"

#include <cmath>
#include <stdexcept>

namespace siegel {

namespace {

// Cancellation-safe quadratic solve for a z^2 + b z + c.
std::pair<Complex, Complex> solve_quadratic(Complex a, Complex b, Complex c) {
    Complex disc = std::sqrt(b * b - 4.0 * a * c);
    if ((std::conj(b) * disc).real() < 0.0) disc = -disc;
    Complex q = -0.5 * (b + disc);
    Complex r0 = (q == Complex{0.0, 0.0}) ? Complex{0.0, 0.0} : q / a;
    Complex r1 = (q == Complex{0.0, 0.0}) ? Complex{0.0, 0.0} : c / q;
    return {r0, r1};
}

} // namespace

CubicSiegelMap CubicSiegelMap::c_plane(Complex c, const RotationNumber& rot) {
    if (c == Complex{0.0, 0.0})
        throw std::invalid_argument("c-plane parameter must be nonzero");
    Complex lam = rot.multiplier();
    Complex quad = -lam * (1.0 + 1.0 / c) / 2.0;
    Complex cubic = lam / (3.0 * c);
    return CubicSiegelMap(Slice::ParamC, c, rot, quad, cubic, {Complex{1.0, 0.0}, c});
}

CubicSiegelMap CubicSiegelMap::a_plane(Complex a, const RotationNumber& rot) {
    Complex lam = rot.multiplier();
    // critical points: roots of 3 z^2 + 2 a z + lam
    auto [z0, z1] = solve_quadratic({3.0, 0.0}, 2.0 * a, lam);
    return CubicSiegelMap(Slice::ParamA, a, rot, a, {1.0, 0.0}, {z0, z1});
}

Complex eta(Complex c, const RotationNumber& rot) {
    if (c == Complex{0.0, 0.0}) throw std::invalid_argument("eta undefined at c = 0");
    return 0.75 * rot.multiplier() * (c + 1.0 / c + 2.0);
}

std::pair<Complex, Complex> a_to_c(Complex a, const RotationNumber& rot) {
    Complex lam = rot.multiplier();
    Complex A = 3.0 * lam;
    Complex B = 6.0 * lam - 4.0 * a * a;
    Complex disc = B * B - 4.0 * A * A; // C == A here
    if (std::abs(disc) < 1e-14 * std::max(1.0, std::norm(B))) {
        Complex root = -B / (2.0 * A);
        return {root, root};
    }
    auto [c0, c1] = solve_quadratic(A, B, A);
    return {c0, c1};
}

ConjugacyWitness conjugacy_witness(Complex c, const RotationNumber& rot) {
    if (c == Complex{0.0, 0.0})
        throw std::invalid_argument("conjugacy witness undefined at c = 0");
    Complex lam = rot.multiplier();
    Complex u = std::sqrt(lam / (3.0 * c)); // principal branch
    Complex a = -lam * (1.0 + 1.0 / c) / (2.0 * u);
    return {u, a};
}

OrbitBuffer iterate_orbit(const CubicSiegelMap& map, Complex z0, int n_max,
                          double escape_radius) {
    if (n_max < 1) throw std::invalid_argument("iterate_orbit needs n_max >= 1");
    OrbitBuffer orbit;
    orbit.points.reserve(static_cast<std::size_t>(n_max) + 1);
    orbit.points.push_back(z0);
    Complex z = z0;
    for (int n = 1; n <= n_max; ++n) {
        orbit.derivative_product *= map.derivative(z);
        if (!is_finite(orbit.derivative_product))
            orbit.derivative_product = Complex{1e300, 0.0}; // saturate
        z = map.evaluate(z);
        orbit.points.push_back(z);
        if (!is_finite(z) || std::abs(z) > escape_radius) {
            orbit.escaped = true;
            orbit.escape_step = n;
            break;
        }
    }
    return orbit;
}

} // namespace siegel
