#ifndef SIEGEL_CLASSIFY_HPP
#define SIEGEL_CLASSIFY_HPP

#include <optional>
#include <string>

#include "siegel/linearization.hpp"

namespace siegel {

struct PointClass {
    enum class Tag { Escapes, CaptureSiegel, AttractedCycle, Unresolved };

    Tag tag = Tag::Unresolved;
    int step = 0;                    // escape step / capture level / budget
    int period = 0;                  // attracted cycle period
    double multiplier_modulus = 0.0; // attracted cycle multiplier modulus
    double escape_modulus = 0.0;     // |z| at the escape step (for shading)

    bool is_capture() const { return tag == Tag::CaptureSiegel; }
    std::string json() const; // {"tag": escape|capture|cycle|unresolved, ...}
};

struct ClassifyBudgets {
    int n_max = 2000;
    double escape_radius = 1e4;
    double cycle_distance = 1e-9;     // Brent near-return tolerance
    double cycle_modulus = 0.99;      // attracting-cycle multiplier threshold
    double verdict_tol = 5e-3;        // boundary verdict, fraction of diameter
    LinearizationOptions lin = {256, 4096};
};

/// First verdict reached among escape, Siegel capture (first Inside index;
/// NearBoundary never counts), and an attracting cycle found by Brent's
/// near-return detection with a derivative-product multiplier check.
PointClass classify_orbit(const CubicSiegelMap& map, const LinearizationData& lin,
                          Complex z0, int n_max,
                          const ClassifyBudgets& budgets = {});

struct ParamClass {
    BoundaryCriticalVerdict verdict;
    PointClass free_orbit;  // orbit of the captured-or-free critical point
    PointClass other_orbit; // orbit of the boundary critical point
    bool in_capture_set() const {
        return free_orbit.is_capture() || other_orbit.is_capture();
    }
    std::string json() const;
};

/// Builds the linearization at c, takes the boundary verdict, and classifies
/// both critical orbits. Linearization failure yields Unresolved entries.
ParamClass classify_parameter_c(Complex c, const RotationNumber& rot,
                                const ClassifyBudgets& budgets = {});

/// Level of the free critical orbit (first entry time into the Siegel disk),
/// or nullopt when it is not captured within the budget.
std::optional<int> capture_level(Complex c, const RotationNumber& rot,
                                 int n_max = 2000,
                                 const ClassifyBudgets& budgets = {});

} // namespace siegel

#endif
