#ifndef SIEGEL_LINEARIZATION_HPP
#define SIEGEL_LINEARIZATION_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "siegel/family.hpp"
#include "siegel/power_series.hpp"

namespace siegel {

struct LinearizationOptions {
    int series_terms = 256;     // M
    int boundary_samples = 512; // K
    double retreat = 0.999;     // boundary radius factor
    double margin = 1e-3;       // membership band, fraction of rho
    int newton_budget = 50;
    double newton_tol = 1e-12;
    double residual_gate = 1e-8; // functional-equation gate on |w| = rho/2
    int max_series_terms = 2048; // escalation cap when the gate fails
};

enum class InteriorVerdict { Inside, Outside, NearBoundary };

enum class BoundaryCrit { OnBoundaryOne, OnBoundaryC, Both, Unresolved };

struct BoundaryCriticalVerdict {
    BoundaryCrit verdict = BoundaryCrit::Unresolved;
    double dist_one = -1.0; // dist(crit 1, boundary) / diameter
    double dist_c = -1.0;   // dist(crit c, boundary) / diameter
    std::string diagnostics;
};

/// Linearization psi of one map at 0: psi(lam w) = P(psi(w)), psi'(0) = 1.
/// rho is the conformal radius estimate (critical-preimage refined when
/// possible); the boundary polyline samples the Siegel boundary through the
/// identified boundary critical point by its forward orbit.
class LinearizationData {
  public:
    static LinearizationData build(const CubicSiegelMap& map,
                                   const LinearizationOptions& opts = {});

    const CubicSiegelMap& map() const { return map_; }
    const PowerSeries& series() const { return series_; }
    const LinearizationOptions& options() const { return opts_; }

    double radius_raw() const { return rho_raw_; }       // coefficient-tail estimate
    double radius_estimate() const { return rho_hat_; }  // refined radius
    double conformal_radius() const { return rho_; }     // retreated working radius
    /// Unit rotation aligning phi so the boundary critical point maps to 1.
    Complex phi_rotation() const;
    std::optional<Complex> critical_preimage() const { return w_star_; }
    /// Index into map().critical_points() of the boundary critical point.
    std::optional<int> boundary_critical_index() const;

    std::span<const Complex> boundary() const { return boundary_; }
    double boundary_diameter() const { return diam_; }
    bool boundary_from_orbit() const { return orbit_boundary_; }

    Complex psi(Complex w) const { return series_.eval(w); }
    Complex psi_derivative(Complex w) const { return series_.eval_derivative(w); }

    /// Newton inversion of psi seeded from the nearest precomputed interior
    /// ring sample. Empty on non-convergence.
    std::optional<Complex> invert(Complex z) const;

    InteriorVerdict membership(Complex z) const;

    /// Normalized linearizing coordinate: phi(z) = psi^{-1}(z) / w*, so
    /// phi(0) = 0, phi(P(z)) = lam phi(z), phi(boundary critical point) = 1.
    /// Throws "outside linearization domain" when inversion fails.
    Complex phi(Complex z) const;

    /// Max |psi(lam w) - P(psi(w))| over the circle |w| = rho/2.
    double functional_equation_residual() const { return gate_residual_; }

  private:
    LinearizationData(const CubicSiegelMap& map, const LinearizationOptions& opts)
        : map_(map), opts_(opts) {}

    CubicSiegelMap map_;
    LinearizationOptions opts_;
    PowerSeries series_;
    double rho_raw_ = 0.0;
    double rho_hat_ = 0.0;
    double rho_ = 0.0;
    double gate_residual_ = 0.0;
    std::optional<Complex> w_star_;
    int boundary_crit_ = -1;
    bool orbit_boundary_ = false;
    std::vector<Complex> boundary_;
    double diam_ = 0.0;
    double max_boundary_mod_ = 0.0;
    std::vector<Complex> seed_points_; // interior rings
    std::vector<Complex> seed_w_;
};

/// Series coefficients a_1..a_M of psi with a_1 = 1 and
/// a_n = [w^n](A psi^2 + B psi^3) / (lam^n - lam). Throws "resonance" if some
/// |lam^n - lam| < 1e-14.
PowerSeries linearization_series(const CubicSiegelMap& map, int M);

/// radius_of_convergence shrunk by the 0.999 safety factor.
double conformal_radius(const PowerSeries& series);

/// Resampled Siegel boundary polyline with K vertices (K >= 64).
std::vector<Complex> siegel_boundary(const LinearizationData& lin, int K);

/// Which critical point lies on the Siegel boundary of P_c, decided by
/// polyline distances measured as fractions of the boundary diameter.
BoundaryCriticalVerdict boundary_critical_point(Complex c, const RotationNumber& rot,
                                                double tol = 5e-3,
                                                LinearizationOptions opts = {});

/// Boundary polyline JSON: {"boundary": [[re,im],...], "c", "theta", "rho",
/// "M", "K"}.
std::string boundary_json(const LinearizationData& lin);

} // namespace siegel

#endif
