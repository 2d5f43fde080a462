#ifndef SIEGEL_CAPTURE_HPP
#define SIEGEL_CAPTURE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "siegel/classify.hpp"
#include "siegel/polynomial.hpp"
#include "siegel/root_finding.hpp"

namespace siegel {

/// The critical-orbit polynomials: P_c^{o ell}(c) = c G_ell(c) with
/// G_1 = lam (3 - c)/6 and
/// G_ell = lam G_{ell-1} (1 - (1+c) G_{ell-1}/2 + (c/3) G_{ell-1}^2),
/// so deg G_ell = (3^ell - 1)/2. Expanded coefficients are kept for root
/// bounds and inspection; evaluation near roots goes through the recursion,
/// which stays conditioned where the critical orbit stays bounded.
class CapturePolynomialTower {
  public:
    /// Builds G_1..G_L. Requires 1 <= L <= 6. A degree mismatch while
    /// expanding is an internal error.
    static CapturePolynomialTower build(const RotationNumber& rot, int L);

    int levels() const { return static_cast<int>(polys_.size()); }
    const RotationNumber& rotation() const { return rot_; }
    const ComplexPolynomial& poly(int ell) const; // 1-based level

    /// (G_ell(c), G_ell'(c)) by forward recursion.
    std::pair<Complex, Complex> eval_level(int ell, Complex c) const;

  private:
    explicit CapturePolynomialTower(const RotationNumber& rot) : rot_(rot) {}
    RotationNumber rot_;
    std::vector<ComplexPolynomial> polys_;
};

struct CenterRecord {
    Complex c;
    int level;
    double residual;             // |G_level(c)|
    double derivative_magnitude; // |G_level'(c)|
};

struct CenterCensus {
    CapturePolynomialTower tower;
    std::vector<std::vector<CenterRecord>> levels; // new centers per level
    std::string csv() const; // level,re,im,residual,derivative_magnitude
};

/// Per-level capture-component centers: roots of G_ell absent from G_{ell-1}.
/// Enforces the census count 3^{ell-1}, root simplicity (|G'| > 1e-6, no pair
/// closer than 1e-7) and annulus containment 1/30 < |c| < 30; violations
/// throw with the offending level named.
CenterCensus capture_centers(const RotationNumber& rot, int L);

/// Phi(c) = phi_c(P_c^{o ell}(c)), the conformal coordinate of the level-ell
/// capture component. Throws when the iterate cannot be pulled back into the
/// Siegel disk.
Complex param_map_phi(Complex c, int level, const RotationNumber& rot,
                      int series_terms = 256);

struct TraceOptions {
    int series_terms = 128;     // per-parameter linearization budget
    double newton_tol = 1e-9;   // |Phi - target| corrector tolerance
    int newton_budget = 25;
    double fd_scale = 1e-6;     // Phi derivative step 1e-6 (1 + |c|)
    double r_start = 0.05;
    double r_step = 0.05;       // adaptive continuation step in r
    double r_step_floor = 1e-4;
};

struct RayPath {
    double angle = 0.0;
    std::vector<std::pair<double, Complex>> stations; // (r, c(r))
    Complex landing;
    bool ok = false;
    double last_good_r = 0.0;
    std::string error;
};

/// Predictor-corrector continuation along Phi(c) = r e^{2 pi i t} from the
/// component center out to r_stop, with a Richardson-extrapolated landing
/// estimate from r in {0.98, 0.99, r_stop}.
RayPath trace_parameter_ray(Complex center, int level, double t, double r_stop,
                            const RotationNumber& rot, const TraceOptions& = {});

struct ComponentTrace {
    Complex center;
    int level = 0;
    std::vector<double> angles;
    std::vector<Complex> landings;
    double closure_gap = 0.0; // |landing(t=1) - landing(t=0)|
    bool simple = false;
    int winding = 0;
    double turning_constant = 0.0;
    double diameter = 0.0;
    int failed_rays = 0;
    std::string json() const;
};

/// K ray landings at angles k/K traced as one warm-started loop around the
/// component. More than 5% failed rays is an error.
ComponentTrace trace_component_boundary(Complex center, int level, int K,
                                        double r_stop, const RotationNumber& rot,
                                        const TraceOptions& = {});

/// Ahlfors bounded-turning estimate of a closed polyline (>= 16 vertices).
double quasicircle_diagnostic(std::span<const Complex> polyline);

struct ZakeriTrace {
    std::vector<Complex> points; // one per resolved direction, angle-ordered
    std::vector<int> failed_directions;
    std::string json() const;
};

/// Radial bisection of the boundary-critical-point dichotomy along N
/// directions; brackets stop below 1e-4 in log-radius, Both verdicts count
/// as hits. Requires N >= 32.
ZakeriTrace trace_zakeri(const RotationNumber& rot, int N,
                         int series_terms = 128, int boundary_samples = 2048,
                         double tol = 5e-3, int threads = 0);

} // namespace siegel

#endif
