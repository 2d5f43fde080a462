#ifndef SIEGEL_ROOT_FINDING_HPP
#define SIEGEL_ROOT_FINDING_HPP

#include <functional>
#include <utility>
#include <vector>

#include "siegel/polynomial.hpp"

namespace siegel {

/// Callback returning (p(z), p'(z)). Lets callers supply evaluation schemes
/// that are better conditioned than expanded coefficients.
using PolyEval = std::function<std::pair<Complex, Complex>(Complex)>;

struct RootRecord {
    Complex root;
    double residual;             // |p(root)|
    double derivative_magnitude; // |p'(root)|
    int cluster = -1;            // shared id when roots sit closer than 1e-7
};

struct RootReport {
    std::vector<RootRecord> roots;
    int sweeps = 0;
    bool has_clusters = false;
};

/// Fujiwara upper bound on root moduli from ascending coefficients.
double root_start_radius(const ComplexPolynomial& p);

/// Aberth-Ehrlich simultaneous iteration from a start circle, followed by
/// Newton polishing. Throws std::runtime_error naming the stagnating root
/// indices when the sweep budget (1000) is exhausted.
RootReport solve_simultaneous(int degree, const PolyEval& eval,
                              double start_radius, double tol,
                              int max_sweeps = 1000);

/// Root solve on expanded coefficients. Requires degree >= 1.
RootReport find_roots(const ComplexPolynomial& p, double tol);

} // namespace siegel

#endif
