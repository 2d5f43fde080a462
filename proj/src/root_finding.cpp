#include "siegel/root_finding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "siegel/thread_pool.hpp"

namespace siegel {

namespace {

constexpr double kStepTolFactor = 1e-13; // converged when step < 1e-13*(1+|z|)
constexpr double kClusterDistance = 1e-7;

Complex newton_polish(const PolyEval& eval, Complex z, int budget = 60) {
    Complex best = z;
    double best_mag = std::abs(eval(z).first);
    for (int it = 0; it < budget; ++it) {
        auto [f, df] = eval(z);
        if (!is_finite(f) || df == Complex{0.0, 0.0}) break;
        Complex step = f / df;
        z -= step;
        double mag = std::abs(eval(z).first);
        if (mag < best_mag) {
            best_mag = mag;
            best = z;
        }
        if (std::abs(step) < kStepTolFactor * (1.0 + std::abs(z))) break;
    }
    return best;
}

void assign_clusters(RootReport& report) {
    const int n = static_cast<int>(report.roots.size());
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(report.roots[i].root - report.roots[j].root) < kClusterDistance)
                parent[find(i)] = find(j);
    int next_id = 0;
    std::vector<int> ids(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        bool shared = false;
        for (int j = 0; j < n && !shared; ++j) shared = (j != i && find(j) == r);
        if (!shared) continue;
        if (ids[r] < 0) ids[r] = next_id++;
        report.roots[i].cluster = ids[r];
        report.has_clusters = true;
    }
}

} // namespace

double root_start_radius(const ComplexPolynomial& p) {
    const int n = p.degree();
    if (n < 1) throw std::invalid_argument("root bound needs degree >= 1");
    const double lead = std::abs(p.leading());
    double fujiwara = 0.0;
    for (int k = 1; k <= n; ++k) {
        double c = std::abs(p.coeff(n - k)) / lead;
        if (k == n) c *= 0.5; // Fujiwara halves the constant term
        if (c > 0.0) fujiwara = std::max(fujiwara, std::pow(c, 1.0 / k));
    }
    return 2.0 * std::max(fujiwara, 1e-3);
}

RootReport solve_simultaneous(int degree, const PolyEval& eval,
                              double start_radius, double tol, int max_sweeps) {
    if (degree < 1) throw std::invalid_argument("solver needs degree >= 1");
    const int n = degree;
    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k) {
        double ang = 2.0 * std::numbers::pi * (static_cast<double>(k) / n + 0.137);
        z[k] = std::polar(start_radius, ang);
    }
    std::vector<bool> frozen(n, false);

    RootReport report;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        bool all_frozen = true;
        for (int i = 0; i < n; ++i) {
            if (frozen[i]) continue;
            auto [f, df] = eval(z[i]);
            if (!is_finite(f)) {
                // start circle overshot into overflow: pull inward
                z[i] *= 0.5;
                all_frozen = false;
                continue;
            }
            Complex newton = (df == Complex{0.0, 0.0}) ? Complex{0.0, 0.0} : f / df;
            Complex repulse{0.0, 0.0};
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex d = z[i] - z[j];
                if (d == Complex{0.0, 0.0}) d = Complex{1e-300, 0.0};
                repulse += 1.0 / d;
            }
            Complex denom = 1.0 - newton * repulse;
            Complex step = (denom == Complex{0.0, 0.0}) ? newton : newton / denom;
            z[i] -= step;
            if (std::abs(step) < kStepTolFactor * (1.0 + std::abs(z[i])))
                frozen[i] = true;
            else
                all_frozen = false;
        }
        if (all_frozen) break;
    }
    report.sweeps = sweep;

    // Newton polish, parallel over root indices.
    std::vector<Complex> polished(n);
    parallel_for(n, n >= 64 ? 0 : 1,
                 [&](int i) { polished[i] = newton_polish(eval, z[i]); });

    report.roots.resize(n);
    std::vector<int> stagnant;
    for (int i = 0; i < n; ++i) {
        auto [f, df] = eval(polished[i]);
        report.roots[i] = RootRecord{polished[i], std::abs(f), std::abs(df)};
        bool ok = frozen[i] || report.roots[i].residual < tol;
        if (!ok) stagnant.push_back(i);
    }
    if (!stagnant.empty()) {
        std::ostringstream msg;
        msg << "root iteration stagnated at indices";
        for (int i : stagnant) msg << ' ' << i;
        throw std::runtime_error(msg.str());
    }
    assign_clusters(report);
    return report;
}

RootReport find_roots(const ComplexPolynomial& p, double tol) {
    if (p.degree() < 1)
        throw std::invalid_argument("find_roots needs degree >= 1");
    ComplexPolynomial dp = p.derivative();
    PolyEval eval = [&p, &dp](Complex z) {
        return std::make_pair(p.eval_unchecked(z), dp.eval_unchecked(z));
    };
    return solve_simultaneous(p.degree(), eval, root_start_radius(p), tol);
}

} // namespace siegel
