#include "siegel/linearization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "siegel/polyline.hpp"
#include "siegel/power_series.hpp"

namespace siegel {

namespace {

constexpr double kResonanceFloor = 1e-14;
constexpr double kInvertResidualTol = 1e-9;

std::optional<Complex> newton_invert(const PowerSeries& s, Complex target,
                                     Complex w0, int budget, double tol) {
    Complex w = w0;
    for (int it = 0; it < budget; ++it) {
        Complex f = s.eval(w) - target;
        Complex df = s.eval_derivative(w);
        if (!is_finite(f) || df == Complex{0.0, 0.0}) return std::nullopt;
        Complex step = f / df;
        w -= step;
        if (!is_finite(w)) return std::nullopt;
        if (std::abs(step) < tol * (1.0 + std::abs(w))) {
            if (std::abs(s.eval(w) - target) <=
                kInvertResidualTol * (1.0 + std::abs(target)))
                return w;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

} // namespace

PowerSeries linearization_series(const CubicSiegelMap& map, int M) {
    if (M < 32)
        throw std::invalid_argument("linearization series needs at least 32 terms");
    const Complex lam = map.multiplier();
    const Complex A = map.quadratic_coeff();
    const Complex B = map.cubic_coeff();

    // a[n], conv2[n] = [w^n] psi^2, conv3[n] = [w^n] psi^3 (1-based indexing).
    std::vector<Complex> a(static_cast<std::size_t>(M) + 1, Complex{0.0, 0.0});
    std::vector<Complex> conv2(a.size(), Complex{0.0, 0.0});
    a[1] = {1.0, 0.0};
    Complex lam_pow = lam; // lam^n
    for (int n = 2; n <= M; ++n) {
        lam_pow *= lam;
        Complex denom = lam_pow - lam;
        if (std::abs(denom) < kResonanceFloor) {
            std::ostringstream msg;
            msg << "resonance: |lam^" << n << " - lam| = " << std::abs(denom);
            throw std::runtime_error(msg.str());
        }
        Complex c2{0.0, 0.0};
        for (int i = 1; i <= n - 1; ++i) c2 += a[i] * a[n - i];
        conv2[n] = c2;
        Complex c3{0.0, 0.0};
        for (int i = 1; i <= n - 2; ++i) c3 += a[i] * conv2[n - i];
        a[n] = (A * c2 + B * c3) / denom;
        if (!is_finite(a[n]))
            throw std::runtime_error("linearization series coefficient overflowed");
    }
    PowerSeries s;
    s.coeffs.assign(a.begin() + 1, a.end());
    return s;
}

double conformal_radius(const PowerSeries& series) {
    return 0.999 * radius_of_convergence(series);
}

LinearizationData LinearizationData::build(const CubicSiegelMap& map,
                                           const LinearizationOptions& opts) {
    int M = opts.series_terms;
    std::string last_error;
    while (true) {
        LinearizationData lin(map, opts);
        lin.series_ = linearization_series(map, M);
        lin.rho_raw_ = radius_of_convergence(lin.series_);

        // Identify the boundary critical point by inverting both critical
        // values; the Siegel boundary passes through at least one of them.
        const auto& crits = map.critical_points();
        for (int ci = 0; ci < 2; ++ci) {
            Complex target = crits[static_cast<std::size_t>(ci)];
            Complex best_seed{0.0, 0.0};
            double best_gap = std::numeric_limits<double>::infinity();
            for (double frac : {0.7, 0.9}) {
                for (int k = 0; k < 64; ++k) {
                    Complex w = std::polar(frac * lin.rho_raw_,
                                           2.0 * std::numbers::pi * k / 64.0);
                    double gap = std::abs(lin.series_.eval(w) - target);
                    if (gap < best_gap) {
                        best_gap = gap;
                        best_seed = w;
                    }
                }
            }
            auto w = newton_invert(lin.series_, target, best_seed,
                                   opts.newton_budget, opts.newton_tol);
            if (!w) continue;
            double mod = std::abs(*w);
            if (mod < 0.5 * lin.rho_raw_ || mod > 1.05 * lin.rho_raw_) continue;
            if (!lin.w_star_ || mod < std::abs(*lin.w_star_)) {
                lin.w_star_ = *w;
                lin.boundary_crit_ = ci;
            }
        }
        lin.rho_hat_ = lin.w_star_ ? std::abs(*lin.w_star_) : lin.rho_raw_;
        lin.rho_ = opts.retreat * lin.rho_hat_;

        // Boundary polyline: forward orbit of the boundary critical point
        // (each iterate sits on the boundary at angle {k theta}), falling
        // back to the series circle when no critical preimage was found.
        const int K = std::max(4, opts.boundary_samples);
        lin.boundary_.clear();
        lin.boundary_.reserve(static_cast<std::size_t>(K));
        if (lin.boundary_crit_ >= 0) {
            const double theta = map.rotation().value();
            std::vector<std::pair<double, Complex>> pts;
            pts.reserve(static_cast<std::size_t>(K));
            Complex z = crits[static_cast<std::size_t>(lin.boundary_crit_)];
            bool ok = true;
            for (int k = 0; k < K; ++k) {
                if (!is_finite(z) || std::abs(z) > 1e6) {
                    ok = false;
                    break;
                }
                double ang = std::fmod(k * theta, 1.0);
                pts.emplace_back(ang, z);
                z = map.evaluate(z);
            }
            if (ok) {
                std::sort(pts.begin(), pts.end(),
                          [](const auto& p, const auto& q) { return p.first < q.first; });
                for (const auto& [ang, pt] : pts) lin.boundary_.push_back(pt);
                lin.orbit_boundary_ = true;
            } else {
                lin.boundary_crit_ = -1;
                lin.w_star_.reset();
                lin.rho_hat_ = lin.rho_raw_;
                lin.rho_ = opts.retreat * lin.rho_hat_;
            }
        }
        if (!lin.orbit_boundary_) {
            for (int k = 0; k < K; ++k) {
                Complex w = std::polar(lin.rho_, 2.0 * std::numbers::pi * k / K);
                lin.boundary_.push_back(lin.series_.eval(w));
            }
        }
        lin.diam_ = polyline_diameter(lin.boundary_);
        lin.max_boundary_mod_ = 0.0;
        for (Complex b : lin.boundary_)
            lin.max_boundary_mod_ = std::max(lin.max_boundary_mod_, std::abs(b));

        // Interior seed rings for Newton inversion.
        lin.seed_points_.clear();
        lin.seed_w_.clear();
        for (double frac : {0.3, 0.6, 0.9}) {
            for (int k = 0; k < 64; ++k) {
                Complex w = std::polar(frac * lin.rho_,
                                       2.0 * std::numbers::pi * k / 64.0);
                lin.seed_w_.push_back(w);
                lin.seed_points_.push_back(lin.series_.eval(w));
            }
        }

        // Functional-equation gate on |w| = rho/2.
        const Complex lam = map.multiplier();
        double residual = 0.0;
        for (int k = 0; k < 64; ++k) {
            Complex w = std::polar(0.5 * lin.rho_, 2.0 * std::numbers::pi * k / 64.0);
            Complex lhs = lin.series_.eval(lam * w);
            Complex rhs = map.evaluate(lin.series_.eval(w));
            residual = std::max(residual, std::abs(lhs - rhs));
        }
        lin.gate_residual_ = residual;
        if (residual < opts.residual_gate) return lin;

        std::ostringstream msg;
        msg << "functional-equation residual " << residual << " at M = " << M;
        last_error = msg.str();
        if (M >= opts.max_series_terms)
            throw std::runtime_error("linearization failed: " + last_error);
        M = std::min(2 * M, opts.max_series_terms);
    }
}

Complex LinearizationData::phi_rotation() const {
    if (!w_star_) return {1.0, 0.0};
    return std::polar(1.0, -std::arg(*w_star_));
}

std::optional<int> LinearizationData::boundary_critical_index() const {
    if (boundary_crit_ < 0) return std::nullopt;
    return boundary_crit_;
}

std::optional<Complex> LinearizationData::invert(Complex z) const {
    Complex seed{0.0, 0.0};
    if (std::abs(z) < 1e-3 * rho_) {
        seed = z;
    } else {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < seed_points_.size(); ++k) {
            double gap = std::abs(seed_points_[k] - z);
            if (gap < best) {
                best = gap;
                seed = seed_w_[k];
            }
        }
    }
    return newton_invert(series_, z, seed, opts_.newton_budget, opts_.newton_tol);
}

InteriorVerdict LinearizationData::membership(Complex z) const {
    if (std::abs(z) > 2.0 * max_boundary_mod_) return InteriorVerdict::Outside;
    auto w = invert(z);
    const double band = opts_.margin * diam_;
    if (!w) {
        if (distance_to_polyline(z, boundary_) < band)
            return InteriorVerdict::NearBoundary;
        return InteriorVerdict::Outside;
    }
    double mod = std::abs(*w);
    if (mod < rho_ * (1.0 - opts_.margin)) {
        // demote points that sit on the sampled boundary itself
        if (distance_to_polyline(z, boundary_) < band)
            return InteriorVerdict::NearBoundary;
        return InteriorVerdict::Inside;
    }
    if (mod <= rho_ * (1.0 + opts_.margin)) return InteriorVerdict::NearBoundary;
    if (distance_to_polyline(z, boundary_) < band)
        return InteriorVerdict::NearBoundary;
    return InteriorVerdict::Outside;
}

Complex LinearizationData::phi(Complex z) const {
    auto w = invert(z);
    if (!w) throw std::runtime_error("outside linearization domain");
    if (w_star_) return *w / *w_star_;
    return *w / rho_hat_;
}

std::vector<Complex> siegel_boundary(const LinearizationData& lin, int K) {
    if (K < 64) throw std::invalid_argument("siegel_boundary needs K >= 64");
    const CubicSiegelMap& map = lin.map();
    if (auto ci = lin.boundary_critical_index()) {
        const double theta = map.rotation().value();
        Complex z = map.critical_points()[static_cast<std::size_t>(*ci)];
        std::vector<std::pair<double, Complex>> pts;
        pts.reserve(static_cast<std::size_t>(K));
        for (int k = 0; k < K; ++k) {
            pts.emplace_back(std::fmod(k * theta, 1.0), z);
            z = map.evaluate(z);
        }
        std::sort(pts.begin(), pts.end(),
                  [](const auto& p, const auto& q) { return p.first < q.first; });
        std::vector<Complex> out;
        out.reserve(pts.size());
        for (const auto& [ang, pt] : pts) out.push_back(pt);
        return out;
    }
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        Complex w = std::polar(lin.conformal_radius(),
                               2.0 * std::numbers::pi * k / K);
        out.push_back(lin.psi(w));
    }
    return out;
}

BoundaryCriticalVerdict boundary_critical_point(Complex c, const RotationNumber& rot,
                                                double tol,
                                                LinearizationOptions opts) {
    opts.boundary_samples = std::max(opts.boundary_samples, 4096);
    BoundaryCriticalVerdict out;
    try {
        auto lin = LinearizationData::build(CubicSiegelMap::c_plane(c, rot), opts);
        const double diam = lin.boundary_diameter();
        out.dist_one = distance_to_polyline({1.0, 0.0}, lin.boundary()) / diam;
        out.dist_c = distance_to_polyline(c, lin.boundary()) / diam;
        const bool one_on = out.dist_one < tol;
        const bool c_on = out.dist_c < tol;
        if (one_on && c_on)
            out.verdict = BoundaryCrit::Both;
        else if (one_on)
            out.verdict = BoundaryCrit::OnBoundaryOne;
        else if (c_on)
            out.verdict = BoundaryCrit::OnBoundaryC;
        else {
            out.verdict = BoundaryCrit::Unresolved;
            out.diagnostics = "neither critical point within tolerance of the boundary";
        }
    } catch (const std::exception& e) {
        out.verdict = BoundaryCrit::Unresolved;
        out.diagnostics = e.what();
    }
    return out;
}

std::string boundary_json(const LinearizationData& lin) {
    nlohmann::json j;
    nlohmann::json samples = nlohmann::json::array();
    for (Complex b : lin.boundary())
        samples.push_back({b.real(), b.imag()});
    j["boundary"] = std::move(samples);
    Complex p = lin.map().parameter();
    j[lin.map().slice() == Slice::ParamC ? "c" : "a"] = {p.real(), p.imag()};
    j["theta"] = lin.map().rotation().text();
    j["rho"] = lin.conformal_radius();
    j["M"] = lin.series().order();
    j["K"] = static_cast<int>(lin.boundary().size());
    return j.dump(2);
}

} // namespace siegel
