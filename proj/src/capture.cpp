#include "siegel/capture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "siegel/polyline.hpp"
#include "siegel/thread_pool.hpp"

namespace siegel {

namespace {

constexpr double kMatchDistance = 1e-7;
constexpr double kSimplicityFloor = 1e-6;
constexpr double kAnnulusInner = 1.0 / 30.0;
constexpr double kAnnulusOuter = 30.0;

int expected_degree(int ell) {
    int d = 0;
    for (int k = 0; k < ell; ++k) d = 3 * d + 1;
    return d; // (3^ell - 1)/2
}

} // namespace

CapturePolynomialTower CapturePolynomialTower::build(const RotationNumber& rot, int L) {
    if (L < 1 || L > 6)
        throw std::invalid_argument("capture tower supports levels 1..6");
    CapturePolynomialTower tower(rot);
    const Complex lam = rot.multiplier();
    ComplexPolynomial g(std::vector<Complex>{lam / 2.0, -lam / 6.0});
    tower.polys_.push_back(g);
    const ComplexPolynomial one = ComplexPolynomial::constant({1.0, 0.0});
    const ComplexPolynomial one_plus_c(std::vector<Complex>{{1.0, 0.0}, {1.0, 0.0}});
    const ComplexPolynomial c_poly(std::vector<Complex>{{0.0, 0.0}, {1.0, 0.0}});
    for (int ell = 2; ell <= L; ++ell) {
        ComplexPolynomial inner =
            one + (one_plus_c * g).scaled({-0.5, 0.0}) +
            (c_poly * g * g).scaled(Complex{1.0, 0.0} / 3.0);
        g = (g * inner).scaled(lam);
        if (g.degree() != expected_degree(ell))
            throw std::runtime_error("internal error: tower degree mismatch at level " +
                                     std::to_string(ell));
        tower.polys_.push_back(g);
    }
    return tower;
}

const ComplexPolynomial& CapturePolynomialTower::poly(int ell) const {
    if (ell < 1 || ell > levels())
        throw std::invalid_argument("tower level out of range");
    return polys_[static_cast<std::size_t>(ell - 1)];
}

std::pair<Complex, Complex> CapturePolynomialTower::eval_level(int ell, Complex c) const {
    if (ell < 1 || ell > levels())
        throw std::invalid_argument("tower level out of range");
    const Complex lam = rot_.multiplier();
    Complex g = lam * (3.0 - c) / 6.0;
    Complex dg = -lam / 6.0;
    for (int k = 1; k < ell; ++k) {
        Complex inner = 1.0 - (1.0 + c) * g / 2.0 + (c / 3.0) * g * g;
        Complex dinner = -g / 2.0 - (1.0 + c) * dg / 2.0 + g * g / 3.0 +
                         (2.0 * c / 3.0) * g * dg;
        Complex gn = lam * g * inner;
        Complex dgn = lam * (dg * inner + g * dinner);
        g = gn;
        dg = dgn;
    }
    return {g, dg};
}

CenterCensus capture_centers(const RotationNumber& rot, int L) {
    CenterCensus census{CapturePolynomialTower::build(rot, L), {}, };
    std::vector<Complex> known;
    for (int ell = 1; ell <= L; ++ell) {
        const ComplexPolynomial& expanded = census.tower.poly(ell);
        PolyEval eval = [&census, ell](Complex c) {
            return census.tower.eval_level(ell, c);
        };
        RootReport report =
            solve_simultaneous(expanded.degree(), eval, root_start_radius(expanded), 1e-9);

        std::vector<Complex> distinct;
        for (const RootRecord& r : report.roots) {
            bool dup = false;
            for (Complex d : distinct)
                if (std::abs(r.root - d) < kMatchDistance) dup = true;
            if (!dup) distinct.push_back(r.root);
        }
        if (static_cast<int>(distinct.size()) != expanded.degree())
            throw std::runtime_error("root cluster at level " + std::to_string(ell) +
                                     ": expected " + std::to_string(expanded.degree()) +
                                     " simple roots, found " +
                                     std::to_string(distinct.size()));
        std::vector<CenterRecord> fresh;
        for (Complex r : distinct) {
            auto [g, dg] = census.tower.eval_level(ell, r);
            if (std::abs(dg) <= kSimplicityFloor)
                throw std::runtime_error("non-simple census root at level " +
                                         std::to_string(ell));
            bool inherited = false;
            for (Complex k : known)
                if (std::abs(r - k) < kMatchDistance) inherited = true;
            if (inherited) continue;
            double mod = std::abs(r);
            if (!(mod > kAnnulusInner && mod < kAnnulusOuter))
                throw std::runtime_error("census center outside the annulus at level " +
                                         std::to_string(ell));
            fresh.push_back(CenterRecord{r, ell, std::abs(g), std::abs(dg)});
        }
        int expected = 1;
        for (int k = 1; k < ell; ++k) expected *= 3;
        if (static_cast<int>(fresh.size()) != expected)
            throw std::runtime_error(
                "census count mismatch at level " + std::to_string(ell) + ": got " +
                std::to_string(fresh.size()) + ", expected " + std::to_string(expected));
        std::sort(fresh.begin(), fresh.end(), [](const CenterRecord& a, const CenterRecord& b) {
            return std::arg(a.c) < std::arg(b.c);
        });
        for (const CenterRecord& r : fresh) known.push_back(r.c);
        census.levels.push_back(std::move(fresh));
    }
    return census;
}

std::string CenterCensus::csv() const {
    std::ostringstream out;
    out << "level,re,im,residual,derivative_magnitude\n";
    out.precision(15);
    for (const auto& lv : levels)
        for (const CenterRecord& r : lv)
            out << r.level << ',' << r.c.real() << ',' << r.c.imag() << ','
                << r.residual << ',' << r.derivative_magnitude << '\n';
    return out.str();
}

Complex param_map_phi(Complex c, int level, const RotationNumber& rot,
                      int series_terms) {
    if (level < 1) throw std::invalid_argument("capture level must be >= 1");
    CubicSiegelMap map = CubicSiegelMap::c_plane(c, rot);
    LinearizationOptions opts;
    opts.series_terms = series_terms;
    opts.boundary_samples = 64;
    LinearizationData lin = LinearizationData::build(map, opts);
    Complex z = c;
    for (int k = 0; k < level; ++k) z = map.evaluate(z);
    auto w = lin.invert(z);
    if (!w || !lin.critical_preimage())
        throw std::runtime_error("orbit not captured at level " + std::to_string(level));
    return *w / *lin.critical_preimage();
}

namespace {

class PhiEvaluator {
  public:
    PhiEvaluator(int level, const RotationNumber& rot, int series_terms)
        : level_(level), rot_(rot) {
        opts_.series_terms = series_terms;
        opts_.boundary_samples = 64;
    }

    std::optional<Complex> operator()(Complex c) const {
        try {
            CubicSiegelMap map = CubicSiegelMap::c_plane(c, rot_);
            LinearizationData lin = LinearizationData::build(map, opts_);
            if (!lin.critical_preimage()) return std::nullopt;
            Complex z = c;
            for (int k = 0; k < level_; ++k) z = map.evaluate(z);
            auto w = lin.invert(z);
            if (!w) return std::nullopt;
            return *w / *lin.critical_preimage();
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

  private:
    int level_;
    RotationNumber rot_;
    LinearizationOptions opts_;
};

// Newton corrector for Phi(c) = target with centered finite differences.
std::optional<Complex> solve_phi(const PhiEvaluator& phi, Complex c0, Complex target,
                                 const TraceOptions& opts) {
    Complex c = c0;
    for (int it = 0; it < opts.newton_budget; ++it) {
        auto val = phi(c);
        if (!val) return std::nullopt;
        Complex f = *val - target;
        if (std::abs(f) < opts.newton_tol) return c;
        double h = opts.fd_scale * (1.0 + std::abs(c));
        auto vp = phi(c + Complex{h, 0.0});
        auto vm = phi(c - Complex{h, 0.0});
        if (!vp || !vm) return std::nullopt;
        Complex df = (*vp - *vm) / (2.0 * h);
        if (df == Complex{0.0, 0.0}) return std::nullopt;
        Complex step = f / df;
        double cap = 0.5 * (1.0 + std::abs(c));
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        c -= step;
        if (!is_finite(c)) return std::nullopt;
    }
    auto val = phi(c);
    if (val && std::abs(*val - target) < 10.0 * opts.newton_tol) return c;
    return std::nullopt;
}

std::vector<double> station_radii(double r_stop) {
    std::vector<double> rs;
    for (double r : {0.98, 0.99})
        if (r < r_stop) rs.push_back(r);
    rs.push_back(r_stop);
    return rs;
}

// Polynomial extrapolation of c(r) to r = 1 through the station values.
Complex extrapolate_landing(const std::vector<std::pair<double, Complex>>& st) {
    const std::size_t n = st.size();
    if (n == 0) return {0.0, 0.0};
    if (n == 1) return st[0].second;
    Complex out{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        double hi = 1.0 - st[i].first;
        double w = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double hj = 1.0 - st[j].first;
            w *= hj / (hj - hi);
        }
        out += w * st[i].second;
    }
    return out;
}

} // namespace

RayPath trace_parameter_ray(Complex center, int level, double t, double r_stop,
                            const RotationNumber& rot, const TraceOptions& opts) {
    if (r_stop >= 1.0 || r_stop <= 0.0)
        throw std::invalid_argument("r_stop must lie in (0, 1)");
    RayPath path;
    path.angle = t;
    PhiEvaluator phi(level, rot, opts.series_terms);
    const Complex dir = std::polar(1.0, 2.0 * std::numbers::pi * t);

    std::vector<double> mandatory = station_radii(r_stop);
    Complex c = center;
    double r = 0.0;
    double dr = opts.r_step;
    std::size_t next_station = 0;
    double target_r = opts.r_start;
    while (true) {
        // keep mandatory stations exact
        if (next_station < mandatory.size() &&
            target_r >= mandatory[next_station] - 1e-12)
            target_r = mandatory[next_station];
        auto sol = solve_phi(phi, c, target_r * dir, opts);
        if (!sol) {
            dr *= 0.5;
            if (dr < opts.r_step_floor) {
                path.ok = false;
                path.last_good_r = r;
                path.error = "corrector diverged at r = " + std::to_string(target_r);
                return path;
            }
            target_r = std::min(r + dr, r_stop);
            continue;
        }
        c = *sol;
        r = target_r;
        path.stations.emplace_back(r, c);
        if (next_station < mandatory.size() && r == mandatory[next_station])
            ++next_station;
        if (r >= r_stop) break;
        dr = std::min(dr * 1.5, opts.r_step);
        target_r = std::min(r + dr, r_stop);
    }
    std::vector<std::pair<double, Complex>> st;
    for (double rs : station_radii(r_stop))
        for (const auto& [rr, cc] : path.stations)
            if (rr == rs) st.emplace_back(rr, cc);
    path.landing = extrapolate_landing(st);
    path.ok = true;
    path.last_good_r = r;
    return path;
}

ComponentTrace trace_component_boundary(Complex center, int level, int K,
                                        double r_stop, const RotationNumber& rot,
                                        const TraceOptions& opts) {
    if (K < 64) throw std::invalid_argument("component trace needs K >= 64 rays");
    ComponentTrace trace;
    trace.center = center;
    trace.level = level;
    PhiEvaluator phi(level, rot, opts.series_terms);
    const std::vector<double> radii = station_radii(r_stop);

    RayPath first = trace_parameter_ray(center, level, 0.0, r_stop, rot, opts);
    if (!first.ok)
        throw std::runtime_error("component trace failed on the first ray: " +
                                 first.error);
    std::vector<std::pair<double, Complex>> prev;
    for (double rs : radii)
        for (const auto& [rr, cc] : first.stations)
            if (rr == rs) prev.emplace_back(rr, cc);

    trace.angles.push_back(0.0);
    trace.landings.push_back(first.landing);
    Complex landing_at_zero = first.landing;

    for (int k = 1; k <= K; ++k) {
        double t = static_cast<double>(k) / K;
        Complex dir = std::polar(1.0, 2.0 * std::numbers::pi * t);
        std::vector<std::pair<double, Complex>> cur;
        bool ok = true;
        for (std::size_t s = 0; s < radii.size(); ++s) {
            auto sol = solve_phi(phi, prev[s].second, radii[s] * dir, opts);
            if (!sol) {
                ok = false;
                break;
            }
            cur.emplace_back(radii[s], *sol);
        }
        if (!ok) {
            // cold restart from the center
            RayPath retry = trace_parameter_ray(center, level, t, r_stop, rot, opts);
            if (retry.ok) {
                cur.clear();
                for (double rs : radii)
                    for (const auto& [rr, cc] : retry.stations)
                        if (rr == rs) cur.emplace_back(rr, cc);
                ok = true;
            }
        }
        if (!ok) {
            ++trace.failed_rays;
            continue;
        }
        prev = cur;
        Complex landing = extrapolate_landing(cur);
        if (k < K) {
            trace.angles.push_back(t);
            trace.landings.push_back(landing);
        } else {
            trace.closure_gap = std::abs(landing - landing_at_zero);
        }
    }
    if (trace.failed_rays * 20 > K)
        throw std::runtime_error("more than 5% of rays failed (" +
                                 std::to_string(trace.failed_rays) + " of " +
                                 std::to_string(K) + ")");
    trace.simple = polyline_is_simple(trace.landings);
    trace.winding = winding_number(trace.landings, center);
    trace.turning_constant = bounded_turning_constant(trace.landings);
    trace.diameter = polyline_diameter(trace.landings);
    return trace;
}

std::string ComponentTrace::json() const {
    nlohmann::json j;
    j["center"] = {center.real(), center.imag()};
    j["level"] = level;
    j["angles"] = angles;
    nlohmann::json pts = nlohmann::json::array();
    for (Complex c : landings) pts.push_back({c.real(), c.imag()});
    j["landings"] = std::move(pts);
    j["closure_gap"] = closure_gap;
    j["turning_constant"] = turning_constant;
    j["simple"] = simple;
    j["winding"] = winding;
    j["diameter"] = diameter;
    j["failed_rays"] = failed_rays;
    return j.dump(2);
}

double quasicircle_diagnostic(std::span<const Complex> polyline) {
    return bounded_turning_constant(polyline);
}

ZakeriTrace trace_zakeri(const RotationNumber& rot, int N, int series_terms,
                         int boundary_samples, double tol, int threads) {
    if (N < 32) throw std::invalid_argument("zakeri trace needs N >= 32 directions");
    LinearizationOptions opts;
    opts.series_terms = series_terms;
    opts.boundary_samples = boundary_samples;

    struct Probe {
        int verdict; // 0 unresolved, 1 one, 2 c, 3 both
        double lean; // dist_one - dist_c (fractions of diameter)
    };
    auto probe = [&](Complex c) -> std::optional<Probe> {
        try {
            auto lin = LinearizationData::build(CubicSiegelMap::c_plane(c, rot), opts);
            double diam = lin.boundary_diameter();
            double d1 = distance_to_polyline({1.0, 0.0}, lin.boundary()) / diam;
            double dc = distance_to_polyline(c, lin.boundary()) / diam;
            Probe p{0, d1 - dc};
            bool one_on = d1 < tol, c_on = dc < tol;
            p.verdict = one_on && c_on ? 3 : one_on ? 1 : c_on ? 2 : 0;
            return p;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };

    std::vector<std::optional<Complex>> hits(static_cast<std::size_t>(N));
    parallel_for(N, threads, [&](int k) {
        const Complex dir =
            std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / N);
        // scan for a (inner: c-side) -> (outer: 1-side) bracket in log radius
        const double lo0 = std::log(0.45), hi0 = std::log(2.3);
        const int grid = 7;
        double lo = 0.0, hi = 0.0;
        bool have_lo = false, have_hi = false;
        for (int g = 0; g <= grid && !(have_lo && have_hi); ++g) {
            double s = lo0 + (hi0 - lo0) * g / grid;
            auto p = probe(std::exp(s) * dir);
            if (!p) continue;
            if (p->verdict == 3) {
                hits[static_cast<std::size_t>(k)] = std::exp(s) * dir;
                return;
            }
            if (p->lean > 0 && (!have_lo || s > lo)) {
                lo = s;
                have_lo = true;
            } else if (p->lean <= 0 && !have_hi && have_lo) {
                hi = s;
                have_hi = true;
            }
        }
        if (!(have_lo && have_hi)) return;
        while (hi - lo > 1e-4) {
            double mid = 0.5 * (lo + hi);
            auto p = probe(std::exp(mid) * dir);
            if (!p) break;
            if (p->verdict == 3) {
                hits[static_cast<std::size_t>(k)] = std::exp(mid) * dir;
                return;
            }
            (p->lean > 0 ? lo : hi) = mid;
        }
        hits[static_cast<std::size_t>(k)] = std::exp(0.5 * (lo + hi)) * dir;
    });

    ZakeriTrace out;
    for (int k = 0; k < N; ++k) {
        if (hits[static_cast<std::size_t>(k)])
            out.points.push_back(*hits[static_cast<std::size_t>(k)]);
        else
            out.failed_directions.push_back(k);
    }
    return out;
}

std::string ZakeriTrace::json() const {
    nlohmann::json j;
    nlohmann::json pts = nlohmann::json::array();
    for (Complex c : points) pts.push_back({c.real(), c.imag()});
    j["points"] = std::move(pts);
    j["failed_directions"] = failed_directions;
    return j.dump(2);
}

} // namespace siegel
