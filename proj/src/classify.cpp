#include "siegel/classify.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "siegel/polyline.hpp"

namespace siegel {

namespace {

// Verify a near-return of length p starting from z: confirm the loop closes,
// find the minimal period within it, and measure the cycle multiplier.
std::optional<PointClass> confirm_cycle(const CubicSiegelMap& map, Complex z,
                                        int p, const ClassifyBudgets& budgets) {
    std::vector<Complex> loop;
    loop.reserve(static_cast<std::size_t>(p) + 1);
    Complex w = z;
    for (int k = 0; k <= p; ++k) {
        loop.push_back(w);
        w = map.evaluate(w);
        if (!is_finite(w)) return std::nullopt;
    }
    const double tol = budgets.cycle_distance * (1.0 + std::abs(z));
    if (std::abs(loop[static_cast<std::size_t>(p)] - loop[0]) > tol)
        return std::nullopt;
    int period = p;
    for (int q = 1; q < p; ++q) {
        if (std::abs(loop[static_cast<std::size_t>(q)] - loop[0]) < tol) {
            period = q;
            break;
        }
    }
    Complex mult{1.0, 0.0};
    for (int k = 0; k < period; ++k)
        mult *= map.derivative(loop[static_cast<std::size_t>(k)]);
    double mod = std::abs(mult);
    if (!(mod < budgets.cycle_modulus)) return std::nullopt;
    PointClass out;
    out.tag = PointClass::Tag::AttractedCycle;
    out.period = period;
    out.multiplier_modulus = mod;
    return out;
}

} // namespace

std::string PointClass::json() const {
    nlohmann::json j;
    switch (tag) {
        case Tag::Escapes:
            j["tag"] = "escape";
            j["step"] = step;
            break;
        case Tag::CaptureSiegel:
            j["tag"] = "capture";
            j["level"] = step;
            break;
        case Tag::AttractedCycle:
            j["tag"] = "cycle";
            j["period"] = period;
            j["multiplier_modulus"] = multiplier_modulus;
            break;
        case Tag::Unresolved:
            j["tag"] = "unresolved";
            j["budget"] = step;
            break;
    }
    return j.dump();
}

PointClass classify_orbit(const CubicSiegelMap& map, const LinearizationData& lin,
                          Complex z0, int n_max, const ClassifyBudgets& budgets) {
    PointClass out;
    if (lin.membership(z0) == InteriorVerdict::Inside) {
        out.tag = PointClass::Tag::CaptureSiegel;
        out.step = 0;
        return out;
    }
    Complex z = z0;
    Complex tortoise = z0;
    int power = 1;
    int gap = 0;
    for (int n = 1; n <= n_max; ++n) {
        z = map.evaluate(z);
        if (!is_finite(z) || std::abs(z) > budgets.escape_radius) {
            out.tag = PointClass::Tag::Escapes;
            out.step = n;
            out.escape_modulus = is_finite(z) ? std::abs(z) : budgets.escape_radius;
            return out;
        }
        if (lin.membership(z) == InteriorVerdict::Inside) {
            out.tag = PointClass::Tag::CaptureSiegel;
            out.step = n; // first Inside index: the capture level
            return out;
        }
        ++gap;
        if (std::abs(z - tortoise) < budgets.cycle_distance * (1.0 + std::abs(z))) {
            if (auto cyc = confirm_cycle(map, z, gap, budgets)) return *cyc;
        }
        if (gap == power) {
            tortoise = z;
            power *= 2;
            gap = 0;
        }
    }
    out.tag = PointClass::Tag::Unresolved;
    out.step = n_max;
    return out;
}

ParamClass classify_parameter_c(Complex c, const RotationNumber& rot,
                                const ClassifyBudgets& budgets) {
    ParamClass out;
    out.free_orbit.tag = PointClass::Tag::Unresolved;
    out.other_orbit.tag = PointClass::Tag::Unresolved;
    std::optional<LinearizationData> lin;
    try {
        lin = LinearizationData::build(CubicSiegelMap::c_plane(c, rot), budgets.lin);
    } catch (const std::exception& e) {
        out.verdict.verdict = BoundaryCrit::Unresolved;
        out.verdict.diagnostics = e.what();
        return out;
    }
    const double diam = lin->boundary_diameter();
    out.verdict.dist_one = distance_to_polyline({1.0, 0.0}, lin->boundary()) / diam;
    out.verdict.dist_c = distance_to_polyline(c, lin->boundary()) / diam;
    const bool one_on = out.verdict.dist_one < budgets.verdict_tol;
    const bool c_on = out.verdict.dist_c < budgets.verdict_tol;
    if (one_on && c_on)
        out.verdict.verdict = BoundaryCrit::Both;
    else if (one_on)
        out.verdict.verdict = BoundaryCrit::OnBoundaryOne;
    else if (c_on)
        out.verdict.verdict = BoundaryCrit::OnBoundaryC;
    else {
        out.verdict.verdict = BoundaryCrit::Unresolved;
        out.verdict.diagnostics = "neither critical point within tolerance";
    }

    // free critical point: c outside the Zakeri curve, 1 inside
    Complex free_crit = c;
    Complex other_crit = {1.0, 0.0};
    if (out.verdict.verdict == BoundaryCrit::OnBoundaryC) std::swap(free_crit, other_crit);
    out.free_orbit = classify_orbit(lin->map(), *lin, free_crit, budgets.n_max, budgets);
    out.other_orbit = classify_orbit(lin->map(), *lin, other_crit, budgets.n_max, budgets);
    return out;
}

std::string ParamClass::json() const {
    nlohmann::json j;
    const char* v = "unresolved";
    switch (verdict.verdict) {
        case BoundaryCrit::OnBoundaryOne: v = "on_boundary_one"; break;
        case BoundaryCrit::OnBoundaryC: v = "on_boundary_c"; break;
        case BoundaryCrit::Both: v = "both"; break;
        case BoundaryCrit::Unresolved: v = "unresolved"; break;
    }
    j["boundary_verdict"] = v;
    j["dist_one"] = verdict.dist_one;
    j["dist_c"] = verdict.dist_c;
    j["free_orbit"] = nlohmann::json::parse(free_orbit.json());
    j["other_orbit"] = nlohmann::json::parse(other_orbit.json());
    j["capture_set"] = in_capture_set();
    return j.dump();
}

std::optional<int> capture_level(Complex c, const RotationNumber& rot, int n_max,
                                 const ClassifyBudgets& budgets) {
    ClassifyBudgets b = budgets;
    b.n_max = n_max;
    ParamClass pc = classify_parameter_c(c, rot, b);
    if (pc.verdict.verdict == BoundaryCrit::Both) return std::nullopt;
    if (pc.free_orbit.is_capture()) return pc.free_orbit.step;
    if (pc.verdict.verdict == BoundaryCrit::Unresolved && pc.other_orbit.is_capture())
        return pc.other_orbit.step;
    return std::nullopt;
}

} // namespace siegel
