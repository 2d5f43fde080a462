#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>

#include "siegel/capture.hpp"
#include "siegel/polyline.hpp"

using namespace siegel;

namespace {

const RotationNumber& golden() {
    static RotationNumber rot = RotationNumber::golden();
    return rot;
}

} // namespace

TEST_CASE("capture polynomial tower") {
    auto tower = CapturePolynomialTower::build(golden(), 5);
    Complex lam = golden().multiplier();
    SUBCASE("G_1 coefficients are [lam/2, -lam/6]") {
        CHECK(std::abs(tower.poly(1).coeff(0) - lam / 2.0) < 1e-15);
        CHECK(std::abs(tower.poly(1).coeff(1) + lam / 6.0) < 1e-15);
    }
    SUBCASE("degrees follow (3^l - 1)/2") {
        int expected[] = {1, 4, 13, 40, 121};
        for (int ell = 1; ell <= 5; ++ell)
            CHECK(tower.poly(ell).degree() == expected[ell - 1]);
    }
    SUBCASE("constant terms follow G_l(0) = lam G_{l-1}(0) (1 - G_{l-1}(0)/2)") {
        Complex g0 = lam / 2.0;
        for (int ell = 2; ell <= 5; ++ell) {
            g0 = lam * g0 * (1.0 - g0 / 2.0);
            CHECK(std::abs(tower.poly(ell).constant_term() - g0) < 1e-12);
        }
        // frozen value at level 4
        CHECK(std::abs(tower.poly(4).constant_term()) ==
              doctest::Approx(0.5635043326549678).epsilon(1e-10));
    }
    SUBCASE("level bounds") {
        CHECK_THROWS(CapturePolynomialTower::build(golden(), 0));
        CHECK_THROWS(CapturePolynomialTower::build(golden(), 7));
        CHECK_THROWS(tower.poly(6));
    }
    SUBCASE("recursive evaluation matches expanded coefficients at moderate c") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int k = 0; k < 50; ++k) {
            Complex c{u(rng), u(rng)};
            for (int ell = 1; ell <= 4; ++ell) {
                auto [g, dg] = tower.eval_level(ell, c);
                CHECK(std::abs(g - tower.poly(ell).eval(c)) <
                      1e-9 * (1.0 + std::abs(g)));
            }
        }
    }
    SUBCASE("c G_l(c) equals the direct orbit iterate P_c^l(c)") {
        // the defining identity of the tower, checked against plain iteration
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(-2.5, 2.5);
        for (int k = 0; k < 60; ++k) {
            Complex c{u(rng), u(rng)};
            if (std::abs(c) < 0.1) continue;
            auto map = CubicSiegelMap::c_plane(c, golden());
            Complex z = c;
            for (int ell = 1; ell <= 5; ++ell) {
                z = map.evaluate(z);
                auto [g, dg] = tower.eval_level(ell, c);
                CHECK(std::abs(c * g - z) < 1e-10 * (1.0 + std::abs(z)));
            }
        }
    }
}

TEST_CASE("capture center census") {
    auto census = capture_centers(golden(), 4);
    SUBCASE("counts are 3^(l-1)") {
        REQUIRE(census.levels.size() == 4);
        CHECK(census.levels[0].size() == 1);
        CHECK(census.levels[1].size() == 3);
        CHECK(census.levels[2].size() == 9);
        CHECK(census.levels[3].size() == 27);
    }
    SUBCASE("level-1 center is exactly 3") {
        CHECK(std::abs(census.levels[0][0].c - Complex{3.0, 0.0}) < 1e-10);
    }
    SUBCASE("level-2 centers match the frozen grid-verified values") {
        const Complex expected[3] = {{5.170941966111921, -1.163071996806055},
                                     {9.338255234736767, -6.052564497633037},
                                     {-1.872877298143792, 1.136223846085372}};
        for (Complex e : expected) {
            double best = 1e9;
            for (const auto& r : census.levels[1]) best = std::min(best, std::abs(r.c - e));
            CHECK(best < 1e-9);
        }
    }
    SUBCASE("residuals, simplicity, annulus") {
        for (const auto& lv : census.levels) {
            for (const auto& r : lv) {
                CHECK(r.residual < 1e-8);
                CHECK(r.derivative_magnitude > 1e-6);
                CHECK(std::abs(r.c) > 1.0 / 30.0);
                CHECK(std::abs(r.c) < 30.0);
            }
        }
    }
    SUBCASE("tower divisibility: roots of G_3 are roots of G_4") {
        for (int ell = 1; ell <= 3; ++ell)
            for (const auto& r : census.levels[static_cast<std::size_t>(ell - 1)]) {
                auto [g, dg] = census.tower.eval_level(4, r.c);
                CHECK(std::abs(g) < 1e-8);
            }
    }
    SUBCASE("identical counts for theta = [0;(2)]") {
        auto census2 = capture_centers(RotationNumber::parse("[0;(2)]"), 4);
        CHECK(census2.levels[0].size() == 1);
        CHECK(census2.levels[1].size() == 3);
        CHECK(census2.levels[2].size() == 9);
        CHECK(census2.levels[3].size() == 27);
    }
    SUBCASE("csv export") {
        std::string csv = census.csv();
        CHECK(csv.find("level,re,im,residual,derivative_magnitude") == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 1 + 3 + 9 + 27);
    }
}

TEST_CASE("census centers classify at their own level") {
    auto census = capture_centers(golden(), 3);
    for (const auto& lv : census.levels)
        for (const auto& r : lv)
            CHECK(capture_level(r.c, golden()) == r.level);
}

TEST_CASE("parameter map Phi") {
    SUBCASE("center maps to 0") {
        CHECK(std::abs(param_map_phi({3.0, 0.0}, 1, golden())) < 1e-8);
    }
    SUBCASE("interior samples stay in the unit disk") {
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int checked = 0;
        for (int k = 0; k < 60 && checked < 50; ++k) {
            Complex c = Complex{3.0, 0.0} +
                        std::polar(0.35 * u(rng), 2.0 * std::numbers::pi * u(rng));
            if (capture_level(c, golden()) != 1) continue;
            ++checked;
            CHECK(std::abs(param_map_phi(c, 1, golden())) < 1.0);
        }
        CHECK(checked >= 50);
    }
    SUBCASE("advancing the orbit one step multiplies Phi by lam") {
        Complex lam = golden().multiplier();
        for (Complex c : {Complex{3.2, 0.1}, Complex{2.9, -0.15}}) {
            REQUIRE(capture_level(c, golden()) == 1);
            Complex p1 = param_map_phi(c, 1, golden());
            Complex p2 = param_map_phi(c, 2, golden());
            CHECK(std::abs(p2 - lam * p1) < 1e-6);
        }
    }
    SUBCASE("uncaptured parameter is an error") {
        CHECK_THROWS(param_map_phi({100.0, 0.0}, 1, golden()));
    }
}

TEST_CASE("parameter ray") {
    RayPath ray = trace_parameter_ray({3.0, 0.0}, 1, 0.25, 0.995, golden());
    REQUIRE(ray.ok);
    SUBCASE("starts at the center and moves continuously") {
        CHECK(std::abs(ray.stations.front().second - Complex{3.0, 0.0}) < 0.2);
        double prev_r = 0.0;
        for (std::size_t k = 0; k < ray.stations.size(); ++k) {
            CHECK(ray.stations[k].first > prev_r);
            prev_r = ray.stations[k].first;
            if (k > 0)
                CHECK(std::abs(ray.stations[k].second - ray.stations[k - 1].second) < 0.5);
        }
    }
    SUBCASE("landing estimate satisfies the boundary-touch relation") {
        Complex cstar = ray.landing;
        auto map = CubicSiegelMap::c_plane(cstar, golden());
        auto lin = LinearizationData::build(map);
        Complex v = map.evaluate(cstar);
        CHECK(distance_to_polyline(v, lin.boundary()) <
              5e-3 * lin.boundary_diameter());
    }
    SUBCASE("r_stop validation") {
        CHECK_THROWS(trace_parameter_ray({3.0, 0.0}, 1, 0.0, 1.5, golden()));
    }
}

TEST_CASE("component boundary trace (smoke, K = 64)") {
    ComponentTrace trace = trace_component_boundary({3.0, 0.0}, 1, 64, 0.995, golden());
    CHECK(trace.failed_rays == 0);
    CHECK(trace.closure_gap < 1e-3 * trace.diameter);
    CHECK(trace.simple);
    CHECK(trace.winding == 1);
    CHECK(trace.turning_constant >= 1.0);
    for (Complex c : trace.landings) {
        CHECK(std::abs(c) > 1.0 / 30.0);
        CHECK(std::abs(c) < 30.0);
    }
    auto j = nlohmann::json::parse(trace.json());
    CHECK(j["landings"].size() == trace.landings.size());
    CHECK(j["closure_gap"].get<double>() == doctest::Approx(trace.closure_gap));
}

TEST_CASE("zakeri trace (smoke, N = 32)") {
    ZakeriTrace trace = trace_zakeri(golden(), 32);
    CHECK(trace.failed_directions.size() <= 2);
    REQUIRE(trace.points.size() >= 30);
    double d_plus = 1e9, d_minus = 1e9;
    for (Complex p : trace.points) {
        d_plus = std::min(d_plus, std::abs(p - 1.0));
        d_minus = std::min(d_minus, std::abs(p + 1.0));
        CHECK(std::abs(p) > 1.0 / 30.0);
        CHECK(std::abs(p) < 30.0);
    }
    CHECK(d_plus < 5e-3);
    CHECK(d_minus < 5e-3);
    CHECK_THROWS(trace_zakeri(golden(), 8));
}
