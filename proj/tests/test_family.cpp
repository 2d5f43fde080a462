#include <doctest.h>

#include <cmath>
#include <random>

#include "siegel/family.hpp"

using namespace siegel;

TEST_CASE("rotation number parsing") {
    SUBCASE("golden mean") {
        RotationNumber r = RotationNumber::parse("golden");
        CHECK(r.value() == doctest::Approx(0.6180339887).epsilon(1e-10));
        CHECK(r.period() == std::vector<int>{1});
        CHECK(std::abs(std::abs(r.multiplier()) - 1.0) < 1e-15);
    }
    SUBCASE("period [2] gives sqrt(2) - 1") {
        RotationNumber r = RotationNumber::parse("[0;(2)]");
        CHECK(r.value() == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-10));
    }
    SUBCASE("preperiod plus period") {
        RotationNumber r = RotationNumber::parse("[0;2,1,(1,3)]");
        CHECK(r.preperiod() == std::vector<int>{2, 1});
        CHECK(r.period() == std::vector<int>{1, 3});
        CHECK(r.value() > 0.0);
        CHECK(r.value() < 1.0);
        CHECK(RotationNumber::parse(r.text()).value() == r.value());
    }
    SUBCASE("invalid quotients and decimals rejected") {
        CHECK_THROWS(RotationNumber::parse("[0;1,0]"));
        CHECK_THROWS(RotationNumber::parse("[0;(0)]"));
        CHECK_THROWS(RotationNumber::parse("0.6180339887"));
        CHECK_THROWS(RotationNumber::parse("[0;1,2]")); // no periodic block
        CHECK_THROWS(RotationNumber::parse("[0;(-3)]"));
    }
}

TEST_CASE("map evaluation") {
    RotationNumber rot = RotationNumber::golden();
    Complex lam = rot.multiplier();
    SUBCASE("origin is fixed") {
        for (Complex c : {Complex{3.0, 0.0}, Complex{0.5, 0.5}, Complex{-2.0, 1.0}}) {
            auto map = CubicSiegelMap::c_plane(c, rot);
            CHECK(std::abs(map.evaluate({0.0, 0.0})) == 0.0);
        }
    }
    SUBCASE("P_3(3) = 0") {
        auto map = CubicSiegelMap::c_plane({3.0, 0.0}, rot);
        CHECK(std::abs(map.evaluate({3.0, 0.0})) < 1e-14);
    }
    SUBCASE("P_c(1) = lam (3c-1)/(6c) at c = 2") {
        auto map = CubicSiegelMap::c_plane({2.0, 0.0}, rot);
        CHECK(std::abs(map.evaluate({1.0, 0.0}) - lam * 5.0 / 12.0) < 1e-15);
    }
    SUBCASE("c = 0 rejected") {
        CHECK_THROWS(CubicSiegelMap::c_plane({0.0, 0.0}, rot));
    }
}

TEST_CASE("map derivative") {
    RotationNumber rot = RotationNumber::golden();
    Complex lam = rot.multiplier();
    SUBCASE("multiplier at the fixed point") {
        auto map = CubicSiegelMap::c_plane({1.7, -0.4}, rot);
        CHECK(std::abs(map.derivative({0.0, 0.0}) - lam) < 1e-15);
    }
    SUBCASE("critical points 1 and c") {
        Complex c{2.0, 1.0};
        auto map = CubicSiegelMap::c_plane(c, rot);
        CHECK(std::abs(map.derivative({1.0, 0.0})) < 1e-13);
        CHECK(std::abs(map.derivative(c)) < 1e-13);
        CHECK(map.critical_points()[0] == Complex{1.0, 0.0});
        CHECK(map.critical_points()[1] == c);
    }
    SUBCASE("a-plane critical points multiply to lam/3") {
        auto map = CubicSiegelMap::a_plane({0.7, -1.1}, rot);
        Complex prod = map.critical_points()[0] * map.critical_points()[1];
        CHECK(std::abs(prod - lam / 3.0) < 1e-13);
        CHECK(std::abs(map.derivative(map.critical_points()[0])) < 1e-12);
        CHECK(std::abs(map.derivative(map.critical_points()[1])) < 1e-12);
    }
    SUBCASE("factored form lam (z-1)(z-c)/c matches the expanded derivative") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int k = 0; k < 1000; ++k) {
            Complex c{u(rng), u(rng)};
            if (std::abs(c) < 0.05) continue;
            Complex z{u(rng), u(rng)};
            auto map = CubicSiegelMap::c_plane(c, rot);
            Complex factored = lam * (z - 1.0) * (z - c) / c;
            CHECK(std::abs(map.derivative(z) - factored) <
                  1e-12 * (1.0 + std::abs(factored)));
        }
    }
}

TEST_CASE("eta and the a <-> c relation") {
    RotationNumber rot = RotationNumber::golden();
    Complex lam = rot.multiplier();
    SUBCASE("arc endpoints") {
        CHECK(std::abs(eta({1.0, 0.0}, rot) - 3.0 * lam) < 1e-12);
        CHECK(std::abs(eta({-1.0, 0.0}, rot)) < 1e-12);
        CHECK_THROWS(eta({0.0, 0.0}, rot));
    }
    SUBCASE("eta(c) = eta(1/c)") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int k = 0; k < 100; ++k) {
            Complex c{u(rng), u(rng)};
            if (std::abs(c) < 0.05) continue;
            CHECK(std::abs(eta(c, rot) - eta(1.0 / c, rot)) < 1e-12);
        }
    }
    SUBCASE("a^2 = 3 lam gives the double root c = 1") {
        Complex a = std::sqrt(3.0 * lam);
        auto [c0, c1] = a_to_c(a, rot);
        CHECK(std::abs(c0 - Complex{1.0, 0.0}) < 1e-7);
        CHECK(std::abs(c1 - Complex{1.0, 0.0}) < 1e-7);
    }
    SUBCASE("a = 0 gives c = -1 twice") {
        auto [c0, c1] = a_to_c({0.0, 0.0}, rot);
        CHECK(std::abs(c0 + 1.0) < 1e-7);
        CHECK(std::abs(c1 + 1.0) < 1e-7);
    }
    SUBCASE("pair multiplies to 1 and matches eta") {
        std::mt19937 rng(13);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int k = 0; k < 200; ++k) {
            Complex a{u(rng), u(rng)};
            auto [c0, c1] = a_to_c(a, rot);
            CHECK(std::abs(c0 * c1 - 1.0) < 1e-10);
            CHECK(std::abs(eta(c0, rot) - a * a) < 1e-10 * (1.0 + std::norm(a)));
        }
    }
}

TEST_CASE("conjugacy witness") {
    RotationNumber rot = RotationNumber::golden();
    Complex lam = rot.multiplier();
    SUBCASE("f_a(u z) = u P_c(z) at c = 3") {
        Complex c{3.0, 0.0};
        auto [u, a] = conjugacy_witness(c, rot);
        auto pc = CubicSiegelMap::c_plane(c, rot);
        auto fa = CubicSiegelMap::a_plane(a, rot);
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> d(-2.0, 2.0);
        for (int k = 0; k < 100; ++k) {
            Complex z{d(rng), d(rng)};
            CHECK(std::abs(fa.evaluate(u * z) - u * pc.evaluate(z)) < 1e-11);
        }
    }
    SUBCASE("a^2 = eta(c) at c = 0.5 + 0.5i") {
        Complex c{0.5, 0.5};
        auto [u, a] = conjugacy_witness(c, rot);
        CHECK(std::abs(a * a - eta(c, rot)) < 1e-12);
        CHECK(std::abs(u * u - lam / (3.0 * c)) < 1e-14);
    }
    SUBCASE("c = 1 endpoint gives a^2 = 3 lam") {
        auto [u, a] = conjugacy_witness({1.0, 0.0}, rot);
        CHECK(std::abs(a * a - 3.0 * lam) < 1e-12);
    }
}

TEST_CASE("orbit iteration") {
    RotationNumber rot = RotationNumber::golden();
    SUBCASE("fixed origin never escapes") {
        auto map = CubicSiegelMap::c_plane({2.0, 0.3}, rot);
        OrbitBuffer orbit = iterate_orbit(map, {0.0, 0.0}, 100);
        CHECK_FALSE(orbit.escaped);
        CHECK(orbit.points.size() == 101);
        for (Complex z : orbit.points) CHECK(std::abs(z) == 0.0);
    }
    SUBCASE("level-1 center maps c to 0 in one step") {
        auto map = CubicSiegelMap::c_plane({3.0, 0.0}, rot);
        OrbitBuffer orbit = iterate_orbit(map, {3.0, 0.0}, 10);
        CHECK(std::abs(orbit.points[1]) < 1e-13);
        CHECK(std::abs(orbit.points[5]) < 1e-13);
    }
    SUBCASE("c = 100 escapes fast") {
        auto map = CubicSiegelMap::c_plane({100.0, 0.0}, rot);
        OrbitBuffer orbit = iterate_orbit(map, {100.0, 0.0}, 50, 1e4);
        CHECK(orbit.escaped);
        CHECK(orbit.escape_step <= 50);
    }
    SUBCASE("consecutive points satisfy the recurrence") {
        auto map = CubicSiegelMap::c_plane({1.2, 0.7}, rot);
        OrbitBuffer orbit = iterate_orbit(map, {0.3, -0.2}, 40);
        for (std::size_t k = 0; k + 1 < orbit.points.size(); ++k)
            CHECK(std::abs(map.evaluate(orbit.points[k]) - orbit.points[k + 1]) == 0.0);
    }
}
