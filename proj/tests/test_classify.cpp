#include <doctest.h>

#include <nlohmann/json.hpp>
#include <numbers>
#include <random>

#include "siegel/classify.hpp"

using namespace siegel;

namespace {

const RotationNumber& golden() {
    static RotationNumber rot = RotationNumber::golden();
    return rot;
}

LinearizationData lin_at(Complex c) {
    LinearizationOptions opts;
    opts.boundary_samples = 4096;
    return LinearizationData::build(CubicSiegelMap::c_plane(c, golden()), opts);
}

} // namespace

TEST_CASE("orbit classification") {
    SUBCASE("free critical orbit of the level-1 center") {
        auto lin = lin_at({3.0, 0.0});
        PointClass pc = classify_orbit(lin.map(), lin, {3.0, 0.0}, 2000);
        CHECK(pc.tag == PointClass::Tag::CaptureSiegel);
        CHECK(pc.step == 1);
    }
    SUBCASE("points already inside classify as level 0") {
        auto lin = lin_at({3.0, 0.0});
        PointClass pc = classify_orbit(lin.map(), lin, {0.0, 0.0}, 100);
        CHECK(pc.tag == PointClass::Tag::CaptureSiegel);
        CHECK(pc.step == 0);
    }
    SUBCASE("escape far outside the connectedness annulus") {
        auto lin = lin_at({100.0, 0.0});
        PointClass pc = classify_orbit(lin.map(), lin, {100.0, 0.0}, 2000);
        CHECK(pc.tag == PointClass::Tag::Escapes);
        CHECK(pc.step <= 50);
    }
    SUBCASE("attracting fixed point is reported as a cycle") {
        Complex c{7.2857142857142856, -4.2857142857142856};
        auto lin = lin_at(c);
        PointClass pc = classify_orbit(lin.map(), lin, c, 4000);
        CHECK(pc.tag == PointClass::Tag::AttractedCycle);
        CHECK(pc.period == 1);
        CHECK(pc.multiplier_modulus < 0.99);
    }
    SUBCASE("json tags") {
        PointClass pc;
        pc.tag = PointClass::Tag::Escapes;
        pc.step = 12;
        auto j = nlohmann::json::parse(pc.json());
        CHECK(j["tag"] == "escape");
        pc.tag = PointClass::Tag::CaptureSiegel;
        CHECK(nlohmann::json::parse(pc.json())["tag"] == "capture");
        pc.tag = PointClass::Tag::AttractedCycle;
        CHECK(nlohmann::json::parse(pc.json())["tag"] == "cycle");
        pc.tag = PointClass::Tag::Unresolved;
        CHECK(nlohmann::json::parse(pc.json())["tag"] == "unresolved");
    }
}

TEST_CASE("parameter classification") {
    SUBCASE("c = 3") {
        ParamClass pc = classify_parameter_c({3.0, 0.0}, golden());
        CHECK(pc.verdict.verdict == BoundaryCrit::OnBoundaryOne);
        CHECK(pc.free_orbit.tag == PointClass::Tag::CaptureSiegel);
        CHECK(pc.free_orbit.step == 1);
        CHECK(pc.in_capture_set());
    }
    SUBCASE("c = 1 sits on the Zakeri curve: no captured orbit") {
        ParamClass pc = classify_parameter_c({1.0, 0.0}, golden());
        CHECK(pc.verdict.verdict == BoundaryCrit::Both);
        CHECK_FALSE(pc.in_capture_set());
    }
    SUBCASE("c = 1/3 mirrors c = 3") {
        ParamClass pc = classify_parameter_c({1.0 / 3.0, 0.0}, golden());
        CHECK(pc.verdict.verdict == BoundaryCrit::OnBoundaryC);
        CHECK(pc.free_orbit.tag == PointClass::Tag::CaptureSiegel);
        CHECK(pc.free_orbit.step == 1);
    }
}

TEST_CASE("capture_level") {
    CHECK(capture_level({3.0, 0.0}, golden()) == 1);
    CHECK(capture_level({5.170941966111921, -1.163071996806055}, golden()) == 2);
    CHECK_FALSE(capture_level({1.0, 0.0}, golden()).has_value());
}

TEST_CASE("budget growth never flips a resolved verdict") {
    for (Complex c : {Complex{3.0, 0.0}, Complex{100.0, 0.0},
                      Complex{7.2857142857142856, -4.2857142857142856}}) {
        ClassifyBudgets small;
        small.n_max = 2000;
        ClassifyBudgets big;
        big.n_max = 6000;
        ParamClass a = classify_parameter_c(c, golden(), small);
        ParamClass b = classify_parameter_c(c, golden(), big);
        if (a.free_orbit.tag != PointClass::Tag::Unresolved) {
            CHECK(a.free_orbit.tag == b.free_orbit.tag);
            CHECK(a.free_orbit.step == b.free_orbit.step);
        }
        if (a.other_orbit.tag != PointClass::Tag::Unresolved)
            CHECK(a.other_orbit.tag == b.other_orbit.tag);
    }
}

TEST_CASE("classification symmetry under c -> 1/c on a sample") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int agree = 0, resolved = 0;
    for (int k = 0; k < 40; ++k) {
        Complex c = std::polar(std::exp((u(rng) - 0.5) * 2.0 * std::log(8.0)),
                               2.0 * std::numbers::pi * u(rng));
        ParamClass pa = classify_parameter_c(c, golden());
        ParamClass pb = classify_parameter_c(1.0 / c, golden());
        auto cls = [](const ParamClass& p) -> int {
            if (p.in_capture_set()) return 0;
            if (p.free_orbit.tag == PointClass::Tag::AttractedCycle ||
                p.other_orbit.tag == PointClass::Tag::AttractedCycle)
                return 1;
            if (p.free_orbit.tag == PointClass::Tag::Escapes ||
                p.other_orbit.tag == PointClass::Tag::Escapes)
                return 2;
            return 3;
        };
        if (cls(pa) == 3 || cls(pb) == 3) continue;
        ++resolved;
        agree += (cls(pa) == cls(pb));
    }
    REQUIRE(resolved >= 25);
    CHECK(static_cast<double>(agree) / resolved >= 0.95);
}
