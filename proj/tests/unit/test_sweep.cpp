#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "polsp/dispersion.hpp"
#include "polsp/errors.hpp"

using namespace polsp;

namespace {

std::vector<double> grid(double a, double b, int n) {
    std::vector<double> q(n);
    for (int i = 0; i < n; ++i) q[i] = a + (b - a) * i / (n - 1);
    return q;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("single wavenumber") {
    const auto v = validate(oracle::cavity(1.0, 0.5, {{5.0, 1.0}}, 6, 2));
    const auto curve = dispersion::sweep(v, {0.5});
    CHECK(static_cast<int>(curve.branches.size()) == v.mode_count());
    for (const auto& b : curve.branches) {
        REQUIRE(b.size() == 1);
        CHECK(b[0].q == 0.5);
    }
    CHECK(curve.photon_modes == 6);
    CHECK(curve.exciton_modes == 2);
    CHECK(curve.species == 1);
}

TEST_CASE("uncoupled branches follow the sorted bare frequencies") {
    const auto v = validate(oracle::cavity(1.0, 0.5, {{5.0, 0.0}}, 4, 1));
    const auto q = grid(0.0, 6.0, 25);
    const auto curve = dispersion::sweep(v, q);
    REQUIRE(curve.branches.size() == 5);
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto Om = modes::photon_frequencies(v, TransverseWavenumber(q[i]));
        std::vector<double> bare(Om.data(), Om.data() + Om.size());
        bare.push_back(5.0);
        std::sort(bare.begin(), bare.end());
        for (std::size_t b = 0; b < bare.size(); ++b) {
            REQUIRE(curve.branches[b].size() == q.size());
            CHECK(std::abs(curve.branches[b][i].Omega - bare[b]) < 1e-12 * bare[b]);
        }
    }
}

TEST_CASE("branches respect the slope cap and survive refinement") {
    const auto v = validate(oracle::cavity(1.0, 0.5, {{8.0, 3.0}, {12.0, 1.0}}, 6, 2));
    const auto coarse = dispersion::sweep(v, grid(0.0, 10.0, 21));
    const auto fine = dispersion::sweep(v, grid(0.0, 10.0, 41));
    CHECK(coarse.branches.size() == fine.branches.size());
    for (const auto* c : {&coarse, &fine})
        for (const auto& b : c->branches)
            for (std::size_t i = 1; i < b.size(); ++i)
                CHECK(std::abs(b[i].Omega - b[i - 1].Omega) <= slope_cap(v) * (b[i].q - b[i - 1].q) + 1e-9);
}

TEST_CASE("secular sweep agrees with dynamical sweep") {
    auto cfg = oracle::cavity(1.0, 0.5, {{8.0, 3.0}}, 5, 2);
    const auto dyn = dispersion::sweep(validate(cfg), grid(0.0, 4.0, 9));
    cfg.solver.method = Method::secular;
    const auto sec = dispersion::sweep(validate(cfg), grid(0.0, 4.0, 9));
    REQUIRE(sec.branches.size() == dyn.branches.size());
    for (std::size_t b = 0; b < dyn.branches.size(); ++b)
        for (std::size_t i = 0; i < dyn.branches[b].size(); ++i)
            CHECK(oracle::rel_err(sec.branches[b][i].Omega, dyn.branches[b][i].Omega) < 1e-8);
}

TEST_CASE("ambiguous links and bad grids are reported") {
    CHECK_THROWS_AS(dispersion::link_branches({0.0, 0.01}, {{1.0}, {0.995, 1.005}}, 1.0, 0.0), BranchMatchError);
    CHECK_THROWS_AS(dispersion::link_branches({0.0, 0.0}, {{1.0}, {1.0}}, 1.0, 0.0), GridError);
    CHECK_THROWS_AS(dispersion::link_branches({0.0, 1.0}, {{1.0}}, 1.0, 0.0), DimensionError);

    // A root out of reach opens a new branch instead.
    const auto b = dispersion::link_branches({0.0, 0.01}, {{1.0}, {1.0, 5.0}}, 1.0, 0.0);
    REQUIRE(b.size() == 2);
    CHECK(b[0].size() == 2);
    CHECK(b[1].size() == 1);
    CHECK(b[1][0].Omega == 5.0);
}

TEST_CASE("thread count does not change the result") {
    const auto v = validate(oracle::cavity(1.0, 0.6, {{6.0, 2.0}, {9.0, 1.0}}, 8, 3));
    const auto q = grid(0.0, 5.0, 17);
    const auto one = dispersion::sweep(v, q, 1);
    for (int t : {2, 4, 32}) {
        const auto many = dispersion::sweep(v, q, t);
        REQUIRE(many.branches.size() == one.branches.size());
        for (std::size_t b = 0; b < one.branches.size(); ++b) {
            REQUIRE(many.branches[b].size() == one.branches[b].size());
            for (std::size_t i = 0; i < one.branches[b].size(); ++i)
                CHECK(many.branches[b][i].Omega == one.branches[b][i].Omega);
        }
    }
}

}
