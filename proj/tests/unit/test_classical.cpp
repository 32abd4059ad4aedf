#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "polsp/dispersion.hpp"
#include "polsp/errors.hpp"

using namespace polsp;
using std::numbers::pi;

TEST_SUITE("classical") {

TEST_CASE("unit index gives the empty cavity with parity-split branches") {
    const auto v = validate(oracle::cavity(1.0, 0.5, {{5.0, 1.0}}, 8, 2));
    const auto n1 = [](double) { return 1.0; };
    for (double q : {0.0, 2.0}) {
        const auto r = dispersion::classical_roots(v, n1, TransverseWavenumber(q), {0.0, std::hypot(10.5 * pi, q)});
        std::vector<double> odd, even;
        for (int m = 1; m <= 10; ++m) (m % 2 ? odd : even).push_back(std::hypot(pi * m, q));
        CHECK(oracle::max_rel_err(r.symmetric, odd) < 1e-12);
        CHECK(oracle::max_rel_err(r.antisymmetric, even) < 1e-12);
        CHECK(r.merged().size() == 10);
    }
}

TEST_CASE("index two slab, first symmetric root") {
    const auto v = validate(oracle::cavity(1.0, 0.5, {{5.0, 1.0}}, 8, 2));
    const auto r = dispersion::classical_roots(v, [](double) { return 4.0; }, TransverseWavenumber(0.0), {0.0, 3.0});
    REQUIRE(!r.symmetric.empty());
    CHECK(r.symmetric.front() > 1.65);
    CHECK(r.symmetric.front() < 1.70);
    const double w = r.symmetric.front();
    CHECK(std::abs(2.0 * std::tan(w / 4) - 1.0 / std::tan(w / 2)) < 1e-10);
}

TEST_CASE("residuals vanish at the roots and are finite near tan poles") {
    const auto v = validate(oracle::cavity(1.3, 0.4, {{5.0, 1.0}}, 8, 2));
    const auto n2 = [](double) { return 2.25; };
    const TransverseWavenumber q(0.5);
    const auto r = dispersion::classical_roots(v, n2, q, {0.0, 30.0});
    for (double w : r.symmetric) CHECK(std::abs(dispersion::classical_residual(v, n2, w, q).symmetric) < 1e-9);
    for (double w : r.antisymmetric)
        CHECK(std::abs(dispersion::classical_residual(v, n2, w, q).antisymmetric) < 1e-9);
    for (double w = 0.6; w < 30.0; w += 0.37) {
        const auto res = dispersion::classical_residual(v, n2, w, q);
        CHECK(std::isfinite(res.symmetric));
        CHECK(std::isfinite(res.antisymmetric));
    }
}

TEST_CASE("Lorentz slab: roots avoid the resonance and match the residual") {
    const auto v = validate(oracle::cavity(1.0, 0.5, {{10.0, 3.0}}, 8, 2));
    const TransverseWavenumber q(0.0);
    const auto r = dispersion::classical_roots(v, kk::LorentzSet{v->oscillators}, q, {0.0, 9.9});
    REQUIRE(!r.merged().empty());
    const auto n2 = [](double w) { return 1.0 + 9.0 / (100.0 - w * w); };
    for (double w : r.symmetric) CHECK(std::abs(dispersion::classical_residual(v, n2, w, q).symmetric) < 1e-8);
    // The lowest polariton lies below the bare first mode, pulled down by the slab.
    CHECK(r.merged().front() < pi);
}

TEST_CASE("evanescent frequencies need the option") {
    const auto v = validate(oracle::cavity(1.0, 0.5, {{5.0, 1.0}}, 8, 2));
    const auto n1 = [](double) { return 1.0; };
    CHECK_THROWS_AS(dispersion::classical_residual(v, n1, 1.0, TransverseWavenumber(3.0)), EvanescentError);
    auto cfg = v.get();
    cfg.solver.evanescent = true;
    CHECK(std::isfinite(dispersion::classical_residual(validate(cfg), n1, 1.0, TransverseWavenumber(3.0)).symmetric));
}

}
