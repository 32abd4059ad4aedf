#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "polsp/errors.hpp"
#include "polsp/hopfield.hpp"

using namespace polsp;
using std::numbers::pi;

namespace {

std::vector<double> bare(const ValidatedConfig& v, TransverseWavenumber q) {
    std::vector<double> out;
    const auto Om = modes::photon_frequencies(v, q);
    out.assign(Om.data(), Om.data() + Om.size());
    for (const auto& s : v->oscillators)
        for (int x = 0; x < v->exciton_modes; ++x) out.push_back(s.omega);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("hopfield") {

TEST_CASE("zero coupling leaves the bare frequencies and pure modes") {
    const auto v = validate(oracle::cavity(1.0, 0.5, {{5.0, 0.0}, {7.5, 0.0}}, 6, 3));
    const TransverseWavenumber q(0.8);
    const auto modes = hopfield::diagonalize(hopfield::build_dynamical_matrix(v, modes::overlap_K(v), q));
    const auto expect = bare(v, q);
    REQUIRE(modes.size() == expect.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        CHECK(std::abs(modes[i].Omega - expect[i]) < 1e-12 * expect[i]);
        CHECK(modes[i].Y.norm() < 1e-12);
        CHECK(modes[i].Z.norm() < 1e-12);
        const double w = modes[i].W.squaredNorm(), x = modes[i].X.squaredNorm();
        CHECK(std::abs(std::max(w, x) - 1.0) < 1e-12);
        CHECK(std::min(w, x) < 1e-12);
    }
}

TEST_CASE("one photon and one exciton reproduce the quartic") {
    // L = l = pi puts Omega_1 = 1 and K = 1 at q = 0.
    const auto v = validate(oracle::cavity(pi, pi, {{1.0, 0.1}}, 1, 1));
    const auto w = hopfield::spectrum(v, TransverseWavenumber(0.0));
    REQUIRE(w.size() == 2);
    CHECK(w[0] == doctest::Approx(0.951249).epsilon(1e-6));
    CHECK(w[1] == doctest::Approx(1.051249).epsilon(1e-6));
    const auto [lo, hi] = oracle::quartic_roots(1.0, 1.0, 0.01);
    CHECK(oracle::rel_err(w[0], lo) < 1e-12);
    CHECK(oracle::rel_err(w[1], hi) < 1e-12);
}

TEST_CASE("quartic with a partial overlap") {
    const auto v = validate(oracle::cavity(1.0, 0.4, {{2.5, 1.7}}, 1, 1));
    const double K = modes::overlap_entry(1.0, 0.4, 1, 0);
    for (double q : {0.0, 1.0, 4.0}) {
        const auto w = hopfield::spectrum(v, TransverseWavenumber(q));
        const auto [lo, hi] = oracle::quartic_roots(2.5, std::hypot(pi, q), 1.7 * 1.7 * K * K);
        CHECK(oracle::rel_err(w[0], lo) < 1e-12);
        CHECK(oracle::rel_err(w[1], hi) < 1e-12);
    }
}

TEST_CASE("modes have unit symplectic norm and the metric symmetrizes M") {
    const auto v = validate(oracle::cavity(1.3, 0.7, {{4.0, 2.0}, {9.0, 1.0}}, 10, 4));
    const TransverseWavenumber q(1.5);
    const auto dm = hopfield::build_dynamical_matrix(v, modes::overlap_K(v), q);
    CHECK(dm.half_dim() == v.mode_count());
    const Eigen::MatrixXd eM = dm.metric().asDiagonal() * dm.M;
    CHECK((eM - eM.transpose()).norm() < 1e-12 * eM.norm());

    const auto modes = hopfield::diagonalize(dm);
    REQUIRE(static_cast<int>(modes.size()) == v.mode_count());
    for (const auto& m : modes) {
        CHECK(std::abs(m.symplectic_norm() - 1.0) < 1e-10);
        CHECK(m.Omega > 0.0);
        Eigen::VectorXd vec(2 * dm.half_dim());
        vec << m.W, -m.X.imag(), m.Y, -m.Z.imag();
        CHECK((dm.M * vec - m.Omega * vec).norm() < 1e-9 * m.Omega * vec.norm());
    }
    for (std::size_t i = 1; i < modes.size(); ++i) CHECK(modes[i].Omega >= modes[i - 1].Omega);
}

TEST_CASE("raw spectrum pairs up and agrees with a general eigensolver") {
    const auto v = validate(oracle::cavity(1.0, 0.5, {{6.0, 3.0}}, 8, 3));
    const auto dm = hopfield::build_dynamical_matrix(v, modes::overlap_K(v), TransverseWavenumber(0.5));
    const Eigen::VectorXd raw = hopfield::raw_spectrum(dm);
    const int n = static_cast<int>(raw.size());
    REQUIRE(n == 2 * v.mode_count());
    for (int i = 0; i < n / 2; ++i) CHECK(std::abs(raw(i) + raw(n - 1 - i)) < 1e-10 * std::abs(raw(i)));

    Eigen::EigenSolver<Eigen::MatrixXd> es(dm.M);
    std::vector<double> general;
    for (int i = 0; i < n; ++i) {
        CHECK(std::abs(es.eigenvalues()(i).imag()) < 1e-8);
        general.push_back(es.eigenvalues()(i).real());
    }
    std::sort(general.begin(), general.end());
    for (int i = 0; i < n; ++i) CHECK(std::abs(general[i] - raw(i)) < 1e-9 * std::abs(raw(i)));
}

TEST_CASE("species order does not change the spectrum") {
    const auto a = validate(oracle::cavity(1.0, 0.6, {{4.0, 2.0}, {8.0, 1.5}, {11.0, 0.7}}, 9, 3));
    const auto b = validate(oracle::cavity(1.0, 0.6, {{11.0, 0.7}, {4.0, 2.0}, {8.0, 1.5}}, 9, 3));
    const TransverseWavenumber q(2.0);
    const auto wa = hopfield::spectrum(a, q), wb = hopfield::spectrum(b, q);
    CHECK(oracle::max_rel_err(wa, wb) < 1e-12);
}

TEST_CASE("parity-forbidden photons stay at their bare frequency") {
    // Only the even exciton function is kept, so even cavity modes decouple.
    const auto v = validate(oracle::cavity(1.0, 0.5, {{10.0, 3.0}}, 6, 1));
    const TransverseWavenumber q(0.3);
    const auto w = hopfield::spectrum(v, q);
    REQUIRE(static_cast<int>(w.size()) == v.mode_count());
    for (int m = 2; m <= 6; m += 2) {
        const double Om = modes::photon_frequency(v, m, q);
        CHECK(std::any_of(w.begin(), w.end(), [&](double x) { return std::abs(x - Om) < 1e-10 * Om; }));
    }
    const double O1 = modes::photon_frequency(v, 1, q);
    CHECK(std::none_of(w.begin(), w.end(), [&](double x) { return std::abs(x - O1) < 1e-6; }));
}

TEST_CASE("the lowest polariton is pushed down by stronger coupling") {
    double prev = INFINITY;
    for (double G : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        const auto v = validate(oracle::cavity(1.0, 0.5, {{5.0, G}}, 6, 2));
        const double w0 = hopfield::spectrum(v, TransverseWavenumber(1.0)).front();
        CHECK(w0 <= prev + 1e-12);
        prev = w0;
    }
}

TEST_CASE("mismatched overlaps are rejected") {
    const auto v = validate(oracle::cavity(1.0, 0.5, {{5.0, 1.0}}, 6, 2));
    const auto other = modes::overlap_K(with_truncation(v, 5, 2));
    CHECK_THROWS_AS(hopfield::build_dynamical_matrix(v, other, TransverseWavenumber(0.0)), DimensionError);
}

}
