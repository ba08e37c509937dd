#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "omsim/measures.hpp"

using namespace omsim;

namespace {

Mat4 product_thermal(double n1, double n2) {
    Mat4 chi = Mat4::Zero();
    chi.block<2, 2>(0, 0) = (n1 + 0.5) * Mat2::Identity();
    chi.block<2, 2>(2, 2) = (n2 + 0.5) * Mat2::Identity();
    return chi;
}

/// Two-mode squeezed vacuum, squeezing parameter r.
Mat4 tmsv(double r) {
    Mat4 chi = Mat4::Zero();
    const double ch = 0.5 * std::cosh(2.0 * r);
    const double sh = 0.5 * std::sinh(2.0 * r);
    chi(0, 0) = chi(1, 1) = chi(2, 2) = chi(3, 3) = ch;
    chi(0, 2) = chi(2, 0) = sh;
    chi(1, 3) = chi(3, 1) = -sh;
    return chi;
}

Mat4 local_rotation(double phi1, double phi2) {
    Mat4 R = Mat4::Zero();
    auto rot = [](double phi) {
        Mat2 r;
        r << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
        return r;
    };
    R.block<2, 2>(0, 0) = rot(phi1);
    R.block<2, 2>(2, 2) = rot(phi2);
    return R;
}

/// A stable interacting fixture whose steady state correlates all pairs.
CovarianceMatrix reference_state() {
    SystemParams p;
    p.G_m = 0.2;
    p.G_a = 0.2;
    p.J_m = 0.2;
    p.theta = M_PI / 2.0;
    p.n_th = 100.0;
    const LinearModel m = build_linear_model(p);
    return solve_steady_lyapunov(m.A, m.D);
}

} // namespace

TEST_CASE("bipartition extraction maps pair labels onto the mode ordering") {
    CovarianceMatrix cov;
    cov.V = Mat6::Zero();
    // tag each 2x2 block with 10*i + j of its block indices
    for (int bi = 0; bi < 3; ++bi)
        for (int bj = 0; bj < 3; ++bj)
            cov.V.block<2, 2>(2 * bi, 2 * bj).setConstant(10.0 * bi + bj);

    // ordering: optical = block 0, acoustic = block 1, mechanical = block 2
    const Mat4 om = extract_bipartition(cov, BipartitionPair::OpticalMechanical).chi;
    CHECK(om(0, 0) == 0.0);
    CHECK(om(0, 2) == 2.0);
    CHECK(om(2, 0) == 20.0);
    CHECK(om(2, 2) == 22.0);

    const Mat4 oa = extract_bipartition(cov, BipartitionPair::OpticalAcoustic).chi;
    CHECK(oa(0, 2) == 1.0);
    CHECK(oa(2, 2) == 11.0);

    const Mat4 ma = extract_bipartition(cov, BipartitionPair::MechanicalAcoustic).chi;
    CHECK(ma(0, 0) == 22.0);
    CHECK(ma(0, 2) == 21.0);
}

TEST_CASE("swap_modes exchanges the two modes") {
    const Mat4 chi = tmsv(0.4) + 0.3 * product_thermal(1.0, 2.0);
    const Mat4 sw = swap_modes(chi);
    CHECK(sw(0, 0) == chi(2, 2));
    CHECK(sw(2, 2) == chi(0, 0));
    CHECK(sw(0, 2) == chi(2, 0));
    CHECK((swap_modes(sw) - chi).cwiseAbs().maxCoeff() == 0.0);

    const Invariants4 a = symplectic_invariants(chi);
    const Invariants4 b = symplectic_invariants(sw);
    CHECK(a.I1 == doctest::Approx(b.I2).epsilon(1e-14));
    CHECK(a.I2 == doctest::Approx(b.I1).epsilon(1e-14));
    CHECK(a.I4 == doctest::Approx(b.I4).epsilon(1e-12));
}

TEST_CASE("vacuum product state: separable, nu_minus = 1/2") {
    const Mat4 chi = 0.5 * Mat4::Identity();
    const LogNegativity ln = log_negativity(chi);
    CHECK(ln.nu_minus == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ln.E_N == 0.0);
}

TEST_CASE("symmetric product thermal states: invariants, separability, zero discord") {
    for (const double n : {0.0, 0.5, 3.0, 10.0}) {
        const Mat4 chi = product_thermal(n, n);
        const Invariants4 inv = symplectic_invariants(chi);
        CHECK(inv.I1 == doctest::Approx((n + 0.5) * (n + 0.5)).epsilon(1e-14));
        CHECK(inv.I2 == doctest::Approx(inv.I1).epsilon(1e-14));
        CHECK(inv.I3 == 0.0);
        CHECK(inv.I4 == doctest::Approx(inv.I1 * inv.I2).epsilon(1e-14));

        CHECK(log_negativity(chi).E_N == 0.0);

        const DiscordResult qd = gaussian_discord(chi);
        CHECK(qd.branch == DiscordBranch::Branch2);  // I3 = 0 routes to branch 2
        CHECK(std::abs(qd.eps_qd) < 1e-12);
    }
}

TEST_CASE("asymmetric products expose the formula's mode asymmetry") {
    // The piecewise conditional-entropy expression is asymmetric in the
    // two modes: on a product state it reduces to f(sqrt(I2)) - f(sqrt(I1))
    // rather than zero, and swapping the modes flips its sign.
    for (const auto [n1, n2] : {std::pair{0.5, 3.0}, {10.0, 2.0}}) {
        const Mat4 chi = product_thermal(n1, n2);
        const double expected = entropy_f(n2 + 0.5) - entropy_f(n1 + 0.5);
        CHECK(gaussian_discord(chi).eps_qd ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(gaussian_discord(swap_modes(chi)).eps_qd ==
              doctest::Approx(-expected).epsilon(1e-12));
    }
}

TEST_CASE("two-mode squeezed vacuum against the analytic solution") {
    for (const double r : {0.1, 0.3, 0.7, 1.2, 2.0}) {
        const Mat4 chi = tmsv(r);
        const Invariants4 inv = symplectic_invariants(chi);
        const double c2 = std::cosh(2.0 * r);
        CAPTURE(r);
        CHECK(inv.I1 == doctest::Approx(c2 * c2 / 4.0).epsilon(1e-12));
        CHECK(inv.I2 == doctest::Approx(c2 * c2 / 4.0).epsilon(1e-12));
        CHECK(inv.I3 ==
              doctest::Approx(-std::sinh(2.0 * r) * std::sinh(2.0 * r) / 4.0)
                  .epsilon(1e-12));
        CHECK(inv.I4 == doctest::Approx(1.0 / 16.0).epsilon(1e-10));

        const LogNegativity ln = log_negativity(chi);
        CHECK(ln.nu_minus == doctest::Approx(0.5 * std::exp(-2.0 * r)).epsilon(1e-10));
        CHECK(ln.E_N == doctest::Approx(2.0 * r).epsilon(1e-10));
    }
}

TEST_CASE("entropy function: fixture values and monotonicity") {
    // x -> 1/2 limit with 0 ln 0 = 0: the vacuum carries zero entropy
    CHECK(entropy_f(0.5) == 0.0);
    CHECK(entropy_f(1.0) ==
          doctest::Approx(1.5 * std::log(1.5) - 0.5 * std::log(0.5)).epsilon(1e-14));
    double prev = entropy_f(0.5);
    for (double x = 0.51; x < 20.0; x += 0.25) {
        const double f = entropy_f(x);
        CHECK(f > prev);
        prev = f;
    }
    CHECK_THROWS_AS(entropy_f(0.3), NonPhysicalInput);
}

TEST_CASE("measures are invariant under local symplectic rotations") {
    const CovarianceMatrix cov = reference_state();
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    for (const auto pair : kAllPairs) {
        const Mat4 chi = extract_bipartition(cov, pair).chi;
        const LogNegativity ln0 = log_negativity(chi);
        const DiscordResult qd0 = gaussian_discord(chi);
        for (int trial = 0; trial < 20; ++trial) {
            const Mat4 R = local_rotation(u(rng), u(rng));
            const Mat4 chi_r = R * chi * R.transpose();
            CAPTURE(trial);
            CHECK(log_negativity(chi_r).nu_minus ==
                  doctest::Approx(ln0.nu_minus).epsilon(1e-10));
            CHECK(gaussian_discord(chi_r).eps_qd ==
                  doctest::Approx(qd0.eps_qd).epsilon(1e-10));
        }
    }
}

TEST_CASE("log-negativity is symmetric under mode exchange") {
    const CovarianceMatrix cov = reference_state();
    for (const auto pair : kAllPairs) {
        const Mat4 chi = extract_bipartition(cov, pair).chi;
        CHECK(log_negativity(swap_modes(chi)).nu_minus ==
              doctest::Approx(log_negativity(chi).nu_minus).epsilon(1e-12));
    }
}

TEST_CASE("discord branch selection stays continuous across the boundary") {
    // probe, not an assertion on values: scan a family crossing branch
    // regions and require no NaN and bounded jumps between neighbors
    const CovarianceMatrix cov = reference_state();
    const Mat4 chi0 = extract_bipartition(cov, BipartitionPair::OpticalMechanical).chi;
    double prev = gaussian_discord(chi0).eps_qd;
    for (int k = 1; k <= 50; ++k) {
        const double t = 0.02 * k;
        Mat4 chi = chi0;
        chi.block<2, 2>(0, 2) *= (1.0 - t);
        chi.block<2, 2>(2, 0) *= (1.0 - t);
        const double q = gaussian_discord(chi).eps_qd;
        CHECK(std::isfinite(q));
        CHECK(std::abs(q - prev) < 0.1);
        prev = q;
    }
    // the uncorrelated limit lands on the formula's product-state value
    Mat4 chi_end = chi0;
    chi_end.block<2, 2>(0, 2).setZero();
    chi_end.block<2, 2>(2, 0).setZero();
    const Invariants4 inv = symplectic_invariants(chi_end);
    CHECK(prev == doctest::Approx(entropy_f(std::sqrt(inv.I2)) -
                                  entropy_f(std::sqrt(inv.I1)))
                      .epsilon(1e-8));
}

TEST_CASE("frozen regression: interacting fixture at theta = pi/2") {
    const CovarianceMatrix cov = reference_state();
    StabilityReport stab;
    stab.stable = true;
    const FullReport rep = full_report(cov, stab);
    const CorrelationReport& om = rep[BipartitionPair::OpticalMechanical];
    CHECK(om.nu_minus == doctest::Approx(0.4417702569596659).epsilon(1e-12));
    CHECK(om.E_N == doctest::Approx(0.1238181321115157).epsilon(1e-11));
    CHECK(rep[BipartitionPair::OpticalAcoustic].E_N == 0.0);
    CHECK(rep[BipartitionPair::MechanicalAcoustic].E_N == 0.0);
}

TEST_CASE("non-physical inputs are rejected") {
    Mat4 chi = Mat4::Zero();  // zero covariance violates uncertainty
    chi(0, 0) = chi(1, 1) = chi(2, 2) = chi(3, 3) = 1e-6;
    CHECK_THROWS_AS(gaussian_discord(chi), NonPhysicalInput);
}
