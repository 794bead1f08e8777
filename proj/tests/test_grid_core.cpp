#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "waysim/density.hpp"
#include "waysim/grid.hpp"
#include "waysim/wavefunction.hpp"

using namespace waysim;

namespace {

// smallest interval of a standard normal carrying mass 1 - eps, found
// by bisection on the symmetric-interval mass (independent of the
// implementation under test)
double normal_width_oracle(double sigma, double eps) {
    auto central_mass = [&](double z) { return std::erf(z / std::sqrt(2.0)); };
    double lo = 0.0, hi = 10.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (central_mass(mid) < 1.0 - eps ? lo : hi) = mid;
    }
    return 2.0 * sigma * 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("make_grid basics and preconditions") {
    const GridSpec g = make_grid(-8.0, 8.0, 1024);
    CHECK(g.dx() == Catch::Approx(0.015625).epsilon(1e-14));
    CHECK(make_grid(0.0, 1.0, 8).dx() == Catch::Approx(0.125));

    CHECK_THROWS_MATCHES(make_grid(1.0, 0.0, 64), precondition_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("invalid-range")));
    CHECK_THROWS_MATCHES(make_grid(0.0, 1.0, 48), precondition_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("n-not-power-of-two")));
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 4), precondition_error);
}

TEST_CASE("conjugate grid has the momentum spacing and a zero node") {
    const GridSpec g = make_grid(-8.0, 8.0, 512);
    const GridSpec k = g.conjugate();
    CHECK(k.dx() == Catch::Approx(2.0 * M_PI / (512 * g.dx())).epsilon(1e-14));
    CHECK(k.node(256) == Catch::Approx(0.0).margin(1e-12));
    CHECK(k.n == g.n);
}

TEST_CASE("gaussian sampling reproduces the analytic moments") {
    const GridSpec g = make_grid(-8.0, 8.0, 1024);
    const WaveFunction psi = sample_wavefunction(g, GaussianShape{0.0, 1.0});
    const Density rho = density_of(psi);
    CHECK(mass(rho) == Catch::Approx(1.0).margin(1e-9));
    CHECK(std::abs(mean(rho)) <= g.dx());
    CHECK(variance(rho) == Catch::Approx(1.0).epsilon(0.01));

    const Density rho2 = density_of(sample_wavefunction(g, GaussianShape{2.0, 1.0}));
    CHECK(mean(rho2) == Catch::Approx(2.0).margin(g.dx()));
    CHECK(variance(rho2) == Catch::Approx(1.0).epsilon(0.01));
}

TEST_CASE("box sampling gives the uniform density") {
    const GridSpec g = make_grid(-4.0, 4.0, 1024);
    const Density rho = density_of(sample_wavefunction(g, BoxShape{0.0, 1.0, 0.0}));
    CHECK(mass(rho) == Catch::Approx(1.0).margin(1e-9));
    CHECK(rho.value_at(0.0) == Catch::Approx(0.5).epsilon(0.01));
    CHECK(rho.value_at(0.9) == Catch::Approx(0.5).epsilon(0.01));
    CHECK(rho.value_at(1.5) == 0.0);
    CHECK(rho.value_at(-1.5) == 0.0);
}

TEST_CASE("sampling rejects shapes that spill past the grid") {
    const GridSpec g = make_grid(-8.0, 8.0, 1024);
    CHECK_THROWS_MATCHES(sample_wavefunction(g, GaussianShape{0.0, 10.0}), precondition_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("support-exceeds-grid")));
    CHECK_THROWS_AS(sample_wavefunction(g, BoxShape{7.5, 1.0, 0.0}), precondition_error);
}

TEST_CASE("probe family invariants are enforced") {
    const GridSpec g = make_grid(-8.0, 8.0, 256);
    CHECK_THROWS_AS(sample_wavefunction(g, GaussianShape{0.0, -1.0}), precondition_error);
    CHECK_THROWS_AS(sample_wavefunction(g, BoxShape{0.0, 1.0, 1.5}), precondition_error);
    CHECK_THROWS_AS(sample_wavefunction(g, TriangleShape{0.0, 0.0}), precondition_error);
    CHECK(support_halfwidth(BoxShape{0.0, 2.0, 0.1}) == 2.0);
    CHECK_THROWS_MATCHES(support_halfwidth(GaussianShape{0.0, 1.0}), precondition_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("non-compact-probe")));
}

TEST_CASE("momentum density matches the Fourier pairs") {
    const GridSpec g = make_grid(-8.0, 8.0, 1024);
    const Density p1 = momentum_density(sample_wavefunction(g, GaussianShape{0.0, 1.0}));
    CHECK(mass(p1) == Catch::Approx(1.0).margin(1e-9));
    CHECK(variance(p1) == Catch::Approx(0.25).epsilon(0.01));

    const Density p2 = momentum_density(sample_wavefunction(g, GaussianShape{0.0, 0.5}));
    CHECK(variance(p2) == Catch::Approx(1.0).epsilon(0.01));

    const WaveFunction mod = modulate(sample_wavefunction(g, GaussianShape{0.0, 1.0}), 2.0);
    const Density p3 = momentum_density(mod);
    CHECK(mean(p3) == Catch::Approx(2.0).epsilon(0.01));
    CHECK(variance(p3) == Catch::Approx(0.25).epsilon(0.01));
}

TEST_CASE("momentum density rejects boundary leakage") {
    const GridSpec g = make_grid(-8.0, 8.0, 512);
    const WaveFunction near_edge = sample_wavefunction(g, [&](double x) {
        return cdouble(std::exp(-0.25 * (x - 7.0) * (x - 7.0)), 0.0);
    });
    CHECK_THROWS_MATCHES(momentum_density(near_edge), precondition_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("boundary-leakage")));
}

TEST_CASE("mean and variance of reference densities") {
    const GridSpec g = make_grid(-4.0, 4.0, 2048);
    const Density uni = density_of(sample_wavefunction(g, BoxShape{0.5, 0.5, 0.0}));
    CHECK(mean(uni) == Catch::Approx(0.5).margin(1e-9));
    CHECK(variance(uni) == Catch::Approx(1.0 / 12.0).margin(1e-4));

    const Density spike = spike_density(g, 0.7);
    CHECK(std::abs(mean(spike) - 0.7) <= 0.5 * g.dx() + 1e-12);
    CHECK(variance(spike) <= g.dx() * g.dx());
}

TEST_CASE("overall width on reference densities") {
    const GridSpec g = make_grid(-4.0, 4.0, 2048);
    const double dx = g.dx();

    const Density uni = density_of(sample_wavefunction(g, BoxShape{0.5, 0.5, 0.0}));
    CHECK(overall_width(uni, 0.1) == Catch::Approx(0.9).margin(dx + 1e-12));

    const Density gau = density_of(sample_wavefunction(g, GaussianShape{0.0, 1.0}));
    const double oracle = normal_width_oracle(1.0, 0.05);
    CHECK(oracle == Catch::Approx(3.9199).margin(1e-3));
    CHECK(overall_width(gau, 0.05) == Catch::Approx(oracle).margin(2.0 * dx));

    const Density spike = spike_density(g, 0.0);
    CHECK(overall_width(spike, 0.5) == Catch::Approx(dx).margin(1e-12));

    CHECK_THROWS_MATCHES(overall_width(uni, 0.0), precondition_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("invalid-eps")));
    CHECK_THROWS_AS(overall_width(uni, 1.0), precondition_error);
}

TEST_CASE("convolution of gaussians adds variances") {
    const GridSpec g = make_grid(-16.0, 16.0, 2048);
    const Density a = density_of(sample_wavefunction(g, GaussianShape{0.0, 1.0}));
    const Density b = density_of(sample_wavefunction(g, GaussianShape{0.0, 2.0}));
    const Density c = convolve(a, b);
    CHECK(mass(c) == Catch::Approx(1.0).margin(1e-9));
    CHECK(variance(c) == Catch::Approx(5.0).epsilon(0.01));
    CHECK(mean(c) == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("convolution with a spike is the identity up to one cell") {
    const GridSpec g = make_grid(-8.0, 8.0, 2048);
    const Density d = density_of(sample_wavefunction(g, GaussianShape{0.5, 1.0}));
    const Density c = convolve(d, spike_density(g, 0.0));
    CHECK(l1_distance(c, d) < 0.01);
}

TEST_CASE("uniform convolved with uniform gives the triangle") {
    const GridSpec g = make_grid(-4.0, 4.0, 1024);
    const Density u = density_of(sample_wavefunction(g, BoxShape{0.5, 0.5, 0.0}));
    const Density t = convolve(u, u);
    CHECK(t.value_at(1.0) == Catch::Approx(1.0).epsilon(0.02));
    CHECK(t.value_at(0.5) == Catch::Approx(0.5).epsilon(0.05));
    CHECK(t.value_at(1.5) == Catch::Approx(0.5).epsilon(0.05));
    const detail::DensityCdf F(t);
    CHECK(F.interval_mass(-10.0, -g.dx()) <= 1e-12);
    CHECK(F.interval_mass(2.0 + g.dx(), 10.0) <= 1e-12);
}

TEST_CASE("convolution requires matching spacings") {
    const Density a =
        density_of(sample_wavefunction(make_grid(-8.0, 8.0, 512), GaussianShape{0.0, 1.0}));
    const Density b =
        density_of(sample_wavefunction(make_grid(-8.0, 8.0, 1024), GaussianShape{0.0, 1.0}));
    CHECK_THROWS_MATCHES(convolve(a, b), precondition_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("grid-mismatch")));
    CHECK_THROWS_AS(smear(a, b), precondition_error);
}

TEST_CASE("reflect flips the support and the mean exactly") {
    const GridSpec g = make_grid(-4.0, 4.0, 512);
    const Density u = density_of(sample_wavefunction(g, BoxShape{0.5, 0.5, 0.0}));
    const Density r = reflect(u);
    CHECK(mass(r) == Catch::Approx(1.0).margin(1e-12));
    CHECK(mean(r) == Catch::Approx(-mean(u)).margin(1e-12));
    CHECK(r.value_at(-0.5) == Catch::Approx(1.0).epsilon(0.01));
    CHECK(r.value_at(0.5) == 0.0);

    const Density sym = density_of(sample_wavefunction(g, GaussianShape{0.0, 0.8}));
    CHECK(l1_distance(reflect(sym), sym) < 1e-9);
}

TEST_CASE("smear reproduces the convolution-with-reflection form") {
    const GridSpec g = make_grid(-12.0, 12.0, 1024);
    const Density d = density_of(sample_wavefunction(g, GaussianShape{0.3, 1.0}));

    SECTION("spike error density leaves the distribution unchanged") {
        CHECK(l1_distance(smear(d, spike_density(g, 0.0)), d) < 0.01);
    }
    SECTION("gaussian error density adds its variance") {
        const Density e = density_of(sample_wavefunction(g, GaussianShape{0.0, 0.7}));
        const Density m = smear(d, e);
        CHECK(mass(m) == Catch::Approx(1.0).margin(1e-9));
        CHECK(variance(m) == Catch::Approx(variance(d) + variance(e)).margin(1e-6));
        CHECK(mean(m) == Catch::Approx(mean(d) - mean(e)).margin(1e-9));
    }
    SECTION("asymmetric error density shifts against its mean") {
        const Density e = density_of(sample_wavefunction(g, GaussianShape{0.4, 0.5}));
        CHECK(mean(smear(d, e)) == Catch::Approx(mean(d) - mean(e)).margin(1e-9));
    }
}

TEST_CASE("affine pushforward is mass-exact and scales moments") {
    const GridSpec g = make_grid(-8.0, 8.0, 1024);
    const Density d = density_of(sample_wavefunction(g, GaussianShape{0.5, 1.0}));

    SECTION("expansion") {
        const Density y = pushforward_affine(d, 3.0, 1.0, g.dx());
        CHECK(mass(y) == Catch::Approx(1.0).margin(1e-9));
        CHECK(mean(y) == Catch::Approx(3.0 * mean(d) + 1.0).margin(1e-3));
        CHECK(variance(y) == Catch::Approx(9.0 * variance(d)).epsilon(0.01));
    }
    SECTION("reflection with contraction") {
        const Density y = pushforward_affine(d, -0.25, 0.0, g.dx());
        CHECK(mean(y) == Catch::Approx(-0.25 * mean(d)).margin(1e-3));
        CHECK(variance(y) == Catch::Approx(variance(d) / 16.0).epsilon(0.02));
    }
    SECTION("contraction far below one cell degenerates to a spike") {
        const Density y = pushforward_affine(d, 1e-7, 0.0, g.dx());
        CHECK(mass(y) == Catch::Approx(1.0).margin(1e-9));
        CHECK(variance(y) <= g.dx() * g.dx());
    }
    SECTION("target grid missing mass is an error") {
        const GridSpec off_target{20.0, 20.0 + 8 * g.dx(), 8};
        CHECK_THROWS_MATCHES(pushforward_affine(d, 1.0, 0.0, off_target), precondition_error,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::StartsWith("leakage")));
    }
}

TEST_CASE("density construction rejects bad values") {
    const GridSpec g = make_grid(0.0, 1.0, 8);
    CHECK_THROWS_MATCHES(Density(g, std::vector<double>(8, 0.0)), precondition_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("mass-deficit")));
    std::vector<double> bad(8, 1.0);
    bad[3] = -0.5;
    CHECK_THROWS_MATCHES(Density(g, bad), precondition_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("negative-density")));
    std::vector<double> crumbs(8, 1.0);
    crumbs[3] = -1e-14;  // FFT-scale roundoff is clamped, not rejected
    CHECK_NOTHROW(Density(g, crumbs));
}

TEST_CASE("effective support tracks compact shapes") {
    const GridSpec g = make_grid(-8.0, 8.0, 1024);
    const Density d = density_of(sample_wavefunction(g, BoxShape{0.5, 1.5, 0.0}));
    const auto [lo, hi] = effective_support(d);
    CHECK(lo == Catch::Approx(-1.0).margin(2.0 * g.dx()));
    CHECK(hi == Catch::Approx(2.0).margin(2.0 * g.dx()));
}
