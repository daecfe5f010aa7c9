#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tfq/grid.hpp"

using namespace tfq;

TEST_CASE("make_grid derives the dual axis") {
    Grid g = make_grid(8, 1.0);
    CHECK(g.x(0) == -4.0);
    CHECK(g.x(7) == 3.0);
    CHECK(g.dw() == doctest::Approx(0.125));

    Grid g2 = make_grid(256, 1.0 / 16.0);
    CHECK(g2.x0() == -8.0);
    CHECK(g2.dw() == doctest::Approx(1.0 / 16.0));
    CHECK(g2.dw() * g2.dx() * g2.n() == doctest::Approx(1.0));

    CHECK_THROWS(make_grid(7, 1.0));
    CHECK_THROWS(make_grid(8, -1.0));
    CHECK_THROWS(make_grid(6, 1.0));
    // dual of dual returns to the original spacing
    Grid d = g2.dual();
    CHECK(d.dual().dx() == doctest::Approx(g2.dx()));
}

TEST_CASE("lp norms: zero signal, Gaussian normalizations, homogeneity") {
    Grid g = make_grid(256, 1.0 / 16.0);
    Signal zero(g);
    for (double p : {1.0, 2.0, 4.0}) CHECK(lp_norm(zero, p) == 0.0);
    CHECK(lp_norm(zero, Exponent::infinity()) == 0.0);

    Signal Phi = gaussian(GaussianKind::phi_l2, 1.0, g);
    CHECK(std::abs(lp_norm(Phi, 2.0) - 1.0) < 1e-9);
    Signal h1 = gaussian(GaussianKind::h, 1.0, g);
    CHECK(std::abs(lp_norm(h1, 1.0) - 1.0) < 1e-9);
    Signal phi2 = gaussian(GaussianKind::phi_l1, 2.0, g);
    CHECK(std::abs(lp_norm(phi2, 1.0) - 1.0) < 1e-9);
    CHECK(phi2.v[g.size() / 2].real() == doctest::Approx(std::sqrt(2.0)));  // phi_lambda(0) = lambda^{d/2}

    std::mt19937_64 rng(11);
    std::normal_distribution<double> d(0.0, 1.0);
    Signal f(g);
    for (auto& z : f.v) z = cd(d(rng), d(rng));
    const cd c(1.7, -0.4);
    Signal cf(g);
    for (std::size_t i = 0; i < f.v.size(); ++i) cf.v[i] = c * f.v[i];
    for (double p : {1.0, 4.0 / 3.0, 2.0, 4.0}) {
        CHECK(lp_norm(cf, p) == doctest::Approx(std::abs(c) * lp_norm(f, p)).epsilon(1e-12));
    }
    CHECK(lp_norm(cf, Exponent::infinity()) ==
          doctest::Approx(std::abs(c) * lp_norm(f, Exponent::infinity())).epsilon(1e-12));
}

TEST_CASE("Hoelder inequality on the grid") {
    Grid g = make_grid(64, 0.25);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> d(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        Signal f(g), h(g);
        for (auto& z : f.v) z = cd(d(rng), d(rng));
        for (auto& z : h.v) z = cd(d(rng), d(rng));
        Signal fh(g);
        for (std::size_t i = 0; i < f.v.size(); ++i) fh.v[i] = f.v[i] * h.v[i];
        for (Exponent p : {Exponent(1.0), Exponent(4.0 / 3.0), Exponent(2.0), Exponent(4.0),
                           Exponent::infinity()}) {
            CHECK(lp_norm(fh, 1.0) <= lp_norm(f, p) * lp_norm(h, p.conj()) * (1 + 1e-12));
        }
    }
}

TEST_CASE("tf_shift: identity, impulse, isometry, composition") {
    Grid g = make_grid(64, 0.25);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> d(0.0, 1.0);
    Signal f(g);
    for (auto& z : f.v) z = cd(d(rng), d(rng));

    Signal same = tf_shift(f, 0.0, 0.0);
    for (std::size_t i = 0; i < f.v.size(); ++i) CHECK(same.v[i] == f.v[i]);

    Signal imp(g);
    imp.v[32] = 1.0;  // x = 0 on the centered grid
    Signal moved = tf_shift(imp, g.dx(), 0.0);
    CHECK(std::abs(moved.v[33] - cd(1.0, 0.0)) < 1e-15);

    Signal sh = tf_shift(f, 5 * g.dx(), 3 * g.dw());
    CHECK(lp_norm(sh, 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-12));

    // additive composition up to a global phase
    Signal two = tf_shift(tf_shift(f, 2 * g.dx(), 4 * g.dw()), 3 * g.dx(), -1 * g.dw());
    Signal one = tf_shift(f, 5 * g.dx(), 3 * g.dw());
    cd ratio(0.0, 0.0);
    bool proportional = true;
    for (std::size_t i = 0; i < f.v.size(); ++i) {
        if (std::abs(one.v[i]) < 1e-9) continue;
        cd r = two.v[i] / one.v[i];
        if (std::abs(ratio) == 0.0) ratio = r;
        else if (std::abs(r - ratio) > 1e-9) proportional = false;
    }
    CHECK(proportional);
    CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-12);

    CHECK_THROWS(tf_shift(f, 0.3 * g.dx(), 0.0));
    CHECK_THROWS(tf_shift(f, 0.0, 0.49 * g.dw()));
}

TEST_CASE("dilate: identity, Gaussian family closure, q-norm scaling") {
    Grid g = make_grid(256, 1.0 / 16.0);
    Signal h1 = gaussian(GaussianKind::h, 1.0, g);
    Signal same = dilate(h1, 1.0);
    for (std::size_t i = 0; i < h1.v.size(); ++i) CHECK(std::abs(same.v[i] - h1.v[i]) < 1e-15);

    // h_1(lambda x) = h_{lambda^2}(x)
    Signal d2 = dilate(h1, 2.0);
    Signal h4 = gaussian(GaussianKind::h, 4.0, g);
    for (std::size_t i = 0; i < h1.v.size(); ++i) CHECK(std::abs(d2.v[i] - h4.v[i]) < 1e-14);

    // ||f_lambda / ||f_lambda||_2||_q = lambda^{(1/2-1/q) d} ||Phi_1||_q
    Signal Phi = gaussian(GaussianKind::phi_l2, 1.0, g);
    const Exponent q(4.0);
    for (double lam : {2.0, 4.0}) {
        Signal fl = dilate(Phi, lam);
        double n2 = lp_norm(fl, 2.0);
        Signal psi(g);
        for (std::size_t i = 0; i < fl.v.size(); ++i) psi.v[i] = fl.v[i] / n2;
        double expect = std::pow(lam, 0.5 - q.recip()) * lp_norm(Phi, q);
        CHECK(std::abs(lp_norm(psi, q) - expect) / expect < 0.01);
    }

    Signal raw(g);
    raw.v[0] = 1.0;
    CHECK_THROWS(dilate(raw, 2.0));
    CHECK_THROWS(dilate(h1, -1.0));
}

TEST_CASE("set measure: empty, interval, full") {
    Grid g = make_grid(256, 1.0 / 16.0);
    MeasurableSet empty(g);
    CHECK(set_measure(empty) == 0.0);

    MeasurableSet iv = set_from_intervals(g, {{-2.0, 2.0}});
    CHECK(std::abs(set_measure(iv) - 4.0) <= g.dx());

    CHECK(set_measure(full_set(g)) == doctest::Approx(16.0));

    // 2-d boxes
    Grid g2(2, 16, 0.25, -2.0);
    MeasurableSet box = set_from_boxes(g2, {{std::make_pair(-1.0, 1.0), std::make_pair(-1.0, 1.0)}});
    CHECK(std::abs(set_measure(box) - 4.0) <= 4 * 0.25 + 0.1);
    CHECK(set_measure(full_set(g2)) == doctest::Approx(16.0));
}

TEST_CASE("exponent conjugation round trip") {
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        Exponent e(p);
        CHECK(e.conj().conj().value() == doctest::Approx(p));
        CHECK(e.recip() + e.conj().recip() == doctest::Approx(1.0));
    }
    Exponent inf = Exponent::infinity();
    CHECK(inf.conj().value() == 1.0);
    CHECK(inf.conj().conj().is_inf());
    CHECK_THROWS(Exponent(0.5));
}

TEST_CASE("2-d grid-core operations") {
    Grid g2(2, 16, 0.25, -2.0);
    Signal Phi = gaussian(GaussianKind::phi_l2, 1.0, g2);
    CHECK(std::abs(lp_norm(Phi, 2.0) - 1.0) < 1e-9);
    Signal phi = gaussian(GaussianKind::phi_l1, 2.0, g2);
    CHECK(std::abs(lp_norm(phi, 1.0) - 1.0) < 1e-9);
    CHECK(phi.v[(8 * 16) + 8].real() == doctest::Approx(2.0));  // lambda^{d/2} at the origin

    Signal sh = tf_shift(Phi, {0.25, -0.5}, {g2.dw(), 0.0});
    CHECK(lp_norm(sh, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
}
