#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "volrigid/nzvolume.hpp"

using namespace volrigid;
using std::numbers::pi;

namespace {

const double sqrt3 = std::sqrt(3.0);
const double pi2 = pi * pi;
const double pi4 = pi2 * pi2;

// Random lattice points with p^2 + 12 q^2 <= 1e6 (the m004 disc), away from 0.
std::vector<std::pair<double, double>> sample_points(std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Int> dp(-1000, 1000), dq(-288, 288);
    std::vector<std::pair<double, double>> out;
    while (static_cast<int>(out.size()) < count) {
        Int p = dp(rng), q = dq(rng);
        if (p * p + 12 * q * q > 1'000'000 || (p == 0 && q == 0))
            continue;
        out.emplace_back(static_cast<double>(p), static_cast<double>(q));
    }
    return out;
}

} // namespace

TEST_SUITE("nzvolume")
{
    TEST_CASE("built-in series")
    {
        for (const auto& name : builtin_series_names()) {
            auto s = builtin_series(name);
            INFO(name);
            CHECK(s.tau == -s.c1);
            CHECK(s.c1.imag() != 0.0);
        }
        CHECK(builtin_series("m004").c1 == Complex(0.0, 2 * sqrt3));
        CHECK(std::abs(builtin_series("m125").c3 - Complex(-3.0, 1.0) / 48.0) < 1e-15);
        CHECK(std::abs(builtin_series("WL").c1 - Complex(-2.0, 2.0)) < 1e-15);
        CHECK_THROWS_AS(builtin_series("m006"), std::invalid_argument);
        CHECK_THROWS_AS(delta_v_explicit("m006", 1, 0), std::invalid_argument);
    }

    TEST_CASE("documented values")
    {
        double m004_51 = 2 * sqrt3 * pi2 / 37 + (4 * sqrt3 / 3) * 1031 * pi4 / std::pow(37.0, 4);
        CHECK(m004_51 == doctest::Approx(1.0477870175).epsilon(1e-10));
        CHECK(delta_v_explicit("m004", 5, 1) == doctest::Approx(m004_51).epsilon(1e-13));
        CHECK(delta_v_generic(builtin_series("m004"), 5, 1) == doctest::Approx(m004_51).epsilon(1e-13));

        CHECK(delta_v_generic(builtin_series("m125"), 1, 0) == doctest::Approx(pi2 - pi4 / 24).epsilon(1e-13));
        CHECK(std::abs(pi2 - pi4 / 24 - 5.810892) < 1e-6);
        CHECK(delta_v_explicit("WL", 1, 0) == doctest::Approx(2 * pi2 - pi4 / 3).epsilon(1e-13));
        CHECK(delta_v_explicit("m125", 2, 1) - delta_v_explicit("m125", 1, 2) ==
              doctest::Approx(6 * pi4 / 625).epsilon(1e-12));
        CHECK(6 * pi4 / 625 == doctest::Approx(0.93513).epsilon(1e-5));
    }

    TEST_CASE("z -> -z symmetry")
    {
        for (const auto& name : builtin_series_names()) {
            auto s = builtin_series(name);
            for (auto [p, q] : sample_points(17, 50)) {
                CHECK(delta_v_generic(s, p, q) == doctest::Approx(delta_v_generic(s, -p, -q)).epsilon(1e-14));
                CHECK(delta_v_explicit(name, p, q) == doctest::Approx(delta_v_explicit(name, -p, -q)).epsilon(1e-14));
            }
        }
    }

    TEST_CASE("generic and explicit forms agree, 1e3 points per series")
    {
        for (const auto& name : builtin_series_names()) {
            auto s = builtin_series(name);
            for (auto [p, q] : sample_points(23, 1000)) {
                INFO(name << " (" << p << "," << q << ")");
                REQUIRE(oracle::rel_err(delta_v_generic(s, p, q), delta_v_explicit(name, p, q)) <= 1e-10);
            }
        }
    }

    TEST_CASE("polar and Cartesian forms agree, 1e3 points per series")
    {
        for (const auto& name : builtin_series_names()) {
            auto s = builtin_series(name);
            for (auto [p, q] : sample_points(29, 1000)) {
                auto pc = polar_coordinates(s, p, q);
                Complex z = Complex(p, 0.0) + q * s.tau;
                REQUIRE(pc.r == doctest::Approx(std::abs(z)).epsilon(1e-14));
                INFO(name << " (" << p << "," << q << ")");
                REQUIRE(oracle::rel_err(delta_v_polar(name, pc.r, pc.theta), delta_v_explicit(name, p, q)) <= 1e-10);
            }
        }
        CHECK_THROWS_AS(delta_v_polar("m006", 1.0, 0.0), std::invalid_argument);
    }

    TEST_CASE("substitution identities over random real points")
    {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(-1000.0, 1000.0);
        int checked = 0;
        while (checked < 1000) {
            double a = u(rng), b = u(rng);
            // Stay clear of the zero crossing of the truncation, where the
            // relative error has no meaning.
            if (a * a + a * b + b * b < 100.0)
                continue;
            ++checked;
            INFO("(" << a << "," << b << ")");
            REQUIRE(oracle::rel_err(delta_v_explicit("m003", a, b), delta_v_explicit("m004", 2 * a + b, b / 2)) <= 1e-10);
            REQUIRE(oracle::rel_err(delta_v_explicit("m129", a, b), delta_v_explicit("WL", a + 2 * b, -b)) <= 1e-10);
        }
    }

    TEST_CASE("m125 asymmetry")
    {
        CHECK(m125_asymmetry(2, 1) == doctest::Approx(6 * pi4 / 625).epsilon(1e-14));
        CHECK(m125_asymmetry(1, 1) == 0.0);
        CHECK(m125_asymmetry(1, 2) == -m125_asymmetry(2, 1));
        for (Int a = -100; a <= 100; ++a)
            for (Int b = -100; b <= 100; ++b) {
                if (a == 0 && b == 0)
                    continue;
                auto ab = delta_v_explicit_terms("m125", a, b);
                auto ba = delta_v_explicit_terms("m125", b, a);
                double asym = m125_asymmetry(a, b);
                REQUIRE(ab.leading == ba.leading);
                double termwise = ba.correction - ab.correction;
                REQUIRE(std::abs(termwise - asym) <= 1e-12 * std::max(std::abs(asym), 1e-300));
                REQUIRE(std::abs((ab.value() - ba.value()) - asym) <= 1e-14);
                REQUIRE(m125_asymmetry(b, a) == doctest::Approx(-asym).epsilon(1e-15));
            }
    }

    TEST_CASE("lower bound lemma")
    {
        CHECK(lower_bound_holds(2, 1));
        CHECK(lower_bound_holds(3, 2));
        CHECK_THROWS_AS(lower_bound_holds(1, 1), std::domain_error);
        CHECK_THROWS_AS(lower_bound_holds(1, 2), std::domain_error);
        CHECK_THROWS_AS(lower_bound_holds(2, 0), std::domain_error);
        for (Int a = 2; a <= 300; ++a)
            for (Int b = 1; b < a; ++b) {
                INFO(a << "," << b);
                REQUIRE(lower_bound_holds(a, b));
                REQUIRE(m125_asymmetry(a, b) > 0.0);
            }
        // Large arguments take the arbitrary-width path.
        CHECK(lower_bound_holds(3'000'000'000LL, 1'000'000'000LL));
    }

    TEST_CASE("leading term dominates along rays")
    {
        for (const char* name : {"m004", "m003", "m125", "m129"}) {
            auto r = builtin_record(name);
            auto s = builtin_series(name);
            // Q = |z|^2 / |Im tau|, so |dV - pi^2/Q| Q^2 = 2 pi^4 |Im(c3/z^4)| Q^2
            // never exceeds 2 pi^4 |c3| / |Im tau|^2.
            double im = std::abs(s.tau.imag());
            double ceiling = 2 * pi4 * std::abs(s.c3) / (im * im) * (1 + 1e-9);
            for (double angle : {0.1, 0.7, 1.3, 2.2, 2.9}) {
                std::vector<double> scaled;
                for (double radius : {1e2, 1e3, 1e4}) {
                    double a = std::round(radius * std::cos(angle));
                    double b = std::round(radius * std::sin(angle));
                    double qn = normalized_value(r.shape, a, b);
                    scaled.push_back(std::abs(delta_v_explicit(name, a, b) - pi2 / qn) * qn * qn);
                }
                INFO(std::string(name) << " angle " << angle);
                for (double v : scaled) {
                    CHECK(v <= ceiling);
                    // Degree zero in (a, b): only the rounding onto the lattice moves it.
                    CHECK(std::abs(v - scaled[2]) <= 0.05 * ceiling);
                }
            }
        }
    }

    TEST_CASE("Taylor coefficients of a known function")
    {
        auto c = taylor_coefficients([](Complex u) { return std::exp(u); }, 0.5, 64, 6);
        double fact = 1.0;
        for (int n = 0; n <= 6; ++n) {
            if (n > 0)
                fact *= n;
            CHECK(std::abs(c[n] - 1.0 / fact) < 1e-14);
        }
        CHECK_THROWS(taylor_coefficients([](Complex u) { return u; }, 0.1, 4, 6));
    }

    TEST_CASE("Whitehead link coefficients")
    {
        auto wl = wl_series_coefficients();
        CHECK(std::abs(wl.c1 - Complex(-2.0, 2.0)) < 1e-8);
        CHECK(std::abs(wl.c3 - Complex(0.0, 1.0 / 6.0)) < 1e-8);
        CHECK(std::abs(wl.c2) < 1e-8);
        auto finer = wl_series_coefficients(0.05, 128);
        CHECK(std::abs(finer.c3 - wl.c3) < 1e-9);
        CHECK(std::abs(builtin_series("WL").c3 - wl.c3) < 1e-8);
    }

    TEST_CASE("Lobachevsky function")
    {
        CHECK(std::abs(lobachevsky(pi / 2)) < 1e-15);
        CHECK(std::abs(lobachevsky(0.0)) < 1e-15);
        CHECK(std::abs(octahedron_volume() - 3.663862) < 1e-6);
        CHECK(std::abs(figure_eight_volume() - 2.029883) < 1e-6);
        CHECK(octahedron_volume() == doctest::Approx(8 * lobachevsky(pi / 4)));
        // Independent partial sum; its tail is below 1/(2N).
        const long N = 200'000;
        std::mt19937_64 rng(37);
        std::uniform_real_distribution<double> u(-4.0, 4.0);
        for (int i = 0; i < 40; ++i) {
            double t = u(rng);
            CHECK(std::abs(lobachevsky(t) - oracle::lobachevsky_partial(t, N)) <= 1.0 / (2.0 * N));
            // odd, period pi, duplication formula
            CHECK(lobachevsky(-t) == doctest::Approx(-lobachevsky(t)).epsilon(1e-12));
            CHECK(std::abs(lobachevsky(t + pi) - lobachevsky(t)) < 1e-13);
            CHECK(std::abs(lobachevsky(2 * t) - 2 * lobachevsky(t) - 2 * lobachevsky(t + pi / 2)) < 1e-13);
        }
    }

    TEST_CASE("certificate examples")
    {
        auto c = certify_unique_volume(builtin_record("m004"), 7, 4, 5.0, 10'000);
        CHECK(c.q0_integer == 241);
        CHECK(c.q0_normalized == doctest::Approx(241 / (2 * sqrt3)).epsilon(1e-12));
        CHECK(c.gap_integer == 4);
        CHECK(c.gap_normalized == doctest::Approx(4 / (2 * sqrt3)).epsilon(1e-12));
        CHECK(c.n_q0 == 4);
        CHECK(c.bound == boost::rational<Int>(1));
        CHECK_FALSE(c.valid);

        auto one = certify_unique_volume(builtin_record("m004"), 1, 0, 5.0, 100);
        CHECK(one.gap_integer == 11);
        CHECK_FALSE(one.valid);

        auto m125 = certify_unique_volume(builtin_record("m125"), 1, 2, 0.1, 10'000);
        CHECK(m125.n_q0 == 8);
        CHECK(m125.bound == boost::rational<Int>(2));
        CHECK(m125.symmetry_order == 4);

        CHECK_THROWS_AS(certify_unique_volume(builtin_record("m004"), 2, 4, 5.0, 10'000), std::domain_error);
        CHECK_THROWS_AS(certify_unique_volume(builtin_record("m004"), 7, 4, 0.0, 10'000), std::domain_error);
        CHECK_THROWS_AS(certify_unique_volume(builtin_record("m004"), 7, 4, 5.0, 241), std::domain_error);
    }

    TEST_CASE("default C2 records its regime")
    {
        auto low = certify_unique_volume(builtin_record("m004"), 7, 4, 10'000);
        CHECK(low.c2 == default_c2);
        CHECK(low.c2_source == C2Source::general_bound);
        CHECK(low.regime_verified == (low.q0_normalized >= general_bound_min_q));
        CHECK(low.regime_verified);
        auto small = certify_unique_volume(builtin_record("m004"), 1, 1, 10'000);
        CHECK_FALSE(small.regime_verified);
        auto given = certify_unique_volume(builtin_record("m004"), 1, 1, 1.0, 10'000);
        CHECK(given.c2_source == C2Source::caller);
        CHECK(given.regime_verified);
    }

    TEST_CASE("certificate arithmetic over 1e3 random cases")
    {
        std::mt19937_64 rng(41);
        std::uniform_int_distribution<Int> coord(-30, 30);
        std::uniform_real_distribution<double> c2d(0.01, 3.0);
        const auto& names = builtin_record_names();
        int done = 0;
        while (done < 1000) {
            auto r = builtin_record(names[rng() % names.size()]);
            Int a = coord(rng), b = coord(rng);
            if (std::gcd(a, b) != 1)
                continue;
            ++done;
            Int q0 = evaluate(r.integer_form, a, b);
            Int limit = q0 + 1 + static_cast<Int>(rng() % 3000);
            double c2 = c2d(rng);
            auto c = certify_unique_volume(r, a, b, c2, limit);
            const auto& f = r.integer_form;
            Int n = static_cast<Int>(
                oracle::reps_in_box(f.a(), f.b(), f.c(), q0, oracle::safe_box(f.a(), f.b(), f.c(), q0), true).size());
            INFO(r.name << " (" << a << "," << b << ") limit " << limit);
            REQUIRE(c.q0_integer == q0);
            REQUIRE(c.n_q0 == n);
            REQUIRE(c.bound * c.symmetry_order == boost::rational<Int>(c.n_q0));
            REQUIRE(c.symmetry_order == static_cast<Int>(r.symmetry_group.size()));
            REQUIRE(c.valid == (c.gap_normalized > 2 * c2));
            REQUIRE(c.gap_normalized == doctest::Approx(static_cast<double>(c.gap_integer) / r.scale).epsilon(1e-14));
            REQUIRE(c.q0_normalized == doctest::Approx(static_cast<double>(q0) / r.scale).epsilon(1e-12));
            REQUIRE(c.gap_integer == two_sided_gap(f, q0, limit));
        }
    }
}
