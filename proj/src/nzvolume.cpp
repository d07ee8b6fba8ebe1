#include "volrigid/nzvolume.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

namespace volrigid {

namespace {

using std::numbers::pi;
const double sqrt3 = std::sqrt(3.0);
const double pi2 = pi * pi;
const double pi4 = pi2 * pi2;

void require_nonzero(double p, double q)
{
    if (p == 0.0 && q == 0.0)
        throw std::domain_error("Dehn filling slope (p,q) must be nonzero");
}

} // namespace

NZSeries builtin_series(const std::string& name)
{
    const Complex i{0.0, 1.0};
    auto make = [&](Complex c1, Complex c3) { return NZSeries{name, c1, c3, -c1}; };
    if (name == "m004")
        return make(2.0 * sqrt3 * i, 2.0 * sqrt3 / 3.0 * i);
    if (name == "m003") {
        // dV_m003(a,b) = dV_m004(2a+b, b/2) and z_m004 = 2 z_m003, so c3 picks up 1/16.
        const Complex omega{0.5, -0.5 * sqrt3};
        return make(-omega, 2.0 * sqrt3 / 3.0 * i / 16.0);
    }
    if (name == "m125")
        return make(i, Complex{-3.0, 1.0} / 48.0);
    if (name == "WL")
        return make({-2.0, 2.0}, i / 6.0);
    if (name == "m129") {
        // WL(p,q) = m129(p + 2q, -q); z_m129 = conj(z_WL) and Im(c3/z^4) is
        // invariant under z -> conj(z) when c3 is purely imaginary.
        return make(2.0 * i, i / 6.0);
    }
    throw std::invalid_argument("unknown manifold '" + name + "'");
}

const std::vector<std::string>& builtin_series_names()
{
    static const std::vector<std::string> names{"m004", "m003", "m125", "WL", "m129"};
    return names;
}

double delta_v_generic(const NZSeries& s, double p, double q)
{
    require_nonzero(p, q);
    const Complex z = p + q * s.tau;
    const Complex z2 = z * z;
    return std::abs(s.c1.imag()) * pi2 / std::norm(z) - 2.0 * pi4 * (s.c3 / (z2 * z2)).imag();
}

DeltaVTerms delta_v_explicit_terms(const std::string& name, double a, double b)
{
    require_nonzero(a, b);
    const double a2 = a * a, b2 = b * b;
    if (name == "m004") {
        const double s = a2 + 12.0 * b2;
        return {2.0 * sqrt3 * pi2 / s,
                4.0 * sqrt3 * (a2 * a2 - 72.0 * a2 * b2 + 144.0 * b2 * b2) * pi4 /
                    (3.0 * std::pow(s, 4))};
    }
    if (name == "m003") {
        const double t = a2 + a * b + b2;
        const double u = 2.0 * a + b;
        const double u2 = u * u;
        return {sqrt3 * pi2 / (2.0 * t),
                pi4 * (-18.0 * b2 * u2 + u2 * u2 + 9.0 * b2 * b2) / (64.0 * sqrt3 * std::pow(t, 4))};
    }
    if (name == "m125") {
        const double s = a2 + b2;
        const double poly = a2 * a2 - 12.0 * a2 * a * b - 6.0 * a2 * b2 + 12.0 * a * b2 * b + b2 * b2;
        return {pi2 / s, pi4 * poly / (24.0 * std::pow(s, 4))};
    }
    if (name == "WL") {
        const double s = a2 + 4.0 * a * b + 8.0 * b2;
        return {2.0 * pi2 / s,
                pi4 * (a2 - 8.0 * b2) * (a2 + 8.0 * a * b + 8.0 * b2) / (3.0 * std::pow(s, 4))};
    }
    if (name == "m129") {
        const double s = a2 + 4.0 * b2;
        return {2.0 * pi2 / s,
                pi4 * (a2 * a2 - 24.0 * a2 * b2 + 16.0 * b2 * b2) / (3.0 * std::pow(s, 4))};
    }
    throw std::invalid_argument("unknown manifold '" + name + "'");
}

Polar polar_coordinates(const NZSeries& series, double p, double q)
{
    const Complex z = p + q * series.tau;
    return {std::abs(z), std::arg(z)};
}

double delta_v_polar(const std::string& name, double r, double theta)
{
    if (!(r > 0.0))
        throw std::domain_error("delta_v_polar: r must be positive");
    const double r2 = r * r, r4 = r2 * r2;
    const double c4 = std::cos(4.0 * theta);
    if (name == "m004")
        return 2.0 * sqrt3 * pi2 / r2 - 4.0 * pi4 * c4 / (sqrt3 * r4);
    if (name == "m003")
        return sqrt3 * pi2 / (2.0 * r2) - pi4 / (4.0 * sqrt3) * c4 / r4;
    if (name == "m125")
        return pi2 / r2 - pi4 * (c4 + 3.0 * std::sin(4.0 * theta)) / (24.0 * r4);
    if (name == "WL" || name == "m129")
        return 2.0 * pi2 / r2 - pi4 * c4 / (3.0 * r4);
    throw std::invalid_argument("unknown manifold '" + name + "'");
}

double m125_asymmetry(double a, double b)
{
    require_nonzero(a, b);
    const double s = a * a + b * b;
    return pi4 * a * b * (a * a - b * b) / std::pow(s, 4);
}

bool lower_bound_holds(Int a, Int b)
{
    if (!(a > b && b > 0))
        throw std::domain_error("lower_bound_holds requires a > b > 0");
    const BigInt A = a, B = b;
    const BigInt lhs = 4 * A * B * (A * A - B * B);
    const BigInt r2 = A * A + B * B;
    return lhs * lhs >= r2 * r2 * r2;
}

std::vector<Complex> taylor_coefficients(const std::function<Complex(Complex)>& f, double radius,
                                         int samples, int max_degree)
{
    if (radius <= 0.0 || samples < 1 || max_degree < 0 || max_degree >= samples)
        throw std::domain_error("taylor_coefficients: need radius > 0 and degree < samples");
    std::vector<Complex> values(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k)
        values[static_cast<std::size_t>(k)] = f(std::polar(radius, 2.0 * pi * k / samples));
    std::vector<Complex> coeffs(static_cast<std::size_t>(max_degree) + 1);
    for (int n = 0; n <= max_degree; ++n) {
        Complex sum{0.0, 0.0};
        for (int k = 0; k < samples; ++k)
            sum += values[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * pi * n * k / samples);
        coeffs[static_cast<std::size_t>(n)] = sum / (static_cast<double>(samples) * std::pow(radius, n));
    }
    return coeffs;
}

WlCoefficients wl_series_coefficients(double radius, int samples)
{
    const Complex i{0.0, 1.0};
    auto minus_v = [&](Complex u) {
        const Complex e = std::exp(u);
        // sqrt(e^{2u} - 6e^u + 1) continued from 2i at u = 0 as i sqrt(-w);
        // -w stays near 4, so the principal root is continuous there.
        const Complex neg_w = -(e * e - 6.0 * e + 1.0);
        if (neg_w.real() <= 0.0)
            throw std::runtime_error("wl_series_coefficients: square root branch cut reached");
        const Complex x = 0.5 * (i * std::sqrt(neg_w) + e - 1.0);
        const Complex arg = -i * x; // = e^{-v/4}, equal to 1 at u = 0
        if (arg.real() <= 0.0)
            throw std::runtime_error("wl_series_coefficients: logarithm branch cut reached");
        return -4.0 * std::log(arg);
    };
    auto c = taylor_coefficients(minus_v, radius, samples, 3);
    return {c[1], c[2], c[3]};
}

double lobachevsky(double theta)
{
    // Lambda is odd and pi-periodic; reduce to [0, pi/2], then use
    // Lambda(t) = Cl2(2t)/2 with Cl2(x) = x - x log x + sum_k |B_2k| x^{2k+1} / (2k (2k+1)!),
    // which converges for |x| < 2 pi.
    double t = std::remainder(theta, pi);
    double sign = 1.0;
    if (t < 0.0) {
        t = -t;
        sign = -1.0;
    }
    if (t == 0.0)
        return 0.0;
    const double x = 2.0 * t;
    double sum = x - x * std::log(x);
    const double x2 = x * x;
    double xp = x; // x^{2k+1}
    for (int k = 1; k <= 40; ++k) {
        xp *= x2;
        const double term = std::abs(boost::math::bernoulli_b2n<double>(k)) * xp /
                            (2.0 * k * boost::math::factorial<double>(2 * k + 1));
        sum += term;
        if (term < 1e-18 * std::abs(sum))
            break;
    }
    return sign * 0.5 * sum;
}

double octahedron_volume()
{
    return 8.0 * lobachevsky(pi / 4.0);
}

double figure_eight_volume()
{
    return 6.0 * lobachevsky(pi / 3.0);
}

UniquenessCertificate certify_unique_volume(const CuspRecord& record, Int a0, Int b0, double c2,
                                            Int scan_limit)
{
    if (gcd_abs(a0, b0) != 1)
        throw std::domain_error("certify_unique_volume: filling (" + std::to_string(a0) + "," +
                                std::to_string(b0) + ") is not primitive");
    if (!(c2 > 0.0))
        throw std::domain_error("certify_unique_volume: C2 must be positive");
    UniquenessCertificate cert;
    cert.record_name = record.name;
    cert.a0 = a0;
    cert.b0 = b0;
    cert.c2 = c2;
    cert.q0_integer = evaluate(record.integer_form, a0, b0);
    if (scan_limit <= cert.q0_integer)
        throw std::domain_error("certify_unique_volume: scan limit " + std::to_string(scan_limit) +
                                " does not exceed Q(a0,b0) = " + std::to_string(cert.q0_integer));
    cert.q0_normalized = static_cast<double>(cert.q0_integer) / record.scale;
    cert.gap_integer = two_sided_gap(primitive_value_set(record.integer_form, scan_limit),
                                     cert.q0_integer);
    cert.gap_normalized = static_cast<double>(cert.gap_integer) / record.scale;
    cert.n_q0 = static_cast<Int>(primitive_representations(record.integer_form, cert.q0_integer).size());
    cert.symmetry_order = static_cast<Int>(record.symmetry_group.size());
    cert.bound = boost::rational<Int>(cert.n_q0, cert.symmetry_order);
    cert.valid = cert.gap_normalized > 2.0 * c2;
    return cert;
}

UniquenessCertificate certify_unique_volume(const CuspRecord& record, Int a0, Int b0,
                                            Int scan_limit)
{
    auto cert = certify_unique_volume(record, a0, b0, default_c2, scan_limit);
    cert.c2_source = C2Source::general_bound;
    cert.regime_verified = cert.q0_normalized >= general_bound_min_q;
    return cert;
}

} // namespace volrigid
