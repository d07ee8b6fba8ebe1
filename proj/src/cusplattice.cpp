#include "volrigid/cusplattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace volrigid {

namespace {

constexpr double rational_tolerance = 1e-9;
constexpr Int max_denominator = 1'000'000;

struct Fraction
{
    Int num, den;
};

// Best continued-fraction convergent within tolerance and denominator cap.
std::optional<Fraction> rationalize(double x)
{
    if (!std::isfinite(x) || std::abs(x) > 1e12)
        return std::nullopt;
    Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(r);
        Int ai = static_cast<Int>(fl);
        Int h2 = ai * h1 + h0;
        Int k2 = ai * k1 + k0;
        if (k2 > max_denominator)
            break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= rational_tolerance)
            return Fraction{h1, k1};
        double frac = r - fl;
        if (frac < 1e-15)
            break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

CuspRecord make_record(std::string name, Complex tau, IntQuadForm form, double scale,
                       std::vector<Matrix2> gens, int full_order)
{
    return {std::move(name), CuspShape(tau), form, scale, close_group(gens), full_order};
}

} // namespace

CuspShape::CuspShape(Complex tau) : tau_(tau)
{
    if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
        throw std::domain_error("cusp shape must be finite");
    if (tau.imag() == 0.0)
        throw std::domain_error("cusp shape must have nonzero imaginary part");
    if (tau_.imag() > 0)
        tau_ = std::conj(tau_);
}

double normalized_value(const CuspShape& shape, double a, double b)
{
    return std::norm(a + b * shape.tau()) / std::abs(shape.tau().imag());
}

CuspRecord builtin_record(const std::string& name)
{
    const double sqrt3 = std::sqrt(3.0);
    const Matrix2 minus{-1, 0, 0, -1};
    if (name == "m004")
        return make_record(name, {0.0, -2.0 * sqrt3}, {1, 0, 12}, 2.0 * sqrt3,
                           {minus, {1, 0, 0, -1}}, 4);
    if (name == "m003")
        return make_record(name, {0.5, -0.5 * sqrt3}, {4, 4, 4}, 2.0 * sqrt3,
                           {minus, {1, 1, 0, -1}}, 12);
    if (name == "m125")
        return make_record(name, {0.0, -1.0}, {2, 0, 2}, 2.0, {minus, {0, -1, 1, 0}}, 8);
    if (name == "m129")
        return make_record(name, {0.0, -2.0}, {1, 0, 4}, 2.0, {minus}, 4);
    throw std::invalid_argument("unknown cusp record '" + name + "'");
}

const std::vector<std::string>& builtin_record_names()
{
    static const std::vector<std::string> names{"m004", "m003", "m125", "m129"};
    return names;
}

bool is_automorphism(const IntQuadForm& q, const Matrix2& m)
{
    Int det = m.det();
    if (det != 1 && det != -1)
        return false;
    // Q(alpha x + beta y, gamma x + delta y) expanded.
    const Wide a = q.a(), b = q.b(), c = q.c();
    const Wide al = m.m00, be = m.m01, ga = m.m10, de = m.m11;
    Wide na = a * al * al + b * al * ga + c * ga * ga;
    Wide nb = 2 * a * al * be + b * (al * de + be * ga) + 2 * c * ga * de;
    Wide nc = a * be * be + b * be * de + c * de * de;
    return na == a && nb == b && nc == c;
}

std::vector<Matrix2> automorphism_group(const IntQuadForm& form)
{
    auto first = representations(form, form.a(), false);
    auto second = representations(form, form.c(), false);
    std::vector<Matrix2> out;
    for (const auto& u : first) {
        for (const auto& v : second) {
            Matrix2 m{u.x, v.x, u.y, v.y};
            if (is_automorphism(form, m))
                out.push_back(m);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Matrix2> close_group(const std::vector<Matrix2>& generators)
{
    std::set<Matrix2> group{Matrix2::identity()};
    std::vector<Matrix2> frontier{Matrix2::identity()};
    while (!frontier.empty()) {
        std::vector<Matrix2> next;
        for (const auto& g : frontier) {
            for (const auto& h : generators) {
                Matrix2 p = g * h;
                if (group.size() > 1024)
                    throw std::domain_error("close_group: generators do not span a finite group");
                if (group.insert(p).second)
                    next.push_back(p);
            }
        }
        frontier = std::move(next);
    }
    return {group.begin(), group.end()};
}

Orbit orbit(const CuspRecord& record, Int a, Int b, bool full_group)
{
    if (a == 0 && b == 0)
        throw std::domain_error("orbit: (a,b) must be nonzero");
    Orbit o{{a, b}, {}};
    const auto group = full_group ? automorphism_group(record.integer_form)
                                  : record.symmetry_group;
    for (const auto& g : group)
        o.members.insert(g.apply(a, b));
    return o;
}

RescaledForm integral_rescale(const CuspShape& shape)
{
    const Complex tau = shape.tau();
    auto trace = rationalize(2.0 * tau.real());
    auto norm = rationalize(std::norm(tau));
    if (!trace || !norm)
        throw unsupported_shape("cusp shape does not lie in an imaginary quadratic field "
                                "(trace or norm not recognisably rational)");
    Int lcm = std::lcm(trace->den, norm->den);
    if (lcm > max_denominator)
        throw unsupported_shape("cusp shape does not lie in an imaginary quadratic field "
                                "(common denominator exceeds 1e6)");
    Int ca = lcm;
    Int cb = trace->num * (lcm / trace->den);
    Int cc = norm->num * (lcm / norm->den);
    Int g = std::gcd(std::gcd(ca, gcd_abs(cb, 0)), gcd_abs(cc, 0));
    Int lambda = lcm / g;
    return {IntQuadForm(ca / g, cb / g, cc / g),
            static_cast<double>(lambda) * std::abs(tau.imag())};
}

} // namespace volrigid
