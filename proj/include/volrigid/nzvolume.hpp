#ifndef VOLRIGID_NZVOLUME_HPP
#define VOLRIGID_NZVOLUME_HPP

#include <functional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "volrigid/cusplattice.hpp"

namespace volrigid {

/*
 * Neumann-Zagier expansion -v = c1 u + c3 u^3 + ... of the longitude
 * holonomy logarithm in the meridian one. Everything in this module is the
 * order-4 truncation
 *
 *     dV(p,q) = |Im c1| pi^2 / |z|^2 - 2 pi^4 Im(c3 / z^4),   z = p + q tau,
 *
 * i.e. the O(1/|z|^6) tail is dropped. None of these functions return true
 * volumes of filled manifolds.
 */
struct NZSeries
{
    std::string name;
    Complex c1;
    Complex c3;
    Complex tau; // -c1
};

/// m004, m003, m125, WL, m129.
NZSeries builtin_series(const std::string& name);
const std::vector<std::string>& builtin_series_names();

/// Leading (order 2) and correction (order 4) terms; value = leading - correction.
struct DeltaVTerms
{
    double leading = 0.0;
    double correction = 0.0;

    double value() const { return leading - correction; }
};

double delta_v_generic(const NZSeries& series, double p, double q);

/// The closed-form rational expressions for each manifold, accepting real
/// arguments so that the substitution identities can be checked off-lattice.
DeltaVTerms delta_v_explicit_terms(const std::string& name, double a, double b);

inline double delta_v_explicit(const std::string& name, double a, double b)
{
    return delta_v_explicit_terms(name, a, b).value();
}

/// z = p + q tau in polar form.
struct Polar
{
    double r;
    double theta;
};

Polar polar_coordinates(const NZSeries& series, double p, double q);

/// The same truncation written in r and theta.
double delta_v_polar(const std::string& name, double r, double theta);

/// pi^4 ab(a^2 - b^2) / (a^2 + b^2)^4: the order-4 difference
/// dV_m125(a,b) - dV_m125(b,a).
double m125_asymmetry(double a, double b);

/// ab(a^2 - b^2) >= (a^2 + b^2)^{3/2} / 4, decided in exact integers.
/// Requires a > b > 0.
bool lower_bound_holds(Int a, Int b);

/// Taylor coefficients c_0..c_max_degree of f at 0 by the trapezoid rule on
/// the circle |u| = radius.
std::vector<Complex> taylor_coefficients(const std::function<Complex(Complex)>& f,
                                         double radius, int samples, int max_degree);

struct WlCoefficients
{
    Complex c1, c2, c3;
};

/// Expands -v(u) = -4 log((-i/2)(sqrt(e^{2u} - 6e^u + 1) + e^u - 1)) for the
/// Whitehead link numerically. Throws std::runtime_error if the log or the
/// square root would have to cross a branch cut on the sampling circle.
WlCoefficients wl_series_coefficients(double radius = 0.1, int samples = 64);

/// Lobachevsky function Lambda(theta) = -int_0^theta log|2 sin t| dt.
double lobachevsky(double theta);

/// Volume of the regular ideal octahedron, 8 Lambda(pi/4).
double octahedron_volume();

/// Volume of the figure-eight knot complement, 6 Lambda(pi/3).
double figure_eight_volume();

enum class C2Source
{
    caller,
    general_bound, // -7.05 <= pi^2/dV - Q <= 5.82, valid only for Q >= 57.5041
};

constexpr double default_c2 = 7.05;
constexpr double general_bound_min_q = 57.5041;

struct UniquenessCertificate
{
    std::string record_name;
    Int a0 = 0, b0 = 0;
    Int q0_integer = 0;
    double q0_normalized = 0.0;
    Int gap_integer = 0;
    double gap_normalized = 0.0;
    double c2 = 0.0;
    C2Source c2_source = C2Source::caller;
    bool regime_verified = true; // false when the default C2 is used outside its regime
    Int n_q0 = 0;                // primitive solutions of Q(a,b) = q0
    Int symmetry_order = 0;      // |G_M|
    boost::rational<Int> bound;  // n_q0 / |G_M|
    bool valid = false;          // gap_normalized > 2 C2
};

/// Throws std::domain_error for a non-coprime filling, C2 <= 0 or a scan
/// limit that does not exceed the integer form value at (a0, b0).
UniquenessCertificate certify_unique_volume(const CuspRecord& record, Int a0, Int b0, double c2,
                                            Int scan_limit);

/// Same, with C2 = default_c2 and its Q >= 57.5041 regime recorded.
UniquenessCertificate certify_unique_volume(const CuspRecord& record, Int a0, Int b0,
                                            Int scan_limit);

} // namespace volrigid

#endif
