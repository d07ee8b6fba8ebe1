#ifndef VOLRIGID_CUSPLATTICE_HPP
#define VOLRIGID_CUSPLATTICE_HPP

#include <array>
#include <complex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "volrigid/quadform.hpp"

namespace volrigid {

using Complex = std::complex<double>;

/// Shape of a cusp torus C/(Z + tau Z). Stored with Im(tau) < 0, the
/// orientation convention of link complements in S^3; a shape given with
/// positive imaginary part is conjugated on construction.
class CuspShape
{
    Complex tau_;

    public:
    explicit CuspShape(Complex tau);

    Complex tau() const { return tau_; }
};

/// Integer 2x2 matrix acting on column vectors (a, b).
struct Matrix2
{
    Int m00, m01, m10, m11;

    Int det() const { return m00 * m11 - m01 * m10; }
    std::pair<Int, Int> apply(Int a, Int b) const
    {
        return {m00 * a + m01 * b, m10 * a + m11 * b};
    }
    Matrix2 operator*(const Matrix2& o) const
    {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    auto operator<=>(const Matrix2&) const = default;

    static constexpr Matrix2 identity() { return {1, 0, 0, 1}; }
};

struct CuspRecord
{
    std::string name;
    CuspShape shape;
    IntQuadForm integer_form;
    double scale; // integer_form(a,b) = scale * normalized_value(shape, a, b)
    std::vector<Matrix2> symmetry_group; // G_M, every element listed
    int full_form_group_order;            // |G_Q|
};

struct Orbit
{
    std::pair<Int, Int> seed;
    std::set<std::pair<Int, Int>> members;
};

struct RescaledForm
{
    IntQuadForm form;
    double scale; // form(a,b) = scale * normalized_value(shape, a, b)
};

class unsupported_shape : public std::domain_error
{
    public:
    using std::domain_error::domain_error;
};

/// |a + b tau|^2 / |Im tau|, the extremal length of the slope (a,b).
double normalized_value(const CuspShape& shape, double a, double b);

/// m004, m003, m125 or m129; std::invalid_argument otherwise.
CuspRecord builtin_record(const std::string& name);

const std::vector<std::string>& builtin_record_names();

/// Symbolic check: det = +-1 and the substituted coefficients match.
bool is_automorphism(const IntQuadForm& form, const Matrix2& m);

/// All of GL(2,Z) fixing the form. Columns of an automorphism represent a
/// and c, so the search is over those finitely many representations.
std::vector<Matrix2> automorphism_group(const IntQuadForm& form);

/// Closure of a generator set under multiplication, sorted.
std::vector<Matrix2> close_group(const std::vector<Matrix2>& generators);

Orbit orbit(const CuspRecord& record, Int a, Int b, bool full_group);

/// Primitive integer form proportional to |x + tau y|^2. Throws
/// unsupported_shape when tau + conj(tau) or |tau|^2 is not rational with
/// denominator <= 1e6 (to 1e-9).
RescaledForm integral_rescale(const CuspShape& shape);

} // namespace volrigid

#endif
