#ifndef VOLRIGID_QUADFORM_HPP
#define VOLRIGID_QUADFORM_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "volrigid/arith.hpp"

namespace volrigid {

/*
 * Positive definite integral binary quadratic form a x^2 + b xy + c y^2.
 * The constructor rejects anything that is not positive definite, so every
 * value set below is finite and Q(x,y) = 0 only at the origin.
 */
class IntQuadForm
{
    Int a_, b_, c_;

    public:
    IntQuadForm(Int a, Int b, Int c);

    /// Parses "a,b,c".
    static IntQuadForm parse(const std::string& text);

    Int a() const { return a_; }
    Int b() const { return b_; }
    Int c() const { return c_; }

    bool operator==(const IntQuadForm&) const = default;

    std::string to_string() const;
};

std::ostream& operator<<(std::ostream& o, const IntQuadForm& q);

struct Representation
{
    Int x = 0;
    Int y = 0;
    bool primitive = false;

    bool operator==(const Representation&) const = default;
};

struct ValueSet
{
    IntQuadForm form;
    Int limit;
    std::vector<Int> values; // ascending, distinct

    bool contains(Int v) const;
};

/// a x^2 + b xy + c y^2, exact; std::range_error if it leaves 64 bits.
Int evaluate(const IntQuadForm& form, Int x, Int y);

Int discriminant(const IntQuadForm& form);

/// Every integer solution of Q(x,y) = m, ordered by (y, x). When
/// primitive_only is set, pairs with gcd(x,y) != 1 are dropped.
std::vector<Representation> representations(const IntQuadForm& form, Int m,
                                            bool primitive_only);

inline std::vector<Representation> primitive_representations(const IntQuadForm& form,
                                                             Int m)
{
    return representations(form, m, true);
}

/// Distinct values Q(x,y) <= limit over coprime (x,y).
ValueSet primitive_value_set(const IntQuadForm& form, Int limit);

/// Distance from q0 to the nearest other primitively represented value,
/// looking no further than limit; capped at limit - q0. Throws
/// std::domain_error when q0 itself is not primitively represented.
Int two_sided_gap(const IntQuadForm& form, Int q0, Int limit);

Int two_sided_gap(const ValueSet& values, Int q0);

/// True iff the discriminant is a square modulo 4m. Necessary for m to have
/// a primitive representation; not sufficient.
bool kronecker_admissible(const IntQuadForm& form, Int m);

/// The residue-scan half of kronecker_admissible, exposed for cross-checks.
bool discriminant_square_mod_by_scan(const IntQuadForm& form, Int m);

} // namespace volrigid

#endif
