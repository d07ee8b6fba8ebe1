#include "volrigid/quadform.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace volrigid {

namespace {

constexpr Int scan_threshold = 1'000'000;

Int parse_int(const std::string& s)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad integer '" + s + "'");
    }
    if (used != s.size())
        throw std::invalid_argument("bad integer '" + s + "'");
    return v;
}

Wide eval_wide(const IntQuadForm& q, Wide x, Wide y)
{
    return q.a() * x * x + q.b() * x * y + q.c() * y * y;
}

} // namespace

IntQuadForm::IntQuadForm(Int a, Int b, Int c) : a_(a), b_(b), c_(c)
{
    Wide d = static_cast<Wide>(b) * b - static_cast<Wide>(4) * a * c;
    if (a <= 0 || d >= 0)
        throw std::domain_error("form " + to_string() + " is not positive definite");
    narrow(d, "discriminant");
}

IntQuadForm IntQuadForm::parse(const std::string& text)
{
    std::vector<Int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        parts.push_back(parse_int(item));
    if (parts.size() != 3)
        throw std::invalid_argument("form must be given as a,b,c: '" + text + "'");
    return {parts[0], parts[1], parts[2]};
}

std::string IntQuadForm::to_string() const
{
    return std::to_string(a_) + "," + std::to_string(b_) + "," + std::to_string(c_);
}

std::ostream& operator<<(std::ostream& o, const IntQuadForm& q)
{
    return o << q.to_string();
}

bool ValueSet::contains(Int v) const
{
    return std::binary_search(values.begin(), values.end(), v);
}

Int evaluate(const IntQuadForm& form, Int x, Int y)
{
    // Each product is < 2^127 when |x|,|y| and the coefficients are < 2^42;
    // beyond that go through BigInt.
    constexpr Int safe = Int(1) << 40;
    auto small = [&](Int v) { return v > -safe && v < safe; };
    if (small(x) && small(y) && small(form.a()) && small(form.b()) && small(form.c()))
        return narrow(eval_wide(form, x, y), "evaluate");
    BigInt v = BigInt(form.a()) * x * x + BigInt(form.b()) * x * y + BigInt(form.c()) * y * y;
    if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
        throw std::range_error("evaluate: result exceeds 64-bit range");
    return v.convert_to<Int>();
}

Int discriminant(const IntQuadForm& form)
{
    return narrow(static_cast<Wide>(form.b()) * form.b() -
                      static_cast<Wide>(4) * form.a() * form.c(),
                  "discriminant");
}

std::vector<Representation> representations(const IntQuadForm& form, Int m,
                                            bool primitive_only)
{
    if (m < 0)
        throw std::domain_error("representations: m must be non-negative");
    std::vector<Representation> out;
    const Wide a = form.a();
    const Wide b = form.b();
    const Wide d = discriminant(form);
    // Completing the square: (2a x + b y)^2 = D y^2 + 4 a m, so
    // |y| <= sqrt(4am/|D|).
    const Wide four_am = 4 * a * m;
    const Wide ymax = isqrt(four_am / -d) + 1;
    for (Wide y = -ymax; y <= ymax; ++y) {
        Wide disc = d * y * y + four_am;
        if (disc < 0)
            continue;
        Wide s = isqrt(disc);
        if (s * s != disc)
            continue;
        Wide roots[2] = {-b * y - s, -b * y + s};
        for (int i = 0; i < (s == 0 ? 1 : 2); ++i) {
            if (roots[i] % (2 * a) != 0)
                continue;
            Int x = narrow(roots[i] / (2 * a), "representations");
            Int yy = static_cast<Int>(y);
            bool prim = gcd_abs(x, yy) == 1;
            if (primitive_only && !prim)
                continue;
            out.push_back({x, yy, prim});
        }
    }
    // roots[] is already ascending in x for each y.
    return out;
}

ValueSet primitive_value_set(const IntQuadForm& form, Int limit)
{
    if (limit < 0)
        throw std::domain_error("primitive_value_set: limit must be non-negative");
    ValueSet vs{form, limit, {}};
    const Wide a = form.a();
    const Wide b = form.b();
    const Wide d = discriminant(form);
    const Wide four_al = 4 * a * limit;
    const Wide ymax = isqrt(four_al / -d) + 1;
    for (Wide y = -ymax; y <= ymax; ++y) {
        Wide disc = d * y * y + four_al;
        if (disc < 0)
            continue;
        Wide s = isqrt(disc);
        // Q(x,y) <= L  <=>  |2a x + b y| <= sqrt(disc)
        Wide lo = (-b * y - s) / (2 * a) - 1;
        Wide hi = (-b * y + s) / (2 * a) + 1;
        for (Wide x = lo; x <= hi; ++x) {
            if (gcd_abs(static_cast<Int>(x), static_cast<Int>(y)) != 1)
                continue;
            Wide v = eval_wide(form, x, y);
            if (v <= limit)
                vs.values.push_back(static_cast<Int>(v));
        }
    }
    std::sort(vs.values.begin(), vs.values.end());
    vs.values.erase(std::unique(vs.values.begin(), vs.values.end()), vs.values.end());
    return vs;
}

Int two_sided_gap(const ValueSet& vs, Int q0)
{
    if (vs.limit <= q0)
        throw std::domain_error("two_sided_gap: limit must exceed q0");
    auto it = std::lower_bound(vs.values.begin(), vs.values.end(), q0);
    if (it == vs.values.end() || *it != q0)
        throw std::domain_error("two_sided_gap: " + std::to_string(q0) +
                                " has no primitive representation by " +
                                vs.form.to_string());
    Int gap = vs.limit - q0;
    if (it != vs.values.begin())
        gap = std::min(gap, q0 - *std::prev(it));
    if (std::next(it) != vs.values.end())
        gap = std::min(gap, *std::next(it) - q0);
    return gap;
}

Int two_sided_gap(const IntQuadForm& form, Int q0, Int limit)
{
    if (limit <= q0)
        throw std::domain_error("two_sided_gap: limit must exceed q0");
    return two_sided_gap(primitive_value_set(form, limit), q0);
}

bool discriminant_square_mod_by_scan(const IntQuadForm& form, Int m)
{
    if (m < 1)
        throw std::domain_error("kronecker_admissible: m must be >= 1");
    const Wide mod = static_cast<Wide>(4) * m;
    Wide target = static_cast<Wide>(discriminant(form)) % mod;
    if (target < 0)
        target += mod;
    for (Wide x = 0; x <= mod / 2; ++x) {
        if (x * x % mod == target)
            return true;
    }
    return false;
}

bool kronecker_admissible(const IntQuadForm& form, Int m)
{
    if (m < 1)
        throw std::domain_error("kronecker_admissible: m must be >= 1");
    const Int d = discriminant(form);
    auto factors = factorize(m);
    // A square mod 4m is a square mod every p | m, so (D/p) = -1 rules m out.
    // (D/p) = 0 does not: 3 = Q(1,1) for x^2+xy+y^2 with D = -3.
    for (auto [p, e] : factors) {
        if (kronecker_symbol(d, p) == -1)
            return false;
    }
    if (4 * static_cast<Wide>(m) <= scan_threshold)
        return discriminant_square_mod_by_scan(form, m);
    bool has_two = false;
    for (auto& [p, e] : factors) {
        if (p == 2) {
            e += 2;
            has_two = true;
        }
    }
    if (!has_two)
        factors.insert(factors.begin(), {2, 2});
    for (auto [p, e] : factors) {
        if (!is_square_mod_prime_power(d, p, e))
            return false;
    }
    return true;
}

} // namespace volrigid
