#include "volrigid/arith.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/miller_rabin.hpp>

namespace volrigid {

Int gcd_abs(Int x, Int y)
{
    return std::gcd(x < 0 ? -x : x, y < 0 ? -y : y);
}

Wide isqrt(Wide n)
{
    if (n < 0)
        throw std::domain_error("isqrt of a negative value");
    if (n < 2)
        return n;
    auto r = static_cast<Wide>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

Int narrow(Wide v, const char* what)
{
    if (v > static_cast<Wide>(INT64_MAX) || v < static_cast<Wide>(INT64_MIN))
        throw std::range_error(std::string(what) + ": result exceeds 64-bit range");
    return static_cast<Int>(v);
}

std::vector<std::pair<Int, int>> factorize(Int n)
{
    if (n < 1)
        throw std::domain_error("factorize: n must be positive");
    std::vector<std::pair<Int, int>> out;
    auto strip = [&](Int p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0)
            out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (Int p = 5; p <= n / p; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : small) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is exact for every n < 3.3e24.
    for (auto a : small) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

bool is_prime(const BigInt& n)
{
    if (n < 2)
        return false;
    if (n <= std::numeric_limits<std::uint64_t>::max())
        return is_prime(n.convert_to<std::uint64_t>());
    std::mt19937_64 gen(0x766f6c726967ULL);
    return boost::multiprecision::miller_rabin_test(n, 64, gen);
}

int kronecker_symbol(Int d, Int n)
{
    if (n < 1)
        throw std::domain_error("kronecker_symbol: n must be >= 1");
    int k = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (d % 2 == 0)
            return 0;
        Int r = ((d % 8) + 8) % 8;
        if (r == 3 || r == 5)
            k = -k;
    }
    // Jacobi symbol (d/n), n odd.
    Int a = ((d % n) + n) % n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int r = n % 8;
            if (r == 3 || r == 5)
                k = -k;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            k = -k;
        a %= n;
    }
    return n == 1 ? k : 0;
}

bool is_square_mod_prime_power(Int d, Int p, int e)
{
    Wide pe = 1;
    for (int i = 0; i < e; ++i)
        pe *= p;
    Wide r = static_cast<Wide>(d) % pe;
    if (r < 0)
        r += pe;
    if (r == 0)
        return true;
    int v = 0;
    while (r % p == 0) {
        r /= p;
        ++v;
    }
    if (v % 2 != 0)
        return false;
    int rest = e - v;
    if (p == 2) {
        if (rest == 1)
            return true;
        if (rest == 2)
            return r % 4 == 1;
        return r % 8 == 1;
    }
    return kronecker_symbol(static_cast<Int>(r % p), p) == 1;
}

} // namespace volrigid
