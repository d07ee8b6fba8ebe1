#ifndef VOLRIGID_ARITH_HPP
#define VOLRIGID_ARITH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace volrigid {

using Int = std::int64_t;
using Wide = __int128;
using BigInt = boost::multiprecision::cpp_int;

Int gcd_abs(Int x, Int y);

/// Floor of the square root of a non-negative 128-bit value.
Wide isqrt(Wide n);

/// Narrows a 128-bit intermediate back to Int, throwing std::range_error
/// when it does not fit.
Int narrow(Wide v, const char* what);

/// Prime factorization by trial division, ascending primes with exponents.
std::vector<std::pair<Int, int>> factorize(Int n);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Exact below 2^64; above that a 64-round Miller-Rabin with a fixed seed,
/// so the answer is reproducible and wrong with probability < 2^-128.
bool is_prime(const BigInt& n);

/// Kronecker symbol (d/n) for n >= 1.
int kronecker_symbol(Int d, Int n);

/// True iff d is congruent to a square modulo p^e (p prime, e >= 1).
bool is_square_mod_prime_power(Int d, Int p, int e);

} // namespace volrigid

#endif
