#ifndef VOLRIGID_PRIMESEQ_HPP
#define VOLRIGID_PRIMESEQ_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "volrigid/arith.hpp"
#include "volrigid/quadform.hpp"

namespace volrigid {

struct Congruence
{
    BigInt residue;
    BigInt modulus;
};

/// x = residue mod modulus for each entry; moduli must be pairwise coprime.
struct CongruenceSystem
{
    std::vector<Congruence> congruences;
};

struct CrtSolution
{
    BigInt residue; // 0 <= residue < modulus
    BigInt modulus;
};

/// Throws std::domain_error on a modulus < 2 or a non-coprime pair.
CrtSolution crt_solve(const CongruenceSystem& system);

struct ProgressionOptions
{
    BigInt cap = 1'000'000'000;
    unsigned shards = 1;
    /// Called after every `checkpoint_every` candidates with the running
    /// candidate count.
    std::function<void(std::uint64_t)> progress;
    std::uint64_t checkpoint_every = 1'000'000;
};

/// Visits primes n = n0 (mod M), n <= cap, in increasing order until the
/// visitor returns false. Returns the number of candidates examined.
/// Throws std::domain_error if gcd(n0, M) > 1 and n0 is not prime; in that
/// case the lone prime n0 (if any) is the whole progression.
std::uint64_t for_each_prime_in_progression(const BigInt& n0, const BigInt& M,
                                            const ProgressionOptions& options,
                                            const std::function<bool(const BigInt&)>& visit);

std::vector<BigInt> primes_in_progression(const BigInt& n0, const BigInt& M,
                                          std::size_t count, const BigInt& cap);

/*
 * Which construction a gap-prime search follows.
 *
 *   m004: primes p = 1 (mod 12) represented by a^2 + 12 b^2, with p +- k
 *         not primitively represented by a^2 + ab + b^2 for 0 < k <= g and
 *         p not primitively represented by 4(a^2 + ab + b^2).
 *   m125: values m = 2p, p = 1 (mod 4) prime, represented by 2(a^2 + b^2),
 *         with m +- k not primitively represented by a^2 + b^2 and m not
 *         represented by a^2 + 4 b^2.
 */
enum class Family
{
    m004,
    m125,
};

std::string to_string(Family f);
Family parse_family(const std::string& s);

struct FamilyForms
{
    IntQuadForm target;   // must represent the witness
    IntQuadForm neighbor; // must miss value +- k
    IntQuadForm sister;   // must miss the witness
};

FamilyForms family_forms(Family f);

struct GapPrimeSpec
{
    Int g = 1;
    Family family = Family::m004;
    std::vector<Int> avoid_primes; // 2g distinct primes

    /// Throws std::invalid_argument on a wrong count, duplicates, a
    /// non-prime, a prime in the wrong residue class, or a shift that the
    /// prime divides (which would empty the progression).
    void validate() const;
};

/// Smallest 2g primes = 5 (mod 6) for m004, = 3 (mod 4) for m125.
std::vector<Int> default_avoid_primes(Family family, Int g);

struct GapPrimeWitness
{
    Int value = 0;              // p for m004, m = 2p for m125
    Representation representation; // by the target form, smallest (x, y) with x, y >= 0
    Int verified_gap = 0;       // largest g' <= g with condition (ii) holding up to g'
    std::map<std::string, bool> conditions; // "i", "ii", "iii"

    bool verified() const;
};

/// Congruences on the prime p. For m125 the shifts on m = 2p are moved onto
/// p by inverting 2 modulo each avoid prime.
CongruenceSystem build_congruences(const GapPrimeSpec& spec);

/// Brute-force check of the three conditions; never throws for failed
/// conditions, only for value < 2 or out-of-range arithmetic.
GapPrimeWitness verify_witness(Int value, const GapPrimeSpec& spec);

struct GapPrimeSequence
{
    std::vector<GapPrimeWitness> witnesses;
    bool truncated = false; // cap reached before count witnesses
    std::uint64_t candidates_scanned = 0;
    CrtSolution progression;
};

GapPrimeSequence gap_prime_sequence(const GapPrimeSpec& spec, std::size_t count,
                                    const ProgressionOptions& options);

inline GapPrimeSequence gap_prime_sequence(const GapPrimeSpec& spec, std::size_t count,
                                           const BigInt& cap)
{
    ProgressionOptions o;
    o.cap = cap;
    return gap_prime_sequence(spec, count, o);
}

} // namespace volrigid

#endif
