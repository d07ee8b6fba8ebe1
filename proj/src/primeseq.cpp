#include "volrigid/primeseq.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

namespace volrigid {

namespace {

BigInt mod_floor(const BigInt& a, const BigInt& m)
{
    BigInt r = a % m;
    if (r < 0)
        r += m;
    return r;
}

// Inverse of a modulo m via extended Euclid; gcd(a, m) must be 1.
BigInt mod_inverse(const BigInt& a, const BigInt& m)
{
    BigInt old_r = mod_floor(a, m), r = m;
    BigInt old_s = 1, s = 0;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1)
        throw std::domain_error("mod_inverse: not invertible");
    return mod_floor(old_s, m);
}

bool fits_u64(const BigInt& v)
{
    return v >= 0 && v <= std::numeric_limits<std::uint64_t>::max() / 2;
}

// Tests candidates first + j*step for j in [0, n) and returns the indices of
// primes, split across `shards` threads.
std::vector<std::uint64_t> prime_indices(std::uint64_t first, std::uint64_t step,
                                         std::uint64_t n, unsigned shards)
{
    auto scan = [=](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& out) {
        for (std::uint64_t j = lo; j < hi; ++j) {
            if (is_prime(first + j * step))
                out.push_back(j);
        }
    };
    std::vector<std::uint64_t> out;
    if (shards <= 1 || n < 2 * shards) {
        scan(0, n, out);
        return out;
    }
    std::vector<std::vector<std::uint64_t>> parts(shards);
    {
        std::vector<std::jthread> workers;
        std::uint64_t chunk = (n + shards - 1) / shards;
        for (unsigned s = 0; s < shards; ++s) {
            std::uint64_t lo = std::min(n, s * chunk);
            std::uint64_t hi = std::min(n, lo + chunk);
            workers.emplace_back([&, lo, hi, s] { scan(lo, hi, parts[s]); });
        }
    }
    for (auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

} // namespace

CrtSolution crt_solve(const CongruenceSystem& system)
{
    const auto& cs = system.congruences;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].modulus < 2)
            throw std::domain_error("crt_solve: modulus must be >= 2");
        for (std::size_t j = 0; j < i; ++j) {
            if (boost::multiprecision::gcd(cs[i].modulus, cs[j].modulus) != 1)
                throw std::domain_error("crt_solve: moduli " + cs[j].modulus.str() + " and " +
                                        cs[i].modulus.str() + " are not coprime");
        }
    }
    CrtSolution sol{0, 1};
    for (const auto& c : cs) {
        // x = sol.residue + sol.modulus * t, choose t so x = c.residue (mod c.modulus).
        BigInt diff = mod_floor(c.residue - sol.residue, c.modulus);
        BigInt t = mod_floor(diff * mod_inverse(sol.modulus, c.modulus), c.modulus);
        sol.residue += sol.modulus * t;
        sol.modulus *= c.modulus;
        sol.residue = mod_floor(sol.residue, sol.modulus);
    }
    if (cs.empty())
        sol.residue = 0;
    return sol;
}

std::uint64_t for_each_prime_in_progression(const BigInt& n0, const BigInt& M,
                                            const ProgressionOptions& options,
                                            const std::function<bool(const BigInt&)>& visit)
{
    if (M < 1)
        throw std::domain_error("progression modulus must be positive");
    const BigInt r = mod_floor(n0, M);
    if (boost::multiprecision::gcd(r, M) != 1) {
        if (!is_prime(n0))
            throw std::domain_error("progression " + n0.str() + " mod " + M.str() +
                                    " contains no primes (gcd > 1)");
        if (n0 <= options.cap)
            visit(n0);
        return 1;
    }
    if (r > options.cap)
        return 0;
    const BigInt total_big = (options.cap - r) / M + 1;
    const unsigned shards = std::max(1u, options.shards);
    const std::uint64_t block = std::uint64_t(4096) * shards;

    std::uint64_t scanned = 0;
    std::uint64_t next_checkpoint = options.checkpoint_every;
    auto checkpoint = [&] {
        while (options.progress && options.checkpoint_every > 0 && scanned >= next_checkpoint) {
            options.progress(next_checkpoint);
            next_checkpoint += options.checkpoint_every;
        }
    };

    if (fits_u64(options.cap) && fits_u64(M)) {
        const auto first = r.convert_to<std::uint64_t>();
        const auto step = M.convert_to<std::uint64_t>();
        const auto total = total_big.convert_to<std::uint64_t>();
        for (std::uint64_t base = 0; base < total; base += block) {
            std::uint64_t n = std::min(block, total - base);
            for (auto j : prime_indices(first + base * step, step, n, shards)) {
                if (!visit(BigInt(first + (base + j) * step))) {
                    scanned = base + j + 1;
                    checkpoint();
                    return scanned;
                }
            }
            scanned = base + n;
            checkpoint();
        }
        return scanned;
    }

    for (BigInt n = r; n <= options.cap; n += M) {
        ++scanned;
        if (is_prime(n) && !visit(n))
            break;
        checkpoint();
    }
    return scanned;
}

std::vector<BigInt> primes_in_progression(const BigInt& n0, const BigInt& M,
                                          std::size_t count, const BigInt& cap)
{
    std::vector<BigInt> out;
    if (count == 0)
        return out;
    ProgressionOptions o;
    o.cap = cap;
    for_each_prime_in_progression(n0, M, o, [&](const BigInt& p) {
        out.push_back(p);
        return out.size() < count;
    });
    return out;
}

std::string to_string(Family f)
{
    return f == Family::m004 ? "m004" : "m125";
}

Family parse_family(const std::string& s)
{
    if (s == "m004")
        return Family::m004;
    if (s == "m125")
        return Family::m125;
    throw std::invalid_argument("unknown family '" + s + "' (expected m004 or m125)");
}

FamilyForms family_forms(Family f)
{
    if (f == Family::m004)
        return {{1, 0, 12}, {1, 1, 1}, {4, 4, 4}};
    return {{2, 0, 2}, {1, 0, 1}, {1, 0, 4}};
}

namespace {

bool avoid_class_ok(Family f, Int p)
{
    return f == Family::m004 ? p % 6 == 5 : p % 4 == 3;
}

} // namespace

void GapPrimeSpec::validate() const
{
    if (g < 1)
        throw std::invalid_argument("gap radius g must be positive");
    if (avoid_primes.size() != static_cast<std::size_t>(2 * g))
        throw std::invalid_argument("need exactly 2g = " + std::to_string(2 * g) +
                                    " avoid primes, got " + std::to_string(avoid_primes.size()));
    std::set<Int> seen;
    for (std::size_t idx = 0; idx < avoid_primes.size(); ++idx) {
        Int p = avoid_primes[idx];
        if (!seen.insert(p).second)
            throw std::invalid_argument("avoid primes are not distinct: " + std::to_string(p));
        if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
            throw std::invalid_argument("avoid prime " + std::to_string(p) + " is not prime");
        if (!avoid_class_ok(family, p))
            throw std::invalid_argument("avoid prime " + std::to_string(p) +
                                        (family == Family::m004 ? " is not 5 mod 6"
                                                                : " is not 3 mod 4"));
        Int shift = static_cast<Int>(idx) % g + 1;
        if (shift % p == 0)
            throw std::invalid_argument("avoid prime " + std::to_string(p) + " divides its shift " +
                                        std::to_string(shift));
    }
}

std::vector<Int> default_avoid_primes(Family family, Int g)
{
    if (g < 1)
        throw std::invalid_argument("gap radius g must be positive");
    std::vector<Int> out;
    for (Int p = 3; static_cast<Int>(out.size()) < 2 * g; p += 2) {
        if (avoid_class_ok(family, p) && is_prime(static_cast<std::uint64_t>(p)))
            out.push_back(p);
    }
    return out;
}

CongruenceSystem build_congruences(const GapPrimeSpec& spec)
{
    spec.validate();
    CongruenceSystem sys;
    const Int g = spec.g;
    for (Int i = 1; i <= 2 * g; ++i) {
        const BigInt p = spec.avoid_primes[static_cast<std::size_t>(i - 1)];
        // value - k = 0 mod p_k and value + k = 0 mod p_{g+k}
        const BigInt shift = i <= g ? BigInt(i) : BigInt(-(i - g));
        BigInt residue = mod_floor(shift, p);
        if (spec.family == Family::m125)
            residue = mod_floor(residue * mod_inverse(2, p), p);
        sys.congruences.push_back({residue, p});
    }
    if (spec.family == Family::m004)
        sys.congruences.push_back({1, 12});
    else
        sys.congruences.push_back({1, 4});
    return sys;
}

bool GapPrimeWitness::verified() const
{
    return !conditions.empty() &&
           std::all_of(conditions.begin(), conditions.end(), [](const auto& kv) { return kv.second; });
}

GapPrimeWitness verify_witness(Int value, const GapPrimeSpec& spec)
{
    if (value < 2)
        throw std::domain_error("verify_witness: value must be >= 2");
    if (spec.g < 1)
        throw std::invalid_argument("gap radius g must be positive");
    const FamilyForms forms = family_forms(spec.family);
    GapPrimeWitness w;
    w.value = value;

    // (i) represented primitively by the target form, and every
    // representation is a sign change (m125: or swap) of one of them.
    auto reps = representations(forms.target, value, false);
    bool cond_i = false;
    auto best = reps.end();
    for (auto it = reps.begin(); it != reps.end(); ++it) {
        if (!it->primitive || it->x < 0 || it->y < 0)
            continue;
        if (best == reps.end() || std::make_pair(it->x, it->y) < std::make_pair(best->x, best->y))
            best = it;
    }
    if (best != reps.end()) {
        w.representation = *best;
        const Int a = best->x, b = best->y;
        cond_i = std::all_of(reps.begin(), reps.end(), [&](const Representation& r) {
            bool signs = std::abs(r.x) == a && std::abs(r.y) == b;
            bool swapped = std::abs(r.x) == b && std::abs(r.y) == a;
            return signs || (spec.family == Family::m125 && swapped);
        });
    }
    w.conditions["i"] = cond_i;

    // (ii) value +- k misses the neighbor form for 0 < k <= g.
    auto misses = [&](Int v) {
        return v <= 0 || primitive_representations(forms.neighbor, v).empty();
    };
    w.verified_gap = 0;
    for (Int k = 1; k <= spec.g; ++k) {
        if (!misses(value - k) || !misses(value + k))
            break;
        w.verified_gap = k;
    }
    w.conditions["ii"] = w.verified_gap == spec.g;

    // (iii)
    w.conditions["iii"] = primitive_representations(forms.sister, value).empty();
    return w;
}

GapPrimeSequence gap_prime_sequence(const GapPrimeSpec& spec, std::size_t count,
                                    const ProgressionOptions& options)
{
    GapPrimeSequence seq;
    seq.progression = crt_solve(build_congruences(spec));
    if (count == 0)
        return seq;
    seq.candidates_scanned = for_each_prime_in_progression(
        seq.progression.residue, seq.progression.modulus, options, [&](const BigInt& p) {
            BigInt value = spec.family == Family::m004 ? p : 2 * p;
            if (value > std::numeric_limits<Int>::max())
                throw std::range_error("witness " + value.str() +
                                       " exceeds the 64-bit verification range");
            auto w = verify_witness(value.convert_to<Int>(), spec);
            if (w.verified())
                seq.witnesses.push_back(std::move(w));
            return seq.witnesses.size() < count;
        });
    seq.truncated = seq.witnesses.size() < count;
    return seq;
}

} // namespace volrigid
