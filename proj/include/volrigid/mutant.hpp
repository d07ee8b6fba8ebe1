#ifndef VOLRIGID_MUTANT_HPP
#define VOLRIGID_MUTANT_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "volrigid/arith.hpp"

namespace volrigid {

/*
 * A binary word of length n >= 3 read cyclically. Storage keeps a fixed
 * starting letter; rotations and reflections are identified only through
 * canonical_form. Letters are packed most-significant first, so comparing
 * packed values of equal length is lexicographic comparison of the strings.
 */
class CyclicWord
{
    std::uint64_t bits_;
    int n_;

    public:
    static constexpr int max_length = 62;

    CyclicWord(std::uint64_t bits, int n);
    explicit CyclicWord(const std::string& letters);

    int size() const { return n_; }
    std::uint64_t bits() const { return bits_; }
    int letter(int i) const { return static_cast<int>((bits_ >> (n_ - 1 - i)) & 1u); }
    int zeros() const;

    CyclicWord rotated(int r) const;  // letter i moves to position i - r
    CyclicWord reflected() const;      // reversed

    std::string to_string() const;

    auto operator<=>(const CyclicWord&) const = default;
};

enum class DecompositionKind
{
    all_ones,
    cycle,
};

/// Cutting the word at each zero gives subwords 0 1^i 0 (each zero used
/// twice); i_sequence lists the i's cyclically starting from the first zero.
struct SubwordDecomposition
{
    DecompositionKind kind;
    std::vector<int> i_sequence; // empty iff all_ones
};

struct CuspGraph
{
    int apex_label = 0;
    std::vector<int> cycle_labels; // cyclic order
    bool special_triangle = false; // all-ones word: labels (n, 2n, 2n)
};

enum class CuspRole
{
    apex,          // crossing circle of modulus n
    knot,          // knot component of a subword, or one of the two all-ones knots
    letter_circle, // crossing circle controlled by a letter
    first_stage,   // remaining crossing circles
};

struct CuspArea
{
    CuspRole role;
    int modulus; // the cusp modulus is modulus * sqrt(-1)
    int area;
};

struct MutantCensusReport
{
    int n = 0;
    std::uint64_t class_count = 0;
    double lower_bound = 0.0; // 2^n / (2n)
    double volume = 0.0;      // 4 n V8
    double log_growth = 0.0;  // ln(class_count) / volume
    double asymptotic_constant = 0.0; // ln 2 / (4 V8)
    double comparison_constant = 0.0287706;
};

SubwordDecomposition decompose(const CyclicWord& word);

/// Sorted moduli (as multiples of sqrt(-1)) of the knot-component cusps.
std::vector<int> knot_cusp_moduli(const CyclicWord& word);

CuspGraph cusp_graph(const CyclicWord& word);

bool graphs_isomorphic(const CuspGraph& g1, const CuspGraph& g2);

/// Lexicographically smallest of the 2n rotations and reflected rotations.
CyclicWord canonical_form(const CyclicWord& word);

/// Smallest label sequence among rotations and reversals.
std::vector<int> dihedral_canonical(const std::vector<int>& labels);

constexpr int min_census_length = 3;
constexpr int max_census_length = 30;

/// One canonical representative per dihedral orbit, ascending. Necklaces
/// come from the FKM generator; a necklace is kept when it is no larger than
/// the necklace of its reversal.
std::vector<CyclicWord> enumerate_classes(int n);

/// Visits the same representatives without materialising them.
std::uint64_t for_each_class(int n, const std::function<void(const CyclicWord&)>& visit);

/// Burnside count of binary bracelets over D_n.
BigInt bracelet_count(int n);

/// One entry per cusp. Moduli 1 and 2 get the area-2 torus, larger moduli m
/// the area-4m torus. Letter circles have modulus 1 under a 1 (half twist)
/// and 2 under a 0; first_stage_modulus sets the other n small circles.
std::vector<CuspArea> horoball_areas(const CyclicWord& word, int first_stage_modulus = 1);

MutantCensusReport census_report(int n);

} // namespace volrigid

#endif
