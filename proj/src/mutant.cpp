#include "volrigid/mutant.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "volrigid/nzvolume.hpp"

namespace volrigid {

namespace {

std::uint64_t mask(int n)
{
    return (std::uint64_t(1) << n) - 1;
}

std::uint64_t rotate_left(std::uint64_t v, int r, int n)
{
    r %= n;
    if (r == 0)
        return v;
    return ((v << r) | (v >> (n - r))) & mask(n);
}

std::uint64_t reverse_bits(std::uint64_t v, int n)
{
    std::uint64_t out = 0;
    for (int i = 0; i < n; ++i) {
        out = (out << 1) | (v & 1u);
        v >>= 1;
    }
    return out;
}

std::uint64_t min_rotation(std::uint64_t v, int n)
{
    std::uint64_t best = v;
    for (int r = 1; r < n; ++r)
        best = std::min(best, rotate_left(v, r, n));
    return best;
}

void check_census_length(int n)
{
    if (n < min_census_length || n > max_census_length)
        throw std::domain_error("word length must lie in [" + std::to_string(min_census_length) +
                                ", " + std::to_string(max_census_length) + "], got " +
                                std::to_string(n));
}

} // namespace

CyclicWord::CyclicWord(std::uint64_t bits, int n) : bits_(bits), n_(n)
{
    if (n < 3 || n > max_length)
        throw std::domain_error("cyclic word length must be in [3, " + std::to_string(max_length) +
                                "], got " + std::to_string(n));
    if (bits & ~mask(n))
        throw std::domain_error("cyclic word has bits beyond its length");
}

CyclicWord::CyclicWord(const std::string& letters) : bits_(0), n_(static_cast<int>(letters.size()))
{
    if (n_ < 3 || n_ > max_length)
        throw std::domain_error("cyclic word length must be in [3, " + std::to_string(max_length) +
                                "], got " + std::to_string(n_));
    for (char ch : letters) {
        if (ch != '0' && ch != '1')
            throw std::domain_error("cyclic word letters must be 0 or 1: '" + letters + "'");
        bits_ = (bits_ << 1) | static_cast<std::uint64_t>(ch == '1');
    }
}

int CyclicWord::zeros() const
{
    return n_ - std::popcount(bits_);
}

CyclicWord CyclicWord::rotated(int r) const
{
    r = ((r % n_) + n_) % n_;
    return {rotate_left(bits_, r, n_), n_};
}

CyclicWord CyclicWord::reflected() const
{
    return {reverse_bits(bits_, n_), n_};
}

std::string CyclicWord::to_string() const
{
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i)
        s[static_cast<std::size_t>(i)] = letter(i) ? '1' : '0';
    return s;
}

SubwordDecomposition decompose(const CyclicWord& word)
{
    const int n = word.size();
    std::vector<int> zero_at;
    for (int i = 0; i < n; ++i) {
        if (word.letter(i) == 0)
            zero_at.push_back(i);
    }
    if (zero_at.empty())
        return {DecompositionKind::all_ones, {}};
    const auto k = zero_at.size();
    std::vector<int> runs(k);
    for (std::size_t j = 0; j < k; ++j) {
        int next = j + 1 < k ? zero_at[j + 1] : zero_at[0] + n;
        runs[j] = next - zero_at[j] - 1;
    }
    return {DecompositionKind::cycle, std::move(runs)};
}

std::vector<int> knot_cusp_moduli(const CyclicWord& word)
{
    auto d = decompose(word);
    std::vector<int> out;
    if (d.kind == DecompositionKind::all_ones) {
        out = {2 * word.size(), 2 * word.size()};
    } else {
        for (int i : d.i_sequence)
            out.push_back(4 * (i + 1));
    }
    std::sort(out.begin(), out.end());
    return out;
}

CuspGraph cusp_graph(const CyclicWord& word)
{
    auto d = decompose(word);
    CuspGraph g;
    g.apex_label = word.size();
    if (d.kind == DecompositionKind::all_ones) {
        g.special_triangle = true;
        g.cycle_labels = {2 * word.size(), 2 * word.size()};
        return g;
    }
    for (int i : d.i_sequence)
        g.cycle_labels.push_back(4 * (i + 1));
    return g;
}

std::vector<int> dihedral_canonical(const std::vector<int>& labels)
{
    std::vector<int> best = labels;
    std::vector<int> cur = labels;
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t r = 0; r < cur.size(); ++r) {
            std::rotate(cur.begin(), cur.begin() + 1, cur.end());
            best = std::min(best, cur);
        }
        std::reverse(cur.begin(), cur.end());
    }
    return best;
}

bool graphs_isomorphic(const CuspGraph& g1, const CuspGraph& g2)
{
    if (g1.special_triangle != g2.special_triangle || g1.apex_label != g2.apex_label)
        return false;
    if (g1.cycle_labels.size() != g2.cycle_labels.size())
        return false;
    if (g1.special_triangle) {
        auto a = g1.cycle_labels, b = g2.cycle_labels;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }
    return dihedral_canonical(g1.cycle_labels) == dihedral_canonical(g2.cycle_labels);
}

CyclicWord canonical_form(const CyclicWord& word)
{
    const int n = word.size();
    return {std::min(min_rotation(word.bits(), n), min_rotation(reverse_bits(word.bits(), n), n)),
            n};
}

std::uint64_t for_each_class(int n, const std::function<void(const CyclicWord&)>& visit)
{
    check_census_length(n);
    // FKM: prenecklaces in lexicographic order; those whose period p divides
    // n are exactly the necklaces.
    std::vector<int> a(static_cast<std::size_t>(n) + 1, 0);
    std::uint64_t count = 0;
    auto emit = [&] {
        std::uint64_t v = 0;
        for (int j = 1; j <= n; ++j)
            v = (v << 1) | static_cast<std::uint64_t>(a[static_cast<std::size_t>(j)]);
        if (v <= min_rotation(reverse_bits(v, n), n)) {
            ++count;
            if (visit)
                visit(CyclicWord(v, n));
        }
    };
    emit();
    while (true) {
        int i = n;
        while (i >= 1 && a[static_cast<std::size_t>(i)] == 1)
            --i;
        if (i == 0)
            break;
        a[static_cast<std::size_t>(i)] = 1;
        for (int j = i + 1; j <= n; ++j)
            a[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j - i)];
        if (n % i == 0)
            emit();
    }
    return count;
}

std::vector<CyclicWord> enumerate_classes(int n)
{
    std::vector<CyclicWord> out;
    for_each_class(n, [&](const CyclicWord& w) { out.push_back(w); });
    return out;
}

BigInt bracelet_count(int n)
{
    if (n < 1)
        throw std::domain_error("bracelet_count: n must be >= 1");
    // Rotations: sum over d | n of phi(d) 2^{n/d}.
    BigInt rotations = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0)
            continue;
        int phi = 0;
        for (int j = 1; j <= d; ++j)
            phi += std::gcd(j, d) == 1;
        rotations += BigInt(phi) << (n / d);
    }
    // Reflections: n axes; through two letters when n is even (half of them)
    // or through one letter when n is odd.
    BigInt reflections;
    if (n % 2 == 1)
        reflections = BigInt(n) << ((n + 1) / 2);
    else
        reflections = BigInt(n / 2) * ((BigInt(1) << (n / 2 + 1)) + (BigInt(1) << (n / 2)));
    return (rotations + reflections) / (2 * n);
}

std::vector<CuspArea> horoball_areas(const CyclicWord& word, int first_stage_modulus)
{
    if (first_stage_modulus != 1 && first_stage_modulus != 2)
        throw std::domain_error("first-stage crossing circles have modulus 1 or 2");
    auto area = [](int m) { return m > 2 ? 4 * m : 2; };
    const int n = word.size();
    std::vector<CuspArea> out;
    out.push_back({CuspRole::apex, n, area(n)});
    for (int m : knot_cusp_moduli(word))
        out.push_back({CuspRole::knot, m, area(m)});
    for (int i = 0; i < n; ++i) {
        int m = word.letter(i) == 1 ? 1 : 2;
        out.push_back({CuspRole::letter_circle, m, area(m)});
    }
    for (int i = 0; i < n; ++i)
        out.push_back({CuspRole::first_stage, first_stage_modulus, area(first_stage_modulus)});
    return out;
}

MutantCensusReport census_report(int n)
{
    check_census_length(n);
    MutantCensusReport r;
    r.n = n;
    r.class_count = for_each_class(n, nullptr);
    const double v8 = octahedron_volume();
    r.lower_bound = std::ldexp(1.0, n) / (2.0 * n);
    r.volume = 4.0 * n * v8;
    r.log_growth = std::log(static_cast<double>(r.class_count)) / r.volume;
    r.asymptotic_constant = std::log(2.0) / (4.0 * v8);
    return r;
}

} // namespace volrigid
