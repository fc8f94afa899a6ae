#pragma once

// Closed-form degree formulas: maps between modular curves X1(n), the
// index-based divisibility bound, and the odd-degree divisibility tables.

#include <cstdint>
#include <optional>
#include <set>
#include <string>

namespace tscope {

/// deg(X1(ab) -> X1(a)) = c * b^2 * prod_{p | b, p !| a} (1 - 1/p^2), with
/// c = 1/2 when a <= 2 < ab and 1 otherwise. Throws for a or b < 1.
std::uint64_t map_degree(std::uint64_t a, std::uint64_t b);

/// deg_x * ell^max(0, 2k-2-d) for odd ell, deg_x * 2^max(0, 2k-3-d) for 2.
std::uint64_t delta_lower_bound(std::uint64_t deg_x, int d, std::uint64_t ell, int k);

/// Which table is consulted.
enum class Table
{
    summary,      ///< the headline divisibility rows for ell in {2,3,5,7,11,13}
    large_primes, ///< refined rows for ell >= 5
    prime_three,  ///< rows keyed by the 3-adic image and d
    prime_two,    ///< least odd degrees for ell = 2
};

std::optional<Table> parse_table(std::string const & name);
std::string table_name(Table t);

/// Hypotheses describing a rational isogeny class.
struct ClassDescriptor
{
    std::uint64_t ell = 0;
    int k = 1;
    Table table = Table::summary;

    /// Contains a curve with j = 3^3 * 5 * 7^5 / 2^7.
    bool exceptional_j7 = false;
    /// Contains E'/Q with a rational cyclic 25-isogeny.
    bool rational_25_isogeny = false;
    /// Labels of ell-adic or mod-ell images realized in the class, e.g.
    /// "7B.1.1" or "9.36.0.6".
    std::set<std::string> image_labels;
    /// ord_3 of the 3-adic index; derived from a label N.i.g.n when absent.
    std::optional<int> d;

    bool rational_2_torsion = false;    ///< some E'/Q has a rational point of order 2
    bool rational_4_point = false;      ///< ... of order 4
    bool rational_8_point = false;      ///< ... of order 8
    bool cubic_full_2_torsion = false;  ///< full 2-torsion over a cubic field
};

struct TheoremDelta
{
    std::uint64_t delta = 0;
    /// Whether the table promises a point of degree exactly delta for this
    /// class (as opposed to divisibility only).
    bool attained = false;
    std::string branch;
};

/// Throws NoOddDegree when the table rules out odd-degree points and
/// InvalidArgument on inconsistent hypotheses.
TheoremDelta theorem_delta(ClassDescriptor const & desc);

/// ord_ell(i) for an image label "N.i.g.n"; nullopt when not of that shape.
std::optional<int> label_index_valuation(std::string const & label, std::uint64_t ell);

} // namespace tscope
