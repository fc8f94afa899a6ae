#pragma once

// Orbits of torsion points and cyclic subgroups under a matrix group, and
// the isogeny character on a stable cyclic kernel.

#include <cstdint>
#include <vector>

#include "tscope/group.hpp"
#include "tscope/modmat.hpp"

namespace tscope {

/// A class {v, -v} of vectors of exact additive order N; rep is the
/// lexicographically smaller of the two.
struct TorsionClass
{
    Vec2 rep;
    Modulus level;
};

/// Exact additive order of v in (Z/NZ)^2 is N.
bool has_full_order(Vec2 v, Modulus const & m);

/// min(v, -v).
Vec2 canonical_pm(Vec2 v, Modulus const & m);

/// All classes, sorted by representative.
std::vector<TorsionClass> torsion_classes(Modulus const & m);

/// Orbit sizes (ascending) of the torsion classes at level N under <g, -I>.
/// Uses generator BFS only; g need not be closed.
std::vector<std::uint64_t> closed_point_degrees(MatrixGroup const & g, Modulus const & n);

/// Points of P^1(Z/ell^r): index t < ell^r stands for the line through
/// (1, t); index ell^r + s stands for (ell s, 1), 0 <= s < ell^(r-1).
struct Lines
{
    std::uint64_t ell;
    int r;

    std::uint64_t modulus() const { return ipow(ell, r); }
    std::uint64_t count() const { return r == 0 ? 1 : modulus() + modulus() / ell; }
    /// Normalized primitive vector of the line, as residues mod ell^r.
    Vec2 vector(std::uint64_t index) const;
    /// Index of the line through a primitive vector (coordinates taken mod ell^r).
    std::uint64_t index_of(Vec2 v) const;
};

/// A cyclic subgroup of order ell^r of (Z/ell^(r+k)Z)^2.
struct CyclicSubgroup
{
    Vec2 gen;         ///< canonical generator: least unit multiple
    int r = 0;
    Modulus ambient{2, 1}; ///< ell^(r+k)
    std::uint64_t line = 0; ///< index in Lines{ell, r}

    friend bool operator==(CyclicSubgroup const & a, CyclicSubgroup const & b)
    {
        return a.r == b.r && a.ambient == b.ambient && a.line == b.line;
    }
};

/// The subgroup <ell^k c'> for c' the normalized vector of `line`.
CyclicSubgroup cyclic_subgroup(Modulus const & ambient, int r, std::uint64_t line);

/// The subgroup generated by gen; throws unless gen has order exactly ell^r.
CyclicSubgroup cyclic_subgroup_from_gen(Modulus const & ambient, Vec2 gen);

struct CyclicOrbit
{
    std::vector<CyclicSubgroup> members; ///< sorted by line index
    std::uint64_t size() const { return members.size(); }
};

/// The g-orbits on cyclic subgroups of order ell^r, r <= level exponent,
/// ordered by their least line index.
std::vector<CyclicOrbit> cyclic_subgroup_orbits(MatrixGroup const & g, int r);

/// Whether every generator of g maps c to itself.
bool is_stable(MatrixGroup const & g, CyclicSubgroup const & c);

struct CharacterImage
{
    std::vector<std::uint64_t> values; ///< ascending
    Modulus modulus;                   ///< ell^r
};

/// The units alpha with h(gen) = alpha gen for h in <g>. Throws
/// InvalidArgument when c is not g-stable or r = 0.
CharacterImage isogeny_character(MatrixGroup const & g, CyclicSubgroup const & c);

/// |values . {+-1}| / 2. Requires modulus >= 3.
std::uint64_t twisted_point_degree(CharacterImage const & ch);

} // namespace tscope
