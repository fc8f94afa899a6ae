#pragma once

// Finite subgroups of GL2(Z/ell^k Z): closure from generators, reduction
// between levels, full preimages and conjugacy search.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "tscope/modmat.hpp"

namespace tscope {

inline constexpr std::size_t kDefaultClosureCap = 10'000'000;

/// The closure cap, read from TORSION_SCOPE_CAP when set (see caps.hpp).
std::size_t default_closure_cap();

namespace detail {
struct ElementTable;
}

/// A subgroup of GL2(Z/NZ) given by generators, optionally with its element
/// set enumerated. Immutable; copies share the enumerated elements.
class MatrixGroup
{
public:
    /// Every generator must live at `level`.
    MatrixGroup(Modulus level, std::vector<GMat> generators);

    static MatrixGroup trivial(Modulus const & level) { return MatrixGroup(level, {}); }

    Modulus const & level() const noexcept { return level_; }
    std::vector<GMat> const & generators() const noexcept { return gens_; }

    bool is_closed() const noexcept { return table_ != nullptr; }

    /// The following require is_closed(); they throw Error otherwise.
    std::uint64_t order() const;
    std::size_t size() const { return static_cast<std::size_t>(order()); }
    GMat element(std::size_t i) const;
    bool contains(GMat const & m) const;
    bool has_neg_id() const;

    /// This group with its elements enumerated (no-op when already closed).
    MatrixGroup closed(std::size_t cap = default_closure_cap()) const;

private:
    friend MatrixGroup closure(std::vector<GMat> const &, Modulus const &, std::size_t);

    void require_closed() const;

    Modulus level_;
    std::vector<GMat> gens_;
    std::shared_ptr<detail::ElementTable const> table_;
};

/// Enumerates <gens> breadth-first. Throws CapExceeded past `cap` elements.
MatrixGroup closure(std::vector<GMat> const & gens, Modulus const & level,
                    std::size_t cap = default_closure_cap());

/// Generators of the whole of GL2(Z/NZ).
std::vector<GMat> gl2_generators(Modulus const & level);

/// The group generated by the entrywise reductions of g's generators. The
/// result is closed whenever g is.
MatrixGroup reduce(MatrixGroup const & g, Modulus const & target);

/// Lifts of g's generators plus I + ell^m E_ij (m = level of g), and
/// diag(-1, 1), diag(1, -1) when lifting from level 2 to 8 or beyond; their
/// closure is the full preimage of g at `target`.
std::vector<GMat> full_preimage_gens(MatrixGroup const & g, Modulus const & target);

/// Whether h equals the full preimage of its reduction mod ell^m, i.e.
/// |h| = |h mod ell^m| * ell^(4(k-m)).
bool is_full_preimage(MatrixGroup const & h, int m);

/// Smallest m >= 1 with is_full_preimage(h, m).
int preimage_level(MatrixGroup const & h);

struct IndexInfo
{
    BigInt index; ///< [GL2(Z/NZ) : g]
    int d = 0;    ///< ord_ell(index)
};

/// Treats g as the level-N reduction of a full ell-adic preimage, so that
/// the index in GL2(Z/NZ) equals the ell-adic index.
IndexInfo index_and_d(MatrixGroup const & g);

/// Whether some element of g is GL2(Z/NZ)-conjugate to target.
bool element_conjugate_in(MatrixGroup const & g, GMat const & target,
                          std::size_t cap = default_closure_cap());

/// Whether u h u^-1 is contained in g for some u in GL2(Z/NZ).
bool subgroup_conjugate_in(MatrixGroup const & g, MatrixGroup const & h,
                           std::size_t cap = default_closure_cap());

/// <g, -I>. Returns g itself when -I is already present (always at N = 2).
MatrixGroup adjoin_neg_id(MatrixGroup const & g);

/// u g u^-1, generator by generator.
MatrixGroup conjugate(MatrixGroup const & g, GMat const & u);

} // namespace tscope
