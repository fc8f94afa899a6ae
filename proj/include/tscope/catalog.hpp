#pragma once

// Named group constructions and a JSON catalog of labeled generator sets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tscope/group.hpp"

namespace tscope {

enum class Source
{
    builtin,
    file,
};

struct CatalogEntry
{
    std::string label;
    std::uint64_t level = 0; ///< N = ell^k
    std::vector<Entries> generators;
    std::optional<std::uint64_t> index_claimed;
    bool cm = false;
    Source source = Source::file;
    /// Builtins: the class contains the curve with j = 3^3 * 5 * 7^5 / 2^7.
    bool exceptional_j7 = false;

    Modulus modulus() const;
    MatrixGroup group() const;
};

/// Names accepted by builtin().
std::vector<std::string> const & builtin_names();

/// A standard subgroup of GL2(Z/ell^k Z). Groups defined mod ell (Cartans,
/// normalizers, Borel, the order-18 group at 7 and its index-3 subgroup) are
/// returned as full preimages at level ell^k. Throws InvalidArgument on an
/// unknown name or a name that needs a specific prime.
CatalogEntry builtin(std::string const & name, std::uint64_t ell, int k);

/// Smallest quadratic nonresidue mod an odd prime.
std::uint64_t least_nonresidue(std::uint64_t ell);

/// Reads and validates a JSON array of {"label", "level", "generators",
/// "index"?, "cm"?}. Errors name the line (parse) or the label and the
/// failed invariant (validation).
std::vector<CatalogEntry> load_catalog(std::string const & path);
std::vector<CatalogEntry> parse_catalog(std::string const & text);

std::string dump_catalog(std::vector<CatalogEntry> const & entries);
void save_catalog(std::string const & path, std::vector<CatalogEntry> const & entries);

/// Entry with the given label; nullopt when absent.
std::optional<CatalogEntry> find_entry(std::vector<CatalogEntry> const & entries, std::string const & label);

using SignedEntries = std::array<std::int64_t, 4>;

/// Parses "a,b,c,d;a,b,c,d;..."; the empty string gives no generators.
std::vector<SignedEntries> parse_generator_list(std::string const & text);

/// Splits a level N into (ell, k); throws unless N is a prime power >= 2.
Modulus modulus_of_level(std::uint64_t n);

} // namespace tscope
