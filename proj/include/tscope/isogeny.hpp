#pragma once

// Galois images along cyclic isogenies, and degrees of closed points on
// X1(ell^k) over every curve ell^r-isogenous to a given one.

#include <cstdint>
#include <optional>
#include <vector>

#include "tscope/group.hpp"
#include "tscope/orbits.hpp"

namespace tscope {

struct ScanOptions
{
    /// Largest allowed ambient modulus ell^(r+k); defaults per prime.
    std::optional<std::uint64_t> ambient_cap;
    /// Largest allowed number of (kernel, point) states.
    std::size_t state_cap = default_closure_cap();
};

/// Options with the ambient cap taken from TORSION_SCOPE_CAP when set.
ScanOptions scan_options_from_env();

/// Default bound on the ambient exponent r + k: 9, 6, 4, 3 for ell = 2, 3,
/// 5, 7; 3 up to 13; 2 beyond.
int default_ambient_exponent(std::uint64_t ell);

/// The effective ambient modulus cap for ell.
std::uint64_t ambient_cap(std::uint64_t ell, ScanOptions const & opts);

/// Largest r with ell^(r+k) within the cap, or -1 when even r = 0 is out.
int max_scannable_r(std::uint64_t ell, int k, ScanOptions const & opts);

/// Image of Galois on E/C at level ell^k, where h acts on E at level
/// ell^(r+k) and C has order ell^r. Throws InvalidArgument when C is not
/// h-stable.
MatrixGroup pushforward(MatrixGroup const & h, CyclicSubgroup const & c);

struct KernelOrbitDegrees
{
    std::size_t id = 0;
    CyclicSubgroup representative;     ///< least kernel of the orbit
    std::uint64_t kernel_orbit_size = 0;
    std::vector<std::uint64_t> degrees; ///< ascending
};

struct ScanWitness
{
    std::size_t orbit_id = 0;
    CyclicSubgroup kernel;
    Vec2 point; ///< coordinates in E/C[ell^k]
};

struct ScanReport
{
    std::uint64_t ell = 0;
    int k = 0;
    int r = 0;
    std::vector<KernelOrbitDegrees> kernel_orbits;
    std::uint64_t min_degree = 0;
    ScanWitness witness;

    /// Every degree, ascending.
    std::vector<std::uint64_t> all_degrees() const;
    /// Least odd degree, if any.
    std::optional<std::uint64_t> min_odd_degree() const;
};

/// Closed-point degrees on X1(ell^k) over all curves E/C, C cyclic of order
/// ell^r. g is the image at its level, read as a full preimage; it is lifted
/// or reduced to ell^(r+k). Throws CapExceeded past the ambient or state cap.
ScanReport isogeny_class_degrees(MatrixGroup const & g, std::uint64_t ell, int k, int r,
                                 ScanOptions const & opts = scan_options_from_env());

struct ClassMin
{
    std::uint64_t min = 0;
    int at_r = 0;
    std::vector<std::uint64_t> per_r; ///< minimum for each r = 0..r_max
    /// Least odd degree over the same range and the first r attaining it.
    std::optional<std::uint64_t> min_odd;
    int odd_at_r = -1;
};

ClassMin class_min_degree(MatrixGroup const & g, std::uint64_t ell, int k, int r_max,
                          ScanOptions const & opts = scan_options_from_env());

} // namespace tscope
