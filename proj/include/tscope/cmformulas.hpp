#pragma once

// Imaginary quadratic orders: class numbers, splitting of primes, and least
// degrees of CM points on X1(ell^n).

#include <cstdint>
#include <optional>
#include <string>

namespace tscope {

/// Kronecker symbol (a / n) for n >= 1.
int kronecker(std::int64_t a, std::int64_t n);

/// Whether d < 0 is a fundamental discriminant.
bool is_fundamental(std::int64_t d);

/// Reduced primitive positive definite forms of discriminant delta. Throws
/// InvalidArgument unless delta < 0 and delta = 0 or 1 mod 4.
std::uint64_t reduced_forms_count(std::int64_t delta);

/// The order Z + f O_K.
struct CMOrder
{
    std::int64_t delta_k = 0;
    std::uint64_t f = 1;

    /// Throws InvalidArgument unless delta_k is a negative fundamental
    /// discriminant and f >= 1.
    CMOrder(std::int64_t delta_k, std::uint64_t f);

    std::int64_t delta() const;
    std::uint64_t w_k() const;
    std::uint64_t h_k() const; ///< by counting reduced forms
};

/// h(O) = h_K (2/w_K) f prod_{p | f} (1 - (delta_K / p) / p); h_K when f = 1.
/// An explicit h_K overrides the forms count.
std::uint64_t cm_class_number(CMOrder const & o, std::optional<std::uint64_t> h_k = std::nullopt);

enum class Splitting
{
    split,
    inert,
    ramified,
};

std::string to_string(Splitting s);

Splitting splitting_type(std::int64_t delta_k, std::uint64_t ell);

struct CMMinDegree
{
    std::uint64_t delta = 0;
    std::uint64_t witness_conductor = 1;
    Splitting splitting = Splitting::split;
    std::string branch;
    /// Set when the printed statement and its proof disagree at this input.
    std::optional<std::string> note;
};

/// Least degree of a point on X1(ell^n) from the CM class of K. h_K
/// defaults to the forms count.
CMMinDegree cm_min_degree(std::int64_t delta_k, std::optional<std::uint64_t> h_k, std::uint64_t ell, int n);

} // namespace tscope
