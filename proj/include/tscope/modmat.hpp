#pragma once

// Exact arithmetic in Z/NZ for prime powers N = ell^k, and invertible 2x2
// matrices over it.

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tscope {

using BigInt = boost::multiprecision::cpp_int;

/// Largest supported modulus; every product of two residues fits in 64 bits.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

bool is_prime(std::uint64_t n);

/// ord_p(n) for n != 0.
int valuation(std::uint64_t n, std::uint64_t p);
int valuation(BigInt const & n, std::uint64_t p);

std::uint64_t ipow(std::uint64_t base, int exp);

/// The prime-power modulus N = ell^k.
class Modulus
{
public:
    Modulus(std::uint64_t ell, int k);

    std::uint64_t ell() const noexcept { return ell_; }
    int k() const noexcept { return k_; }
    std::uint64_t n() const noexcept { return n_; }

    /// ell^j for 0 <= j.
    std::uint64_t power(int j) const { return ipow(ell_, j); }

    /// Same prime, exponent j.
    Modulus with_exponent(int j) const { return Modulus(ell_, j); }

    std::uint64_t reduce(std::int64_t x) const
    {
        auto const m = static_cast<std::int64_t>(n_);
        auto r = x % m;
        return static_cast<std::uint64_t>(r < 0 ? r + m : r);
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % n_; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + n_ - b) % n_; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % n_; }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : n_ - a; }
    bool is_unit(std::uint64_t a) const { return a % ell_ != 0; }
    /// Throws InvalidArgument when a is not a unit.
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

    /// Multiplicative order of a unit.
    std::uint64_t unit_order(std::uint64_t a) const;

    /// A small generating set of (Z/NZ)^x, chosen greedily from 2, 3, ...
    std::vector<std::uint64_t> unit_generators() const;

    /// Units u in [1, N), ascending.
    std::vector<std::uint64_t> units() const;

    std::string to_string() const;

    friend bool operator==(Modulus const &, Modulus const &) = default;

private:
    std::uint64_t ell_;
    int k_;
    std::uint64_t n_;
};

/// A column vector in (Z/NZ)^2; coordinates are canonical residues.
struct Vec2
{
    std::uint64_t x = 0;
    std::uint64_t y = 0;

    friend auto operator<=>(Vec2 const &, Vec2 const &) = default;
};

/// Entries of a 2x2 matrix, row-major: {n11, n12, n21, n22}.
using Entries = std::array<std::uint64_t, 4>;

/// An invertible 2x2 matrix over Z/NZ with canonical residues in [0, N).
class GMat
{
public:
    /// Reduces the entries mod N; throws InvalidArgument when the determinant
    /// is not a unit.
    GMat(Modulus const & level, std::int64_t n11, std::int64_t n12, std::int64_t n21,
         std::int64_t n22);
    GMat(Modulus const & level, Entries const & e);

    static GMat identity(Modulus const & level);
    static GMat scalar(Modulus const & level, std::int64_t a);
    static GMat diag(Modulus const & level, std::int64_t a, std::int64_t d);

    Modulus const & level() const noexcept { return level_; }
    Entries const & entries() const noexcept { return e_; }
    std::uint64_t operator()(int row, int col) const { return e_[2 * row + col]; }

    std::uint64_t det() const;
    std::uint64_t trace() const;
    bool is_identity() const;

    /// Vector image m * v.
    Vec2 apply(Vec2 v) const;

    /// Entrywise reduction to a lower level of the same prime.
    GMat reduce(Modulus const & target) const;
    /// Same integer entries read at a higher level of the same prime.
    GMat lift(Modulus const & target) const;

    /// Multiplicative order in GL2(Z/NZ).
    std::uint64_t order() const;

    std::string to_string() const;

    friend bool operator==(GMat const & a, GMat const & b)
    {
        return a.e_ == b.e_ && a.level_ == b.level_;
    }

private:
    struct Unchecked {};
    GMat(Unchecked, Modulus const & level, Entries const & e) : level_(level), e_(e) {}

    friend GMat mat_mul(GMat const &, GMat const &);
    friend GMat mat_inv(GMat const &);

    Modulus level_;
    Entries e_;
};

/// Throws InvalidArgument on a level mismatch.
GMat mat_mul(GMat const & a, GMat const & b);
GMat mat_inv(GMat const & a);

/// |GL2(Z/ell^k Z)| = ell^(4k-3) (ell-1) (ell^2-1).
BigInt gl2_order(Modulus const & m);

std::ostream & operator<<(std::ostream & os, GMat const & m);

} // namespace tscope
