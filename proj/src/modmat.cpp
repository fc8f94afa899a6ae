#include "tscope/modmat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>
#include <utility>

#include "tscope/error.hpp"

namespace tscope {

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int valuation(std::uint64_t n, std::uint64_t p)
{
    if (n == 0) throw InvalidArgument("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int valuation(BigInt const & n, std::uint64_t p)
{
    if (n == 0) throw InvalidArgument("valuation of zero");
    BigInt m = n;
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

std::uint64_t ipow(std::uint64_t base, int exp)
{
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

Modulus::Modulus(std::uint64_t ell, int k) : ell_(ell), k_(k), n_(1)
{
    if (!is_prime(ell)) throw InvalidArgument("modulus base " + std::to_string(ell) + " is not prime");
    if (k < 1) throw InvalidArgument("modulus exponent must be >= 1");
    for (int i = 0; i < k; ++i) {
        n_ *= ell;
        if (n_ > kMaxModulus)
            throw InvalidArgument("modulus " + std::to_string(ell) + "^" + std::to_string(k) +
                                  " exceeds 2^31");
    }
}

std::uint64_t Modulus::inv(std::uint64_t a) const
{
    a %= n_;
    if (!is_unit(a)) throw InvalidArgument(std::to_string(a) + " is not a unit mod " + std::to_string(n_));
    // extended Euclid on signed 64-bit values; n_ < 2^31
    std::int64_t r0 = static_cast<std::int64_t>(n_), r1 = static_cast<std::int64_t>(a);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
        std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
    }
    return reduce(t0);
}

std::uint64_t Modulus::pow(std::uint64_t a, std::uint64_t e) const
{
    std::uint64_t r = 1 % n_, b = a % n_;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

std::uint64_t Modulus::unit_order(std::uint64_t a) const
{
    if (!is_unit(a)) throw InvalidArgument("order of a non-unit");
    std::uint64_t o = 1, x = a % n_;
    while (x != 1 % n_) {
        x = mul(x, a);
        ++o;
    }
    return o;
}

std::vector<std::uint64_t> Modulus::units() const
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t u = 1; u < n_; ++u)
        if (is_unit(u)) out.push_back(u);
    if (n_ == 1) out.push_back(0);
    return out;
}

std::vector<std::uint64_t> Modulus::unit_generators() const
{
    // (Z/NZ)^x is cyclic for odd ell and <-1, 5> for ell = 2, so at most two
    // greedy picks are ever needed.
    std::vector<std::uint64_t> gens;
    std::vector<char> in(n_, 0);
    std::vector<std::uint64_t> members{1 % n_};
    in[1 % n_] = 1;
    std::uint64_t const phi = n_ / ell_ * (ell_ - 1);
    for (std::uint64_t u = 2; members.size() < phi && u < n_; ++u) {
        if (!is_unit(u) || in[u]) continue;
        gens.push_back(u);
        // abelian: new subgroup = union of old * u^j
        std::vector<std::uint64_t> grown = members;
        std::uint64_t p = u;
        while (!in[p]) {
            for (auto m : members) {
                auto y = mul(m, p);
                if (!in[y]) {
                    in[y] = 1;
                    grown.push_back(y);
                }
            }
            p = mul(p, u);
        }
        members = std::move(grown);
    }
    return gens;
}

std::string Modulus::to_string() const
{
    return std::to_string(ell_) + "^" + std::to_string(k_);
}

GMat::GMat(Modulus const & level, std::int64_t n11, std::int64_t n12, std::int64_t n21,
           std::int64_t n22)
    : level_(level)
    , e_{level.reduce(n11), level.reduce(n12), level.reduce(n21), level.reduce(n22)}
{
    if (!level_.is_unit(det()))
        throw InvalidArgument("matrix " + to_string() + " has non-unit determinant mod " +
                              std::to_string(level_.n()));
}

GMat::GMat(Modulus const & level, Entries const & e)
    : GMat(level, static_cast<std::int64_t>(e[0] % level.n()), static_cast<std::int64_t>(e[1] % level.n()),
           static_cast<std::int64_t>(e[2] % level.n()), static_cast<std::int64_t>(e[3] % level.n()))
{
}

GMat GMat::identity(Modulus const & level) { return GMat(level, 1, 0, 0, 1); }
GMat GMat::scalar(Modulus const & level, std::int64_t a) { return GMat(level, a, 0, 0, a); }
GMat GMat::diag(Modulus const & level, std::int64_t a, std::int64_t d) { return GMat(level, a, 0, 0, d); }

std::uint64_t GMat::det() const
{
    return level_.sub(level_.mul(e_[0], e_[3]), level_.mul(e_[1], e_[2]));
}

std::uint64_t GMat::trace() const { return level_.add(e_[0], e_[3]); }

bool GMat::is_identity() const
{
    auto const one = 1 % level_.n();
    return e_[0] == one && e_[1] == 0 && e_[2] == 0 && e_[3] == one;
}

Vec2 GMat::apply(Vec2 v) const
{
    auto const & m = level_;
    return {m.add(m.mul(e_[0], v.x), m.mul(e_[1], v.y)), m.add(m.mul(e_[2], v.x), m.mul(e_[3], v.y))};
}

GMat GMat::reduce(Modulus const & target) const
{
    if (target.ell() != level_.ell() || target.k() > level_.k())
        throw InvalidArgument("cannot reduce level " + level_.to_string() + " to " + target.to_string());
    auto const n = target.n();
    return GMat(Unchecked{}, target, {e_[0] % n, e_[1] % n, e_[2] % n, e_[3] % n});
}

GMat GMat::lift(Modulus const & target) const
{
    if (target.ell() != level_.ell() || target.k() < level_.k())
        throw InvalidArgument("cannot lift level " + level_.to_string() + " to " + target.to_string());
    // determinant stays a unit: its residue mod ell is unchanged
    return GMat(Unchecked{}, target, e_);
}

namespace {

GMat mat_pow(GMat const & a, BigInt e)
{
    GMat r = GMat::identity(a.level());
    GMat b = a;
    while (e > 0) {
        if ((e & 1) != 0) r = mat_mul(r, b);
        b = mat_mul(b, b);
        e >>= 1;
    }
    return r;
}

std::map<std::uint64_t, int> factor(std::uint64_t n)
{
    std::map<std::uint64_t, int> f;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    if (n > 1) ++f[n];
    return f;
}

} // namespace

std::uint64_t GMat::order() const
{
    // order divides |GL2| = ell^(4k-3) (ell-1)^2 (ell+1)
    auto const ell = level_.ell();
    std::map<std::uint64_t, int> f = factor(ell - 1);
    for (auto & [p, e] : f) e *= 2;
    for (auto [p, e] : factor(ell + 1)) f[p] += e;
    f[ell] += 4 * level_.k() - 3;
    BigInt m = gl2_order(level_);
    for (auto [p, e] : f) {
        for (int i = 0; i < e && m % p == 0; ++i) {
            if (!mat_pow(*this, m / p).is_identity()) break;
            m /= p;
        }
    }
    return static_cast<std::uint64_t>(m);
}

std::string GMat::to_string() const
{
    std::ostringstream os;
    os << *this;
    return os.str();
}

GMat mat_mul(GMat const & a, GMat const & b)
{
    if (!(a.level_ == b.level_))
        throw InvalidArgument("level mismatch: " + a.level_.to_string() + " vs " + b.level_.to_string());
    auto const & m = a.level_;
    auto const & x = a.e_;
    auto const & y = b.e_;
    return GMat(GMat::Unchecked{}, m,
                {m.add(m.mul(x[0], y[0]), m.mul(x[1], y[2])), m.add(m.mul(x[0], y[1]), m.mul(x[1], y[3])),
                 m.add(m.mul(x[2], y[0]), m.mul(x[3], y[2])), m.add(m.mul(x[2], y[1]), m.mul(x[3], y[3]))});
}

GMat mat_inv(GMat const & a)
{
    auto const & m = a.level_;
    auto const di = m.inv(a.det());
    auto const & x = a.e_;
    return GMat(GMat::Unchecked{}, m,
                {m.mul(di, x[3]), m.mul(di, m.neg(x[1])), m.mul(di, m.neg(x[2])), m.mul(di, x[0])});
}

BigInt gl2_order(Modulus const & m)
{
    BigInt const ell = m.ell();
    return pow(ell, static_cast<unsigned>(4 * m.k() - 3)) * (ell - 1) * (ell * ell - 1);
}

std::ostream & operator<<(std::ostream & os, GMat const & m)
{
    auto const & e = m.entries();
    return os << "[[" << e[0] << "," << e[1] << "],[" << e[2] << "," << e[3] << "]]";
}

} // namespace tscope
