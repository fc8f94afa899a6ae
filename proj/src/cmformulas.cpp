#include "tscope/cmformulas.hpp"

#include <numeric>
#include <vector>

#include "tscope/error.hpp"
#include "tscope/modmat.hpp"

namespace tscope {

int kronecker(std::int64_t a, std::int64_t n)
{
    if (n < 1) throw InvalidArgument("kronecker symbol needs n >= 1");
    int result = 1;
    // 2-adic part: (a/2) = 0 for even a, 1 for a = +-1 mod 8, -1 for a = +-3 mod 8
    while (n % 2 == 0) {
        n /= 2;
        auto const r = ((a % 8) + 8) % 8;
        if (r % 2 == 0) return 0;
        if (r == 3 || r == 5) result = -result;
    }
    // Jacobi symbol for odd n
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            auto const r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

bool is_fundamental(std::int64_t d)
{
    if (d >= 0) return false;
    auto squarefree = [](std::int64_t m) {
        for (std::int64_t p = 2; p * p <= m; ++p)
            if (m % (p * p) == 0) return false;
        return true;
    };
    auto const m = -d;
    if (((d % 4) + 4) % 4 == 1) return squarefree(m);
    if (m % 4 != 0) return false;
    auto const q = m / 4; // d/4 = -q must be 2 or 3 mod 4
    auto const r = ((-q % 4) + 4) % 4;
    return (r == 2 || r == 3) && squarefree(q);
}

std::uint64_t reduced_forms_count(std::int64_t delta)
{
    if (delta >= 0) throw InvalidArgument("discriminant must be negative");
    auto const res = ((delta % 4) + 4) % 4;
    if (res != 0 && res != 1) throw InvalidArgument("discriminant must be 0 or 1 mod 4");
    std::uint64_t count = 0;
    auto const m = -delta;
    // a <= sqrt(|delta| / 3)
    for (std::int64_t a = 1; 3 * a * a <= m; ++a)
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            auto const num = b * b - delta;
            if (num % (4 * a) != 0) continue;
            auto const c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
            ++count;
        }
    return count;
}

CMOrder::CMOrder(std::int64_t dk, std::uint64_t conductor) : delta_k(dk), f(conductor)
{
    if (!is_fundamental(dk)) throw InvalidArgument(std::to_string(dk) + " is not a negative fundamental discriminant");
    if (conductor < 1) throw InvalidArgument("conductor must be >= 1");
}

std::int64_t CMOrder::delta() const
{
    auto const ff = static_cast<std::int64_t>(f);
    return ff * ff * delta_k;
}

std::uint64_t CMOrder::w_k() const
{
    if (delta_k == -3) return 6;
    if (delta_k == -4) return 4;
    return 2;
}

std::uint64_t CMOrder::h_k() const { return reduced_forms_count(delta_k); }

std::uint64_t cm_class_number(CMOrder const & o, std::optional<std::uint64_t> h_k)
{
    auto const hk = h_k ? *h_k : o.h_k();
    if (o.f == 1) return hk;
    // h_K * 2 * f * prod (p - (delta_K/p)) / p, divided by w_K
    std::int64_t num = static_cast<std::int64_t>(hk * 2 * o.f);
    std::int64_t den = static_cast<std::int64_t>(o.w_k());
    std::uint64_t n = o.f;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        auto const ip = static_cast<std::int64_t>(p);
        num = num / ip * (ip - kronecker(o.delta_k, ip));
    }
    if (num % den != 0) throw Error("internal: non-integral class number");
    return static_cast<std::uint64_t>(num / den);
}

std::string to_string(Splitting s)
{
    switch (s) {
    case Splitting::split: return "split";
    case Splitting::inert: return "inert";
    case Splitting::ramified: return "ramified";
    }
    return "?";
}

Splitting splitting_type(std::int64_t delta_k, std::uint64_t ell)
{
    if (!is_prime(ell)) throw InvalidArgument(std::to_string(ell) + " is not prime");
    switch (kronecker(delta_k, static_cast<std::int64_t>(ell))) {
    case 1: return Splitting::split;
    case -1: return Splitting::inert;
    default: return Splitting::ramified;
    }
}

CMMinDegree cm_min_degree(std::int64_t delta_k, std::optional<std::uint64_t> h_k, std::uint64_t ell, int n)
{
    if (n < 1) throw InvalidArgument("n must be >= 1");
    CMOrder const ok(delta_k, 1);
    if (!is_prime(ell)) throw InvalidArgument(std::to_string(ell) + " is not prime");
    BigInt const hk = h_k ? *h_k : ok.h_k();
    BigInt const w = ok.w_k();
    BigInt const l = ell;
    auto lp = [&](int e) { return pow(l, static_cast<unsigned>(e)); };

    CMMinDegree out;
    out.splitting = splitting_type(delta_k, ell);
    BigInt num;
    BigInt den = 1;
    switch (out.splitting) {
    case Splitting::split:
        num = 2 * hk * lp(n - 1) * (l - 1);
        den = w;
        out.witness_conductor = 1;
        out.branch = "2*h_K*ell^(n-1)*(ell-1)/w_K";
        break;
    case Splitting::inert: {
        int e = 3 * (n - 1) / 2;
        if (ell == 2) ++e;
        num = hk * lp(e) * (l * l - 1);
        den = w;
        out.witness_conductor = ipow(ell, n / 2);
        out.branch = ell == 2 ? "h_K*2^(floor(3(n-1)/2)+1)*3/w_K" : "h_K*ell^floor(3(n-1)/2)*(ell^2-1)/w_K";
        if (ell == 2 && n == 1)
            out.note = "the printed exponent floor(3(n-1)/2)+1 is used at ell=2, n=1; the proof's "
                       "factor 2^epsilon has epsilon=0 there";
        break;
    }
    case Splitting::ramified: {
        out.witness_conductor = ipow(ell, n / 2);
        bool const tiny = ipow(ell, n) <= 3;
        if (tiny) {
            num = hk;
            out.branch = "h_K";
        } else if (ell == 2 && n > 1 && valuation(static_cast<std::uint64_t>(-delta_k), 2) == 2) {
            num = hk * lp(3 * (n - 1) / 2 + 1) * (l - 1);
            den = w;
            out.branch = "h_K*2^(floor(3(n-1)/2)+1)/w_K";
        } else {
            num = hk * lp(3 * n / 2 - 1) * (l - 1);
            den = w;
            out.branch = "h_K*ell^(floor(3n/2)-1)*(ell-1)/w_K";
        }
        break;
    }
    }
    if (num % den != 0)
        throw Error("least CM degree " + num.str() + "/" + den.str() + " is not an integer for delta_K=" +
                    std::to_string(delta_k) + ", ell=" + std::to_string(ell) + ", n=" + std::to_string(n));
    out.delta = static_cast<std::uint64_t>(num / den);
    return out;
}

} // namespace tscope
