#include "tscope/formulas.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <vector>

#include <boost/rational.hpp>

#include "tscope/error.hpp"
#include "tscope/modmat.hpp"

namespace tscope {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) throw InvalidArgument("degree overflows 64 bits");
    return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, int exp)
{
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

bool any_of_labels(ClassDescriptor const & d, std::initializer_list<char const *> labels)
{
    return std::any_of(labels.begin(), labels.end(), [&](char const * l) { return d.image_labels.count(l) > 0; });
}

} // namespace

std::uint64_t map_degree(std::uint64_t a, std::uint64_t b)
{
    if (a < 1 || b < 1) throw InvalidArgument("map_degree needs a, b >= 1");
    using Q = boost::rational<std::int64_t>;
    if (b > 3'000'000'000ull) throw InvalidArgument("map degree overflows");
    auto const bb = static_cast<std::int64_t>(b);
    Q deg(bb * bb);
    for (auto p : prime_divisors(b))
        if (a % p != 0) {
            auto const pp = static_cast<std::int64_t>(p * p);
            deg *= Q(pp - 1, pp);
        }
    if (a <= 2 && a * b > 2) deg /= 2;
    if (deg.denominator() != 1) throw Error("internal: non-integral map degree");
    return static_cast<std::uint64_t>(deg.numerator());
}

std::uint64_t delta_lower_bound(std::uint64_t deg_x, int d, std::uint64_t ell, int k)
{
    if (deg_x < 1 || d < 0 || k < 1) throw InvalidArgument("delta_lower_bound needs deg_x >= 1, d >= 0, k >= 1");
    if (!is_prime(ell)) throw InvalidArgument(std::to_string(ell) + " is not prime");
    int const e = std::max(0, 2 * k - (ell == 2 ? 3 : 2) - d);
    return checked_mul(deg_x, checked_pow(ell, e));
}

std::optional<Table> parse_table(std::string const & name)
{
    if (name == "1.3" || name == "summary") return Table::summary;
    if (name == "5.1" || name == "large_primes") return Table::large_primes;
    if (name == "6.1" || name == "prime_three") return Table::prime_three;
    if (name == "7.1" || name == "prime_two") return Table::prime_two;
    return std::nullopt;
}

std::string table_name(Table t)
{
    switch (t) {
    case Table::summary: return "summary";
    case Table::large_primes: return "large_primes";
    case Table::prime_three: return "prime_three";
    case Table::prime_two: return "prime_two";
    }
    return "?";
}

std::optional<int> label_index_valuation(std::string const & label, std::uint64_t ell)
{
    auto const dot1 = label.find('.');
    if (dot1 == std::string::npos) return std::nullopt;
    auto const dot2 = label.find('.', dot1 + 1);
    if (dot2 == std::string::npos) return std::nullopt;
    std::uint64_t level = 0, index = 0;
    auto const * b = label.data();
    auto [p1, e1] = std::from_chars(b, b + dot1, level);
    auto [p2, e2] = std::from_chars(b + dot1 + 1, b + dot2, index);
    if (e1 != std::errc{} || p1 != b + dot1 || e2 != std::errc{} || p2 != b + dot2 || level == 0 || index == 0)
        return std::nullopt;
    return valuation(index, ell);
}

namespace {

void check_consistency(ClassDescriptor const & d)
{
    if (d.k < 1) throw InvalidArgument("k must be >= 1");
    if (d.exceptional_j7 && d.ell != 7) throw InvalidArgument("exceptional j-invariant flag needs ell = 7");
    if (d.rational_25_isogeny && d.ell != 5) throw InvalidArgument("25-isogeny flag needs ell = 5");
    bool const two_flags = d.rational_2_torsion || d.rational_4_point || d.rational_8_point || d.cubic_full_2_torsion;
    if (two_flags && d.ell != 2) throw InvalidArgument("2-power torsion flags need ell = 2");
    if (d.ell == 7) {
        int branches = d.exceptional_j7 ? 1 : 0;
        if (any_of_labels(d, {"7B.1.1", "7B.1.6", "7B.6.1"})) ++branches;
        if (any_of_labels(d, {"7B.1.2", "7B.6.2", "7B.2.1", "7B"})) ++branches;
        if (branches > 1) throw InvalidArgument("more than one ell = 7 branch selected");
    }
    if (d.ell == 3) {
        if (d.image_labels.count("9.36.0.2") && any_of_labels(d, {"9.12.0.2", "9.36.0.7", "9.36.0.8"}))
            throw InvalidArgument("more than one ell = 3 branch selected");
    }
}

[[noreturn]] void no_odd(ClassDescriptor const & d, std::string const & why)
{
    throw NoOddDegree("no odd-degree points on X1(" + std::to_string(d.ell) + "^" + std::to_string(d.k) + "): " + why);
}

TheoremDelta summary_row(ClassDescriptor const & d)
{
    auto const k = d.k;
    switch (d.ell) {
    case 13: return {checked_mul(3, checked_pow(13, 2 * k - 2)), true, "3*13^(2k-2)"};
    case 11: return {checked_mul(5, checked_pow(11, 2 * k - 2)), true, "5*11^(2k-2)"};
    case 7:
        if (d.exceptional_j7)
            return {checked_mul(9, checked_pow(7, std::max(0, 2 * k - 3))), true, "9*7^max(0,2k-3)"};
        return {checked_pow(7, 2 * k - 2), false, "7^(2k-2)"};
    case 5: return {checked_pow(5, std::max(0, 2 * k - 3)), false, "5^max(0,2k-3)"};
    case 3: return {checked_pow(3, std::max(0, 2 * k - 4)), false, "3^max(0,2k-4)"};
    case 2:
        if (k > 3) no_odd(d, "requires k <= 3");
        return {1, false, "1"};
    default: no_odd(d, "ell must be in {2,3,5,7,11,13}");
    }
}

TheoremDelta large_prime_row(ClassDescriptor const & d)
{
    auto const k = d.k;
    switch (d.ell) {
    case 5:
        if (d.rational_25_isogeny) return {checked_pow(5, std::max(0, 2 * k - 3)), true, "5^max(0,2k-3)"};
        return {checked_pow(5, 2 * k - 2), true, "5^(2k-2)"};
    case 7:
        if (d.exceptional_j7) return {checked_mul(9, checked_pow(7, std::max(0, 2 * k - 3))), true, "9*7^max(0,2k-3)"};
        if (any_of_labels(d, {"7B.1.1", "7B.1.6", "7B.6.1"})) return {checked_pow(7, 2 * k - 2), true, "7^(2k-2)"};
        if (any_of_labels(d, {"7B.1.2", "7B.6.2", "7B.2.1", "7B"}))
            return {checked_mul(3, checked_pow(7, 2 * k - 2)), true, "3*7^(2k-2)"};
        throw InvalidArgument("ell = 7 needs the exceptional j-invariant or a 7B image label");
    case 11: return {checked_mul(5, checked_pow(11, 2 * k - 2)), true, "5*11^(2k-2)"};
    case 13: return {checked_mul(3, checked_pow(13, 2 * k - 2)), true, "3*13^(2k-2)"};
    default:
        if (d.ell < 5) throw InvalidArgument("this table covers ell >= 5");
        no_odd(d, "ell must be in {5,7,11,13}");
    }
}

TheoremDelta prime_three_row(ClassDescriptor const & d)
{
    if (d.ell != 3) throw InvalidArgument("this table covers ell = 3");
    auto const k = d.k;
    TheoremDelta out;
    out.attained = true;
    if (any_of_labels(d, {"9.36.0.6", "9.36.0.8"})) {
        out.delta = checked_pow(3, std::max(0, 2 * k - 3));
        out.branch = "3^max(0,2k-3)";
    } else {
        auto dd = d.d;
        for (auto const & l : d.image_labels) {
            if (dd) break;
            dd = label_index_valuation(l, 3);
        }
        if (!dd) throw InvalidArgument("ell = 3 needs d or an image label N.i.g.n");
        out.delta = checked_pow(3, std::max(0, 2 * k - 2 - *dd));
        out.branch = "3^max(0,2k-2-d), d=" + std::to_string(*dd);
    }
    if (any_of_labels(d, {"9.12.0.2", "9.36.0.7", "9.36.0.8"}) && k == 2) {
        out.delta = checked_mul(3, out.delta);
        out.branch += ", times 3 at k=2";
    } else if (d.image_labels.count("9.36.0.2") && (k == 2 || k == 3)) {
        out.delta = checked_mul(3, out.delta);
        out.branch += ", times 3 at k in {2,3}";
    }
    return out;
}

TheoremDelta prime_two_row(ClassDescriptor const & d)
{
    if (d.ell != 2) throw InvalidArgument("this table covers ell = 2");
    switch (d.k) {
    case 1: return d.rational_2_torsion ? TheoremDelta{1, true, "rational 2-torsion"} : TheoremDelta{3, true, "no rational 2-torsion"};
    case 2:
        if (d.rational_4_point) return {1, true, "rational point of order 4"};
        if (d.cubic_full_2_torsion || d.image_labels.count("4.8.0.2"))
            return {3, true, "cubic full 2-torsion or 4.8.0.2"};
        no_odd(d, "no rational point of order 4, no cubic full 2-torsion, no 4.8.0.2 image");
    case 3:
        if (d.rational_8_point) return {1, true, "rational point of order 8"};
        no_odd(d, "no rational point of order 8");
    default: no_odd(d, "requires k <= 3");
    }
}

} // namespace

TheoremDelta theorem_delta(ClassDescriptor const & desc)
{
    if (!is_prime(desc.ell)) throw InvalidArgument(std::to_string(desc.ell) + " is not prime");
    check_consistency(desc);
    switch (desc.table) {
    case Table::summary: return summary_row(desc);
    case Table::large_primes: return large_prime_row(desc);
    case Table::prime_three: return prime_three_row(desc);
    case Table::prime_two: return prime_two_row(desc);
    }
    throw InvalidArgument("unknown table");
}

} // namespace tscope
