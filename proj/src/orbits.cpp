#include "tscope/orbits.hpp"

#include <algorithm>
#include <deque>

#include "tscope/error.hpp"

namespace tscope {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) { return a * b % n; }

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t n)
{
    std::int64_t r0 = static_cast<std::int64_t>(n), r1 = static_cast<std::int64_t>(a % n);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        auto q = r0 / r1;
        auto r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        auto t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw InvalidArgument(std::to_string(a) + " is not a unit mod " + std::to_string(n));
    auto const m = static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(((t0 % m) + m) % m);
}

Vec2 apply_mod(GMat const & u, Vec2 v, std::uint64_t n)
{
    auto const & e = u.entries();
    return {(e[0] % n * v.x + e[1] % n * v.y) % n, (e[2] % n * v.x + e[3] % n * v.y) % n};
}

} // namespace

bool has_full_order(Vec2 v, Modulus const & m)
{
    return m.is_unit(v.x) || m.is_unit(v.y);
}

Vec2 canonical_pm(Vec2 v, Modulus const & m)
{
    Vec2 const w{m.neg(v.x), m.neg(v.y)};
    return std::min(v, w);
}

std::vector<TorsionClass> torsion_classes(Modulus const & m)
{
    std::vector<TorsionClass> out;
    auto const n = m.n();
    for (std::uint64_t x = 0; x < n; ++x)
        for (std::uint64_t y = 0; y < n; ++y) {
            Vec2 const v{x, y};
            if (has_full_order(v, m) && canonical_pm(v, m) == v) out.push_back({v, m});
        }
    return out;
}

std::vector<std::uint64_t> closed_point_degrees(MatrixGroup const & g, Modulus const & n)
{
    if (!(g.level() == n))
        throw InvalidArgument("group at level " + g.level().to_string() + ", points at " + n.to_string());
    auto const N = n.n();
    std::vector<char> seen(N * N, 0);
    std::vector<std::uint64_t> sizes;
    std::vector<Vec2> stack;
    for (auto const & cls : torsion_classes(n)) {
        auto const start = cls.rep;
        if (seen[start.x * N + start.y]) continue;
        seen[start.x * N + start.y] = 1;
        stack.assign(1, start);
        std::uint64_t count = 0;
        while (!stack.empty()) {
            auto const v = stack.back();
            stack.pop_back();
            ++count;
            for (auto const & s : g.generators()) {
                auto const w = canonical_pm(s.apply(v), n);
                auto & flag = seen[w.x * N + w.y];
                if (!flag) {
                    flag = 1;
                    stack.push_back(w);
                }
            }
        }
        sizes.push_back(count);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

Vec2 Lines::vector(std::uint64_t index) const
{
    if (r == 0) return {0, 0};
    auto const q = modulus();
    if (index < q) return {1, index};
    if (index >= count()) throw InvalidArgument("line index out of range");
    return {ell * (index - q), 1 % q};
}

std::uint64_t Lines::index_of(Vec2 v) const
{
    if (r == 0) return 0;
    auto const q = modulus();
    auto const x = v.x % q, y = v.y % q;
    if (x % ell != 0) return mulmod(y, inv_mod(x, q), q);
    if (y % ell == 0) throw InvalidArgument("vector is not primitive mod " + std::to_string(q));
    auto const s = mulmod(x, inv_mod(y, q), q);
    return q + s / ell;
}

CyclicSubgroup cyclic_subgroup(Modulus const & ambient, int r, std::uint64_t line)
{
    int const k = ambient.k() - r;
    if (r < 0 || k < 0) throw InvalidArgument("cyclic subgroup order exceeds ambient " + ambient.to_string());
    Lines const lines{ambient.ell(), r};
    if (line >= lines.count()) throw InvalidArgument("line index out of range");
    CyclicSubgroup c{{0, 0}, r, ambient, line};
    if (r == 0) return c;
    auto const c1 = lines.vector(line);
    auto const lk = ambient.power(k);
    auto const q = lines.modulus();
    bool first = true;
    for (std::uint64_t u = 1; u < q; ++u) {
        if (u % ambient.ell() == 0) continue;
        // ell^k * (u c') depends only on u c' mod ell^r
        Vec2 const g{mulmod(u, c1.x, q) * lk, mulmod(u, c1.y, q) * lk};
        if (first || g < c.gen) c.gen = g;
        first = false;
    }
    return c;
}

CyclicSubgroup cyclic_subgroup_from_gen(Modulus const & ambient, Vec2 gen)
{
    gen = {gen.x % ambient.n(), gen.y % ambient.n()};
    if (gen.x == 0 && gen.y == 0) return cyclic_subgroup(ambient, 0, 0);
    int const vx = gen.x == 0 ? ambient.k() : valuation(gen.x, ambient.ell());
    int const vy = gen.y == 0 ? ambient.k() : valuation(gen.y, ambient.ell());
    int const k = std::min(vx, vy);
    int const r = ambient.k() - k;
    auto const lk = ambient.power(k);
    Lines const lines{ambient.ell(), r};
    return cyclic_subgroup(ambient, r, lines.index_of({gen.x / lk, gen.y / lk}));
}

std::vector<CyclicOrbit> cyclic_subgroup_orbits(MatrixGroup const & g, int r)
{
    auto const & amb = g.level();
    if (r < 0 || r > amb.k())
        throw InvalidArgument("subgroup order ell^" + std::to_string(r) + " exceeds level " + amb.to_string());
    Lines const lines{amb.ell(), r};
    auto const q = lines.modulus();
    auto const count = lines.count();
    std::vector<char> seen(count, 0);
    std::vector<CyclicOrbit> out;
    for (std::uint64_t start = 0; start < count; ++start) {
        if (seen[start]) continue;
        seen[start] = 1;
        std::vector<std::uint64_t> members{start};
        for (std::size_t head = 0; head < members.size(); ++head) {
            auto const v = lines.vector(members[head]);
            for (auto const & s : g.generators()) {
                auto const j = r == 0 ? 0 : lines.index_of(apply_mod(s, v, q));
                if (!seen[j]) {
                    seen[j] = 1;
                    members.push_back(j);
                }
            }
        }
        std::sort(members.begin(), members.end());
        CyclicOrbit orbit;
        for (auto j : members) orbit.members.push_back(cyclic_subgroup(amb, r, j));
        out.push_back(std::move(orbit));
    }
    return out;
}

bool is_stable(MatrixGroup const & g, CyclicSubgroup const & c)
{
    if (!(g.level() == c.ambient)) throw InvalidArgument("group and subgroup at different levels");
    if (c.r == 0) return true;
    Lines const lines{c.ambient.ell(), c.r};
    auto const v = lines.vector(c.line);
    for (auto const & s : g.generators())
        if (lines.index_of(apply_mod(s, v, lines.modulus())) != c.line) return false;
    return true;
}

CharacterImage isogeny_character(MatrixGroup const & g, CyclicSubgroup const & c)
{
    if (c.r < 1) throw InvalidArgument("isogeny character needs a nontrivial kernel");
    if (!is_stable(g, c)) throw InvalidArgument("cyclic subgroup is not stable under the group");
    Lines const lines{c.ambient.ell(), c.r};
    Modulus const mod(c.ambient.ell(), c.r);
    auto const q = mod.n();
    auto const v = lines.vector(c.line);
    std::vector<std::uint64_t> alphas;
    for (auto const & s : g.generators()) {
        auto const w = apply_mod(s, v, q);
        // v.x is 1 or divisible by ell; in the latter case v.y = 1
        alphas.push_back(mod.is_unit(v.x) ? mulmod(w.x, inv_mod(v.x, q), q) : w.y);
    }
    std::vector<char> in(q, 0);
    std::vector<std::uint64_t> values{1 % q};
    in[1 % q] = 1;
    for (std::size_t head = 0; head < values.size(); ++head)
        for (auto a : alphas) {
            auto const y = mulmod(values[head], a, q);
            if (!in[y]) {
                in[y] = 1;
                values.push_back(y);
            }
        }
    std::sort(values.begin(), values.end());
    return {std::move(values), mod};
}

std::uint64_t twisted_point_degree(CharacterImage const & ch)
{
    auto const q = ch.modulus.n();
    if (q < 3) throw InvalidArgument("twisted point degree needs modulus >= 3");
    std::vector<std::uint64_t> all = ch.values;
    for (auto v : ch.values) all.push_back(ch.modulus.neg(v));
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all.size() / 2;
}

} // namespace tscope
