#include "tscope/group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "tscope/caps.hpp"
#include "tscope/error.hpp"

namespace tscope {

std::size_t default_closure_cap() { return caps_from_env().closure; }

namespace detail {

/// Element set of a closed group: packed entries plus an open-addressing
/// index keyed by those entries.
struct ElementTable
{
    using Packed = std::array<std::uint32_t, 4>;
    static constexpr std::uint32_t kEmpty = 0xffffffffu;

    std::vector<Packed> elems;
    std::vector<std::uint32_t> slots = std::vector<std::uint32_t>(64, kEmpty);
    bool has_neg_id = false;

    static Packed pack(Entries const & e)
    {
        return {static_cast<std::uint32_t>(e[0]), static_cast<std::uint32_t>(e[1]),
                static_cast<std::uint32_t>(e[2]), static_cast<std::uint32_t>(e[3])};
    }

    static std::uint64_t hash(Packed const & p)
    {
        std::uint64_t h = (std::uint64_t{p[0]} << 32 | p[1]) * 0x9e3779b97f4a7c15ull;
        h ^= (std::uint64_t{p[2]} << 32 | p[3]) + 0x7f4a7c159e3779b9ull + (h << 6) + (h >> 2);
        h ^= h >> 31;
        h *= 0xbf58476d1ce4e5b9ull;
        return h ^ (h >> 29);
    }

    std::size_t find_slot(Packed const & p) const
    {
        auto const mask = slots.size() - 1;
        auto i = static_cast<std::size_t>(hash(p)) & mask;
        while (slots[i] != kEmpty && elems[slots[i]] != p) i = (i + 1) & mask;
        return i;
    }

    bool contains(Packed const & p) const { return slots[find_slot(p)] != kEmpty; }

    /// Returns false when already present.
    bool insert(Packed const & p)
    {
        if (2 * (elems.size() + 1) > slots.size()) grow();
        auto const i = find_slot(p);
        if (slots[i] != kEmpty) return false;
        slots[i] = static_cast<std::uint32_t>(elems.size());
        elems.push_back(p);
        return true;
    }

    void grow()
    {
        slots.assign(slots.size() * 2, kEmpty);
        auto const mask = slots.size() - 1;
        for (std::uint32_t idx = 0; idx < elems.size(); ++idx) {
            auto i = static_cast<std::size_t>(hash(elems[idx])) & mask;
            while (slots[i] != kEmpty) i = (i + 1) & mask;
            slots[i] = idx;
        }
    }
};

} // namespace detail

MatrixGroup::MatrixGroup(Modulus level, std::vector<GMat> generators)
    : level_(std::move(level)), gens_(std::move(generators))
{
    for (auto const & g : gens_)
        if (!(g.level() == level_))
            throw InvalidArgument("generator " + g.to_string() + " at level " + g.level().to_string() +
                                  ", expected " + level_.to_string());
}

void MatrixGroup::require_closed() const
{
    if (!table_) throw Error("group element set not enumerated; call closed() first");
}

std::uint64_t MatrixGroup::order() const
{
    require_closed();
    return table_->elems.size();
}

GMat MatrixGroup::element(std::size_t i) const
{
    require_closed();
    auto const & p = table_->elems.at(i);
    return GMat(level_, Entries{p[0], p[1], p[2], p[3]});
}

bool MatrixGroup::contains(GMat const & m) const
{
    require_closed();
    if (!(m.level() == level_)) return false;
    return table_->contains(detail::ElementTable::pack(m.entries()));
}

bool MatrixGroup::has_neg_id() const
{
    require_closed();
    return table_->has_neg_id;
}

MatrixGroup MatrixGroup::closed(std::size_t cap) const
{
    if (table_) return *this;
    return closure(gens_, level_, cap);
}

MatrixGroup closure(std::vector<GMat> const & gens, Modulus const & level, std::size_t cap)
{
    MatrixGroup g(level, gens);
    // identity generators only cost time
    std::vector<GMat> work;
    for (auto const & s : gens)
        if (!s.is_identity() && std::find(work.begin(), work.end(), s) == work.end()) work.push_back(s);

    auto table = std::make_shared<detail::ElementTable>();
    using detail::ElementTable;
    table->insert(ElementTable::pack(GMat::identity(level).entries()));
    for (std::size_t head = 0; head < table->elems.size(); ++head) {
        auto const & p = table->elems[head];
        GMat const x(level, Entries{p[0], p[1], p[2], p[3]});
        for (auto const & s : work) {
            auto const y = mat_mul(x, s);
            if (table->insert(ElementTable::pack(y.entries())) && table->elems.size() > cap)
                throw CapExceeded("closure at level " + level.to_string(), cap);
        }
    }
    table->has_neg_id = table->contains(ElementTable::pack(GMat::scalar(level, -1).entries()));
    g.table_ = std::move(table);
    return g;
}

std::vector<GMat> gl2_generators(Modulus const & level)
{
    std::vector<GMat> gens{GMat(level, 1, 1, 0, 1), GMat(level, 1, 0, 1, 1)};
    for (auto u : level.unit_generators()) gens.push_back(GMat::diag(level, static_cast<std::int64_t>(u), 1));
    return gens;
}

MatrixGroup reduce(MatrixGroup const & g, Modulus const & target)
{
    if (target.ell() != g.level().ell())
        throw InvalidArgument("cannot reduce a group at " + g.level().to_string() + " modulo " +
                              target.to_string() + ": different primes");
    if (target.k() > g.level().k())
        throw InvalidArgument("reduction target " + target.to_string() + " is above level " +
                              g.level().to_string());
    if (target == g.level()) return g;
    std::vector<GMat> gens;
    for (auto const & s : g.generators()) gens.push_back(s.reduce(target));
    MatrixGroup out(target, std::move(gens));
    return g.is_closed() ? out.closed() : out;
}

std::vector<GMat> full_preimage_gens(MatrixGroup const & g, Modulus const & target)
{
    auto const & from = g.level();
    if (target.ell() != from.ell())
        throw InvalidArgument("cannot lift a group at " + from.to_string() + " to " + target.to_string() +
                              ": different primes");
    if (target.k() < from.k())
        throw InvalidArgument("lift target " + target.to_string() + " is below level " + from.to_string());
    std::vector<GMat> out;
    for (auto const & s : g.generators()) out.push_back(s.lift(target));
    auto const q = static_cast<std::int64_t>(from.n());
    out.emplace_back(target, 1 + q, 0, 0, 1);
    out.emplace_back(target, 1, q, 0, 1);
    out.emplace_back(target, 1, 0, q, 1);
    out.emplace_back(target, 1, 0, 0, 1 + q);
    // 1 + 2Z is not cyclic mod 8
    if (from.ell() == 2 && from.k() == 1 && target.k() >= 3) {
        out.emplace_back(target, -1, 0, 0, 1);
        out.emplace_back(target, 1, 0, 0, -1);
    }
    return out;
}

bool is_full_preimage(MatrixGroup const & h, int m)
{
    auto const & lvl = h.level();
    if (m < 1 || m > lvl.k())
        throw InvalidArgument("preimage test exponent " + std::to_string(m) + " outside [1, " +
                              std::to_string(lvl.k()) + "]");
    auto const full = h.closed();
    auto const low = reduce(full, lvl.with_exponent(m));
    BigInt expect = BigInt(low.order()) * pow(BigInt(lvl.ell()), static_cast<unsigned>(4 * (lvl.k() - m)));
    return BigInt(full.order()) == expect;
}

int preimage_level(MatrixGroup const & h)
{
    for (int m = 1; m < h.level().k(); ++m)
        if (is_full_preimage(h, m)) return m;
    return h.level().k();
}

IndexInfo index_and_d(MatrixGroup const & g)
{
    auto const full = g.closed();
    IndexInfo info;
    info.index = gl2_order(g.level()) / full.order();
    info.d = valuation(info.index, g.level().ell());
    return info;
}

namespace {

struct EntriesHash
{
    std::size_t operator()(Entries const & e) const noexcept
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (auto x : e) h = (h ^ x) * 0x100000001b3ull;
        return static_cast<std::size_t>(h);
    }
};

} // namespace

bool element_conjugate_in(MatrixGroup const & g, GMat const & target, std::size_t cap)
{
    if (!(target.level() == g.level()))
        throw InvalidArgument("conjugacy target at level " + target.level().to_string() + ", group at " +
                              g.level().to_string());
    auto const full = g.closed(cap);

    // conjugation invariants prune the candidate list; the class test below
    // is what decides
    std::vector<Entries> candidates;
    auto const det = target.det();
    auto const tr = target.trace();
    std::uint64_t const ord = target.order();
    for (std::size_t i = 0; i < full.size(); ++i) {
        auto const h = full.element(i);
        if (h.det() == det && h.trace() == tr && h.order() == ord) candidates.push_back(h.entries());
    }
    if (candidates.empty()) return false;

    // the conjugacy class of target is its orbit under conjugation by
    // generators of GL2
    std::vector<std::pair<GMat, GMat>> conj;
    for (auto const & s : gl2_generators(g.level())) conj.emplace_back(s, mat_inv(s));
    std::unordered_set<Entries, EntriesHash> cls{target.entries()};
    std::deque<GMat> queue{target};
    while (!queue.empty()) {
        auto const x = queue.front();
        queue.pop_front();
        for (auto const & [s, si] : conj) {
            auto const y = mat_mul(mat_mul(s, x), si);
            if (cls.insert(y.entries()).second) {
                if (cls.size() > cap) throw CapExceeded("conjugacy class at level " + g.level().to_string(), cap);
                queue.push_back(y);
            }
        }
    }
    return std::any_of(candidates.begin(), candidates.end(), [&](Entries const & e) { return cls.count(e) > 0; });
}

bool subgroup_conjugate_in(MatrixGroup const & g, MatrixGroup const & h, std::size_t cap)
{
    if (!(h.level() == g.level())) throw InvalidArgument("subgroup and group at different levels");
    auto const big = g.closed(cap);
    auto const gl2 = closure(gl2_generators(g.level()), g.level(), cap);
    for (std::size_t i = 0; i < gl2.size(); ++i) {
        auto const u = gl2.element(i);
        auto const ui = mat_inv(u);
        bool ok = true;
        for (auto const & s : h.generators())
            if (!big.contains(mat_mul(mat_mul(u, s), ui))) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

MatrixGroup adjoin_neg_id(MatrixGroup const & g)
{
    auto const neg = GMat::scalar(g.level(), -1);
    if (neg.is_identity()) return g;
    if (g.is_closed() && g.has_neg_id()) return g;
    auto const & gens = g.generators();
    if (std::find(gens.begin(), gens.end(), neg) != gens.end()) return g;
    auto extended = gens;
    extended.push_back(neg);
    MatrixGroup out(g.level(), std::move(extended));
    return g.is_closed() ? out.closed() : out;
}

MatrixGroup conjugate(MatrixGroup const & g, GMat const & u)
{
    auto const ui = mat_inv(u);
    std::vector<GMat> gens;
    for (auto const & s : g.generators()) gens.push_back(mat_mul(mat_mul(u, s), ui));
    MatrixGroup out(g.level(), std::move(gens));
    return g.is_closed() ? out.closed() : out;
}

} // namespace tscope
