#include "tscope/isogeny.hpp"

#include <algorithm>
#include <limits>

#include "tscope/caps.hpp"
#include "tscope/error.hpp"

namespace tscope {

ScanOptions scan_options_from_env()
{
    auto const caps = caps_from_env();
    ScanOptions opts;
    opts.ambient_cap = caps.ambient;
    opts.state_cap = caps.closure;
    return opts;
}

int default_ambient_exponent(std::uint64_t ell)
{
    switch (ell) {
    case 2: return 9;
    case 3: return 6;
    case 5: return 4;
    case 7: return 3;
    default: return ell <= 13 ? 3 : 2;
    }
}

std::uint64_t ambient_cap(std::uint64_t ell, ScanOptions const & opts)
{
    if (opts.ambient_cap) return *opts.ambient_cap;
    return ipow(ell, default_ambient_exponent(ell));
}

int max_scannable_r(std::uint64_t ell, int k, ScanOptions const & opts)
{
    auto const cap = ambient_cap(ell, opts);
    int e = 0;
    std::uint64_t p = 1;
    while (p <= cap / ell) {
        p *= ell;
        ++e;
    }
    return e - k;
}

namespace {

/// Basis {P, Q} of the ambient module adapted to a line: P is the
/// normalized vector, Q completes it.
GMat adapted_basis(Modulus const & amb, Lines const & lines, std::uint64_t line)
{
    if (lines.r == 0) return GMat::identity(amb);
    auto const v = lines.vector(line);
    auto const x = static_cast<std::int64_t>(v.x), y = static_cast<std::int64_t>(v.y);
    if (line < lines.modulus()) return GMat(amb, x, 0, y, 1);
    return GMat(amb, x, 1, y, 0);
}

struct Step
{
    std::uint64_t target = 0; ///< image line
    Entries m{};              ///< action on E/C[ell^k], mod ell^k
};

/// Action of u on the curve E/C: the new kernel and the induced matrix
/// (a, ell^r b; c, d) from B' ^-1 u B = (a, b; ell^r c, d).
Step push(GMat const & u, Lines const & lines, std::vector<GMat> const & basis,
          std::vector<GMat> const & basis_inv, std::uint64_t line, Modulus const & low)
{
    Step st;
    auto const & amb = u.level();
    auto const q = lines.modulus();
    if (lines.r == 0) {
        st.target = 0;
    } else {
        auto const v = lines.vector(line);
        auto const & e = u.entries();
        st.target = lines.index_of({(e[0] % q * v.x + e[1] % q * v.y) % q, (e[2] % q * v.x + e[3] % q * v.y) % q});
    }
    auto const t = mat_mul(mat_mul(basis_inv[st.target], u), basis[line]);
    auto const & te = t.entries();
    if (te[2] % q != 0)
        throw Error("internal: adapted basis does not triangularize " + u.to_string() + " at " + amb.to_string());
    auto const n = low.n();
    st.m = {te[0] % n, te[1] * q % n, te[2] / q % n, te[3] % n};
    return st;
}

std::vector<GMat> generators_at(MatrixGroup const & g, Modulus const & amb)
{
    std::vector<GMat> gens;
    if (g.level().k() < amb.k())
        gens = full_preimage_gens(g, amb);
    else if (g.level().k() > amb.k())
        for (auto const & s : g.generators()) gens.push_back(s.reduce(amb));
    else
        gens = g.generators();
    std::vector<GMat> out;
    for (auto const & s : gens)
        if (!s.is_identity() && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    return out;
}

} // namespace

MatrixGroup pushforward(MatrixGroup const & h, CyclicSubgroup const & c)
{
    auto const & amb = h.level();
    if (!(c.ambient == amb)) throw InvalidArgument("kernel and group at different levels");
    int const k = amb.k() - c.r;
    if (k < 1) throw InvalidArgument("pushforward needs r < level exponent");
    if (!is_stable(h, c)) throw InvalidArgument("cyclic subgroup is not stable under the group");
    Modulus const low(amb.ell(), k);
    Lines const lines{amb.ell(), c.r};
    std::vector<GMat> basis(lines.count(), GMat::identity(amb)), basis_inv = basis;
    basis[c.line] = adapted_basis(amb, lines, c.line);
    basis_inv[c.line] = mat_inv(basis[c.line]);
    std::vector<GMat> gens;
    for (auto const & s : h.generators())
        gens.emplace_back(low, push(s, lines, basis, basis_inv, c.line, low).m);
    return MatrixGroup(low, std::move(gens));
}

std::vector<std::uint64_t> ScanReport::all_degrees() const
{
    std::vector<std::uint64_t> out;
    for (auto const & o : kernel_orbits) out.insert(out.end(), o.degrees.begin(), o.degrees.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::uint64_t> ScanReport::min_odd_degree() const
{
    std::optional<std::uint64_t> best;
    for (auto const & o : kernel_orbits)
        for (auto d : o.degrees)
            if (d % 2 == 1 && (!best || d < *best)) best = d;
    return best;
}

ScanReport isogeny_class_degrees(MatrixGroup const & g, std::uint64_t ell, int k, int r, ScanOptions const & opts)
{
    if (g.level().ell() != ell)
        throw InvalidArgument("group at " + g.level().to_string() + " does not match ell = " + std::to_string(ell));
    if (k < 1) throw InvalidArgument("k must be >= 1");
    if (r < 0) throw InvalidArgument("r must be >= 0");
    if (r > max_scannable_r(ell, k, opts))
        throw CapExceeded("ambient level " + std::to_string(ell) + "^" + std::to_string(r + k),
                          ambient_cap(ell, opts));
    Modulus const amb(ell, r + k);
    Modulus const low(ell, k);
    Lines const lines{ell, r};
    auto const nc = lines.count();
    auto const kn = low.n();
    auto const states = nc * kn * kn;
    if (states > opts.state_cap) throw CapExceeded("scan state space", opts.state_cap);

    auto const gens = generators_at(g, amb);
    std::vector<GMat> basis, basis_inv;
    for (std::uint64_t j = 0; j < nc; ++j) {
        basis.push_back(adapted_basis(amb, lines, j));
        basis_inv.push_back(mat_inv(basis.back()));
    }
    // steps[s * nc + j]: action of generator s on kernel j
    std::vector<Step> steps;
    steps.reserve(gens.size() * nc);
    for (auto const & s : gens)
        for (std::uint64_t j = 0; j < nc; ++j) steps.push_back(push(s, lines, basis, basis_inv, j, low));

    // kernel orbits, numbered by least member
    std::vector<std::size_t> orbit_of(nc, std::numeric_limits<std::size_t>::max());
    std::vector<std::uint64_t> orbit_size;
    for (std::uint64_t j0 = 0; j0 < nc; ++j0) {
        if (orbit_of[j0] != std::numeric_limits<std::size_t>::max()) continue;
        auto const id = orbit_size.size();
        std::vector<std::uint64_t> todo{j0};
        orbit_of[j0] = id;
        for (std::size_t h = 0; h < todo.size(); ++h)
            for (std::size_t s = 0; s < gens.size(); ++s) {
                auto const t = steps[s * nc + todo[h]].target;
                if (orbit_of[t] == std::numeric_limits<std::size_t>::max()) {
                    orbit_of[t] = id;
                    todo.push_back(t);
                }
            }
        orbit_size.push_back(todo.size());
    }

    ScanReport rep;
    rep.ell = ell;
    rep.k = k;
    rep.r = r;
    for (std::size_t id = 0; id < orbit_size.size(); ++id) {
        KernelOrbitDegrees o;
        o.id = id;
        o.kernel_orbit_size = orbit_size[id];
        rep.kernel_orbits.push_back(o);
    }
    std::vector<bool> rep_set(orbit_size.size(), false);

    auto const classes = torsion_classes(low);
    std::vector<char> seen(states, 0);
    auto key = [&](std::uint64_t j, Vec2 v) { return (j * kn + v.x) * kn + v.y; };
    struct State
    {
        std::uint64_t j;
        Vec2 v;
    };
    std::vector<State> stack;
    bool have_min = false;
    for (std::uint64_t j0 = 0; j0 < nc; ++j0) {
        auto const id = orbit_of[j0];
        if (!rep_set[id]) {
            rep.kernel_orbits[id].representative = cyclic_subgroup(amb, r, j0);
            rep_set[id] = true;
        }
        for (auto const & cls : classes) {
            if (seen[key(j0, cls.rep)]) continue;
            seen[key(j0, cls.rep)] = 1;
            stack.assign(1, {j0, cls.rep});
            std::uint64_t count = 0;
            while (!stack.empty()) {
                auto const [j, v] = stack.back();
                stack.pop_back();
                ++count;
                for (std::size_t s = 0; s < gens.size(); ++s) {
                    auto const & st = steps[s * nc + j];
                    auto const & m = st.m;
                    Vec2 const w = canonical_pm({(m[0] * v.x + m[1] * v.y) % kn, (m[2] * v.x + m[3] * v.y) % kn}, low);
                    auto & flag = seen[key(st.target, w)];
                    if (!flag) {
                        flag = 1;
                        stack.push_back({st.target, w});
                    }
                }
            }
            rep.kernel_orbits[id].degrees.push_back(count);
            if (!have_min || count < rep.min_degree) {
                rep.min_degree = count;
                rep.witness = {id, rep.kernel_orbits[id].representative, cls.rep};
                have_min = true;
            }
        }
    }
    for (auto & o : rep.kernel_orbits) std::sort(o.degrees.begin(), o.degrees.end());
    return rep;
}

ClassMin class_min_degree(MatrixGroup const & g, std::uint64_t ell, int k, int r_max, ScanOptions const & opts)
{
    if (r_max < 0) throw InvalidArgument("r_max must be >= 0");
    ClassMin out;
    for (int r = 0; r <= r_max; ++r) {
        auto const rep = isogeny_class_degrees(g, ell, k, r, opts);
        auto const m = rep.min_degree;
        out.per_r.push_back(m);
        if (r == 0 || m < out.min) {
            out.min = m;
            out.at_r = r;
        }
        auto const odd = rep.min_odd_degree();
        if (odd && (!out.min_odd || *odd < *out.min_odd)) {
            out.min_odd = odd;
            out.odd_at_r = r;
        }
    }
    return out;
}

} // namespace tscope
