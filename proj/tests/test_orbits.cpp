#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "tscope/catalog.hpp"
#include "tscope/error.hpp"
#include "tscope/orbits.hpp"

using namespace tscope;

namespace {

std::vector<oracle::Mat> as_oracle(std::vector<GMat> const & gens)
{
    std::vector<oracle::Mat> out;
    for (auto const & g : gens) {
        auto const & e = g.entries();
        out.push_back({static_cast<oracle::i64>(e[0]), static_cast<oracle::i64>(e[1]), static_cast<oracle::i64>(e[2]),
                       static_cast<oracle::i64>(e[3])});
    }
    return out;
}

std::vector<std::uint64_t> to_u64(std::vector<oracle::i64> const & v)
{
    return {v.begin(), v.end()};
}

std::vector<MatrixGroup> builtin_groups(std::uint64_t ell, int k)
{
    std::vector<MatrixGroup> out;
    for (auto const & name : builtin_names()) {
        if (name.rfind("paper_", 0) == 0 && ell != 7) continue;
        out.push_back(builtin(name, ell, k).group());
    }
    return out;
}

} // namespace

TEST_SUITE("orbits")
{
    TEST_CASE("torsion class counts")
    {
        CHECK(torsion_classes(Modulus(3, 1)).size() == 4);
        CHECK(torsion_classes(Modulus(5, 1)).size() == 12);
        CHECK(torsion_classes(Modulus(2, 1)).size() == 3);
        for (auto [ell, k] : {std::pair<std::uint64_t, int>{2, 2}, {2, 3}, {3, 2}, {7, 1}, {5, 2}}) {
            Modulus const m(ell, k);
            CHECK(torsion_classes(m).size() == static_cast<std::size_t>(oracle::pm_class_count(static_cast<oracle::i64>(m.n()))));
        }
    }

    TEST_CASE("canonical representatives")
    {
        Modulus const m(7, 1);
        for (auto const & c : torsion_classes(m)) {
            CHECK(has_full_order(c.rep, m));
            CHECK(canonical_pm(c.rep, m) == c.rep);
            Vec2 const neg{m.neg(c.rep.x), m.neg(c.rep.y)};
            CHECK(canonical_pm(neg, m) == c.rep);
            CHECK_FALSE(neg < c.rep);
        }
    }

    TEST_CASE("closed point degree examples")
    {
        Modulus const m5(5, 1), m3(3, 1), m7(7, 1);
        CHECK(closed_point_degrees(MatrixGroup(m5, gl2_generators(m5)), m5) == std::vector<std::uint64_t>{12});
        CHECK(closed_point_degrees(MatrixGroup(m3, {GMat::scalar(m3, -1)}), m3) == std::vector<std::uint64_t>{1, 1, 1, 1});
        CHECK(closed_point_degrees(builtin("paper_7ns21", 7, 1).group(), m7) == std::vector<std::uint64_t>{6, 9, 9});
        CHECK_THROWS_AS(closed_point_degrees(MatrixGroup(m5, {}), Modulus(5, 2)), InvalidArgument);
    }

    TEST_CASE("closed point degrees agree with the element oracle")
    {
        std::pair<std::uint64_t, int> const levels[] = {{2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {7, 1}};
        for (auto [ell, k] : levels) {
            Modulus const m(ell, k);
            auto const n = static_cast<oracle::i64>(m.n());
            for (auto const & g : builtin_groups(ell, k)) {
                auto gens = as_oracle(g.generators());
                gens.push_back({n - 1, 0, 0, n - 1});
                auto const elems = oracle::closure(gens, n);
                auto const expect = to_u64(oracle::pm_degrees(elems, static_cast<oracle::i64>(ell), n));
                auto const got = closed_point_degrees(g, m);
                CHECK(got == expect);
                // orbit sizes partition the classes and divide the group order
                CHECK(std::accumulate(got.begin(), got.end(), std::uint64_t{0}) == torsion_classes(m).size());
                auto const order = adjoin_neg_id(g).closed().order();
                for (auto d : got) CHECK(order % d == 0);
            }
        }
    }

    TEST_CASE("closed point degrees are conjugation and -I invariant")
    {
        Modulus const m7(7, 1);
        auto const g = builtin("paper_7ns21", 7, 1).group();
        auto const base = closed_point_degrees(g, m7);
        for (auto const & u : {GMat(m7, 1, 2, 3, 1), GMat(m7, 0, 1, 6, 3), GMat(m7, 5, 1, 1, 0)})
            CHECK(closed_point_degrees(conjugate(g, u), m7) == base);
        CHECK(closed_point_degrees(adjoin_neg_id(g), m7) == base);
    }

    TEST_CASE("cyclic subgroup orbit examples")
    {
        Modulus const m5(5, 1), m3(3, 1);
        for (std::uint64_t ell : {3, 5, 7}) {
            Modulus const m(ell, 1);
            auto const orbits = cyclic_subgroup_orbits(MatrixGroup(m, gl2_generators(m)), 1);
            REQUIRE(orbits.size() == 1);
            CHECK(orbits[0].size() == ell + 1);
        }
        auto const borel = cyclic_subgroup_orbits(builtin("borel", 5, 1).group(), 1);
        std::vector<std::uint64_t> sizes;
        for (auto const & o : borel) sizes.push_back(o.size());
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes == std::vector<std::uint64_t>{1, 5});
        auto const trivial = cyclic_subgroup_orbits(MatrixGroup(m3, {}), 1);
        CHECK(trivial.size() == 4);
        for (auto const & o : trivial) CHECK(o.size() == 1);
    }

    TEST_CASE("cyclic subgroup orbits partition all kernels, checked by enumeration")
    {
        struct Case
        {
            std::uint64_t ell;
            int ambient;
            int r;
        };
        Case const cases[] = {{2, 2, 1}, {2, 3, 2}, {2, 4, 3}, {3, 2, 1}, {3, 3, 2}, {5, 2, 1}, {5, 2, 2}, {7, 2, 1}, {7, 3, 1}};
        for (auto const & c : cases) {
            Modulus const amb(c.ell, c.ambient);
            auto const n = static_cast<oracle::i64>(amb.n());
            auto const all = oracle::cyclic_subgroups(static_cast<oracle::i64>(c.ell), c.r, c.ambient);
            CHECK(all.size() == ipow(c.ell, c.r - 1) * (c.ell + 1));
            for (auto const & name : {"borel", "split_cartan_normalizer", "nonsplit_cartan"}) {
                auto const g = builtin(name, c.ell, c.ambient).group();
                std::size_t total = 0;
                auto const orbits = cyclic_subgroup_orbits(g, c.r);
                for (auto const & o : orbits) total += o.size();
                CHECK(total == all.size());
                // brute force orbit count under the same generators
                std::set<std::vector<oracle::Vec>> seen;
                std::size_t count = 0;
                for (auto const & k : all) {
                    if (seen.count(k)) continue;
                    ++count;
                    std::vector<std::vector<oracle::Vec>> todo{k};
                    seen.insert(k);
                    for (std::size_t i = 0; i < todo.size(); ++i)
                        for (auto const & u : as_oracle(g.generators())) {
                            std::vector<oracle::Vec> img;
                            for (auto const & p : todo[i]) img.push_back(oracle::apply(u, p, n));
                            std::sort(img.begin(), img.end());
                            if (seen.insert(img).second) todo.push_back(img);
                        }
                }
                CHECK(orbits.size() == count);
                for (auto const & o : orbits) CHECK((o.size() == 1) == is_stable(g, o.members.front()));
            }
        }
    }

    TEST_CASE("cyclic subgroup generators")
    {
        Modulus const amb(3, 3);
        auto const c = cyclic_subgroup_from_gen(amb, {9, 0});
        CHECK(c.r == 1);
        CHECK(c.gen == Vec2{9, 0});
        auto const d = cyclic_subgroup_from_gen(amb, {18, 9});
        CHECK(d.r == 1);
        CHECK(d.gen == Vec2{9, 18});
        auto const e = cyclic_subgroup_from_gen(amb, {6, 3});
        CHECK(e.r == 2);
        CHECK(cyclic_subgroup(amb, e.r, e.line) == e);
        Lines const lines{3, 2};
        for (std::uint64_t i = 0; i < lines.count(); ++i) CHECK(lines.index_of(lines.vector(i)) == i);
    }

    TEST_CASE("isogeny character examples")
    {
        Modulus const m5(5, 1), m25(5, 2);
        auto const e1 = cyclic_subgroup_from_gen(m5, {1, 0});
        auto const triv = isogeny_character(MatrixGroup(m5, {}), e1);
        CHECK(triv.values == std::vector<std::uint64_t>{1});
        CHECK(twisted_point_degree(triv) == 1);
        auto const borel = isogeny_character(builtin("borel", 5, 1).group(), e1);
        CHECK(borel.values.size() == 4);
        CHECK(twisted_point_degree(borel) == 2);
        MatrixGroup const g(m25, {GMat(m25, 6, 1, 0, 1), GMat(m25, 1, 0, 0, 2), GMat(m25, 11, 3, 0, 7)});
        auto const ch = isogeny_character(g, cyclic_subgroup_from_gen(m25, {1, 0}));
        CHECK(ch.values == std::vector<std::uint64_t>{1, 6, 11, 16, 21});
        CHECK(twisted_point_degree(ch) == 5);
    }

    TEST_CASE("isogeny character errors")
    {
        Modulus const m5(5, 1);
        auto const full = MatrixGroup(m5, gl2_generators(m5));
        CHECK_THROWS_AS(isogeny_character(full, cyclic_subgroup_from_gen(m5, {1, 0})), InvalidArgument);
        CHECK_THROWS_AS(isogeny_character(full, cyclic_subgroup(m5, 0, 0)), InvalidArgument);
        Modulus const m2(2, 1);
        auto const ch = isogeny_character(MatrixGroup(m2, {}), cyclic_subgroup_from_gen(m2, {1, 0}));
        CHECK_THROWS_AS(twisted_point_degree(ch), InvalidArgument);
    }

    TEST_CASE("character images are closed and twisted degrees divide phi")
    {
        for (std::uint64_t ell : {3, 5, 7}) {
            for (int r = 1; r <= 2; ++r) {
                Modulus const amb(ell, r);
                for (auto const & name : {"borel", "split_cartan", "unipotent_column"}) {
                    auto const g = builtin(name, ell, r).group();
                    for (auto const & o : cyclic_subgroup_orbits(g, r)) {
                        if (o.size() != 1) continue;
                        auto const ch = isogeny_character(g, o.members.front());
                        auto const q = ch.modulus.n();
                        for (auto a : ch.values)
                            for (auto b : ch.values)
                                CHECK(std::binary_search(ch.values.begin(), ch.values.end(), a * b % q));
                        auto const phi = q / ell * (ell - 1);
                        auto const t = twisted_point_degree(ch);
                        CHECK(phi % t == 0);
                        if (std::binary_search(ch.values.begin(), ch.values.end(), q - 1)) CHECK((phi / 2) % t == 0);
                    }
                }
            }
        }
    }
}
