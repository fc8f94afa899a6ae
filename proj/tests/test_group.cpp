#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tscope/catalog.hpp"
#include "tscope/error.hpp"
#include "tscope/group.hpp"

using namespace tscope;

namespace {

MatrixGroup ns21() { return builtin("paper_7ns21", 7, 1).group(); }

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

/// Small random generating sets at a few levels, fixed seed.
std::vector<MatrixGroup> sample_groups()
{
    std::mt19937_64 rng(20261019);
    std::vector<MatrixGroup> out;
    std::pair<std::uint64_t, int> const levels[] = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {7, 1}};
    for (auto [ell, k] : levels) {
        Modulus const m(ell, k);
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<GMat> gens;
            int const count = 1 + trial % 3;
            while (static_cast<int>(gens.size()) < count) {
                std::int64_t e[4];
                for (auto & x : e) x = static_cast<std::int64_t>(rng() % m.n());
                if ((e[0] * e[3] - e[1] * e[2]) % static_cast<std::int64_t>(ell) == 0) continue;
                gens.emplace_back(m, e[0], e[1], e[2], e[3]);
            }
            out.emplace_back(m, gens);
        }
    }
    return out;
}

} // namespace

TEST_SUITE("group")
{
    TEST_CASE("closure examples")
    {
        Modulus const m5(5, 1), m7(7, 1);
        CHECK(closure({GMat::identity(m5)}, m5).order() == 1);
        CHECK(ns21().closed().order() == 18);
        CHECK(closure({GMat::diag(m7, 1, 6), GMat::diag(m7, 2, 2)}, m7).order() == 6);
    }

    TEST_CASE("closure matches the naive oracle and Lagrange")
    {
        for (auto const & g : sample_groups()) {
            auto const n = static_cast<oracle::i64>(g.level().n());
            auto const naive = oracle::closure(as_oracle(g.generators()), n);
            auto const c = g.closed();
            CHECK(c.order() == naive.size());
            CHECK(gl2_order(g.level()) % c.order() == 0);
            for (auto const & e : naive)
                CHECK(c.contains(GMat(g.level(), Entries{static_cast<std::uint64_t>(e[0]), static_cast<std::uint64_t>(e[1]),
                                                          static_cast<std::uint64_t>(e[2]), static_cast<std::uint64_t>(e[3])})));
        }
    }

    TEST_CASE("closure cap")
    {
        Modulus const m(7, 1);
        CHECK_THROWS_AS(closure(gl2_generators(m), m, 100), CapExceeded);
        try {
            closure(gl2_generators(m), m, 100);
        } catch (CapExceeded const & e) {
            CHECK(std::string(e.what()).find("cap 100") != std::string::npos);
        }
    }

    TEST_CASE("gl2 generators generate")
    {
        std::pair<std::uint64_t, int> const levels[] = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {7, 1}, {11, 1}};
        for (auto [ell, k] : levels) {
            Modulus const m(ell, k);
            CHECK(closure(gl2_generators(m), m).order() == gl2_order(m));
        }
    }

    TEST_CASE("reduction")
    {
        Modulus const m9(3, 2), m3(3, 1);
        MatrixGroup const u(m9, {GMat(m9, 1, 3, 0, 1)});
        CHECK(reduce(u, m9).generators() == u.generators());
        CHECK(reduce(u, m3).closed().order() == 1);
        MatrixGroup const lifted(Modulus(7, 2), full_preimage_gens(ns21(), Modulus(7, 2)));
        CHECK(reduce(lifted, Modulus(7, 1)).closed().order() == 18);
        CHECK_THROWS_AS(reduce(u, Modulus(2, 1)), InvalidArgument);
        CHECK_THROWS_AS(reduce(MatrixGroup(m3, {}), m9), InvalidArgument);
    }

    TEST_CASE("reduce commutes with closure")
    {
        for (auto const & g : sample_groups()) {
            if (g.level().k() < 2) continue;
            Modulus const low = g.level().with_exponent(1);
            auto const a = reduce(g.closed(), low);
            auto const n = static_cast<oracle::i64>(low.n());
            std::set<oracle::Mat> images;
            auto const c = g.closed();
            for (std::size_t i = 0; i < c.size(); ++i) {
                auto const x = c.element(i);
                auto const & e = x.entries();
                images.insert({static_cast<oracle::i64>(e[0]) % n, static_cast<oracle::i64>(e[1]) % n,
                               static_cast<oracle::i64>(e[2]) % n, static_cast<oracle::i64>(e[3]) % n});
            }
            CHECK(a.order() == images.size());
        }
    }

    TEST_CASE("full preimage orders")
    {
        Modulus const m3(3, 1), m9(3, 2);
        CHECK(closure(full_preimage_gens(MatrixGroup(m3, {}), m9), m9).order() == 81);
        CHECK(closure(full_preimage_gens(MatrixGroup(m3, gl2_generators(m3)), m9), m9).order() == 3888);
        auto const g = ns21().closed();
        CHECK(closure(full_preimage_gens(g, g.level()), g.level()).order() == 18);
        for (auto const & s : sample_groups()) {
            auto const base = s.closed();
            auto const & lvl = base.level();
            for (int extra = 1; extra <= 2; ++extra) {
                Modulus const up = lvl.with_exponent(lvl.k() + extra);
                if (up.n() > 27 && !(lvl.ell() == 2 && up.n() <= 32)) continue;
                auto const lifted = closure(full_preimage_gens(base, up), up);
                CHECK(lifted.order() == base.order() * ipow(lvl.ell(), 4 * extra));
                CHECK(is_full_preimage(lifted, lvl.k()));
            }
        }
    }

    TEST_CASE("2-adic kernels of reduction")
    {
        for (int m = 1; m <= 2; ++m)
            for (int K = m; K <= 5; ++K) {
                Modulus const low(2, m), high(2, K);
                auto const lifted = closure(full_preimage_gens(MatrixGroup(low, {}), high), high);
                CHECK(lifted.order() == ipow(2, 4 * (K - m)));
            }
    }

    TEST_CASE("full preimage test and level")
    {
        Modulus const m9(3, 2);
        MatrixGroup const u(m9, {GMat(m9, 1, 1, 0, 1)});
        CHECK(u.closed().order() == 9);
        CHECK_FALSE(is_full_preimage(u, 1));
        MatrixGroup const full(m9, gl2_generators(m9));
        CHECK(is_full_preimage(full, 1));
        CHECK(preimage_level(full) == 1);
        CHECK(preimage_level(u) == 2);
        CHECK_THROWS_AS(is_full_preimage(u, 3), InvalidArgument);
    }

    TEST_CASE("index and d")
    {
        auto const full = index_and_d(MatrixGroup(Modulus(5, 1), gl2_generators(Modulus(5, 1))));
        CHECK(full.index == 1);
        CHECK(full.d == 0);
        auto const ns = index_and_d(ns21());
        CHECK(ns.index == 112);
        CHECK(ns.d == 1);
    }

    TEST_CASE("element conjugacy")
    {
        auto const g = ns21();
        for (auto const & s : g.generators()) CHECK(element_conjugate_in(g, s));
        Modulus const m7(7, 1);
        CHECK_FALSE(element_conjugate_in(MatrixGroup(m7, {}), GMat(m7, 1, 1, 0, 1)));
        CHECK(element_conjugate_in(MatrixGroup(m7, {}), GMat::identity(m7)));
        CHECK(element_conjugate_in(g, GMat(m7, 0, 1, 2, 0)));
        CHECK_FALSE(element_conjugate_in(g, GMat(m7, 1, 1, 0, 1)));
    }

    TEST_CASE("element conjugacy agrees with exhaustive conjugation mod 5 and mod 4")
    {
        for (auto [ell, k] : {std::pair<std::uint64_t, int>{5, 1}, {2, 2}}) {
            Modulus const m(ell, k);
            auto const n = static_cast<oracle::i64>(m.n());
            auto const all = oracle::gl2(static_cast<oracle::i64>(ell), n);
            std::vector<MatrixGroup> groups{builtin("borel", ell, k).group(), builtin("split_cartan", ell, k).group(),
                                            builtin("nonsplit_cartan", ell, k).group()};
            std::map<oracle::Mat, oracle::Mat> inv;
            for (auto const & u : all)
                for (auto const & v : all)
                    if (oracle::mul(u, v, n) == oracle::Mat{1, 0, 0, 1}) inv[u] = v;
            for (auto const & g : groups) {
                auto const elems = oracle::closure(as_oracle(g.generators()), n);
                for (std::size_t t = 0; t < all.size(); t += 5) {
                    auto const & tm = all[t];
                    bool expect = false;
                    for (auto const & u : all) {
                        if (elems.count(oracle::mul(oracle::mul(inv[u], tm, n), u, n))) {
                            expect = true;
                            break;
                        }
                    }
                    CHECK(element_conjugate_in(g, GMat(m, tm[0], tm[1], tm[2], tm[3])) == expect);
                }
            }
        }
    }

    TEST_CASE("element conjugacy is invariant under conjugating the group")
    {
        Modulus const m7(7, 1);
        auto const g = ns21();
        GMat const u(m7, 1, 2, 3, 1);
        auto const h = conjugate(g, u);
        for (auto const & t : {GMat(m7, 0, 1, 2, 0), GMat(m7, 1, 1, 0, 1), GMat(m7, 3, 0, 0, 5), GMat::diag(m7, 4, 2)})
            CHECK(element_conjugate_in(g, t) == element_conjugate_in(h, t));
    }

    TEST_CASE("subgroup conjugacy: the index 3 subgroup sits in the order 18 group")
    {
        Modulus const m7(7, 1);
        auto const g = ns21();
        auto const h = builtin("paper_7ns21_index3", 7, 1).group();
        CHECK(g.closed().order() / h.closed().order() == 3);
        CHECK(subgroup_conjugate_in(g, h));
        CHECK_FALSE(subgroup_conjugate_in(h, g));
    }

    TEST_CASE("adjoining -I")
    {
        Modulus const m5(5, 1);
        CHECK(adjoin_neg_id(MatrixGroup(m5, {})).closed().order() == 2);
        auto const g = adjoin_neg_id(ns21()).closed();
        CHECK(g.order() == 36);
        CHECK(adjoin_neg_id(g).closed().order() == 36);
        CHECK(adjoin_neg_id(adjoin_neg_id(ns21())).closed().order() == 36);
        Modulus const m2(2, 1);
        MatrixGroup const t(m2, {});
        CHECK(adjoin_neg_id(t).closed().order() == 1);
        for (auto const & s : sample_groups()) {
            auto const a = adjoin_neg_id(s).closed();
            auto const o = s.closed().order();
            CHECK((a.order() == o || a.order() == 2 * o));
            CHECK(a.has_neg_id());
        }
    }
}
