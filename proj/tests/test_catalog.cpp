#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "tscope/catalog.hpp"
#include "tscope/error.hpp"
#include "tscope/orbits.hpp"

using namespace tscope;

namespace {

std::uint64_t order_of(std::string const & name, std::uint64_t ell, int k = 1)
{
    return builtin(name, ell, k).group().closed().order();
}

std::string temp_path(std::string const & stem)
{
    return (std::filesystem::temp_directory_path() / (stem + "-" + std::to_string(::getpid()) + ".json")).string();
}

} // namespace

TEST_SUITE("catalog")
{
    TEST_CASE("builtin examples")
    {
        CHECK(order_of("full", 5) == 480);
        CHECK(order_of("nonsplit_cartan_normalizer", 5) == 48);
        auto const e = builtin("paper_7ns21", 7, 1);
        REQUIRE(e.generators.size() == 2);
        CHECK(e.generators[0] == Entries{0, 1, 1, 0});
        CHECK(e.generators[1] == Entries{2, 0, 0, 1});
        CHECK(e.group().closed().order() == 18);
        CHECK(e.exceptional_j7);
        CHECK(e.source == Source::builtin);
        CHECK(order_of("paper_7ns21_index3", 7) == 6);
    }

    TEST_CASE("builtin orders follow their formulas")
    {
        for (std::uint64_t ell : {3, 5, 7, 11, 13}) {
            CAPTURE(ell);
            CHECK(order_of("borel", ell) == ell * (ell - 1) * (ell - 1));
            CHECK(order_of("split_cartan", ell) == (ell - 1) * (ell - 1));
            CHECK(order_of("split_cartan_normalizer", ell) == 2 * (ell - 1) * (ell - 1));
            CHECK(order_of("nonsplit_cartan", ell) == ell * ell - 1);
            CHECK(order_of("nonsplit_cartan_normalizer", ell) == 2 * (ell * ell - 1));
            CHECK(order_of("unipotent_column", ell) == ell * (ell - 1));
        }
        CHECK(order_of("nonsplit_cartan", 2) == 3);
        CHECK(order_of("nonsplit_cartan_normalizer", 2) == 6);
    }

    TEST_CASE("builtins at higher level are full preimages")
    {
        for (std::uint64_t ell : {2, 3}) {
            auto const g = builtin("borel", ell, 2).group().closed();
            CHECK(g.order() == order_of("borel", ell) * ipow(ell, 4));
            CHECK(is_full_preimage(g, 1));
        }
        CHECK(order_of("unipotent_column", 3, 2) == 9 * 6);
        CHECK(order_of("full", 3, 2) == 3888);
    }

    TEST_CASE("builtin errors")
    {
        CHECK_THROWS_AS(builtin("nope", 5, 1), InvalidArgument);
        CHECK_THROWS_AS(builtin("paper_7ns21", 5, 1), InvalidArgument);
        CHECK_THROWS_AS(builtin("paper_7ns21_index3", 11, 1), InvalidArgument);
    }

    TEST_CASE("the nonresidue choice does not matter up to conjugacy")
    {
        for (std::uint64_t ell : {5, 7, 11, 13}) {
            Modulus const m(ell, 1);
            auto const g = builtin("nonsplit_cartan_normalizer", ell, 1).group();
            auto const eps = static_cast<std::int64_t>(least_nonresidue(ell));
            // another nonresidue: eps times a nonzero square
            auto const other = eps * 4 % static_cast<std::int64_t>(ell);
            std::vector<GMat> gens{GMat::diag(m, 1, -1)};
            for (std::int64_t a = 0; a < static_cast<std::int64_t>(ell); ++a)
                for (std::int64_t b = 1; b < static_cast<std::int64_t>(ell); ++b) gens.emplace_back(m, a, b * other, b, a);
            MatrixGroup const h(m, gens);
            CHECK(h.closed().order() == g.closed().order());
            CHECK(subgroup_conjugate_in(g, h));
            CHECK(closed_point_degrees(g, m) == closed_point_degrees(h, m));
        }
        CHECK(least_nonresidue(7) == 3);
        CHECK(least_nonresidue(13) == 2);
        CHECK_THROWS_AS(least_nonresidue(2), InvalidArgument);
    }

    TEST_CASE("parsing")
    {
        CHECK(parse_catalog("[]").empty());
        auto const v = parse_catalog(R"([{"label": "7Ns.2.1", "level": 7, "generators": [[0,1,1,0],[2,0,0,1]], "index": 112}])");
        REQUIRE(v.size() == 1);
        CHECK(v[0].label == "7Ns.2.1");
        CHECK(v[0].index_claimed == 112u);
        CHECK(v[0].source == Source::file);
        CHECK_FALSE(v[0].cm);
        auto const neg = parse_catalog(R"([{"label": "x", "level": 9, "generators": [[-1,0,0,1]], "cm": true}])");
        CHECK(neg[0].generators[0] == Entries{8, 0, 0, 1});
        CHECK(neg[0].cm);
    }

    TEST_CASE("validation errors name the label and the invariant")
    {
        CHECK_THROWS_WITH(parse_catalog(R"([{"label": "bad", "level": 7, "generators": [[1,1,1,1]]}])"),
                          doctest::Contains("catalog entry 'bad': generator 0 has non-unit determinant"));
        CHECK_THROWS_WITH(parse_catalog(R"([{"label": "idx", "level": 7, "generators": [[0,1,1,0],[2,0,0,1]], "index": 111}])"),
                          doctest::Contains("catalog entry 'idx': claimed index 111"));
        CHECK_THROWS_WITH(parse_catalog(R"([{"label": "lvl", "level": 12, "generators": []}])"),
                          doctest::Contains("catalog entry 'lvl'"));
        CHECK_THROWS_WITH(parse_catalog(R"([{"label": "shape", "level": 7, "generators": [[1,0,1]]}])"),
                          doctest::Contains("not a 4-tuple"));
        CHECK_THROWS_WITH(parse_catalog(R"([{"level": 7, "generators": []}])"), doctest::Contains("'label'"));
        CHECK_THROWS_AS(parse_catalog(R"({"label": "x"})"), InvalidArgument);
    }

    TEST_CASE("parse errors report a line")
    {
        std::string const text = "[\n  {\"label\": \"a\",\n   \"level\": 7,\n   oops }\n]";
        CHECK_THROWS_WITH(parse_catalog(text), doctest::Contains("line 4"));
    }

    TEST_CASE("save and reload is the identity")
    {
        std::vector<CatalogEntry> entries;
        for (auto const & name : {"borel", "nonsplit_cartan_normalizer"}) {
            auto e = builtin(name, 5, 1);
            e.source = Source::file;
            e.index_claimed = static_cast<std::uint64_t>(index_and_d(e.group()).index);
            entries.push_back(e);
        }
        entries.push_back(parse_catalog(R"([{"label": "c", "level": 4, "generators": [[1,2,0,1]], "cm": true}])")[0]);
        auto const path = temp_path("tscope-catalog");
        save_catalog(path, entries);
        auto const back = load_catalog(path);
        std::filesystem::remove(path);
        REQUIRE(back.size() == entries.size());
        for (std::size_t i = 0; i < back.size(); ++i) {
            CHECK(back[i].label == entries[i].label);
            CHECK(back[i].level == entries[i].level);
            CHECK(back[i].generators == entries[i].generators);
            CHECK(back[i].index_claimed == entries[i].index_claimed);
            CHECK(back[i].cm == entries[i].cm);
        }
        CHECK(dump_catalog(back) == dump_catalog(entries));
        CHECK(find_entry(back, "c").has_value());
        CHECK_FALSE(find_entry(back, "zzz").has_value());
        CHECK_THROWS_AS(load_catalog(path), InvalidArgument);
    }

    TEST_CASE("generator lists and levels")
    {
        CHECK(parse_generator_list("").empty());
        auto const g = parse_generator_list("0,1,1,0; 2,0,0,-1");
        REQUIRE(g.size() == 2);
        CHECK(g[1] == SignedEntries{2, 0, 0, -1});
        CHECK_THROWS_AS(parse_generator_list("1,2,3"), InvalidArgument);
        CHECK_THROWS_AS(parse_generator_list("1,2,3,4,5"), InvalidArgument);
        CHECK_THROWS_AS(parse_generator_list("1,x,3,4"), InvalidArgument);
        CHECK(modulus_of_level(343) == Modulus(7, 3));
        CHECK(modulus_of_level(2) == Modulus(2, 1));
        CHECK_THROWS_AS(modulus_of_level(12), InvalidArgument);
        CHECK_THROWS_AS(modulus_of_level(1), InvalidArgument);
    }
}
