#include "doctest.h"

#include "golden.hpp"
#include "qcat/classification.hpp"

#include <set>

using namespace qcat;
using namespace qcat::classification;

TEST_CASE("diagram automorphisms") {
    CHECK(diagram_automorphisms(DynkinType::make('A', 1)).size() == 1);
    CHECK(diagram_automorphisms(DynkinType::make('A', 3)).size() == 2);
    auto d4 = diagram_automorphisms(DynkinType::make('D', 4));
    CHECK(d4.size() == 6);
    for (const auto& p : d4) CHECK(p[1] == 1);  // the central node is fixed
    CHECK(is_group(d4));
    CHECK(generators(d4).size() == 2);
    CHECK(diagram_automorphisms(DynkinType::make('B', 3)).size() == 1);
    CHECK(diagram_automorphisms(DynkinType::make('E', 6)).size() == 2);
    for (const auto& t : lattice::simple_types_up_to_rank(6)) {
        auto g = diagram_automorphisms(t);
        CHECK(is_group(g));
        auto cm = lattice::cartan_matrix(t);
        for (const auto& p : g)
            for (std::size_t i = 0; i < cm.rank(); ++i)
                for (std::size_t j = 0; j < cm.rank(); ++j) CHECK(cm.a(p[i], p[j]) == cm.a(i, j));
    }
}

TEST_CASE("classification reports") {
    SUBCASE("D4") {
        auto r = classify(DynkinType::make('D', 4));
        CHECK(r.pq_factors == std::vector<std::int64_t>{2, 2});
        CHECK(r.h2_factors == std::vector<std::int64_t>{2});
        CHECK(r.aut_order == 6);
        CHECK(r.total_order == 12);
        // triality permutes the three nonzero elements of P/Q and fixes the nontrivial class
        std::set<std::size_t> orbit{1};
        for (int round = 0; round < 3; ++round)
            for (std::size_t k = 0; k < r.aut_generators.size(); ++k) {
                CHECK(r.pq_action[k][0] == 0);
                CHECK(r.h2_action[k] == std::vector<std::size_t>{0, 1});
                for (auto x : std::set<std::size_t>(orbit)) orbit.insert(r.pq_action[k][x]);
            }
        CHECK(orbit == std::set<std::size_t>{1, 2, 3});
    }
    SUBCASE("A2") {
        auto r = classify(DynkinType::make('A', 2));
        CHECK(r.pq_factors == std::vector<std::int64_t>{3});
        CHECK(r.h2_factors.empty());
        CHECK(r.aut_order == 2);
        CHECK(r.total_order == 2);
        // the flip sends a class of P/Q to its negative
        REQUIRE(r.pq_action.size() == 1);
        CHECK(r.pq_action[0] == std::vector<std::size_t>{0, 2, 1});
    }
    SUBCASE("G2") {
        auto r = classify(DynkinType::make('G', 2));
        CHECK(r.pq_factors.empty());
        CHECK(r.h2_order == 1);
        CHECK(r.aut_order == 1);
        CHECK(r.total_order == 1);
        CHECK(r.aut_generators.empty());
    }
    SUBCASE("golden table up to rank 8") {
        for (const auto& t : lattice::simple_types_up_to_rank(8)) {
            CAPTURE(t.name());
            auto r = classify(t);
            auto g = golden::expected(t);
            CHECK(r.pq_factors == g.pq);
            CHECK(r.h2_factors == g.h2);
            CHECK(r.aut_order == g.aut);
            CHECK(r.total_order == r.h2_order * static_cast<std::int64_t>(r.aut_order));
            CHECK(r.h2_factors.empty() == (r.pq_factors.size() <= 1));
        }
    }
}
