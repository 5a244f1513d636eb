#include "doctest.h"

#include "qcat/io.hpp"

using namespace qcat;
using qcat::io::json;

TEST_CASE("classification reports round trip") {
    for (const auto& t : lattice::simple_types_up_to_rank(5)) {
        auto r = classification::classify(t);
        auto j = io::report_json(r);
        CHECK(io::report_from_json(json::parse(j.dump())) == r);
    }
    auto d4 = io::report_json(classification::classify(lattice::DynkinType::make('D', 4)));
    CHECK(d4["h2_factors"] == json::array({2}));
    CHECK(d4["aut_order"] == 6);
    for (const char* key : {"type", "pq_factors", "h2_factors", "aut_order", "aut_generators", "total_order"})
        CHECK(d4.contains(key));
}

TEST_CASE("monoid tables round trip") {
    auto g = lattice::fundamental_group(lattice::DynkinType::make('D', 4)).group();
    auto c = cohomology::bicharacter_to_cocycle(cohomology::h2_class_bicharacter(g, 1));
    auto m = monoid::restrict_to_monoid(lattice::DynkinType::make('D', 4), c, 2);
    auto j = io::monoid_json(m);
    CHECK(j["table"]["1,0,0,0|0,0,1,0"].is_string());
    CHECK(io::monoid_from_json(json::parse(j.dump())) == m);

    auto a2 = lattice::fundamental_group(lattice::DynkinType::make('A', 2)).group();
    auto mc = monoid::restrict_to_monoid(lattice::DynkinType::make('A', 2),
                                         cohomology::coboundary(a2, {cohomology::CircleValue(0, 1), cohomology::CircleValue(1, 6),
                                                                     cohomology::CircleValue(0, 1)}),
                                         3);
    CHECK(io::monoid_from_json(io::monoid_json(mc)) == mc);
}

TEST_CASE("blocks, modules and morphisms") {
    auto t = invariant::Truncation::make(lattice::DynkinType::make('A', 2), 2);
    invariant::BlockCocycle e(t);
    QMatrix m(2, 2);
    m(0, 0) = Rational(1, 2);
    m(1, 1) = 3;
    m(0, 1) = 1;
    lattice::Weight w11(std::vector<int>{1, 1});
    e.at(w11, w11, w11) = invariant::Block(m);
    auto j = io::block_cocycle_json(e);
    CHECK(j["blocks"]["(1,1|1,1|1,1)"] == json::array({json::array({"1/2", "1"}), json::array({"0", "3"})}));
    CHECK(io::matrix_from_json(j["blocks"]["(1,1|1,1|1,1)"]) == m);
    CHECK(j["blocks"]["(1,1|1,1|2,2)"] == "1");

    uqg::ModuleCache cache(lattice::DynkinType::make('A', 1), uqg::QParam(Rational(2)));
    auto v = cache.get(lattice::Weight(std::vector<int>{1}));
    auto mj = io::module_json(*v);
    CHECK(mj["dim"] == 2);
    CHECK(mj["weights"] == json::array({"1", "-1"}));
    CHECK(io::matrix_from_json(mj["E"][0]) == v->matrix_e(0));
    auto tj = io::morphism_json(uqg::morphism_T(cache, lattice::Weight(std::vector<int>{1}), lattice::Weight(std::vector<int>{1})));
    CHECK(tj["matrix"][2][1] == "1/2");
}
