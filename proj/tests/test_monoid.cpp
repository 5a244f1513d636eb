#include "doctest.h"

#include "qcat/monoid.hpp"

#include <random>

using namespace qcat;
using namespace qcat::monoid;
using cohomology::CircleValue;
using lattice::FiniteAbelianGroup;

namespace {

cohomology::Cocycle2 class_cocycle(const DynkinType& t, std::size_t k) {
    auto g = lattice::fundamental_group(t).group();
    return cohomology::bicharacter_to_cocycle(cohomology::h2_class_bicharacter(g, k));
}

// carry cocycle on Z/n: c(x, y) = floor((x + y) / n) / n, symmetric and nonzero
cohomology::Cocycle2 carry_cocycle(std::int64_t n) {
    FiniteAbelianGroup g({n});
    cohomology::Cocycle2 c(g);
    for (std::int64_t x = 0; x < n; ++x)
        for (std::int64_t y = 0; y < n; ++y) c.at(x, y) = CircleValue((x + y) / n, n);
    return c;
}

const std::vector<DynkinType> kTypes = {
    DynkinType::make('A', 1), DynkinType::make('A', 2), DynkinType::make('A', 3), DynkinType::make('B', 2),
    DynkinType::make('C', 3), DynkinType::make('D', 4), DynkinType::make('G', 2),
};

int bound_for(const DynkinType& t) { return t.rank <= 2 ? 6 : 3; }

}  // namespace

TEST_CASE("phase rationals") {
    auto i = PhaseRational::root_of_unity(CircleValue(1, 4));
    CHECK((i * i) == PhaseRational(-1));
    CHECK(i.pow(4).is_one());
    CHECK(i.pow(-3) == i);
    CHECK_THROWS_AS(PhaseRational(Rational(-2)).angle(), std::domain_error);
    CHECK(PhaseRational(-1).angle() == CircleValue(1, 2));
    CHECK(PhaseRational::parse("3/2@1/3") == PhaseRational(Rational(3, 2), CircleValue(1, 3)));
    CHECK(PhaseRational::parse("-1@3/4").str() == "1@1/4");
    CHECK(PhaseRational::parse("-5/7").rational() == Rational(-5, 7));
    CHECK_THROWS_AS(PhaseRational(Rational(0)), std::domain_error);
    CHECK_THROWS_AS(i.rational(), std::domain_error);
    auto x = PhaseRational(Rational(3, 5), CircleValue(2, 7));
    CHECK((x * x.inverse()).is_one());
    CHECK((x / x).is_one());
}

TEST_CASE("restriction to the dominant monoid") {
    SUBCASE("zero cocycle") {
        for (const auto& t : kTypes) {
            auto c = restrict_to_monoid(t, class_cocycle(t, 0), bound_for(t));
            for (const auto& mu : c.weights())
                for (const auto& eta : c.weights()) CHECK(c(mu, eta).is_one());
        }
    }
    SUBCASE("D4 nontrivial class gives a sign table") {
        auto t = DynkinType::make('D', 4);
        auto c = restrict_to_monoid(t, class_cocycle(t, 1), 3);
        bool some_minus = false;
        for (const auto& mu : c.weights())
            for (const auto& eta : c.weights()) {
                CHECK((c(mu, eta) == PhaseRational(1) || c(mu, eta) == PhaseRational(-1)));
                some_minus |= c(mu, eta) == PhaseRational(-1);
            }
        CHECK(some_minus);
        CHECK(c.is_cocycle());
    }
    SUBCASE("A1 tables depend on parities") {
        auto t = DynkinType::make('A', 1);
        FiniteAbelianGroup g({2});
        for (int code = 0; code < 16; ++code) {
            cohomology::Cocycle2 raw(g);
            for (std::size_t k = 0; k < 4; ++k) raw.at(k / 2, k % 2) = CircleValue((code >> k) & 1, 2);
            auto c = restrict_to_monoid(t, raw, 6);
            for (const auto& mu : c.weights())
                for (const auto& eta : c.weights())
                    CHECK(c(mu, eta) == c(Weight({mu[0] % 2}), Weight({eta[0] % 2})));
        }
    }
    SUBCASE("restriction preserves the cocycle identity") {
        for (const auto& t : kTypes) {
            auto g = lattice::fundamental_group(t).group();
            for (std::size_t k = 0; k < cohomology::h2_class_count(g); ++k)
                CHECK(restrict_to_monoid(t, class_cocycle(t, k), bound_for(t)).is_cocycle());
        }
        CHECK(restrict_to_monoid(DynkinType::make('A', 2), carry_cocycle(3), 6).is_cocycle());
    }
    CHECK_THROWS_AS(restrict_to_monoid(DynkinType::make('A', 2), carry_cocycle(2), 3), std::invalid_argument);
}

TEST_CASE("commutator and its extension to P") {
    SUBCASE("symmetric cocycle gives the zero bicharacter") {
        auto c = restrict_to_monoid(DynkinType::make('A', 2), carry_cocycle(3), 6);
        auto b = monoid_commutator(c);
        for (const auto& mu : b.weights())
            for (const auto& eta : b.weights()) CHECK(b(mu, eta).is_one());
        auto ext = extend_to_lattice(b);
        CHECK(ext.bicharacter.is_trivial());
        CHECK(ext.checked_pairs == 28 * 28);
        CHECK(ext.checked_representations == 28 * 28 * 28 * 28);
    }
    SUBCASE("D4 nontrivial class") {
        auto t = DynkinType::make('D', 4);
        auto cm = lattice::cartan_matrix(t);
        auto pq = lattice::fundamental_group(t);
        for (std::size_t k = 1; k < 2; ++k) {
            auto raw = class_cocycle(t, k);
            auto b = monoid_commutator(restrict_to_monoid(t, raw, 3));
            auto ext = extend_to_lattice(b);
            CHECK_FALSE(ext.bicharacter.is_trivial());
            CHECK(ext.bicharacter.is_skew());
            CHECK(ext.checked_representations > 0);
            CHECK(kernel_contains_roots(ext.bicharacter, cm).contains_roots);
            CHECK(descend_to_pq(ext.bicharacter, cm, pq) == cohomology::cocycle_commutator(raw));
        }
    }
    SUBCASE("commutator descends to the group commutator") {
        for (const auto& t : kTypes) {
            auto pq = lattice::fundamental_group(t);
            for (std::size_t k = 0; k < cohomology::h2_class_count(pq.group()); ++k) {
                auto raw = class_cocycle(t, k);
                auto comm = cohomology::cocycle_commutator(raw);
                auto b = monoid_commutator(restrict_to_monoid(t, raw, bound_for(t)));
                for (const auto& mu : b.weights())
                    for (const auto& eta : b.weights())
                        CHECK(b(mu, eta) == PhaseRational::root_of_unity(comm(pq.project(mu), pq.project(eta))));
                auto ext = extend_to_lattice(b);
                CHECK(kernel_contains_roots(ext.bicharacter, lattice::cartan_matrix(t)).contains_roots);
            }
        }
    }
    SUBCASE("non-bimultiplicative tables are rejected") {
        MonoidCocycle b(DynkinType::make('A', 2), 3);
        b(Weight({1, 1}), Weight({0, 1})) = PhaseRational(-1);
        b(Weight({0, 1}), Weight({1, 1})) = PhaseRational(-1);
        CHECK_THROWS_AS(extend_to_lattice(b), std::invalid_argument);
        MonoidCocycle s(DynkinType::make('A', 1), 3);
        s(Weight({1}), Weight({1})) = PhaseRational(-1);
        CHECK_THROWS_AS(extend_to_lattice(s), std::invalid_argument);
    }
}

TEST_CASE("root-lattice kernel") {
    auto cm = lattice::cartan_matrix(DynkinType::make('A', 2));
    LatticeBicharacter zero(2);
    CHECK(kernel_contains_roots(zero, cm).contains_roots);

    LatticeBicharacter b(2);
    b.pairing(0, 1) = PhaseRational::root_of_unity(CircleValue(1, 5));
    b.pairing(1, 0) = PhaseRational::root_of_unity(CircleValue(4, 5));
    REQUIRE(b.is_skew());
    auto d = kernel_contains_roots(b, cm);
    CHECK_FALSE(d.contains_roots);
    REQUIRE(d.violation);
    CHECK(d.violation->first == 0);
    // alpha_1 = 2 omega_1 - omega_2 pairs with omega_1 to b(omega_2, omega_1)^-1
    CHECK(b(lattice::simple_root(cm, 0), Weight({1, 0})) == PhaseRational::root_of_unity(CircleValue(1, 5)));
    CHECK_THROWS_AS(descend_to_pq(b, cm, lattice::fundamental_group(cm)), std::invalid_argument);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        LatticeBicharacter r(2);
        std::uniform_int_distribution<std::int64_t> dist(0, 11);
        auto v = CircleValue(dist(rng), 12);
        r.pairing(0, 1) = PhaseRational::root_of_unity(v);
        r.pairing(1, 0) = PhaseRational::root_of_unity(-v);
        // P/Q = Z/3 carries no nonzero alternating pairing, so only v = 0 kills Q
        CHECK(kernel_contains_roots(r, cm).contains_roots == v.is_zero());
    }
}

TEST_CASE("symmetric cocycles on the monoid are coboundaries") {
    SUBCASE("constant cocycle") {
        MonoidCocycle one(DynkinType::make('B', 2), 6);
        auto w = monoid_coboundary_witness(one);
        REQUIRE(w.found);
        for (const auto& [mu, v] : w.a) CHECK(v.is_one());
    }
    SUBCASE("A2 carry cocycle") {
        auto t = DynkinType::make('A', 2);
        auto c = restrict_to_monoid(t, carry_cocycle(3), 6);
        auto w = monoid_coboundary_witness(c);
        REQUIRE(w.found);
        CHECK_FALSE(w.skew_pair);
        auto back = monoid_coboundary(t, 6, w.a);
        for (const auto& mu : c.weights())
            for (const auto& eta : c.weights())
                if (c.contains(mu + eta)) CHECK(back(mu, eta) == c(mu, eta));
    }
    SUBCASE("nontrivial classes have no witness") {
        for (const auto& t : kTypes) {
            auto g = lattice::fundamental_group(t).group();
            for (std::size_t k = 1; k < cohomology::h2_class_count(g); ++k) {
                auto w = monoid_coboundary_witness(restrict_to_monoid(t, class_cocycle(t, k), bound_for(t)));
                CHECK_FALSE(w.found);
                CHECK_FALSE(w.linear_system_solvable);
                REQUIRE(w.skew_pair);
            }
        }
        CHECK(cohomology::h2_class_count(lattice::fundamental_group(DynkinType::make('D', 4)).group()) == 2);
    }
    SUBCASE("restricted coboundaries") {
        std::mt19937 rng(11);
        for (const auto& t : kTypes) {
            auto g = lattice::fundamental_group(t).group();
            std::uniform_int_distribution<std::int64_t> dist(0, 2 * g.exponent() - 1);
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<CircleValue> a(static_cast<std::size_t>(g.order()));
                for (auto& v : a) v = CircleValue(dist(rng), 2 * g.exponent());
                auto c = restrict_to_monoid(t, cohomology::coboundary(g, a), bound_for(t));
                auto w = monoid_coboundary_witness(c);
                CHECK(w.found);
            }
        }
    }
    SUBCASE("non-torsion values are not searched") {
        MonoidCocycle c(DynkinType::make('A', 1), 2);
        c(Weight({1}), Weight({1})) = PhaseRational(Rational(2));
        CHECK_THROWS_AS(monoid_coboundary_witness(c), std::domain_error);
    }
}
