#include "doctest.h"

#include "qcat/cohomology.hpp"
#include "qcat/h2_enumeration.hpp"

#include <random>

using namespace qcat;
using namespace qcat::cohomology;

namespace {

FiniteAbelianGroup klein() { return FiniteAbelianGroup({2, 2}); }

// Exhaustive search for a 1-cochain a with values in (1/den)Z/Z and c = coboundary(a).
bool brute_force_witness(const Cocycle2& c, std::int64_t den) {
    const std::size_t n = c.size();
    std::vector<CircleValue> a(n);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(den);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t k = code;
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = CircleValue(static_cast<std::int64_t>(k % static_cast<std::uint64_t>(den)), den);
            k /= static_cast<std::uint64_t>(den);
        }
        if (coboundary(c.group(), a) == c) return true;
    }
    return false;
}

std::vector<CircleValue> random_cochain(std::size_t n, std::int64_t den, std::mt19937& rng) {
    std::uniform_int_distribution<std::int64_t> d(0, den - 1);
    std::vector<CircleValue> a(n);
    for (auto& v : a) v = CircleValue(d(rng), den);
    return a;
}

}  // namespace

TEST_CASE("circle values") {
    CHECK(CircleValue(3, 2) == CircleValue(1, 2));
    CHECK(CircleValue(-1, 3) == CircleValue(2, 3));
    CHECK((CircleValue(1, 2) + CircleValue(1, 2)).is_zero());
    CHECK((CircleValue(1, 3) - CircleValue(1, 2)) == CircleValue(5, 6));
    CHECK((4 * CircleValue(1, 6)) == CircleValue(2, 3));
    CHECK(CircleValue::parse("7/4") == CircleValue(3, 4));
    CHECK(CircleValue(3, 4).str() == "3/4");
    CHECK(CircleValue().str() == "0");
    CHECK_THROWS_AS(CircleValue(1, 0), std::invalid_argument);
}

TEST_CASE("h2 of finite abelian groups") {
    CHECK(h2(klein()).factors() == std::vector<std::int64_t>{2});
    for (std::int64_t n = 2; n <= 12; ++n) CHECK(h2(FiniteAbelianGroup({n})).is_trivial());
    CHECK(h2(FiniteAbelianGroup()).is_trivial());
    CHECK(h2(FiniteAbelianGroup({2, 2, 2})).factors() == std::vector<std::int64_t>{2, 2, 2});
    CHECK(h2(FiniteAbelianGroup({2, 4})).factors() == std::vector<std::int64_t>{2});
    CHECK(h2(FiniteAbelianGroup({3, 6})).factors() == std::vector<std::int64_t>{3});
    CHECK(h2_class_count(FiniteAbelianGroup({2, 2, 4})) == 8);
    CHECK_THROWS_AS(h2_class_bicharacter(klein(), 2), std::out_of_range);
    auto b = h2_class_bicharacter(klein(), 1);
    CHECK(b.is_skew());
    CHECK(b.is_well_defined());
    CHECK(b.pairing(0, 1) == CircleValue(1, 2));
}

TEST_CASE("cocycle commutator") {
    SUBCASE("example on the Klein group") {
        auto g = klein();
        Cocycle2 c(g);
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t y = 0; y < 4; ++y) {
                auto ex = g.element_at(x), ey = g.element_at(y);
                c.at(x, y) = CircleValue(ex[1] * ey[0], 2);
            }
        auto b = cocycle_commutator(c);
        CHECK(b({1, 0}, {0, 1}) == CircleValue(1, 2));
        CHECK(b.is_skew());
        CHECK_FALSE(is_coboundary_finite(c).is_coboundary);
        CHECK_FALSE(brute_force_witness(c, 4));
    }
    SUBCASE("coboundaries and symmetric cocycles have zero commutator") {
        std::mt19937 rng(11);
        for (auto g : {klein(), FiniteAbelianGroup({6}), FiniteAbelianGroup({2, 4})}) {
            auto c = coboundary(g, random_cochain(static_cast<std::size_t>(g.order()), 12, rng));
            CHECK(c.is_symmetric());
            CHECK(cocycle_commutator(c).is_zero());
        }
    }
    SUBCASE("rejects non-cocycles") {
        Cocycle2 c(klein());
        c.at(1, 2) = CircleValue(1, 2);
        CHECK_THROWS_AS(cocycle_commutator(c), std::invalid_argument);
    }
    SUBCASE("commutator is a homomorphism") {
        std::mt19937 rng(5);
        auto g = FiniteAbelianGroup({2, 2, 2});
        for (std::size_t k1 = 0; k1 < 8; ++k1)
            for (std::size_t k2 = 0; k2 < 8; ++k2) {
                auto c1 = bicharacter_to_cocycle(h2_class_bicharacter(g, k1)) + coboundary(g, random_cochain(8, 4, rng));
                auto c2 = bicharacter_to_cocycle(h2_class_bicharacter(g, k2)) + coboundary(g, random_cochain(8, 4, rng));
                CHECK(cocycle_commutator(c1 + c2) == cocycle_commutator(c1) + cocycle_commutator(c2));
            }
    }
}

TEST_CASE("bicharacter lift") {
    CHECK(bicharacter_to_cocycle(Bicharacter(klein())) == Cocycle2(klein()));
    auto gen = h2_class_bicharacter(klein(), 1);
    auto c = bicharacter_to_cocycle(gen);
    for (const auto& v : c.table()) CHECK((v.is_zero() || v == CircleValue(1, 2)));
    CHECK(cocycle_commutator(c) == gen);
    for (std::int64_t n = 2; n <= 9; ++n) {
        FiniteAbelianGroup z({n});
        CHECK(h2_class_count(z) == 1);
        CHECK(bicharacter_to_cocycle(h2_class_bicharacter(z, 0)) == Cocycle2(z));
    }
    Bicharacter sym(klein());
    sym.pairing(0, 1) = CircleValue(1, 2);
    sym.pairing(1, 0) = CircleValue(1, 2);
    sym.pairing(0, 0) = CircleValue(1, 2);
    CHECK_THROWS_AS(bicharacter_to_cocycle(sym), std::invalid_argument);
}

TEST_CASE("lifted cocycles satisfy the identity, groups up to order 16") {
    for (std::int64_t order = 1; order <= 16; ++order)
        for (const auto& g : abelian_groups_of_order(order)) {
            CAPTURE(g.str());
            for (std::size_t k = 0; k < h2_class_count(g); ++k) {
                auto b = h2_class_bicharacter(g, k);
                auto c = bicharacter_to_cocycle(b);
                CHECK(c.is_cocycle());
                CHECK(cocycle_commutator(c) == b);
            }
        }
}

TEST_CASE("coboundary decision") {
    SUBCASE("zero cocycle") {
        auto d = is_coboundary_finite(Cocycle2(klein()));
        CHECK(d.is_coboundary);
        for (const auto& v : d.witness) CHECK(v.is_zero());
    }
    SUBCASE("x*y/2 on Z/2 needs quarter values") {
        FiniteAbelianGroup z2({2});
        Cocycle2 c(z2);
        c.at(1, 1) = CircleValue(1, 2);
        CHECK(c.is_cocycle());
        auto d = is_coboundary_finite(c);
        REQUIRE(d.is_coboundary);
        CHECK(coboundary(z2, d.witness) == c);
        CHECK(brute_force_witness(c, 4));
        CHECK_FALSE(brute_force_witness(c, 2));
    }
    SUBCASE("coboundary iff symmetric, groups up to order 8") {
        std::mt19937 rng(3);
        for (std::int64_t order = 1; order <= 8; ++order)
            for (const auto& g : abelian_groups_of_order(order)) {
                CAPTURE(g.str());
                auto n = static_cast<std::size_t>(g.order());
                for (std::size_t k = 0; k < h2_class_count(g); ++k)
                    for (int trial = 0; trial < 4; ++trial) {
                        auto c = bicharacter_to_cocycle(h2_class_bicharacter(g, k)) +
                                 coboundary(g, random_cochain(n, 2 * g.exponent(), rng));
                        CHECK(is_coboundary_finite(c).is_coboundary == cocycle_commutator(c).is_zero());
                    }
            }
    }
    SUBCASE("exhaustively over normalized cocycles of tiny groups") {
        for (auto g : {FiniteAbelianGroup({2}), FiniteAbelianGroup({3}), klein()}) {
            auto n = static_cast<std::size_t>(g.order());
            std::size_t cells = (n - 1) * (n - 1);
            std::int64_t den = g.exponent();
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < cells; ++i) total *= static_cast<std::uint64_t>(den);
            for (std::uint64_t code = 0; code < total; ++code) {
                Cocycle2 c(g);
                std::uint64_t k = code;
                for (std::size_t x = 1; x < n; ++x)
                    for (std::size_t y = 1; y < n; ++y) {
                        c.at(x, y) = CircleValue(static_cast<std::int64_t>(k % static_cast<std::uint64_t>(den)), den);
                        k /= static_cast<std::uint64_t>(den);
                    }
                if (!c.is_cocycle()) continue;
                CHECK(is_coboundary_finite(c).is_coboundary == cocycle_commutator(c).is_zero());
            }
        }
    }
}

TEST_CASE("congruence solver") {
    lattice::ZMatrix l(2, 2);
    l(0, 0) = 2;
    l(1, 1) = 3;
    auto x = solve_congruences(l, {BigInt(4), BigInt(3)}, BigInt(6));
    REQUIRE(x);
    CHECK((2 * (*x)[0] - 4) % 6 == 0);
    CHECK((3 * (*x)[1] - 3) % 6 == 0);
    CHECK_FALSE(solve_congruences(l, {BigInt(1), BigInt(0)}, BigInt(6)));
    CHECK(count_kernel_mod(l, BigInt(6)) == 6);
}

TEST_CASE("brute-force H^2 routes agree with the pair-gcd formula") {
    for (std::int64_t order = 1; order <= 8; ++order)
        for (const auto& g : abelian_groups_of_order(order)) {
            CAPTURE(g.str());
            auto expected = static_cast<std::size_t>(h2(g).order());
            CHECK(commutator_image_size(g) == expected);
            CHECK(h2_order_by_counting(g) == BigInt(expected));
        }
    for (auto g : {FiniteAbelianGroup({2}), FiniteAbelianGroup({3}), FiniteAbelianGroup({4}), klein()}) {
        auto serial = enumerate_normalized_cocycles(g, g.exponent(), Exec::serial);
        auto parallel = enumerate_normalized_cocycles(g, g.exponent(), Exec::parallel);
        CHECK(serial.distinct_commutators == static_cast<std::size_t>(h2(g).order()));
        CHECK(serial.cocycles == parallel.cocycles);
        CHECK(serial.coboundaries == parallel.coboundaries);
        CHECK(serial.distinct_commutators == parallel.distinct_commutators);
    }
    CHECK(abelian_groups_of_order(8).size() == 3);
    CHECK(abelian_groups_of_order(16).size() == 5);
}
