#pragma once

// Brute-force routes to |H^2(A; T)| that do not use the pair-gcd formula.

#include "qcat/cohomology.hpp"
#include "qcat/exec.hpp"

#include <cstdint>

namespace qcat::cohomology {

struct ExhaustiveCount {
    std::uint64_t cochains = 0;       // normalized cochains enumerated
    std::uint64_t cocycles = 0;       // of which satisfy the cocycle identity
    std::uint64_t coboundaries = 0;   // of which are symmetric
    std::size_t distinct_commutators = 0;
};

/// Enumerates every normalized cochain with values in (1/denominator)Z/Z and
/// collects the distinct commutator tables of the cocycles among them.
/// Feasible only for tiny groups: denominator^((|A|-1)^2) tables.
ExhaustiveCount enumerate_normalized_cocycles(const FiniteAbelianGroup& a, std::int64_t denominator,
                                              Exec exec = Exec::parallel);

/// Size of the subgroup of commutator tables spanned by Z^2(A; (1/N)Z/Z),
/// N = |A|, enumerated by closure from a generating set of the cocycle group.
std::size_t commutator_image_size(const FiniteAbelianGroup& a);

/// |Z^2(A; (1/N)Z/Z)| / |B^2 cap C^2((1/N)Z/Z)|, counted with Smith forms of
/// the coboundary maps.
BigInt h2_order_by_counting(const FiniteAbelianGroup& a);

/// Invariant-factor presentations of every abelian group of the given order.
std::vector<FiniteAbelianGroup> abelian_groups_of_order(std::int64_t order);

}  // namespace qcat::cohomology
