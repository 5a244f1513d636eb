#pragma once

#include "qcat/cohomology.hpp"
#include "qcat/lattice.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qcat::classification {

using lattice::DynkinType;

/// Node permutation: perm[i] is the image of node i (0-based).
using Permutation = std::vector<std::size_t>;

Permutation compose(const Permutation& a, const Permutation& b);  // a after b
Permutation invert(const Permutation& p);

/// All sigma with A(sigma i, sigma j) = A(i, j), by exhaustive search over S_rank,
/// in lexicographic order (identity first).
std::vector<Permutation> diagram_automorphisms(const DynkinType& type);

/// A small generating set, chosen greedily from the lexicographic list.
std::vector<Permutation> generators(const std::vector<Permutation>& group);

/// Whether the list is closed under composition and inverses.
bool is_group(const std::vector<Permutation>& perms);

/// Permutation of P/Q (element indices) induced by omega_i -> omega_{sigma(i)}.
std::vector<std::size_t> pq_action(const lattice::PqProjection& pq, const Permutation& sigma);

/// Permutation of H^2 class indices induced by b -> b(sigma^-1 ., sigma^-1 .).
std::vector<std::size_t> h2_action(const lattice::FiniteAbelianGroup& a, const std::vector<std::size_t>& action);

struct ClassificationReport {
    DynkinType type;
    std::vector<std::int64_t> pq_factors;
    std::vector<std::int64_t> h2_factors;
    std::int64_t h2_order = 1;
    std::size_t aut_order = 1;
    std::vector<Permutation> aut_generators;
    std::int64_t total_order = 1;
    std::string statement;
    // per generator: induced permutations of P/Q elements and of H^2 classes
    std::vector<std::vector<std::size_t>> pq_action;
    std::vector<std::vector<std::size_t>> h2_action;

    bool operator==(const ClassificationReport&) const = default;
};

ClassificationReport classify(const DynkinType& type);

}  // namespace qcat::classification
