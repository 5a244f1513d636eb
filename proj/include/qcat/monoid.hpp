#pragma once

#include "qcat/cohomology.hpp"
#include "qcat/lattice.hpp"
#include "qcat/phase_rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qcat::monoid {

using lattice::DynkinType;
using lattice::Weight;

/// Scalar-valued function on dominant weights; stands for a central element
/// of the completed algebra acting on V_mu by a(mu).
using CentralElement = std::map<Weight, PhaseRational>;

/// Table c(mu, eta) on the dominant weights of coordinate sum <= bound.
class MonoidCocycle {
public:
    MonoidCocycle(DynkinType type, int bound);

    const DynkinType& type() const { return type_; }
    int bound() const { return bound_; }
    const std::vector<Weight>& weights() const { return weights_; }
    bool contains(const Weight& w) const { return index_.count(w) != 0; }

    const PhaseRational& operator()(const Weight& mu, const Weight& eta) const;
    PhaseRational& operator()(const Weight& mu, const Weight& eta);

    /// First (mu, eta, nu) with mu+eta, eta+nu in range and
    /// c(mu,eta) c(mu+eta,nu) != c(eta,nu) c(mu,eta+nu).
    std::optional<std::array<Weight, 3>> cocycle_violation() const;
    bool is_cocycle() const { return !cocycle_violation(); }
    /// Largest common denominator of the angles; throws std::domain_error if
    /// some value is not a root of unity.
    std::int64_t angle_denominator() const;

    bool operator==(const MonoidCocycle& o) const { return type_ == o.type_ && bound_ == o.bound_ && table_ == o.table_; }

private:
    std::size_t idx(const Weight& w) const;
    DynkinType type_;
    int bound_;
    std::vector<Weight> weights_;
    std::map<Weight, std::size_t> index_;
    std::vector<PhaseRational> table_;
};

/// c'(mu, eta) = c(proj mu, proj eta), with circle values turned into roots of unity.
MonoidCocycle restrict_to_monoid(const DynkinType& type, const cohomology::Cocycle2& c, int bound);

/// b(mu, eta) = c(mu, eta) / c(eta, mu), stored in the same table shape.
MonoidCocycle monoid_commutator(const MonoidCocycle& c);

/// Bi-multiplicative pairing on P given by its values m_ij = b(omega_i, omega_j).
class LatticeBicharacter {
public:
    explicit LatticeBicharacter(std::size_t rank);
    std::size_t rank() const { return rank_; }
    const PhaseRational& pairing(std::size_t i, std::size_t j) const { return m_[i * rank_ + j]; }
    PhaseRational& pairing(std::size_t i, std::size_t j) { return m_[i * rank_ + j]; }
    PhaseRational operator()(const Weight& lambda, const Weight& kappa) const;
    bool is_trivial() const;
    bool is_skew() const;
    bool operator==(const LatticeBicharacter& o) const { return rank_ == o.rank_ && m_ == o.m_; }

private:
    std::size_t rank_;
    std::vector<PhaseRational> m_;
};

struct Extension {
    LatticeBicharacter bicharacter;
    std::size_t checked_pairs = 0;            // table entries compared with the bilinear formula
    std::size_t checked_representations = 0; // (lambda = mu - mu', kappa = eta - eta') combinations compared
};

/// Extends a skew bi-quasicharacter on the truncated monoid to P, using the
/// values on fundamental weights, and checks that every in-range
/// representation lambda = mu - mu' gives the same value. Throws
/// std::invalid_argument when the table is not bi-multiplicative or not skew.
Extension extend_to_lattice(const MonoidCocycle& skew_table);

struct RootKernelDecision {
    bool contains_roots = true;
    std::optional<std::pair<std::size_t, std::size_t>> violation;  // (i, j) with b(alpha_i, omega_j) != 1
};

/// Whether b(alpha_i, omega_j) = 1 for every simple root and fundamental weight.
RootKernelDecision kernel_contains_roots(const LatticeBicharacter& b, const lattice::CartanMatrix& cm);

/// Descends a bicharacter that kills Q to P/Q. Throws std::invalid_argument if
/// Q is not in the kernel or a value is not a root of unity.
cohomology::Bicharacter descend_to_pq(const LatticeBicharacter& b, const lattice::CartanMatrix& cm,
                                      const lattice::PqProjection& pq);

struct MonoidWitness {
    bool found = false;
    CentralElement a;                                   // c(mu,eta) = a(mu) a(eta) / a(mu+eta) on range
    std::optional<std::pair<Weight, Weight>> skew_pair; // a pair with c(mu,eta) != c(eta,mu)
    bool linear_system_solvable = false;
    std::int64_t denominator = 1;                       // angles of a lie in (1/denominator)Z
};

/// Decides whether c is a coboundary on the truncation by solving the additive
/// system over Q/Z. Throws std::domain_error when some value is not a root of
/// unity (the witness search only covers torsion values).
MonoidWitness monoid_coboundary_witness(const MonoidCocycle& c);

/// Monoid coboundary of a function on the dominant weights in range.
MonoidCocycle monoid_coboundary(const DynkinType& type, int bound, const CentralElement& a);

}  // namespace qcat::monoid
