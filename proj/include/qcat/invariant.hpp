#pragma once

#include "qcat/cohomology.hpp"
#include "qcat/exec.hpp"
#include "qcat/lattice.hpp"
#include "qcat/monoid.hpp"
#include "qcat/phase_rational.hpp"
#include "qcat/uqg.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qcat::invariant {

using lattice::DynkinType;
using lattice::Weight;
using monoid::CentralElement;

using BlockKey = std::array<Weight, 3>;  // (mu, eta, nu): component V_nu inside V_mu (x) V_eta
std::string key_str(const BlockKey& k);

/// Invertible endomorphism of the multiplicity space of one isotypic
/// component: a scalar (times the identity) or a rational matrix.
class Block {
public:
    Block(PhaseRational scalar = PhaseRational(), std::size_t mult = 1);  // NOLINT
    /// Throws std::domain_error for a singular matrix. Scalar matrices are
    /// stored as scalars.
    explicit Block(const QMatrix& m);

    std::size_t mult() const { return mult_; }
    bool is_scalar() const { return !matrix_; }
    /// Throws std::logic_error for a non-scalar block.
    const PhaseRational& scalar() const;
    /// Throws std::domain_error when a non-rational scalar has no matrix form.
    QMatrix to_matrix() const;
    bool is_identity() const { return is_scalar() && scalar_.is_one(); }

    Block operator*(const Block& o) const;
    Block inverse() const;
    bool operator==(const Block& o) const;
    bool operator!=(const Block& o) const { return !(*this == o); }
    std::string str() const;

private:
    PhaseRational scalar_;
    std::optional<QMatrix> matrix_;
    std::size_t mult_ = 1;
};

/// Finite stand-in for the module category: base weights W_H (dominant,
/// coordinate sum <= H) and every pair (mu, eta) whose blocks a triple in
/// W_H^3 touches, i.e. W_H x W_H together with (lambda, nu) and (mu, lambda')
/// for lambda a constituent of V_mu (x) V_eta and lambda' of V_eta (x) V_nu.
class Truncation {
public:
    struct Pair {
        std::size_t mu, eta;                                         // weight ids
        std::vector<std::pair<std::size_t, std::int64_t>> constituents;  // (nu id, multiplicity), sorted by id
    };

    static std::shared_ptr<const Truncation> make(const DynkinType& type, int bound, Exec exec = Exec::parallel);

    const DynkinType& type() const { return type_; }
    int bound() const { return bound_; }
    const lattice::CartanMatrix& cartan() const { return cartan_; }
    std::size_t base_size() const { return base_; }  // ids below base_size() are W_H
    std::size_t weight_count() const { return weights_.size(); }
    const Weight& weight(std::size_t id) const { return weights_[id]; }
    std::optional<std::size_t> id(const Weight& w) const;
    const std::vector<Pair>& pairs() const { return pairs_; }
    std::optional<std::size_t> pair_index(std::size_t mu, std::size_t eta) const;
    std::optional<std::size_t> pair_index(const Weight& mu, const Weight& eta) const;
    /// Position of nu among the constituents of a pair.
    std::optional<std::size_t> position(std::size_t pair, std::size_t nu) const;
    std::size_t block_count() const;
    bool multiplicity_free() const;

private:
    Truncation() = default;
    std::size_t intern(const Weight& w);
    DynkinType type_;
    int bound_ = 0;
    lattice::CartanMatrix cartan_;
    std::size_t base_ = 0;
    std::vector<Weight> weights_;
    std::map<Weight, std::size_t> ids_;
    std::vector<Pair> pairs_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_ids_;
};

/// Block-diagonal invariant element on the truncation.
class BlockCocycle {
public:
    /// The identity element.
    explicit BlockCocycle(std::shared_ptr<const Truncation> t);

    const Truncation& truncation() const { return *t_; }
    const std::shared_ptr<const Truncation>& truncation_ptr() const { return t_; }
    const Block& block(std::size_t pair, std::size_t pos) const { return blocks_[pair][pos]; }
    Block& block(std::size_t pair, std::size_t pos) { return blocks_[pair][pos]; }
    /// Throws std::out_of_range when (mu|eta|nu) is not a block of the truncation.
    const Block& at(const Weight& mu, const Weight& eta, const Weight& nu) const;
    Block& at(const Weight& mu, const Weight& eta, const Weight& nu);
    BlockKey key(std::size_t pair, std::size_t pos) const;

    BlockCocycle operator*(const BlockCocycle& o) const;
    BlockCocycle inverse() const;
    bool operator==(const BlockCocycle& o) const { return t_ == o.t_ && blocks_ == o.blocks_; }
    bool is_identity() const;

private:
    std::shared_ptr<const Truncation> t_;
    std::vector<std::vector<Block>> blocks_;
};

/// Central element given by a function on every weight of the truncation.
CentralElement central_from(const Truncation& t, const std::function<PhaseRational(const Weight&)>& f);

struct GroupLikeDecision {
    bool group_like = false;
    std::optional<BlockKey> violation;
    std::vector<PhaseRational> character;  // value on each element of P/Q (index order), when group-like
};

/// a(mu) a(eta) = a(nu) on every block; when it holds, a is constant on P/Q
/// classes and the factoring character is returned.
GroupLikeDecision is_group_like(const CentralElement& a, const Truncation& t);

/// Block (mu, eta, nu) = c(proj mu, proj eta).
BlockCocycle make_Ec(const std::shared_ptr<const Truncation>& t, const cohomology::Cocycle2& c);

/// Block (mu, eta, nu) = a(mu) a(eta) / a(nu). Throws std::out_of_range if a
/// misses a weight of the truncation.
BlockCocycle coboundary_block(const std::shared_ptr<const Truncation>& t, const CentralElement& a);

/// For every triple (mu, eta, nu) in W_H^3 and every weight kappa of the
/// triple product, the matrix expressing the right-bracketed highest weight
/// vectors (id (x) phi^lambda'_{eta nu}) phi^kappa_{mu lambda'} xi in terms of
/// the left-bracketed ones (phi^lambda_{mu eta} (x) id) phi^kappa_{lambda nu} xi.
/// (E (x) 1)(Delta (x) id)(E) and (1 (x) E)(id (x) Delta)(E) agree exactly when
/// E(mu,eta,lambda) E(lambda,nu,kappa) = E(eta,nu,lambda') E(mu,lambda',kappa)
/// for every nonzero entry (lambda, lambda'). Needs explicit modules and a
/// multiplicity-free truncation.
class Recoupling {
public:
    struct BlockRef {
        std::size_t pair, pos;
        bool operator==(const BlockRef&) const = default;
        auto operator<=>(const BlockRef&) const = default;
    };
    struct Constraint {
        std::array<std::size_t, 3> triple;  // weight ids of (mu, eta, nu)
        std::size_t kappa;
        std::array<BlockRef, 2> left, right;
    };

    static Recoupling compute(const std::shared_ptr<const Truncation>& t, const uqg::QParam& q, Exec exec = Exec::parallel);

    const std::vector<Constraint>& constraints() const { return constraints_; }
    std::size_t triples() const { return triples_; }
    std::size_t components() const { return components_; }

private:
    std::vector<Constraint> constraints_;
    std::size_t triples_ = 0;
    std::size_t components_ = 0;
};

enum class IdentityPath { automatic, operator_level, reduction };

struct CocycleIdentityDecision {
    bool holds = false;
    bool applicable = true;     // false when the chosen path cannot decide this input
    std::string method;         // "operator" or "reduction"
    std::size_t triples_checked = 0;
    std::size_t constraints_checked = 0;
    std::string violation;
};

/// Checks (E (x) 1)(Delta (x) id)(E) = (1 (x) E)(id (x) Delta)(E) on every triple of W_H^3.
/// Operator path: via Recoupling (explicit modules, multiplicity-free types).
/// Reduction path: when every pair acts by one scalar on all of V_mu (x) V_eta,
/// both sides are scalars on each triple product and are compared directly.
/// Automatic picks the operator path for A1 and the reduction path otherwise.
CocycleIdentityDecision verify_cocycle_identity(const BlockCocycle& e, IdentityPath path = IdentityPath::automatic,
                                                const uqg::QParam& q = uqg::QParam(Rational(2)),
                                                const Recoupling* recoupling = nullptr, Exec exec = Exec::parallel);

/// Explicit operators E_raw on V_mu (x) V_eta, one per pair.
using RawCocycle = std::map<std::pair<Weight, Weight>, QMatrix>;

struct InvarianceDecision {
    bool invariant = false;
    std::string violation;
    std::map<BlockKey, Block> blocks;  // action on the highest weight vectors of each constituent
};

/// Whether every E_raw commutes with Delta(E_i), Delta(F_i), Delta(K_i); when
/// it does, reads off the blocks in the echelon basis of highest weight vectors.
InvarianceDecision verify_invariance(const RawCocycle& raw, uqg::ModuleCache& cache);

/// Operator on V_mu (x) V_eta acting on each isotypic component by its block.
QMatrix raw_operator(const BlockCocycle& e, uqg::ModuleCache& cache, const Weight& mu, const Weight& eta);

/// c_E(mu, eta) = block at nu = mu + eta, on W_H x W_H.
monoid::MonoidCocycle extract_cE(const BlockCocycle& e);
/// c_i(mu, eta) = block at nu = mu + eta - alpha_i. Throws std::out_of_range when absent
/// and std::invalid_argument unless mu(i), eta(i) >= 1.
PhaseRational extract_ci(const BlockCocycle& e, std::size_t i, const Weight& mu, const Weight& eta);
/// All c_i values on W_H x W_H.
std::map<std::pair<Weight, Weight>, PhaseRational> extract_ci(const BlockCocycle& e, std::size_t i);

struct EigenvalueDecision {
    bool holds = false;
    std::array<PhaseRational, 3> values;  // c_E c_i, c_i c_E, c_i c_E in the order of the identity
};

/// c_E(mu,eta) c_i(mu+eta,nu) = c_i(mu,eta) c_E(mu+eta-alpha_i,nu) = c_i(eta,nu) c_E(mu,eta+nu-alpha_i).
/// Throws std::invalid_argument unless mu(i), eta(i), nu(i) >= 1.
EigenvalueDecision eigenvalue_identity_check(const BlockCocycle& e, std::size_t i, const Weight& mu,
                                             const Weight& eta, const Weight& nu);

struct RootKernelChain {
    bool holds = false;
    std::size_t checked = 0;
    std::string violation;
};

/// For mu in W_H with mu(i) >= 1 and 2 mu - alpha_i in W_H: b(2mu - alpha_i, mu) = 1,
/// b(mu, mu) = 1, hence b(alpha_i, mu) = b(2mu - alpha_i, mu)^-1 b(mu,mu)^2 = 1, with
/// b the commutator of c_E.
RootKernelChain root_kernel_chain(const BlockCocycle& e);

struct NormalizeResult {
    bool normalized = false;
    BlockCocycle cocycle;                        // coboundary_block(a)^-1 E, adjusted when possible
    std::optional<std::vector<PhaseRational>> character;  // s_j with t(mu) = prod s_j^{mu(j)} used for the tau blocks
    std::string report;
};

/// E' = coboundary_block(a)^-1 E. If the tau blocks of E' are not all 1 but
/// c_i is a constant k_i for each i, divides further by the coboundary of a
/// monoid character t with t(alpha_i) = k_i, which leaves c_E alone.
/// Otherwise returns normalized = false with the offending block.
NormalizeResult normalize_cocycle(const BlockCocycle& e, const CentralElement& a);

struct NormalizedSolution {
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    std::size_t rank = 0;
    std::size_t free_rank = 0;              // copies of C* in the solution group
    std::vector<BigInt> torsion;            // finite cyclic factors of the solution group
    bool unique = false;                    // solution group trivial: only the identity
    std::vector<BlockKey> unforced;         // unknowns not forced to 1
};

/// All A1 block cocycles on the truncation with E T = T and (unless drop_tau)
/// E tau = tau, subject to every operator-level cocycle constraint. The
/// constraints are monomial, so the solutions form Hom(Z^n / L, C*) for the
/// exponent lattice L.
NormalizedSolution solve_normalized(int bound, bool drop_tau = false, const uqg::QParam& q = uqg::QParam(Rational(2)),
                                    Exec exec = Exec::parallel);

}  // namespace qcat::invariant
