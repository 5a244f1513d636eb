#pragma once

#include "qcat/lattice.hpp"
#include "qcat/rational.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace qcat::uqg {

using lattice::CartanMatrix;
using lattice::DynkinType;
using lattice::Weight;

/// Generic rational deformation parameter.
class QParam {
public:
    /// Throws std::domain_error for q in {0, 1, -1}.
    explicit QParam(Rational q);
    static QParam parse(const std::string& text);
    const Rational& value() const { return q_; }
    /// q_i = q^{d_i}
    Rational power(std::int64_t d) const { return qcat::pow(q_, d); }
    std::string str() const { return to_string(q_); }
    bool operator==(const QParam& o) const { return q_ == o.q_; }

private:
    Rational q_;
};

/// [n]_{qi} = (qi^n - qi^-n) / (qi - qi^-1). Throws std::domain_error for qi in {0, 1, -1}.
Rational q_int(std::int64_t n, const Rational& qi);
/// Gaussian binomial [n choose k]_{qi}.
Rational q_binomial(std::int64_t n, std::int64_t k, const Rational& qi);

/// Irreducible module V_mu. Basis vector 0 is xi_mu; every other basis vector
/// b is literally F_i applied to an earlier one (word[b] = {parent, i}).
struct ModuleRep {
    static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

    DynkinType type;
    CartanMatrix cartan;
    Weight highest;
    QParam q{Rational(2)};
    std::vector<Weight> weights;
    std::vector<int> depth;
    std::vector<std::pair<std::size_t, std::size_t>> word;
    std::vector<std::vector<SparseVector>> e;  // e[i][b] = E_i b
    std::vector<std::vector<SparseVector>> f;  // f[i][b] = F_i b

    std::size_t dim() const { return weights.size(); }
    std::size_t rank() const { return cartan.rank(); }
    Rational qi(std::size_t i) const { return q.power(cartan.sym[i]); }
    /// Eigenvalue of K_i^{sign} on basis vector b.
    Rational k_value(std::size_t i, std::size_t b, int sign = 1) const;

    SparseVector apply_e(std::size_t i, const SparseVector& v) const;
    SparseVector apply_f(std::size_t i, const SparseVector& v) const;
    SparseVector apply_k(std::size_t i, const SparseVector& v, int sign = 1) const;
    static SparseVector basis(std::size_t b) { return SparseVector{{b, Rational(1)}}; }

    QMatrix matrix_e(std::size_t i) const;
    QMatrix matrix_f(std::size_t i) const;
    QMatrix matrix_k(std::size_t i, int sign = 1) const;
};

/// Types with explicit modules.
bool in_module_whitelist(const DynkinType& type);

/// Builds V_mu as the Verma module modulo the radical of the contravariant
/// form: level by level, lowering candidates F_i b are kept exactly when no
/// combination of them is killed by every E_j. Throws std::invalid_argument for
/// a non-dominant mu or a type outside the whitelist (unless allow_any), and
/// std::logic_error if the dimension differs from the Weyl formula.
ModuleRep build_module(const DynkinType& type, const Weight& mu, const QParam& q, bool allow_any = false);

/// First violated defining relation on the basis ("K_i E_j", "[E_i,F_j]",
/// "Serre E_i E_j", ...), or nothing.
std::optional<std::string> check_relations(const ModuleRep& m);

/// Thread-safe memo of built modules for one type and one q.
class ModuleCache {
public:
    ModuleCache(DynkinType type, QParam q, bool allow_any = false);
    std::shared_ptr<const ModuleRep> get(const Weight& mu);
    const DynkinType& type() const { return type_; }
    const QParam& q() const { return q_; }
    const CartanMatrix& cartan() const { return cartan_; }

private:
    DynkinType type_;
    QParam q_;
    bool allow_any_;
    CartanMatrix cartan_;
    std::mutex mutex_;
    std::map<Weight, std::shared_ptr<const ModuleRep>> modules_;
};

/// V_1 (x) ... (x) V_n with generators acting through the iterated coproduct
/// Delta(E) = E (x) 1 + K (x) E, Delta(F) = F (x) K^-1 + 1 (x) F, Delta(K) = K (x) K.
/// Basis vectors are flattened row-major, first factor most significant.
class TensorSpace {
public:
    explicit TensorSpace(std::vector<std::shared_ptr<const ModuleRep>> factors);

    const std::vector<std::shared_ptr<const ModuleRep>>& factors() const { return factors_; }
    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return factors_.front()->rank(); }
    std::vector<std::size_t> split(std::size_t index) const;
    std::size_t join(const std::vector<std::size_t>& parts) const;
    Weight weight_of(std::size_t index) const;
    /// All basis indices of the given weight, ascending.
    std::vector<std::size_t> weight_space(const Weight& w) const;

    SparseVector apply_e(std::size_t i, const SparseVector& v) const;
    SparseVector apply_f(std::size_t i, const SparseVector& v) const;
    SparseVector apply_k(std::size_t i, const SparseVector& v, int sign = 1) const;

    /// Concatenation of factor lists.
    TensorSpace operator*(const TensorSpace& o) const;

private:
    std::vector<std::shared_ptr<const ModuleRep>> factors_;
    std::vector<std::size_t> strides_;
    std::size_t dim_;
};

/// x (x) y for x in a space of dimension dim_x-blocks and y of dimension dim_y.
SparseVector tensor(const SparseVector& x, const SparseVector& y, std::size_t dim_y);

/// Relations on the tensor space, checked on every basis vector.
std::optional<std::string> check_relations(const TensorSpace& w);

/// Basis of {w of weight nu : Delta(E_i) w = 0 for all i}, in reduced echelon
/// form with respect to the weight-space coordinates.
std::vector<SparseVector> highest_weight_vectors(const TensorSpace& w, const Weight& nu);

/// Module map V_lambda -> W determined by the image of xi_lambda. Columns are
/// produced on demand by pushing the image along the words of the basis; the
/// lazy cache makes a Morphism unsafe for concurrent use.
class Morphism {
public:
    /// Throws std::logic_error unless `top` has weight lambda and is killed by
    /// every Delta(E_i).
    Morphism(std::shared_ptr<const ModuleRep> source, TensorSpace target, SparseVector top);

    const ModuleRep& source() const { return *source_; }
    const TensorSpace& target() const { return target_; }
    const SparseVector& top() const { return top_; }
    const SparseVector& column(std::size_t b) const;
    SparseVector apply(const SparseVector& x) const;
    QMatrix matrix() const;

private:
    std::shared_ptr<const ModuleRep> source_;
    TensorSpace target_;
    SparseVector top_;
    mutable std::vector<std::optional<SparseVector>> cols_;
};

/// First generator g and basis vector b with f(g b) != Delta(g) f(b), or nothing.
std::optional<std::string> check_intertwiner(const Morphism& f);

/// (f (x) id)(x) for x in V_a (x) V_b, with f: V_a -> W; lands in W (x) V_b.
SparseVector apply_left(const Morphism& f, const SparseVector& x, std::size_t dim_b);
/// (id (x) g)(x) for x in V_a (x) V_b, with g: V_b -> W; lands in V_a (x) W.
SparseVector apply_right(const Morphism& g, const SparseVector& x, std::size_t dim_b);

/// T_{mu,eta}: V_{mu+eta} -> V_mu (x) V_eta, xi -> xi (x) xi.
Morphism morphism_T(ModuleCache& cache, const Weight& mu, const Weight& eta);
/// tau_{i;mu,eta}: V_{mu+eta-alpha_i} -> V_mu (x) V_eta,
/// xi -> [mu(i)] xi (x) F_i xi - q_i^{mu(i)} [eta(i)] F_i xi (x) xi.
/// Throws std::invalid_argument unless mu(i), eta(i) >= 1.
Morphism morphism_tau(ModuleCache& cache, std::size_t i, const Weight& mu, const Weight& eta);

enum class IdentityMode { cyclic, full };

struct TauIdentityResult {
    bool holds = false;
    bool independent = false;  // first two composites linearly independent
    std::size_t columns_compared = 0;
    std::string violation;     // empty when both hold
    // values of the three composites on xi
    SparseVector lhs_first, lhs_second, rhs;
};

/// [eta(i)] (T_{mu,eta} (x) id) tau_{i;mu+eta,nu} - [nu(i)] (tau_{i;mu,eta} (x) id) T_{mu+eta-alpha_i,nu}
///   = [mu(i)+eta(i)] (id (x) tau_{i;eta,nu}) T_{mu,eta+nu-alpha_i}
/// Cyclic mode compares the three composites on xi (they are module maps out
/// of an irreducible module, so this decides the identity); full mode compares
/// every column. Throws std::invalid_argument unless mu(i), eta(i), nu(i) >= 1.
TauIdentityResult check_tau_identity(ModuleCache& cache, std::size_t i, const Weight& mu, const Weight& eta,
                                     const Weight& nu, IdentityMode mode = IdentityMode::cyclic);

}  // namespace qcat::uqg
