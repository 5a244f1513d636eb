#pragma once

#include "qcat/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qcat::lattice {

/// Simple Lie algebra type, e.g. A2 or D4. Nodes follow Bourbaki numbering.
struct DynkinType {
    char family = 'A';
    int rank = 1;

    /// Throws std::invalid_argument for combinations outside A>=1, B>=2, C>=2,
    /// D>=3, E6-8, F4, G2.
    static DynkinType make(char family, int rank);
    static DynkinType parse(std::string_view text);
    std::string name() const;

    auto operator<=>(const DynkinType&) const = default;
};

/// Every simple type of rank at most max_rank (D starts at 4, B/C at 2 so no
/// type is listed twice under two names).
std::vector<DynkinType> simple_types_up_to_rank(int max_rank);

/// Small dense integer matrix for Cartan data.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    bool operator==(const IntMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

/// Arbitrary-precision integer matrix used by the Smith normal form.
class ZMatrix {
public:
    ZMatrix() = default;
    ZMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    explicit ZMatrix(const IntMatrix& m);
    static ZMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    ZMatrix operator*(const ZMatrix& rhs) const;
    bool operator==(const ZMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

BigInt determinant(const ZMatrix& m);

struct SmithForm {
    ZMatrix u;  // rows x rows, unimodular
    ZMatrix d;  // diagonal, d_1 | d_2 | ..., nonnegative
    ZMatrix v;  // cols x cols, unimodular
    std::vector<BigInt> diagonal() const;
};

/// U * M * V = D with U, V unimodular and D diagonal in divisibility order.
SmithForm smith_normal_form(const ZMatrix& m);

struct CartanMatrix {
    IntMatrix a;                   // a(i, j) = <alpha_i^vee, alpha_j>
    std::vector<std::int64_t> sym;    // d_i with d_i a(i,j) = d_j a(j,i)
    std::size_t rank() const { return a.rows(); }
};

CartanMatrix cartan_matrix(const DynkinType& type);

/// Weight in fundamental-weight coordinates; coords[i] = <mu, alpha_i^vee>.
class Weight {
public:
    Weight() = default;
    explicit Weight(std::vector<int> coords) : coords_(std::move(coords)) {}
    static Weight zero(std::size_t rank) { return Weight(std::vector<int>(rank, 0)); }
    static Weight fundamental(std::size_t rank, std::size_t i);
    /// Parses "1,0,2".
    static Weight parse(std::string_view text);

    std::size_t rank() const { return coords_.size(); }
    int operator[](std::size_t i) const { return coords_[i]; }
    int& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<int>& coords() const { return coords_; }

    bool is_dominant() const;
    int coord_sum() const;
    std::string str() const;

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(int k, Weight a) {
        for (auto& c : a.coords_) c *= k;
        return a;
    }
    auto operator<=>(const Weight&) const = default;

private:
    std::vector<int> coords_;
};

/// Simple root alpha_i in weight coordinates (column i of the Cartan matrix).
Weight simple_root(const CartanMatrix& cm, std::size_t i);

/// Dominant weights with coordinate sum at most bound, in graded-lex order.
std::vector<Weight> dominant_weights_up_to(std::size_t rank, int bound);

/// Finite abelian group Z/n_1 x ... x Z/n_k with n_1 | n_2 | ... (all n_i >= 2).
class FiniteAbelianGroup {
public:
    using Element = std::vector<std::int64_t>;

    FiniteAbelianGroup() = default;
    /// Throws std::invalid_argument unless the factors form a divisibility chain of integers >= 2.
    explicit FiniteAbelianGroup(std::vector<std::int64_t> invariant_factors);
    /// Normalizes an arbitrary list of cyclic orders (>= 1) to invariant factors.
    static FiniteAbelianGroup from_orders(const std::vector<std::int64_t>& orders);

    const std::vector<std::int64_t>& factors() const { return factors_; }
    std::size_t num_generators() const { return factors_.size(); }
    std::int64_t order() const;
    std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }
    bool is_trivial() const { return factors_.empty(); }
    bool is_cyclic() const { return factors_.size() <= 1; }

    Element zero() const { return Element(factors_.size(), 0); }
    Element generator(std::size_t i) const;
    Element add(const Element& x, const Element& y) const;
    Element neg(const Element& x) const;
    Element reduce(Element x) const;
    std::size_t index_of(const Element& x) const;
    Element element_at(std::size_t index) const;
    std::vector<Element> elements() const;

    /// "Z/2 x Z/2", or "0" for the trivial group.
    std::string str() const;

    bool operator==(const FiniteAbelianGroup&) const = default;

private:
    std::vector<std::int64_t> factors_;
};

/// P/Q together with the linear map from weight coordinates to group elements.
class PqProjection {
public:
    PqProjection(FiniteAbelianGroup group, IntMatrix projection, IntMatrix lift);

    const FiniteAbelianGroup& group() const { return group_; }
    const IntMatrix& matrix() const { return projection_; }
    FiniteAbelianGroup::Element project(const Weight& w) const;
    /// Some weight mapping to the given element.
    Weight lift(const FiniteAbelianGroup::Element& x) const;

private:
    FiniteAbelianGroup group_;
    IntMatrix projection_;  // k x rank
    IntMatrix lift_;        // rank x k
};

PqProjection fundamental_group(const DynkinType& type);
PqProjection fundamental_group(const CartanMatrix& cm);

/// Root data precomputed for character computations.
struct RootSystem {
    CartanMatrix cartan;
    std::vector<std::vector<int>> positive_roots_simple;  // simple-root coordinates
    std::vector<Weight> positive_roots;                   // weight coordinates
};

RootSystem root_system(const DynkinType& type);
RootSystem root_system(const CartanMatrix& cm);
std::vector<Weight> positive_roots(const DynkinType& type);

/// Weyl dimension formula. Throws std::invalid_argument for non-dominant mu.
BigInt weyl_dim(const RootSystem& rs, const Weight& mu);
BigInt weyl_dim(const DynkinType& type, const Weight& mu);

using WeightMultiplicities = std::map<Weight, std::int64_t>;

/// Freudenthal recursion; only weights with nonzero multiplicity are listed.
WeightMultiplicities weight_multiplicities(const RootSystem& rs, const Weight& mu);
WeightMultiplicities weight_multiplicities(const DynkinType& type, const Weight& mu);

using Decomposition = std::map<Weight, std::int64_t>;

/// Constituents of V_mu (x) V_eta via Klimyk's formula with rho-shifted
/// reflections; wall points cancel.
Decomposition klimyk_decompose(const RootSystem& rs, const Weight& mu, const Weight& eta);
Decomposition klimyk_decompose(const DynkinType& type, const Weight& mu, const Weight& eta);

/// Klimyk given a precomputed character of V_eta.
Decomposition klimyk_decompose(const RootSystem& rs, const Weight& mu, const WeightMultiplicities& eta_character);

}  // namespace qcat::lattice
