#pragma once

#include "qcat/lattice.hpp"
#include "qcat/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcat::cohomology {

using lattice::FiniteAbelianGroup;
using Element = FiniteAbelianGroup::Element;

/// A point of the circle written additively: v in [0, 1) stands for exp(2 pi i v).
class CircleValue {
public:
    CircleValue() = default;
    CircleValue(std::int64_t num, std::int64_t den);
    static CircleValue parse(const std::string& text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    std::string str() const;
    Rational to_rational() const { return Rational(num_, den_); }

    CircleValue operator+(const CircleValue& o) const;
    CircleValue operator-(const CircleValue& o) const;
    CircleValue operator-() const;
    CircleValue& operator+=(const CircleValue& o) { return *this = *this + o; }
    CircleValue& operator-=(const CircleValue& o) { return *this = *this - o; }
    friend CircleValue operator*(std::int64_t k, const CircleValue& v);
    auto operator<=>(const CircleValue&) const = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Full table of a circle-valued 2-cochain on a finite abelian group, indexed
/// by element indices of the group.
class Cocycle2 {
public:
    explicit Cocycle2(FiniteAbelianGroup group);
    Cocycle2(FiniteAbelianGroup group, std::vector<CircleValue> table);

    const FiniteAbelianGroup& group() const { return group_; }
    std::size_t size() const { return n_; }
    const CircleValue& at(std::size_t x, std::size_t y) const { return table_[x * n_ + y]; }
    CircleValue& at(std::size_t x, std::size_t y) { return table_[x * n_ + y]; }
    const CircleValue& operator()(const Element& x, const Element& y) const;
    const std::vector<CircleValue>& table() const { return table_; }

    /// First triple (x, y, z) violating c(x,y) + c(x+y,z) = c(y,z) + c(x,y+z).
    std::optional<std::array<std::size_t, 3>> cocycle_violation() const;
    bool is_cocycle() const { return !cocycle_violation(); }
    bool is_symmetric() const;
    Cocycle2 operator+(const Cocycle2& o) const;
    bool operator==(const Cocycle2&) const = default;

private:
    FiniteAbelianGroup group_;
    std::size_t n_;
    std::vector<CircleValue> table_;
};

/// Bicharacter given by its values on pairs of invariant-factor generators.
class Bicharacter {
public:
    explicit Bicharacter(FiniteAbelianGroup group);
    Bicharacter(FiniteAbelianGroup group, std::vector<CircleValue> generator_pairings);

    const FiniteAbelianGroup& group() const { return group_; }
    const CircleValue& pairing(std::size_t i, std::size_t j) const { return m_[i * k_ + j]; }
    CircleValue& pairing(std::size_t i, std::size_t j) { return m_[i * k_ + j]; }
    CircleValue operator()(const Element& x, const Element& y) const;

    /// n_i * m_ij and n_j * m_ij vanish, so the bilinear extension descends to the group.
    bool is_well_defined() const;
    bool is_skew() const;
    bool is_zero() const;
    Bicharacter operator+(const Bicharacter& o) const;
    bool operator==(const Bicharacter&) const = default;

private:
    FiniteAbelianGroup group_;
    std::size_t k_;
    std::vector<CircleValue> m_;
};

/// Group of alternating bicharacters on A, isomorphic to H^2(A; T); for
/// A = sum Z/n_i it is sum_{i<j} Z/gcd(n_i, n_j), returned in invariant-factor form.
FiniteAbelianGroup h2(const FiniteAbelianGroup& a);

/// Coordinates (one per generator pair i<j, in lexicographic order) and
/// moduli gcd(n_i, n_j) of the alternating-bicharacter presentation.
std::vector<std::int64_t> h2_pair_moduli(const FiniteAbelianGroup& a);

/// The class-th alternating bicharacter in the mixed-radix enumeration of
/// sum_{i<j} Z/gcd(n_i, n_j); class 0 is zero. Throws std::out_of_range.
Bicharacter h2_class_bicharacter(const FiniteAbelianGroup& a, std::size_t class_index);
std::size_t h2_class_count(const FiniteAbelianGroup& a);

/// b(x, y) = c(x, y) - c(y, x). Throws std::invalid_argument when c is not a cocycle.
Bicharacter cocycle_commutator(const Cocycle2& c);

/// Bilinear lift c(x, y) = sum_{i<j} x_i y_j b_ij. Throws std::invalid_argument
/// when b is not alternating.
Cocycle2 bicharacter_to_cocycle(const Bicharacter& b);

/// c(x, y) = a(x) + a(y) - a(x + y).
Cocycle2 coboundary(const FiniteAbelianGroup& group, const std::vector<CircleValue>& a);

struct CoboundaryDecision {
    bool is_coboundary = false;
    std::vector<CircleValue> witness;  // a with c = coboundary(a), when found
};

/// Solves c = coboundary(a) over Q/Z; succeeds exactly for symmetric cocycles.
CoboundaryDecision is_coboundary_finite(const Cocycle2& c);

/// Solutions x in (Z/m)^n of L x = rhs (mod m), via Smith normal form; empty
/// when inconsistent.
std::optional<std::vector<BigInt>> solve_congruences(const lattice::ZMatrix& l, const std::vector<BigInt>& rhs,
                                                    const BigInt& modulus);

/// Number of x in (Z/m)^cols with L x = 0 (mod m).
BigInt count_kernel_mod(const lattice::ZMatrix& l, const BigInt& modulus);

/// Lowest common denominator of a table of circle values.
std::int64_t common_denominator(const std::vector<CircleValue>& values);

}  // namespace qcat::cohomology
