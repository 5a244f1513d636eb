#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qcat {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q", "p" or "-p/q" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// Integer power with negative exponents allowed (value must be nonzero then).
Rational pow(const Rational& value, long exponent);

/// Sparse vector over Q, ordered by index for deterministic output.
using SparseVector = std::map<std::size_t, Rational>;

void axpy(SparseVector& y, const Rational& alpha, const SparseVector& x);
SparseVector scaled(const SparseVector& x, const Rational& alpha);
bool is_zero(const SparseVector& x);

/// Dense rational matrix, row-major.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    QMatrix operator*(const QMatrix& rhs) const;
    QMatrix operator+(const QMatrix& rhs) const;
    QMatrix operator-(const QMatrix& rhs) const;
    QMatrix scaled(const Rational& alpha) const;
    bool operator==(const QMatrix& rhs) const = default;

    bool is_zero() const;
    bool is_identity() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
std::size_t rank(QMatrix m);
/// Basis of the right null space, one vector per free column, normalized so
/// the free coordinate is 1 (echelon-normalized).
std::vector<std::vector<Rational>> null_space(QMatrix m);
/// Inverse of a square matrix; throws std::domain_error when singular.
QMatrix inverse(const QMatrix& m);
/// Solves m x = b for a unique x; returns empty optional-like flag via bool.
bool solve_unique(const QMatrix& m, const std::vector<Rational>& b, std::vector<Rational>& x);

}  // namespace qcat
