#include "qcat/cohomology.hpp"

#include <numeric>
#include <stdexcept>

namespace qcat::cohomology {

using lattice::ZMatrix;

CircleValue::CircleValue(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("CircleValue: zero denominator");
    if (den < 0) num = -num, den = -den;
    num %= den;
    if (num < 0) num += den;
    std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

CircleValue CircleValue::parse(const std::string& text) {
    Rational r = parse_rational(text);
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
        throw std::invalid_argument("CircleValue: value too large: " + text);
    return CircleValue(r.get_num().get_si(), r.get_den().get_si());
}

std::string CircleValue::str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

CircleValue CircleValue::operator+(const CircleValue& o) const {
    std::int64_t l = std::lcm(den_, o.den_);
    return CircleValue(num_ * (l / den_) + o.num_ * (l / o.den_), l);
}

CircleValue CircleValue::operator-() const { return CircleValue(-num_, den_); }
CircleValue CircleValue::operator-(const CircleValue& o) const { return *this + (-o); }

CircleValue operator*(std::int64_t k, const CircleValue& v) {
    std::int64_t kr = k % v.den_;
    return CircleValue(kr * v.num_, v.den_);
}

// ---------------------------------------------------------------------------

Cocycle2::Cocycle2(FiniteAbelianGroup group)
    : group_(std::move(group)), n_(static_cast<std::size_t>(group_.order())), table_(n_ * n_) {}

Cocycle2::Cocycle2(FiniteAbelianGroup group, std::vector<CircleValue> table)
    : group_(std::move(group)), n_(static_cast<std::size_t>(group_.order())), table_(std::move(table)) {
    if (table_.size() != n_ * n_) throw std::invalid_argument("Cocycle2: table size does not match group order");
}

const CircleValue& Cocycle2::operator()(const Element& x, const Element& y) const {
    return at(group_.index_of(x), group_.index_of(y));
}

std::optional<std::array<std::size_t, 3>> Cocycle2::cocycle_violation() const {
    std::vector<std::size_t> sum(n_ * n_);
    for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = 0; y < n_; ++y)
            sum[x * n_ + y] = group_.index_of(group_.add(group_.element_at(x), group_.element_at(y)));
    for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = 0; y < n_; ++y)
            for (std::size_t z = 0; z < n_; ++z)
                if (at(x, y) + at(sum[x * n_ + y], z) != at(y, z) + at(x, sum[y * n_ + z])) return std::array{x, y, z};
    return std::nullopt;
}

bool Cocycle2::is_symmetric() const {
    for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = x + 1; y < n_; ++y)
            if (at(x, y) != at(y, x)) return false;
    return true;
}

Cocycle2 Cocycle2::operator+(const Cocycle2& o) const {
    if (!(group_ == o.group_)) throw std::invalid_argument("Cocycle2: group mismatch");
    Cocycle2 out(group_);
    for (std::size_t i = 0; i < table_.size(); ++i) out.table_[i] = table_[i] + o.table_[i];
    return out;
}

// ---------------------------------------------------------------------------

Bicharacter::Bicharacter(FiniteAbelianGroup group)
    : group_(std::move(group)), k_(group_.num_generators()), m_(k_ * k_) {}

Bicharacter::Bicharacter(FiniteAbelianGroup group, std::vector<CircleValue> generator_pairings)
    : group_(std::move(group)), k_(group_.num_generators()), m_(std::move(generator_pairings)) {
    if (m_.size() != k_ * k_) throw std::invalid_argument("Bicharacter: pairing matrix has wrong size");
}

CircleValue Bicharacter::operator()(const Element& x, const Element& y) const {
    CircleValue s;
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t j = 0; j < k_; ++j) s += (x[i] * y[j]) * pairing(i, j);
    return s;
}

bool Bicharacter::is_well_defined() const {
    const auto& f = group_.factors();
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t j = 0; j < k_; ++j)
            if (!(f[i] * pairing(i, j)).is_zero() || !(f[j] * pairing(i, j)).is_zero()) return false;
    return true;
}

bool Bicharacter::is_skew() const {
    for (std::size_t i = 0; i < k_; ++i) {
        if (!pairing(i, i).is_zero()) return false;
        for (std::size_t j = i + 1; j < k_; ++j)
            if (pairing(i, j) + pairing(j, i) != CircleValue()) return false;
    }
    return true;
}

bool Bicharacter::is_zero() const {
    for (const auto& v : m_)
        if (!v.is_zero()) return false;
    return true;
}

Bicharacter Bicharacter::operator+(const Bicharacter& o) const {
    Bicharacter out(group_);
    for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] = m_[i] + o.m_[i];
    return out;
}

// ---------------------------------------------------------------------------

std::vector<std::int64_t> h2_pair_moduli(const FiniteAbelianGroup& a) {
    std::vector<std::int64_t> moduli;
    const auto& f = a.factors();
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) moduli.push_back(std::gcd(f[i], f[j]));
    return moduli;
}

FiniteAbelianGroup h2(const FiniteAbelianGroup& a) { return FiniteAbelianGroup::from_orders(h2_pair_moduli(a)); }

std::size_t h2_class_count(const FiniteAbelianGroup& a) {
    std::size_t n = 1;
    for (auto m : h2_pair_moduli(a)) n *= static_cast<std::size_t>(m);
    return n;
}

Bicharacter h2_class_bicharacter(const FiniteAbelianGroup& a, std::size_t class_index) {
    auto moduli = h2_pair_moduli(a);
    if (class_index >= h2_class_count(a)) throw std::out_of_range("H^2 class index out of range");
    std::vector<std::int64_t> digits(moduli.size());
    for (std::size_t p = moduli.size(); p-- > 0;) {
        digits[p] = static_cast<std::int64_t>(class_index % static_cast<std::size_t>(moduli[p]));
        class_index /= static_cast<std::size_t>(moduli[p]);
    }
    Bicharacter b(a);
    std::size_t p = 0;
    for (std::size_t i = 0; i < a.num_generators(); ++i)
        for (std::size_t j = i + 1; j < a.num_generators(); ++j, ++p) {
            CircleValue v(digits[p], moduli[p]);
            b.pairing(i, j) = v;
            b.pairing(j, i) = -v;
        }
    return b;
}

Bicharacter cocycle_commutator(const Cocycle2& c) {
    if (auto bad = c.cocycle_violation())
        throw std::invalid_argument("cocycle_commutator: input violates the cocycle identity at (" +
                                    std::to_string((*bad)[0]) + "," + std::to_string((*bad)[1]) + "," +
                                    std::to_string((*bad)[2]) + ")");
    const auto& g = c.group();
    Bicharacter b(g);
    for (std::size_t i = 0; i < g.num_generators(); ++i)
        for (std::size_t j = 0; j < g.num_generators(); ++j)
            b.pairing(i, j) = c(g.generator(i), g.generator(j)) - c(g.generator(j), g.generator(i));
    for (std::size_t x = 0; x < c.size(); ++x)
        for (std::size_t y = 0; y < c.size(); ++y)
            if (b(g.element_at(x), g.element_at(y)) != c.at(x, y) - c.at(y, x))
                throw std::logic_error("cocycle_commutator: commutator is not bi-additive");
    return b;
}

Cocycle2 bicharacter_to_cocycle(const Bicharacter& b) {
    if (!b.is_skew() || !b.is_well_defined())
        throw std::invalid_argument("bicharacter_to_cocycle: input is not an alternating bicharacter");
    const auto& g = b.group();
    Cocycle2 c(g);
    for (std::size_t x = 0; x < c.size(); ++x) {
        auto ex = g.element_at(x);
        for (std::size_t y = 0; y < c.size(); ++y) {
            auto ey = g.element_at(y);
            CircleValue s;
            for (std::size_t i = 0; i < g.num_generators(); ++i)
                for (std::size_t j = i + 1; j < g.num_generators(); ++j) s += (ex[i] * ey[j]) * b.pairing(i, j);
            c.at(x, y) = s;
        }
    }
    return c;
}

Cocycle2 coboundary(const FiniteAbelianGroup& group, const std::vector<CircleValue>& a) {
    Cocycle2 c(group);
    if (a.size() != c.size()) throw std::invalid_argument("coboundary: cochain has wrong size");
    for (std::size_t x = 0; x < c.size(); ++x)
        for (std::size_t y = 0; y < c.size(); ++y) {
            auto s = group.index_of(group.add(group.element_at(x), group.element_at(y)));
            c.at(x, y) = a[x] + a[y] - a[s];
        }
    return c;
}

std::int64_t common_denominator(const std::vector<CircleValue>& values) {
    std::int64_t l = 1;
    for (const auto& v : values) l = std::lcm(l, v.den());
    return l;
}

// ---------------------------------------------------------------------------

std::optional<std::vector<BigInt>> solve_congruences(const ZMatrix& l, const std::vector<BigInt>& rhs,
                                                    const BigInt& modulus) {
    if (rhs.size() != l.rows()) throw std::invalid_argument("solve_congruences: rhs size mismatch");
    auto s = lattice::smith_normal_form(l);
    const std::size_t rows = l.rows(), cols = l.cols();
    auto mod = [&](BigInt v) {
        v %= modulus;
        if (v < 0) v += modulus;
        return v;
    };
    std::vector<BigInt> r(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        BigInt acc = 0;
        for (std::size_t j = 0; j < rows; ++j) acc += s.u(i, j) * rhs[j];
        r[i] = mod(acc);
    }
    std::vector<BigInt> y(cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        BigInt si = i < cols ? BigInt(s.d(i, i)) : BigInt(0);
        BigInt g;
        mpz_gcd(g.get_mpz_t(), si.get_mpz_t(), modulus.get_mpz_t());
        if (r[i] % g != 0) return std::nullopt;
        if (i >= cols || si == 0) continue;
        BigInt m2 = modulus / g;
        BigInt a = mod(si / g);
        BigInt inv;
        if (m2 == 1) {
            inv = 0;
        } else if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m2.get_mpz_t()) == 0) {
            throw std::logic_error("solve_congruences: non-invertible reduced pivot");
        }
        y[i] = mod((r[i] / g) * inv % m2);
    }
    std::vector<BigInt> x(cols);
    for (std::size_t i = 0; i < cols; ++i) {
        BigInt acc = 0;
        for (std::size_t j = 0; j < cols; ++j) acc += s.v(i, j) * y[j];
        x[i] = mod(acc);
    }
    return x;
}

BigInt count_kernel_mod(const ZMatrix& l, const BigInt& modulus) {
    auto s = lattice::smith_normal_form(l);
    BigInt count = 1;
    for (std::size_t i = 0; i < l.cols(); ++i) {
        BigInt si = i < l.rows() ? BigInt(s.d(i, i)) : BigInt(0);
        BigInt g;
        mpz_gcd(g.get_mpz_t(), si.get_mpz_t(), modulus.get_mpz_t());
        count *= g;  // gcd(0, m) = m
    }
    return count;
}

CoboundaryDecision is_coboundary_finite(const Cocycle2& c) {
    const auto& g = c.group();
    const std::size_t n = c.size();
    // Values in (1/N)Z; a witness, when one exists, lives in (1/(N e))Z.
    const std::int64_t big_n = common_denominator(c.table());
    const std::int64_t m = big_n * g.exponent();
    ZMatrix l(n * n, n);
    std::vector<BigInt> rhs(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t row = x * n + y;
            auto s = g.index_of(g.add(g.element_at(x), g.element_at(y)));
            l(row, x) += 1;
            l(row, y) += 1;
            l(row, s) -= 1;
            rhs[row] = c.at(x, y).num() * (m / c.at(x, y).den());
        }
    CoboundaryDecision out;
    auto sol = solve_congruences(l, rhs, BigInt(m));
    if (!sol) return out;
    out.is_coboundary = true;
    for (const auto& v : *sol) out.witness.emplace_back(v.get_si(), m);
    if (!(coboundary(g, out.witness) == c)) throw std::logic_error("is_coboundary_finite: witness does not verify");
    return out;
}

}  // namespace qcat::cohomology
