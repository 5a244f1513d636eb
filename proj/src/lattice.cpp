#include "qcat/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcat::lattice {

DynkinType DynkinType::make(char family, int rank) {
    bool ok = false;
    switch (family) {
    case 'A': ok = rank >= 1; break;
    case 'B': ok = rank >= 2; break;
    case 'C': ok = rank >= 2; break;
    case 'D': ok = rank >= 3; break;
    case 'E': ok = rank >= 6 && rank <= 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default: break;
    }
    if (!ok) throw std::invalid_argument("invalid Dynkin type: " + std::string(1, family) + std::to_string(rank));
    return DynkinType{family, rank};
}

DynkinType DynkinType::parse(std::string_view text) {
    if (text.size() < 2) throw std::invalid_argument("invalid Dynkin type: " + std::string(text));
    char family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    int rank = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9' || rank > 1000)
            throw std::invalid_argument("invalid Dynkin type: " + std::string(text));
        rank = rank * 10 + (text[i] - '0');
    }
    return make(family, rank);
}

std::string DynkinType::name() const { return std::string(1, family) + std::to_string(rank); }

std::vector<DynkinType> simple_types_up_to_rank(int max_rank) {
    std::vector<DynkinType> out;
    for (int r = 1; r <= max_rank; ++r) out.push_back({'A', r});
    for (int r = 2; r <= max_rank; ++r) out.push_back({'B', r});
    for (int r = 3; r <= max_rank; ++r) out.push_back({'C', r});
    for (int r = 4; r <= max_rank; ++r) out.push_back({'D', r});
    for (int r = 6; r <= std::min(8, max_rank); ++r) out.push_back({'E', r});
    if (max_rank >= 4) out.push_back({'F', 4});
    if (max_rank >= 2) out.push_back({'G', 2});
    return out;
}

// ---------------------------------------------------------------------------
// Integer matrices

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ZMatrix::ZMatrix(const IntMatrix& m) : ZMatrix(m.rows(), m.cols()) {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = static_cast<long>(m(i, j));
}

ZMatrix ZMatrix::identity(std::size_t n) {
    ZMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ZMatrix ZMatrix::operator*(const ZMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("ZMatrix: shape mismatch in product");
    ZMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if ((*this)(i, k) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += (*this)(i, k) * rhs(k, j);
        }
    return out;
}

BigInt determinant(const ZMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    ZMatrix a = m;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j));
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::vector<BigInt> SmithForm::diagonal() const {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
}

namespace {

void swap_rows(ZMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(ZMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row_dst -= f * row_src
void add_row(ZMatrix& m, std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= f * m(src, j);
}
void add_col(ZMatrix& m, std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= f * m(i, src);
}

}  // namespace

SmithForm smith_normal_form(const ZMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SmithForm s{ZMatrix::identity(rows), m, ZMatrix::identity(cols)};
    ZMatrix& d = s.d;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        auto place_min_pivot = [&]() {
            bool found = false;
            std::size_t bi = t, bj = t;
            BigInt best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (d(i, j) != 0 && (!found || abs(d(i, j)) < best)) {
                        found = true;
                        best = abs(d(i, j));
                        bi = i;
                        bj = j;
                    }
            if (!found) return false;
            swap_rows(d, t, bi);
            swap_rows(s.u, t, bi);
            swap_cols(d, t, bj);
            swap_cols(s.v, t, bj);
            return true;
        };
        if (!place_min_pivot()) break;
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                BigInt f = d(i, t) / d(t, t);
                add_row(d, i, t, f);
                add_row(s.u, i, t, f);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                BigInt f = d(t, j) / d(t, t);
                add_col(d, j, t, f);
                add_col(s.v, j, t, f);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A smaller remainder exists in row or column t.
                std::size_t bi = t, bj = t;
                BigInt best = abs(d(t, t));
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (d(i, t) != 0 && abs(d(i, t)) < best) best = abs(d(i, t)), bi = i, bj = t;
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(t, j) != 0 && abs(d(t, j)) < best) best = abs(d(t, j)), bi = t, bj = j;
                swap_rows(d, t, bi);
                swap_rows(s.u, t, bi);
                swap_cols(d, t, bj);
                swap_cols(s.v, t, bj);
                continue;
            }
            // Divisibility: fold any offending row into row t and repeat.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        add_row(d, t, i, BigInt(-1));
                        add_row(s.u, t, i, BigInt(-1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (d(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
            for (std::size_t j = 0; j < rows; ++j) s.u(t, j) = -s.u(t, j);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Cartan data

namespace {

struct CartanBuilder {
    CartanMatrix cm;
    explicit CartanBuilder(std::size_t n) {
        cm.a = IntMatrix(n, n);
        cm.sym.assign(n, 1);
        for (std::size_t i = 0; i < n; ++i) cm.a(i, i) = 2;
    }
    // 1-based Bourbaki node labels.
    void edge(std::size_t i, std::size_t j, std::int64_t aij = -1, std::int64_t aji = -1) {
        cm.a(i - 1, j - 1) = aij;
        cm.a(j - 1, i - 1) = aji;
    }
};

}  // namespace

CartanMatrix cartan_matrix(const DynkinType& type_in) {
    DynkinType type = DynkinType::make(type_in.family, type_in.rank);
    const std::size_t n = static_cast<std::size_t>(type.rank);
    CartanBuilder b(n);
    switch (type.family) {
    case 'A':
        for (std::size_t i = 1; i < n; ++i) b.edge(i, i + 1);
        break;
    case 'B':
        for (std::size_t i = 1; i + 1 < n; ++i) b.edge(i, i + 1);
        b.edge(n - 1, n, -1, -2);
        b.cm.sym.assign(n, 2);
        b.cm.sym[n - 1] = 1;
        break;
    case 'C':
        for (std::size_t i = 1; i + 1 < n; ++i) b.edge(i, i + 1);
        b.edge(n - 1, n, -2, -1);
        b.cm.sym.assign(n, 1);
        b.cm.sym[n - 1] = 2;
        break;
    case 'D':
        for (std::size_t i = 1; i + 2 < n; ++i) b.edge(i, i + 1);
        b.edge(n - 2, n - 1);
        b.edge(n - 2, n);
        break;
    case 'E':
        b.edge(1, 3);
        b.edge(3, 4);
        b.edge(2, 4);
        for (std::size_t i = 4; i < n; ++i) b.edge(i, i + 1);
        break;
    case 'F':
        b.edge(1, 2);
        b.edge(2, 3, -1, -2);
        b.edge(3, 4);
        b.cm.sym = {2, 2, 1, 1};
        break;
    case 'G':
        b.edge(1, 2, -3, -1);
        b.cm.sym = {1, 3};
        break;
    }
    return b.cm;
}

// ---------------------------------------------------------------------------
// Weights

Weight Weight::fundamental(std::size_t rank, std::size_t i) {
    Weight w = zero(rank);
    w[i] = 1;
    return w;
}

Weight Weight::parse(std::string_view text) {
    std::vector<int> coords;
    std::string s(text);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed weight: " + s);
        }
        if (pos != item.size()) throw std::invalid_argument("malformed weight: " + s);
        coords.push_back(v);
    }
    if (coords.empty()) throw std::invalid_argument("malformed weight: " + s);
    return Weight(std::move(coords));
}

bool Weight::is_dominant() const {
    return std::all_of(coords_.begin(), coords_.end(), [](int c) { return c >= 0; });
}

int Weight::coord_sum() const { return std::accumulate(coords_.begin(), coords_.end(), 0); }

std::string Weight::str() const {
    std::string out;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(coords_[i]);
    }
    return out;
}

Weight& Weight::operator+=(const Weight& o) {
    if (o.rank() != rank()) throw std::invalid_argument("Weight: rank mismatch");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& o) {
    if (o.rank() != rank()) throw std::invalid_argument("Weight: rank mismatch");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

Weight simple_root(const CartanMatrix& cm, std::size_t i) {
    std::vector<int> c(cm.rank());
    for (std::size_t k = 0; k < cm.rank(); ++k) c[k] = static_cast<int>(cm.a(k, i));
    return Weight(std::move(c));
}

std::vector<Weight> dominant_weights_up_to(std::size_t rank, int bound) {
    std::vector<Weight> out;
    for (int total = 0; total <= bound; ++total) {
        // compositions of total into rank parts, lexicographically descending in coord 0
        std::vector<int> c(rank, 0);
        auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
            if (pos + 1 == rank) {
                c[pos] = remaining;
                out.emplace_back(c);
                return;
            }
            for (int v = remaining; v >= 0; --v) {
                c[pos] = v;
                self(self, pos + 1, remaining - v);
            }
        };
        if (rank == 0) break;
        rec(rec, 0, total);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Finite abelian groups

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> invariant_factors) : factors_(std::move(invariant_factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) throw std::invalid_argument("invariant factors must be >= 2");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0)
            throw std::invalid_argument("invariant factors must form a divisibility chain");
    }
}

FiniteAbelianGroup FiniteAbelianGroup::from_orders(const std::vector<std::int64_t>& orders) {
    ZMatrix m(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 1) throw std::invalid_argument("cyclic orders must be positive");
        m(i, i) = static_cast<long>(orders[i]);
    }
    std::vector<std::int64_t> f;
    for (const auto& d : smith_normal_form(m).diagonal())
        if (d > 1) f.push_back(d.get_si());
    return FiniteAbelianGroup(std::move(f));
}

std::int64_t FiniteAbelianGroup::order() const {
    std::int64_t n = 1;
    for (auto f : factors_) n *= f;
    return n;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::generator(std::size_t i) const {
    Element e = zero();
    e.at(i) = 1;
    return e;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::reduce(Element x) const {
    if (x.size() != factors_.size()) throw std::invalid_argument("group element has wrong length");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = ((x[i] % factors_[i]) + factors_[i]) % factors_[i];
    return x;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::add(const Element& x, const Element& y) const {
    Element z(factors_.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = (x[i] + y[i]) % factors_[i];
    return reduce(std::move(z));
}

FiniteAbelianGroup::Element FiniteAbelianGroup::neg(const Element& x) const {
    Element z(x);
    for (auto& v : z) v = -v;
    return reduce(std::move(z));
}

std::size_t FiniteAbelianGroup::index_of(const Element& x) const {
    Element r = reduce(x);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < r.size(); ++i) idx = idx * static_cast<std::size_t>(factors_[i]) + static_cast<std::size_t>(r[i]);
    return idx;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::element_at(std::size_t index) const {
    Element e(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        e[i] = static_cast<std::int64_t>(index % static_cast<std::size_t>(factors_[i]));
        index /= static_cast<std::size_t>(factors_[i]);
    }
    return e;
}

std::vector<FiniteAbelianGroup::Element> FiniteAbelianGroup::elements() const {
    std::vector<Element> out;
    auto n = static_cast<std::size_t>(order());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(element_at(i));
    return out;
}

std::string FiniteAbelianGroup::str() const {
    if (factors_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += " x ";
        out += "Z/" + std::to_string(factors_[i]);
    }
    return out;
}

PqProjection::PqProjection(FiniteAbelianGroup group, IntMatrix projection, IntMatrix lift)
    : group_(std::move(group)), projection_(std::move(projection)), lift_(std::move(lift)) {}

FiniteAbelianGroup::Element PqProjection::project(const Weight& w) const {
    if (w.rank() != projection_.cols()) throw std::invalid_argument("project: weight rank mismatch");
    FiniteAbelianGroup::Element e(projection_.rows(), 0);
    for (std::size_t i = 0; i < projection_.rows(); ++i)
        for (std::size_t j = 0; j < projection_.cols(); ++j) e[i] += projection_(i, j) * w[j];
    return group_.reduce(std::move(e));
}

Weight PqProjection::lift(const FiniteAbelianGroup::Element& x) const {
    std::vector<int> c(lift_.rows(), 0);
    auto r = group_.reduce(x);
    for (std::size_t i = 0; i < lift_.rows(); ++i)
        for (std::size_t j = 0; j < lift_.cols(); ++j) c[i] += static_cast<int>(lift_(i, j) * r[j]);
    return Weight(std::move(c));
}

PqProjection fundamental_group(const DynkinType& type) { return fundamental_group(cartan_matrix(type)); }

PqProjection fundamental_group(const CartanMatrix& cm) {
    // Q is the column span of the Cartan matrix inside Z^r = P.
    const std::size_t r = cm.rank();
    SmithForm s = smith_normal_form(ZMatrix(cm.a));
    // U^{-1}: unimodular, computed over Q and converted back.
    QMatrix uq(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) uq(i, j) = s.u(i, j);
    QMatrix uinv = inverse(uq);

    std::vector<std::size_t> kept;
    std::vector<std::int64_t> factors;
    for (std::size_t i = 0; i < r; ++i) {
        if (s.d(i, i) == 0) throw std::domain_error("fundamental_group: singular Cartan matrix");
        if (s.d(i, i) > 1) {
            kept.push_back(i);
            factors.push_back(s.d(i, i).get_si());
        }
    }
    IntMatrix proj(kept.size(), r), lift(r, kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
        std::int64_t n = factors[k];
        for (std::size_t j = 0; j < r; ++j) {
            std::int64_t v = BigInt(s.u(kept[k], j) % n).get_si();
            proj(k, j) = ((v % n) + n) % n;
            lift(j, k) = BigInt(uinv(j, kept[k])).get_si();
        }
    }
    return PqProjection(FiniteAbelianGroup(std::move(factors)), std::move(proj), std::move(lift));
}

// ---------------------------------------------------------------------------
// Roots and characters

RootSystem root_system(const DynkinType& type) { return root_system(cartan_matrix(type)); }

RootSystem root_system(const CartanMatrix& cm) {
    const std::size_t r = cm.rank();
    RootSystem rs{cm, {}, {}};
    std::set<std::vector<int>> known;
    std::vector<std::vector<int>> layer;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<int> e(r, 0);
        e[i] = 1;
        layer.push_back(e);
        known.insert(e);
    }
    while (!layer.empty()) {
        for (const auto& b : layer) rs.positive_roots_simple.push_back(b);
        std::set<std::vector<int>> next;
        for (const auto& beta : layer) {
            for (std::size_t i = 0; i < r; ++i) {
                // alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                int p = 0;
                std::vector<int> down = beta;
                while (true) {
                    down[i] -= 1;
                    if (!known.count(down)) break;
                    ++p;
                }
                std::int64_t pairing = 0;
                for (std::size_t j = 0; j < r; ++j) pairing += cm.a(i, j) * beta[j];
                if (p - pairing > 0) {
                    std::vector<int> up = beta;
                    up[i] += 1;
                    if (!known.count(up)) next.insert(up);
                }
            }
        }
        layer.assign(next.begin(), next.end());
        for (const auto& b : layer) known.insert(b);
    }
    for (const auto& c : rs.positive_roots_simple) {
        Weight w = Weight::zero(r);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k) w[k] += static_cast<int>(cm.a(k, j)) * c[j];
        rs.positive_roots.push_back(w);
    }
    return rs;
}

std::vector<Weight> positive_roots(const DynkinType& type) { return root_system(type).positive_roots; }

namespace {

// (lambda, beta) for beta given in simple-root coordinates, with (omega_i, alpha_j) = d_j delta_ij.
std::int64_t pair_with_root(const CartanMatrix& cm, const Weight& lambda, const std::vector<int>& beta) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < beta.size(); ++j) s += static_cast<std::int64_t>(beta[j]) * cm.sym[j] * lambda[j];
    return s;
}

void require_dominant(const Weight& mu, std::size_t rank) {
    if (mu.rank() != rank) throw std::invalid_argument("weight rank does not match type");
    if (!mu.is_dominant()) throw std::invalid_argument("weight is not dominant: " + mu.str());
}

}  // namespace

BigInt weyl_dim(const RootSystem& rs, const Weight& mu) {
    require_dominant(mu, rs.cartan.rank());
    Weight rho(std::vector<int>(mu.rank(), 1));
    BigInt num = 1, den = 1;
    for (const auto& beta : rs.positive_roots_simple) {
        num *= (pair_with_root(rs.cartan, mu + rho, beta));
        den *= (pair_with_root(rs.cartan, rho, beta));
    }
    return num / den;
}

BigInt weyl_dim(const DynkinType& type, const Weight& mu) { return weyl_dim(root_system(type), mu); }

WeightMultiplicities weight_multiplicities(const RootSystem& rs, const Weight& mu) {
    const CartanMatrix& cm = rs.cartan;
    const std::size_t r = cm.rank();
    require_dominant(mu, r);
    Weight rho(std::vector<int>(r, 1));
    WeightMultiplicities mult;
    mult[mu] = 1;
    // depth[lambda] = mu - lambda in simple-root coordinates
    std::map<Weight, std::vector<int>> depth;
    depth[mu] = std::vector<int>(r, 0);
    std::vector<Weight> level{mu};
    const Weight two_rho_plus_mu = mu + 2 * rho;
    while (!level.empty()) {
        std::set<Weight> candidates;
        for (const auto& w : level)
            for (std::size_t j = 0; j < r; ++j) {
                Weight c = w - simple_root(cm, j);
                if (!depth.count(c)) {
                    auto d = depth[w];
                    d[j] += 1;
                    depth[c] = d;
                }
                candidates.insert(c);
            }
        std::vector<Weight> next;
        for (const auto& lambda : candidates) {
            if (mult.count(lambda)) continue;
            // |mu+rho|^2 - |lambda+rho|^2 = (mu + lambda + 2 rho, mu - lambda)
            std::int64_t gap = pair_with_root(cm, two_rho_plus_mu + lambda, depth[lambda]);
            std::int64_t rhs = 0;
            for (std::size_t b = 0; b < rs.positive_roots.size(); ++b) {
                const Weight& beta = rs.positive_roots[b];
                const auto& beta_simple = rs.positive_roots_simple[b];
                std::vector<int> d = depth[lambda];
                Weight shifted = lambda + beta;
                while (true) {
                    // stop once lambda + k beta is no longer below mu
                    bool below = true;
                    for (std::size_t j = 0; j < r; ++j) {
                        d[j] -= beta_simple[j];
                        if (d[j] < 0) below = false;
                    }
                    if (!below) break;
                    auto it = mult.find(shifted);
                    if (it != mult.end()) rhs += it->second * pair_with_root(cm, shifted, beta_simple);
                    shifted += beta;
                }
            }
            rhs *= 2;
            if (gap <= 0) {
                if (rhs != 0) throw std::logic_error("Freudenthal recursion inconsistent at " + lambda.str());
                continue;
            }
            if (rhs % gap != 0) throw std::logic_error("Freudenthal recursion produced a fraction at " + lambda.str());
            std::int64_t m = rhs / gap;
            if (m > 0) {
                mult[lambda] = m;
                next.push_back(lambda);
            }
        }
        level = std::move(next);
    }
    return mult;
}

WeightMultiplicities weight_multiplicities(const DynkinType& type, const Weight& mu) {
    return weight_multiplicities(root_system(type), mu);
}

Decomposition klimyk_decompose(const RootSystem& rs, const Weight& mu, const WeightMultiplicities& eta_character) {
    const CartanMatrix& cm = rs.cartan;
    const std::size_t r = cm.rank();
    require_dominant(mu, r);
    Weight rho(std::vector<int>(r, 1));
    std::map<Weight, std::int64_t> acc;
    for (const auto& [kappa, m] : eta_character) {
        Weight x = mu + kappa + rho;
        int sign = 1;
        bool on_wall = false;
        while (true) {
            std::size_t i = 0;
            while (i < r && x[i] > 0) ++i;
            if (i == r) break;
            if (x[i] == 0) {
                on_wall = true;
                break;
            }
            // s_i(x) = x - <x, alpha_i^vee> alpha_i
            int c = x[i];
            for (std::size_t k = 0; k < r; ++k) x[k] -= c * static_cast<int>(cm.a(k, i));
            sign = -sign;
        }
        if (on_wall) continue;
        acc[x - rho] += sign * m;
    }
    Decomposition out;
    for (const auto& [nu, m] : acc) {
        if (m < 0) throw std::logic_error("Klimyk produced a negative multiplicity at " + nu.str());
        if (m > 0) out[nu] = m;
    }
    return out;
}

Decomposition klimyk_decompose(const RootSystem& rs, const Weight& mu, const Weight& eta) {
    require_dominant(eta, rs.cartan.rank());
    return klimyk_decompose(rs, mu, weight_multiplicities(rs, eta));
}

Decomposition klimyk_decompose(const DynkinType& type, const Weight& mu, const Weight& eta) {
    return klimyk_decompose(root_system(type), mu, eta);
}

}  // namespace qcat::lattice
