#include "qcat/monoid.hpp"

#include <numeric>
#include <stdexcept>

namespace qcat::monoid {

using cohomology::CircleValue;
using lattice::ZMatrix;

MonoidCocycle::MonoidCocycle(DynkinType type, int bound)
    : type_(type), bound_(bound), weights_(lattice::dominant_weights_up_to(static_cast<std::size_t>(type.rank), bound)) {
    if (bound < 0) throw std::invalid_argument("MonoidCocycle: negative bound");
    for (std::size_t i = 0; i < weights_.size(); ++i) index_[weights_[i]] = i;
    table_.assign(weights_.size() * weights_.size(), PhaseRational());
}

std::size_t MonoidCocycle::idx(const Weight& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) throw std::out_of_range("MonoidCocycle: weight " + w.str() + " outside truncation");
    return it->second;
}

const PhaseRational& MonoidCocycle::operator()(const Weight& mu, const Weight& eta) const {
    return table_[idx(mu) * weights_.size() + idx(eta)];
}

PhaseRational& MonoidCocycle::operator()(const Weight& mu, const Weight& eta) {
    return table_[idx(mu) * weights_.size() + idx(eta)];
}

std::optional<std::array<Weight, 3>> MonoidCocycle::cocycle_violation() const {
    for (const auto& mu : weights_)
        for (const auto& eta : weights_) {
            Weight me = mu + eta;
            if (!contains(me)) continue;
            for (const auto& nu : weights_) {
                Weight en = eta + nu;
                if (!contains(me + nu) || !contains(en)) continue;
                if ((*this)(mu, eta) * (*this)(me, nu) != (*this)(eta, nu) * (*this)(mu, en)) return std::array{mu, eta, nu};
            }
        }
    return std::nullopt;
}

std::int64_t MonoidCocycle::angle_denominator() const {
    std::int64_t l = 1;
    for (const auto& v : table_) l = std::lcm(l, v.angle().den());
    return l;
}

MonoidCocycle restrict_to_monoid(const DynkinType& type, const cohomology::Cocycle2& c, int bound) {
    auto pq = lattice::fundamental_group(type);
    if (!(pq.group() == c.group())) throw std::invalid_argument("restrict_to_monoid: cocycle is not on P/Q of " + type.name());
    MonoidCocycle out(type, bound);
    for (const auto& mu : out.weights())
        for (const auto& eta : out.weights()) out(mu, eta) = PhaseRational::root_of_unity(c(pq.project(mu), pq.project(eta)));
    return out;
}

MonoidCocycle monoid_commutator(const MonoidCocycle& c) {
    MonoidCocycle b(c.type(), c.bound());
    for (const auto& mu : c.weights())
        for (const auto& eta : c.weights()) b(mu, eta) = c(mu, eta) / c(eta, mu);
    return b;
}

MonoidCocycle monoid_coboundary(const DynkinType& type, int bound, const CentralElement& a) {
    MonoidCocycle c(type, bound);
    for (const auto& mu : c.weights())
        for (const auto& eta : c.weights()) {
            auto s = a.find(mu + eta);
            if (s == a.end()) continue;  // only pairs whose sum stays in range carry the identity
            c(mu, eta) = a.at(mu) * a.at(eta) / s->second;
        }
    return c;
}

// ---------------------------------------------------------------------------

LatticeBicharacter::LatticeBicharacter(std::size_t rank) : rank_(rank), m_(rank * rank) {}

PhaseRational LatticeBicharacter::operator()(const Weight& lambda, const Weight& kappa) const {
    PhaseRational v;
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = 0; j < rank_; ++j) {
            std::int64_t e = static_cast<std::int64_t>(lambda[i]) * kappa[j];
            if (e != 0) v *= pairing(i, j).pow(e);
        }
    return v;
}

bool LatticeBicharacter::is_trivial() const {
    for (const auto& v : m_)
        if (!v.is_one()) return false;
    return true;
}

bool LatticeBicharacter::is_skew() const {
    for (std::size_t i = 0; i < rank_; ++i) {
        if (!pairing(i, i).is_one()) return false;
        for (std::size_t j = 0; j < rank_; ++j)
            if (!(pairing(i, j) * pairing(j, i)).is_one()) return false;
    }
    return true;
}

Extension extend_to_lattice(const MonoidCocycle& skew) {
    const std::size_t r = static_cast<std::size_t>(skew.type().rank);
    if (skew.bound() < 1) throw std::invalid_argument("extend_to_lattice: truncation must contain the fundamental weights");
    Extension ext{LatticeBicharacter(r)};
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            ext.bicharacter.pairing(i, j) = skew(Weight::fundamental(r, i), Weight::fundamental(r, j));
    if (!ext.bicharacter.is_skew()) throw std::invalid_argument("extend_to_lattice: table is not skew-symmetric");
    const auto& ws = skew.weights();
    for (const auto& mu : ws)
        for (const auto& eta : ws) {
            if (skew(mu, eta) != ext.bicharacter(mu, eta))
                throw std::invalid_argument("extend_to_lattice: not bi-multiplicative at (" + mu.str() + " | " + eta.str() + ")");
            ++ext.checked_pairs;
        }
    // Every lambda in P is mu - mu' with mu, mu' dominant; compare the value
    // b(mu,eta) b(mu',eta') / (b(mu,eta') b(mu',eta)) of each representation
    // against the extension. Root-of-unity tables are checked over all of
    // W^4 in integer angle arithmetic; other tables let mu', eta' range over
    // 0 and the fundamental weights.
    const std::size_t n = ws.size();
    bool torsion = true;
    for (const auto& mu : ws)
        for (const auto& eta : ws) torsion = torsion && skew(mu, eta).is_root_of_unity();
    if (torsion) {
        const std::int64_t den = skew.angle_denominator();
        std::vector<std::int64_t> t(n * n), m(r * r);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                auto v = skew(ws[a], ws[b]).angle();
                t[a * n + b] = v.num() * (den / v.den());
            }
        for (std::size_t i = 0; i < r * r; ++i) {
            auto v = ext.bicharacter.pairing(i / r, i % r).angle();
            m[i] = v.num() * (den / v.den());
        }
        std::size_t failures = 0;
        std::optional<std::pair<Weight, Weight>> first;
        std::vector<std::int64_t> row(r);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t a2 = 0; a2 < n; ++a2) {
                Weight l = ws[a] - ws[a2];
                for (std::size_t j = 0; j < r; ++j) {
                    row[j] = 0;
                    for (std::size_t i = 0; i < r; ++i) row[j] = (row[j] + l[i] * m[i * r + j]) % den;
                }
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t b2 = 0; b2 < n; ++b2) {
                        Weight k = ws[b] - ws[b2];
                        std::int64_t want = 0;
                        for (std::size_t j = 0; j < r; ++j) want += row[j] * k[j];
                        std::int64_t rep = t[a * n + b] + t[a2 * n + b2] - t[a * n + b2] - t[a2 * n + b] - want;
                        if (rep % den != 0 && !failures++) first.emplace(l, k);
                    }
            }
        if (failures)
            throw std::invalid_argument("extend_to_lattice: representation-dependent value at " + first->first.str() +
                                        " | " + first->second.str());
        ext.checked_representations = n * n * n * n;
        return ext;
    }
    std::vector<Weight> shifts{Weight::zero(r)};
    for (std::size_t i = 0; i < r; ++i) shifts.push_back(Weight::fundamental(r, i));
    for (const auto& mu : ws)
        for (const auto& mu2 : shifts)
            for (const auto& eta : ws)
                for (const auto& eta2 : shifts) {
                    PhaseRational rep = skew(mu, eta) * skew(mu2, eta2) / (skew(mu, eta2) * skew(mu2, eta));
                    if (rep != ext.bicharacter(mu - mu2, eta - eta2))
                        throw std::invalid_argument("extend_to_lattice: representation-dependent value at " +
                                                    (mu - mu2).str() + " | " + (eta - eta2).str());
                    ++ext.checked_representations;
                }
    return ext;
}

RootKernelDecision kernel_contains_roots(const LatticeBicharacter& b, const lattice::CartanMatrix& cm) {
    RootKernelDecision d;
    const std::size_t r = cm.rank();
    for (std::size_t i = 0; i < r && d.contains_roots; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (!b(lattice::simple_root(cm, i), Weight::fundamental(r, j)).is_one()) {
                d.contains_roots = false;
                d.violation = std::make_pair(i, j);
                break;
            }
    return d;
}

cohomology::Bicharacter descend_to_pq(const LatticeBicharacter& b, const lattice::CartanMatrix& cm,
                                      const lattice::PqProjection& pq) {
    if (!kernel_contains_roots(b, cm).contains_roots)
        throw std::invalid_argument("descend_to_pq: root lattice is not in the kernel");
    const auto& g = pq.group();
    cohomology::Bicharacter out(g);
    for (std::size_t k = 0; k < g.num_generators(); ++k)
        for (std::size_t l = 0; l < g.num_generators(); ++l) {
            auto v = b(pq.lift(g.generator(k)), pq.lift(g.generator(l)));
            if (!v.is_root_of_unity()) throw std::invalid_argument("descend_to_pq: value is not a root of unity");
            out.pairing(k, l) = v.angle();
        }
    return out;
}

// ---------------------------------------------------------------------------

MonoidWitness monoid_coboundary_witness(const MonoidCocycle& c) {
    const std::int64_t n_den = c.angle_denominator();  // throws for non-torsion values
    MonoidWitness out;
    const auto& ws = c.weights();
    for (std::size_t a = 0; a < ws.size() && !out.skew_pair; ++a)
        for (std::size_t b = a + 1; b < ws.size(); ++b)
            if (c(ws[a], ws[b]) != c(ws[b], ws[a])) {
                out.skew_pair = std::make_pair(ws[a], ws[b]);
                break;
            }

    std::map<Weight, std::size_t> col;
    for (std::size_t i = 0; i < ws.size(); ++i) col[ws[i]] = i;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t j = 0; j < ws.size(); ++j)
            if (c.contains(ws[i] + ws[j])) pairs.emplace_back(i, j);
    ZMatrix l(pairs.size(), ws.size());
    for (std::size_t row = 0; row < pairs.size(); ++row) {
        auto [i, j] = pairs[row];
        l(row, i) += 1;
        l(row, j) += 1;
        l(row, col.at(ws[i] + ws[j])) -= 1;
    }
    const std::int64_t e = lattice::fundamental_group(c.type()).group().exponent();
    for (std::int64_t m : {n_den, n_den * e, 2 * n_den * e}) {
        std::vector<BigInt> rhs(pairs.size());
        for (std::size_t row = 0; row < pairs.size(); ++row) {
            auto v = c(ws[pairs[row].first], ws[pairs[row].second]).angle();
            rhs[row] = v.num() * (m / v.den());
        }
        auto sol = cohomology::solve_congruences(l, rhs, BigInt(m));
        if (!sol) continue;
        out.linear_system_solvable = true;
        out.denominator = m;
        for (std::size_t i = 0; i < ws.size(); ++i)
            out.a[ws[i]] = PhaseRational::root_of_unity(CircleValue((*sol)[i].get_si(), m));
        break;
    }
    if (out.linear_system_solvable && out.skew_pair)
        throw std::logic_error("monoid_coboundary_witness: non-symmetric table admits a witness");
    out.found = out.linear_system_solvable;
    if (out.found) {
        // substitute back on every pair
        for (const auto& [i, j] : pairs)
            if (out.a.at(ws[i]) * out.a.at(ws[j]) / out.a.at(ws[i] + ws[j]) != c(ws[i], ws[j]))
                throw std::logic_error("monoid_coboundary_witness: witness does not verify");
    }
    return out;
}

}  // namespace qcat::monoid
