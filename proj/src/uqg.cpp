#include "qcat/uqg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qcat::uqg {

QParam::QParam(Rational q) : q_(std::move(q)) {
    q_.canonicalize();
    if (q_ == 0 || q_ == 1 || q_ == -1) throw std::domain_error("q = " + to_string(q_) + " is degenerate");
}

QParam QParam::parse(const std::string& text) { return QParam(parse_rational(text)); }

Rational q_int(std::int64_t n, const Rational& qi) {
    if (qi == 0 || qi == 1 || qi == -1) throw std::domain_error("q_int: degenerate q_i = " + to_string(qi));
    return (qcat::pow(qi, n) - qcat::pow(qi, -n)) / (qi - Rational(1) / qi);
}

Rational q_binomial(std::int64_t n, std::int64_t k, const Rational& qi) {
    if (k < 0 || k > n) return 0;
    Rational num = 1, den = 1;
    for (std::int64_t t = 0; t < k; ++t) {
        num *= q_int(n - t, qi);
        den *= q_int(t + 1, qi);
    }
    return num / den;
}

// ---------------------------------------------------------------------------

Rational ModuleRep::k_value(std::size_t i, std::size_t b, int sign) const {
    return qcat::pow(qi(i), static_cast<long>(sign) * weights[b][i]);
}

SparseVector ModuleRep::apply_e(std::size_t i, const SparseVector& v) const {
    SparseVector out;
    for (const auto& [b, c] : v) axpy(out, c, e[i][b]);
    return out;
}

SparseVector ModuleRep::apply_f(std::size_t i, const SparseVector& v) const {
    SparseVector out;
    for (const auto& [b, c] : v) axpy(out, c, f[i][b]);
    return out;
}

SparseVector ModuleRep::apply_k(std::size_t i, const SparseVector& v, int sign) const {
    SparseVector out;
    for (const auto& [b, c] : v) out.emplace(b, c * k_value(i, b, sign));
    return out;
}

namespace {

QMatrix to_matrix(const std::vector<SparseVector>& cols, std::size_t rows) {
    QMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, v] : cols[c]) m(r, c) = v;
    return m;
}

}  // namespace

QMatrix ModuleRep::matrix_e(std::size_t i) const { return to_matrix(e[i], dim()); }
QMatrix ModuleRep::matrix_f(std::size_t i) const { return to_matrix(f[i], dim()); }
QMatrix ModuleRep::matrix_k(std::size_t i, int sign) const {
    QMatrix m(dim(), dim());
    for (std::size_t b = 0; b < dim(); ++b) m(b, b) = k_value(i, b, sign);
    return m;
}

bool in_module_whitelist(const DynkinType& type) {
    return (type.family == 'A' && type.rank <= 2) || (type.family == 'B' && type.rank == 2) ||
           (type.family == 'C' && type.rank == 2);
}

ModuleRep build_module(const DynkinType& type, const Weight& mu, const QParam& q, bool allow_any) {
    if (mu.rank() != static_cast<std::size_t>(type.rank) || !mu.is_dominant())
        throw std::invalid_argument("build_module: " + mu.str() + " is not a dominant weight of " + type.name());
    if (!allow_any && !in_module_whitelist(type))
        throw std::invalid_argument("build_module: no explicit modules for " + type.name());
    ModuleRep m;
    m.type = type;
    m.cartan = lattice::cartan_matrix(type);
    m.highest = mu;
    m.q = q;
    const std::size_t r = m.rank();
    std::vector<Weight> roots;
    for (std::size_t i = 0; i < r; ++i) roots.push_back(lattice::simple_root(m.cartan, i));

    m.weights.push_back(mu);
    m.depth.push_back(0);
    m.word.emplace_back(ModuleRep::kNoParent, 0);
    m.e.assign(r, std::vector<SparseVector>(1));
    m.f.assign(r, std::vector<SparseVector>());

    struct Candidate {
        std::size_t parent, i;
        std::vector<SparseVector> e_image;
    };
    std::size_t begin = 0, end = 1;
    int level = 0;
    while (begin < end) {
        std::map<Weight, std::vector<Candidate>> groups;
        for (std::size_t i = 0; i < r; ++i) m.f[i].resize(end);
        for (std::size_t b = begin; b < end; ++b)
            for (std::size_t i = 0; i < r; ++i) {
                Candidate c{b, i, std::vector<SparseVector>(r)};
                // E_j F_i b = F_i E_j b + delta_ij [wt(b)(i)] b
                for (std::size_t j = 0; j < r; ++j) {
                    c.e_image[j] = m.apply_f(i, m.e[j][b]);
                    if (i == j) axpy(c.e_image[j], q_int(m.weights[b][i], m.qi(i)), ModuleRep::basis(b));
                }
                groups[m.weights[b] - roots[i]].push_back(std::move(c));
            }
        for (auto g = groups.rbegin(); g != groups.rend(); ++g) {
            auto& cands = g->second;
            std::map<std::pair<std::size_t, std::size_t>, std::size_t> rows;
            for (const auto& c : cands)
                for (std::size_t j = 0; j < r; ++j)
                    for (const auto& [idx, v] : c.e_image[j]) rows.try_emplace({j, idx}, rows.size());
            QMatrix mat(rows.size(), cands.size());
            for (std::size_t k = 0; k < cands.size(); ++k)
                for (std::size_t j = 0; j < r; ++j)
                    for (const auto& [idx, v] : cands[k].e_image[j]) mat(rows.at({j, idx}), k) = v;
            std::vector<std::size_t> pivots = rows.empty() ? std::vector<std::size_t>{} : rref(mat);
            std::vector<std::size_t> new_index(cands.size(), ModuleRep::kNoParent);
            for (std::size_t p : pivots) {
                new_index[p] = m.weights.size();
                m.weights.push_back(g->first);
                m.depth.push_back(level + 1);
                m.word.emplace_back(cands[p].parent, cands[p].i);
                for (std::size_t j = 0; j < r; ++j) m.e[j].push_back(cands[p].e_image[j]);
            }
            for (std::size_t k = 0; k < cands.size(); ++k) {
                SparseVector expr;
                if (new_index[k] != ModuleRep::kNoParent) {
                    expr = ModuleRep::basis(new_index[k]);
                } else {
                    for (std::size_t row = 0; row < pivots.size(); ++row)
                        if (mat(row, k) != 0) expr.emplace(new_index[pivots[row]], mat(row, k));
                }
                m.f[cands[k].i][cands[k].parent] = std::move(expr);
            }
        }
        begin = end;
        end = m.weights.size();
        ++level;
    }
    for (std::size_t i = 0; i < r; ++i) m.f[i].resize(m.dim());

    auto expected = lattice::weyl_dim(type, mu);
    if (expected != m.dim()) {
        std::ostringstream msg;
        msg << "build_module: dimension " << m.dim() << " of V_" << mu.str() << " differs from Weyl dimension "
            << expected.get_str();
        throw std::logic_error(msg.str());
    }
    return m;
}

namespace {

// Shared relation checks for modules and tensor spaces.
template <class Space>
std::optional<std::string> relation_violation(const Space& s, const CartanMatrix& cm, const QParam& q) {
    const std::size_t r = cm.rank();
    std::vector<Weight> roots;
    for (std::size_t i = 0; i < r; ++i) roots.push_back(lattice::simple_root(cm, i));
    auto describe = [](const std::string& rel, std::size_t i, std::size_t j, std::size_t b) {
        return rel + " (i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1) + ") fails on basis vector " +
               std::to_string(b);
    };
    auto has_weight = [&](const SparseVector& v, const Weight& w) {
        for (const auto& [idx, c] : v)
            if (s.weight_of(idx) != w) return false;
        return true;
    };
    for (std::size_t b = 0; b < s.dim(); ++b) {
        SparseVector v = ModuleRep::basis(b);
        Weight wt = s.weight_of(b);
        for (std::size_t i = 0; i < r; ++i) {
            Rational qi = q.power(cm.sym[i]);
            auto kv = s.apply_k(i, v);
            if (kv != scaled(v, qcat::pow(qi, wt[i]))) return describe("K_i eigenvalue", i, i, b);
            if (s.apply_k(i, kv, -1) != v) return describe("K_i K_i^-1 = 1", i, i, b);
            for (std::size_t j = 0; j < r; ++j) {
                // K_i E_j K_i^-1 = q_i^{a_ij} E_j amounts to E_j raising the weight by alpha_j
                if (!has_weight(s.apply_e(j, v), wt + roots[j])) return describe("K_i E_j K_i^-1", i, j, b);
                if (!has_weight(s.apply_f(j, v), wt - roots[j])) return describe("K_i F_j K_i^-1", i, j, b);
                SparseVector comm = s.apply_e(i, s.apply_f(j, v));
                axpy(comm, -1, s.apply_f(j, s.apply_e(i, v)));
                if (i == j) axpy(comm, -q_int(wt[i], qi), v);
                if (!comm.empty()) return describe("[E_i,F_j]", i, j, b);
                if (i == j) continue;
                const std::int64_t n = 1 - cm.a(i, j);
                for (int which = 0; which < 2; ++which) {
                    auto act = [&](std::size_t k, const SparseVector& x) {
                        return which == 0 ? s.apply_e(k, x) : s.apply_f(k, x);
                    };
                    SparseVector total;
                    for (std::int64_t k = 0; k <= n; ++k) {
                        SparseVector x = v;
                        for (std::int64_t t = 0; t < k; ++t) x = act(i, x);
                        x = act(j, x);
                        for (std::int64_t t = 0; t < n - k; ++t) x = act(i, x);
                        axpy(total, (k % 2 ? -1 : 1) * q_binomial(n, k, qi), x);
                    }
                    if (!total.empty()) return describe(which == 0 ? "Serre E" : "Serre F", i, j, b);
                }
            }
        }
    }
    return std::nullopt;
}

struct ModuleView {
    const ModuleRep& m;
    std::size_t dim() const { return m.dim(); }
    const Weight& weight_of(std::size_t b) const { return m.weights[b]; }
    SparseVector apply_e(std::size_t i, const SparseVector& v) const { return m.apply_e(i, v); }
    SparseVector apply_f(std::size_t i, const SparseVector& v) const { return m.apply_f(i, v); }
    SparseVector apply_k(std::size_t i, const SparseVector& v, int sign = 1) const { return m.apply_k(i, v, sign); }
};

}  // namespace

std::optional<std::string> check_relations(const ModuleRep& m) {
    for (std::size_t i = 0; i < m.rank(); ++i)
        if (!m.e[i][0].empty()) return "E_" + std::to_string(i + 1) + " xi != 0";
    return relation_violation(ModuleView{m}, m.cartan, m.q);
}

// ---------------------------------------------------------------------------

ModuleCache::ModuleCache(DynkinType type, QParam q, bool allow_any)
    : type_(type), q_(std::move(q)), allow_any_(allow_any), cartan_(lattice::cartan_matrix(type)) {}

std::shared_ptr<const ModuleRep> ModuleCache::get(const Weight& mu) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = modules_.find(mu);
        if (it != modules_.end()) return it->second;
    }
    auto built = std::make_shared<const ModuleRep>(build_module(type_, mu, q_, allow_any_));
    std::lock_guard<std::mutex> lock(mutex_);
    return modules_.try_emplace(mu, std::move(built)).first->second;
}

// ---------------------------------------------------------------------------

TensorSpace::TensorSpace(std::vector<std::shared_ptr<const ModuleRep>> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("TensorSpace: no factors");
    strides_.assign(factors_.size(), 1);
    dim_ = 1;
    for (std::size_t k = factors_.size(); k-- > 0;) {
        strides_[k] = dim_;
        dim_ *= factors_[k]->dim();
    }
}

std::vector<std::size_t> TensorSpace::split(std::size_t index) const {
    std::vector<std::size_t> parts(factors_.size());
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        parts[k] = index / strides_[k];
        index %= strides_[k];
    }
    return parts;
}

std::size_t TensorSpace::join(const std::vector<std::size_t>& parts) const {
    std::size_t index = 0;
    for (std::size_t k = 0; k < factors_.size(); ++k) index += parts[k] * strides_[k];
    return index;
}

Weight TensorSpace::weight_of(std::size_t index) const {
    auto parts = split(index);
    Weight w = Weight::zero(rank());
    for (std::size_t k = 0; k < parts.size(); ++k) w += factors_[k]->weights[parts[k]];
    return w;
}

std::vector<std::size_t> TensorSpace::weight_space(const Weight& w) const {
    std::vector<std::size_t> out;
    const std::size_t n = factors_.size();
    std::map<Weight, std::vector<std::size_t>> last;
    for (std::size_t b = 0; b < factors_[n - 1]->dim(); ++b) last[factors_[n - 1]->weights[b]].push_back(b);
    std::function<void(std::size_t, const Weight&, std::size_t)> rec = [&](std::size_t k, const Weight& rest,
                                                                           std::size_t base) {
        if (k + 1 == n) {
            auto it = last.find(rest);
            if (it != last.end())
                for (auto b : it->second) out.push_back(base + b * strides_[k]);
            return;
        }
        for (std::size_t b = 0; b < factors_[k]->dim(); ++b) rec(k + 1, rest - factors_[k]->weights[b], base + b * strides_[k]);
    };
    rec(0, w, 0);
    std::sort(out.begin(), out.end());
    return out;
}

SparseVector TensorSpace::apply_e(std::size_t i, const SparseVector& v) const {
    SparseVector out;
    for (const auto& [idx, c] : v) {
        auto parts = split(idx);
        Rational pre = c;
        for (std::size_t k = 0; k < factors_.size(); ++k) {
            const auto& m = *factors_[k];
            for (const auto& [b, x] : m.e[i][parts[k]]) {
                std::size_t target = idx - parts[k] * strides_[k] + b * strides_[k];
                axpy(out, pre * x, ModuleRep::basis(target));
            }
            pre *= m.k_value(i, parts[k]);
        }
    }
    return out;
}

SparseVector TensorSpace::apply_f(std::size_t i, const SparseVector& v) const {
    SparseVector out;
    for (const auto& [idx, c] : v) {
        auto parts = split(idx);
        Rational post = c;
        for (std::size_t k = factors_.size(); k-- > 0;) {
            const auto& m = *factors_[k];
            for (const auto& [b, x] : m.f[i][parts[k]]) {
                std::size_t target = idx - parts[k] * strides_[k] + b * strides_[k];
                axpy(out, post * x, ModuleRep::basis(target));
            }
            post *= m.k_value(i, parts[k], -1);
        }
    }
    return out;
}

SparseVector TensorSpace::apply_k(std::size_t i, const SparseVector& v, int sign) const {
    SparseVector out;
    for (const auto& [idx, c] : v) {
        auto parts = split(idx);
        Rational x = c;
        for (std::size_t k = 0; k < factors_.size(); ++k) x *= factors_[k]->k_value(i, parts[k], sign);
        out.emplace(idx, x);
    }
    return out;
}

TensorSpace TensorSpace::operator*(const TensorSpace& o) const {
    auto all = factors_;
    all.insert(all.end(), o.factors_.begin(), o.factors_.end());
    return TensorSpace(all);
}

SparseVector tensor(const SparseVector& x, const SparseVector& y, std::size_t dim_y) {
    SparseVector out;
    for (const auto& [a, c] : x)
        for (const auto& [b, d] : y) out.emplace(a * dim_y + b, c * d);
    return out;
}

namespace {

struct TensorView {
    const TensorSpace& w;
    std::size_t dim() const { return w.dim(); }
    Weight weight_of(std::size_t b) const { return w.weight_of(b); }
    SparseVector apply_e(std::size_t i, const SparseVector& v) const { return w.apply_e(i, v); }
    SparseVector apply_f(std::size_t i, const SparseVector& v) const { return w.apply_f(i, v); }
    SparseVector apply_k(std::size_t i, const SparseVector& v, int sign = 1) const { return w.apply_k(i, v, sign); }
};

}  // namespace

std::optional<std::string> check_relations(const TensorSpace& w) {
    return relation_violation(TensorView{w}, w.factors().front()->cartan, w.factors().front()->q);
}

std::vector<SparseVector> highest_weight_vectors(const TensorSpace& w, const Weight& nu) {
    auto space = w.weight_space(nu);
    if (space.empty()) return {};
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> rows;
    std::vector<std::vector<SparseVector>> images(space.size());
    for (std::size_t k = 0; k < space.size(); ++k)
        for (std::size_t i = 0; i < w.rank(); ++i) {
            images[k].push_back(w.apply_e(i, ModuleRep::basis(space[k])));
            for (const auto& [idx, c] : images[k].back()) rows.try_emplace({i, idx}, rows.size());
        }
    QMatrix mat(rows.size(), space.size());
    for (std::size_t k = 0; k < space.size(); ++k)
        for (std::size_t i = 0; i < w.rank(); ++i)
            for (const auto& [idx, c] : images[k][i]) mat(rows.at({i, idx}), k) = c;
    std::vector<SparseVector> out;
    if (rows.empty()) {
        for (auto idx : space) out.push_back(ModuleRep::basis(idx));
        return out;
    }
    for (const auto& v : null_space(mat)) {
        SparseVector s;
        for (std::size_t k = 0; k < space.size(); ++k)
            if (v[k] != 0) s.emplace(space[k], v[k]);
        out.push_back(std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------------------

Morphism::Morphism(std::shared_ptr<const ModuleRep> source, TensorSpace target, SparseVector top)
    : source_(std::move(source)), target_(std::move(target)), top_(std::move(top)) {
    if (top_.empty()) throw std::logic_error("Morphism: image of the highest weight vector is zero");
    for (const auto& [idx, c] : top_)
        if (target_.weight_of(idx) != source_->highest)
            throw std::logic_error("Morphism: image of xi has the wrong weight");
    for (std::size_t i = 0; i < target_.rank(); ++i)
        if (!target_.apply_e(i, top_).empty())
            throw std::logic_error("Morphism: image of xi is not killed by E_" + std::to_string(i + 1));
    cols_.resize(source_->dim());
    cols_[0] = top_;
}

const SparseVector& Morphism::column(std::size_t b) const {
    if (!cols_[b]) {
        auto [parent, i] = source_->word[b];
        cols_[b] = target_.apply_f(i, column(parent));
    }
    return *cols_[b];
}

SparseVector Morphism::apply(const SparseVector& x) const {
    SparseVector out;
    for (const auto& [b, c] : x) axpy(out, c, column(b));
    return out;
}

QMatrix Morphism::matrix() const {
    std::vector<SparseVector> cols;
    for (std::size_t b = 0; b < source_->dim(); ++b) cols.push_back(column(b));
    return to_matrix(cols, target_.dim());
}

std::optional<std::string> check_intertwiner(const Morphism& f) {
    const auto& src = f.source();
    const auto& w = f.target();
    for (std::size_t b = 0; b < src.dim(); ++b) {
        const auto& col = f.column(b);
        for (std::size_t i = 0; i < src.rank(); ++i) {
            std::string where = " (i=" + std::to_string(i + 1) + ") on basis vector " + std::to_string(b);
            if (f.apply(src.e[i][b]) != w.apply_e(i, col)) return "f E_i != Delta(E_i) f" + where;
            if (f.apply(src.f[i][b]) != w.apply_f(i, col)) return "f F_i != Delta(F_i) f" + where;
            if (scaled(col, src.k_value(i, b)) != w.apply_k(i, col)) return "f K_i != Delta(K_i) f" + where;
        }
    }
    return std::nullopt;
}

SparseVector apply_left(const Morphism& f, const SparseVector& x, std::size_t dim_b) {
    SparseVector out;
    for (const auto& [idx, c] : x) {
        std::size_t a = idx / dim_b, b = idx % dim_b;
        for (const auto& [t, v] : f.column(a)) axpy(out, c * v, ModuleRep::basis(t * dim_b + b));
    }
    return out;
}

SparseVector apply_right(const Morphism& g, const SparseVector& x, std::size_t dim_b) {
    SparseVector out;
    const std::size_t dim_w = g.target().dim();
    for (const auto& [idx, c] : x) {
        std::size_t a = idx / dim_b, b = idx % dim_b;
        for (const auto& [t, v] : g.column(b)) axpy(out, c * v, ModuleRep::basis(a * dim_w + t));
    }
    return out;
}

Morphism morphism_T(ModuleCache& cache, const Weight& mu, const Weight& eta) {
    TensorSpace w({cache.get(mu), cache.get(eta)});
    return Morphism(cache.get(mu + eta), w, ModuleRep::basis(0));
}

Morphism morphism_tau(ModuleCache& cache, std::size_t i, const Weight& mu, const Weight& eta) {
    if (i >= mu.rank() || mu[i] < 1 || eta[i] < 1)
        throw std::invalid_argument("morphism_tau: need mu(i), eta(i) >= 1 (i=" + std::to_string(i + 1) + ", mu=" +
                                    mu.str() + ", eta=" + eta.str() + ")");
    auto vm = cache.get(mu);
    auto ve = cache.get(eta);
    const Rational qi = vm->qi(i);
    SparseVector top = tensor(ModuleRep::basis(0), ve->f[i][0], ve->dim());
    top = scaled(top, q_int(mu[i], qi));
    axpy(top, -qcat::pow(qi, mu[i]) * q_int(eta[i], qi), tensor(vm->f[i][0], ModuleRep::basis(0), ve->dim()));
    Weight kappa = mu + eta - lattice::simple_root(cache.cartan(), i);
    return Morphism(cache.get(kappa), TensorSpace({vm, ve}), top);
}

TauIdentityResult check_tau_identity(ModuleCache& cache, std::size_t i, const Weight& mu, const Weight& eta,
                                     const Weight& nu, IdentityMode mode) {
    if (i >= mu.rank() || mu[i] < 1 || eta[i] < 1 || nu[i] < 1)
        throw std::invalid_argument("check_tau_identity: need mu(i), eta(i), nu(i) >= 1");
    const Weight alpha = lattice::simple_root(cache.cartan(), i);
    const Rational qi = cache.q().power(cache.cartan().sym[i]);
    const std::size_t dim_nu = cache.get(nu)->dim();

    Morphism tau1 = morphism_tau(cache, i, mu + eta, nu);
    Morphism t1 = morphism_T(cache, mu, eta);
    Morphism t2 = morphism_T(cache, mu + eta - alpha, nu);
    Morphism tau2 = morphism_tau(cache, i, mu, eta);
    Morphism t3 = morphism_T(cache, mu, eta + nu - alpha);
    Morphism tau3 = morphism_tau(cache, i, eta, nu);
    const std::size_t dim_mid = t3.target().factors()[1]->dim();

    const Rational ce = q_int(eta[i], qi), cn = q_int(nu[i], qi), cme = q_int(mu[i] + eta[i], qi);
    TauIdentityResult res;
    res.holds = true;
    const std::size_t ncols = mode == IdentityMode::cyclic ? 1 : tau1.source().dim();
    for (std::size_t b = 0; b < ncols; ++b) {
        SparseVector x = ModuleRep::basis(b);
        SparseVector a = apply_left(t1, tau1.apply(x), dim_nu);
        SparseVector bb = apply_left(tau2, t2.apply(x), dim_nu);
        SparseVector c = apply_right(tau3, t3.apply(x), dim_mid);
        SparseVector diff = scaled(a, ce);
        axpy(diff, -cn, bb);
        axpy(diff, -cme, c);
        ++res.columns_compared;
        if (b == 0) {
            res.lhs_first = a;
            res.lhs_second = bb;
            res.rhs = c;
        }
        if (!diff.empty() && res.holds) {
            res.holds = false;
            res.violation = "identity fails on basis vector " + std::to_string(b) + " of V_" +
                            tau1.source().highest.str() + " (" + std::to_string(diff.size()) + " nonzero coordinates)";
        }
    }
    // two module maps out of V_kappa are proportional iff their values on xi are
    if (!res.lhs_first.empty()) {
        const auto& [k, v] = *res.lhs_first.begin();
        auto it = res.lhs_second.find(k);
        Rational ratio = it == res.lhs_second.end() ? Rational(0) : it->second / v;
        SparseVector rest = res.lhs_second;
        axpy(rest, -ratio, res.lhs_first);
        res.independent = !rest.empty();
    }
    if (res.holds && !res.independent) res.violation = "first two composites are linearly dependent";
    return res;
}

}  // namespace qcat::uqg
