#include "qcat/invariant.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcat::invariant {

using cohomology::CircleValue;
using lattice::ZMatrix;

std::string key_str(const BlockKey& k) { return "(" + k[0].str() + "|" + k[1].str() + "|" + k[2].str() + ")"; }

// ---------------------------------------------------------------------------
// Block

Block::Block(PhaseRational scalar, std::size_t mult) : scalar_(std::move(scalar)), mult_(mult) {
    if (mult == 0) throw std::invalid_argument("Block: zero multiplicity");
}

Block::Block(const QMatrix& m) : mult_(m.rows()) {
    if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("Block: matrix must be square and nonempty");
    if (rank(m) != m.rows()) throw std::domain_error("Block: singular matrix");
    bool scalar = true;
    for (std::size_t r = 0; r < m.rows() && scalar; ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != (r == c ? m(0, 0) : Rational(0))) {
                scalar = false;
                break;
            }
    if (scalar)
        scalar_ = PhaseRational(m(0, 0));
    else
        matrix_ = m;
}

const PhaseRational& Block::scalar() const {
    if (matrix_) throw std::logic_error("Block: not a scalar block");
    return scalar_;
}

QMatrix Block::to_matrix() const {
    if (matrix_) return *matrix_;
    return QMatrix::identity(mult_).scaled(scalar_.rational());
}

Block Block::operator*(const Block& o) const {
    if (mult_ != o.mult_) throw std::invalid_argument("Block: multiplicity mismatch");
    if (is_scalar() && o.is_scalar()) return Block(scalar_ * o.scalar_, mult_);
    return Block(to_matrix() * o.to_matrix());
}

Block Block::inverse() const {
    if (is_scalar()) return Block(scalar_.inverse(), mult_);
    return Block(qcat::inverse(*matrix_));
}

bool Block::operator==(const Block& o) const {
    return mult_ == o.mult_ && matrix_ == o.matrix_ && (matrix_ || scalar_ == o.scalar_);
}

std::string Block::str() const {
    if (is_scalar()) return scalar_.str();
    std::string s = "[";
    for (std::size_t r = 0; r < mult_; ++r) {
        s += r ? ",[" : "[";
        for (std::size_t c = 0; c < mult_; ++c) s += (c ? "," : "") + to_string((*matrix_)(r, c));
        s += "]";
    }
    return s + "]";
}

// ---------------------------------------------------------------------------
// Truncation

std::size_t Truncation::intern(const Weight& w) {
    auto [it, inserted] = ids_.try_emplace(w, weights_.size());
    if (inserted) weights_.push_back(w);
    return it->second;
}

std::optional<std::size_t> Truncation::id(const Weight& w) const {
    auto it = ids_.find(w);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Truncation::pair_index(std::size_t mu, std::size_t eta) const {
    auto it = pair_ids_.find({mu, eta});
    if (it == pair_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Truncation::pair_index(const Weight& mu, const Weight& eta) const {
    auto a = id(mu), b = id(eta);
    if (!a || !b) return std::nullopt;
    return pair_index(*a, *b);
}

std::optional<std::size_t> Truncation::position(std::size_t pair, std::size_t nu) const {
    const auto& c = pairs_[pair].constituents;
    auto it = std::lower_bound(c.begin(), c.end(), std::make_pair(nu, std::int64_t{0}),
                               [](const auto& x, const auto& y) { return x.first < y.first; });
    if (it == c.end() || it->first != nu) return std::nullopt;
    return static_cast<std::size_t>(it - c.begin());
}

std::size_t Truncation::block_count() const {
    std::size_t n = 0;
    for (const auto& p : pairs_) n += p.constituents.size();
    return n;
}

bool Truncation::multiplicity_free() const {
    for (const auto& p : pairs_)
        for (const auto& [nu, m] : p.constituents)
            if (m != 1) return false;
    return true;
}

std::shared_ptr<const Truncation> Truncation::make(const DynkinType& type, int bound, Exec exec) {
    if (bound < 0) throw std::invalid_argument("Truncation: negative bound");
    auto t = std::shared_ptr<Truncation>(new Truncation());
    t->type_ = type;
    t->bound_ = bound;
    t->cartan_ = lattice::cartan_matrix(type);
    auto rs = lattice::root_system(t->cartan_);
    auto base = lattice::dominant_weights_up_to(static_cast<std::size_t>(type.rank), bound);
    for (const auto& w : base) t->intern(w);
    t->base_ = base.size();

    std::vector<lattice::WeightMultiplicities> chars(base.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (std::size_t k = 0; k < base.size(); ++k) chars[k] = lattice::weight_multiplicities(rs, base[k]);

    // constituents of base pairs give the intermediate weights lambda
    const std::size_t n = base.size();
    std::vector<lattice::Decomposition> first(n * n);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (std::size_t k = 0; k < n * n; ++k) first[k] = lattice::klimyk_decompose(rs, base[k / n], chars[k % n]);
    std::set<Weight> lambdas;
    for (const auto& d : first)
        for (const auto& [w, m] : d) lambdas.insert(w);

    // pairs (lambda, nu) and (mu, lambda); the base factor supplies the character
    struct Job {
        Weight left, right;
        std::size_t base_factor;
        bool base_on_right;
    };
    std::vector<Job> jobs;
    std::set<std::pair<Weight, Weight>> seen;
    for (const auto& l : lambdas)
        for (std::size_t k = 0; k < n; ++k) {
            if (seen.insert({l, base[k]}).second) jobs.push_back({l, base[k], k, true});
            if (seen.insert({base[k], l}).second) jobs.push_back({base[k], l, k, false});
        }
    std::vector<lattice::Decomposition> decs(jobs.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        const auto& j = jobs[k];
        decs[k] = lattice::klimyk_decompose(rs, j.base_on_right ? j.left : j.right, chars[j.base_factor]);
    }
    std::vector<std::size_t> order(jobs.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return std::tie(jobs[a].left, jobs[a].right) < std::tie(jobs[b].left, jobs[b].right); });
    for (std::size_t k : order) {
        Pair p{t->intern(jobs[k].left), t->intern(jobs[k].right), {}};
        for (const auto& [w, m] : decs[k]) p.constituents.emplace_back(t->intern(w), m);
        std::sort(p.constituents.begin(), p.constituents.end());
        t->pair_ids_[{p.mu, p.eta}] = t->pairs_.size();
        t->pairs_.push_back(std::move(p));
    }
    return t;
}

// ---------------------------------------------------------------------------
// BlockCocycle

BlockCocycle::BlockCocycle(std::shared_ptr<const Truncation> t) : t_(std::move(t)) {
    blocks_.resize(t_->pairs().size());
    for (std::size_t p = 0; p < blocks_.size(); ++p)
        for (const auto& [nu, m] : t_->pairs()[p].constituents) blocks_[p].emplace_back(PhaseRational(), static_cast<std::size_t>(m));
}

namespace {

std::pair<std::size_t, std::size_t> locate(const Truncation& t, const Weight& mu, const Weight& eta, const Weight& nu) {
    auto p = t.pair_index(mu, eta);
    auto n = t.id(nu);
    std::optional<std::size_t> pos;
    if (p && n) pos = t.position(*p, *n);
    if (!pos) throw std::out_of_range("block " + key_str({mu, eta, nu}) + " absent from truncation");
    return {*p, *pos};
}

}  // namespace

const Block& BlockCocycle::at(const Weight& mu, const Weight& eta, const Weight& nu) const {
    auto [p, k] = locate(*t_, mu, eta, nu);
    return blocks_[p][k];
}

Block& BlockCocycle::at(const Weight& mu, const Weight& eta, const Weight& nu) {
    auto [p, k] = locate(*t_, mu, eta, nu);
    return blocks_[p][k];
}

BlockKey BlockCocycle::key(std::size_t pair, std::size_t pos) const {
    const auto& p = t_->pairs()[pair];
    return {t_->weight(p.mu), t_->weight(p.eta), t_->weight(p.constituents[pos].first)};
}

BlockCocycle BlockCocycle::operator*(const BlockCocycle& o) const {
    if (t_ != o.t_) throw std::invalid_argument("BlockCocycle: different truncations");
    BlockCocycle out(t_);
    for (std::size_t p = 0; p < blocks_.size(); ++p)
        for (std::size_t k = 0; k < blocks_[p].size(); ++k) out.blocks_[p][k] = blocks_[p][k] * o.blocks_[p][k];
    return out;
}

BlockCocycle BlockCocycle::inverse() const {
    BlockCocycle out(t_);
    for (std::size_t p = 0; p < blocks_.size(); ++p)
        for (std::size_t k = 0; k < blocks_[p].size(); ++k) out.blocks_[p][k] = blocks_[p][k].inverse();
    return out;
}

bool BlockCocycle::is_identity() const {
    for (const auto& row : blocks_)
        for (const auto& b : row)
            if (!b.is_identity()) return false;
    return true;
}

// ---------------------------------------------------------------------------

CentralElement central_from(const Truncation& t, const std::function<PhaseRational(const Weight&)>& f) {
    CentralElement a;
    for (std::size_t k = 0; k < t.weight_count(); ++k) a[t.weight(k)] = f(t.weight(k));
    return a;
}

GroupLikeDecision is_group_like(const CentralElement& a, const Truncation& t) {
    GroupLikeDecision d;
    auto value = [&](std::size_t id) -> const PhaseRational& {
        auto it = a.find(t.weight(id));
        if (it == a.end()) throw std::out_of_range("is_group_like: a is undefined at " + t.weight(id).str());
        return it->second;
    };
    for (const auto& p : t.pairs())
        for (const auto& [nu, m] : p.constituents)
            if (value(p.mu) * value(p.eta) != value(nu)) {
                d.violation = BlockKey{t.weight(p.mu), t.weight(p.eta), t.weight(nu)};
                return d;
            }
    d.group_like = true;
    auto pq = lattice::fundamental_group(t.cartan());
    d.character.assign(static_cast<std::size_t>(pq.group().order()), PhaseRational());
    for (std::size_t x = 0; x < d.character.size(); ++x) {
        // evaluate on a representative inside the truncation
        for (std::size_t id = 0; id < t.weight_count(); ++id)
            if (pq.project(t.weight(id)) == pq.group().element_at(x)) {
                d.character[x] = value(id);
                break;
            }
    }
    return d;
}

BlockCocycle make_Ec(const std::shared_ptr<const Truncation>& t, const cohomology::Cocycle2& c) {
    auto pq = lattice::fundamental_group(t->cartan());
    if (!(pq.group() == c.group())) throw std::invalid_argument("make_Ec: cocycle is not on P/Q of " + t->type().name());
    BlockCocycle e(t);
    for (std::size_t p = 0; p < t->pairs().size(); ++p) {
        const auto& pr = t->pairs()[p];
        auto v = PhaseRational::root_of_unity(c(pq.project(t->weight(pr.mu)), pq.project(t->weight(pr.eta))));
        for (std::size_t k = 0; k < pr.constituents.size(); ++k)
            e.block(p, k) = Block(v, static_cast<std::size_t>(pr.constituents[k].second));
    }
    return e;
}

BlockCocycle coboundary_block(const std::shared_ptr<const Truncation>& t, const CentralElement& a) {
    auto value = [&](std::size_t id) -> const PhaseRational& {
        auto it = a.find(t->weight(id));
        if (it == a.end()) throw std::out_of_range("coboundary_block: a is undefined at " + t->weight(id).str());
        return it->second;
    };
    BlockCocycle e(t);
    for (std::size_t p = 0; p < t->pairs().size(); ++p) {
        const auto& pr = t->pairs()[p];
        for (std::size_t k = 0; k < pr.constituents.size(); ++k)
            e.block(p, k) = Block(value(pr.mu) * value(pr.eta) / value(pr.constituents[k].first),
                                  static_cast<std::size_t>(pr.constituents[k].second));
    }
    return e;
}

// ---------------------------------------------------------------------------
// Recoupling

namespace {

// Highest weight vector spanning the constituent nu of V_a (x) V_b, as a module map.
class Embeddings {
public:
    Embeddings(uqg::ModuleCache& cache, const Truncation& t) : cache_(cache), t_(t) {}
    const uqg::Morphism& get(std::size_t a, std::size_t b, std::size_t nu) {
        auto key = std::array<std::size_t, 3>{a, b, nu};
        auto it = maps_.find(key);
        if (it != maps_.end()) return *it->second;
        uqg::TensorSpace w({cache_.get(t_.weight(a)), cache_.get(t_.weight(b))});
        auto hw = uqg::highest_weight_vectors(w, t_.weight(nu));
        if (hw.size() != 1) throw std::logic_error("Recoupling: constituent " + t_.weight(nu).str() + " is not multiplicity-free");
        auto m = std::make_unique<uqg::Morphism>(cache_.get(t_.weight(nu)), w, hw[0]);
        return *maps_.emplace(key, std::move(m)).first->second;
    }

private:
    uqg::ModuleCache& cache_;
    const Truncation& t_;
    std::map<std::array<std::size_t, 3>, std::unique_ptr<uqg::Morphism>> maps_;
};

struct TripleResult {
    std::vector<Recoupling::Constraint> constraints;
    std::size_t components = 0;
};

TripleResult recouple_triple(const Truncation& t, Embeddings& emb, uqg::ModuleCache& cache, std::size_t mu,
                             std::size_t eta, std::size_t nu) {
    TripleResult out;
    auto pid = [&](std::size_t a, std::size_t b) {
        auto p = t.pair_index(a, b);
        if (!p) throw std::logic_error("Recoupling: truncation misses pair " + t.weight(a).str() + " | " + t.weight(b).str());
        return *p;
    };
    const std::size_t p_me = pid(mu, eta), p_en = pid(eta, nu);
    std::set<std::size_t> kappas;
    for (const auto& [lam, m] : t.pairs()[p_me].constituents)
        for (const auto& [k, m2] : t.pairs()[pid(lam, nu)].constituents) kappas.insert(k);
    const std::size_t dim_nu = cache.get(t.weight(nu))->dim();
    for (std::size_t kappa : kappas) {
        std::vector<Recoupling::BlockRef> lrefs0, lrefs1, rrefs0, rrefs1;
        std::vector<SparseVector> vecs;
        for (std::size_t k = 0; k < t.pairs()[p_me].constituents.size(); ++k) {
            std::size_t lam = t.pairs()[p_me].constituents[k].first;
            std::size_t p_ln = pid(lam, nu);
            auto pos = t.position(p_ln, kappa);
            if (!pos) continue;
            vecs.push_back(uqg::apply_left(emb.get(mu, eta, lam), emb.get(lam, nu, kappa).top(), dim_nu));
            lrefs0.push_back({p_me, k});
            lrefs1.push_back({p_ln, *pos});
        }
        const std::size_t nl = vecs.size();
        for (std::size_t k = 0; k < t.pairs()[p_en].constituents.size(); ++k) {
            std::size_t lam = t.pairs()[p_en].constituents[k].first;
            std::size_t p_ml = pid(mu, lam);
            auto pos = t.position(p_ml, kappa);
            if (!pos) continue;
            const std::size_t dim_lam = cache.get(t.weight(lam))->dim();
            vecs.push_back(uqg::apply_right(emb.get(eta, nu, lam), emb.get(mu, lam, kappa).top(), dim_lam));
            rrefs0.push_back({p_en, k});
            rrefs1.push_back({p_ml, *pos});
        }
        if (vecs.size() != 2 * nl)
            throw std::logic_error("Recoupling: bracketings disagree on the multiplicity of " + t.weight(kappa).str());
        std::map<std::size_t, std::size_t> rows;
        for (const auto& v : vecs)
            for (const auto& [idx, c] : v) rows.try_emplace(idx, rows.size());
        QMatrix m(rows.size(), vecs.size());
        for (std::size_t c = 0; c < vecs.size(); ++c)
            for (const auto& [idx, v] : vecs[c]) m(rows.at(idx), c) = v;
        auto piv = rref(m);
        if (piv.size() != nl || (nl > 0 && piv[nl - 1] != nl - 1))
            throw std::logic_error("Recoupling: bracketings span different spaces at " + t.weight(kappa).str());
        ++out.components;
        for (std::size_t r = 0; r < nl; ++r)
            for (std::size_t c = 0; c < nl; ++c)
                if (m(r, nl + c) != 0)
                    out.constraints.push_back({{mu, eta, nu}, kappa, {lrefs0[r], lrefs1[r]}, {rrefs0[c], rrefs1[c]}});
    }
    return out;
}

}  // namespace

Recoupling Recoupling::compute(const std::shared_ptr<const Truncation>& t, const uqg::QParam& q, Exec exec) {
    if (!uqg::in_module_whitelist(t->type()))
        throw std::invalid_argument("Recoupling: no explicit modules for " + t->type().name());
    if (!t->multiplicity_free()) throw std::invalid_argument("Recoupling: truncation is not multiplicity-free");
    uqg::ModuleCache cache(t->type(), q);
    const std::size_t n = t->base_size();
    const std::size_t total = n * n * n;
    std::vector<TripleResult> results(total);
    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            Embeddings emb(cache, *t);
#pragma omp for schedule(dynamic)
            for (std::size_t k = 0; k < total; ++k)
                results[k] = recouple_triple(*t, emb, cache, k / (n * n), (k / n) % n, k % n);
        }
    } else {
        Embeddings emb(cache, *t);
        for (std::size_t k = 0; k < total; ++k) results[k] = recouple_triple(*t, emb, cache, k / (n * n), (k / n) % n, k % n);
    }
    Recoupling rec;
    rec.triples_ = total;
    for (auto& r : results) {
        rec.components_ += r.components;
        rec.constraints_.insert(rec.constraints_.end(), r.constraints.begin(), r.constraints.end());
    }
    return rec;
}

// ---------------------------------------------------------------------------

CocycleIdentityDecision verify_cocycle_identity(const BlockCocycle& e, IdentityPath path, const uqg::QParam& q,
                                                const Recoupling* recoupling, Exec exec) {
    const auto& t = e.truncation();
    CocycleIdentityDecision d;
    if (path == IdentityPath::automatic)
        path = (uqg::in_module_whitelist(t.type()) && t.multiplicity_free()) ? IdentityPath::operator_level
                                                                            : IdentityPath::reduction;
    const std::size_t n = t.base_size();
    if (path == IdentityPath::operator_level) {
        d.method = "operator";
        if (!uqg::in_module_whitelist(t.type()) || !t.multiplicity_free()) {
            d.applicable = false;
            d.violation = "operator path needs explicit multiplicity-free modules";
            return d;
        }
        std::optional<Recoupling> own;
        if (!recoupling) recoupling = &own.emplace(Recoupling::compute(e.truncation_ptr(), q, exec));
        d.triples_checked = recoupling->triples();
        auto val = [&](const Recoupling::BlockRef& r) -> const PhaseRational& { return e.block(r.pair, r.pos).scalar(); };
        for (const auto& c : recoupling->constraints()) {
            ++d.constraints_checked;
            auto lhs = val(c.left[0]) * val(c.left[1]);
            auto rhs = val(c.right[0]) * val(c.right[1]);
            if (lhs != rhs) {
                std::ostringstream msg;
                msg << "on " << t.weight(c.triple[0]).str() << " x " << t.weight(c.triple[1]).str() << " x "
                    << t.weight(c.triple[2]).str() << " at " << t.weight(c.kappa).str() << ": E"
                    << key_str(e.key(c.left[0].pair, c.left[0].pos)) << " E" << key_str(e.key(c.left[1].pair, c.left[1].pos))
                    << " = " << lhs.str() << " but E" << key_str(e.key(c.right[0].pair, c.right[0].pos)) << " E"
                    << key_str(e.key(c.right[1].pair, c.right[1].pos)) << " = " << rhs.str();
                d.violation = msg.str();
                return d;
            }
        }
        d.holds = true;
        return d;
    }

    d.method = "reduction";
    // each pair must act by a single scalar on the whole tensor product
    std::vector<PhaseRational> s(t.pairs().size());
    for (std::size_t p = 0; p < t.pairs().size(); ++p) {
        for (std::size_t k = 0; k < t.pairs()[p].constituents.size(); ++k) {
            const auto& b = e.block(p, k);
            if (!b.is_scalar() || b.scalar() != e.block(p, 0).scalar()) {
                d.applicable = false;
                d.violation = "block " + key_str(e.key(p, k)) + " differs from " + key_str(e.key(p, 0)) +
                              "; reduction needs blocks constant in nu";
                return d;
            }
        }
        s[p] = e.block(p, 0).scalar();
    }
    const std::size_t total = n * n * n;
    std::vector<std::string> failures(total);
    std::vector<char> inapplicable(total, 0);
    auto check = [&](std::size_t k) {
        std::size_t mu = k / (n * n), eta = (k / n) % n, nu = k % n;
        auto p_me = *t.pair_index(mu, eta), p_en = *t.pair_index(eta, nu);
        std::optional<PhaseRational> lhs, rhs;
        for (const auto& [lam, m] : t.pairs()[p_me].constituents) {
            auto p = t.pair_index(lam, nu);
            if (!p) {
                failures[k] = "truncation not closed: missing pair " + t.weight(lam).str() + " | " + t.weight(nu).str();
                return;
            }
            auto v = s[p_me] * s[*p];
            if (lhs && *lhs != v) inapplicable[k] = 1;
            lhs = v;
        }
        for (const auto& [lam, m] : t.pairs()[p_en].constituents) {
            auto p = t.pair_index(mu, lam);
            if (!p) {
                failures[k] = "truncation not closed: missing pair " + t.weight(mu).str() + " | " + t.weight(lam).str();
                return;
            }
            auto v = s[p_en] * s[*p];
            if (rhs && *rhs != v) inapplicable[k] = 1;
            rhs = v;
        }
        if (!inapplicable[k] && *lhs != *rhs)
            failures[k] = "on " + t.weight(mu).str() + " x " + t.weight(eta).str() + " x " + t.weight(nu).str() +
                          ": left side acts by " + lhs->str() + ", right side by " + rhs->str();
    };
#pragma omp parallel for schedule(dynamic, 64) if (exec == Exec::parallel)
    for (std::size_t k = 0; k < total; ++k) check(k);
    d.triples_checked = total;
    for (std::size_t k = 0; k < total; ++k) {
        if (!failures[k].empty()) {
            d.violation = failures[k];
            if (failures[k].rfind("truncation", 0) == 0) d.applicable = false;
            return d;
        }
        if (inapplicable[k]) {
            d.applicable = false;
            d.violation = "reduction does not apply: the left side is not a scalar on triple " + std::to_string(k);
            return d;
        }
    }
    d.holds = true;
    return d;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<SparseVector> sparse_columns(const QMatrix& m) {
    std::vector<SparseVector> cols(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0) cols[c].emplace(r, m(r, c));
    return cols;
}

SparseVector mul(const std::vector<SparseVector>& cols, const SparseVector& v) {
    SparseVector out;
    for (const auto& [b, c] : v) axpy(out, c, cols[b]);
    return out;
}

// Coordinates of each target in terms of the basis vectors; nothing if some target leaves the span.
std::optional<QMatrix> coordinates(const std::vector<SparseVector>& basis, const std::vector<SparseVector>& targets) {
    std::map<std::size_t, std::size_t> rows;
    for (const auto* list : {&basis, &targets})
        for (const auto& v : *list)
            for (const auto& [idx, c] : v) rows.try_emplace(idx, rows.size());
    const std::size_t m = basis.size();
    QMatrix a(rows.size(), m + targets.size());
    for (std::size_t c = 0; c < m; ++c)
        for (const auto& [idx, v] : basis[c]) a(rows.at(idx), c) = v;
    for (std::size_t c = 0; c < targets.size(); ++c)
        for (const auto& [idx, v] : targets[c]) a(rows.at(idx), m + c) = v;
    auto piv = rref(a);
    if (piv.size() != m || (m > 0 && piv[m - 1] != m - 1)) return std::nullopt;
    QMatrix out(m, targets.size());
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < targets.size(); ++c) out(r, c) = a(r, m + c);
    return out;
}

}  // namespace

InvarianceDecision verify_invariance(const RawCocycle& raw, uqg::ModuleCache& cache) {
    InvarianceDecision d;
    for (const auto& [pair, op] : raw) {
        const auto& [mu, eta] = pair;
        uqg::TensorSpace w({cache.get(mu), cache.get(eta)});
        std::string where = " on V_" + mu.str() + " x V_" + eta.str();
        if (op.rows() != w.dim() || op.cols() != w.dim()) {
            d.violation = "operator has the wrong size" + where;
            return d;
        }
        auto cols = sparse_columns(op);
        for (std::size_t b = 0; b < w.dim(); ++b) {
            auto e_b = uqg::ModuleRep::basis(b);
            for (std::size_t i = 0; i < w.rank(); ++i) {
                std::string gen = std::to_string(i + 1);
                if (mul(cols, w.apply_e(i, e_b)) != w.apply_e(i, cols[b])) {
                    d.violation = "does not commute with Delta(E_" + gen + ")" + where;
                    return d;
                }
                if (mul(cols, w.apply_f(i, e_b)) != w.apply_f(i, cols[b])) {
                    d.violation = "does not commute with Delta(F_" + gen + ")" + where;
                    return d;
                }
                if (mul(cols, w.apply_k(i, e_b)) != w.apply_k(i, cols[b])) {
                    d.violation = "does not commute with Delta(K_" + gen + ")" + where;
                    return d;
                }
            }
        }
        for (const auto& [nu, mult] : lattice::klimyk_decompose(cache.type(), mu, eta)) {
            auto hw = uqg::highest_weight_vectors(w, nu);
            std::vector<SparseVector> images;
            for (const auto& h : hw) images.push_back(mul(cols, h));
            auto coords = coordinates(hw, images);
            if (!coords) {
                d.violation = "image of a highest weight vector leaves its isotypic component" + where;
                return d;
            }
            d.blocks.emplace(BlockKey{mu, eta, nu}, Block(*coords));
        }
    }
    d.invariant = true;
    return d;
}

QMatrix raw_operator(const BlockCocycle& e, uqg::ModuleCache& cache, const Weight& mu, const Weight& eta) {
    const auto& t = e.truncation();
    auto p = t.pair_index(mu, eta);
    if (!p) throw std::out_of_range("raw_operator: pair " + mu.str() + " | " + eta.str() + " outside truncation");
    uqg::TensorSpace w({cache.get(mu), cache.get(eta)});
    std::vector<SparseVector> basis, images;
    for (std::size_t k = 0; k < t.pairs()[*p].constituents.size(); ++k) {
        const Weight& nu = t.weight(t.pairs()[*p].constituents[k].first);
        auto hw = uqg::highest_weight_vectors(w, nu);
        QMatrix b = e.block(*p, k).to_matrix();
        std::vector<uqg::Morphism> maps;
        for (const auto& h : hw) maps.emplace_back(cache.get(nu), w, h);
        for (std::size_t l = 0; l < hw.size(); ++l)
            for (std::size_t v = 0; v < maps[l].source().dim(); ++v) {
                basis.push_back(maps[l].column(v));
                SparseVector img;
                for (std::size_t r = 0; r < hw.size(); ++r) axpy(img, b(r, l), maps[r].column(v));
                images.push_back(std::move(img));
            }
    }
    if (basis.size() != w.dim()) throw std::logic_error("raw_operator: isotypic components do not fill the tensor product");
    QMatrix pm(w.dim(), w.dim()), dm(w.dim(), w.dim());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        for (const auto& [r, v] : basis[c]) pm(r, c) = v;
        for (const auto& [r, v] : images[c]) dm(r, c) = v;
    }
    return dm * inverse(pm);
}

// ---------------------------------------------------------------------------

monoid::MonoidCocycle extract_cE(const BlockCocycle& e) {
    const auto& t = e.truncation();
    monoid::MonoidCocycle c(t.type(), t.bound());
    for (const auto& mu : c.weights())
        for (const auto& eta : c.weights()) c(mu, eta) = e.at(mu, eta, mu + eta).scalar();
    return c;
}

PhaseRational extract_ci(const BlockCocycle& e, std::size_t i, const Weight& mu, const Weight& eta) {
    if (i >= mu.rank() || mu[i] < 1 || eta[i] < 1)
        throw std::invalid_argument("extract_ci: need mu(i), eta(i) >= 1 for " + mu.str() + ", " + eta.str());
    return e.at(mu, eta, mu + eta - lattice::simple_root(e.truncation().cartan(), i)).scalar();
}

std::map<std::pair<Weight, Weight>, PhaseRational> extract_ci(const BlockCocycle& e, std::size_t i) {
    const auto& t = e.truncation();
    std::map<std::pair<Weight, Weight>, PhaseRational> out;
    for (std::size_t a = 0; a < t.base_size(); ++a)
        for (std::size_t b = 0; b < t.base_size(); ++b)
            if (t.weight(a)[i] >= 1 && t.weight(b)[i] >= 1)
                out.emplace(std::make_pair(t.weight(a), t.weight(b)), extract_ci(e, i, t.weight(a), t.weight(b)));
    return out;
}

EigenvalueDecision eigenvalue_identity_check(const BlockCocycle& e, std::size_t i, const Weight& mu, const Weight& eta,
                                             const Weight& nu) {
    if (i >= mu.rank() || mu[i] < 1 || eta[i] < 1 || nu[i] < 1)
        throw std::invalid_argument("eigenvalue_identity_check: need mu(i), eta(i), nu(i) >= 1");
    const Weight alpha = lattice::simple_root(e.truncation().cartan(), i);
    auto cE = [&](const Weight& a, const Weight& b) { return e.at(a, b, a + b).scalar(); };
    auto ci = [&](const Weight& a, const Weight& b) { return e.at(a, b, a + b - alpha).scalar(); };
    EigenvalueDecision d;
    d.values = {cE(mu, eta) * ci(mu + eta, nu), ci(mu, eta) * cE(mu + eta - alpha, nu),
                ci(eta, nu) * cE(mu, eta + nu - alpha)};
    d.holds = d.values[0] == d.values[1] && d.values[1] == d.values[2];
    return d;
}

RootKernelChain root_kernel_chain(const BlockCocycle& e) {
    const auto& t = e.truncation();
    RootKernelChain r;
    auto b = [&](const Weight& x, const Weight& y) { return e.at(x, y, x + y).scalar() / e.at(y, x, x + y).scalar(); };
    for (std::size_t i = 0; i < t.cartan().rank(); ++i) {
        const Weight alpha = lattice::simple_root(t.cartan(), i);
        for (std::size_t id = 0; id < t.base_size(); ++id) {
            const Weight& mu = t.weight(id);
            if (mu[i] < 1) continue;
            Weight x = 2 * mu - alpha;
            // the eigenvalue identity at (mu, mu, mu) gives c_E(2mu - alpha_i, mu) = c_E(mu, 2mu - alpha_i)
            auto ev = eigenvalue_identity_check(e, i, mu, mu, mu);
            auto bx = b(x, mu), bmu = b(mu, mu);
            ++r.checked;
            if (!ev.holds || !bx.is_one() || !bmu.is_one()) {
                r.violation = "i=" + std::to_string(i + 1) + ", mu=" + mu.str() + ": b(2mu-alpha_i, mu) = " + bx.str() +
                              ", b(mu, mu) = " + bmu.str() + ", so b(alpha_i, mu) = " + (bmu * bmu / bx).str();
                return r;
            }
        }
    }
    r.holds = true;
    return r;
}

// ---------------------------------------------------------------------------

namespace {

// Integer solution of L x = rhs for square nonsingular L; nothing if not integral.
std::optional<std::vector<BigInt>> solve_integral(const lattice::IntMatrix& l, const std::vector<Rational>& rhs) {
    const std::size_t n = l.rows();
    QMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = Rational(l(r, c));
    std::vector<Rational> x;
    if (!solve_unique(m, rhs, x)) return std::nullopt;
    std::vector<BigInt> out;
    for (auto& v : x) {
        if (v.get_den() != 1) return std::nullopt;
        out.push_back(v.get_num());
    }
    return out;
}

std::map<BigInt, std::int64_t> factor(BigInt n) {
    std::map<BigInt, std::int64_t> f;
    for (BigInt p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    if (n > 1) ++f[n];
    return f;
}

// s_j with prod_j s_j^{(alpha_i)_j} = k_i for every i; nothing if not representable.
std::optional<std::vector<PhaseRational>> character_with_root_values(const lattice::CartanMatrix& cm,
                                                                    const std::vector<PhaseRational>& k) {
    const std::size_t r = cm.rank();
    lattice::IntMatrix l(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        Weight a = lattice::simple_root(cm, i);
        for (std::size_t j = 0; j < r; ++j) l(i, j) = a[j];
    }
    std::vector<Rational> mags(r, Rational(1));
    std::vector<PhaseRational> s(r, PhaseRational());
    // magnitudes, prime by prime
    std::set<BigInt> primes;
    for (const auto& v : k) {
        Rational a = abs(v.coeff());
        for (const auto& [p, e] : factor(a.get_num())) primes.insert(p);
        for (const auto& [p, e] : factor(a.get_den())) primes.insert(p);
    }
    for (const auto& p : primes) {
        std::vector<Rational> rhs(r);
        for (std::size_t i = 0; i < r; ++i) {
            Rational a = abs(k[i].coeff());
            std::int64_t e = 0;
            BigInt num = a.get_num(), den = a.get_den();
            while (num % p == 0) num /= p, ++e;
            while (den % p == 0) den /= p, --e;
            rhs[i] = e;
        }
        auto x = solve_integral(l, rhs);
        if (!x) return std::nullopt;
        for (std::size_t j = 0; j < r; ++j) s[j] *= PhaseRational(qcat::pow(Rational(p), (*x)[j].get_si()));
    }
    // phases over Q/Z
    std::vector<CircleValue> angles;
    for (const auto& v : k) angles.push_back(PhaseRational(v.coeff() / abs(v.coeff()), v.phase()).angle());
    std::int64_t den = cohomology::common_denominator(angles);
    ZMatrix lz(l);
    BigInt det = abs(lattice::determinant(lz));
    BigInt modulus = BigInt(den) * det;
    std::vector<BigInt> rhs;
    for (const auto& a : angles) rhs.push_back(BigInt(a.num()) * (modulus / a.den()));
    auto y = cohomology::solve_congruences(lz, rhs, modulus);
    if (!y) return std::nullopt;
    for (std::size_t j = 0; j < r; ++j)
        s[j] *= PhaseRational::root_of_unity(CircleValue((*y)[j].get_si(), modulus.get_si()));
    return s;
}

}  // namespace

NormalizeResult normalize_cocycle(const BlockCocycle& e, const CentralElement& a) {
    const auto t = e.truncation_ptr();
    NormalizeResult res{false, coboundary_block(t, a).inverse() * e, std::nullopt, ""};
    const std::size_t r = t->cartan().rank();
    std::vector<Weight> roots;
    for (std::size_t i = 0; i < r; ++i) roots.push_back(lattice::simple_root(t->cartan(), i));

    auto scan = [&](const BlockCocycle& x, std::vector<std::optional<PhaseRational>>* constants) -> std::string {
        for (std::size_t p = 0; p < t->pairs().size(); ++p) {
            const auto& pr = t->pairs()[p];
            const Weight &mu = t->weight(pr.mu), &eta = t->weight(pr.eta);
            auto top = t->id(mu + eta);
            auto pos = top ? t->position(p, *top) : std::nullopt;
            if (!pos) return "missing top block on " + mu.str() + " | " + eta.str();
            if (!x.block(p, *pos).is_identity())
                return "T block " + key_str(x.key(p, *pos)) + " = " + x.block(p, *pos).str() + " after dividing by the witness";
            for (std::size_t i = 0; i < r; ++i) {
                if (mu[i] < 1 || eta[i] < 1) continue;
                auto nid = t->id(mu + eta - roots[i]);
                auto q = nid ? t->position(p, *nid) : std::nullopt;
                if (!q) continue;
                const Block& b = x.block(p, *q);
                if (!b.is_scalar()) return "tau block " + key_str(x.key(p, *q)) + " is not scalar";
                if (!constants) {
                    if (!b.is_identity()) return "tau block " + key_str(x.key(p, *q)) + " = " + b.str();
                    continue;
                }
                auto& c = (*constants)[i];
                if (!c) c = b.scalar();
                else if (*c != b.scalar())
                    return "tau blocks for i=" + std::to_string(i + 1) + " are not constant: " + key_str(x.key(p, *q)) +
                           " = " + b.str() + " versus " + c->str();
            }
        }
        return "";
    };

    std::vector<std::optional<PhaseRational>> constants(r);
    std::string problem = scan(res.cocycle, &constants);
    if (!problem.empty()) {
        res.report = problem;
        return res;
    }
    bool all_one = true;
    for (const auto& c : constants) all_one = all_one && (!c || c->is_one());
    if (all_one) {
        res.normalized = true;
        res.report = "normalized by the witness";
        return res;
    }
    std::vector<PhaseRational> k(r);
    for (std::size_t i = 0; i < r; ++i) k[i] = constants[i].value_or(PhaseRational());
    auto s = character_with_root_values(t->cartan(), k);
    if (!s) {
        res.report = "tau blocks are constant but no representable character t has t(alpha_i) equal to them";
        return res;
    }
    auto tchar = central_from(*t, [&](const Weight& w) {
        PhaseRational v;
        for (std::size_t j = 0; j < r; ++j) v *= (*s)[j].pow(w[j]);
        return v;
    });
    res.cocycle = coboundary_block(t, tchar).inverse() * res.cocycle;
    res.character = s;
    problem = scan(res.cocycle, nullptr);
    if (!problem.empty()) {
        res.report = "after the character adjustment: " + problem;
        return res;
    }
    res.normalized = true;
    res.report = "normalized by the witness and a monoid character";
    return res;
}

// ---------------------------------------------------------------------------

namespace {

// Row echelon basis over Z of the span of the inserted rows.
class IntegerEchelon {
public:
    explicit IntegerEchelon(std::size_t n) : n_(n) {}

    void insert(std::vector<BigInt> v) {
        for (std::size_t col = 0; col < n_; ++col) {
            if (v[col] == 0) continue;
            auto it = rows_.find(col);
            if (it == rows_.end()) {
                if (v[col] < 0)
                    for (auto& x : v) x = -x;
                rows_.emplace(col, std::move(v));
                return;
            }
            auto& b = it->second;
            if (v[col] % b[col] == 0) {
                BigInt f = v[col] / b[col];
                for (std::size_t c = col; c < n_; ++c) v[c] -= f * b[c];
            } else {
                // extended gcd step keeps the lattice unchanged
                BigInt g, s, t;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[col].get_mpz_t(), v[col].get_mpz_t());
                BigInt bq = b[col] / g, vq = v[col] / g;
                std::vector<BigInt> nb(n_), nv(n_);
                for (std::size_t c = 0; c < n_; ++c) {
                    nb[c] = s * b[c] + t * v[c];
                    nv[c] = bq * v[c] - vq * b[c];
                }
                b = std::move(nb);
                v = std::move(nv);
            }
        }
    }

    bool contains(std::vector<BigInt> v) const {
        for (std::size_t col = 0; col < n_; ++col) {
            if (v[col] == 0) continue;
            auto it = rows_.find(col);
            if (it == rows_.end() || v[col] % it->second[col] != 0) return false;
            BigInt f = v[col] / it->second[col];
            for (std::size_t c = col; c < n_; ++c) v[c] -= f * it->second[c];
        }
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    ZMatrix matrix() const {
        ZMatrix m(rows_.size(), n_);
        std::size_t r = 0;
        for (const auto& [col, row] : rows_) {
            for (std::size_t c = 0; c < n_; ++c) m(r, c) = row[c];
            ++r;
        }
        return m;
    }

private:
    std::size_t n_;
    std::map<std::size_t, std::vector<BigInt>> rows_;
};

}  // namespace

NormalizedSolution solve_normalized(int bound, bool drop_tau, const uqg::QParam& q, Exec exec) {
    auto t = Truncation::make(DynkinType::make('A', 1), bound, exec);
    auto rec = Recoupling::compute(t, q, exec);
    std::map<Recoupling::BlockRef, std::size_t> unknown;
    std::vector<Recoupling::BlockRef> refs;
    for (std::size_t p = 0; p < t->pairs().size(); ++p) {
        const auto& pr = t->pairs()[p];
        int mu = t->weight(pr.mu)[0], eta = t->weight(pr.eta)[0];
        for (std::size_t k = 0; k < pr.constituents.size(); ++k) {
            int nu = t->weight(pr.constituents[k].first)[0];
            bool fixed = nu == mu + eta || (!drop_tau && mu >= 1 && eta >= 1 && nu == mu + eta - 2);
            if (fixed) continue;
            unknown.emplace(Recoupling::BlockRef{p, k}, refs.size());
            refs.push_back({p, k});
        }
    }
    NormalizedSolution sol;
    sol.unknowns = refs.size();
    IntegerEchelon ech(refs.size());
    std::set<std::vector<BigInt>> seen;
    for (const auto& c : rec.constraints()) {
        std::vector<BigInt> row(refs.size());
        for (const auto& r : c.left)
            if (auto it = unknown.find(r); it != unknown.end()) row[it->second] += 1;
        for (const auto& r : c.right)
            if (auto it = unknown.find(r); it != unknown.end()) row[it->second] -= 1;
        bool zero = std::all_of(row.begin(), row.end(), [](const BigInt& x) { return x == 0; });
        if (zero || !seen.insert(row).second) continue;
        ++sol.equations;
        ech.insert(std::move(row));
    }
    sol.rank = ech.rank();
    sol.free_rank = refs.size() - sol.rank;
    if (sol.rank > 0)
        for (const auto& d : lattice::smith_normal_form(ech.matrix()).diagonal())
            if (d > 1) sol.torsion.push_back(d);
    for (std::size_t k = 0; k < refs.size(); ++k) {
        std::vector<BigInt> e(refs.size());
        e[k] = 1;
        if (!ech.contains(e)) {
            auto key = BlockKey{t->weight(t->pairs()[refs[k].pair].mu), t->weight(t->pairs()[refs[k].pair].eta),
                                t->weight(t->pairs()[refs[k].pair].constituents[refs[k].pos].first)};
            sol.unforced.push_back(key);
        }
    }
    sol.unique = sol.free_rank == 0 && sol.torsion.empty();
    return sol;
}

}  // namespace qcat::invariant
