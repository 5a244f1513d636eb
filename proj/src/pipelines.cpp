#include "qcat/pipelines.hpp"

#include "qcat/sweeps.hpp"

#include <stdexcept>

namespace qcat::pipelines {

using io::json;

namespace {

void fail(Outcome& o, const std::string& what) {
    if (!o.ok) return;
    o.ok = false;
    o.doc["violation"] = what;
}

void finish(Outcome& o) {
    o.doc["status"] = o.ok ? "ok" : "violation";
    if (o.ok) o.doc.erase("violation");
}

}  // namespace

json classify(const lattice::DynkinType& type) {
    auto r = classification::classify(type);
    json j = io::report_json(r);
    j["summary"] = r.statement;
    return j;
}

json fundamental_group(const lattice::DynkinType& type) {
    auto cm = lattice::cartan_matrix(type);
    auto pq = lattice::fundamental_group(cm);
    json roots = json::array();
    bool roots_vanish = true;
    for (std::size_t i = 0; i < cm.rank(); ++i) {
        auto x = pq.project(lattice::simple_root(cm, i));
        roots_vanish = roots_vanish && x == pq.group().zero();
        roots.push_back(x);
    }
    json proj = json::array();
    for (std::size_t r = 0; r < pq.matrix().rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < pq.matrix().cols(); ++c) row.push_back(pq.matrix()(r, c));
        proj.push_back(std::move(row));
    }
    return {{"type", type.name()},
            {"summary", pq.group().str()},
            {"factors", pq.group().factors()},
            {"order", pq.group().order()},
            {"cartan_determinant", lattice::determinant(lattice::ZMatrix(cm.a)).get_str()},
            {"projection", proj},
            {"simple_root_images", roots},
            {"simple_roots_vanish", roots_vanish}};
}

json h2(const std::vector<std::int64_t>& orders) {
    for (auto n : orders)
        if (n < 1) throw std::invalid_argument("h2: cyclic orders must be positive");
    auto a = lattice::FiniteAbelianGroup::from_orders(orders);
    auto h = cohomology::h2(a);
    return {{"group", a.str()}, {"group_factors", a.factors()}, {"summary", h.str()}, {"h2", h.str()},
            {"h2_factors", h.factors()}, {"h2_order", h.order()}};
}

Outcome verify_tau(const lattice::DynkinType& type, const uqg::QParam& q, int bound, uqg::IdentityMode mode) {
    if (!uqg::in_module_whitelist(type)) throw std::invalid_argument("no explicit modules for " + type.name());
    if (bound < 1) throw std::invalid_argument("bound must be at least 1");
    auto s = sweeps::sweep_tau_identity(type, q, bound, mode);
    Outcome o;
    o.doc = {{"command", "verify tau-identity"}, {"type", type.name()}, {"q", q.str()}, {"bound", bound},
             {"mode", mode == uqg::IdentityMode::full ? "full" : "cyclic"}, {"checked", s.checked},
             {"holds", s.holds}, {"independent", s.independent}};
    if (!s.holds || !s.independent) fail(o, s.violation);
    o.doc["summary"] = o.ok ? "identity holds on " + std::to_string(s.checked) + " triples" : "identity fails";
    finish(o);
    return o;
}

Perturbation parse_perturbation(const std::string& text) {
    auto eq = text.find('=');
    auto a = text.find('|');
    auto b = a == std::string::npos ? a : text.find('|', a + 1);
    if (eq == std::string::npos || b == std::string::npos || b > eq)
        throw std::invalid_argument("perturbation must look like mu|eta|nu=value: " + text);
    invariant::BlockKey key{lattice::Weight::parse(text.substr(0, a)), lattice::Weight::parse(text.substr(a + 1, b - a - 1)),
                            lattice::Weight::parse(text.substr(b + 1, eq - b - 1))};
    return {key, PhaseRational::parse(text.substr(eq + 1))};
}

Outcome verify_ec(const lattice::DynkinType& type, std::size_t class_index, int bound, const uqg::QParam& q,
                  const std::vector<Perturbation>& perturb) {
    if (bound < 1) throw std::invalid_argument("bound must be at least 1");
    auto cm = lattice::cartan_matrix(type);
    auto pq = lattice::fundamental_group(cm);
    const auto& g = pq.group();
    const std::size_t classes = cohomology::h2_class_count(g);
    if (class_index >= classes)
        throw std::invalid_argument("class " + std::to_string(class_index) + " out of range; H^2 has " +
                                    std::to_string(classes) + " classes");
    auto b = cohomology::h2_class_bicharacter(g, class_index);
    auto c = cohomology::bicharacter_to_cocycle(b);
    auto t = invariant::Truncation::make(type, bound);
    auto e = invariant::make_Ec(t, c);
    json perturbed = json::array();
    for (const auto& [key, value] : perturb) {
        try {
            auto& blk = e.at(key[0], key[1], key[2]);
            blk = invariant::Block(value, blk.mult());
        } catch (const std::out_of_range& err) {
            throw std::invalid_argument(err.what());
        }
        perturbed.push_back(invariant::key_str(key) + "=" + value.str());
    }

    Outcome o;
    o.doc = {{"command", "verify ec"}, {"type", type.name()}, {"class", class_index}, {"bound", bound},
             {"cocycle", io::cocycle_json(c)}, {"perturbed", perturbed}, {"truncation", {{"weights", t->weight_count()}, {"blocks", t->block_count()}}}};
    json checks = json::object();

    auto id = invariant::verify_cocycle_identity(e, invariant::IdentityPath::automatic, q);
    checks["cocycle_identity"] = {{"holds", id.holds}, {"method", id.method}, {"triples", id.triples_checked}};
    if (!id.holds) fail(o, (id.applicable ? "cocycle identity: " : "cocycle identity undecided: ") + id.violation);
    if (id.method == "operator") {
        auto red = invariant::verify_cocycle_identity(e, invariant::IdentityPath::reduction, q);
        checks["cocycle_identity"]["reduction_holds"] = red.holds;
        if (!red.holds) fail(o, "cocycle identity (reduction): " + red.violation);
    }

    auto ce = invariant::extract_cE(e);
    bool round_trip = ce == monoid::restrict_to_monoid(type, c, bound);
    checks["extract_round_trip"] = round_trip;
    if (!round_trip) fail(o, "extract_cE differs from the restricted cocycle");

    try {
        auto skew = monoid::monoid_commutator(ce);
        auto ext = monoid::extend_to_lattice(skew);
        auto roots = monoid::kernel_contains_roots(ext.bicharacter, cm);
        checks["commutator_nonzero"] = !ext.bicharacter.is_trivial();
        checks["kernel_contains_roots"] = roots.contains_roots;
        if (!roots.contains_roots)
            fail(o, "b(alpha_" + std::to_string(roots.violation->first + 1) + ", omega_" +
                        std::to_string(roots.violation->second + 1) + ") != 1");
        else {
            bool descends = monoid::descend_to_pq(ext.bicharacter, cm, pq) == cohomology::cocycle_commutator(c);
            checks["commutator_descends"] = descends;
            if (!descends) fail(o, "commutator of c_E does not descend to the commutator of c");
        }
        if (ext.bicharacter.is_trivial() != b.is_zero()) fail(o, "commutator of c_E and class disagree on triviality");
    } catch (const std::invalid_argument& err) {
        checks["commutator_extends"] = false;
        fail(o, std::string("commutator of c_E: ") + err.what());
    }
    auto chain = invariant::root_kernel_chain(e);
    checks["root_kernel_chain"] = {{"holds", chain.holds}, {"checked", chain.checked}};
    if (!chain.holds) fail(o, "root kernel chain: " + chain.violation);

    auto ev = sweeps::sweep_eigenvalues(e);
    checks["eigenvalue_identity"] = {{"holds", ev.holds}, {"checked", ev.checked}};
    if (!ev.holds) fail(o, "eigenvalue identity: " + ev.violation);

    try {
        auto wit = monoid::monoid_coboundary_witness(ce);
        checks["coboundary_witness"] = wit.found;
        if (wit.found != b.is_zero())
            fail(o, wit.found ? "nontrivial class admits a coboundary witness" : "trivial class has no coboundary witness");
    } catch (const std::domain_error& err) {
        checks["coboundary_witness"] = nullptr;
        fail(o, std::string("coboundary witness: ") + err.what());
    }

    if (uqg::in_module_whitelist(type)) {
        uqg::ModuleCache cache(type, q);
        invariant::RawCocycle raw;
        std::size_t pairs = 0;
        bool rational = true;
        for (const auto& mu : lattice::dominant_weights_up_to(cm.rank(), std::min(bound, 1)))
            for (const auto& eta : lattice::dominant_weights_up_to(cm.rank(), std::min(bound, 1))) {
                if (!e.at(mu, eta, mu + eta).scalar().is_rational()) {
                    rational = false;
                    continue;
                }
                raw[{mu, eta}] = invariant::raw_operator(e, cache, mu, eta);
                ++pairs;
            }
        auto inv = invariant::verify_invariance(raw, cache);
        bool blocks_match = inv.invariant;
        for (const auto& [k, blk] : inv.blocks) blocks_match = blocks_match && blk == e.at(k[0], k[1], k[2]);
        checks["invariance"] = {{"holds", inv.invariant && blocks_match}, {"pairs", pairs}, {"all_rational", rational}};
        if (!inv.invariant) fail(o, "invariance: " + inv.violation);
        else if (!blocks_match) fail(o, "invariance: recovered blocks differ from E_c");
    }
    o.doc["checks"] = checks;
    o.doc["summary"] = o.ok ? "E_c verified" : "E_c verification failed";
    finish(o);
    return o;
}

Outcome verify_prop2(int bound, const uqg::QParam& q) {
    if (bound < 1) throw std::invalid_argument("bound must be at least 1");
    auto s = invariant::solve_normalized(bound, false, q);
    auto loose = invariant::solve_normalized(bound, true, q);
    auto solution = [](const invariant::NormalizedSolution& x) {
        json tors = json::array();
        for (const auto& d : x.torsion) tors.push_back(d.get_str());
        json unforced = json::array();
        for (const auto& k : x.unforced) unforced.push_back(invariant::key_str(k));
        return json{{"unknowns", x.unknowns}, {"equations", x.equations}, {"rank", x.rank}, {"free_rank", x.free_rank},
                    {"torsion", tors}, {"unique", x.unique}, {"unforced", unforced}};
    };
    Outcome o;
    const bool larger = !loose.unique;
    o.doc = {{"command", "verify prop2"}, {"type", "A1"}, {"bound", bound}, {"q", q.str()}, {"normalized", solution(s)},
             {"without_tau", solution(loose)}, {"tau_condition_needed", larger}};
    if (!s.unique) {
        std::string residual = "free rank " + std::to_string(s.free_rank) + ", " + std::to_string(s.torsion.size()) +
                               " torsion factors";
        if (!s.unforced.empty()) residual += ", first unforced block " + invariant::key_str(s.unforced.front());
        fail(o, "normalized solution is not unique: " + residual);
    }
    o.doc["summary"] = o.ok ? "unique solution: identity" : "solution not unique";
    finish(o);
    return o;
}

}  // namespace qcat::pipelines
