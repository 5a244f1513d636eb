#include "qcat/io.hpp"

#include <stdexcept>

namespace qcat::io {

json matrix_json(const QMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

QMatrix matrix_from_json(const json& j) {
    const std::size_t rows = j.size(), cols = rows ? j[0].size() : 0;
    QMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (j[r].size() != cols) throw std::invalid_argument("matrix_from_json: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_rational(j[r][c].get<std::string>());
    }
    return m;
}

json group_json(const lattice::FiniteAbelianGroup& g) { return json(g.factors()); }

json cocycle_json(const cohomology::Cocycle2& c) {
    json table = json::array();
    for (std::size_t x = 0; x < c.size(); ++x) {
        json row = json::array();
        for (std::size_t y = 0; y < c.size(); ++y) row.push_back(c.at(x, y).str());
        table.push_back(std::move(row));
    }
    return {{"group", group_json(c.group())}, {"table", table}};
}

json bicharacter_json(const cohomology::Bicharacter& b) {
    const std::size_t k = b.group().num_generators();
    json m = json::array();
    for (std::size_t i = 0; i < k; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < k; ++j) row.push_back(b.pairing(i, j).str());
        m.push_back(std::move(row));
    }
    return {{"group", group_json(b.group())}, {"pairings", m}};
}

json monoid_json(const monoid::MonoidCocycle& c) {
    json table = json::object();
    for (const auto& mu : c.weights())
        for (const auto& eta : c.weights()) table[mu.str() + "|" + eta.str()] = c(mu, eta).str();
    return {{"type", c.type().name()}, {"bound", c.bound()}, {"table", table}};
}

monoid::MonoidCocycle monoid_from_json(const json& j) {
    monoid::MonoidCocycle c(lattice::DynkinType::parse(j.at("type").get<std::string>()), j.at("bound").get<int>());
    for (const auto& [key, value] : j.at("table").items()) {
        auto bar = key.find('|');
        if (bar == std::string::npos) throw std::invalid_argument("monoid_from_json: bad key " + key);
        c(lattice::Weight::parse(key.substr(0, bar)), lattice::Weight::parse(key.substr(bar + 1))) =
            PhaseRational::parse(value.get<std::string>());
    }
    return c;
}

json block_cocycle_json(const invariant::BlockCocycle& e) {
    const auto& t = e.truncation();
    json blocks = json::object();
    for (std::size_t p = 0; p < t.pairs().size(); ++p)
        for (std::size_t k = 0; k < t.pairs()[p].constituents.size(); ++k) {
            const auto& b = e.block(p, k);
            blocks[invariant::key_str(e.key(p, k))] = b.is_scalar() ? json(b.scalar().str()) : matrix_json(b.to_matrix());
        }
    return {{"type", t.type().name()}, {"bound", t.bound()}, {"blocks", blocks}};
}

json module_json(const uqg::ModuleRep& m) {
    json weights = json::array();
    for (const auto& w : m.weights) weights.push_back(w.str());
    json e = json::array(), f = json::array();
    for (std::size_t i = 0; i < m.rank(); ++i) {
        e.push_back(matrix_json(m.matrix_e(i)));
        f.push_back(matrix_json(m.matrix_f(i)));
    }
    return {{"type", m.type.name()}, {"highest", m.highest.str()}, {"q", m.q.str()}, {"dim", m.dim()},
            {"weights", weights}, {"E", e}, {"F", f}};
}

json morphism_json(const uqg::Morphism& f) {
    json factors = json::array();
    for (const auto& v : f.target().factors()) factors.push_back(v->highest.str());
    return {{"source", f.source().highest.str()}, {"target", factors}, {"matrix", matrix_json(f.matrix())}};
}

json report_json(const classification::ClassificationReport& r) {
    json gens = json::array();
    for (const auto& g : r.aut_generators) {
        json p = json::array();
        for (auto x : g) p.push_back(x + 1);  // nodes are numbered from 1
        gens.push_back(std::move(p));
    }
    return {{"type", r.type.name()},
            {"pq_factors", r.pq_factors},
            {"h2_factors", r.h2_factors},
            {"h2_order", r.h2_order},
            {"aut_order", r.aut_order},
            {"aut_generators", gens},
            {"total_order", r.total_order},
            {"statement", r.statement},
            {"action", {{"pq", r.pq_action}, {"h2", r.h2_action}}}};
}

classification::ClassificationReport report_from_json(const json& j) {
    classification::ClassificationReport r;
    r.type = lattice::DynkinType::parse(j.at("type").get<std::string>());
    r.pq_factors = j.at("pq_factors").get<std::vector<std::int64_t>>();
    r.h2_factors = j.at("h2_factors").get<std::vector<std::int64_t>>();
    r.h2_order = j.at("h2_order").get<std::int64_t>();
    r.aut_order = j.at("aut_order").get<std::size_t>();
    for (const auto& g : j.at("aut_generators")) {
        classification::Permutation p;
        for (const auto& x : g) p.push_back(x.get<std::size_t>() - 1);
        r.aut_generators.push_back(std::move(p));
    }
    r.total_order = j.at("total_order").get<std::int64_t>();
    r.statement = j.at("statement").get<std::string>();
    r.pq_action = j.at("action").at("pq").get<std::vector<std::vector<std::size_t>>>();
    r.h2_action = j.at("action").at("h2").get<std::vector<std::vector<std::size_t>>>();
    return r;
}

}  // namespace qcat::io
