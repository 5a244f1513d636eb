#include "qcat/classification.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qcat::classification {

using lattice::FiniteAbelianGroup;

Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
    return out;
}

Permutation invert(const Permutation& p) {
    Permutation out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = i;
    return out;
}

std::vector<Permutation> diagram_automorphisms(const DynkinType& type) {
    auto cm = lattice::cartan_matrix(type);
    const std::size_t n = cm.rank();
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Permutation> out;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (cm.a(p[i], p[j]) != cm.a(i, j)) {
                    ok = false;
                    break;
                }
        if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

namespace {

std::set<Permutation> closure(const std::vector<Permutation>& gens, std::size_t n) {
    Permutation id(n);
    std::iota(id.begin(), id.end(), 0);
    std::set<Permutation> seen{id};
    std::vector<Permutation> frontier{id};
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                auto y = compose(g, x);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace

std::vector<Permutation> generators(const std::vector<Permutation>& group) {
    std::vector<Permutation> gens;
    if (group.empty()) return gens;
    std::set<Permutation> span = closure(gens, group.front().size());
    for (const auto& g : group) {
        if (span.count(g)) continue;
        gens.push_back(g);
        span = closure(gens, g.size());
    }
    return gens;
}

bool is_group(const std::vector<Permutation>& perms) {
    std::set<Permutation> s(perms.begin(), perms.end());
    for (const auto& a : perms) {
        if (!s.count(invert(a))) return false;
        for (const auto& b : perms)
            if (!s.count(compose(a, b))) return false;
    }
    return !perms.empty();
}

std::vector<std::size_t> pq_action(const lattice::PqProjection& pq, const Permutation& sigma) {
    const auto& g = pq.group();
    std::vector<std::size_t> out(static_cast<std::size_t>(g.order()));
    for (std::size_t x = 0; x < out.size(); ++x) {
        auto w = pq.lift(g.element_at(x));
        lattice::Weight moved = lattice::Weight::zero(w.rank());
        for (std::size_t i = 0; i < w.rank(); ++i) moved[sigma[i]] = w[i];
        out[x] = g.index_of(pq.project(moved));
    }
    return out;
}

std::vector<std::size_t> h2_action(const FiniteAbelianGroup& a, const std::vector<std::size_t>& action) {
    const std::size_t classes = cohomology::h2_class_count(a);
    const std::size_t k = a.num_generators();
    std::vector<std::size_t> inv(action.size());
    for (std::size_t x = 0; x < action.size(); ++x) inv[action[x]] = x;
    std::vector<cohomology::Bicharacter> reps;
    for (std::size_t c = 0; c < classes; ++c) reps.push_back(cohomology::h2_class_bicharacter(a, c));
    // alternating bicharacters are determined by their values on generator pairs
    auto values = [&](const std::function<cohomology::CircleValue(std::size_t, std::size_t)>& f) {
        std::vector<cohomology::CircleValue> v;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) v.push_back(f(i, j));
        return v;
    };
    std::vector<std::vector<cohomology::CircleValue>> table;
    for (const auto& b : reps)
        table.push_back(values([&](std::size_t i, std::size_t j) { return b(a.generator(i), a.generator(j)); }));
    std::vector<std::size_t> out(classes);
    for (std::size_t c = 0; c < classes; ++c) {
        auto moved = values([&](std::size_t i, std::size_t j) {
            auto x = a.element_at(inv[a.index_of(a.generator(i))]);
            auto y = a.element_at(inv[a.index_of(a.generator(j))]);
            return reps[c](x, y);
        });
        auto it = std::find(table.begin(), table.end(), moved);
        if (it == table.end()) throw std::logic_error("h2_action: image is not a listed class");
        out[c] = static_cast<std::size_t>(it - table.begin());
    }
    return out;
}

ClassificationReport classify(const DynkinType& type) {
    ClassificationReport r;
    r.type = type;
    auto pq = lattice::fundamental_group(type);
    r.pq_factors = pq.group().factors();
    auto h2 = cohomology::h2(pq.group());
    r.h2_factors = h2.factors();
    r.h2_order = h2.order();
    auto aut = diagram_automorphisms(type);
    r.aut_order = aut.size();
    r.aut_generators = generators(aut);
    r.total_order = r.h2_order * static_cast<std::int64_t>(r.aut_order);
    for (const auto& g : r.aut_generators) {
        r.pq_action.push_back(pq_action(pq, g));
        r.h2_action.push_back(h2_action(pq.group(), r.pq_action.back()));
    }
    r.statement = "H²(P/Q;T) ⋊ Aut(Ψ) with |H²| = " + std::to_string(r.h2_order) + " (" + (r.h2_order == 1 ? std::string("trivial") : h2.str()) +
                  "), |Aut(Ψ)| = " + std::to_string(r.aut_order) + ", total order " + std::to_string(r.total_order);
    return r;
}

}  // namespace qcat::classification
