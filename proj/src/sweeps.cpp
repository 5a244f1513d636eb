#include "qcat/sweeps.hpp"

#include <algorithm>
#include <array>

namespace qcat::sweeps {

std::vector<Weight> box_weights(std::size_t rank, int max_coord) {
    std::vector<Weight> out;
    std::vector<int> c(rank, 0);
    while (true) {
        out.emplace_back(c);
        std::size_t k = 0;
        while (k < rank && c[k] == max_coord) c[k++] = 0;
        if (k == rank) break;
        ++c[k];
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Runs body(k) for k < n and keeps the message of the smallest failing k.
template <class Body>
std::pair<std::size_t, std::string> first_failure(std::size_t n, Exec exec, Body body) {
    std::vector<std::string> msg(n);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (std::size_t k = 0; k < n; ++k) msg[k] = body(k);
    for (std::size_t k = 0; k < n; ++k)
        if (!msg[k].empty()) return {k, msg[k]};
    return {n, ""};
}

}  // namespace

TauSweep sweep_tau_identity(const DynkinType& type, const uqg::QParam& q, int max_coord, uqg::IdentityMode mode,
                            Exec exec) {
    const auto ws = box_weights(static_cast<std::size_t>(type.rank), max_coord);
    std::vector<std::array<std::size_t, 4>> jobs;
    for (std::size_t i = 0; i < static_cast<std::size_t>(type.rank); ++i)
        for (std::size_t a = 0; a < ws.size(); ++a)
            for (std::size_t b = 0; b < ws.size(); ++b)
                for (std::size_t c = 0; c < ws.size(); ++c)
                    if (ws[a][i] >= 1 && ws[b][i] >= 1 && ws[c][i] >= 1) jobs.push_back({i, a, b, c});
    uqg::ModuleCache cache(type, q);
    std::vector<char> broken(jobs.size(), 0), dependent(jobs.size(), 0);
    auto [k, msg] = first_failure(jobs.size(), exec, [&](std::size_t k) -> std::string {
        const auto& j = jobs[k];
        auto r = uqg::check_tau_identity(cache, j[0], ws[j[1]], ws[j[2]], ws[j[3]], mode);
        broken[k] = !r.holds;
        dependent[k] = !r.independent;
        std::string where = "i=" + std::to_string(j[0] + 1) + ", mu=" + ws[j[1]].str() + ", eta=" + ws[j[2]].str() +
                            ", nu=" + ws[j[3]].str();
        if (!r.holds) return where + ": " + r.violation;
        if (!r.independent) return where + ": the two left composites are proportional";
        return "";
    });
    TauSweep s;
    s.checked = jobs.size();
    s.violation = msg;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        s.holds = s.holds && !broken[j];
        s.independent = s.independent && !dependent[j];
    }
    (void)k;
    return s;
}

MultiplicitySweep sweep_multiplicities(const DynkinType& type, int max_coord, Exec exec) {
    const auto ws = box_weights(static_cast<std::size_t>(type.rank), max_coord);
    const auto rs = lattice::root_system(lattice::cartan_matrix(type));
    uqg::ModuleCache cache(type, uqg::QParam(Rational(2)));
    const std::size_t n = ws.size();
    std::vector<std::size_t> counts(n * n, 0);
    auto [k, msg] = first_failure(n * n, exec, [&](std::size_t k) -> std::string {
        const Weight &mu = ws[k / n], &eta = ws[k % n];
        uqg::TensorSpace tp({cache.get(mu), cache.get(eta)});
        auto dec = lattice::klimyk_decompose(rs, mu, eta);
        counts[k] = dec.size();
        std::size_t total = 0;
        for (const auto& [nu, m] : dec) {
            auto hw = uqg::highest_weight_vectors(tp, nu).size();
            total += hw * cache.get(nu)->dim();
            if (static_cast<std::int64_t>(hw) != m)
                return mu.str() + " x " + eta.str() + " at " + nu.str() + ": Klimyk " + std::to_string(m) +
                       ", highest weight vectors " + std::to_string(hw);
        }
        // no constituent missed: the components fill the tensor product
        if (total != tp.dim()) return mu.str() + " x " + eta.str() + ": constituents do not fill the tensor product";
        return "";
    });
    MultiplicitySweep s;
    s.pairs = n * n;
    for (auto c : counts) s.constituents += c;
    if (k < n * n) {
        s.agree = false;
        s.violation = msg;
    }
    return s;
}

EigenvalueSweep sweep_eigenvalues(const invariant::BlockCocycle& e, Exec exec) {
    const auto& t = e.truncation();
    const std::size_t n = t.base_size();
    const std::size_t r = t.cartan().rank();
    std::vector<std::array<std::size_t, 4>> jobs;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (t.weight(a)[i] >= 1 && t.weight(b)[i] >= 1 && t.weight(c)[i] >= 1) jobs.push_back({i, a, b, c});
    auto [k, msg] = first_failure(jobs.size(), exec, [&](std::size_t k) -> std::string {
        const auto& j = jobs[k];
        auto d = invariant::eigenvalue_identity_check(e, j[0], t.weight(j[1]), t.weight(j[2]), t.weight(j[3]));
        if (d.holds) return "";
        return "i=" + std::to_string(j[0] + 1) + ", mu=" + t.weight(j[1]).str() + ", eta=" + t.weight(j[2]).str() +
               ", nu=" + t.weight(j[3]).str() + ": " + d.values[0].str() + ", " + d.values[1].str() + ", " +
               d.values[2].str();
    });
    EigenvalueSweep s;
    s.checked = jobs.size();
    if (k < jobs.size()) {
        s.holds = false;
        s.violation = msg;
    }
    return s;
}

}  // namespace qcat::sweeps
