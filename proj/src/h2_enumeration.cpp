#include "qcat/h2_enumeration.hpp"

#include <omp.h>

#include <set>
#include <stdexcept>

namespace qcat::cohomology {

using lattice::ZMatrix;

namespace {

struct AdditionTable {
    std::size_t n;
    std::vector<std::size_t> sum;
    explicit AdditionTable(const FiniteAbelianGroup& a) : n(static_cast<std::size_t>(a.order())), sum(n * n) {
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) sum[x * n + y] = a.index_of(a.add(a.element_at(x), a.element_at(y)));
    }
    std::size_t operator()(std::size_t x, std::size_t y) const { return sum[x * n + y]; }
};

// Integer-valued tables modulo m.
bool is_cocycle_mod(const std::vector<std::int64_t>& c, const AdditionTable& add, std::int64_t m) {
    const std::size_t n = add.n;
    for (std::size_t x = 1; x < n; ++x)
        for (std::size_t y = 1; y < n; ++y)
            for (std::size_t z = 1; z < n; ++z) {
                std::int64_t lhs = c[x * n + y] + c[add(x, y) * n + z];
                std::int64_t rhs = c[y * n + z] + c[x * n + add(y, z)];
                if ((lhs - rhs) % m != 0) return false;
            }
    return true;
}

std::vector<std::int64_t> commutator_table(const std::vector<std::int64_t>& c, std::size_t n, std::int64_t m) {
    std::vector<std::int64_t> b(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) b[x * n + y] = ((c[x * n + y] - c[y * n + x]) % m + m) % m;
    return b;
}

// Row index (x, y, z) of the coboundary map C^2 -> C^3.
ZMatrix delta2(const AdditionTable& add) {
    const std::size_t n = add.n;
    ZMatrix d(n * n * n, n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                std::size_t row = (x * n + y) * n + z;
                d(row, y * n + z) += 1;
                d(row, add(x, y) * n + z) -= 1;
                d(row, x * n + add(y, z)) += 1;
                d(row, x * n + y) -= 1;
            }
    return d;
}

ZMatrix delta1(const AdditionTable& add) {
    const std::size_t n = add.n;
    ZMatrix d(n * n, n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t row = x * n + y;
            d(row, x) += 1;
            d(row, y) += 1;
            d(row, add(x, y)) -= 1;
        }
    return d;
}

}  // namespace

ExhaustiveCount enumerate_normalized_cocycles(const FiniteAbelianGroup& a, std::int64_t denominator, Exec exec) {
    if (denominator < 1) throw std::invalid_argument("denominator must be positive");
    const AdditionTable add(a);
    const std::size_t n = add.n;
    const std::size_t free_cells = (n - 1) * (n - 1);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < free_cells; ++i) {
        if (total > (std::uint64_t{1} << 40) / static_cast<std::uint64_t>(denominator))
            throw std::invalid_argument("enumerate_normalized_cocycles: search space too large");
        total *= static_cast<std::uint64_t>(denominator);
    }

    auto decode = [&](std::uint64_t code, std::vector<std::int64_t>& c) {
        for (std::size_t x = 1; x < n; ++x)
            for (std::size_t y = 1; y < n; ++y) {
                c[x * n + y] = static_cast<std::int64_t>(code % static_cast<std::uint64_t>(denominator));
                code /= static_cast<std::uint64_t>(denominator);
            }
    };

    ExhaustiveCount out;
    out.cochains = total;
    std::set<std::vector<std::int64_t>> commutators;
    std::uint64_t cocycles = 0, symmetric = 0;

    if (exec == Exec::serial) {
        std::vector<std::int64_t> c(n * n, 0);
        for (std::uint64_t code = 0; code < total; ++code) {
            decode(code, c);
            if (!is_cocycle_mod(c, add, denominator)) continue;
            ++cocycles;
            auto b = commutator_table(c, n, denominator);
            bool sym = true;
            for (auto v : b) sym = sym && v == 0;
            if (sym) ++symmetric;
            commutators.insert(std::move(b));
        }
    } else {
#pragma omp parallel
        {
            std::vector<std::int64_t> c(n * n, 0);
            std::set<std::vector<std::int64_t>> local;
            std::uint64_t local_cocycles = 0, local_symmetric = 0;
#pragma omp for schedule(static)
            for (std::int64_t code = 0; code < static_cast<std::int64_t>(total); ++code) {
                decode(static_cast<std::uint64_t>(code), c);
                if (!is_cocycle_mod(c, add, denominator)) continue;
                ++local_cocycles;
                auto b = commutator_table(c, n, denominator);
                bool sym = true;
                for (auto v : b) sym = sym && v == 0;
                if (sym) ++local_symmetric;
                local.insert(std::move(b));
            }
#pragma omp critical
            {
                cocycles += local_cocycles;
                symmetric += local_symmetric;
                commutators.merge(local);
            }
        }
    }
    out.cocycles = cocycles;
    out.coboundaries = symmetric;
    out.distinct_commutators = commutators.size();
    return out;
}

std::size_t commutator_image_size(const FiniteAbelianGroup& a) {
    const AdditionTable add(a);
    const std::size_t n = add.n;
    const std::int64_t big_n = a.order();
    // Generators of ker(delta2 mod N): V * (N / gcd(s_i, N)) e_i.
    auto s = lattice::smith_normal_form(delta2(add));
    std::vector<std::vector<std::int64_t>> gens;
    for (std::size_t i = 0; i < n * n; ++i) {
        BigInt si = i < s.d.rows() ? BigInt(s.d(i, i)) : BigInt(0);
        BigInt g;
        mpz_gcd(g.get_mpz_t(), si.get_mpz_t(), BigInt(big_n).get_mpz_t());
        BigInt step = BigInt(big_n) / g;
        if (step == big_n) continue;
        std::vector<std::int64_t> c(n * n);
        for (std::size_t r = 0; r < n * n; ++r) {
            BigInt v = s.v(r, i) * step % big_n;
            if (v < 0) v += big_n;
            c[r] = v.get_si();
        }
        gens.push_back(commutator_table(c, n, big_n));
    }
    std::set<std::vector<std::int64_t>> group{std::vector<std::int64_t>(n * n, 0)};
    std::vector<std::vector<std::int64_t>> frontier(group.begin(), group.end());
    while (!frontier.empty()) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                std::vector<std::int64_t> y(n * n);
                for (std::size_t k = 0; k < y.size(); ++k) y[k] = (x[k] + g[k]) % big_n;
                if (group.insert(y).second) next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    return group.size();
}

BigInt h2_order_by_counting(const FiniteAbelianGroup& a) {
    const AdditionTable add(a);
    const std::size_t n = add.n;
    const BigInt big_n = a.order();
    const BigInt e = a.exponent();
    const BigInt m = big_n * e;
    BigInt cocycles = count_kernel_mod(delta2(add), big_n);
    // B = {delta a : a in (1/M)Z^A, delta a in (1/N)Z}; delta a in (1/N)Z iff
    // the integer coboundary vanishes mod M/N = e.
    ZMatrix d1 = delta1(add);
    BigInt lifts;
    mpz_pow_ui(lifts.get_mpz_t(), BigInt(m / e).get_mpz_t(), n);
    BigInt admissible = count_kernel_mod(d1, e) * lifts;
    BigInt closed = count_kernel_mod(d1, m);
    BigInt boundaries = admissible / closed;
    if (cocycles % boundaries != 0) throw std::logic_error("h2_order_by_counting: non-integral quotient");
    return cocycles / boundaries;
}

std::vector<FiniteAbelianGroup> abelian_groups_of_order(std::int64_t order) {
    if (order < 1) throw std::invalid_argument("order must be positive");
    std::vector<FiniteAbelianGroup> out;
    // Divisibility chains n_1 | n_2 | ... with product = order.
    std::vector<std::int64_t> chain;
    auto rec = [&](auto&& self, std::int64_t remaining, std::int64_t last) -> void {
        if (remaining == 1) {
            out.emplace_back(std::vector<std::int64_t>(chain.rbegin(), chain.rend()));
            return;
        }
        // build from the largest factor down: next factor divides the previous one
        for (std::int64_t f = 2; f <= remaining; ++f) {
            if (remaining % f != 0) continue;
            if (last != 0 && last % f != 0) continue;
            chain.push_back(f);
            self(self, remaining / f, f);
            chain.pop_back();
        }
    };
    rec(rec, order, 0);
    return out;
}

}  // namespace qcat::cohomology
