#pragma once

// Independent reference computations used only by the tests.

#include "qcat/lattice.hpp"

#include <cstdlib>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;

/// Simple roots in an orthonormal realization, coordinates doubled so every
/// entry is an integer.
inline std::vector<Vec> simple_roots_euclidean(const qcat::lattice::DynkinType& t) {
    const int n = t.rank;
    std::vector<Vec> roots;
    auto unit = [](int dim, int i, std::int64_t s) {
        Vec v(static_cast<std::size_t>(dim), 0);
        v[static_cast<std::size_t>(i)] = s;
        return v;
    };
    auto diff = [&](int dim, int i, int j) {
        Vec v = unit(dim, i, 2);
        v[static_cast<std::size_t>(j)] -= 2;
        return v;
    };
    switch (t.family) {
    case 'A':
        for (int i = 0; i < n; ++i) roots.push_back(diff(n + 1, i, i + 1));
        break;
    case 'B':
        for (int i = 0; i + 1 < n; ++i) roots.push_back(diff(n, i, i + 1));
        roots.push_back(unit(n, n - 1, 2));
        break;
    case 'C':
        for (int i = 0; i + 1 < n; ++i) roots.push_back(diff(n, i, i + 1));
        roots.push_back(unit(n, n - 1, 4));
        break;
    case 'D': {
        for (int i = 0; i + 1 < n; ++i) roots.push_back(diff(n, i, i + 1));
        Vec v = unit(n, n - 2, 2);
        v[static_cast<std::size_t>(n - 1)] = 2;
        roots.push_back(v);
        break;
    }
    case 'G':
        roots.push_back(diff(3, 0, 1));
        roots.push_back(Vec{-4, 2, 2});
        break;
    case 'F':
        roots.push_back(diff(4, 1, 2));
        roots.push_back(diff(4, 2, 3));
        roots.push_back(unit(4, 3, 2));
        roots.push_back(Vec{1, -1, -1, -1});
        break;
    case 'E': {
        std::vector<Vec> e8;
        e8.push_back(Vec{1, -1, -1, -1, -1, -1, -1, 1});
        Vec a2(8, 0);
        a2[0] = 2;
        a2[1] = 2;
        e8.push_back(a2);
        e8.push_back(diff(8, 1, 0));
        for (int i = 2; i <= 6; ++i) e8.push_back(diff(8, i, i - 1));
        roots.assign(e8.begin(), e8.begin() + n);
        break;
    }
    }
    return roots;
}

inline std::int64_t dot(const Vec& a, const Vec& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Cartan matrix a_ij = 2 (a_i, a_j) / (a_i, a_i) from the realization.
inline std::vector<Vec> cartan_from_realization(const qcat::lattice::DynkinType& t) {
    auto r = simple_roots_euclidean(t);
    std::vector<Vec> a(r.size(), Vec(r.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j) a[i][j] = 2 * dot(r[i], r[j]) / dot(r[i], r[i]);
    return a;
}

/// Number of classes of Z^r modulo the column span of A, by enumerating the
/// box [0, det)^r and testing membership with a rational inverse.
struct CosetCount {
    std::int64_t classes = 0;
    std::int64_t exponent = 0;
};

inline CosetCount enumerate_cosets(const qcat::lattice::IntMatrix& a, std::int64_t det) {
    const std::size_t r = a.rows();
    qcat::QMatrix aq(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) aq(i, j) = static_cast<long>(a(i, j));
    qcat::QMatrix inv = qcat::inverse(aq);
    auto in_root_lattice = [&](const Vec& x) {
        for (std::size_t i = 0; i < r; ++i) {
            qcat::Rational s = 0;
            for (std::size_t j = 0; j < r; ++j) s += inv(i, j) * static_cast<long>(x[j]);
            if (s.get_den() != 1) return false;
        }
        return true;
    };
    std::vector<Vec> reps;
    Vec x(r, 0);
    std::int64_t exponent = 1;
    while (true) {
        bool fresh = true;
        for (const auto& y : reps) {
            Vec d(r);
            for (std::size_t i = 0; i < r; ++i) d[i] = x[i] - y[i];
            if (in_root_lattice(d)) {
                fresh = false;
                break;
            }
        }
        if (fresh) {
            reps.push_back(x);
            std::int64_t k = 1;
            while (true) {
                Vec kx(r);
                for (std::size_t i = 0; i < r; ++i) kx[i] = k * x[i];
                if (in_root_lattice(kx)) break;
                ++k;
            }
            exponent = std::max(exponent, k);
        }
        std::size_t pos = 0;
        while (pos < r && ++x[pos] == det) x[pos++] = 0;
        if (pos == r) break;
    }
    return {static_cast<std::int64_t>(reps.size()), exponent};
}

}  // namespace oracle
