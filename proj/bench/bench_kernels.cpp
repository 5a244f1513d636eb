// Serial reference against the OpenMP path for the main kernels.

#include "qcat/invariant.hpp"
#include "qcat/sweeps.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <omp.h>

using namespace qcat;

namespace {

double seconds(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, const std::function<std::size_t(Exec)>& kernel) {
    std::size_t a = 0, b = 0;
    double ts = seconds([&] { a = kernel(Exec::serial); });
    double tp = seconds([&] { b = kernel(Exec::parallel); });
    std::printf("%-34s %10.3f %10.3f %8.2fx  %s\n", name, ts, tp, ts / tp, a == b ? "same" : "DIFFERENT");
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "parallel s", "speedup");
    const auto D4 = lattice::DynkinType::make('D', 4);
    const auto A1 = lattice::DynkinType::make('A', 1);
    const auto A2 = lattice::DynkinType::make('A', 2);
    const uqg::QParam q(Rational(2));

    row("truncation D4 bound 3", [&](Exec x) { return invariant::Truncation::make(D4, 3, x)->block_count(); });
    row("recoupling A1 bound 4", [&](Exec x) {
        return invariant::Recoupling::compute(invariant::Truncation::make(A1, 4, x), q, x).constraints().size();
    });
    auto t = invariant::Truncation::make(D4, 3);
    auto g = lattice::fundamental_group(D4).group();
    auto e = invariant::make_Ec(t, cohomology::bicharacter_to_cocycle(cohomology::h2_class_bicharacter(g, 1)));
    row("cocycle identity D4 bound 3", [&](Exec x) {
        return invariant::verify_cocycle_identity(e, invariant::IdentityPath::reduction, q, nullptr, x).triples_checked;
    });
    row("eigenvalue identity D4 bound 3", [&](Exec x) { return sweeps::sweep_eigenvalues(e, x).checked; });
    row("tau identity A2 coords <= 1", [&](Exec x) {
        return sweeps::sweep_tau_identity(A2, q, 1, uqg::IdentityMode::full, x).checked;
    });
    row("Klimyk vs highest weights A2 <= 2", [&](Exec x) { return sweeps::sweep_multiplicities(A2, 2, x).constituents; });
}
