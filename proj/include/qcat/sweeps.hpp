#pragma once

#include "qcat/exec.hpp"
#include "qcat/invariant.hpp"
#include "qcat/uqg.hpp"

#include <string>

namespace qcat::sweeps {

using lattice::DynkinType;
using lattice::Weight;

/// Weights with every coordinate in [0, max_coord].
std::vector<Weight> box_weights(std::size_t rank, int max_coord);

struct TauSweep {
    std::size_t checked = 0;
    bool holds = true;          // identity holds everywhere
    bool independent = true;    // the two left composites are never proportional
    std::string violation;      // first failure in enumeration order
};

/// check_tau_identity for every i and every (mu, eta, nu) in the box with
/// mu(i), eta(i), nu(i) >= 1.
TauSweep sweep_tau_identity(const DynkinType& type, const uqg::QParam& q, int max_coord, uqg::IdentityMode mode,
                            Exec exec = Exec::parallel);

struct MultiplicitySweep {
    std::size_t pairs = 0;
    std::size_t constituents = 0;
    bool agree = true;
    std::string violation;
};

/// Klimyk multiplicities against the dimension of the highest weight vector
/// spaces in V_mu (x) V_eta, for all pairs in the box.
MultiplicitySweep sweep_multiplicities(const DynkinType& type, int max_coord, Exec exec = Exec::parallel);

struct EigenvalueSweep {
    std::size_t checked = 0;
    bool holds = true;
    std::string violation;
};

/// eigenvalue_identity_check on every admissible (i, mu, eta, nu) in W_H^3.
EigenvalueSweep sweep_eigenvalues(const invariant::BlockCocycle& e, Exec exec = Exec::parallel);

}  // namespace qcat::sweeps
