#pragma once

#include "qcat/io.hpp"

#include <string>
#include <vector>

namespace qcat::pipelines {

/// A JSON document with "status" set to "ok" or "violation" (and "violation"
/// holding the first failed constraint). Inputs outside the supported scope
/// throw std::invalid_argument.
struct Outcome {
    io::json doc;
    bool ok = true;
};

io::json classify(const lattice::DynkinType& type);
io::json fundamental_group(const lattice::DynkinType& type);
io::json h2(const std::vector<std::int64_t>& orders);

/// Identity (1) over every admissible triple with coordinates <= bound.
Outcome verify_tau(const lattice::DynkinType& type, const uqg::QParam& q, int bound, uqg::IdentityMode mode);
/// E_c for the class-th H^2 class: cocycle identity, extraction round trip,
/// commutator descent, root kernel, eigenvalue identity, witness dichotomy and
/// (for explicit modules) invariance of the raw operators. Perturbations
/// overwrite single blocks of E_c before the checks run.
using Perturbation = std::pair<invariant::BlockKey, PhaseRational>;
Outcome verify_ec(const lattice::DynkinType& type, std::size_t class_index, int bound, const uqg::QParam& q,
                  const std::vector<Perturbation>& perturb = {});
/// Parses "mu|eta|nu=value", e.g. "1|1|0=2" or "1,0|0,1|0,0=-1".
Perturbation parse_perturbation(const std::string& text);
/// Uniqueness of normalized A1 cocycles, and the larger solution set without the tau condition.
Outcome verify_prop2(int bound, const uqg::QParam& q);

}  // namespace qcat::pipelines
