#pragma once

#include "qcat/classification.hpp"
#include "qcat/cohomology.hpp"
#include "qcat/invariant.hpp"
#include "qcat/monoid.hpp"
#include "qcat/uqg.hpp"

#include <json.hpp>

namespace qcat::io {

using json = nlohmann::ordered_json;

json matrix_json(const QMatrix& m);       // rows of rational strings
QMatrix matrix_from_json(const json& j);

json group_json(const lattice::FiniteAbelianGroup& g);
json cocycle_json(const cohomology::Cocycle2& c);        // {"group", "table": [[angle]]}
json bicharacter_json(const cohomology::Bicharacter& b);  // {"group", "pairings": [[angle]]}
/// {"type", "bound", "table": {"mu|eta": value}}
json monoid_json(const monoid::MonoidCocycle& c);
monoid::MonoidCocycle monoid_from_json(const json& j);
/// {"type", "bound", "blocks": {"(mu|eta|nu)": value or matrix}}
json block_cocycle_json(const invariant::BlockCocycle& e);
json module_json(const uqg::ModuleRep& m);
json morphism_json(const uqg::Morphism& f);

/// {"type", "pq_factors", "h2_factors", "h2_order", "aut_order", "aut_generators",
///  "total_order", "statement", "action"}
json report_json(const classification::ClassificationReport& r);
classification::ClassificationReport report_from_json(const json& j);

}  // namespace qcat::io
