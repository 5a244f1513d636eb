#pragma once

namespace qcat {

/// Execution policy for the verification sweeps. Serial is the reference path.
enum class Exec { serial, parallel };

}  // namespace qcat
