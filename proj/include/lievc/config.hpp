#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "lievc/catalog.hpp"
#include "lievc/integrate.hpp"
#include "lievc/system.hpp"

namespace lievc {

/// Algebra <-> JSON document. Structure constants are written as
/// zero-suppressed [i, j, k, value] quadruples (zero-based indices) and the
/// metric as a row-major n*n array.
nlohmann::json algebra_to_json(const LieAlgebra& algebra);
LieAlgebra algebra_from_json(const nlohmann::json& doc);

/// A fully parsed run configuration. The system block is kept as raw JSON
/// so parameter sweeps can rebuild systems with substituted values.
struct RunConfig {
    nlohmann::json system;
    std::optional<AlgebraVector> initial_state;
    bool random_initial_state = false;
    std::optional<std::vector<double>> initial_group;  // row-major, reshaped per group model
    IntegratorConfig integrator;
    std::string output_dir = ".";
    bool controlled = true;
    MonitorTolerances tolerances;
};

RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const nlohmann::json& doc);

/// Instantiate the system named by a config system block; either a catalog
/// entry ("catalog" + "params") or an inline "custom" description. Catalog
/// oracles ride along when present.
CatalogEntry build_system_from_config(const nlohmann::json& system_block);

/// Replace params[name] in a catalog system block (sweep support). Throws
/// ConfigError for custom systems or unknown parameters.
nlohmann::json with_parameter(const nlohmann::json& system_block, const std::string& name,
                              double value);

/// Initial group element for a run: config override or the model identity.
Eigen::MatrixXd initial_group_element(const RunConfig& cfg, const ControlledSystem& sys);

/// Initial algebra state: explicit vector, seeded standard normal draw when
/// "random" was configured, zeros otherwise.
AlgebraVector initial_state(const RunConfig& cfg, const ControlledSystem& sys, unsigned seed);

}  // namespace lievc
