#include "lievc/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "lievc/errors.hpp"

namespace lievc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message)
{
    throw ConfigError(path + ": " + message);
}

const json& require(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object() || !j.contains(key)) fail(path + "." + key, "missing field");
    return j.at(key);
}

double as_number(const json& j, const std::string& path)
{
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& path)
{
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

Eigen::VectorXd as_vector(const json& j, const std::string& path)
{
    if (!j.is_array()) fail(path, "expected an array of numbers");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<long>(i)) = as_number(j[i], path);
    return v;
}

Eigen::MatrixXd columns_to_matrix(const json& j, const std::string& path)
{
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of vectors");
    const Eigen::VectorXd first = as_vector(j[0], path + "[0]");
    Eigen::MatrixXd m(first.size(), j.size());
    m.col(0) = first;
    for (std::size_t c = 1; c < j.size(); ++c) {
        const Eigen::VectorXd col = as_vector(j[c], path + "[" + std::to_string(c) + "]");
        if (col.size() != m.rows()) fail(path, "vectors have inconsistent lengths");
        m.col(static_cast<long>(c)) = col;
    }
    return m;
}

}  // namespace

json algebra_to_json(const LieAlgebra& algebra)
{
    const int n = algebra.dim();
    json doc;
    doc["name"] = algebra.name();
    doc["dim"] = n;
    json quads = json::array();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double c = algebra.structure_constant(i, j, k);
                if (c != 0.0) quads.push_back(json::array({i, j, k, c}));
            }
    doc["structure_constants"] = std::move(quads);
    json metric = json::array();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) metric.push_back(algebra.metric()(i, j));
    doc["metric"] = std::move(metric);
    return doc;
}

LieAlgebra algebra_from_json(const json& doc)
{
    const std::string path = "algebra";
    const int n = as_int(require(doc, "dim", path), path + ".dim");
    if (n <= 0) fail(path + ".dim", "must be positive");

    auto c = zero_structure_constants(n);
    const json& quads = require(doc, "structure_constants", path);
    if (!quads.is_array()) fail(path + ".structure_constants", "expected an array of quadruples");
    for (std::size_t q = 0; q < quads.size(); ++q) {
        const std::string qpath = path + ".structure_constants[" + std::to_string(q) + "]";
        const json& entry = quads[q];
        if (!entry.is_array() || entry.size() != 4) fail(qpath, "expected [i, j, k, value]");
        const int i = as_int(entry[0], qpath);
        const int j = as_int(entry[1], qpath);
        const int k = as_int(entry[2], qpath);
        if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= n)
            fail(qpath, "index out of range (zero-based)");
        c[static_cast<size_t>(k)](i, j) = as_number(entry[3], qpath);
    }

    const Eigen::VectorXd flat = as_vector(require(doc, "metric", path), path + ".metric");
    if (flat.size() != n * n) fail(path + ".metric", "expected n*n row-major entries");
    Eigen::MatrixXd metric(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) metric(i, j) = flat(i * n + j);

    const std::string name = doc.contains("name") ? doc["name"].get<std::string>() : "custom";
    return LieAlgebra(name, std::move(c), std::move(metric));
}

CatalogEntry build_system_from_config(const json& block)
{
    if (!block.is_object()) fail("system", "expected an object");

    if (block.contains("catalog")) {
        const std::string name = block["catalog"].get<std::string>();
        std::map<std::string, double> p;
        if (block.contains("params")) {
            for (const auto& [key, value] : block["params"].items())
                p[key] = as_number(value, "system.params." + key);
        }
        const auto need = [&](std::initializer_list<const char*> keys) {
            for (const char* key : keys)
                if (p.find(key) == p.end())
                    fail(std::string("system.params.") + key, "missing parameter");
        };
        if (name == "so3_rigid_body") {
            need({"lambda1", "lambda2", "lambda3"});
            return build_so3_rigid_body(p["lambda1"], p["lambda2"], p["lambda3"]);
        }
        if (name == "se3_homogeneous") {
            need({"m", "k"});
            return build_se3_homogeneous(p["m"], p["k"]);
        }
        if (name == "rotor") {
            need({"lambda1", "lambda2", "lambda3", "J", "k"});
            const double level = p.find("p") != p.end() ? p["p"] : 0.0;
            return build_rotor(p["lambda1"], p["lambda2"], p["lambda3"], p["J"], p["k"], level);
        }
        fail("system.catalog", "unknown catalog system '" + name + "'");
    }

    if (!block.contains("custom")) fail("system", "expected 'catalog' or 'custom'");
    const json& custom = block["custom"];

    LieAlgebra algebra = algebra_from_json(require(custom, "algebra", "system.custom"));
    const int n = algebra.dim();
    const int sigma = as_int(require(custom, "sigma", "system.custom"), "system.custom.sigma");

    Eigen::MatrixXd input = Eigen::MatrixXd::Zero(n, 0);
    if (custom.contains("input_basis")) {
        input = columns_to_matrix(custom["input_basis"], "system.custom.input_basis");
        if (input.rows() != n) fail("system.custom.input_basis", "columns must have length dim");
    }

    std::optional<Constraint> constraint;
    if (custom.contains("constraint")) {
        const json& cblock = custom["constraint"];
        Eigen::MatrixXd basis =
            columns_to_matrix(require(cblock, "basis", "system.custom.constraint"),
                              "system.custom.constraint.basis");
        if (basis.rows() != n) fail("system.custom.constraint.basis", "vectors must have length dim");
        Subspace direction{std::move(basis)};
        if (cblock.contains("offset")) {
            Eigen::VectorXd offset = as_vector(cblock["offset"], "system.custom.constraint.offset");
            if (offset.size() != n) fail("system.custom.constraint.offset", "length must equal dim");
            constraint = Constraint(AffineSubspace(std::move(offset), std::move(direction)));
        } else {
            constraint = Constraint(std::move(direction));
        }
    }

    std::optional<GroupModel> group;
    if (custom.contains("group")) {
        group = GroupModel::by_name(custom["group"].get<std::string>());
        if (group->algebra_dim() != n) fail("system.custom.group", "group does not match dim");
    }

    const std::string label =
        custom.contains("name") ? custom["name"].get<std::string>() : "custom";
    ControlledSystem system(std::move(algebra), std::move(group), sigma, std::move(input),
                            std::move(constraint), label);
    return CatalogEntry{std::move(system), nullptr, nullptr};
}

json with_parameter(const json& block, const std::string& name, double value)
{
    if (!block.contains("catalog"))
        throw ConfigError("sweep: only catalog system parameters can be swept");
    json out = block;
    out["params"][name] = value;
    return out;
}

RunConfig parse_run_config(const json& doc)
{
    RunConfig cfg;
    cfg.system = require(doc, "system", "config");

    if (doc.contains("initial_state")) {
        const json& state = doc["initial_state"];
        if (state.is_string() && state.get<std::string>() == "random")
            cfg.random_initial_state = true;
        else
            cfg.initial_state = as_vector(state, "config.initial_state");
    }
    if (doc.contains("initial_group")) {
        const Eigen::VectorXd flat = as_vector(doc["initial_group"], "config.initial_group");
        cfg.initial_group = std::vector<double>(flat.data(), flat.data() + flat.size());
    }

    if (doc.contains("integrator")) {
        const json& integ = doc["integrator"];
        cfg.integrator.step = as_number(require(integ, "step", "config.integrator"),
                                        "config.integrator.step");
        cfg.integrator.horizon = as_number(require(integ, "horizon", "config.integrator"),
                                           "config.integrator.horizon");
        if (integ.contains("scheme")) cfg.integrator.scheme = integ["scheme"].get<std::string>();
        if (integ.contains("record_stride"))
            cfg.integrator.record_stride =
                as_int(integ["record_stride"], "config.integrator.record_stride");
        try {
            cfg.integrator.validate();
        } catch (const ContractError& err) {
            fail("config.integrator", err.what());
        }
    }

    if (doc.contains("output_dir")) cfg.output_dir = doc["output_dir"].get<std::string>();
    if (doc.contains("controlled")) cfg.controlled = doc["controlled"].get<bool>();

    if (doc.contains("tolerances")) {
        const json& tol = doc["tolerances"];
        const auto opt = [&](const char* key) -> std::optional<double> {
            if (!tol.contains(key) || tol[key].is_null()) return std::nullopt;
            const double v = as_number(tol[key], std::string("config.tolerances.") + key);
            if (v <= 0.0) fail(std::string("config.tolerances.") + key, "must be positive");
            return v;
        };
        if (tol.contains("constraint_residual"))
            cfg.tolerances.max_constraint_residual = opt("constraint_residual");
        if (tol.contains("orthogonality_drift"))
            cfg.tolerances.max_orthogonality_drift = opt("orthogonality_drift");
        if (tol.contains("energy_drift")) cfg.tolerances.max_relative_energy_drift = opt("energy_drift");
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        // nlohmann reports line/column context in what()
        throw ConfigError(path + ": " + err.what());
    }
    return parse_run_config(doc);
}

Eigen::MatrixXd initial_group_element(const RunConfig& cfg, const ControlledSystem& sys)
{
    if (!sys.group()) return Eigen::MatrixXd();
    const int s = sys.group()->matrix_size();
    if (!cfg.initial_group) return sys.group()->identity();
    if (static_cast<int>(cfg.initial_group->size()) != s * s)
        throw ConfigError("config.initial_group: expected " + std::to_string(s * s)
                          + " row-major entries");
    Eigen::MatrixXd g(s, s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) g(i, j) = (*cfg.initial_group)[static_cast<size_t>(i * s + j)];
    if (!sys.group()->in_group(g))
        throw ConfigError("config.initial_group: matrix is not in the model group");
    return g;
}

AlgebraVector initial_state(const RunConfig& cfg, const ControlledSystem& sys, unsigned seed)
{
    const int n = sys.algebra().dim();
    if (cfg.initial_state) {
        if (cfg.initial_state->size() != n)
            throw ConfigError("config.initial_state: expected length " + std::to_string(n));
        return *cfg.initial_state;
    }
    if (cfg.random_initial_state) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        AlgebraVector x(n);
        for (int i = 0; i < n; ++i) x(i) = gauss(rng);
        return x;
    }
    return AlgebraVector::Zero(n);
}

}  // namespace lievc
