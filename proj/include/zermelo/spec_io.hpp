#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zermelo/wind.hpp"

namespace zermelo {

/// Spec-file schema:
///   { "model": {"kind": "sphere"|"euclidean"|"klein", "K": real, "n": int, "s": +-1?},
///     "wind":  {"sigma": real, "Q": [[...]], "C": [...]} }
WindSpec parse_spec_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const WindSpec& spec);

/// Serializes with every float printed to 17 significant digits, so output
/// round-trips through the parser bit-exactly.
std::string dump_json_17(const nlohmann::json& j, int indent = 2);

/// Catalog of the built-in example perturbations, keyed "3.1.1" .. "3.3.3".
struct Fixture {
  std::string id;
  WindSpec spec;
  double claimed_flag_curvature;
};

struct FixtureParams {
  std::optional<double> tau;      // rotation/homothety rate where applicable
  std::optional<double> K;       // sphere curvature for 3.1.2
  std::optional<Vec> C;          // translation vector for 3.2.3
};

std::vector<std::string> fixture_ids();
Fixture example_fixture(const std::string& id, const FixtureParams& params = {});

nlohmann::json mat_to_json(const Mat& m);
nlohmann::json vec_to_json(const Vec& v);
Mat mat_from_json(const nlohmann::json& j, const std::string& where);
Vec vec_from_json(const nlohmann::json& j, const std::string& where);

struct ModuliPoint;
struct BlockNormalForm;
nlohmann::json moduli_to_json(const ModuliPoint& p);
nlohmann::json normal_form_to_json(const BlockNormalForm& f, const Mat& omega);

}  // namespace zermelo
