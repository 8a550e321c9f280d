#pragma once

#include "seifertvol/manifold.hpp"

#include <json.hpp>

#include <string>

namespace seifertvol {

// Parse errors raise InputError with line/column or field-path diagnostics.
nlohmann::json parse_json_text(const std::string& text, const std::string& source = "input");
Rational rational_from_json(const nlohmann::json& j, const std::string& path);

FormattedGraphManifold manifold_from_json(const nlohmann::json& j);
FormattedGraphManifold parse_manifold(const std::string& text, const std::string& source = "input");
nlohmann::json manifold_to_json(const FormattedGraphManifold& m);

// {"vertices":[{"id","base","piece_degree","fiber_degree"}],
//  "edges":[{"u","v","torus_degree"[,"fiber_degree_u","fiber_degree_v"]}]}
CoverSpec cover_from_json(const nlohmann::json& j);
nlohmann::json cover_to_json(const CoverSpec& c);

std::string read_text_file(const std::string& path);

}  // namespace seifertvol
