#pragma once

#include <designlat/applications.hpp>
#include <designlat/vector_system.hpp>

#include <nlohmann/json.hpp>

#include <string>

namespace designlat {

inline constexpr int kFormatVersion = 1;

nlohmann::json injection_to_json(const Injection& m);
Injection injection_from_json(const nlohmann::json& j);

nlohmann::json integer_to_json(const Integer& x);
Integer integer_from_json(const nlohmann::json& j);
nlohmann::json intvec_to_json(const IntVec& v);
IntVec intvec_from_json(const nlohmann::json& j);

nlohmann::json edge_vector_to_json(const EdgeVector& v);
EdgeVector edge_vector_from_json(const nlohmann::json& j);

nlohmann::json selection_to_json(const Selection& s, const VectorSystem& gamma);
Selection selection_from_json(const nlohmann::json& j, const VectorSystem& gamma);

nlohmann::json vector_system_to_json(const VectorSystem& gamma);
VectorSystem vector_system_from_json(const nlohmann::json& j);

nlohmann::json problem_to_json(const ProblemInstance& p);
ProblemInstance problem_from_json(const nlohmann::json& j);

// Parses a file; malformed input raises InputError with the byte offset.
nlohmann::json read_json_file(const std::string& path);
nlohmann::json parse_json(const std::string& text, const std::string& source = "<input>");
void write_text_file(const std::string& path, const std::string& text);

} // namespace designlat
