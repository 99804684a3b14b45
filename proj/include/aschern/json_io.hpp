#pragma once

// JSON forms of meshes, samples, chains and matrices. Complex numbers are
// [re, im] pairs; matrices are lists of rows; point ids are object keys in
// meshes and samples.

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "aschern/geometry.hpp"

namespace aschern {

using json = nlohmann::json;

json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const CMat& m);
CMat matrix_from_json(const json& j);

json to_json(const Mesh& mesh);
Mesh mesh_from_json(const json& j);

json to_json(const SampledMap& sample);
SampledMap sample_from_json(const json& j);

json to_json(const Chain& chain);
Chain chain_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace aschern
