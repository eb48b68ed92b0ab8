#pragma once

#include <json.hpp>
#include <string>

#include "lsa/hessian.hpp"

namespace lsa {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// All loaders throw InputError with a JSON-pointer-style path on schema
/// violations. Indices in files are 1-based; scalars are canonical
/// expression strings.
Json structure_to_json(const AlgebroidStructure& alg);
AlgebroidStructure structure_from_json(const Json& j);

Json symtensor_to_json(const SymTensor& h, const VarSet& vars);
SymTensor symtensor_from_json(const Json& j, VarSetPtr vars);

Json tensor_to_json(const Tensor& t, const VarSet& vars);
Tensor tensor_from_json(const Json& j, int rank, VarSetPtr vars);

Json presymplectic_to_json(const PreSymplecticStructure& e);
/// `base_dir` resolves "A_ref"-style relative file references.
PreSymplecticStructure presymplectic_from_json(const Json& j, const std::string& base_dir);

Json subbundle_to_json(const Subbundle& f, const VarSet& vars);
Subbundle subbundle_from_json(const Json& j, int dim, VarSetPtr vars);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

/// FNV-1a 64-bit content digest, hex-encoded; used in run reports.
std::string file_digest(const std::string& path);

}  // namespace lsa
