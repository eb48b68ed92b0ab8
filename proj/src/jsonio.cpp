#include "lsa/jsonio.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace lsa {

namespace {

std::vector<std::string> str_list(const Json& j, const std::string& at) {
  if (!j.is_array()) throw InputError(at + ": expected an array of strings");
  std::vector<std::string> out;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string())
      throw InputError(at + "/" + std::to_string(i) + ": expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

int get_int(const Json& j, const std::string& key, const std::string& at) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw InputError(at + "/" + key + ": expected an integer");
  return j[key].get<int>();
}

Scalar parse_at(const std::string& text, const VarSet& vars, const std::string& at) {
  try {
    return parse_scalar(text, vars);
  } catch (const Error& e) {
    throw InputError(at + ": " + e.what());
  }
}

int parse_index(const std::string& s, int rank, const std::string& at) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    if (v < 1 || v > rank) throw std::out_of_range("range");
    return v - 1;
  } catch (const std::exception&) {
    throw InputError(at + ": index '" + s + "' out of range 1.." + std::to_string(rank));
  }
}

}  // namespace

Json structure_to_json(const AlgebroidStructure& alg) {
  const VarSet& vs = *alg.vars;
  Json j;
  j["$schema_version"] = kSchemaVersion;
  j["type"] = "algebroid";
  j["kind"] = alg.kind == Kind::LeftSymmetric ? "left-symmetric" : "lie";
  j["rank"] = alg.rank;
  j["variables"] = vs.base;
  j["parameters"] = vs.param;
  Json products = Json::object();
  for (int i = 0; i < alg.rank; ++i)
    for (int jj = 0; jj < alg.rank; ++jj) {
      const Coords& p = alg.products[i][jj];
      if (p.is_zero()) continue;
      Json entry = Json::object();
      for (int k = 0; k < alg.rank; ++k)
        if (!p.c[k].is_zero()) entry[std::to_string(k + 1)] = to_string(p.c[k], vs);
      products[std::to_string(i + 1) + "," + std::to_string(jj + 1)] = entry;
    }
  j["products"] = products;
  Json anchor = Json::object();
  for (int i = 0; i < alg.rank; ++i) {
    if (alg.anchor[i].is_zero()) continue;
    Json entry = Json::object();
    for (int mu = 0; mu < vs.nbase(); ++mu)
      if (!alg.anchor[i].comp[mu].is_zero())
        entry[vs.base[mu]] = to_string(alg.anchor[i].comp[mu], vs);
    anchor[std::to_string(i + 1)] = entry;
  }
  j["anchor"] = anchor;
  return j;
}

AlgebroidStructure structure_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("/: expected an object");
  if (j.contains("$schema_version") && j["$schema_version"].get<int>() != kSchemaVersion)
    throw InputError("/$schema_version: unsupported version");
  if (!j.contains("variables")) throw InputError("/variables: missing");
  auto base = str_list(j["variables"], "/variables");
  std::vector<std::string> params;
  if (j.contains("parameters")) params = str_list(j["parameters"], "/parameters");
  VarSetPtr vars = make_varset(base, params);
  int rank = get_int(j, "rank", "");
  if (rank < 1 || rank > 16) throw InputError("/rank: must be in 1..16");
  Kind kind = Kind::LeftSymmetric;
  if (j.contains("kind")) {
    std::string ks = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    if (ks == "left-symmetric")
      kind = Kind::LeftSymmetric;
    else if (ks == "lie")
      kind = Kind::Lie;
    else
      throw InputError("/kind: expected \"left-symmetric\" or \"lie\"");
  }
  AlgebroidStructure alg = AlgebroidStructure::abelian(kind, rank, vars);
  if (j.contains("products")) {
    if (!j["products"].is_object()) throw InputError("/products: expected an object");
    for (auto it = j["products"].begin(); it != j["products"].end(); ++it) {
      const std::string& key = it.key();
      auto comma = key.find(',');
      if (comma == std::string::npos)
        throw InputError("/products/" + key + ": expected \"i,j\" key");
      int i = parse_index(key.substr(0, comma), rank, "/products/" + key);
      int jj = parse_index(key.substr(comma + 1), rank, "/products/" + key);
      if (!it.value().is_object())
        throw InputError("/products/" + key + ": expected an object");
      for (auto kt = it.value().begin(); kt != it.value().end(); ++kt) {
        int k = parse_index(kt.key(), rank, "/products/" + key + "/" + kt.key());
        if (!kt.value().is_string())
          throw InputError("/products/" + key + "/" + kt.key() + ": expected a scalar string");
        alg.products[i][jj].c[k] =
            parse_at(kt.value().get<std::string>(), *vars, "/products/" + key + "/" + kt.key());
      }
    }
  }
  if (j.contains("anchor")) {
    if (!j["anchor"].is_object()) throw InputError("/anchor: expected an object");
    for (auto it = j["anchor"].begin(); it != j["anchor"].end(); ++it) {
      int i = parse_index(it.key(), rank, "/anchor/" + it.key());
      if (!it.value().is_object())
        throw InputError("/anchor/" + it.key() + ": expected an object");
      for (auto vt = it.value().begin(); vt != it.value().end(); ++vt) {
        auto idx = vars->index_of(vt.key());
        if (!idx || *idx >= vars->nbase())
          throw InputError("/anchor/" + it.key() + "/" + vt.key() +
                           ": not a declared base variable");
        if (!vt.value().is_string())
          throw InputError("/anchor/" + it.key() + "/" + vt.key() + ": expected a scalar string");
        alg.anchor[i].comp[*idx] =
            parse_at(vt.value().get<std::string>(), *vars, "/anchor/" + it.key() + "/" + vt.key());
      }
    }
  }
  return alg;
}

Json symtensor_to_json(const SymTensor& h, const VarSet& vars) {
  Json j;
  j["$schema_version"] = kSchemaVersion;
  j["type"] = "symtensor";
  Json rows = Json::array();
  for (int i = 0; i < h.rank(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < h.rank(); ++k) row.push_back(to_string(h.m.at(i, k), vars));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

SymTensor symtensor_from_json(const Json& j, VarSetPtr vars) {
  if (!j.is_object() || !j.contains("matrix") || !j["matrix"].is_array())
    throw InputError("/matrix: expected an array of rows");
  const Json& rows = j["matrix"];
  int r = static_cast<int>(rows.size());
  Matrix m(r, r, vars->width());
  for (int i = 0; i < r; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != r)
      throw InputError("/matrix/" + std::to_string(i) + ": expected a row of length " +
                       std::to_string(r));
    for (int k = 0; k < r; ++k) {
      if (!rows[i][k].is_string())
        throw InputError("/matrix/" + std::to_string(i) + "/" + std::to_string(k) +
                         ": expected a scalar string");
      m.at(i, k) = parse_at(rows[i][k].get<std::string>(), *vars,
                            "/matrix/" + std::to_string(i) + "/" + std::to_string(k));
    }
  }
  if (!m.is_symmetric()) throw InputError("/matrix: not symmetric");
  return SymTensor::from_matrix(std::move(m));
}

Json tensor_to_json(const Tensor& t, const VarSet& vars) {
  Json j;
  j["degree"] = t.degree();
  Json terms = Json::object();
  for (const auto& [key, c] : t.terms()) {
    std::string k;
    for (size_t i = 0; i < key.wedge.size(); ++i)
      k += (i ? "," : "") + std::to_string(key.wedge[i] + 1);
    k += "|" + std::to_string(key.last + 1);
    terms[k] = to_string(c, vars);
  }
  j["terms"] = terms;
  return j;
}

Tensor tensor_from_json(const Json& j, int rank, VarSetPtr vars) {
  if (!j.is_object()) throw InputError("/: expected a tensor object");
  int degree = get_int(j, "degree", "");
  if (degree < 0 || degree > rank) throw InputError("/degree: out of range");
  Tensor t(degree, rank, vars->width());
  if (j.contains("terms")) {
    if (!j["terms"].is_object()) throw InputError("/terms: expected an object");
    for (auto it = j["terms"].begin(); it != j["terms"].end(); ++it) {
      const std::string& key = it.key();
      auto bar = key.find('|');
      if (bar == std::string::npos) throw InputError("/terms/" + key + ": expected \"i1,..|k\"");
      std::vector<int> wedge;
      std::string head = key.substr(0, bar);
      size_t pos = 0;
      while (pos < head.size()) {
        auto comma = head.find(',', pos);
        std::string piece =
            comma == std::string::npos ? head.substr(pos) : head.substr(pos, comma - pos);
        if (!piece.empty()) wedge.push_back(parse_index(piece, rank, "/terms/" + key));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (static_cast<int>(wedge.size()) != degree)
        throw InputError("/terms/" + key + ": wedge arity != degree");
      int last = parse_index(key.substr(bar + 1), rank, "/terms/" + key);
      if (!it.value().is_string())
        throw InputError("/terms/" + key + ": expected a scalar string");
      t.add_term(wedge, last,
                 parse_at(it.value().get<std::string>(), *vars, "/terms/" + key));
    }
  }
  return t;
}

Json presymplectic_to_json(const PreSymplecticStructure& e) {
  Json j;
  j["$schema_version"] = kSchemaVersion;
  j["type"] = "presymplectic";
  if (e.is_from_bialgebroid()) {
    j["source"] = "bialgebroid";
    j["A"] = structure_to_json(e.candidate().A);
    j["Astar"] = structure_to_json(e.candidate().Astar);
  } else if (e.is_from_symplectic()) {
    j["source"] = "symplectic";
    j["lie"] = structure_to_json(e.symplectic_data().lie);
    FormTensor om(1, e.dim(), e.width());
    for (int i = 0; i < e.dim(); ++i)
      for (int k = 0; k < e.dim(); ++k)
        if (!e.form().at(i, k).is_zero()) om.add_term({i}, k, e.form().at(i, k));
    j["omega"] = tensor_to_json(om, e.vars());
  } else {
    j["source"] = "explicit";
    j["structure"] = structure_to_json(e.explicit_data().table);
    Json rows = Json::array();
    for (int i = 0; i < e.dim(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < e.dim(); ++k) row.push_back(to_string(e.form().at(i, k), e.vars()));
      rows.push_back(row);
    }
    j["form"] = rows;
  }
  return j;
}

namespace {

Json resolve_ref(const Json& j, const std::string& inline_key, const std::string& ref_key,
                 const std::string& base_dir) {
  if (j.contains(inline_key)) return j[inline_key];
  if (j.contains(ref_key)) {
    if (!j[ref_key].is_string()) throw InputError("/" + ref_key + ": expected a path string");
    std::filesystem::path p = j[ref_key].get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return load_json_file(p.string());
  }
  throw InputError("/" + inline_key + ": missing (or provide " + ref_key + ")");
}

}  // namespace

PreSymplecticStructure presymplectic_from_json(const Json& j, const std::string& base_dir) {
  if (!j.is_object() || !j.contains("source") || !j["source"].is_string())
    throw InputError("/source: expected \"bialgebroid\", \"symplectic\" or \"explicit\"");
  std::string source = j["source"].get<std::string>();
  if (source == "bialgebroid") {
    AlgebroidStructure A = structure_from_json(resolve_ref(j, "A", "A_ref", base_dir));
    AlgebroidStructure As = structure_from_json(resolve_ref(j, "Astar", "Astar_ref", base_dir));
    if (A.rank != As.rank) throw InputError("/Astar: rank differs from /A");
    if (*A.vars != *As.vars) {
      if (A.vars->base != As.vars->base) throw InputError("/Astar: variables differ from /A");
      As.vars = A.vars;
    }
    return PreSymplecticStructure::from_bialgebroid({std::move(A), std::move(As)});
  }
  if (source == "symplectic") {
    AlgebroidStructure lie = structure_from_json(resolve_ref(j, "lie", "lie_ref", base_dir));
    if (!j.contains("omega")) throw InputError("/omega: missing");
    FormTensor om = tensor_from_json(j["omega"], lie.rank, lie.vars);
    return from_symplectic(lie, om);
  }
  if (source == "explicit") {
    AlgebroidStructure table =
        structure_from_json(resolve_ref(j, "structure", "structure_ref", base_dir));
    if (!j.contains("form") || !j["form"].is_array()) throw InputError("/form: expected rows");
    int n = table.rank;
    Matrix m(n, n, table.width());
    for (int i = 0; i < n; ++i) {
      if (!j["form"][i].is_array() || static_cast<int>(j["form"][i].size()) != n)
        throw InputError("/form/" + std::to_string(i) + ": expected a row of length " +
                         std::to_string(n));
      for (int k = 0; k < n; ++k)
        m.at(i, k) = parse_at(j["form"][i][k].get<std::string>(), *table.vars,
                              "/form/" + std::to_string(i) + "/" + std::to_string(k));
    }
    return PreSymplecticStructure::from_explicit(std::move(table), std::move(m));
  }
  throw InputError("/source: unknown value '" + source + "'");
}

Json subbundle_to_json(const Subbundle& f, const VarSet& vars) {
  Json j;
  j["$schema_version"] = kSchemaVersion;
  j["type"] = "subbundle";
  Json rows = Json::array();
  for (const auto& s : f.sections) {
    Json row = Json::array();
    for (const auto& c : s.c) row.push_back(to_string(c, vars));
    rows.push_back(row);
  }
  j["sections"] = rows;
  return j;
}

Subbundle subbundle_from_json(const Json& j, int dim, VarSetPtr vars) {
  if (!j.is_object() || !j.contains("sections") || !j["sections"].is_array())
    throw InputError("/sections: expected an array of rows");
  Subbundle out;
  const Json& rows = j["sections"];
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != dim)
      throw InputError("/sections/" + std::to_string(i) + ": expected a row of length " +
                       std::to_string(dim));
    BigSection s(dim, vars->width());
    for (int k = 0; k < dim; ++k) {
      if (!rows[i][k].is_string())
        throw InputError("/sections/" + std::to_string(i) + "/" + std::to_string(k) +
                         ": expected a scalar string");
      s.c[k] = parse_at(rows[i][k].get<std::string>(), *vars,
                        "/sections/" + std::to_string(i) + "/" + std::to_string(k));
    }
    out.sections.push_back(std::move(s));
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  uint64_t h = 1469598103934665603ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
    if (in.eof()) break;
  }
  char hex[17];
  snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return std::string(hex);
}

}  // namespace lsa
