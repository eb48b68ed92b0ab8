#include "lsa/search.hpp"

#include "lsa/rng.hpp"

namespace lsa {

std::vector<SearchHit> search_instances(const SearchOptions& opts) {
  if (opts.dim < 1 || opts.dim > 4) throw InputError("search: --dim must be in 1..4");
  if (opts.count < 1 || opts.count > 1000) throw InputError("search: --count must be in 1..1000");
  VarSetPtr vars = make_varset({});
  const int r = opts.dim;
  const int w = 0;
  Rng rng(opts.seed);
  std::vector<SearchHit> hits;
  int tries = 0;
  const int max_tries = 200000;
  int density_pct = static_cast<int>(opts.density * 100);
  while (static_cast<int>(hits.size()) < opts.count && tries++ < max_tries) {
    AlgebroidStructure alg = AlgebroidStructure::abelian(Kind::LeftSymmetric, r, vars);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k)
          if (rng.uniform(0, 99) < density_pct)
            alg.products[i][j].c[k] = Scalar::constant(w, rng.small_rational());
    if (!check_left_symmetric(alg).pass) continue;
    if (!opts.mc_filter) {
      hits.push_back({std::move(alg), std::nullopt});
      continue;
    }
    Matrix h(r, r, w);
    for (int i = 0; i < r; ++i)
      for (int j = i; j < r; ++j) {
        Scalar v = Scalar::constant(w, rng.small_rational());
        h.at(i, j) = v;
        h.at(j, i) = v;
      }
    SymTensor H = SymTensor::from_matrix(std::move(h));
    // with the trivial dual the Maurer-Cartan equation is the S-equation
    if (!s_bracket(alg, H).is_zero()) continue;
    hits.push_back({std::move(alg), H});
  }
  return hits;
}

Json catalog_to_json(const std::vector<SearchHit>& hits) {
  Json j;
  j["$schema_version"] = kSchemaVersion;
  j["type"] = "catalog";
  Json instances = Json::array();
  for (const auto& hit : hits) {
    Json e;
    e["structure"] = structure_to_json(hit.alg);
    if (hit.H) e["H"] = symtensor_to_json(*hit.H, *hit.alg.vars);
    instances.push_back(e);
  }
  j["instances"] = instances;
  return j;
}

}  // namespace lsa
