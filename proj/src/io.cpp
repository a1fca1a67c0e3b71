#include "ordlab/io.hpp"

#include <fstream>
#include <sstream>

namespace ordlab {

namespace {

using nlohmann::json;

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected object");
}

bool is_uint(const json& v) {
  return v.is_number_unsigned() ||
         (v.is_number_integer() && v.get<long long>() >= 0);
}

std::vector<Id> id_array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected array");
  std::vector<Id> out;
  for (const auto& v : j) {
    if (!is_uint(v))
      throw ParseError(std::string(what) + ": expected unsigned entries");
    out.push_back(v.get<Id>());
  }
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Zero: return "zero";
    case Verdict::AtLeastM: return "at_least_m";
    case Verdict::Open: return "open";
    default: return "violating";
  }
}

}  // namespace

GeneratedPoset poset_from_json(const json& j) {
  require_object(j, "poset");
  const std::string kind = j.value("kind", "");
  if (kind == "family") {
    return generate(family_spec_from_json(j));
  }
  if (kind != "finite") throw ParseError("poset: unknown kind '" + kind + "'");
  if (!j.contains("n") || !is_uint(j["n"]))
    throw ParseError("poset: missing element count");
  const std::size_t n = j["n"].get<std::size_t>();
  std::vector<std::pair<Id, Id>> pairs;
  for (const auto& pr : j.value("pairs", json::array())) {
    if (!pr.is_array() || pr.size() != 2)
      throw ParseError("poset: each pair must be [a, b]");
    pairs.emplace_back(pr[0].get<Id>(), pr[1].get<Id>());
  }
  GeneratedPoset out;
  out.poset = std::make_shared<FinitePoset>(n, pairs);
  out.natural_k = 0;
  return out;
}

json finite_poset_to_json(const FinitePoset& p) {
  json pairs = json::array();
  for (const auto& [a, b] : p.cover_pairs()) pairs.push_back({a, b});
  return json{{"kind", "finite"}, {"n", p.n()}, {"pairs", pairs}};
}

std::vector<Id> elements_from_json(const json& j) {
  require_object(j, "elements");
  if (!j.contains("elements")) throw ParseError("missing 'elements'");
  return id_array(j["elements"], "elements");
}

json elements_to_json(const std::vector<Id>& elements) {
  return json{{"elements", elements}};
}

ChainFamily assignment_from_json(const json& j) {
  require_object(j, "assignment");
  ChainFamily fam;
  fam.k = j.value("k_bound", std::size_t{0});
  for (const auto& c : j.value("chains", json::array()))
    fam.chains.push_back(id_array(c, "assignment chain"));
  return fam;
}

json assignment_to_json(const ChainFamily& fam, std::size_t k_bound) {
  json chains = json::array();
  for (const auto& c : fam.chains) chains.push_back(c);
  return json{{"k_bound", k_bound}, {"chains", chains}};
}

json certificate_to_json(const HomogeneityCertificate& cert) {
  json verdicts = json::array();
  for (Verdict v : cert.verdicts) verdicts.push_back(verdict_name(v));
  return json{{"m", cert.m},
              {"window", cert.window},
              {"chain", json{{"elements", cert.chain.elements},
                             {"ascending", cert.chain.ascending}}},
              {"verdicts", verdicts},
              {"counts", cert.counts},
              {"violating", cert.violating()},
              {"passes", cert.passes()}};
}

json transcript_to_json(const ExtractionTranscript& t) {
  json out{{"strategy", t.strategy},
           {"chain_order", t.chain_order},
           {"node_path", t.node_path},
           {"x_seq", t.x_seq},
           {"y_seq", t.y_seq},
           {"m", t.m},
           {"n", t.n},
           {"trimmed", t.trimmed},
           {"chain", t.chain}};
  if (t.refutation) {
    out["refutation"] = json{{"h_map", t.refutation->h_map},
                             {"cycle", t.refutation->cycle}};
  }
  return out;
}

Injection injection_from_json(const json& j) {
  require_object(j, "injection");
  if (j.value("kind", "") != "injection")
    throw ParseError("injection: wrong kind");
  if (j.contains("values")) {
    std::vector<uint64_t> values;
    for (const auto& v : j["values"]) values.push_back(v.get<uint64_t>());
    return Injection::from_values(std::move(values));
  }
  if (!j.contains("seed") || !j.contains("domain"))
    throw ParseError("injection: need values or seed+domain");
  return Injection::seeded(j["seed"].get<uint64_t>(),
                           j["domain"].get<std::size_t>());
}

json injection_to_json(const Injection& f) {
  std::vector<uint64_t> values;
  for (std::size_t i = 0; i < f.domain(); ++i) values.push_back(f(i));
  return json{{"kind", "injection"}, {"values", values}};
}

FiniteTree tree_from_json(const json& j) {
  require_object(j, "tree");
  if (j.value("kind", "") != "tree") throw ParseError("tree: wrong kind");
  std::vector<std::vector<std::size_t>> nodes;
  for (const auto& path : j.value("nodes", json::array()))
    nodes.push_back(id_array(path, "tree path"));
  return FiniteTree(std::move(nodes));
}

json tree_to_json(const FiniteTree& t) {
  json nodes = json::array();
  for (const auto& path : t.nodes()) nodes.push_back(path);
  return json{{"kind", "tree"}, {"nodes", nodes}};
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << text;
}

}  // namespace ordlab
