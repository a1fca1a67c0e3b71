#ifndef ORDLAB_IO_HPP
#define ORDLAB_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "ordlab/adversaries.hpp"
#include "ordlab/chains_trees.hpp"
#include "ordlab/extractor.hpp"
#include "ordlab/families.hpp"
#include "ordlab/homogeneity.hpp"
#include "ordlab/poset.hpp"

namespace ordlab {

// Poset files: {"kind":"finite","n":...,"pairs":[[a,b],...]} with pairs
// meaning a<b before transitive closure, or {"kind":"family",...} as
// produced by family_spec_to_json.  Loading a family generates it.
GeneratedPoset poset_from_json(const nlohmann::json& j);
nlohmann::json finite_poset_to_json(const FinitePoset& p);

std::vector<Id> elements_from_json(const nlohmann::json& j);
nlohmann::json elements_to_json(const std::vector<Id>& elements);

ChainFamily assignment_from_json(const nlohmann::json& j);
nlohmann::json assignment_to_json(const ChainFamily& fam,
                                  std::size_t k_bound);

nlohmann::json certificate_to_json(const HomogeneityCertificate& cert);
nlohmann::json transcript_to_json(const ExtractionTranscript& t);

// Injection files: {"kind":"injection","values":[...]} or
// {"kind":"injection","seed":...,"domain":...}.
Injection injection_from_json(const nlohmann::json& j);
nlohmann::json injection_to_json(const Injection& f);

// Tree files: {"kind":"tree","nodes":[[path]...]}; loading enforces
// prefix closure.
FiniteTree tree_from_json(const nlohmann::json& j);
nlohmann::json tree_to_json(const FiniteTree& t);

// Canonical serialization: sorted keys, two-space indent, trailing
// newline.  Equal values always produce identical bytes.
std::string canonical_dump(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ordlab

#endif
