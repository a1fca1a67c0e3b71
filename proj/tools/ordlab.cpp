#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ordlab/adversaries.hpp"
#include "ordlab/chains_trees.hpp"
#include "ordlab/decomposition.hpp"
#include "ordlab/extractor.hpp"
#include "ordlab/families.hpp"
#include "ordlab/io.hpp"
#include "ordlab/pipeline.hpp"
#include "ordlab/selftest.hpp"
#include "ordlab/width.hpp"

using namespace ordlab;
using nlohmann::json;

namespace {

// Exit codes: 0 success, 1 usage or malformed input, 2 a certificate
// or comparison failed, 3 a generator promise was violated.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCertFail = 2;
constexpr int kPromise = 3;

struct Options {
  std::string command;
  std::string poset_path, injection_path, chain_path, out_path;
  std::string strategy = "tower", construction, mode;
  std::size_t k = 0, n = 500, m = 10, budget = 0, lookahead = 32;
  uint64_t seed = 0;
  bool n_given = false;
};

json config_json(const Options& o) {
  return json{{"command", o.command},
              {"poset", o.poset_path},
              {"injection", o.injection_path},
              {"chain", o.chain_path},
              {"out", o.out_path},
              {"strategy", o.strategy},
              {"construction", o.construction},
              {"mode", o.mode},
              {"k", o.k},
              {"n", o.n},
              {"m", o.m},
              {"budget", o.budget},
              {"lookahead", o.lookahead},
              {"seed", o.seed}};
}

struct Outcome {
  json payload;
  int code = kOk;
  // Artifact written to --out; defaults to the whole report.
  std::optional<json> artifact;
};

std::size_t clamp_window(const Poset& p, std::size_t n) {
  const auto sz = p.size();
  return sz ? std::min(n, *sz) : n;
}

bool listed_ascending(const Poset& p, const std::vector<Id>& elems) {
  for (std::size_t i = 0; i + 1 < elems.size(); ++i)
    if (!p.below(elems[i], elems[i + 1])) return false;
  return true;
}

// Chain classes over the window: the family's own decomposition when it
// declares one, otherwise the online partitioner under --k.
ChainFamily chains_for(const GeneratedPoset& g, const Options& o,
                       std::size_t window) {
  if (o.k == 0 && g.natural_k >= 1) {
    ChainFamily fam;
    fam.k = g.natural_k;
    fam.chains.resize(g.natural_k);
    for (Id e = 0; e < window; ++e)
      fam.chains[g.chain_class ? g.chain_class(e) : 0].push_back(e);
    return fam;
  }
  if (o.k == 0)
    throw ParseError("this poset declares no decomposition; pass --k");
  return online_partition(*g.poset, o.k, window);
}

// Greedy ascending subsequence of a chain class, capped at `len`.
ChainPrefix ascending_prefix(const Poset& p, const std::vector<Id>& chain,
                             std::size_t len) {
  ChainPrefix A;
  A.ascending = true;
  for (Id e : chain) {
    if (A.elements.size() >= len) break;
    if (A.elements.empty() || p.below(A.elements.back(), e))
      A.elements.push_back(e);
  }
  return A;
}

json extraction_payload(const ExtractionResult& r) {
  return json{{"chain", elements_to_json(r.chain.elements)},
              {"ascending", r.chain.ascending},
              {"certificate", certificate_to_json(r.certificate)},
              {"transcript", transcript_to_json(r.transcript)}};
}

FamilySpec adversary_spec(const Options& o) {
  FamilySpec spec;
  spec.name = o.construction;
  spec.seed = o.seed;
  if (o.construction == "tf_linear" || o.construction == "chain_ext" ||
      o.construction == "xi")
    spec.params["domain"] = o.n_given ? o.n : 200;
  else if (o.construction == "pi02")
    spec.params["indices"] = o.k ? o.k : 3;
  else if (o.construction == "shifted_chains")
    spec.params["k"] = o.k ? o.k : 2;
  return spec;
}

const Injection* injection_of(const Poset& p) {
  if (auto* tf = dynamic_cast<const TfLinearPoset*>(&p))
    return &tf->injection();
  if (auto* ce = dynamic_cast<const ChainExtPoset*>(&p))
    return &ce->injection();
  if (auto* xi = dynamic_cast<const XiPoset*>(&p)) return &xi->injection();
  return nullptr;
}

// --- subcommands ---

Outcome run_generate(const Options& o) {
  if (o.construction.empty())
    throw ParseError("generate needs --construction");
  FamilySpec spec = adversary_spec(o);
  const GeneratedPoset g = generate(spec);  // validates name and params
  Outcome out;
  if (o.mode == "finite") {
    const FinitePoset trunc = g.poset->truncate(o.n);
    out.artifact = finite_poset_to_json(trunc);
    out.payload = {{"poset", *out.artifact}};
  } else {
    out.artifact = family_spec_to_json(spec);
    out.payload = {{"poset", *out.artifact}, {"natural_k", g.natural_k}};
  }
  return out;
}

Outcome run_decompose(const Options& o) {
  const GeneratedPoset g = poset_from_json(read_json_file(o.poset_path));
  const std::size_t window = clamp_window(*g.poset, o.n);
  const std::size_t k = o.k ? o.k : g.natural_k;
  if (k == 0) throw ParseError("decompose needs --k for this poset");
  const ChainFamily fam = online_partition(*g.poset, k, window);
  std::size_t used = 0;
  for (const auto& c : fam.chains)
    if (!c.empty()) ++used;
  Outcome out;
  out.artifact = assignment_to_json(fam, k);
  out.payload = {{"assignment", *out.artifact},
                 {"chains_used", used},
                 {"chain_bound", OnlinePartitioner::chain_bound(k)}};
  return out;
}

Outcome run_extract(const Options& o) {
  const GeneratedPoset g = poset_from_json(read_json_file(o.poset_path));
  const Poset& p = *g.poset;
  const std::size_t window = clamp_window(p, o.n);
  ExtractParams params;
  params.window = window;
  params.m = o.m;
  params.budget = o.budget;
  params.lookahead = o.lookahead;

  ExtractionResult r;
  if (o.strategy == "tower") {
    const ChainFamily fam = chains_for(g, o, window);
    // Seed on the highest-indexed class that is long enough to probe.
    std::size_t pick = 0;
    for (std::size_t i = fam.chains.size(); i-- > 0;)
      if (fam.chains[i].size() >= 48) {
        pick = i;
        break;
      }
    r = extract_tower(p, fam, ascending_prefix(p, fam.chains[pick], 48),
                      params);
  } else if (o.strategy == "w2-diagonal") {
    const ChainFamily fam = chains_for(g, o, window);
    r = extract_w2_diagonal(
        p, ascending_prefix(p, fam.chains[0], std::max<std::size_t>(o.m, 2)),
        params);
  } else if (o.strategy == "cd2-sads") {
    r = extract_cd2_sads(p, chains_for(g, o, window), params);
  } else if (o.strategy == "wf-split") {
    r = extract_wfsplit_aca(p, chains_for(g, o, window), params);
  } else if (o.strategy == "ideal") {
    r = extract_no_antichain(p, params);
  } else {
    throw ParseError("unknown strategy: " + o.strategy);
  }

  Outcome out;
  out.artifact = elements_to_json(r.chain.elements);
  out.payload = extraction_payload(r);
  if (!r.certificate.passes()) out.code = kCertFail;
  return out;
}

Outcome run_verify(const Options& o) {
  const GeneratedPoset g = poset_from_json(read_json_file(o.poset_path));
  ChainPrefix chain;
  chain.elements = elements_from_json(read_json_file(o.chain_path));
  chain.ascending = listed_ascending(*g.poset, chain.elements);
  const std::size_t window = clamp_window(*g.poset, o.n);
  const HomogeneityCertificate cert =
      verify_prefix_homogeneity(*g.poset, chain, o.m, window);
  Outcome out;
  out.payload = {{"certificate", certificate_to_json(cert)}};
  if (!cert.passes()) out.code = kCertFail;
  return out;
}

Outcome run_adversary(const Options& o) {
  if (o.construction.empty())
    throw ParseError("adversary needs --construction");
  const FamilySpec spec = adversary_spec(o);
  const GeneratedPoset g = generate(spec);
  Outcome out;
  out.artifact = family_spec_to_json(spec);
  out.payload = {{"poset", *out.artifact}};
  if (const Injection* f = injection_of(*g.poset)) {
    out.payload["injection"] = injection_to_json(*f);
    out.payload["true_numbers"] = f->true_numbers_up_to(f->domain());
  }
  if (g.hidden_answer) out.payload["hidden_index"] = *g.hidden_answer;
  return out;
}

Outcome run_decode(const Options& o) {
  const GeneratedPoset g = poset_from_json(read_json_file(o.poset_path));
  const std::size_t window = clamp_window(*g.poset, o.n);
  const auto B = find_bad_sequence(*g.poset, window, o.m);
  Outcome out;
  if (!B) {
    out.payload = {{"found", false}};
    out.code = kCertFail;
    return out;
  }
  out.payload = {{"found", true}, {"bad_sequence", *B}};
  if (auto* xi = dynamic_cast<const XiPoset*>(g.poset.get())) {
    const std::vector<uint8_t> table = decode_range_from_bad_sequence(*xi, *B);
    const Injection& f = xi->injection();
    bool match = true;
    for (uint64_t v = 0; v < table.size(); ++v) {
      bool hit = false;
      for (std::size_t i = 0; i < f.domain(); ++i)
        if (f(i) == v) hit = true;
      if ((table[v] != 0) != hit) match = false;
    }
    out.payload["range_table"] = table;
    out.payload["match"] = match;
    if (!match) out.code = kCertFail;
  }
  return out;
}

Outcome run_pipeline(const Options& o) {
  Injection f = o.injection_path.empty()
                    ? Injection::seeded(o.seed, o.n_given ? o.n : 200)
                    : injection_from_json(read_json_file(o.injection_path));
  ExtractParams params;
  params.m = o.m;
  params.budget = o.budget;
  params.lookahead = o.lookahead;
  const ReversalPipelineResult r = reversal_pipeline(f, params);
  Outcome out;
  out.payload = {{"seed_lines", r.seed_lines},
                 {"decoded_lines", r.decoded_lines},
                 {"extraction", extraction_payload(r.extraction)},
                 {"range_table", r.table},
                 {"match", r.match}};
  if (!r.match || !r.extraction.certificate.passes()) out.code = kCertFail;
  return out;
}

Outcome run_oracle(const Options& o) {
  Outcome out;
  if (o.mode == "leftmost") {
    const FiniteTree tree = tree_from_json(read_json_file(o.poset_path));
    const std::size_t depth = o.n_given ? o.n : 8;
    const TreeNode node = leftmost_path(tree, depth);
    out.payload = {{"path", node.path}};
    out.artifact = json{{"path", node.path}};
  } else if (o.mode == "ideals") {
    const GeneratedPoset g = poset_from_json(read_json_file(o.poset_path));
    const FinitePoset trunc = g.poset->truncate(clamp_window(*g.poset, o.n));
    const IdealFamily fam =
        essential_ideal_decomposition(trunc, o.lookahead);
    out.payload = {{"ideals", fam.ideals}};
  } else if (o.mode == "maxchain") {
    const GeneratedPoset g = poset_from_json(read_json_file(o.poset_path));
    const std::size_t window = clamp_window(*g.poset, o.n);
    const std::vector<Id> chain = greedy_maximal_chain(*g.poset, window);
    out.payload = {{"chain", chain},
                   {"maximal", extend_chain_maximal(*g.poset, chain, window) ==
                                   chain}};
    out.artifact = elements_to_json(chain);
  } else {
    throw ParseError("oracle needs --mode leftmost|ideals|maxchain");
  }
  return out;
}

Outcome run_selftest(const Options&) {
  Outcome out;
  out.payload = selftest_report();
  if (!out.payload.at("all_pass").get<bool>()) out.code = kCertFail;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"workbench for chain decompositions of narrow posets"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--poset", o.poset_path, "poset file (finite or family)");
    sub->add_option("--injection", o.injection_path, "injection file");
    sub->add_option("--k", o.k, "width promise / class count");
    auto* n_opt = sub->add_option("--n", o.n, "window size");
    n_opt->each([&](const std::string&) { o.n_given = true; });
    sub->add_option("--m", o.m, "homogeneity threshold");
    sub->add_option("--budget", o.budget, "search budget (0 = default)");
    sub->add_option("--lookahead", o.lookahead, "finite lookahead depth");
    sub->add_option("--seed", o.seed, "base seed");
    sub->add_option("--out", o.out_path, "write the command artifact here");
    sub->add_option("--strategy", o.strategy,
                    "tower|w2-diagonal|cd2-sads|wf-split|ideal");
    sub->add_option("--construction", o.construction, "family name");
    sub->add_option("--mode", o.mode, "subcommand-specific mode");
    return sub;
  };

  add_common(app.add_subcommand("generate", "emit a poset file"));
  add_common(app.add_subcommand("decompose", "online chain partition"));
  add_common(app.add_subcommand("extract", "homogeneous chain extraction"));
  auto* verify = add_common(
      app.add_subcommand("verify", "check a chain's certificate"));
  verify->add_option("chain", o.chain_path, "chain file")->required();
  add_common(app.add_subcommand("adversary", "seeded hard instances"));
  add_common(app.add_subcommand("decode", "bad-sequence range decoding"));
  add_common(app.add_subcommand("pipeline", "end-to-end reversal run"));
  add_common(app.add_subcommand("oracle", "reference computations"));
  add_common(app.add_subcommand("selftest", "reduced-scale property suite"));

  CLI11_PARSE(app, argc, argv);
  o.command = app.get_subcommands().front()->get_name();

  if (const char* env = std::getenv("ORDLAB_SEED"))
    o.seed = std::strtoull(env, nullptr, 10);

  json report{{"schema", "ordlab-report-1"}, {"config", config_json(o)}};
  Outcome outcome;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (o.command == "generate") outcome = run_generate(o);
    else if (o.command == "decompose") outcome = run_decompose(o);
    else if (o.command == "extract") outcome = run_extract(o);
    else if (o.command == "verify") outcome = run_verify(o);
    else if (o.command == "adversary") outcome = run_adversary(o);
    else if (o.command == "decode") outcome = run_decode(o);
    else if (o.command == "pipeline") outcome = run_pipeline(o);
    else if (o.command == "oracle") outcome = run_oracle(o);
    else outcome = run_selftest(o);
  } catch (const WidthPromiseViolated& e) {
    outcome.code = kPromise;
    outcome.payload = {{"error", e.what()}, {"antichain", e.antichain}};
  } catch (const HeightPromiseViolated& e) {
    outcome.code = kPromise;
    outcome.payload = {{"error", e.what()}, {"chain", e.chain}};
  } catch (const AntichainBoundExceeded& e) {
    outcome.code = kPromise;
    outcome.payload = {{"error", e.what()}};
  } catch (const StabilityViolated& e) {
    outcome.code = kPromise;
    outcome.payload = {{"error", e.what()}, {"row", e.x}};
  } catch (const NotInjective& e) {
    outcome.code = kPromise;
    outcome.payload = {{"error", e.what()}};
  } catch (const NotTrueNumber& e) {
    outcome.code = kPromise;
    outcome.payload = {{"error", e.what()}};
  } catch (const NotBadSequence& e) {
    outcome.code = kPromise;
    outcome.payload = {{"error", e.what()}};
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;

  report["payload"] = outcome.payload;
  report["exit"] = outcome.code;
  // Timing stays outside the report object so reruns stay byte-identical.
  const json doc{
      {"report", report},
      {"timing_ms",
       std::chrono::duration_cast<std::chrono::milliseconds>(elapsed)
           .count()}};
  std::cout << canonical_dump(doc);
  if (!o.out_path.empty()) {
    const json& artifact = outcome.artifact ? *outcome.artifact : report;
    write_text_file(o.out_path, canonical_dump(artifact));
  }
  return outcome.code;
}
