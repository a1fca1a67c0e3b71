#ifndef ORDLAB_PIPELINE_HPP
#define ORDLAB_PIPELINE_HPP

#include "ordlab/adversaries.hpp"
#include "ordlab/extractor.hpp"

namespace ordlab {

// End-to-end run: build the two-sided line for f, reverse it so the
// descending true part becomes the ascending bottom, take the product
// with the three-leg fan, extract a homogeneous chain seeded on the
// top-leg lines that dominate their whole tail, and decode the range
// table of f from the chain's lines.  `brute` is the direct-evaluation
// table over the same bound for comparison.
struct ReversalPipelineResult {
  std::vector<std::size_t> seed_lines;
  ExtractionResult extraction;
  std::vector<std::size_t> decoded_lines;
  std::vector<uint8_t> table;
  std::vector<uint8_t> brute;
  bool match = false;
};

ReversalPipelineResult reversal_pipeline(const Injection& f,
                                         const ExtractParams& params = {});

}  // namespace ordlab

#endif
