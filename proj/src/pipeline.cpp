#include "ordlab/pipeline.hpp"

#include <algorithm>
#include <memory>

namespace ordlab {

ReversalPipelineResult reversal_pipeline(const Injection& f,
                                         const ExtractParams& params_in) {
  ReversalPipelineResult out;
  const std::size_t domain = f.domain();

  TfLinearPoset line(f);
  auto reversed = std::make_shared<ReversedPoset>(line);
  ProductLqPoset prod(reversed, LqVariant::Q3);

  // A line index that sits above its entire tail keeps that position at
  // every later stage, so these are exactly the true numbers of f.
  for (std::size_t n = 0; n < domain; ++n) {
    bool top = true;
    for (std::size_t m = n + 1; m < domain && top; ++m)
      if (!line.above(n, m)) top = false;
    if (top) out.seed_lines.push_back(n);
  }

  // Cover every line with the window so the tail scan above is decisive.
  ExtractParams params = params_in;
  params.window = std::max(params.window, 3 * domain);

  ChainFamily fam;
  fam.k = prod.legs();
  fam.chains.resize(fam.k);
  for (Id e = 0; e < params.window; ++e)
    fam.chains[prod.leg_of(e)].push_back(e);

  // In the reversed line the found indices ascend, so their top-leg
  // copies form an ascending seed.
  ChainPrefix seed;
  seed.ascending = true;
  for (std::size_t n : out.seed_lines)
    seed.elements.push_back(fam.k * n + prod.z_leg());

  out.extraction = extract_tower(prod, fam, seed, params);

  for (Id e : out.extraction.chain.elements)
    out.decoded_lines.push_back(prod.line_of(e));

  if (out.decoded_lines.empty()) {
    out.table.clear();
    out.brute.clear();
  } else {
    out.table = decode_range_from_true(f, out.decoded_lines);
    const std::size_t max_line = *std::max_element(out.decoded_lines.begin(),
                                                   out.decoded_lines.end());
    out.brute = f.range_table(f(max_line));
  }
  out.match = out.table == out.brute;
  return out;
}

}  // namespace ordlab
