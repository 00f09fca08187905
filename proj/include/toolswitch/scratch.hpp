#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "toolswitch/config.hpp"
#include "toolswitch/next_needed.hpp"
#include "toolswitch/range_union.hpp"

namespace toolswitch {

/// Reusable working buffers for the evaluators. Contents are unspecified
/// between calls. A scratch serves one evaluation at a time; give each worker
/// thread its own.
struct EvaluatorScratch {
  // KTNS
  NextNeededMatrix next;
  std::vector<std::uint8_t> in_magazine;
  std::vector<std::pair<std::uint32_t, ToolIndex>> ranked;

  // bitwise word buffers
  std::vector<Block> magazine;
  std::vector<Block> missing;
  std::vector<Block> remaining;
  std::vector<Block> hit;

  // MPCA
  std::vector<std::int32_t> empty;
  std::vector<std::int32_t> last_seen;
  std::vector<std::pair<std::int32_t, ToolIndex>> pipe_ends;
  RangeUnionTable unions;
};

}  // namespace toolswitch
