#pragma once

#include <cstddef>
#include <cstdint>

#ifndef TOOLSWITCH_BLOCK_TYPE
#define TOOLSWITCH_BLOCK_TYPE std::uint64_t
#endif

namespace toolswitch {

/// Word type backing every ToolSet. Override with -DTOOLSWITCH_BLOCK_TYPE=...
using Block = TOOLSWITCH_BLOCK_TYPE;

/// 0-based tool index. Files and printed output use 1-based indices.
using ToolIndex = std::uint32_t;

/// 0-based job index (also used for instants of a sequence).
using JobIndex = std::uint32_t;

}  // namespace toolswitch
