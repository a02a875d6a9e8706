#pragma once

#include <string>

#include "pe/algorithms.hpp"
#include "pe/cost.hpp"

namespace pe {

// 800x800 canvas, unit circle inscribed at radius 350px, centered. Robot
// polylines, worst-exit markers, and dashed pickup segments from the queen's
// position at discovery to each worst exit. Output is deterministic so the
// file can be golden-tested byte for byte.
std::string render_svg(const AlgorithmInstance& inst, const EvacuationReport& rep);

}  // namespace pe
