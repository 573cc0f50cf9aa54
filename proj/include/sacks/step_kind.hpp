#pragma once

namespace sacks {

/// One step of an iteration: a single Sacks real or a product pair of them.
enum class StepKind { Single, Pair };

}  // namespace sacks
