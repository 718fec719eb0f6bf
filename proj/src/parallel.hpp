// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace hinreg::detail {

/// Runs fn(0..n-1) across a small thread pool. Each index must write only
/// its own output slot; results are then identical to a sequential loop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hinreg::detail
