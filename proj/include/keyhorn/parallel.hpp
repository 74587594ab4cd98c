#pragma once

#include <cstddef>
#include <functional>

namespace keyhorn {

/// Upper bound on worker threads used by the library (default 1).
void set_max_threads(int threads);
int max_threads();

/// Runs body(i) for i in [0, count), splitting the range over at most
/// max_threads() workers. Each index must write only its own outputs.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace keyhorn
