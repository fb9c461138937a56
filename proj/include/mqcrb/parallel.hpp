#pragma once

#include <cstddef>
#include <functional>

namespace mqcrb {

// Worker-count hint for the engine; 0 picks the hardware concurrency.
struct EngineOptions {
  unsigned threads = 1;
};

unsigned resolve_threads(unsigned hint);

// Runs body(i) for i in [0, n). Each index must write only its own output slot, which
// keeps results independent of scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace mqcrb
