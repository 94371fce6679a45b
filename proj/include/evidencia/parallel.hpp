#pragma once

#include <functional>

// Minimal fork-join helper. Work item i must be independent of all others and
// write only to its own output slot; that makes results independent of the
// worker count, which the report-determinism contract relies on.

namespace evidencia {

// Worker cap: EVIDENCIA_THREADS if set (>=1), else hardware concurrency.
int max_threads();

void parallel_for(int n, const std::function<void(int)>& body);

} // namespace evidencia
