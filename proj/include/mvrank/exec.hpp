#pragma once

namespace mvrank {

// Execution policy for the data-parallel kernels. Serial is the reference
// implementation; Parallel uses OpenMP. Both must produce bit-identical
// results for any thread count, so reductions are chunked with fixed
// boundaries and outputs are written by index.
enum class Exec { Serial, Parallel };

} // namespace mvrank
