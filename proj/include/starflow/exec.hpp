#pragma once

namespace starflow {

/// Execution policy for the per-node kernels. `serial` is the reference path;
/// `parallel` distributes nodes over OpenMP threads and must produce
/// bit-identical results.
enum class Exec { serial, parallel };

int max_threads();

}  // namespace starflow
