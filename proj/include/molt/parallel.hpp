#pragma once

namespace molt {

/// Selects the OpenMP kernels or the serial reference path.
enum class ExecPolicy { serial, parallel };

/// Sets the OpenMP team size (no-op for k <= 0).
void set_num_threads(int k);
int max_threads();

}  // namespace molt
