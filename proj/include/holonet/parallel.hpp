#pragma once

namespace holonet {

// Thread budget for OpenMP kernels: HOLONET_THREADS caps the machine
// parallelism when set to a positive integer. Read on each call so tests
// can adjust the environment.
int thread_count();

} // namespace holonet
