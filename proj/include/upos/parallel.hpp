#pragma once

// Execution policy for the data-parallel kernels (dense multiplication,
// product trees, certificate expansion). Every parallel kernel has a serial
// twin that computes the identical exact result; tests compare them
// coefficient for coefficient and the kernel-bench tool compares their speed.

namespace upos::exec {

enum class Policy {
    serial,
    parallel,
};

int max_threads();

// Parallel when OpenMP is available and more than one thread is configured.
Policy default_policy();

} // namespace upos::exec
