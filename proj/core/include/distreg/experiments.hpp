#pragma once

#include "distreg/config.hpp"
#include "distreg/result_table.hpp"

namespace distreg {

// Monte Carlo sweep over machine counts: per (k, replicate) the finite-sample
// efficiencies, the realized error ratio of the one-shot fit, and per k the
// matching theoretical limits. Replicates run on a work pool with per-task
// seeds, so output is deterministic.
ResultTable run_oneshot_sweep(const ExperimentConfig& cfg);

// The asymptotic efficiency laws (estimation / in-sample / out-of-sample) as
// k sweeps 1..kmax at fixed aspect ratio.
ResultTable run_asymptotic_curves(const ExperimentConfig& cfg);

// Round-by-round accuracy of the iterative methods against pooled OLS, plus
// the one-shot baseline and a step-size sensitivity scan for gradient descent.
ResultTable run_multishot_compare(const ExperimentConfig& cfg);

// Estimation efficiency limit of the two-point worst-case scale family over
// (k, tau) grids at fixed (gamma, c, alpha).
ResultTable run_worstcase_scan(const ExperimentConfig& cfg);

}  // namespace distreg
