#pragma once

#include <cstdint>
#include <vector>

#include "kklab/grid.hpp"

namespace kklab {

/// One recorded time level of a run.
struct snapshot {
    double t = 0.0;
    std::int64_t step = 0;
    field_pair fields;
};

/// A run's recorded history: the grid it lived on, how the boundary was
/// closed, and the snapshots captured at the configured cadence. The first
/// snapshot is always the initial data and the last is always the final time.
struct trajectory {
    grid1d grid;
    boundary_kind boundary = boundary_kind::outflow;
    std::vector<snapshot> snapshots;
    std::int64_t total_steps = 0;

    const snapshot& initial() const { return snapshots.front(); }
    const snapshot& final() const { return snapshots.back(); }
};

/// Passed to per-step observers: state of the native evolution variables
/// immediately before and after one update.
struct step_event {
    std::int64_t step = 0;
    double t_before = 0.0;
    double dt = 0.0;
    const field_pair& before;
    const field_pair& after;
};

} // namespace kklab
