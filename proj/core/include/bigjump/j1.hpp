#pragma once

#include "bigjump/path.hpp"

namespace bigjump {

// Exact supremum distance between two step paths (identity time change).
double sup_distance(const StepPath& x, const StepPath& y);

// Skorokhod J1 distance between step paths to absolute tolerance tol:
// bisection on the candidate radius r over [0, sup_distance], deciding each r
// with a dynamic program over pairs of constant segments. A time change with
// deviation <= r exists iff the x jumps can be placed monotonically within
// +-r of their times, interleaved with the fixed y jumps, such that every
// co-visited pair of levels differs by at most r; co-located placements pair
// the jumps and skip the intermediate level comparison. Arguments are
// canonicalized so the result is exactly symmetric.
double j1_distance(const StepPath& x, const StepPath& y, double tol);

}  // namespace bigjump
