#pragma once

#include "relmatch/relation.hpp"

namespace relmatch::gallery {

/// {*,x} x {a,b} with rows 11 / 10: the minimal relation whose matrix
/// is the wildcard matrix itself ('*' matches everything).
DeltaMatrix wildcard_relation();

/// {x,y} x {a,b} with rows 10 / 01: exact matching after renaming.
DeltaMatrix exact_match_relation();

/// {x,y,z} x {a,b,c} with rows 000/011/011: every pattern is text or
/// pattern independent under AND (x kills the output, y and z are
/// interchangeable).
DeltaMatrix degenerate_and_relation();

/// The 5x6 example with duplicate rows/columns and all-zero lines;
/// reduces to the 2x2 identity on {v,x} x {a,b}.
DeltaMatrix reducible_relation();

/// {1,0} x {2,3} with |p - t| entries; drives the L-infinity engine.
DeltaMatrix linf_relation();

/// The same relation thresholded: 1 where |p - t| < 3. Contains the
/// wildcard matrix, which is what ties L-infinity to conjunction
/// matching.
DeltaMatrix linf_threshold_relation();

/// {x} x {a,b} with row 0 1: the one-row relation the SUM/EQ indexing
/// protocols stream over.
DeltaMatrix indexing_relation();

} // namespace relmatch::gallery
