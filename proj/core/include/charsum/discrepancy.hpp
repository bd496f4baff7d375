#pragma once

#include <cstdint>
#include <vector>

#include "charsum/errors.hpp"
#include "charsum/numeric.hpp"

namespace charsum {

/// Discrepancy of a finite multiset of circle angles, together with a witness
/// arc attaining it. Angles live in [0, 1); arcs are closed and may wrap.
struct DiscrepancyResult {
    double value = 1.0;      ///< sup over arcs of |hits/n - length|; 1 when n <= 1
    std::uint64_t n = 0;     ///< sample size
    std::uint64_t hits = 0;  ///< points inside the witness arc
    double arc_start = 0.0;  ///< witness arc start angle, in [0, 1)
    double arc_length = 0.0; ///< witness arc length, in [0, 1]
};

/// Angle of a unit-circle point as a fraction of a turn, in [0, 1).
/// Throws NotOnCircle when | |z| - 1 | > 1e-6.
double angle_of(cplx z);
std::vector<double> angles_of(const std::vector<cplx>& points);

/// Exact circle discrepancy over all arcs (closed arcs attain the excess
/// side; by complement symmetry the deficiency side equals it). Sorts the
/// sample in place and scans once: with sorted angles t_0 <= ... <= t_{n-1},
///   D = max_i ((i+1)/n - t_i) - min_i (i/n - t_i),
/// valid with repeated angles. The witness arc runs from the first minimizer
/// to the last maximizer; the returned value is recomputed from the witness so
/// value, hits and length are mutually consistent. n = 0 yields value 1 with
/// an empty witness. Angles must lie in [0, 1) (DomainError otherwise).
DiscrepancyResult discrepancy_exact(std::vector<double> angles);

/// Quadratic reference evaluation: maximize over every pair of sample angles
/// the excess of the closed arc and the deficiency of the open arc, wrapped
/// and degenerate arcs included. Agrees with discrepancy_exact on every input.
double discrepancy_pairwise(const std::vector<double>& angles);

} // namespace charsum
