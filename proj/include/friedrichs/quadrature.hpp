#pragma once

#include "friedrichs/operator_core.hpp"

#include <functional>
#include <vector>

namespace friedrichs {

/// Closed segment on which every model function is smooth (polynomial for
/// tent series and hats).
struct Segment {
    double begin;
    double end;
    int weight;  ///< relative panel share, in units of h_k/6 within a dyadic cell
};

/// Partition of [0, 1] whose segment ends are the landmarks of the first
/// `cells` dyadic cells: p_k, p_k+h_k/3, p_k+h_k/2, p_{k+1}-h_k/3. The tail
/// [p_{cells+1}, 1] is a final segment.
std::vector<Segment> aligned_segments(int cells);

/// Nodes and trapezoid weights on an aligned partition.
struct QuadratureGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    int panels_per_sixth = 0;  ///< panels per h_k/6; the tail receives 6x this
    int cells = 0;
};

/// Composite trapezoid grid with at most `max_nodes` nodes. Each dyadic cell is
/// split into 6m uniform panels, m = floor((max_nodes - 1) / (6 (cells + 1))),
/// and the tail into 6m panels. Throws ConfigurationError when m < 3, i.e.
/// when some linear piece would hold fewer than four nodes.
QuadratureGrid trapezoid_grid(int cells, int max_nodes);

/// Composite Simpson over [a, b] with `panels` (even) subintervals.
double simpson(const std::function<double(double)>& f, double a, double b, int panels);

/// Integral over [0, 1] of f split at the aligned landmarks of `cells` cells
/// and restricted to [lo, hi]; `panels` Simpson panels per piece.
double integrate_aligned(const std::function<double(double)>& f, int cells, double lo, double hi, int panels);

/// Support [lo, hi] of the n-th basis function.
std::pair<double, double> basis_support(BasisFamily family, int n);

}  // namespace friedrichs
