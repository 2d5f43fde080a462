#ifndef SIEGEL_POLYLINE_HPP
#define SIEGEL_POLYLINE_HPP

#include <span>
#include <vector>

#include "siegel/complex_util.hpp"

namespace siegel {

/// Geometry helpers for closed polylines (vertex lists; the edge from the
/// last vertex back to the first is implied).

/// Max pairwise vertex distance (convex hull + rotating calipers).
double polyline_diameter(std::span<const Complex> poly);

/// Distance from a point to the closed polyline (segments included).
double distance_to_polyline(Complex p, std::span<const Complex> poly);

/// Winding number of the closed polyline around a point.
int winding_number(std::span<const Complex> poly, Complex p);

/// True when no two non-adjacent edges intersect.
bool polyline_is_simple(std::span<const Complex> poly);

/// Ahlfors bounded-turning estimate: max over vertex pairs of
/// diam(smaller arc between them) / |endpoint difference|.
/// Needs >= 16 vertices; repeated vertices are an error.
double bounded_turning_constant(std::span<const Complex> poly);

} // namespace siegel

#endif
