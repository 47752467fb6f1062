#pragma once

#include "polarkit/core.hpp"

#include <vector>

namespace polarkit {

/// Both representations of a polytope with the origin in its interior:
/// extreme points and irredundant facet normals (facet f is {x : f.x = 1}),
/// plus vertex/facet incidence.
struct PolytopeData {
  int dim = 0;
  std::vector<Vec> vertices;
  std::vector<Vec> facets;
  std::vector<std::vector<int>> facet_vertices;  // sorted vertex indices per facet
};

/// {x : a_i . x <= 1 for all i}. Throws ValidationError when the normals do not
/// positively span R^N (unbounded polyhedron).
PolytopeData polytope_from_halfspaces(const std::vector<Vec>& normals, double tol = 1e-9);

/// conv(points). The origin must be interior. Computed by polarity from the
/// halfspace routine.
PolytopeData polytope_from_points(const std::vector<Vec>& points, double tol = 1e-9);

/// Exact volume by coning every facet to the origin and every lower face to
/// its vertex centroid.
double polytope_volume(const PolytopeData& p);

/// Triangulation matching polytope_volume: each simplex is dim+1 points, the
/// first one being the origin.
std::vector<std::vector<Vec>> polytope_simplices(const PolytopeData& p);

/// Affine dimension of a point set (-1 for an empty set).
int affine_dimension(const std::vector<Vec>& pts, double tol = 1e-9);

}  // namespace polarkit
