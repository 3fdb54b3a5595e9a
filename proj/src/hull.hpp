#pragma once

// Brute-force facet enumeration and triangulation helpers shared by the
// kernel. Point sets here are raw coordinates in R^k, 1 <= k <= 4.

#include <vector>

#include "polydual/geometry.hpp"

namespace polydual::detail {

struct RawFacet {
    std::vector<int> incidence;  // sorted
    Vec normal;                  // unit, outward
    double offset = 0.0;
};

double coordinateScale(const Points& pts);

int affineRank(const Points& pts, double tol);

/// Rank of a set of vectors, judged on singular values relative to the largest.
int vectorRank(const std::vector<Vec>& vs, double relTol = 1e-8);

/// All facet-defining hyperplanes of conv(pts), found by testing every
/// k-subset. Requires affineRank(pts) == k.
std::vector<RawFacet> bruteForceFacets(const Points& pts, int k, double tol);

/// Orthonormal basis (k x (k-1)) of the complement of a unit normal.
Mat complementBasis(const Vec& normal);

/// k-volume of the simplex with the given k+1 vertices in R^k.
double simplexVolume(const std::vector<const Vec*>& verts, int k);

/// Triangulation of conv(pts) in R^k by pulling from vertex 0; every point must
/// be a vertex. Each simplex is a list of k+1 indices into pts.
std::vector<std::vector<int>> pullingTriangulation(const Points& pts, int k, double tol);

/// k-volume of conv(pts) for vertex sets in R^k (k = 0 gives 1).
double hullVolume(const Points& pts, int k, double tol);

}  // namespace polydual::detail
