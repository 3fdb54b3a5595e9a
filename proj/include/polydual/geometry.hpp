#pragma once

// Exact low-dimensional polytope kernel: vertex/facet representations,
// triangulation-based volumes, clipping and directional queries.

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <vector>

#include "polydual/error.hpp"

namespace polydual {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Points = std::vector<Vec>;

inline constexpr double kDefaultIncidenceTol = 1e-9;
inline constexpr int kMaxDim = 4;

/// The closed halfspace {x : <x, normal> <= offset}; `normal` has unit length.
struct Halfspace {
    Vec normal;
    double offset = 0.0;

    /// Normalizes `normal` (and scales `offset` accordingly).
    static Halfspace fromNormal(const Vec& normal, double offset);

    Halfspace complement() const { return {-normal, -offset}; }
    double signedDistance(const Vec& x) const { return x.dot(normal) - offset; }
};

/// An (n-1)-face of a polytope. `vertexIndices` refer to the owning polytope's
/// vertex list; `points` holds the same vertices' coordinates.
struct Facet {
    std::vector<int> vertexIndices;
    Points points;
    Vec normal;
    double offset = 0.0;
    Mat basis;  // n x (n-1), orthonormal columns spanning the facet's direction space
    double measure = 0.0;

    Halfspace halfspace() const { return {normal, offset}; }
    /// Coordinates of `x - origin` in `basis`.
    Vec toBasis(const Vec& x, const Vec& origin) const { return basis.transpose() * (x - origin); }
};

struct HPolytope {
    int dim = 0;
    std::vector<Facet> facets;

    std::vector<Halfspace> halfspaces() const;
    /// For each halfspace, the indices of the vertices on its boundary.
    std::vector<std::vector<int>> incidence() const;
};

/// Indices into `VPolytope::vertices()`; index `vertexCount()` is the interior apex.
using SimplexIndices = std::array<int, kMaxDim + 1>;

/// Convex polytope given by its vertices. Construction deduplicates the input
/// points, drops points that are not extreme, and computes the facet structure
/// and a deterministic triangulation. Instances are immutable and cheap to copy.
class VPolytope {
public:
    VPolytope() = default;
    /// Throws DegenerateInput when the points do not span their dimension.
    explicit VPolytope(const Points& points, double incidenceTol = kDefaultIncidenceTol);

    int dim() const { return data_->dim; }
    const Points& vertices() const { return data_->vertices; }
    int vertexCount() const { return static_cast<int>(data_->vertices.size()); }
    const Vec& vertex(int i) const { return data_->vertices[static_cast<std::size_t>(i)]; }
    double incidenceTol() const { return data_->tol; }
    /// Incidence tolerance scaled by the coordinate magnitude.
    double scaledTol() const { return data_->scaledTol; }

    const HPolytope& hrep() const { return data_->hrep; }
    const std::vector<Facet>& facets() const { return data_->hrep.facets; }

    /// Interior apex of the triangulation fan (vertex average).
    const Vec& apex() const { return data_->apex; }
    const std::vector<SimplexIndices>& simplices() const { return data_->simplices; }
    const std::vector<double>& simplexVolumes() const { return data_->simplexVolumes; }
    /// Vertex i or, for i == vertexCount(), the apex.
    const Vec& simplexPoint(int i) const { return i == vertexCount() ? data_->apex : vertex(i); }

    double volume() const { return data_->volume; }
    const Vec& centroid() const { return data_->centroid; }
    /// Index pairs (i < j) spanning 1-faces.
    const std::vector<std::pair<int, int>>& edges() const { return data_->edges; }

    /// Index of the vertex within tolerance of `x`, or -1.
    int findVertex(const Vec& x) const;

private:
    struct Data {
        int dim = 0;
        double tol = kDefaultIncidenceTol;
        double scaledTol = kDefaultIncidenceTol;
        Points vertices;
        HPolytope hrep;
        Vec apex;
        std::vector<SimplexIndices> simplices;
        std::vector<double> simplexVolumes;
        double volume = 0.0;
        Vec centroid;
        std::vector<std::pair<int, int>> edges;
    };
    std::shared_ptr<const Data> data_;
};

/// V -> H conversion by enumeration of vertex subsets. The returned facets
/// carry exact incidence, orthonormal bases and measures.
HPolytope hullFacets(const VPolytope& P);

/// Vertices of the H-representation, enumerated from dim-subsets of halfspaces.
Points enumerateVertices(const HPolytope& H, double tol = kDefaultIncidenceTol);

double volume(const VPolytope& P);

/// (n-1)-measure of a facet, computed in its basis coordinates.
double facetMeasure(const Facet& F, const VPolytope& P);

/// P intersected with H. Throws EmptyIntersection if nothing is left and
/// DegenerateInput if only a lower-dimensional face survives.
VPolytope clip(const VPolytope& P, const Halfspace& H);

/// Volume of P intersected with {<x, u> >= t}.
double capVolume(const VPolytope& P, const Vec& u, double t);

/// Volume of conv[P, x].
double coneHullVolume(const VPolytope& P, const Vec& x);
/// coneHullVolume(P, x) - volume(P), computed without cancellation.
double coneHullExcess(const VPolytope& P, const Vec& x);

double support(const VPolytope& P, const Vec& u);
/// max{lambda >= 0 : lambda * u in P}. Throws OriginNotInterior.
double radial(const VPolytope& P, const Vec& u);

/// Vertex-wise image under L. Throws SingularMatrix.
VPolytope applyLinear(const VPolytope& P, const Mat& L);

bool isCentrallySymmetric(const VPolytope& P);
Vec centroid(const VPolytope& P);

/// Integral of x x^T over P.
Mat secondMoment(const VPolytope& P);

/// True when the origin lies in the interior (every facet offset exceeds the tolerance).
bool containsOriginInInterior(const VPolytope& P);

/// Volume of {x in simplex : f(x) >= 0} divided by the simplex volume, where f
/// is the affine function taking `values[i]` at vertex i (the first `count` entries).
double simplexFractionAbove(std::array<double, kMaxDim + 1> values, int count);

/// Heights of a polytope's triangulation along one direction; evaluates cap
/// volumes {<x,u> >= t} for many t without re-clipping.
class CapProfile {
public:
    CapProfile(const VPolytope& P, const Vec& u);

    double volumeAbove(double t) const;
    double maxHeight() const { return maxHeight_; }
    double minHeight() const { return minHeight_; }

private:
    VPolytope P_;
    std::vector<double> heights_;  // per vertex, apex last
    double maxHeight_ = 0.0;
    double minHeight_ = 0.0;
};

}  // namespace polydual
