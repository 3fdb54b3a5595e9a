#pragma once

// Radial/support oracles for the floating body P_delta and the polar
// illumination body I^{delta'}(P) = ((P°)^{delta'})°, the sandwich distance d
// and the optimized distance d_P(delta).

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "polydual/invariants.hpp"

namespace polydual {

struct DirectionGrid {
    int dim = 0;
    std::string kind;
    Points directions;

    std::size_t size() const { return directions.size(); }
    /// Directions as rows.
    Mat matrix() const;
    /// Appends normalized copies of the nonzero points and of their negatives.
    void addDirections(const Points& pts);
};

/// 4096 for n = 2, 20000 for n = 3, 50000 for n = 4.
int defaultGridSize(int dim);

/// Uniform angles (n = 2), Fibonacci (n = 3) or super-Fibonacci (n = 4)
/// points, closed under negation. A nonzero seed applies a random rotation.
DirectionGrid baseGrid(int dim, int size, std::uint64_t seed = 0);

/// Directions of `centers` perturbed by geometrically shrinking angles
/// from 0.2 rad down to about 1e-7.
Points refinementRings(const Points& centers, int dim);

/// Base grid plus the vertex directions of P and P°, Santaló-point and polar
/// facet centroid directions, and refinement rings around vertex directions.
DirectionGrid studyGrid(const VPolytope& P, int size = 0, std::uint64_t seed = 0, bool refine = true);

/// For each row u of U, max over rows p of Q of <u, p>.
Vec maxDot(const Mat& U, const Mat& Q);

class BodyOracle {
public:
    virtual ~BodyOracle() = default;
    virtual double radial(const Vec& u) const = 0;
    virtual double support(const Vec& u) const = 0;
    virtual std::string label() const = 0;
    /// Radial function at every grid direction.
    virtual Vec radialOnGrid(const DirectionGrid& grid) const;
};

class PolytopeBody : public BodyOracle {
public:
    explicit PolytopeBody(VPolytope P, std::string label = "P");
    double radial(const Vec& u) const override;
    double support(const Vec& u) const override;
    std::string label() const override { return label_; }
    Vec radialOnGrid(const DirectionGrid& grid) const override;
    const VPolytope& polytope() const { return P_; }

private:
    VPolytope P_;
    Mat polarPoints_;
    std::string label_;
};

class BallBody : public BodyOracle {
public:
    BallBody(int dim, double radius) : dim_(dim), radius_(radius) {}
    double radial(const Vec&) const override { return radius_; }
    double support(const Vec&) const override { return radius_; }
    std::string label() const override { return "ball"; }

private:
    int dim_;
    double radius_;
};

/// h_{P_delta}(v): the level t with |P ∩ {<x,v> >= t}| = delta |P|.
/// Throws SymmetryRequired or BadParameter (delta outside (0, 1/2)).
/// Bisection stops once the level bracket is below levelTol relative.
double floatingSupport(const VPolytope& P, double delta, const Vec& v, double levelTol = 1e-12);

/// Supports of P_delta on every grid direction; the radial function is
/// min over v with <u,v> > 0 of h(v) / <u,v>.
class FloatingBody : public BodyOracle {
public:
    FloatingBody(const VPolytope& P, double delta, const DirectionGrid& grid, double levelTol = 1e-12);
    double radial(const Vec& u) const override;
    double support(const Vec& u) const override;
    std::string label() const override { return "floating"; }
    Vec radialOnGrid(const DirectionGrid& grid) const override;
    double delta() const { return delta_; }
    const Vec& gridSupports() const { return supports_; }

private:
    VPolytope P_;
    double delta_;
    double levelTol_;
    Vec supports_;
    Mat polarSamples_;  // rows v / h(v)
};

/// Upper bound on r_{P_delta}(u) from the grid supports.
double floatingRadial(const VPolytope& P, double delta, const Vec& u, const DirectionGrid& grid);

/// 1 - alpha_xi delta^{1/n}.
double vertexFloatRatio(const VPolytope& P, double delta, const Vec& xi);

/// r_{K^delta}(u): the t >= r_K(u) at which |conv[K, t u]| = (1 + delta)|K|.
/// Throws OriginNotInterior.
double illuminationRadial(const VPolytope& K, double delta, const Vec& u);

/// The s >= 0 with |conv[K, a + s d]| - |K| = target for a in K; the excess is
/// piecewise linear in s, so the root is found segment by segment.
double excessRayRoot(const VPolytope& K, const Vec& a, const Vec& d, double target);

/// Boundary points of K^delta on the lines through vertices of K cut out by
/// n-1 of their facets; for small delta these are the vertices of K^delta.
Points illuminationVertexPoints(const VPolytope& K, double delta);

class PolarIlluminationBody : public BodyOracle {
public:
    PolarIlluminationBody(const VPolytope& P, double deltaPrime, const DirectionGrid& grid);
    double radial(const Vec& u) const override;
    /// Grid maximum of r(w) <w, u>.
    double support(const Vec& u) const override;
    std::string label() const override { return "polar-illumination"; }
    Vec radialOnGrid(const DirectionGrid& grid) const override;
    double deltaPrime() const { return deltaPrime_; }
    /// True when the boundary points from illuminationVertexPoints span the
    /// whole body (checked against every grid radial point).
    bool fromVertexPoints() const { return exact_; }

private:
    double deltaPrime_;
    bool exact_ = false;
    DirectionGrid grid_;
    Mat points_;  // rows: points of K^{delta'}
    mutable std::once_flag gridOnce_;
    mutable Vec gridRadials_;
};

std::unique_ptr<PolarIlluminationBody> polarIlluminationOracle(const VPolytope& P, double deltaPrime,
                                                               const DirectionGrid& grid);

/// I^{delta'}(P) as a polytope: conv of (sum_S m_xi xi) / (delta' + sum_S m_xi)
/// over nonempty vertex sets S, m_xi = n_{P°}(xi). All subsets are used in the
/// plane or for up to 6 vertices; otherwise S runs over subsets of facet
/// vertex sets, which is exact for small delta'.
VPolytope polarIlluminationPolytope(const VPolytope& P, double deltaPrime);

/// max over the grid of max(rA/rB, rB/rA).
double distanceD(const BodyOracle& A, const BodyOracle& B, const DirectionGrid& grid);
/// Same, from precomputed radials.
double distanceD(const Vec& rA, const Vec& rB);

struct SearchConfig {
    int coarsePoints = 16;
    int starts = 3;
    int maxIterations = 80;
    /// Bracket is [0, bracketFactor * max_xi c_xi * delta^{1/n}].
    double bracketFactor = 4.0;
    /// Relative level tolerance of the floating-body bisection.
    double bisectionTolerance = 1e-12;
};

struct DPResult {
    double value = 0.0;
    double bestDeltaPrime = 0.0;
    /// d(P_delta, P), the delta' = 0 value.
    double atZero = 0.0;
    int evaluations = 0;
};

/// inf over delta' of d(P_delta, I^{delta'}(P)).
DPResult dPdelta(const VPolytope& P, double delta, const DirectionGrid& grid, const SearchConfig& cfg = {});

struct InclusionReport {
    bool ok = true;
    /// Largest violation of max(r_{P_delta}, r_I) <= r_P, relative to r_P.
    double worstViolation = 0.0;
};

/// P_delta ⊆ P and I^{delta'}(P) ⊆ P: both radials stay below r_P on every grid direction.
InclusionReport inclusionChain(const VPolytope& P, double delta, double deltaPrime, const DirectionGrid& grid);

struct ConvergenceRow {
    double delta = 0.0;
    double dP = 0.0;
    double normalized = 0.0;
    double bestDeltaPrime = 0.0;
};

struct ConvergenceTable {
    double G = 0.0;
    std::vector<ConvergenceRow> rows;
    /// Linear extrapolation of the last two rows to delta -> 0 in delta^{1/n}.
    bool hasExtrapolation = false;
    double extrapolated = 0.0;
    InclusionReport inclusion;
};

ConvergenceTable convergenceTable(const VPolytope& P, const std::vector<double>& deltas, const DirectionGrid& grid,
                                  const SearchConfig& cfg = {}, const SantaloConfig& santalo = {});

/// sqrt(n) (n |B_2^n| / |B_2^{n-1}|)^{1/n}.
double uniformBoundConstant(int dim);

struct BoundRow {
    double delta = 0.0;
    double distance = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

struct BoundReport {
    double constant = 0.0;
    bool holds = true;
    std::vector<BoundRow> rows;
};

/// Checks d(S_delta, S) <= 1 + G_n delta^{1/n}. Throws NotInJohnSandwich
/// unless B_2^n ⊆ S ⊆ sqrt(n) B_2^n.
BoundReport uniformBoundCheck(const VPolytope& S, const std::vector<double>& deltas, const DirectionGrid& grid,
                              double levelTol = 1e-12);

}  // namespace polydual
