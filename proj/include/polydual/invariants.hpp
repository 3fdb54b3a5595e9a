#pragma once

// Cone-measure densities, the per-vertex constants alpha and beta, the
// constant Lambda and the exact affine invariant G(P).

#include <cstdint>
#include <string>
#include <vector>

#include "polydual/duality.hpp"
#include "polydual/geometry.hpp"

namespace polydual {

struct VertexInvariants {
    Vec vertex;
    double coneDensity = 0.0;       // n_P(xi)
    double coneDensityPolar = 0.0;  // n_{P°}(xi)
    double alpha = 0.0;
    double beta = 0.0;
    Vec santalo;                    // s(F_xi)
    double polarFacetMeasure = 0.0; // |F_xi|
    double relativePolarMeasure = 0.0;
};

struct InvariantReport {
    int dim = 0;
    double volume = 0.0;
    double polarVolume = 0.0;
    std::vector<VertexInvariants> perVertex;
    double betaMax = 0.0;
    double Lambda = 0.0;
    double G = 0.0;
    double cStar = 0.0;
    /// Vertices whose falling branch alpha - c beta attains the maximum at cStar.
    std::vector<int> argVertices;
    std::vector<int> betaMaxVertices;
    /// G re-evaluated from the cone-measure densities alone.
    double GConeForm = 0.0;
};

VertexInvariants vertexInvariants(const VPolytope& P, const Vec& xi, const SantaloConfig& cfg = {});
VertexInvariants vertexInvariants(const VPolytope& P, const VPolytope& Ppolar, const Vec& xi,
                                  const SantaloConfig& cfg = {});

/// Throws SymmetryRequired for bodies that are not centrally symmetric.
InvariantReport invariantG(const VPolytope& P, const SantaloConfig& cfg = {});

/// max(max_xi(alpha_xi - c beta_xi), c beta).
double evaluateGc(const std::vector<VertexInvariants>& perVertex, double betaMax, double c);

/// min over c >= 0 of max_xi[(m°_xi - c m_xi^{1/n}) / (m_xi^{1/n} m°_xi), c / min m°],
/// with m = n_P and m° = n_{P°}.
double invariantGConeForm(const std::vector<VertexInvariants>& perVertex, int dim);

/// min over facets F of P of |P| / (offset_F |F|).
double lambdaConstant(const VPolytope& P);

/// "cube" ([-1,1]^n), "cross" (conv{±e_i}) or "hexagon" (dim 2, 0 < eps < 1).
/// Throws UnknownGenerator or BadParameter.
VPolytope generator(const std::string& name, int dim = 2, double eps = 0.25);

/// conv{±p_i} for `pairs` Gaussian points p_i; retried until full-dimensional.
VPolytope randomSymmetric(int dim, int pairs, std::uint64_t seed);

}  // namespace polydual
