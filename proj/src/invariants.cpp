#include "polydual/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace polydual {

VertexInvariants vertexInvariants(const VPolytope& P, const VPolytope& Ppolar, const Vec& xi, const SantaloConfig& cfg) {
    const auto data = polarFacetData(P, Ppolar, xi, cfg);
    const int n = P.dim();
    const double norm = xi.norm();
    VertexInvariants out;
    out.vertex = xi;
    out.santalo = data.santalo;
    out.polarFacetMeasure = data.polarFacet.measure;
    out.relativePolarMeasure = data.relativePolarMeasure;
    out.coneDensityPolar = data.polarFacet.measure / (n * Ppolar.volume() * norm);
    out.coneDensity = norm * data.relativePolarMeasure / (n * P.volume());
    out.alpha = std::pow(n * P.volume() / (data.relativePolarMeasure * norm), 1.0 / n);
    out.beta = n * Ppolar.volume() * norm / data.polarFacet.measure;
    return out;
}

VertexInvariants vertexInvariants(const VPolytope& P, const Vec& xi, const SantaloConfig& cfg) {
    return vertexInvariants(P, polar(P), xi, cfg);
}

double evaluateGc(const std::vector<VertexInvariants>& perVertex, double betaMax, double c) {
    double value = c * betaMax;
    for (const auto& v : perVertex) value = std::max(value, v.alpha - c * v.beta);
    return value;
}

double invariantGConeForm(const std::vector<VertexInvariants>& perVertex, int dim) {
    double minPolar = std::numeric_limits<double>::infinity();
    for (const auto& v : perVertex) minPolar = std::min(minPolar, v.coneDensityPolar);
    auto Gc = [&](double c) {
        double value = c / minPolar;
        for (const auto& v : perVertex) {
            const double root = std::pow(v.coneDensity, 1.0 / dim);
            value = std::max(value, (v.coneDensityPolar - c * root) / (root * v.coneDensityPolar));
        }
        return value;
    };
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : perVertex) {
        const double root = std::pow(v.coneDensity, 1.0 / dim);
        const double c = v.coneDensityPolar * minPolar / (root * (minPolar + v.coneDensityPolar));
        best = std::min(best, Gc(c));
    }
    return best;
}

InvariantReport invariantG(const VPolytope& P, const SantaloConfig& cfg) {
    if (!isCentrallySymmetric(P))
        throw GeometryError(ErrorKind::SymmetryRequired, "the invariant is defined for centrally symmetric polytopes");
    const VPolytope Ppolar = polar(P);
    InvariantReport r;
    r.dim = P.dim();
    r.volume = P.volume();
    r.polarVolume = Ppolar.volume();
    const int m = P.vertexCount();
    r.perVertex.resize(static_cast<std::size_t>(m));
    std::vector<char> done(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        if (done[static_cast<std::size_t>(i)]) continue;
        auto vi = vertexInvariants(P, Ppolar, P.vertex(i), cfg);
        const int j = P.findVertex(-P.vertex(i));
        if (j >= 0 && j != i) {
            auto mirrored = vi;
            mirrored.vertex = P.vertex(j);
            mirrored.santalo = -vi.santalo;
            r.perVertex[static_cast<std::size_t>(j)] = std::move(mirrored);
            done[static_cast<std::size_t>(j)] = 1;
        }
        r.perVertex[static_cast<std::size_t>(i)] = std::move(vi);
        done[static_cast<std::size_t>(i)] = 1;
    }

    for (const auto& v : r.perVertex) r.betaMax = std::max(r.betaMax, v.beta);
    r.G = std::numeric_limits<double>::infinity();
    for (const auto& v : r.perVertex) {
        const double c = v.alpha / (v.beta + r.betaMax);
        const double g = evaluateGc(r.perVertex, r.betaMax, c);
        if (g < r.G) {
            r.G = g;
            r.cStar = c;
        }
    }
    double falling = -std::numeric_limits<double>::infinity();
    for (const auto& v : r.perVertex) falling = std::max(falling, v.alpha - r.cStar * v.beta);
    const double slack = 1e-12 * std::max(1.0, std::abs(r.G));
    for (int i = 0; i < m; ++i) {
        const auto& v = r.perVertex[static_cast<std::size_t>(i)];
        if (v.alpha - r.cStar * v.beta >= falling - slack) r.argVertices.push_back(i);
        if (v.beta >= r.betaMax * (1.0 - 1e-12)) r.betaMaxVertices.push_back(i);
    }
    r.Lambda = lambdaConstant(P);
    r.GConeForm = invariantGConeForm(r.perVertex, r.dim);
    return r;
}

double lambdaConstant(const VPolytope& P) {
    if (!containsOriginInInterior(P))
        throw GeometryError(ErrorKind::OriginNotInterior, "Lambda needs the origin in the interior");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : P.facets()) best = std::min(best, P.volume() / (f.offset * f.measure));
    return best;
}

VPolytope generator(const std::string& name, int dim, double eps) {
    if (name != "cube" && name != "cross" && name != "hexagon")
        throw GeometryError(ErrorKind::UnknownGenerator, "unknown generator '" + name + "'");
    if (dim < 2 || dim > kMaxDim) throw GeometryError(ErrorKind::BadParameter, "dimension must be between 2 and 4");
    Points pts;
    if (name == "cube") {
        for (int mask = 0; mask < (1 << dim); ++mask) {
            Vec v(dim);
            for (int i = 0; i < dim; ++i) v(i) = (mask >> i) & 1 ? 1.0 : -1.0;
            pts.push_back(v);
        }
    } else if (name == "cross") {
        for (int i = 0; i < dim; ++i) {
            Vec e = Vec::Zero(dim);
            e(i) = 1.0;
            pts.push_back(e);
            pts.push_back(-e);
        }
    } else {
        if (dim != 2) throw GeometryError(ErrorKind::BadParameter, "the hexagon is planar");
        if (!(eps > 0.0 && eps < 1.0)) throw GeometryError(ErrorKind::BadParameter, "hexagon needs 0 < eps < 1");
        const double w = std::sqrt(1.0 - eps * eps);
        pts = {Vec::Unit(2, 1), -Vec::Unit(2, 1)};
        for (double sx : {1.0, -1.0})
            for (double sy : {1.0, -1.0}) pts.push_back((Vec(2) << sx * w, sy * eps).finished());
    }
    return VPolytope(pts);
}

VPolytope randomSymmetric(int dim, int pairs, std::uint64_t seed) {
    if (dim < 2 || dim > kMaxDim) throw GeometryError(ErrorKind::BadParameter, "dimension must be between 2 and 4");
    if (pairs < dim) throw GeometryError(ErrorKind::BadParameter, "need at least dim point pairs");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> radius(0.6, 1.4);
    for (int attempt = 0; attempt < 100; ++attempt) {
        Points pts;
        for (int i = 0; i < pairs; ++i) {
            Vec v(dim);
            for (int j = 0; j < dim; ++j) v(j) = gauss(rng);
            v *= radius(rng) / v.norm();
            pts.push_back(v);
            pts.push_back(-v);
        }
        try {
            VPolytope P(pts);
            if (containsOriginInInterior(P)) return P;
        } catch (const GeometryError&) {
        }
    }
    throw GeometryError(ErrorKind::DegenerateInput, "could not sample a full-dimensional polytope");
}

}  // namespace polydual
