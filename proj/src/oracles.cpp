#include "polydual/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "hull.hpp"

namespace polydual {

namespace {

void requireFloatingDelta(double delta) {
    if (!(delta > 0.0 && delta < 0.5)) throw GeometryError(ErrorKind::BadParameter, "delta must lie in (0, 1/2)");
}

void requireSymmetric(const VPolytope& P) {
    if (!isCentrallySymmetric(P))
        throw GeometryError(ErrorKind::SymmetryRequired, "floating-body supports need a centrally symmetric body");
}

// Bisection on the cap level; the body is symmetric, so the level is in (0, max height).
double capLevel(const CapProfile& profile, double target, double tol) {
    double lo = 0.0;
    double hi = profile.maxHeight();
    for (int it = 0; it < 200 && hi - lo > tol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (profile.volumeAbove(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Mat rowsOf(const Points& pts, int dim) {
    Mat M(static_cast<Eigen::Index>(pts.size()), dim);
    for (std::size_t i = 0; i < pts.size(); ++i) M.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
    return M;
}

double singleMaxDot(const Mat& Q, const Vec& u) { return (Q * u).maxCoeff(); }

double unitBallVolume(int k) { return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0); }

double maxCrossing(const InvariantReport& r) {
    double best = 0.0;
    for (const auto& v : r.perVertex) best = std::max(best, v.alpha / (v.beta + r.betaMax));
    return best;
}

DPResult searchDeltaPrime(const VPolytope& P, double delta, const InvariantReport& inv, const Vec& rF,
                          const DirectionGrid& grid, const SearchConfig& cfg) {
    if (cfg.coarsePoints < 3 || cfg.starts < 1 || cfg.maxIterations < 1 || !(cfg.bracketFactor > 0.0))
        throw GeometryError(ErrorKind::BadParameter, "invalid search configuration");
    DPResult res;
    auto objective = [&](double dp) {
        ++res.evaluations;
        return distanceD(rF, PolarIlluminationBody(P, dp, grid).radialOnGrid(grid));
    };

    double hi = cfg.bracketFactor * maxCrossing(inv) * std::pow(delta, 1.0 / P.dim());
    std::vector<double> xs, fs;
    for (int expansion = 0; expansion < 4; ++expansion) {
        xs.clear();
        fs.clear();
        for (int i = 0; i < cfg.coarsePoints; ++i) {
            xs.push_back(hi * i / (cfg.coarsePoints - 1));
            fs.push_back(objective(xs.back()));
        }
        const auto best = std::min_element(fs.begin(), fs.end()) - fs.begin();
        if (best != static_cast<long>(fs.size()) - 1) break;
        hi *= 2.0;
    }
    res.atZero = fs.front();

    const int m = static_cast<int>(xs.size());
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
    auto isLocalMin = [&](int i) {
        const double f = fs[static_cast<std::size_t>(i)];
        return (i == 0 || f <= fs[static_cast<std::size_t>(i - 1)]) && (i == m - 1 || f <= fs[static_cast<std::size_t>(i + 1)]);
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const bool la = isLocalMin(a), lb = isLocalMin(b);
        if (la != lb) return la;
        return fs[static_cast<std::size_t>(a)] < fs[static_cast<std::size_t>(b)];
    });

    double bestX = xs[static_cast<std::size_t>(order.front())];
    double bestF = fs[static_cast<std::size_t>(order.front())];
    double finalWidth = hi / (m - 1);
    const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int s = 0; s < std::min(cfg.starts, m); ++s) {
        const int i = order[static_cast<std::size_t>(s)];
        double a = xs[static_cast<std::size_t>(std::max(i - 1, 0))];
        double b = xs[static_cast<std::size_t>(std::min(i + 1, m - 1))];
        double c = b - invPhi * (b - a);
        double d = a + invPhi * (b - a);
        double fc = objective(c), fd = objective(d);
        for (int it = 0; it < cfg.maxIterations && b - a > 1e-13 * hi; ++it) {
            if (fc <= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - invPhi * (b - a);
                fc = objective(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + invPhi * (b - a);
                fd = objective(d);
            }
        }
        const double x = fc <= fd ? c : d;
        const double f = std::min(fc, fd);
        if (f < bestF) {
            bestF = f;
            bestX = x;
            finalWidth = b - a;
        }
    }
    const double w = std::max(4.0 * finalWidth, 1e-6 * hi);
    for (int j = -10; j <= 10; ++j) {
        const double x = bestX + w * j / 10.0;
        if (x < 0.0 || j == 0) continue;
        const double f = objective(x);
        if (f < bestF) {
            bestF = f;
            bestX = x;
        }
    }
    res.value = bestF;
    res.bestDeltaPrime = bestX;
    return res;
}

InclusionReport inclusionFromRadials(const Vec& rF, const Vec& rP, const Vec& rI) {
    InclusionReport rep;
    for (Eigen::Index i = 0; i < rP.size(); ++i) {
        rep.worstViolation = std::max(rep.worstViolation, (rF(i) - rP(i)) / rP(i));
        rep.worstViolation = std::max(rep.worstViolation, (rI(i) - rP(i)) / rP(i));
    }
    rep.ok = rep.worstViolation <= 1e-10;
    return rep;
}

}  // namespace

Vec BodyOracle::radialOnGrid(const DirectionGrid& grid) const {
    Vec out(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) out(static_cast<Eigen::Index>(i)) = radial(grid.directions[i]);
    return out;
}

PolytopeBody::PolytopeBody(VPolytope P, std::string label) : P_(std::move(P)), label_(std::move(label)) {
    if (!containsOriginInInterior(P_))
        throw GeometryError(ErrorKind::OriginNotInterior, "radial oracle needs the origin in the interior");
    polarPoints_ = rowsOf(polar(P_).vertices(), P_.dim());
}

double PolytopeBody::radial(const Vec& u) const { return 1.0 / singleMaxDot(polarPoints_, u); }

double PolytopeBody::support(const Vec& u) const { return polydual::support(P_, u); }

Vec PolytopeBody::radialOnGrid(const DirectionGrid& grid) const {
    return maxDot(grid.matrix(), polarPoints_).cwiseInverse();
}

double floatingSupport(const VPolytope& P, double delta, const Vec& v, double levelTol) {
    requireFloatingDelta(delta);
    requireSymmetric(P);
    if (!(v.norm() > 0.0)) throw GeometryError(ErrorKind::BadParameter, "zero direction");
    return capLevel(CapProfile(P, v), delta * P.volume(), levelTol);
}

FloatingBody::FloatingBody(const VPolytope& P, double delta, const DirectionGrid& grid, double levelTol)
    : P_(P), delta_(delta), levelTol_(levelTol) {
    requireFloatingDelta(delta);
    requireSymmetric(P);
    const double target = delta * P.volume();
    const auto m = static_cast<Eigen::Index>(grid.size());
    supports_.resize(m);
    polarSamples_.resize(m, P.dim());
    for (Eigen::Index i = 0; i < m; ++i) {
        const Vec& v = grid.directions[static_cast<std::size_t>(i)];
        supports_(i) = capLevel(CapProfile(P, v), target, levelTol);
        polarSamples_.row(i) = v.transpose() / supports_(i);
    }
}

double FloatingBody::radial(const Vec& u) const { return 1.0 / singleMaxDot(polarSamples_, u); }

double FloatingBody::support(const Vec& u) const { return floatingSupport(P_, delta_, u, levelTol_); }

Vec FloatingBody::radialOnGrid(const DirectionGrid& grid) const {
    return maxDot(grid.matrix(), polarSamples_).cwiseInverse();
}

double floatingRadial(const VPolytope& P, double delta, const Vec& u, const DirectionGrid& grid) {
    return FloatingBody(P, delta, grid).radial(u);
}

double vertexFloatRatio(const VPolytope& P, double delta, const Vec& xi) {
    if (delta <= 0.0) return 1.0;
    return 1.0 - vertexInvariants(P, xi).alpha * std::pow(delta, 1.0 / P.dim());
}

double excessRayRoot(const VPolytope& K, const Vec& a, const Vec& d, double target) {
    if (!(target > 0.0)) return 0.0;
    struct Piece {
        double start;
        double slope;
    };
    std::vector<Piece> pieces;
    const int n = K.dim();
    for (const auto& f : K.facets()) {
        const double rate = f.normal.dot(d);
        if (rate <= 0.0) continue;
        const double gap = std::min(0.0, f.normal.dot(a) - f.offset);
        pieces.push_back({-gap / rate, f.measure * rate / n});
    }
    if (pieces.empty()) throw GeometryError(ErrorKind::BadParameter, "ray never leaves the body");
    std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.start < y.start; });
    // On each segment the excess is A s - B.
    double A = 0.0, B = 0.0;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        A += pieces[k].slope;
        B += pieces[k].slope * pieces[k].start;
        const double s = (target + B) / A;
        if (k + 1 == pieces.size() || s <= pieces[k + 1].start) return s;
    }
    return (target + B) / A;
}

double illuminationRadial(const VPolytope& K, double delta, const Vec& u) {
    if (!containsOriginInInterior(K))
        throw GeometryError(ErrorKind::OriginNotInterior, "illumination radial needs the origin in the interior");
    if (!(delta >= 0.0)) throw GeometryError(ErrorKind::BadParameter, "delta must be nonnegative");
    if (delta == 0.0) return radial(K, u);
    return excessRayRoot(K, Vec::Zero(K.dim()), u, delta * K.volume());
}

Points illuminationVertexPoints(const VPolytope& K, double delta) {
    const int n = K.dim();
    const double target = delta * K.volume();
    Points out;
    for (int z = 0; z < K.vertexCount(); ++z) {
        const Vec& zeta = K.vertex(z);
        std::vector<const Facet*> at;
        for (const auto& f : K.facets())
            if (std::find(f.vertexIndices.begin(), f.vertexIndices.end(), z) != f.vertexIndices.end()) at.push_back(&f);
        if (delta == 0.0) {
            out.push_back(zeta);
            continue;
        }
        const int k = static_cast<int>(at.size());
        std::vector<int> idx(static_cast<std::size_t>(n - 1));
        for (int i = 0; i < n - 1; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (n - 1 <= k) {
            Mat N(n - 1, n);
            std::vector<Vec> rows;
            for (int r = 0; r < n - 1; ++r) {
                N.row(r) = at[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])]->normal.transpose();
                rows.push_back(N.row(r).transpose());
            }
            if (detail::vectorRank(rows) == n - 1) {
                Eigen::JacobiSVD<Mat> svd(N, Eigen::ComputeFullV);
                const Vec line = svd.matrixV().col(n - 1);
                for (double sign : {1.0, -1.0}) {
                    const Vec d = sign * line;
                    bool outward = false;
                    for (const auto* f : at) outward = outward || f->normal.dot(d) > 1e-12;
                    if (outward) out.push_back(zeta + excessRayRoot(K, zeta, d, target) * d);
                }
            }
            int i = n - 2;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == k - (n - 1) + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < n - 1; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

PolarIlluminationBody::PolarIlluminationBody(const VPolytope& P, double deltaPrime, const DirectionGrid& grid)
    : deltaPrime_(deltaPrime), grid_(grid) {
    if (!(deltaPrime >= 0.0)) throw GeometryError(ErrorKind::BadParameter, "delta' must be nonnegative");
    const int n = P.dim();
    const VPolytope K = polar(P);
    const Points verts = illuminationVertexPoints(K, deltaPrime);
    std::vector<double> reach(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) reach[i] = illuminationRadial(K, deltaPrime, grid.directions[i]);

    // Use the hull of the vertex points alone when it already reaches every grid point.
    const std::size_t hullLimit = n == 2 ? 400 : n == 3 ? 160 : 40;
    if (verts.size() <= hullLimit) {
        try {
            const VPolytope H(verts, P.incidenceTol());
            Mat facetPolar(static_cast<Eigen::Index>(H.facets().size()), n);
            for (std::size_t f = 0; f < H.facets().size(); ++f)
                facetPolar.row(static_cast<Eigen::Index>(f)) = H.facets()[f].normal.transpose() / H.facets()[f].offset;
            const Vec rH = maxDot(grid.matrix(), facetPolar).cwiseInverse();
            exact_ = true;
            for (std::size_t i = 0; i < grid.size() && exact_; ++i)
                exact_ = rH(static_cast<Eigen::Index>(i)) >= reach[i] * (1.0 - 1e-12);
            if (exact_) points_ = rowsOf(H.vertices(), n);
        } catch (const GeometryError&) {
            exact_ = false;
        }
    }
    if (!exact_) {
        Points pts = verts;
        for (std::size_t i = 0; i < grid.size(); ++i) pts.push_back(reach[i] * grid.directions[i]);
        points_ = rowsOf(pts, n);
    }
}

double PolarIlluminationBody::radial(const Vec& u) const { return 1.0 / singleMaxDot(points_, u); }

double PolarIlluminationBody::support(const Vec& u) const {
    std::call_once(gridOnce_, [this] { gridRadials_ = radialOnGrid(grid_); });
    double best = 0.0;
    for (std::size_t i = 0; i < grid_.size(); ++i)
        best = std::max(best, gridRadials_(static_cast<Eigen::Index>(i)) * grid_.directions[i].dot(u));
    return best;
}

Vec PolarIlluminationBody::radialOnGrid(const DirectionGrid& grid) const {
    return maxDot(grid.matrix(), points_).cwiseInverse();
}

std::unique_ptr<PolarIlluminationBody> polarIlluminationOracle(const VPolytope& P, double deltaPrime,
                                                               const DirectionGrid& grid) {
    return std::make_unique<PolarIlluminationBody>(P, deltaPrime, grid);
}

VPolytope polarIlluminationPolytope(const VPolytope& P, double deltaPrime) {
    const int n = P.dim();
    const int m = P.vertexCount();
    if (m > 63) throw GeometryError(ErrorKind::BadParameter, "too many vertices for subset enumeration");
    const VPolytope K = polar(P);
    std::vector<double> weight(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const Facet F = polarFacetForVertex(P, K, P.vertex(i));
        weight[static_cast<std::size_t>(i)] = F.measure / (n * K.volume() * P.vertex(i).norm());
    }
    std::set<std::uint64_t> masks;
    auto addSubsets = [&](const std::vector<int>& ids) {
        if (ids.size() > 16) throw GeometryError(ErrorKind::BadParameter, "face too large for subset enumeration");
        for (std::uint64_t s = 1; s < (std::uint64_t{1} << ids.size()); ++s) {
            std::uint64_t mask = 0;
            for (std::size_t j = 0; j < ids.size(); ++j)
                if (s >> j & 1) mask |= std::uint64_t{1} << ids[j];
            masks.insert(mask);
        }
    };
    if (n == 2 || m <= 6) {
        std::vector<int> all(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
        addSubsets(all);
    } else {
        for (const auto& f : P.facets()) addSubsets(f.vertexIndices);
    }
    Points pts;
    for (auto mask : masks) {
        Vec sum = Vec::Zero(n);
        double total = 0.0;
        for (int i = 0; i < m; ++i) {
            if (!(mask >> i & 1)) continue;
            sum += weight[static_cast<std::size_t>(i)] * P.vertex(i);
            total += weight[static_cast<std::size_t>(i)];
        }
        pts.push_back(sum / (deltaPrime + total));
    }
    return VPolytope(pts, P.incidenceTol());
}

double distanceD(const Vec& rA, const Vec& rB) {
    double d = 1.0;
    for (Eigen::Index i = 0; i < rA.size(); ++i) {
        d = std::max(d, rA(i) / rB(i));
        d = std::max(d, rB(i) / rA(i));
    }
    return d;
}

double distanceD(const BodyOracle& A, const BodyOracle& B, const DirectionGrid& grid) {
    return distanceD(A.radialOnGrid(grid), B.radialOnGrid(grid));
}

DPResult dPdelta(const VPolytope& P, double delta, const DirectionGrid& grid, const SearchConfig& cfg) {
    const auto inv = invariantG(P);
    const Vec rF = FloatingBody(P, delta, grid, cfg.bisectionTolerance).radialOnGrid(grid);
    return searchDeltaPrime(P, delta, inv, rF, grid, cfg);
}

InclusionReport inclusionChain(const VPolytope& P, double delta, double deltaPrime, const DirectionGrid& grid) {
    const Vec rF = FloatingBody(P, delta, grid).radialOnGrid(grid);
    const Vec rP = PolytopeBody(P).radialOnGrid(grid);
    const Vec rI = PolarIlluminationBody(P, deltaPrime, grid).radialOnGrid(grid);
    return inclusionFromRadials(rF, rP, rI);
}

ConvergenceTable convergenceTable(const VPolytope& P, const std::vector<double>& deltas, const DirectionGrid& grid,
                                  const SearchConfig& cfg, const SantaloConfig& santalo) {
    ConvergenceTable table;
    const auto inv = invariantG(P, santalo);
    table.G = inv.G;
    if (deltas.empty()) return table;
    const Vec rP = PolytopeBody(P).radialOnGrid(grid);
    const double root = 1.0 / P.dim();
    for (double delta : deltas) {
        const Vec rF = FloatingBody(P, delta, grid, cfg.bisectionTolerance).radialOnGrid(grid);
        const auto res = searchDeltaPrime(P, delta, inv, rF, grid, cfg);
        table.rows.push_back({delta, res.value, (res.value - 1.0) / std::pow(delta, root), res.bestDeltaPrime});
        const Vec rI = PolarIlluminationBody(P, res.bestDeltaPrime, grid).radialOnGrid(grid);
        const auto inc = inclusionFromRadials(rF, rP, rI);
        table.inclusion.ok = table.inclusion.ok && inc.ok;
        table.inclusion.worstViolation = std::max(table.inclusion.worstViolation, inc.worstViolation);
    }
    if (table.rows.size() >= 2) {
        const auto& r1 = table.rows[table.rows.size() - 2];
        const auto& r2 = table.rows.back();
        const double x1 = std::pow(r1.delta, root), x2 = std::pow(r2.delta, root);
        if (x1 != x2) {
            table.hasExtrapolation = true;
            table.extrapolated = (r2.normalized * x1 - r1.normalized * x2) / (x1 - x2);
        }
    }
    return table;
}

double uniformBoundConstant(int dim) {
    return std::sqrt(static_cast<double>(dim)) *
           std::pow(dim * unitBallVolume(dim) / unitBallVolume(dim - 1), 1.0 / dim);
}

BoundReport uniformBoundCheck(const VPolytope& S, const std::vector<double>& deltas, const DirectionGrid& grid,
                              double levelTol) {
    const int n = S.dim();
    const double tol = 1e-9;
    for (const auto& f : S.facets())
        if (f.offset < 1.0 - tol) throw GeometryError(ErrorKind::NotInJohnSandwich, "the unit ball is not contained in the body");
    for (const auto& v : S.vertices())
        if (v.norm() > std::sqrt(static_cast<double>(n)) + tol)
            throw GeometryError(ErrorKind::NotInJohnSandwich, "the body leaves the ball of radius sqrt(n)");
    BoundReport rep;
    rep.constant = uniformBoundConstant(n);
    const Vec rS = PolytopeBody(S).radialOnGrid(grid);
    for (double delta : deltas) {
        BoundRow row;
        row.delta = delta;
        if (delta == 0.0) {
            row.distance = 1.0;
            row.bound = 1.0;
        } else if (!(delta > 0.0 && delta < 0.5)) {
            throw GeometryError(ErrorKind::BadParameter, "delta must lie in [0, 1/2)");
        } else {
            row.distance = distanceD(FloatingBody(S, delta, grid, levelTol).radialOnGrid(grid), rS);
            row.bound = 1.0 + rep.constant * std::pow(delta, 1.0 / n);
        }
        row.margin = row.bound - row.distance;
        rep.holds = rep.holds && row.margin >= 0.0;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace polydual
