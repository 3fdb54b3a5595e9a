#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "hull.hpp"
#include "polydual/duality.hpp"

namespace polydual {

namespace {

// The polar of F - z in facet coordinates, z = origin + basis * y.
class FacetPolarFamily {
public:
    FacetPolarFamily(const Facet& F, double tol) : tol_(tol) {
        const int n = static_cast<int>(F.normal.size());
        origin_ = Vec::Zero(n);
        for (const auto& p : F.points) origin_ += p;
        origin_ /= static_cast<double>(F.points.size());
        Points local;
        for (const auto& p : F.points) local.push_back(F.toBasis(p, origin_));
        const VPolytope Q(local, tol);
        for (const auto& f : Q.facets()) {
            normals_.push_back(f.normal);
            offsets_.push_back(f.offset);
        }
        scale_ = 0.0;
        for (const auto& q : local) scale_ = std::max(scale_, q.norm());
    }

    const Vec& origin() const { return origin_; }
    double scale() const { return scale_; }

    std::optional<VPolytope> polarAt(const Vec& y) const {
        Points pts;
        for (std::size_t j = 0; j < normals_.size(); ++j) {
            const double gap = offsets_[j] - normals_[j].dot(y);
            if (!(gap > 1e-12 * scale_)) return std::nullopt;
            pts.push_back(normals_[j] / gap);
        }
        return VPolytope(pts, tol_);
    }

    double objective(const Vec& y) const {
        auto Q = polarAt(y);
        return Q ? Q->volume() : std::numeric_limits<double>::infinity();
    }

private:
    double tol_;
    Vec origin_;
    std::vector<Vec> normals_;
    std::vector<double> offsets_;
    double scale_ = 1.0;
};

double diameter(const VPolytope& Q) {
    double d = 0.0;
    for (const auto& a : Q.vertices())
        for (const auto& b : Q.vertices()) d = std::max(d, (a - b).norm());
    return d;
}

bool converged(const VPolytope& Q, double residual) { return Q.centroid().norm() <= residual * diameter(Q); }

// Damped Newton on y -> |(F - z(y))°|. The gradient is (k+1)|Q| centroid(Q)
// and the Hessian (k+1)(k+2) times the second moment of Q.
bool newton(const FacetPolarFamily& fam, Vec& y, const SantaloConfig& cfg) {
    const int k = static_cast<int>(y.size());
    auto Q = fam.polarAt(y);
    if (!Q) return false;
    for (int it = 0; it < cfg.maxIterations; ++it) {
        if (converged(*Q, cfg.residual)) return true;
        const Vec g = (k + 1) * Q->volume() * Q->centroid();
        const Mat H = (k + 1) * (k + 2) * secondMoment(*Q);
        const Vec step = -H.ldlt().solve(g);
        if (!step.allFinite()) return false;
        const double f0 = Q->volume();
        double tau = 1.0;
        bool moved = false;
        for (int halvings = 0; halvings < 60; ++halvings, tau *= 0.5) {
            const Vec trial = y + tau * step;
            auto Qt = fam.polarAt(trial);
            if (Qt && Qt->volume() <= f0 * (1.0 + 1e-14)) {
                y = trial;
                Q = std::move(Qt);
                moved = true;
                break;
            }
        }
        if (!moved) return converged(*Q, cfg.residual);
    }
    return converged(*Q, cfg.residual);
}

Vec nelderMead(const FacetPolarFamily& fam, Vec start, int iterations) {
    const int k = static_cast<int>(start.size());
    std::vector<Vec> simplex{start};
    for (int i = 0; i < k; ++i) {
        Vec v = start;
        v(i) += 0.1 * fam.scale();
        simplex.push_back(v);
    }
    std::vector<double> f;
    for (const auto& v : simplex) f.push_back(fam.objective(v));
    for (int it = 0; it < iterations; ++it) {
        std::vector<int> order(static_cast<std::size_t>(k + 1));
        for (int i = 0; i <= k; ++i) order[static_cast<std::size_t>(i)] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return f[static_cast<std::size_t>(a)] < f[static_cast<std::size_t>(b)]; });
        const auto best = static_cast<std::size_t>(order.front());
        const auto worst = static_cast<std::size_t>(order.back());
        const auto second = static_cast<std::size_t>(order[static_cast<std::size_t>(k - 1)]);
        Vec centre = Vec::Zero(k);
        for (int i = 0; i <= k; ++i)
            if (static_cast<std::size_t>(i) != worst) centre += simplex[static_cast<std::size_t>(i)];
        centre /= k;
        const Vec reflected = centre + (centre - simplex[worst]);
        const double fr = fam.objective(reflected);
        if (fr < f[best]) {
            const Vec expanded = centre + 2.0 * (centre - simplex[worst]);
            const double fe = fam.objective(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                f[worst] = fe;
            } else {
                simplex[worst] = reflected;
                f[worst] = fr;
            }
        } else if (fr < f[second]) {
            simplex[worst] = reflected;
            f[worst] = fr;
        } else {
            const Vec contracted = centre + 0.5 * (simplex[worst] - centre);
            const double fc = fam.objective(contracted);
            if (fc < f[worst]) {
                simplex[worst] = contracted;
                f[worst] = fc;
            } else {
                for (int i = 0; i <= k; ++i) {
                    auto& v = simplex[static_cast<std::size_t>(i)];
                    if (static_cast<std::size_t>(i) == best) continue;
                    v = simplex[best] + 0.5 * (v - simplex[best]);
                    f[static_cast<std::size_t>(i)] = fam.objective(v);
                }
            }
        }
    }
    return simplex[static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin())];
}

}  // namespace

Vec santaloPoint(const Facet& F, const SantaloConfig& cfg) {
    if (F.points.empty()) throw GeometryError(ErrorKind::DegenerateInput, "empty facet");
    const int n = static_cast<int>(F.normal.size());
    if (n == 2) {
        if (F.points.size() != 2) throw GeometryError(ErrorKind::DegenerateInput, "a 1-dimensional facet needs two endpoints");
        return 0.5 * (F.points[0] + F.points[1]);
    }
    const FacetPolarFamily fam(F, kDefaultIncidenceTol);
    Vec y = Vec::Zero(n - 1);
    if (!newton(fam, y, cfg)) {
        y = nelderMead(fam, y, 2000);
        if (!newton(fam, y, cfg))
            throw GeometryError(ErrorKind::ConvergenceFailure, "Santaló iteration did not reach the centroid condition");
    }
    return fam.origin() + F.basis * y;
}

}  // namespace polydual
