// Acceptance run: one PASS/FAIL line per criterion, with the measured values.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "polydual/oracles.hpp"

using namespace polydual;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Vec v2(double x, double y) { return (Vec(2) << x, y).finished(); }

Outcome cubeClosedForm() {
    Outcome o;
    double worst = 0.0;
    for (int n = 2; n <= 4; ++n) worst = std::max(worst, rel(invariantG(generator("cube", n)).G, std::pow(factorial(n), 1.0 / n) / n));
    o.pass = worst <= 1e-9;
    o.detail = "max rel err " + fmt("%.2e", worst);
    return o;
}

Outcome crossClosedForm() {
    Outcome o;
    double worst = 0.0;
    for (int n = 2; n <= 4; ++n) worst = std::max(worst, rel(invariantG(generator("cross", n)).G, std::pow(2.0, 1.0 / n) / 2));
    const double square = std::abs(invariantG(generator("cross", 2)).G - invariantG(generator("cube", 2)).G);
    o.pass = worst <= 1e-9 && square <= 1e-12;
    o.detail = "max rel err " + fmt("%.2e", worst) + ", |G(B1^2) - G(Binf^2)| " + fmt("%.1e", square);
    return o;
}

Outcome hexagonFamily() {
    Outcome o;
    double gErr = 0.0, cErr = 0.0, printed = 0.0;
    for (double e : {0.1, 0.25, 0.4}) {
        const auto P = generator("hexagon", 2, e);
        const auto r = invariantG(P);
        const double w = std::sqrt(1 - e * e);
        gErr = std::max(gErr, std::abs(r.G - 2 * std::sqrt(2.0) * std::sqrt(1 + e) * std::pow(1 - e, 1.5) / (3 - 2 * e)));
        cErr = std::max(cErr, std::abs(r.cStar - std::sqrt(1 + e) * std::pow(1 - e, 1.5) / (std::sqrt(2.0) * (2 - e) * (3 - 2 * e))));
        const auto v1 = vertexInvariants(P, v2(0, 1));
        const auto v2_ = vertexInvariants(P, v2(w, e));
        const double errs[] = {
            std::abs(P.volume() - 2 * (1 + e) * w), std::abs(polar(P).volume() - (4 - 2 * e) / w),
            std::abs(v1.alpha - std::sqrt(2.0) * w), std::abs(v1.beta - (4 - 2 * e) / (1 - e)),
            std::abs(v2_.alpha - std::sqrt(1 + e)), std::abs(v2_.beta - (8 - 4 * e)),
        };
        for (double x : errs) printed = std::max(printed, x);
    }
    o.pass = gErr <= 1e-7 && cErr <= 1e-7 && printed <= 1e-9;
    o.detail = "G err " + fmt("%.1e", gErr) + ", c0 err " + fmt("%.1e", cErr) + ", printed values err " + fmt("%.1e", printed);
    return o;
}

Outcome formEquivalence() {
    Outcome o;
    double worst = 0.0;
    int count = 0;
    for (int n = 2; n <= 3; ++n) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto r = invariantG(randomSymmetric(n, n + 2 + static_cast<int>(seed % 5), seed));
            worst = std::max(worst, std::abs(r.G - r.GConeForm));
            ++count;
        }
    }
    o.pass = worst <= 1e-9;
    o.detail = std::to_string(count) + " polytopes, max |diff| " + fmt("%.1e", worst);
    return o;
}

Outcome affineInvariance() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> logs(0.0, std::log(10.0));
    auto orthogonal = [&](int n) {
        Mat A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = g(rng);
        Eigen::HouseholderQR<Mat> qr{A};
        return Mat(qr.householderQ() * Mat::Identity(n, n));
    };
    double worst = 0.0;
    for (const auto& P : {generator("cube", 2), generator("cross", 2), generator("hexagon", 2, 0.25), generator("cube", 3),
                          generator("cross", 3)}) {
        const double G = invariantG(P).G;
        for (int k = 0; k < 20; ++k) {
            const int n = P.dim();
            Vec s(n);
            for (int i = 0; i < n; ++i) s(i) = std::exp(logs(rng));
            const Mat L = orthogonal(n) * s.asDiagonal() * orthogonal(n);
            worst = std::max(worst, rel(invariantG(applyLinear(P, L)).G, G));
        }
    }
    o.pass = worst <= 1e-6;
    o.detail = "100 maps, max rel err " + fmt("%.1e", worst);
    return o;
}

Outcome oracleAgreement() {
    Outcome o;
    const double delta = 1e-5;
    double fErr = 0.0, iErr = 0.0;
    for (const auto& P : {generator("cube", 2), generator("cube", 3), generator("cross", 2), generator("cross", 3),
                          generator("hexagon", 2, 0.25)}) {
        const auto grid = studyGrid(P);
        const auto inv = invariantG(P);
        const FloatingBody F(P, delta, grid);
        const PolarIlluminationBody I(P, delta, grid);
        for (const auto& v : inv.perVertex) {
            const Vec u = v.vertex.normalized();
            const double r = radial(P, u);
            fErr = std::max(fErr, std::abs(F.radial(u) / r - vertexFloatRatio(P, delta, v.vertex)));
            iErr = std::max(iErr, std::abs(I.radial(u) / r - 1 / (1 + v.beta * delta)));
        }
    }
    o.pass = fErr <= 5e-3 && iErr <= 5e-3;
    o.detail = "floating err " + fmt("%.1e", fErr) + ", illumination err " + fmt("%.1e", iErr);
    return o;
}

Outcome limitFor(const VPolytope& P, double target, const std::string& name) {
    Outcome o;
    const auto t = convergenceTable(P, {1e-5, 1e-6, 1e-7}, studyGrid(P));
    std::ostringstream os;
    os << name << ":";
    bool monotone = true;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        os << " " << fmt("%.6f", t.rows[i].normalized);
        if (i > 0) {
            const bool sameSide = (t.rows[i].normalized - t.rows[i - 1].normalized) * (target - t.rows[i - 1].normalized) > 0;
            const bool closer = std::abs(t.rows[i].normalized - target) < std::abs(t.rows[i - 1].normalized - target);
            monotone = monotone && sameSide && closer;
        }
    }
    const double last = rel(t.rows.back().normalized, target);
    os << " -> " << fmt("%.6f", target) << " (last " << fmt("%.1f", 100 * last) << "%, extrapolated "
       << fmt("%.6f", t.extrapolated) << ")";
    o.pass = monotone && last <= 0.15 && t.inclusion.ok;
    o.detail = os.str();
    return o;
}

Outcome mainLimit() {
    const auto a = limitFor(generator("cube", 2), std::sqrt(0.5), "square");
    const auto b = limitFor(generator("hexagon", 2, 0.25), invariantG(generator("hexagon", 2, 0.25)).G, "hexagon(0.25)");
    return {a.pass && b.pass, a.detail + "; " + b.detail};
}

Outcome discontinuity() {
    Outcome o;
    const double gHex = invariantG(generator("hexagon", 2, 1e-3)).G;
    const double gCross = invariantG(generator("cross", 2)).G;
    const double limit = 2 * std::sqrt(2.0) / 3;
    const double delta = 1e-3;
    const auto hex = generator("hexagon", 2, 0.05);
    const auto cross = generator("cross", 2);
    const double dHex = dPdelta(hex, delta, studyGrid(hex)).value;
    const double dCross = dPdelta(cross, delta, studyGrid(cross)).value;
    const double dRel = rel(dHex, dCross);
    const double excessRel = rel(dHex - 1, dCross - 1);
    o.pass = rel(gHex, limit) <= 1e-2 && std::abs(gCross - std::sqrt(0.5)) <= 1e-12 && dRel <= 0.05;
    o.detail = "G(P(1e-3)) " + fmt("%.6f", gHex) + " vs " + fmt("%.6f", limit) + ", G(B1^2) " + fmt("%.6f", gCross) +
               ", d at 1e-3: " + fmt("%.6f", dHex) + " vs " + fmt("%.6f", dCross) + " (rel " + fmt("%.2e", dRel) +
               ", excess rel " + fmt("%.2e", excessRel) + ")";
    return o;
}

Outcome uniformBound() {
    Outcome o;
    const auto S = generator("cube", 2);
    const auto rep = uniformBoundCheck(S, {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}, studyGrid(S));
    double minMargin = std::numeric_limits<double>::infinity();
    for (const auto& r : rep.rows) minMargin = std::min(minMargin, r.margin);
    o.pass = rep.holds && std::abs(rep.constant - std::sqrt(2 * M_PI)) <= 1e-14;
    o.detail = "G_2 " + fmt("%.10f", rep.constant) + ", min margin " + fmt("%.3e", minMargin);
    return o;
}

/// Inclusion chain, monotonicity, sandwich, edge-midpoint rate, polar involution
/// and clip additivity over the generator set and seeds {0, 1, 2}.
Outcome invariantSuites() {
    std::vector<VPolytope> bodies;
    for (int n = 2; n <= 4; ++n) {
        bodies.push_back(generator("cube", n));
        bodies.push_back(generator("cross", n));
    }
    for (double e : {0.1, 0.25, 0.4}) bodies.push_back(generator("hexagon", 2, e));

    int failures = 0, checks = 0;
    auto expect = [&](bool ok) {
        ++checks;
        if (!ok) ++failures;
    };
    double worstSlopeErr = 0.0;
    for (std::uint64_t seed : {0u, 1u, 2u}) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g;
        for (const auto& P : bodies) {
            const int n = P.dim();
            const auto grid = studyGrid(P, n == 2 ? 2048 : 3000, seed, n < 4);
            const auto inv = invariantG(P);
            const double delta = 1e-4;
            const double dp = inv.cStar * std::pow(delta, 1.0 / n);
            expect(inclusionChain(P, delta, dp, grid).ok);

            Vec v(n);
            for (int i = 0; i < n; ++i) v(i) = g(rng);
            v.normalize();
            double prevH = support(P, v), prevR = radial(polar(P), v);
            for (double d : {1e-6, 1e-4, 1e-2, 0.2}) {
                const double h = floatingSupport(P, d, v);
                const double r = illuminationRadial(polar(P), d, v);
                expect(h < prevH && r > prevR);
                prevH = h;
                prevR = r;
            }

            const PolarIlluminationBody I(P, 1e-3, grid);
            const Vec rI = I.radialOnGrid(grid);
            Points inner;
            for (const auto& x : inv.perVertex) inner.push_back(x.vertex / (1 + x.beta * 1e-3));
            Points outer = inner;
            for (const auto& [a, b] : P.edges()) outer.push_back(0.5 * (P.vertex(a) + P.vertex(b)));
            expect((rI - PolytopeBody(VPolytope(inner)).radialOnGrid(grid)).minCoeff() >= -1e-12);
            expect((PolytopeBody(VPolytope(outer)).radialOnGrid(grid) - rI).minCoeff() >= -1e-12);

            const auto bipolar = polar(polar(P));
            bool same = bipolar.vertexCount() == P.vertexCount();
            for (const auto& x : P.vertices()) same = same && bipolar.findVertex(x) >= 0;
            expect(same);

            for (int k = 0; k < 5; ++k) {
                Vec u(n);
                for (int i = 0; i < n; ++i) u(i) = g(rng);
                u.normalize();
                const Halfspace H{u, 0.5 * support(P, u) * std::uniform_real_distribution<double>(-1, 1)(rng)};
                expect(rel(clip(P, H).volume() + clip(P, H.complement()).volume(), P.volume()) <= 1e-9);
            }
        }
        // Edge midpoint of the square: log-log slope of 1 - |x_delta| / |x| over [1e-6, 1e-3].
        const auto square = generator("cube", 2);
        const auto grid = studyGrid(square, 2048, seed);
        const double lo = 1 - floatingRadial(square, 1e-6, v2(1, 0), grid);
        const double hi = 1 - floatingRadial(square, 1e-3, v2(1, 0), grid);
        const double slope = std::log(hi / lo) / std::log(1e-3 / 1e-6);
        worstSlopeErr = std::max(worstSlopeErr, std::abs(slope - 1.0));
        expect(slope >= 0.9 && slope <= 1.1);
    }
    return {failures == 0, std::to_string(checks - failures) + "/" + std::to_string(checks) +
                               " checks, worst slope deviation " + fmt("%.1e", worstSlopeErr)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double budgetSeconds;
    };
    const Criterion criteria[] = {
        {"closed-form G, cube n=2..4", cubeClosedForm, 1.0},
        {"closed-form G, crosspolytope n=2..4", crossClosedForm, 1.0},
        {"hexagon family G, c0 and printed values", hexagonFamily, 10.0},
        {"alpha/beta form equals cone-measure form", formEquivalence, 60.0},
        {"affine invariance of G", affineInvariance, 60.0},
        {"vertex radial ratios vs closed forms at delta=1e-5", oracleAgreement, 120.0},
        {"main limit on square and hexagon(0.25)", mainLimit, 1200.0},
        {"discontinuity and non-uniformity", discontinuity, 120.0},
        {"uniform bound on the square", uniformBound, 60.0},
        {"invariant suites over generators and seeds", invariantSuites, 600.0},
    };
    int failed = 0;
    int index = 1;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budgetSeconds) {
            out.pass = false;
            out.detail += ", over time budget";
        }
        std::printf("%s [%d] %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", index, c.name, out.detail.c_str(), secs);
        std::fflush(stdout);
        if (!out.pass) ++failed;
        ++index;
    }
    return failed == 0 ? 0 : 1;
}
