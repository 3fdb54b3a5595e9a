#include <cmath>
#include <numbers>
#include <random>

#include "hull.hpp"
#include "polydual/oracles.hpp"

namespace polydual {

namespace {

Points fibonacciSphere(int count) {
    Points out;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / count;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * i;
        out.push_back((Vec(3) << r * std::cos(phi), r * std::sin(phi), z).finished());
    }
    return out;
}

Points superFibonacci(int count) {
    Points out;
    const double phi = std::sqrt(2.0);
    const double psi = 1.533751168755204288;
    for (int i = 0; i < count; ++i) {
        const double s = i + 0.5;
        const double r = std::sqrt(s / count);
        const double R = std::sqrt(1.0 - s / count);
        const double a = 2.0 * std::numbers::pi * s / phi;
        const double b = 2.0 * std::numbers::pi * s / psi;
        out.push_back((Vec(4) << r * std::sin(a), r * std::cos(a), R * std::sin(b), R * std::cos(b)).finished());
    }
    return out;
}

Mat randomRotation(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Mat A(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) A(i, j) = gauss(rng);
    Eigen::HouseholderQR<Mat> qr{A};
    Mat Q = qr.householderQ() * Mat::Identity(dim, dim);
    const Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j)
        if (R(j, j) < 0) Q.col(j) = -Q.col(j);
    return Q;
}

}  // namespace

Mat DirectionGrid::matrix() const {
    Mat M(static_cast<Eigen::Index>(directions.size()), dim);
    for (std::size_t i = 0; i < directions.size(); ++i) M.row(static_cast<Eigen::Index>(i)) = directions[i].transpose();
    return M;
}

void DirectionGrid::addDirections(const Points& pts) {
    for (const auto& p : pts) {
        const double len = p.norm();
        if (!(len > 0.0)) continue;
        directions.push_back(p / len);
        directions.push_back(-p / len);
    }
}

int defaultGridSize(int dim) {
    switch (dim) {
        case 2: return 4096;
        case 3: return 20000;
        default: return 50000;
    }
}

DirectionGrid baseGrid(int dim, int size, std::uint64_t seed) {
    if (dim < 2 || dim > kMaxDim) throw GeometryError(ErrorKind::BadParameter, "grid dimension must be between 2 and 4");
    if (size < 64) throw GeometryError(ErrorKind::BadParameter, "grid size must be at least 64");
    DirectionGrid g;
    g.dim = dim;
    const int half = size / 2;
    Points pts;
    if (dim == 2) {
        g.kind = "uniform-angular";
        for (int i = 0; i < half; ++i) {
            const double t = std::numbers::pi * i / half;
            pts.push_back((Vec(2) << std::cos(t), std::sin(t)).finished());
        }
    } else if (dim == 3) {
        g.kind = "fibonacci";
        pts = fibonacciSphere(half);
    } else {
        g.kind = "super-fibonacci";
        pts = superFibonacci(half);
    }
    if (seed != 0) {
        const Mat Q = randomRotation(dim, seed);
        for (auto& p : pts) p = Q * p;
    }
    g.addDirections(pts);
    return g;
}

Points refinementRings(const Points& centers, int dim) {
    const double ratio = dim == 2 ? 0.9 : dim == 3 ? 0.8 : 0.7;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    Points spokes;
    if (dim == 3) {
        for (int j = 0; j < 6; ++j) {
            const double t = 2.0 * std::numbers::pi * j / 6;
            spokes.push_back((Vec(2) << std::cos(t), std::sin(t)).finished());
        }
    } else if (dim == 4) {
        spokes = fibonacciSphere(8);
    }
    Points out;
    for (const auto& raw : centers) {
        if (!(raw.norm() > 0.0)) continue;
        const Vec c = raw.normalized();
        const Mat B = detail::complementBasis(c);
        int level = 0;
        for (double theta = 0.2; theta > 1e-7; theta *= ratio, ++level) {
            if (dim == 2) {
                out.push_back(std::cos(theta) * c + std::sin(theta) * B.col(0));
                out.push_back(std::cos(theta) * c - std::sin(theta) * B.col(0));
                continue;
            }
            const double spin = golden * level;
            for (const auto& s : spokes) {
                Vec local = s;
                const double x = local(0), y = local(1);
                local(0) = std::cos(spin) * x - std::sin(spin) * y;
                local(1) = std::sin(spin) * x + std::cos(spin) * y;
                out.push_back(std::cos(theta) * c + std::sin(theta) * (B * local));
            }
        }
    }
    return out;
}

DirectionGrid studyGrid(const VPolytope& P, int size, std::uint64_t seed, bool refine) {
    const int n = P.dim();
    DirectionGrid g = baseGrid(n, size > 0 ? size : defaultGridSize(n), seed);
    const VPolytope K = polar(P);
    g.addDirections(P.vertices());
    g.addDirections(K.vertices());
    Points extra;
    for (const auto& xi : P.vertices()) {
        const auto data = polarFacetData(P, K, xi);
        extra.push_back(data.santalo);
        Vec mean = Vec::Zero(n);
        for (const auto& p : data.polarFacet.points) mean += p;
        extra.push_back(mean);
    }
    g.addDirections(extra);
    if (refine) {
        Points centers = P.vertices();
        centers.insert(centers.end(), K.vertices().begin(), K.vertices().end());
        g.addDirections(refinementRings(centers, n));
    }
    return g;
}

Vec maxDot(const Mat& U, const Mat& Q) {
    const Eigen::Index rows = U.rows();
    Vec out(rows);
    const Eigen::Index chunk = 256;
    const Mat Qt = Q.transpose();
    for (Eigen::Index i = 0; i < rows; i += chunk) {
        const Eigen::Index b = std::min(chunk, rows - i);
        const Mat block = U.middleRows(i, b) * Qt;
        out.segment(i, b) = block.rowwise().maxCoeff();
    }
    return out;
}

}  // namespace polydual
