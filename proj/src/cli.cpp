#include "polydual/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace polydual {

using nlohmann::json;

namespace {

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json vecToJson(const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

std::vector<double> parseDeltas(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(item.substr(first), &used);
        } catch (const std::exception&) {
            throw ParseFailure("bad delta value '" + item + "'");
        }
        if (item.find_first_not_of(" \t", first + used) != std::string::npos)
            throw ParseFailure("bad delta value '" + item + "'");
        out.push_back(d);
    }
    return out;
}

json readJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseFailure("cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseFailure(path + ": " + e.what());
    }
}

struct Options {
    std::string gen;
    int dim = 2;
    double eps = 0.25;
    std::string input;
    std::string output;
    std::string config;
    std::string format;
    std::string deltas;
    double tolIncidence = 0.0;
    double tolBisection = 0.0;
    double tolSantalo = 0.0;
    int grid = 0;
    std::uint64_t seed = 0;
};

struct OptionHandles {
    CLI::Option* deltas = nullptr;
    CLI::Option* tolIncidence = nullptr;
    CLI::Option* tolBisection = nullptr;
    CLI::Option* tolSantalo = nullptr;
    CLI::Option* grid = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* format = nullptr;
};

OptionHandles addCommon(CLI::App* sub, Options& o, bool withDeltas) {
    OptionHandles h;
    sub->add_option("--gen", o.gen, "Generator: cube, cross or hexagon");
    sub->add_option("--dim", o.dim, "Generator dimension");
    sub->add_option("--eps", o.eps, "Hexagon parameter");
    sub->add_option("--input", o.input, "Polytope JSON {\"dim\": n, \"vertices\": [...]}");
    sub->add_option("--output", o.output, "Output file (default: stdout)");
    sub->add_option("--config", o.config, "JSON run configuration");
    h.format = sub->add_option("--format", o.format, "json or csv");
    h.tolIncidence = sub->add_option("--tol-incidence", o.tolIncidence, "Incidence tolerance");
    h.tolBisection = sub->add_option("--tol-bisection", o.tolBisection, "Floating-body bisection tolerance");
    h.tolSantalo = sub->add_option("--tol-santalo", o.tolSantalo, "Santalo centroid residual");
    h.grid = sub->add_option("--grid", o.grid, "Base direction grid size");
    h.seed = sub->add_option("--seed", o.seed, "Grid rotation seed");
    if (withDeltas) h.deltas = sub->add_option("--deltas", o.deltas, "Comma-separated delta values");
    return h;
}

RunConfig resolveConfig(const Options& o, const OptionHandles& h) {
    RunConfig cfg;
    if (!o.config.empty()) {
        try {
            cfg = RunConfig::fromJson(readJsonFile(o.config));
        } catch (const json::exception& e) {
            throw ParseFailure(std::string("config: ") + e.what());
        }
    }
    if (h.tolIncidence->count()) cfg.incidenceTolerance = o.tolIncidence;
    if (h.tolBisection->count()) cfg.bisectionTolerance = o.tolBisection;
    if (h.tolSantalo->count()) cfg.santaloResidual = o.tolSantalo;
    if (h.grid->count()) cfg.gridSize = o.grid;
    if (h.seed->count()) cfg.rngSeed = o.seed;
    if (h.format->count()) cfg.outputFormat = o.format;
    try {
        cfg.validate();
    } catch (const GeometryError& e) {
        throw ParseFailure(e.what());
    }
    return cfg;
}

VPolytope loadPolytope(const Options& o, const RunConfig& cfg) {
    if (!o.input.empty() && !o.gen.empty()) throw ParseFailure("give either --input or --gen, not both");
    if (!o.input.empty()) {
        const json j = readJsonFile(o.input);
        try {
            return polytopeFromJson(j, cfg.incidenceTolerance);
        } catch (const json::exception& e) {
            throw ParseFailure(o.input + ": " + e.what());
        }
    }
    if (!o.gen.empty()) return VPolytope(generator(o.gen, o.dim, o.eps).vertices(), cfg.incidenceTolerance);
    throw ParseFailure("no input: use --input FILE or --gen NAME");
}

json configToJson(const RunConfig& c) {
    return {{"incidenceTolerance", c.incidenceTolerance},
            {"bisectionTolerance", c.bisectionTolerance},
            {"gridSize", c.gridSize},
            {"santaloResidual", c.santaloResidual},
            {"rngSeed", c.rngSeed}};
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.output);
    if (!file) throw ParseFailure("cannot write '" + o.output + "'");
    file << text;
}

}  // namespace

void RunConfig::validate() const {
    if (!(incidenceTolerance > 0.0) || !(bisectionTolerance > 0.0) || !(santaloResidual > 0.0))
        throw GeometryError(ErrorKind::BadParameter, "tolerances must be positive");
    if (gridSize != 0 && gridSize < 64) throw GeometryError(ErrorKind::BadParameter, "grid size must be at least 64");
    if (!outputFormat.empty() && outputFormat != "json" && outputFormat != "csv")
        throw GeometryError(ErrorKind::BadParameter, "output format must be json or csv");
}

RunConfig RunConfig::fromJson(const json& j) {
    RunConfig c;
    c.incidenceTolerance = j.value("incidenceTolerance", c.incidenceTolerance);
    c.bisectionTolerance = j.value("bisectionTolerance", c.bisectionTolerance);
    c.gridSize = j.value("gridSize", c.gridSize);
    c.santaloResidual = j.value("santaloResidual", c.santaloResidual);
    c.rngSeed = j.value("rngSeed", c.rngSeed);
    c.outputFormat = j.value("outputFormat", c.outputFormat);
    return c;
}

VPolytope polytopeFromJson(const json& j, double incidenceTol) {
    const int dim = j.at("dim").get<int>();
    Points pts;
    for (const auto& row : j.at("vertices")) {
        const auto coords = row.get<std::vector<double>>();
        if (static_cast<int>(coords.size()) != dim)
            throw json::other_error::create(501, "vertex has the wrong number of coordinates", &row);
        pts.push_back(Eigen::Map<const Vec>(coords.data(), dim));
    }
    if (pts.empty()) throw json::other_error::create(501, "no vertices", &j);
    return VPolytope(pts, incidenceTol);
}

json polytopeToJson(const VPolytope& P) {
    json verts = json::array();
    for (const auto& v : P.vertices()) verts.push_back(vecToJson(v));
    return {{"dim", P.dim()}, {"vertices", verts}};
}

json reportToJson(const InvariantReport& r) {
    json rows = json::array();
    for (const auto& v : r.perVertex) {
        rows.push_back({{"vertex", vecToJson(v.vertex)},
                        {"coneDensity", v.coneDensity},
                        {"coneDensityPolar", v.coneDensityPolar},
                        {"alpha", v.alpha},
                        {"beta", v.beta},
                        {"santalo", vecToJson(v.santalo)},
                        {"polarFacetMeasure", v.polarFacetMeasure},
                        {"relativePolarMeasure", v.relativePolarMeasure}});
    }
    return {{"dim", r.dim},
            {"volume", r.volume},
            {"polarVolume", r.polarVolume},
            {"perVertex", rows},
            {"betaMax", r.betaMax},
            {"Lambda", r.Lambda},
            {"G", r.G},
            {"cStar", r.cStar},
            {"argVertices", r.argVertices},
            {"betaMaxVertices", r.betaMaxVertices},
            {"GConeForm", r.GConeForm}};
}

std::string reportToCsv(const InvariantReport& r) {
    std::ostringstream os;
    os << "index";
    for (int i = 0; i < r.dim; ++i) os << ",x" << i;
    os << ",cone_density,cone_density_polar,alpha,beta\n";
    for (std::size_t k = 0; k < r.perVertex.size(); ++k) {
        const auto& v = r.perVertex[k];
        os << k;
        for (Eigen::Index i = 0; i < v.vertex.size(); ++i) os << ',' << num(v.vertex(i));
        os << ',' << num(v.coneDensity) << ',' << num(v.coneDensityPolar) << ',' << num(v.alpha) << ',' << num(v.beta)
           << '\n';
    }
    return os.str();
}

std::string convergenceCsv(const ConvergenceTable& t) {
    std::ostringstream os;
    os << "delta,dP,normalized,best_delta_prime,G_closed_form\n";
    for (const auto& r : t.rows)
        os << num(r.delta) << ',' << num(r.dP) << ',' << num(r.normalized) << ',' << num(r.bestDeltaPrime) << ','
           << num(t.G) << '\n';
    if (t.hasExtrapolation) os << "0,," << num(t.extrapolated) << ",," << num(t.G) << '\n';
    return os.str();
}

json convergenceToJson(const ConvergenceTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"delta", r.delta}, {"dP", r.dP}, {"normalized", r.normalized}, {"bestDeltaPrime", r.bestDeltaPrime}});
    json j = {{"G", t.G},
              {"rows", rows},
              {"inclusion", {{"ok", t.inclusion.ok}, {"worstViolation", t.inclusion.worstViolation}}}};
    if (t.hasExtrapolation) j["extrapolated"] = t.extrapolated;
    return j;
}

json boundToJson(const BoundReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"delta", row.delta}, {"distance", row.distance}, {"bound", row.bound}, {"margin", row.margin}});
    return {{"constant", r.constant}, {"holds", r.holds}, {"rows", rows}};
}

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Affine invariant G(P) and floating/illumination body approximation for symmetric polytopes",
                 "polydual"};
    app.require_subcommand(1);
    Options o;
    auto* analyze = app.add_subcommand("analyze", "Per-vertex invariants and G(P)");
    auto* polarCmd = app.add_subcommand("polar", "Vertex list of the polar body");
    auto* verify = app.add_subcommand("verify", "Convergence table of (d_P(delta) - 1) / delta^(1/n)");
    auto* bound = app.add_subcommand("check-bound", "Uniform bound d(S_delta, S) <= 1 + G_n delta^(1/n)");
    const auto hAnalyze = addCommon(analyze, o, false);
    const auto hPolar = addCommon(polarCmd, o, false);
    const auto hVerify = addCommon(verify, o, true);
    const auto hBound = addCommon(bound, o, true);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (analyze->parsed()) {
            const RunConfig cfg = resolveConfig(o, hAnalyze);
            const VPolytope P = loadPolytope(o, cfg);
            const auto report = invariantG(P, SantaloConfig{cfg.santaloResidual});
            if (cfg.outputFormat == "csv") {
                emit(reportToCsv(report), o, out);
            } else {
                json j = reportToJson(report);
                j["config"] = configToJson(cfg);
                emit(j.dump(2) + "\n", o, out);
            }
            return kExitOk;
        }
        if (polarCmd->parsed()) {
            const RunConfig cfg = resolveConfig(o, hPolar);
            const VPolytope P = loadPolytope(o, cfg);
            emit(polytopeToJson(polar(P)).dump(2) + "\n", o, out);
            return kExitOk;
        }
        if (verify->parsed()) {
            const RunConfig cfg = resolveConfig(o, hVerify);
            const VPolytope P = loadPolytope(o, cfg);
            const auto deltas = hVerify.deltas->count() ? parseDeltas(o.deltas) : std::vector<double>{1e-4, 1e-5, 1e-6};
            ConvergenceTable table;
            if (deltas.empty()) {
                table.G = invariantG(P, SantaloConfig{cfg.santaloResidual}).G;
            } else {
                const auto grid = studyGrid(P, cfg.gridSize, cfg.rngSeed);
                SearchConfig sc;
                sc.bisectionTolerance = cfg.bisectionTolerance;
                table = convergenceTable(P, deltas, grid, sc, SantaloConfig{cfg.santaloResidual});
            }
            if (cfg.outputFormat == "json")
                emit(convergenceToJson(table).dump(2) + "\n", o, out);
            else
                emit(convergenceCsv(table), o, out);
            if (!table.inclusion.ok) {
                err << "error: inclusion chain violated (worst relative violation " << num(table.inclusion.worstViolation)
                    << ")\n";
                return kExitInclusion;
            }
            return kExitOk;
        }
        if (bound->parsed()) {
            const RunConfig cfg = resolveConfig(o, hBound);
            const VPolytope S = loadPolytope(o, cfg);
            const auto deltas =
                hBound.deltas->count() ? parseDeltas(o.deltas) : std::vector<double>{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
            const auto grid = studyGrid(S, cfg.gridSize, cfg.rngSeed);
            const auto report = uniformBoundCheck(S, deltas, grid, cfg.bisectionTolerance);
            if (cfg.outputFormat == "csv") {
                std::ostringstream os;
                os << "delta,distance,bound,margin\n";
                for (const auto& r : report.rows)
                    os << num(r.delta) << ',' << num(r.distance) << ',' << num(r.bound) << ',' << num(r.margin) << '\n';
                emit(os.str(), o, out);
            } else {
                emit(boundToJson(report).dump(2) + "\n", o, out);
            }
            if (!report.holds) {
                err << "error: uniform bound violated\n";
                return kExitBound;
            }
            return kExitOk;
        }
    } catch (const ParseFailure& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << "\n";
        return kExitGeometry;
    }
    return kExitParse;
}

}  // namespace polydual
