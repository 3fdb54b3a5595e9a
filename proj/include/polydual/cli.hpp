#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "polydual/invariants.hpp"
#include "polydual/oracles.hpp"

namespace polydual {

struct RunConfig {
    double incidenceTolerance = 1e-9;
    double bisectionTolerance = 1e-12;
    /// Base grid size; 0 picks defaultGridSize(dim).
    int gridSize = 0;
    double santaloResidual = 1e-10;
    std::uint64_t rngSeed = 0;
    /// "json" or "csv"; empty means the command's natural format.
    std::string outputFormat;

    /// Throws BadParameter on non-positive tolerances, grids below 64 or unknown formats.
    void validate() const;
    static RunConfig fromJson(const nlohmann::json& j);
};

enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 2,
    kExitGeometry = 3,
    kExitInclusion = 4,
    kExitBound = 5,
};

/// Polytope from {"dim": n, "vertices": [[...], ...]}. Throws nlohmann::json errors
/// or BadParameter on malformed input.
VPolytope polytopeFromJson(const nlohmann::json& j, double incidenceTol = kDefaultIncidenceTol);
nlohmann::json polytopeToJson(const VPolytope& P);

nlohmann::json reportToJson(const InvariantReport& r);
std::string reportToCsv(const InvariantReport& r);
std::string convergenceCsv(const ConvergenceTable& t);
nlohmann::json convergenceToJson(const ConvergenceTable& t);
nlohmann::json boundToJson(const BoundReport& r);

/// Runs the command line (args[0] is the program name) and returns the exit code.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polydual
