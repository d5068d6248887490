#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "colorloss/lattice.h"
#include "colorloss/montecarlo.h"
#include "colorloss/reconstruction.h"

namespace colorloss {

using Json = nlohmann::ordered_json;

// {geometry, variant, distance, qubits, k, edges: [[a, b, "R"], ...],
//  plaquettes: [{color, qubits}], borders: {"R": [[...], [...]], ...},
//  logical_paths: {"0": {"B": [...], ...}, ...}}
Json lattice_to_json(const ColorLattice& lattice);
// Throws ValidationError on a malformed document. The result is reindexed but
// not validated.
ColorLattice lattice_from_json(const Json& doc);
// One top-level key per line, list items of edges and plaquettes one per line.
std::string lattice_json_text(const Json& doc);

// {losses, dimers: [[q0, q1, "R"], ...], skipped, mask, remaining_fraction}
Json record_to_json(const ReconstructionRecord& record);

// Whole-file helpers. Both throw IoError naming the path.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Parses JSON text, throwing ValidationError with the parser message.
Json parse_json(const std::string& text, const std::string& what);

// One threshold trial as stored in the results CSV.
struct ThresholdRow {
    std::string geometry;
    std::string variant;
    int distance = 0;
    std::string method;
    std::string color;
    int trial = 0;
    std::uint64_t seed = 0;
    double p_critical = 0.0;
    double fraction_remaining = 0.0;
};

extern const char* const kThresholdColumns;  // header line without newline

// Metadata lines are written first, each prefixed with "# ".
void write_threshold_csv(std::ostream& out, const std::vector<ThresholdDistribution>& runs,
                         const std::vector<std::string>& metadata);

// Skips blank and '#' lines. Columns may come in any order but all must be
// present. Throws ValidationError naming the line on a malformed row.
std::vector<ThresholdRow> read_threshold_csv(std::istream& in);

// {runs: [{geometry, variant, method, color, distance, mean, std, trials,
//          fraction_mean, fraction_err, monotonicity_violations}],
//  by_distance: {"algebraic/R": {"8": {mean, std, trials}, ...}, ...}}
Json threshold_summary(const std::vector<ThresholdDistribution>& runs);

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points, const std::vector<std::string>& metadata);

// Shortest decimal that reads back to the same double.
std::string format_double(double v);

}  // namespace colorloss
