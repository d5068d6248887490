#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "colorloss/io.h"

namespace colorloss {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitIo = 3, kExitInternal = 4 };

struct RunConfig {
    std::string command;
    std::string geometry = "4.8.8";
    std::string variant = "square";
    std::vector<int> distances{8};
    std::string method = "algebraic";
    std::vector<std::string> colors{"R"};
    int trials = 1000;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string twin_redraw = "per-round";
    std::string output = "-";  // "-" is standard output
    std::string format = "csv";
    std::string summary;  // optional JSON summary path for threshold
    std::vector<double> p_grid;
    std::string input;     // lattice import or fit input
    double inv_nu = 0.0;   // fit: 0 picks 1 for algebraic, 3/4 otherwise
    bool weighted = false;  // fit: weight points by std / sqrt(trials)
    bool quiet = false;

    // Checks every field; throws ValidationError.
    void validate() const;
    // Fields that determine the output, for embedding and replay.
    Json to_json() const;
    // Overrides fields present in the document.
    void merge(const Json& doc);
};

// Entry point of the command-line tool. Returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace colorloss
