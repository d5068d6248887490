#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "colorloss/lattice.h"
#include "colorloss/logical_checks.h"
#include "colorloss/rng.h"

namespace colorloss {

// How twin choices relate across the bisection rounds of one trial.
// PerRound draws them from the running trial stream; Frozen restarts the
// same twin stream every round.
enum class TwinRedraw { PerRound, Frozen };

std::string to_string(TwinRedraw t);
TwinRedraw parse_twin_redraw(std::string_view s);

// Survival of the logical operator given the missing-qubit mask.
using SurvivalCheck = std::function<bool(const std::vector<uint8_t>& mask)>;

SurvivalCheck make_check(const ColorLattice& lattice, Method method, Color color, int mu = -1);

struct TrialOptions {
    TwinRedraw twin_redraw = TwinRedraw::PerRound;
    int max_rounds = 64;
};

struct TrialResult {
    std::uint64_t seed = 0;
    double p_critical = 0.0;
    double fraction_remaining = 1.0;  // at p_critical
    int lost = 0;                     // losses at p_critical
    int rounds = 0;
    // Rounds where the outcome disagreed with an earlier round at a lower
    // (survived later) or higher (failed later) rate.
    int monotonicity_violations = 0;
};

// Bisection for the critical loss rate of one trial. One uniform per qubit
// couples the loss sets across rounds: the set at rate p is {i : u_i < p}.
// Starts at 1/2 with step 1/4, halves the step each round and stops when the
// loss count repeats between two successive rounds.
TrialResult sample_critical_rate(const ColorLattice& lattice, const SurvivalCheck& check, Rng& rng,
                                 const TrialOptions& options = {});
TrialResult sample_critical_rate(const ColorLattice& lattice, Method method, Color color, Rng& rng,
                                 const TrialOptions& options = {});

struct ThresholdDistribution {
    Geometry geometry = Geometry::FourEightEight;
    Variant variant = Variant::Square;
    int distance = 0;
    Method method = Method::Algebraic;
    Color color = Color::R;
    std::uint64_t master_seed = 0;
    std::vector<TrialResult> trials;  // by trial index
    double mean = 0.0;                // p_c(d)
    double stddev = 0.0;              // Delta(d), sample standard deviation
    int monotonicity_violations = 0;

    std::vector<double> samples() const;
    // Recomputes mean, stddev and the violation count from the trials.
    void aggregate();
};

using ProgressFn = std::function<void(int done, int total)>;

struct RunOptions {
    TrialOptions trial;
    int threads = 1;
    ProgressFn progress;  // called from worker threads, serialized
};

// Trials with seeds derive_seed(master_seed, i), run on a pool of threads.
// The result does not depend on the thread count.
ThresholdDistribution run_trials(const ColorLattice& lattice, Method method, Color color, int trials,
                                 std::uint64_t master_seed, const RunOptions& options = {});

struct SweepPoint {
    double p = 0.0;
    int trials = 0;
    int survived = 0;
    double survival = 0.0;
    double err = 0.0;  // binomial standard error
};

// Survival frequency on independent loss draws at every grid rate.
std::vector<SweepPoint> sweep_probability(const ColorLattice& lattice, Method method, Color color,
                                          const std::vector<double>& grid, int trials, std::uint64_t seed,
                                          const RunOptions& options = {});

struct FractionStat {
    int distance = 0;
    Method method = Method::Algebraic;
    Color color = Color::R;
    double mean = 0.0;
    double err = 0.0;  // standard error of the mean
    int trials = 0;
};

std::vector<FractionStat> remaining_fraction_stats(const std::vector<ThresholdDistribution>& distributions);

}  // namespace colorloss
