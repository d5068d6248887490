#include "colorloss/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "colorloss/reconstruction.h"

namespace colorloss {

std::string to_string(TwinRedraw t) { return t == TwinRedraw::PerRound ? "per-round" : "frozen"; }

TwinRedraw parse_twin_redraw(std::string_view s) {
    if (s == "per-round") return TwinRedraw::PerRound;
    if (s == "frozen") return TwinRedraw::Frozen;
    throw ValidationError("unknown twin-redraw policy '" + std::string(s) + "' (per-round|frozen)");
}

SurvivalCheck make_check(const ColorLattice& lattice, Method method, Color color, int mu) {
    if (mu < 0) mu = logical_index_of(lattice, color);
    if (mu < 0 || !lattice.logical_path(mu, color))
        throw ValidationError("lattice has no logical path of color " + std::string(1, color_char(color)) +
                              " at index " + std::to_string(mu));
    return [&lattice, method, color, mu](const std::vector<uint8_t>& mask) {
        return survives(lattice, mask, method, color, mu);
    };
}

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
// thrown by any item is rethrown once all workers stopped.
template <class Fn>
void parallel_for(int n, int threads, const ProgressFn& progress, Fn fn) {
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex mu;
    int done = 0;
    auto work = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
            std::lock_guard<std::mutex> lock(mu);
            done++;
            if (progress) progress(done, n);
        }
    };
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; t++) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

TrialResult sample_critical_rate(const ColorLattice& lattice, const SurvivalCheck& check, Rng& rng,
                                 const TrialOptions& options) {
    const int n = lattice.num_qubits;
    std::vector<double> u(n);
    for (auto& x : u) x = rng.uniform();
    const std::uint64_t twin_seed = rng.next();

    ReconstructionOptions ro;
    ro.track_generators = false;

    TrialResult res;
    double p = 0.5, step = 0.25;
    double lowest_fail = 2.0, highest_pass = -1.0;
    int prev_lost = -1;
    for (int round = 0; round < options.max_rounds; round++) {
        LossSet losses = losses_from_uniforms(u, p);
        Rng frozen(twin_seed);
        Rng& twins = options.twin_redraw == TwinRedraw::Frozen ? frozen : rng;
        ReconstructionRecord rec = reconstruct(lattice, losses, twins, ro);
        const bool ok = check(rec.mask);
        res.rounds = round + 1;
        res.p_critical = p;
        res.lost = static_cast<int>(losses.lost.size());
        res.fraction_remaining = rec.remaining_fraction;
        if (ok) {
            if (p > lowest_fail) res.monotonicity_violations++;
            highest_pass = std::max(highest_pass, p);
        } else {
            if (p < highest_pass) res.monotonicity_violations++;
            lowest_fail = std::min(lowest_fail, p);
        }
        if (res.lost == prev_lost) break;
        prev_lost = res.lost;
        p += ok ? step : -step;
        step *= 0.5;
    }
    return res;
}

TrialResult sample_critical_rate(const ColorLattice& lattice, Method method, Color color, Rng& rng,
                                 const TrialOptions& options) {
    return sample_critical_rate(lattice, make_check(lattice, method, color), rng, options);
}

std::vector<double> ThresholdDistribution::samples() const {
    std::vector<double> out;
    out.reserve(trials.size());
    for (const auto& t : trials) out.push_back(t.p_critical);
    return out;
}

void ThresholdDistribution::aggregate() {
    const double n = static_cast<double>(trials.size());
    double sum = 0.0;
    monotonicity_violations = 0;
    for (const auto& t : trials) {
        sum += t.p_critical;
        monotonicity_violations += t.monotonicity_violations;
    }
    mean = n > 0 ? sum / n : 0.0;
    double ss = 0.0;
    for (const auto& t : trials) ss += (t.p_critical - mean) * (t.p_critical - mean);
    stddev = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
}

ThresholdDistribution run_trials(const ColorLattice& lattice, Method method, Color color, int trials,
                                 std::uint64_t master_seed, const RunOptions& options) {
    if (trials < 1) throw ValidationError("run_trials: trials must be at least 1");
    ThresholdDistribution dist;
    dist.geometry = lattice.geometry;
    dist.variant = lattice.variant;
    dist.distance = lattice.distance;
    dist.method = method;
    dist.color = color;
    dist.master_seed = master_seed;
    dist.trials.resize(trials);
    const SurvivalCheck check = make_check(lattice, method, color);
    parallel_for(trials, options.threads, options.progress, [&](int i) {
        const std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(i));
        Rng rng(seed);
        TrialResult r = sample_critical_rate(lattice, check, rng, options.trial);
        r.seed = seed;
        dist.trials[i] = r;
    });
    dist.aggregate();
    return dist;
}

std::vector<SweepPoint> sweep_probability(const ColorLattice& lattice, Method method, Color color,
                                          const std::vector<double>& grid, int trials, std::uint64_t seed,
                                          const RunOptions& options) {
    if (trials < 1) throw ValidationError("sweep_probability: trials must be at least 1");
    for (double p : grid) {
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("sweep_probability: rate outside [0, 1]");
    }
    const SurvivalCheck check = make_check(lattice, method, color);
    const int points = static_cast<int>(grid.size());
    std::vector<uint8_t> outcome(static_cast<size_t>(points) * trials, 0);
    ReconstructionOptions ro;
    ro.track_generators = false;
    parallel_for(points * trials, options.threads, options.progress, [&](int item) {
        const int j = item / trials, i = item % trials;
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(i)));
        LossSet losses = sample_losses(lattice, grid[j], rng);
        ReconstructionRecord rec = reconstruct(lattice, losses, rng, ro);
        outcome[item] = check(rec.mask) ? 1 : 0;
    });
    std::vector<SweepPoint> out;
    for (int j = 0; j < points; j++) {
        SweepPoint sp;
        sp.p = grid[j];
        sp.trials = trials;
        for (int i = 0; i < trials; i++) sp.survived += outcome[static_cast<size_t>(j) * trials + i];
        sp.survival = double(sp.survived) / trials;
        sp.err = std::sqrt(sp.survival * (1.0 - sp.survival) / trials);
        out.push_back(sp);
    }
    return out;
}

std::vector<FractionStat> remaining_fraction_stats(const std::vector<ThresholdDistribution>& distributions) {
    std::vector<FractionStat> out;
    for (const auto& d : distributions) {
        FractionStat fs;
        fs.distance = d.distance;
        fs.method = d.method;
        fs.color = d.color;
        fs.trials = static_cast<int>(d.trials.size());
        double sum = 0.0;
        for (const auto& t : d.trials) sum += t.fraction_remaining;
        fs.mean = fs.trials ? sum / fs.trials : 1.0;
        double ss = 0.0;
        for (const auto& t : d.trials) ss += (t.fraction_remaining - fs.mean) * (t.fraction_remaining - fs.mean);
        fs.err = fs.trials > 1 ? std::sqrt(ss / (fs.trials - 1) / fs.trials) : 0.0;
        out.push_back(fs);
    }
    return out;
}

}  // namespace colorloss
