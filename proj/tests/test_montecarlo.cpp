#include <gtest/gtest.h>

#include <cmath>

#include "colorloss/montecarlo.h"

using namespace colorloss;

TEST(Bisection, AlwaysFailingCheckConvergesToZero) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 8);
    Rng rng(1);
    auto r = sample_critical_rate(lat, [](const std::vector<uint8_t>&) { return false; }, rng);
    EXPECT_LT(r.p_critical, 1.0 / lat.num_qubits);
    EXPECT_EQ(r.lost, 0);
    EXPECT_DOUBLE_EQ(r.fraction_remaining, 1.0);
}

TEST(Bisection, AlwaysSurvivingCheckConvergesToOne) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 8);
    Rng rng(1);
    auto r = sample_critical_rate(lat, [](const std::vector<uint8_t>&) { return true; }, rng);
    EXPECT_GT(r.p_critical, 1.0 - 1.0 / lat.num_qubits);
    EXPECT_LE(r.rounds, 64);
}

TEST(Bisection, FixedSeedIsReproducible) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 8);
    for (TwinRedraw t : {TwinRedraw::PerRound, TwinRedraw::Frozen}) {
        Rng a(42), b(42);
        TrialOptions opt{t, 64};
        auto ra = sample_critical_rate(lat, Method::Algebraic, Color::R, a, opt);
        auto rb = sample_critical_rate(lat, Method::Algebraic, Color::R, b, opt);
        EXPECT_EQ(ra.p_critical, rb.p_critical);
        EXPECT_EQ(ra.fraction_remaining, rb.fraction_remaining);
        EXPECT_GT(ra.p_critical, 0.0);
        EXPECT_LT(ra.p_critical, 1.0);
    }
}

TEST(Trials, IndependentOfThreadCount) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 8);
    RunOptions one;
    auto base = run_trials(lat, Method::Algebraic, Color::R, 40, 7, one);
    for (int threads : {4, 8}) {
        RunOptions opt;
        opt.threads = threads;
        auto other = run_trials(lat, Method::Algebraic, Color::R, 40, 7, opt);
        ASSERT_EQ(other.trials.size(), base.trials.size());
        for (size_t i = 0; i < base.trials.size(); i++) {
            EXPECT_EQ(other.trials[i].seed, base.trials[i].seed);
            EXPECT_EQ(other.trials[i].p_critical, base.trials[i].p_critical);
            EXPECT_EQ(other.trials[i].fraction_remaining, base.trials[i].fraction_remaining);
        }
        EXPECT_EQ(other.mean, base.mean);
        EXPECT_EQ(other.stddev, base.stddev);
    }
    for (size_t i = 0; i < base.trials.size(); i++) EXPECT_EQ(base.trials[i].seed, derive_seed(7, i));
}

TEST(Trials, SingleTrialDistribution) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 6);
    auto dist = run_trials(lat, Method::StringPercolation, Color::B, 1, 3);
    ASSERT_EQ(dist.trials.size(), 1u);
    EXPECT_EQ(dist.mean, dist.trials[0].p_critical);
    EXPECT_EQ(dist.samples(), std::vector<double>{dist.trials[0].p_critical});
}

TEST(Trials, ProgressReachesTotal) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 6);
    RunOptions opt;
    opt.threads = 3;
    int last = 0, calls = 0;
    opt.progress = [&](int done, int total) {
        EXPECT_EQ(total, 12);
        last = std::max(last, done);
        calls++;
    };
    run_trials(lat, Method::Algebraic, Color::G, 12, 1, opt);
    EXPECT_EQ(last, 12);
    EXPECT_EQ(calls, 12);
}

TEST(Trials, ZeroTrialsRejected) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 6);
    EXPECT_THROW(run_trials(lat, Method::Algebraic, Color::G, 0, 1), ValidationError);
}

TEST(Sweep, EndpointsAndOrdering) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 16);
    auto pts = sweep_probability(lat, Method::Algebraic, Color::R, {0.0, 1.0}, 20, 5);
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[0].survival, 1.0);
    EXPECT_EQ(pts[1].survival, 0.0);
    auto s1 = sweep_probability(lat, Method::StringPercolation, Color::R, {0.2}, 200, 9);
    auto s3 = sweep_probability(lat, Method::Algebraic, Color::R, {0.2}, 200, 9);
    EXPECT_LT(s1[0].survival + 3 * s1[0].err, s3[0].survival - 3 * s3[0].err);
    EXPECT_NEAR(s3[0].err, std::sqrt(s3[0].survival * (1 - s3[0].survival) / 200), 1e-12);
}

TEST(Fraction, LowRateFollowsOneMinusTwoP) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 24);
    const double p = 0.05;
    const int draws = 2000;
    Rng rng(77);
    double sum = 0, sum2 = 0;
    for (int i = 0; i < draws; i++) {
        auto rec = reconstruct(lat, sample_losses(lat, p, rng), rng, {uniform_twin, false});
        sum += rec.remaining_fraction;
        sum2 += rec.remaining_fraction * rec.remaining_fraction;
    }
    const double mean = sum / draws;
    const double sd = std::sqrt((sum2 / draws - mean * mean) * draws / (draws - 1));
    // Leading order 1 - 2p, lowered slightly by losses whose twin was also lost.
    EXPECT_NEAR(mean, 1 - 2 * p, 3 * sd);
}

TEST(Fraction, StatsPerDistribution) {
    ThresholdDistribution a;
    a.distance = 8;
    for (double f : {0.5, 0.6, 0.7}) {
        TrialResult t;
        t.fraction_remaining = f;
        a.trials.push_back(t);
    }
    auto stats = remaining_fraction_stats({a});
    ASSERT_EQ(stats.size(), 1u);
    EXPECT_NEAR(stats[0].mean, 0.6, 1e-12);
    EXPECT_NEAR(stats[0].err, 0.1 / std::sqrt(3.0), 1e-12);
    EXPECT_EQ(stats[0].trials, 3);
}

TEST(TwinRedrawNames, RoundTrip) {
    for (TwinRedraw t : {TwinRedraw::PerRound, TwinRedraw::Frozen}) EXPECT_EQ(parse_twin_redraw(to_string(t)), t);
    EXPECT_THROW(parse_twin_redraw("sometimes"), ValidationError);
}

TEST(Checks, MakeCheckRejectsMissingPath) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 6);
    EXPECT_THROW(make_check(lat, Method::Algebraic, Color::G, 0), ValidationError);
}
