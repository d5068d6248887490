#include <gtest/gtest.h>

#include <algorithm>

#include "colorloss/logical_checks.h"

using namespace colorloss;

namespace {

// Survival of the color-c path by brute force over products with the
// plaquettes whose color is in `allowed`.
bool exhaustive(const ColorLattice& lat, const std::vector<uint8_t>& mask, Color c, std::array<bool, 3> allowed) {
    const LogicalPath* path = lat.logical_path(logical_index_of(lat, c), c);
    std::vector<int> plaqs;
    for (int p = 0; p < lat.num_plaquettes(); p++) {
        if (allowed[idx(lat.plaquettes[p].color)]) plaqs.push_back(p);
    }
    for (uint64_t s = 0; s < (uint64_t{1} << plaqs.size()); s++) {
        std::vector<uint8_t> op(lat.num_qubits, 0);
        for (Qubit q : path->qubits) op[q] ^= 1;
        for (size_t i = 0; i < plaqs.size(); i++) {
            if (s >> i & 1) {
                for (Qubit q : lat.plaquettes[plaqs[i]].qubits) op[q] ^= 1;
            }
        }
        bool clean = true;
        for (Qubit q = 0; q < lat.num_qubits; q++) {
            if (op[q] && mask[q]) clean = false;
        }
        if (clean) return true;
    }
    return false;
}

std::vector<uint8_t> random_mask(const ColorLattice& lat, double p, Rng& rng) {
    auto rec = reconstruct(lat, sample_losses(lat, p, rng), rng, {uniform_twin, false});
    return rec.mask;
}

}  // namespace

TEST(Checks, EmptyMaskSurvives) {
    for (auto [g, v, d] : {std::tuple{Geometry::FourEightEight, Variant::Square, 6},
                           std::tuple{Geometry::SixSixSix, Variant::Triangular, 5}}) {
        auto lat = build_lattice(g, v, d);
        std::vector<uint8_t> none(lat.num_qubits, 0), all(lat.num_qubits, 1);
        for (Color c : kColors) {
            auto o1 = check_string_percolation(lat, none, c);
            auto o2 = check_branching(lat, none, c);
            auto o3 = check_algebraic(lat, none, c, logical_index_of(lat, c));
            EXPECT_TRUE(o1.survives && o2.survives && o3.survives);
            EXPECT_TRUE(verify_witness(o1, lat, none));
            EXPECT_TRUE(verify_witness(o2, lat, none));
            EXPECT_TRUE(verify_witness(o3, lat, none));
            ASSERT_TRUE(o3.witness.has_value());
            EXPECT_FALSE(o3.witness->solution.any());
            for (Method m : {Method::StringPercolation, Method::Branching, Method::Algebraic})
                EXPECT_FALSE(survives(lat, all, m, c));
        }
    }
}

TEST(Checks, StringPercolationMatchesComplementaryStabilizersOnSmallestCode) {
    auto lat = build_lattice(Geometry::SixSixSix, Variant::Triangular, 3);
    int disagreements = 0;
    for (uint32_t s = 0; s < 128; s++) {
        std::vector<Qubit> lost;
        for (Qubit q = 0; q < 7; q++) {
            if (s >> q & 1) lost.push_back(q);
        }
        Rng rng(s);
        auto rec = reconstruct(lat, {lost, -1.0}, rng);
        for (Color c : kColors) {
            std::array<bool, 3> allowed{true, true, true};
            allowed[idx(c)] = false;
            const bool brute = exhaustive(lat, rec.mask, c, allowed);
            disagreements += brute != check_string_percolation(lat, rec.mask, c, false).survives;
        }
    }
    EXPECT_EQ(disagreements, 0);
}

TEST(Checks, HierarchyAndWitnesses) {
    for (auto [g, v, d] : {std::tuple{Geometry::FourEightEight, Variant::Square, 8},
                           std::tuple{Geometry::SixSixSix, Variant::Square, 8},
                           std::tuple{Geometry::FourEightEight, Variant::Triangular, 7}}) {
        auto lat = build_lattice(g, v, d);
        for (uint64_t seed = 0; seed < 150; seed++) {
            Rng rng(seed);
            auto rec = reconstruct(lat, sample_losses(lat, 0.1 + 0.35 * rng.uniform(), rng), rng);
            for (Color c : kColors) {
                auto o1 = check_string_percolation(lat, rec.mask, c);
                auto o2 = check_branching(lat, rec.mask, c);
                auto o3 = check_algebraic(lat, rec, c, logical_index_of(lat, c));
                if (o1.survives) EXPECT_TRUE(o2.survives);
                if (o2.survives) EXPECT_TRUE(o3.survives);
                if (o1.survives) EXPECT_TRUE(verify_witness(o1, lat, rec));
                if (o2.survives) EXPECT_TRUE(verify_witness(o2, lat, rec));
                if (o3.survives) EXPECT_TRUE(verify_witness(o3, lat, rec));
                EXPECT_EQ(o3.survives, survives(lat, rec.mask, Method::Algebraic, c));
            }
        }
    }
}

TEST(Checks, TamperedWitnessIsRejected) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 8);
    std::vector<uint8_t> mask(lat.num_qubits, 0);
    for (Method m : {Method::StringPercolation, Method::Branching, Method::Algebraic}) {
        CheckOutcome o = m == Method::StringPercolation ? check_string_percolation(lat, mask, Color::B)
                         : m == Method::Branching       ? check_branching(lat, mask, Color::B)
                                                        : check_algebraic(lat, mask, Color::B, 0);
        ASSERT_TRUE(o.survives);
        ASSERT_TRUE(verify_witness(o, lat, mask));
        auto bad = mask;
        bad[o.witness->qubits.front()] = 1;
        EXPECT_FALSE(verify_witness(o, lat, bad)) << to_string(m);
    }
}

TEST(Checks, BranchingRescuesABlockedBlueString) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 12);
    bool found = false;
    for (uint64_t seed = 0; seed < 2000 && !found; seed++) {
        Rng rng(seed);
        auto mask = random_mask(lat, 0.2, rng);
        auto o1 = check_string_percolation(lat, mask, Color::B);
        if (o1.survives) continue;
        auto o2 = check_branching(lat, mask, Color::B);
        if (!o2.survives) continue;
        found = true;
        ASSERT_TRUE(o2.witness.has_value());
        EXPECT_FALSE(o2.witness->junctions.empty());
        EXPECT_TRUE(verify_witness(o2, lat, mask));
    }
    EXPECT_TRUE(found);
}

TEST(Checks, MaskMonotonicity) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 8);
    for (uint64_t seed = 0; seed < 200; seed++) {
        Rng rng(seed);
        auto big = random_mask(lat, 0.15 + 0.3 * rng.uniform(), rng);
        auto small = big;
        for (auto& m : small) {
            if (m && rng.uniform() < 0.4) m = 0;
        }
        for (Color c : kColors) {
            for (Method m : {Method::StringPercolation, Method::Branching, Method::Algebraic}) {
                if (survives(lat, big, m, c)) EXPECT_TRUE(survives(lat, small, m, c));
            }
        }
    }
}

TEST(Checks, BranchingLevelOneIsWeaker) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 8);
    for (uint64_t seed = 0; seed < 100; seed++) {
        Rng rng(seed);
        auto mask = random_mask(lat, 0.25, rng);
        for (Color c : kColors) {
            if (check_branching(lat, mask, c, 1, false).survives)
                EXPECT_TRUE(check_branching(lat, mask, c, 2, false).survives);
        }
    }
}

TEST(Checks, MethodNames) {
    for (Method m : {Method::StringPercolation, Method::Branching, Method::Algebraic})
        EXPECT_EQ(parse_method(to_string(m)), m);
    EXPECT_THROW(parse_method("nope"), ValidationError);
}
