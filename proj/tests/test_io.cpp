#include <gtest/gtest.h>

#include <sstream>

#include "colorloss/io.h"

using namespace colorloss;

TEST(LatticeJson, RoundTripIsIdentity) {
    for (auto [g, v, d] : {std::tuple{Geometry::FourEightEight, Variant::Square, 6},
                           std::tuple{Geometry::SixSixSix, Variant::Triangular, 5}}) {
        auto lat = build_lattice(g, v, d);
        Json doc = lattice_to_json(lat);
        auto back = lattice_from_json(parse_json(lattice_json_text(doc), "lattice"));
        EXPECT_EQ(back.num_qubits, lat.num_qubits);
        EXPECT_EQ(back.edges, lat.edges);
        EXPECT_EQ(back.plaquettes, lat.plaquettes);
        EXPECT_EQ(back.borders, lat.borders);
        EXPECT_EQ(back.logical_paths, lat.logical_paths);
        EXPECT_TRUE(validate(back).ok());
        EXPECT_EQ(lattice_json_text(lattice_to_json(back)), lattice_json_text(doc));
    }
}

TEST(LatticeJson, KeysInStableOrder) {
    Json doc = lattice_to_json(build_lattice(Geometry::SixSixSix, Variant::Triangular, 3));
    std::vector<std::string> keys;
    for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"geometry", "variant", "distance", "qubits", "k", "edges", "plaquettes",
                                              "borders", "logical_paths"}));
    EXPECT_EQ(doc["qubits"], 7);
}

TEST(LatticeJson, MalformedDocuments) {
    Json doc = lattice_to_json(build_lattice(Geometry::SixSixSix, Variant::Triangular, 3));
    Json missing = doc;
    missing.erase("edges");
    EXPECT_THROW(lattice_from_json(missing), ValidationError);
    Json range = doc;
    range["edges"][0][1] = 99;
    EXPECT_THROW(lattice_from_json(range), ValidationError);
    Json color = doc;
    color["plaquettes"][0]["color"] = "Y";
    EXPECT_THROW(lattice_from_json(color), ValidationError);
    EXPECT_THROW(parse_json("{", "x"), ValidationError);
}

TEST(RecordJson, Fields) {
    auto lat = build_lattice(Geometry::FourEightEight, Variant::Square, 6);
    Rng rng(3);
    auto rec = reconstruct(lat, sample_losses(lat, 0.1, rng), rng);
    Json j = record_to_json(rec);
    EXPECT_EQ(j["losses"].size(), rec.losses.lost.size());
    EXPECT_EQ(j["dimers"].size(), rec.dimers.size());
    EXPECT_EQ(static_cast<int>(j["mask"].size()), rec.masked);
    EXPECT_EQ(j["remaining_fraction"].get<double>(), rec.remaining_fraction);
}

TEST(ThresholdCsv, WriteThenRead) {
    ThresholdDistribution run;
    run.distance = 8;
    run.method = Method::Branching;
    run.color = Color::G;
    for (int i = 0; i < 3; i++) {
        TrialResult t;
        t.seed = 100 + i;
        t.p_critical = 0.1 * (i + 1);
        t.fraction_remaining = 0.5 + 0.01 * i;
        run.trials.push_back(t);
    }
    std::stringstream ss;
    write_threshold_csv(ss, {run}, {"meta one", "meta two"});
    auto rows = read_threshold_csv(ss);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[2].method, "branching");
    EXPECT_EQ(rows[2].color, "G");
    EXPECT_EQ(rows[2].seed, 102u);
    EXPECT_EQ(rows[2].p_critical, 0.1 * 3);
    EXPECT_EQ(rows[1].fraction_remaining, 0.51);
}

TEST(ThresholdCsv, ColumnsInAnyOrder) {
    std::stringstream ss(
        "seed,trial,p_critical,fraction_remaining,color,method,distance,variant,geometry\n"
        "5,0,0.25,0.6,R,algebraic,8,square,4.8.8\n");
    auto rows = read_threshold_csv(ss);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].distance, 8);
    EXPECT_EQ(rows[0].p_critical, 0.25);
}

TEST(ThresholdCsv, ErrorsNameTheLine) {
    auto message = [](const std::string& text) {
        std::stringstream ss(text);
        try {
            read_threshold_csv(ss);
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    const std::string header = std::string(kThresholdColumns) + "\n";
    EXPECT_NE(message("geometry,variant\n").find("line 1: missing column"), std::string::npos);
    EXPECT_NE(message("# c\n" + header + "4.8.8,square,8,algebraic,R,0,1,abc,0.5\n").find("line 3"),
              std::string::npos);
    EXPECT_NE(message(header + "4.8.8,square,8\n").find("line 2"), std::string::npos);
    EXPECT_NE(message(header + "4.8.8,square,8,magic,R,0,1,0.3,0.5\n").find("line 2"), std::string::npos);
    EXPECT_NE(message("").find("no header"), std::string::npos);
}

TEST(Summary, GroupedByDistance) {
    ThresholdDistribution run;
    run.distance = 12;
    TrialResult t;
    t.p_critical = 0.3;
    run.trials = {t, t};
    run.aggregate();
    Json s = threshold_summary({run});
    EXPECT_EQ(s["runs"].size(), 1u);
    EXPECT_EQ(s["by_distance"]["algebraic/R"]["12"]["mean"].get<double>(), 0.3);
}

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(std::stod(format_double(1.0 / 3)), 1.0 / 3);
}

TEST(Files, MissingFileIsAnIoError) {
    EXPECT_THROW(read_text_file("/nonexistent/dir/file.json"), IoError);
    EXPECT_THROW(write_text_file("/nonexistent/dir/file.json", "x"), IoError);
}
