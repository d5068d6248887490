#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "colorloss/io.h"

namespace colorloss {

const char* const kThresholdColumns = "geometry,variant,distance,method,color,trial,seed,p_critical,fraction_remaining";

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

namespace {

void write_metadata(std::ostream& out, const std::vector<std::string>& metadata) {
    for (const auto& line : metadata) out << "# " << line << '\n';
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

template <class T>
T parse_number(const std::string& s, int line, const std::string& column) {
    T v{};
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty())
        throw ValidationError("line " + std::to_string(line) + ": bad value '" + s + "' in column " + column);
    return v;
}

}  // namespace

void write_threshold_csv(std::ostream& out, const std::vector<ThresholdDistribution>& runs,
                         const std::vector<std::string>& metadata) {
    write_metadata(out, metadata);
    out << kThresholdColumns << '\n';
    for (const auto& run : runs) {
        for (size_t i = 0; i < run.trials.size(); i++) {
            const TrialResult& t = run.trials[i];
            out << to_string(run.geometry) << ',' << to_string(run.variant) << ',' << run.distance << ','
                << to_string(run.method) << ',' << color_char(run.color) << ',' << i << ',' << t.seed << ','
                << format_double(t.p_critical) << ',' << format_double(t.fraction_remaining) << '\n';
        }
    }
}

std::vector<ThresholdRow> read_threshold_csv(std::istream& in) {
    static const char* const names[] = {"geometry", "variant", "distance", "method", "color",
                                        "trial",    "seed",    "p_critical", "fraction_remaining"};
    std::vector<ThresholdRow> rows;
    std::map<std::string, int> col;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    size_t width = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line);
        if (!have_header) {
            for (size_t i = 0; i < cells.size(); i++) col[cells[i]] = static_cast<int>(i);
            for (const char* name : names) {
                if (!col.count(name))
                    throw ValidationError("line " + std::to_string(lineno) + ": missing column '" + name + "'");
            }
            width = cells.size();
            have_header = true;
            continue;
        }
        if (cells.size() != width)
            throw ValidationError("line " + std::to_string(lineno) + ": expected " + std::to_string(width) +
                                  " fields, got " + std::to_string(cells.size()));
        auto cell = [&](const char* name) -> const std::string& { return cells[col[name]]; };
        ThresholdRow r;
        r.geometry = cell("geometry");
        r.variant = cell("variant");
        r.method = cell("method");
        r.color = cell("color");
        try {
            parse_geometry(r.geometry);
            parse_variant(r.variant);
            parse_method(r.method);
            parse_color(r.color);
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
        }
        r.distance = parse_number<int>(cell("distance"), lineno, "distance");
        r.trial = parse_number<int>(cell("trial"), lineno, "trial");
        r.seed = parse_number<std::uint64_t>(cell("seed"), lineno, "seed");
        r.p_critical = parse_number<double>(cell("p_critical"), lineno, "p_critical");
        r.fraction_remaining = parse_number<double>(cell("fraction_remaining"), lineno, "fraction_remaining");
        rows.push_back(std::move(r));
    }
    if (!have_header) throw ValidationError("line " + std::to_string(lineno) + ": no header row");
    return rows;
}

Json threshold_summary(const std::vector<ThresholdDistribution>& runs) {
    Json out = Json::array();
    auto stats = remaining_fraction_stats(runs);
    for (size_t r = 0; r < runs.size(); r++) {
        const auto& run = runs[r];
        Json j;
        j["geometry"] = to_string(run.geometry);
        j["variant"] = to_string(run.variant);
        j["method"] = to_string(run.method);
        j["color"] = std::string(1, color_char(run.color));
        j["distance"] = run.distance;
        j["mean"] = run.mean;
        j["std"] = run.stddev;
        j["trials"] = run.trials.size();
        j["fraction_mean"] = stats[r].mean;
        j["fraction_err"] = stats[r].err;
        j["monotonicity_violations"] = run.monotonicity_violations;
        out.push_back(std::move(j));
    }
    // Grouped view keyed by distance for each (method, color).
    Json grouped = Json::object();
    for (const auto& run : runs) {
        const std::string key = to_string(run.method) + "/" + std::string(1, color_char(run.color));
        Json& g = grouped[key];
        g[std::to_string(run.distance)] = {{"mean", run.mean}, {"std", run.stddev}, {"trials", run.trials.size()}};
    }
    Json doc;
    doc["runs"] = std::move(out);
    doc["by_distance"] = std::move(grouped);
    return doc;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points, const std::vector<std::string>& metadata) {
    write_metadata(out, metadata);
    out << "p,survival,err,trials\n";
    for (const auto& p : points) {
        out << format_double(p.p) << ',' << format_double(p.survival) << ',' << format_double(p.err) << ',' << p.trials
            << '\n';
    }
}

}  // namespace colorloss
