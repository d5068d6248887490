#include <charconv>
#include <fstream>
#include <sstream>

#include "colorloss/io.h"

namespace colorloss {

namespace {

std::string color_str(Color c) { return std::string(1, color_char(c)); }

template <class T>
T get_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("lattice JSON: missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("lattice JSON: bad field '") + key + "': " + e.what());
    }
}

std::vector<Qubit> qubit_list(const Json& j, int n, const std::string& what) {
    if (!j.is_array()) throw ValidationError("lattice JSON: " + what + " is not a list");
    std::vector<Qubit> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ValidationError("lattice JSON: " + what + " holds a non-integer");
        Qubit q = v.get<Qubit>();
        if (q < 0 || q >= n) throw ValidationError("lattice JSON: " + what + " holds qubit " + std::to_string(q));
        out.push_back(q);
    }
    return out;
}

Color color_field(const Json& j, const std::string& what) {
    if (!j.is_string()) throw ValidationError("lattice JSON: " + what + " color is not a string");
    return parse_color(j.get<std::string>());
}

}  // namespace

Json lattice_to_json(const ColorLattice& lat) {
    Json j;
    j["geometry"] = to_string(lat.geometry);
    j["variant"] = to_string(lat.variant);
    j["distance"] = lat.distance;
    j["qubits"] = lat.num_qubits;
    j["k"] = lat.num_logical;
    Json edges = Json::array();
    for (const Edge& e : lat.edges) edges.push_back(Json::array({e.a, e.b, color_str(e.color)}));
    j["edges"] = std::move(edges);
    Json plaqs = Json::array();
    for (const Plaquette& p : lat.plaquettes) {
        Json o;
        o["color"] = color_str(p.color);
        o["qubits"] = p.qubits;
        plaqs.push_back(std::move(o));
    }
    j["plaquettes"] = std::move(plaqs);
    Json borders = Json::object();
    for (Color c : kColors) borders[color_str(c)] = Json::array({lat.borders[idx(c)][0], lat.borders[idx(c)][1]});
    j["borders"] = std::move(borders);
    Json paths = Json::object();
    for (int mu = 0; mu < lat.num_logical; mu++) {
        Json per = Json::object();
        for (const auto& p : lat.logical_paths) {
            if (p.index == mu) per[color_str(p.color)] = p.qubits;
        }
        paths[std::to_string(mu)] = std::move(per);
    }
    j["logical_paths"] = std::move(paths);
    return j;
}

ColorLattice lattice_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("lattice JSON: document is not an object");
    ColorLattice lat;
    lat.geometry = parse_geometry(get_field<std::string>(j, "geometry"));
    lat.variant = parse_variant(get_field<std::string>(j, "variant"));
    lat.distance = get_field<int>(j, "distance");
    lat.num_qubits = get_field<int>(j, "qubits");
    if (lat.num_qubits < 0) throw ValidationError("lattice JSON: negative qubit count");
    lat.num_logical = j.contains("k") ? get_field<int>(j, "k") : 0;
    const int n = lat.num_qubits;

    const Json& edges = j.contains("edges") ? j.at("edges") : throw ValidationError("lattice JSON: missing field 'edges'");
    if (!edges.is_array()) throw ValidationError("lattice JSON: edges is not a list");
    for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 3) throw ValidationError("lattice JSON: edge is not [a, b, color]");
        auto ab = qubit_list(Json::array({e[0], e[1]}), n, "edge");
        lat.edges.push_back({ab[0], ab[1], color_field(e[2], "edge")});
    }

    const Json& plaqs =
        j.contains("plaquettes") ? j.at("plaquettes") : throw ValidationError("lattice JSON: missing field 'plaquettes'");
    if (!plaqs.is_array()) throw ValidationError("lattice JSON: plaquettes is not a list");
    for (const auto& p : plaqs) {
        if (!p.is_object() || !p.contains("color") || !p.contains("qubits"))
            throw ValidationError("lattice JSON: plaquette needs color and qubits");
        lat.plaquettes.push_back({color_field(p.at("color"), "plaquette"), qubit_list(p.at("qubits"), n, "plaquette")});
    }

    if (j.contains("borders")) {
        const Json& b = j.at("borders");
        if (!b.is_object()) throw ValidationError("lattice JSON: borders is not an object");
        for (auto it = b.begin(); it != b.end(); ++it) {
            const Color c = parse_color(it.key());
            if (!it.value().is_array() || it.value().size() != 2)
                throw ValidationError("lattice JSON: borders of " + it.key() + " must be two lists");
            for (int s = 0; s < 2; s++) lat.borders[idx(c)][s] = qubit_list(it.value()[s], n, "border");
        }
    }

    if (j.contains("logical_paths")) {
        const Json& lp = j.at("logical_paths");
        if (!lp.is_object()) throw ValidationError("lattice JSON: logical_paths is not an object");
        for (auto it = lp.begin(); it != lp.end(); ++it) {
            int mu = 0;
            const std::string& key = it.key();
            auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), mu);
            if (ec != std::errc() || ptr != key.data() + key.size() || mu < 0)
                throw ValidationError("lattice JSON: logical index '" + key + "' is not a number");
            if (!it.value().is_object()) throw ValidationError("lattice JSON: logical paths of " + key + " not an object");
            for (auto pt = it.value().begin(); pt != it.value().end(); ++pt) {
                lat.logical_paths.push_back({mu, parse_color(pt.key()), qubit_list(pt.value(), n, "logical path")});
            }
        }
    }
    lat.reindex();
    return lat;
}

std::string lattice_json_text(const Json& doc) {
    std::string out = "{";
    bool first = true;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        out += first ? "\n  " : ",\n  ";
        first = false;
        out += Json(it.key()).dump() + ": ";
        const Json& v = it.value();
        if (v.is_array() && !v.empty()) {
            out += "[";
            for (size_t i = 0; i < v.size(); i++) out += (i ? ",\n    " : "\n    ") + v[i].dump();
            out += "\n  ]";
        } else {
            out += v.dump();
        }
    }
    out += "\n}\n";
    return out;
}

Json record_to_json(const ReconstructionRecord& rec) {
    Json j;
    j["losses"] = rec.losses.lost;
    Json dimers = Json::array();
    for (const Dimer& d : rec.dimers) {
        if (d.q1 < 0) {
            dimers.push_back(Json::array({d.q0, nullptr, nullptr}));
        } else {
            dimers.push_back(Json::array({d.q0, d.q1, color_str(d.color)}));
        }
    }
    j["dimers"] = std::move(dimers);
    j["skipped"] = rec.skipped;
    std::vector<Qubit> masked;
    for (Qubit q = 0; q < static_cast<Qubit>(rec.mask.size()); q++) {
        if (rec.mask[q]) masked.push_back(q);
    }
    j["mask"] = std::move(masked);
    j["remaining_fraction"] = rec.remaining_fraction;
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path + "'");
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("error while writing '" + path + "'");
}

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(what + ": " + e.what());
    }
}

}  // namespace colorloss
