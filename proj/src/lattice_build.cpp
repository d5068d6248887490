// Procedural construction of the four lattice families.
//
// Every family is the dual of a three-colored triangulation. Vertices are
// plaquette centers, each triangle is a qubit and two triangles sharing a side
// give an edge whose color is the one missing from that side. A region
// predicate marks each vertex as real (a plaquette), outside, or virtual. A
// virtual vertex stands for the boundary: all virtual vertices of one side are
// identified into a single vertex, and a triangle survives when it has a real
// vertex and every other vertex is virtual.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

#include "colorloss/gf2.h"
#include "colorloss/lattice.h"
#include "colorloss/logical_checks.h"

namespace colorloss {

namespace {

constexpr int kReal = -1;
constexpr int kOutside = -2;

int floor_mod(int a, int m) { return ((a % m) + m) % m; }

struct Pt {
    int x = 0;
    int y = 0;
    auto operator<=>(const Pt&) const = default;
};

enum class Tiling { Square488, Hex666 };

struct Region {
    Tiling tiling;
    int lo = 0;
    int hi = 0;
    std::function<Color(Pt)> color;
    std::function<int(Pt)> classify;  // kReal, kOutside or a side index
    std::vector<Color> side_color;
};

// Display coordinates, used only for ordering.
std::pair<double, double> display(const Region& r, Pt p) {
    if (r.tiling == Tiling::Square488) return {double(p.x), double(p.y)};
    return {p.x + 0.5 * p.y, 0.5 * std::sqrt(3.0) * p.y};
}

std::vector<std::array<Pt, 3>> triangles(const Region& r) {
    std::vector<std::array<Pt, 3>> out;
    for (int x = r.lo; x <= r.hi; x++) {
        for (int y = r.lo; y <= r.hi; y++) {
            if (r.tiling == Tiling::Square488) {
                if (floor_mod(x + y, 2) != 0) continue;
                Pt s{x, y};
                out.push_back({s, Pt{x + 1, y}, Pt{x, y + 1}});
                out.push_back({s, Pt{x, y + 1}, Pt{x - 1, y}});
                out.push_back({s, Pt{x - 1, y}, Pt{x, y - 1}});
                out.push_back({s, Pt{x, y - 1}, Pt{x + 1, y}});
            } else {
                out.push_back({Pt{x, y}, Pt{x + 1, y}, Pt{x, y + 1}});
                out.push_back({Pt{x + 1, y}, Pt{x, y + 1}, Pt{x + 1, y + 1}});
            }
        }
    }
    return out;
}

struct Dual {
    ColorLattice lattice;
    std::vector<std::vector<int>> sides_of_qubit;
};

Dual build_dual(const Region& region) {
    struct Tri {
        std::array<Pt, 3> p;
        std::array<int, 3> cls;
        double key_y, key_x;
    };
    std::vector<Tri> kept;
    for (const auto& t : triangles(region)) {
        Tri tri{t, {}, 0, 0};
        bool has_real = false, ok = true;
        for (int k = 0; k < 3; k++) {
            tri.cls[k] = region.classify(t[k]);
            if (tri.cls[k] == kReal) has_real = true;
            if (tri.cls[k] == kOutside) ok = false;
        }
        if (!ok || !has_real) continue;
        for (int k = 0; k < 3; k++) {
            auto [dx, dy] = display(region, t[k]);
            tri.key_x += dx;
            tri.key_y += dy;
        }
        kept.push_back(tri);
    }
    std::sort(kept.begin(), kept.end(), [](const Tri& a, const Tri& b) {
        if (std::abs(a.key_y - b.key_y) > 1e-9) return a.key_y < b.key_y;
        return a.key_x < b.key_x;
    });

    Dual out;
    ColorLattice& lat = out.lattice;
    lat.num_qubits = static_cast<int>(kept.size());
    out.sides_of_qubit.resize(kept.size());

    // Vertex identity after identifying the virtual vertices of one side.
    using VKey = std::pair<int, Pt>;  // (side or kReal, point)
    auto vkey = [&](const Tri& t, int k) -> VKey {
        if (t.cls[k] == kReal) return {kReal, t.p[k]};
        return {t.cls[k], Pt{0, 0}};
    };

    std::map<std::pair<VKey, VKey>, std::vector<Qubit>> by_pair;
    std::map<Pt, std::vector<Qubit>> by_center;
    for (Qubit q = 0; q < lat.num_qubits; q++) {
        const Tri& t = kept[q];
        for (int k = 0; k < 3; k++) {
            if (t.cls[k] == kReal) {
                by_center[t.p[k]].push_back(q);
            } else {
                out.sides_of_qubit[q].push_back(t.cls[k]);
            }
        }
        for (int k = 0; k < 3; k++) {
            for (int l = k + 1; l < 3; l++) {
                if (t.cls[k] != kReal && t.cls[l] != kReal) continue;
                VKey a = vkey(t, k), b = vkey(t, l);
                if (b < a) std::swap(a, b);
                by_pair[{a, b}].push_back(q);
            }
        }
    }

    for (const auto& [pair, qs] : by_pair) {
        if (qs.size() == 1) continue;
        if (qs.size() != 2) throw std::logic_error("lattice construction: side shared by more than two triangles");
        const Tri& t = kept[qs[0]];
        Color cu = Color::R, cv = Color::R;
        for (int k = 0; k < 3; k++) {
            if (vkey(t, k) == pair.first) cu = region.color(t.p[k]);
            if (vkey(t, k) == pair.second) cv = region.color(t.p[k]);
        }
        lat.edges.push_back({std::min(qs[0], qs[1]), std::max(qs[0], qs[1]), third_color(cu, cv)});
    }
    std::sort(lat.edges.begin(), lat.edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.a, a.b, a.color) < std::tie(b.a, b.b, b.color);
    });

    struct Face {
        Pt center;
        double y, x;
        Plaquette p;
    };
    std::vector<Face> faces;
    for (auto& [center, qs] : by_center) {
        auto [cx, cy] = display(region, center);
        std::vector<std::pair<double, Qubit>> around;
        for (Qubit q : qs) {
            double tx = kept[q].key_x / 3 - cx, ty = kept[q].key_y / 3 - cy;
            around.push_back({std::atan2(ty, tx), q});
        }
        std::sort(around.begin(), around.end());
        Plaquette p;
        p.color = region.color(center);
        for (auto& a : around) p.qubits.push_back(a.second);
        faces.push_back({center, cy, cx, std::move(p)});
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (std::abs(a.y - b.y) > 1e-9) return a.y < b.y;
        return a.x < b.x;
    });
    for (auto& f : faces) lat.plaquettes.push_back(std::move(f.p));
    return out;
}

std::vector<Qubit> qubits_on_side(const Dual& d, int side) {
    std::vector<Qubit> out;
    for (Qubit q = 0; q < d.lattice.num_qubits; q++) {
        const auto& s = d.sides_of_qubit[q];
        if (std::find(s.begin(), s.end(), side) != s.end()) out.push_back(q);
    }
    return out;
}

Qubit corner(const Dual& d, int s1, int s2) {
    Qubit found = -1;
    for (Qubit q = 0; q < d.lattice.num_qubits; q++) {
        const auto& s = d.sides_of_qubit[q];
        bool a = std::find(s.begin(), s.end(), s1) != s.end();
        bool b = std::find(s.begin(), s.end(), s2) != s.end();
        if (a && b) {
            if (found >= 0) throw std::logic_error("lattice construction: ambiguous corner");
            found = q;
        }
    }
    if (found < 0) throw std::logic_error("lattice construction: missing corner");
    return found;
}

Color color488(Pt p) {
    if (floor_mod(p.x + p.y, 2) == 0) return Color::R;
    return floor_mod(p.x, 2) == 0 ? Color::G : Color::B;
}

Color color666(Pt p) { return color_at(floor_mod(p.y - p.x, 3)); }

// Side numbering for square codes.
constexpr int kLeft = 0, kRight = 1, kBottom = 2, kTop = 3;

Region square488(int d) {
    const int D = d - 2;
    Region r{Tiling::Square488, -2, D + 2, color488, nullptr, {Color::B, Color::B, Color::G, Color::G}};
    r.classify = [D](Pt p) {
        if (p.x >= 0 && p.x <= D && p.y >= 0 && p.y <= D) return kReal;
        Color c = color488(p);
        if (c == Color::B && p.x < 0) return kLeft;
        if (c == Color::B && p.x > D) return kRight;
        if (c == Color::G && p.y < 0) return kBottom;
        if (c == Color::G && p.y > D) return kTop;
        return kOutside;
    };
    return r;
}

Region triangular488(int d) {
    const int S = d - 2;
    Region r{Tiling::Square488, -2, S + 2, color488, nullptr, {Color::B, Color::G, Color::R}};
    r.classify = [S](Pt p) {
        if (p.x >= 0 && p.y >= 0 && p.x + p.y <= S) return kReal;
        Color c = color488(p);
        if (c == Color::B && p.x < 0) return 0;
        if (c == Color::G && p.y < 0) return 1;
        if (c == Color::R && p.x + p.y > S) return 2;
        return kOutside;
    };
    return r;
}

// Rectangle with armchair left/right sides (blue) and zigzag bottom/top rows
// (green). Width and height are tuned so both string directions have length d.
Region square666(int d) {
    const int width = 3 * (d - 2) / 2 + 1;
    const int height = d - 2;
    const Color side_lr = Color::B, side_tb = Color::G;
    Region r{Tiling::Hex666, -2 * d - 4, 2 * d + 4, color666, nullptr, {side_lr, side_lr, side_tb, side_tb}};
    r.classify = [=](Pt p) {
        const int f = 2 * p.x + p.y;
        const Color c = color666(p);
        bool real = f >= 0 && f <= width && p.y >= -1 && p.y <= height + 1;
        if (p.y == height + 1 && c == side_tb) real = false;
        if (p.y == -1 && c == side_tb) real = false;
        if (real) return kReal;
        if (f > width && c == side_lr) return kRight;
        if (f < 0 && c == side_lr) return kLeft;
        if (p.y >= height + 1 && c == side_tb) return kTop;
        if (p.y <= -1 && c == side_tb) return kBottom;
        return kOutside;
    };
    return r;
}

// Triangle bounded by 2a+b <= t, b-a <= t+1, -(a+2b) <= t-1 with t=(d-1)/2.
// A side's virtual color is the color of the first layer outside it.
Region triangular666(int d) {
    const int t = (d - 1) / 2;
    const std::array<int, 3> bound{t, t + 1, t - 1};
    auto f = [](int s, Pt p) {
        if (s == 0) return 2 * p.x + p.y;
        if (s == 1) return p.y - p.x;
        return -(p.x + 2 * p.y);
    };
    std::vector<Color> side_color(3);
    for (int s = 0; s < 3; s++) side_color[s] = color_at(floor_mod(bound[s] + 1, 3));
    Region r{Tiling::Hex666, -2 * d - 4, 2 * d + 4, color666, nullptr, side_color};
    r.classify = [=](Pt p) {
        bool inside = true;
        for (int s = 0; s < 3; s++) inside = inside && f(s, p) <= bound[s];
        if (inside) return kReal;
        Color c = color666(p);
        for (int s = 0; s < 3; s++) {
            if (f(s, p) > bound[s] && c == side_color[s]) return s;
        }
        return kOutside;
    };
    return r;
}

void set_logical_paths(ColorLattice& lat) {
    lat.reindex();
    std::array<std::vector<Qubit>, 3> path;
    for (Color c : kColors) {
        auto sp = border_path(lat, shrunk_lattice(lat, c), nullptr);
        if (!sp) throw std::logic_error("lattice construction: no reference path");
        path[idx(c)] = sp->qubits;
    }
    if (lat.variant == Variant::Triangular) {
        for (Color c : kColors) lat.logical_paths.push_back({0, c, path[idx(c)]});
        return;
    }
    // Red runs corner to corner along the bottom; find its class.
    std::vector<BitVec> gens;
    for (const auto& p : lat.plaquettes) gens.push_back(BitVec::from_indices(lat.num_qubits, p.qubits));
    Gf2Basis basis(gens);
    auto vec = [&](Color c) { return BitVec::from_indices(lat.num_qubits, path[idx(c)]); };
    int red_index = -1;
    if (basis.contains(vec(Color::R) ^ vec(Color::B))) red_index = 0;
    if (basis.contains(vec(Color::R) ^ vec(Color::G))) red_index = 1;
    if (red_index != 0) throw std::logic_error("lattice construction: red path not in the blue class");
    lat.logical_paths.push_back({0, Color::B, path[idx(Color::B)]});
    lat.logical_paths.push_back({0, Color::R, path[idx(Color::R)]});
    lat.logical_paths.push_back({1, Color::G, path[idx(Color::G)]});
}

}  // namespace

void check_distance(Geometry geometry, Variant variant, int distance) {
    const std::string name = to_string(geometry) + " " + to_string(variant);
    if (variant == Variant::Square) {
        if (distance < 4 || distance % 2 != 0)
            throw ValidationError(name + " lattices need an even distance >= 4, got " + std::to_string(distance));
    } else {
        if (distance < 3 || distance % 2 != 1)
            throw ValidationError(name + " lattices need an odd distance >= 3, got " + std::to_string(distance));
    }
    if (distance > 400) throw ValidationError("distance " + std::to_string(distance) + " is too large");
}

ColorLattice build_lattice(Geometry geometry, Variant variant, int distance) {
    check_distance(geometry, variant, distance);
    Region region = geometry == Geometry::FourEightEight
                        ? (variant == Variant::Square ? square488(distance) : triangular488(distance))
                        : (variant == Variant::Square ? square666(distance) : triangular666(distance));
    Dual dual = build_dual(region);
    ColorLattice& lat = dual.lattice;
    lat.geometry = geometry;
    lat.variant = variant;
    lat.distance = distance;

    if (variant == Variant::Square) {
        lat.num_logical = 2;
        lat.borders[idx(Color::B)] = {qubits_on_side(dual, kLeft), qubits_on_side(dual, kRight)};
        lat.borders[idx(Color::G)] = {qubits_on_side(dual, kBottom), qubits_on_side(dual, kTop)};
        lat.borders[idx(Color::R)] = {std::vector<Qubit>{corner(dual, kLeft, kBottom)},
                                       std::vector<Qubit>{corner(dual, kRight, kBottom)}};
    } else {
        lat.num_logical = 1;
        // The corner opposite to a side joins the two other sides.
        for (int s = 0; s < 3; s++) {
            const int o1 = (s + 1) % 3, o2 = (s + 2) % 3;
            lat.borders[idx(region.side_color[s])] = {qubits_on_side(dual, s), std::vector<Qubit>{corner(dual, o1, o2)}};
        }
    }
    set_logical_paths(lat);
    lat.reindex();
    return lat;
}

}  // namespace colorloss
