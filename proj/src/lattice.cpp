#include "colorloss/lattice.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "colorloss/bitvec.h"
#include "colorloss/gf2.h"

namespace colorloss {

void ColorLattice::reindex() {
    const int n = num_qubits;
    plaquette_of.assign(n, {-1, -1, -1});
    neighbor.assign(n, {-1, -1, -1});
    node_of.assign(n, {-1, -1, -1});
    for (int p = 0; p < num_plaquettes(); p++) {
        const int c = idx(plaquettes[p].color);
        for (Qubit q : plaquettes[p].qubits) {
            if (q >= 0 && q < n && plaquette_of[q][c] < 0) plaquette_of[q][c] = p;
        }
    }
    for (const Edge& e : edges) {
        const int c = idx(e.color);
        if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) continue;
        if (neighbor[e.a][c] < 0) neighbor[e.a][c] = e.b;
        if (neighbor[e.b][c] < 0) neighbor[e.b][c] = e.a;
    }
    for (Qubit q = 0; q < n; q++) {
        for (int c = 0; c < 3; c++) node_of[q][c] = plaquette_of[q][c];
    }
    for (int c = 0; c < 3; c++) {
        for (int s = 0; s < 2; s++) {
            for (Qubit q : borders[c][s]) {
                if (q >= 0 && q < n && node_of[q][c] < 0) node_of[q][c] = border_node(s);
            }
        }
    }
}

const LogicalPath* ColorLattice::logical_path(int index, Color c) const {
    for (const auto& p : logical_paths) {
        if (p.index == index && p.color == c) return &p;
    }
    return nullptr;
}

int ColorLattice::degree(Qubit q) const {
    int d = 0;
    for (const Edge& e : edges) d += (e.a == q) + (e.b == q);
    return d;
}

bool ValidationReport::has(const std::string& kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (size_t i = 0; i < violations.size(); i++) {
        if (i) os << "; ";
        os << violations[i].kind;
        if (!violations[i].items.empty()) {
            os << " [";
            for (size_t k = 0; k < violations[i].items.size() && k < 8; k++) {
                if (k) os << ",";
                os << violations[i].items[k];
            }
            if (violations[i].items.size() > 8) os << ",...";
            os << "]";
        }
    }
    return os.str();
}

namespace {

ValidationReport validate_impl(const ColorLattice& lat, const std::vector<uint8_t>* removed) {
    ValidationReport rep;
    auto add = [&](std::string kind, std::vector<int> items) { rep.violations.push_back({std::move(kind), std::move(items)}); };
    const int n = lat.num_qubits;
    auto in_range = [&](Qubit q) { return q >= 0 && q < n; };
    auto gone = [&](Qubit q) { return removed && (*removed)[q]; };

    if (removed && static_cast<int>(removed->size()) != n) {
        add("mask length", {static_cast<int>(removed->size())});
        return rep;
    }

    std::vector<int> deg(n, 0);
    std::vector<std::array<int, 3>> per_color(n, {0, 0, 0});
    for (int e = 0; e < static_cast<int>(lat.edges.size()); e++) {
        const Edge& ed = lat.edges[e];
        if (!in_range(ed.a) || !in_range(ed.b)) {
            add("edge qubit range", {e});
            continue;
        }
        if (ed.a == ed.b) add("self-loop", {e});
        if (gone(ed.a) || gone(ed.b)) add("masked support", {e});
        deg[ed.a]++;
        deg[ed.b]++;
        per_color[ed.a][idx(ed.color)]++;
        per_color[ed.b][idx(ed.color)]++;
    }
    for (Qubit q = 0; q < n; q++) {
        if (gone(q)) continue;
        bool bad = deg[q] > 3 || (!removed && deg[q] < 2);
        if (bad) add("degree", {q, deg[q]});
        for (int c = 0; c < 3; c++) {
            if (per_color[q][c] > 1) add("edge color repeat", {q, c});
        }
    }

    // Plaquette membership per qubit.
    std::vector<std::vector<int>> member(n);
    for (int p = 0; p < lat.num_plaquettes(); p++) {
        const auto& pl = lat.plaquettes[p];
        std::vector<Qubit> qs = pl.qubits;
        std::sort(qs.begin(), qs.end());
        if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) add("plaquette repeated qubit", {p});
        if (qs.size() % 2 != 0) add("even plaquette weight", {p, static_cast<int>(qs.size())});
        for (Qubit q : qs) {
            if (!in_range(q)) {
                add("plaquette qubit range", {p});
                continue;
            }
            if (gone(q)) add("masked support", {p, q});
            member[q].push_back(p);
        }
    }
    for (Qubit q = 0; q < n; q++) {
        std::array<int, 3> seen{-1, -1, -1};
        for (int p : member[q]) {
            int c = idx(lat.plaquettes[p].color);
            if (seen[c] >= 0 && seen[c] != p) add("plaquette color repeat", {q, seen[c], p});
            seen[c] = p;
        }
    }

    // Pairwise overlaps through shared qubits.
    std::map<std::pair<int, int>, int> shared;
    for (Qubit q = 0; q < n; q++) {
        auto& m = member[q];
        for (size_t i = 0; i < m.size(); i++) {
            for (size_t j = i + 1; j < m.size(); j++) {
                shared[{std::min(m[i], m[j]), std::max(m[i], m[j])}]++;
            }
        }
    }
    for (const auto& [pr, cnt] : shared) {
        bool bad = removed ? (cnt % 2 != 0) : (cnt != 2);
        if (bad) add("plaquette overlap", {pr.first, pr.second, cnt});
    }

    // Edge color against the plaquettes holding both endpoints. With parallel
    // edges a plaquette only needs one edge of another color between the pair.
    std::map<std::pair<Qubit, Qubit>, std::vector<int>> by_pair;
    for (int e = 0; e < static_cast<int>(lat.edges.size()); e++) {
        const Edge& ed = lat.edges[e];
        if (!in_range(ed.a) || !in_range(ed.b)) continue;
        by_pair[{std::min(ed.a, ed.b), std::max(ed.a, ed.b)}].push_back(e);
    }
    // An edge of color c joins two qubits in the same plaquette (or both on no
    // plaquette) of each other color.
    for (int e = 0; e < static_cast<int>(lat.edges.size()); e++) {
        const Edge& ed = lat.edges[e];
        if (!in_range(ed.a) || !in_range(ed.b)) continue;
        for (Color c : kColors) {
            if (c == ed.color) continue;
            auto of = [&](Qubit q) {
                for (int p : member[q]) {
                    if (lat.plaquettes[p].color == c) return p;
                }
                return -1;
            };
            if (of(ed.a) != of(ed.b)) add("edge-color complement", {e, idx(c)});
        }
    }
    // A reconstructed code may put both endpoints in a plaquette of the edge
    // color as well, so the converse is checked on the pristine lattice only.
    for (const auto& [pr, es] : by_pair) {
        if (removed) break;
        for (int p : member[pr.first]) {
            if (!std::count(member[pr.second].begin(), member[pr.second].end(), p)) continue;
            bool explained = std::any_of(es.begin(), es.end(),
                                         [&](int e) { return lat.edges[e].color != lat.plaquettes[p].color; });
            if (!explained) add("edge-color complement", {es.front(), p});
        }
    }

    for (int c = 0; c < 3; c++) {
        std::vector<Qubit> a = lat.borders[c][0], b = lat.borders[c][1];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::vector<Qubit> both;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
        if (!both.empty()) add("border overlap", {c});
    }

    if (!removed) {
        for (int l = 0; l < static_cast<int>(lat.logical_paths.size()); l++) {
            BitVec path = BitVec::from_indices(n, lat.logical_paths[l].qubits);
            for (int p = 0; p < lat.num_plaquettes(); p++) {
                BitVec pv = BitVec::from_indices(n, lat.plaquettes[p].qubits);
                if (path.dot(pv)) add("logical overlap", {l, p});
            }
        }
    }
    return rep;
}

}  // namespace

ValidationReport validate(const ColorLattice& lattice) { return validate_impl(lattice, nullptr); }

ValidationReport validate_restricted(const ColorLattice& lattice, const std::vector<uint8_t>& removed) {
    return validate_impl(lattice, &removed);
}

int euler_characteristic(const ColorLattice& lattice) {
    return lattice.num_qubits - static_cast<int>(lattice.edges.size()) + lattice.num_plaquettes();
}

int euler_characteristic(const ColorLattice& lattice, const std::vector<uint8_t>& removed) {
    int v = 0;
    for (Qubit q = 0; q < lattice.num_qubits; q++) v += removed[q] ? 0 : 1;
    return v - static_cast<int>(lattice.edges.size()) + lattice.num_plaquettes();
}

int logical_qubit_count(const ColorLattice& lattice) {
    std::vector<BitVec> rows;
    for (const auto& p : lattice.plaquettes) rows.push_back(BitVec::from_indices(lattice.num_qubits, p.qubits));
    return lattice.num_qubits - 2 * static_cast<int>(gf2_rank(std::move(rows)));
}

ShrunkLattice shrunk_lattice(const ColorLattice& lattice, Color color) {
    ShrunkLattice s;
    s.color = color;
    s.border_a = lattice.border_node(0);
    s.border_b = lattice.border_node(1);
    s.num_nodes = lattice.num_nodes();
    const int c = idx(color);
    for (int p = 0; p < lattice.num_plaquettes(); p++) {
        if (lattice.plaquettes[p].color == color) s.plaquettes.push_back(p);
    }
    for (int e = 0; e < static_cast<int>(lattice.edges.size()); e++) {
        const Edge& ed = lattice.edges[e];
        if (ed.color != color) continue;
        s.links.push_back({lattice.node_of[ed.a][c], lattice.node_of[ed.b][c], ed.a, ed.b, e});
    }
    for (int side = 0; side < 2; side++) {
        for (Qubit q : lattice.borders[c][side]) {
            int p = lattice.plaquette_of[q][c];
            if (p >= 0) s.attachments.push_back({p, lattice.border_node(side), q});
        }
    }
    return s;
}

}  // namespace colorloss
