#pragma once

#include <array>
#include <string>
#include <vector>

#include "colorloss/types.h"

namespace colorloss {

struct Edge {
    Qubit a = -1;
    Qubit b = -1;
    Color color = Color::R;
    bool operator==(const Edge&) const = default;
};

// A face of the lattice. Qubits are listed in cyclic order around the face.
struct Plaquette {
    Color color = Color::R;
    std::vector<Qubit> qubits;
    bool operator==(const Plaquette&) const = default;
};

// Reference logical operator for logical index `index` drawn as a string of
// color `color` between the two borders of that color.
struct LogicalPath {
    int index = 0;
    Color color = Color::R;
    std::vector<Qubit> qubits;
    bool operator==(const LogicalPath&) const = default;
};

// Trivalent three-colorable code lattice.
//
// Qubit indexing: qubits are the triangles of a three-colored triangulation
// whose vertices are plaquette centers. They are sorted by the centroid of the
// triangle, bottom row first and left to right within a row. Plaquettes are
// sorted the same way by their center. Qubit count N(d):
//   4.8.8 square (even d)      2(d-1)^2 + 2
//   4.8.8 triangular (odd d)   d^2 - d + 1
//   6.6.6 square (even d)      d(3d - 1)/2, one less when d = 2 mod 4
//   6.6.6 triangular (odd d)   (3d^2 + 1) / 4
//
// Borders. Square codes: blue borders are the left and right sides, green
// borders are the bottom and top sides, red borders are the bottom-left and
// bottom-right corner qubits. Triangular codes: border A of color c is the side
// of color c, border B is the corner qubit opposite to it.
//
// Logical paths. Square codes have k = 2: index 0 holds the blue path and the
// red path (same logical class), index 1 the green path. Triangular codes have
// k = 1 and a path of every color at index 0.
struct ColorLattice {
    Geometry geometry = Geometry::FourEightEight;
    Variant variant = Variant::Square;
    int distance = 0;
    int num_qubits = 0;
    int num_logical = 0;
    std::vector<Edge> edges;
    std::vector<Plaquette> plaquettes;
    std::array<std::array<std::vector<Qubit>, 2>, 3> borders;
    std::vector<LogicalPath> logical_paths;

    // Lookup tables, filled by reindex().
    std::vector<std::array<int, 3>> plaquette_of;  // -1 when absent
    std::vector<std::array<Qubit, 3>> neighbor;    // -1 when absent
    std::vector<std::array<int, 3>> node_of;       // shrunk lattice node, -1 when absent

    void reindex();

    int num_plaquettes() const { return static_cast<int>(plaquettes.size()); }
    // Shrunk lattice node ids: plaquette index for plaquettes, then the two borders.
    int border_node(int side) const { return num_plaquettes() + side; }
    int num_nodes() const { return num_plaquettes() + 2; }

    const LogicalPath* logical_path(int index, Color c) const;
    int degree(Qubit q) const;
};

ColorLattice build_lattice(Geometry geometry, Variant variant, int distance);

// Throws ValidationError when the combination is not supported.
void check_distance(Geometry geometry, Variant variant, int distance);

struct Violation {
    std::string kind;
    std::vector<int> items;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(const std::string& kind) const;
    std::string summary() const;
};

// Checks every lattice invariant. Degree-2 qubits are accepted, lower degrees
// are not; plaquettes must share 0 or 2 qubits.
ValidationReport validate(const ColorLattice& lattice);

// Validation of a reconstructed code living on the same qubit indices.
// Removed qubits must be untouched by edges and plaquettes. The remaining
// qubits must have at most one edge per color, and plaquettes only need to
// overlap evenly since merged faces may share more than one edge.
ValidationReport validate_restricted(const ColorLattice& lattice, const std::vector<uint8_t>& removed);

// V - E + F with F the number of plaquettes (the outer face is not counted).
// With a removal mask, V counts only the remaining qubits.
int euler_characteristic(const ColorLattice& lattice);
int euler_characteristic(const ColorLattice& lattice, const std::vector<uint8_t>& removed);

// Number of logical qubits N - 2 rank(A) for the plaquette incidence A.
int logical_qubit_count(const ColorLattice& lattice);

struct ShrunkLink {
    int from = -1;  // node containing u
    int to = -1;    // node containing v
    Qubit u = -1;
    Qubit v = -1;
    int edge = -1;  // index into lattice.edges
};

// A border qubit lying inside a plaquette of the border's color ties that
// plaquette to the border node through the single qubit.
struct BorderAttachment {
    int plaquette = -1;
    int border = -1;  // node id
    Qubit qubit = -1;
};

struct ShrunkLattice {
    Color color = Color::R;
    std::vector<int> plaquettes;  // node ids of the color-c plaquettes
    int border_a = -1;
    int border_b = -1;
    int num_nodes = 0;
    std::vector<ShrunkLink> links;
    std::vector<BorderAttachment> attachments;
};

ShrunkLattice shrunk_lattice(const ColorLattice& lattice, Color color);

}  // namespace colorloss
