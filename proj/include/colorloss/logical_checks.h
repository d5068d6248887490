#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colorloss/bitvec.h"
#include "colorloss/lattice.h"
#include "colorloss/reconstruction.h"

namespace colorloss {

// Loss affects X- and Z-type checks identically (same supports), so every
// check runs once per (color, logical index) on a single Pauli type.

enum class Method { StringPercolation, Branching, Algebraic };

std::string to_string(Method m);
Method parse_method(std::string_view s);

struct StringPath {
    std::vector<int> nodes;     // border_a ... border_b
    std::vector<Qubit> qubits;  // ascending
};

// Shortest border-to-border path in a shrunk lattice, using only links and
// attachments whose qubits are unmasked. A null mask keeps everything.
std::optional<StringPath> border_path(const ColorLattice& lattice, const ShrunkLattice& shrunk,
                                      const std::vector<uint8_t>* mask);

struct Witness {
    std::vector<int> nodes;                          // string percolation: node path
    std::vector<std::pair<Qubit, Qubit>> junctions;  // branching: branch and fuse qubits, fuse -1 at a corner
    std::vector<Qubit> qubits;                       // support of the surviving operator
    BitVec solution;                                 // algebraic: generator subset x
};

struct CheckOutcome {
    Method method = Method::StringPercolation;
    Color color = Color::R;
    int logical_index = 0;
    bool survives = false;
    std::optional<Witness> witness;
};

// Logical index of the reference path of color c, -1 if there is none.
int logical_index_of(const ColorLattice& lattice, Color c);

CheckOutcome check_string_percolation(const ColorLattice& lattice, const std::vector<uint8_t>& mask, Color c,
                                      bool want_witness = true);

// Border-to-border c-string where blocked stretches are bypassed by a pair of
// strings in the two other shrunk lattices. A bypass opens at an unmasked
// junction qubit x and closes at another one y: x and y each sit in one
// plaquette (or border) of every color, and the two complementary strings run
// between the plaquettes of x and y of their color. Complementary strings may
// bypass once more (max_level = 2), with plain strings inside.
CheckOutcome check_branching(const ColorLattice& lattice, const std::vector<uint8_t>& mask, Color c,
                             int max_level = 2, bool want_witness = true);

struct Gf2System {
    int num_qubits = 0;
    std::vector<BitVec> columns;  // A: one column per plaquette of the original lattice
    std::vector<uint8_t> mask;
    BitVec path;  // Q_c
};

Gf2System build_system(const ColorLattice& lattice, const ReconstructionRecord& record, Color c, int mu);
Gf2System build_system(const ColorLattice& lattice, const std::vector<uint8_t>& mask, Color c, int mu);

// Any x with (M o A) x = M o Q_c, or nullopt.
std::optional<BitVec> solve_system(const Gf2System& system);

CheckOutcome check_algebraic(const ColorLattice& lattice, const ReconstructionRecord& record, Color c, int mu);
CheckOutcome check_algebraic(const ColorLattice& lattice, const std::vector<uint8_t>& mask, Color c, int mu,
                             bool want_witness = true);

// Survival only, for the Monte Carlo loop. mu = -1 picks the path of color c.
bool survives(const ColorLattice& lattice, const std::vector<uint8_t>& mask, Method method, Color c, int mu = -1);

bool verify_witness(const CheckOutcome& outcome, const ColorLattice& lattice, const ReconstructionRecord& record);
bool verify_witness(const CheckOutcome& outcome, const ColorLattice& lattice, const std::vector<uint8_t>& mask,
                    const std::vector<Plaquette>* updated = nullptr);

}  // namespace colorloss
