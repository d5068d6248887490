#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "colorloss/lattice.h"
#include "colorloss/rng.h"

namespace colorloss {

struct LossSet {
    std::vector<Qubit> lost;  // ascending
    double rate = -1.0;       // sampling rate, negative when not sampled
};

// Each qubit is lost independently with probability p.
LossSet sample_losses(const ColorLattice& lattice, double p, Rng& rng);

// Loss set {i : u[i] < p} for pre-drawn uniforms, nested in p.
LossSet losses_from_uniforms(const std::vector<double>& u, double p);

struct Dimer {
    Qubit q0 = -1;  // lost qubit
    Qubit q1 = -1;  // twin, -1 for an isolated loss
    Color color = Color::R;
    bool operator==(const Dimer&) const = default;
};

// The code while it is being reconstructed, on the original qubit indices.
// Edges live in per-qubit color slots. Generators are tracked only when asked
// for; the Monte Carlo loop needs the mask alone.
class CodeState {
  public:
    struct Generator {
        Color color = Color::R;
        std::vector<Qubit> qubits;  // ascending
        std::vector<int> flips;     // dimers whose excision left this generator excited
        bool alive = true;
    };

    explicit CodeState(const ColorLattice& lattice, bool track_generators = true);

    int num_qubits() const { return static_cast<int>(nbr_.size()); }
    bool present(Qubit q) const { return !removed_[q]; }
    Qubit neighbor(Qubit q, Color c) const { return nbr_[q][idx(c)]; }
    // Distinct present neighbors in color order.
    std::vector<Qubit> neighbors(Qubit q) const;
    const std::vector<uint8_t>& removed() const { return removed_; }
    int num_removed() const { return num_removed_; }
    int num_edges() const;
    bool tracks_generators() const { return track_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<int>& member_of(Qubit q) const { return member_[q]; }
    int num_generators() const;
    int euler_characteristic() const;
    // Connected components of the present qubits under the links.
    int num_components() const;

    std::vector<Edge> edges() const;

  private:
    friend struct Excisor;
    friend struct ExcisionInfo excise_dimer(CodeState&, const struct Dimer&, int);
    friend struct ExcisionInfo excise_isolated(CodeState&, Qubit, int);
    std::vector<std::array<Qubit, 3>> nbr_;
    std::vector<uint8_t> removed_;
    int num_removed_ = 0;
    bool track_ = true;
    std::vector<Generator> gens_;
    std::vector<std::vector<int>> member_;  // generators containing each qubit
};

enum class TwinStatus { Ok, AlreadyExcised, Isolated };

struct TwinChoice {
    TwinStatus status = TwinStatus::Ok;
    Qubit twin = -1;
};

// Picks the twin of a lost qubit. Only called for present qubits with at
// least one present neighbor.
using TwinPolicy = std::function<Qubit(const CodeState&, Qubit, Rng&)>;

// Uniform choice among the distinct present neighbors.
Qubit uniform_twin(const CodeState& state, Qubit q0, Rng& rng);

TwinChoice select_twin(const CodeState& state, Qubit q0, Rng& rng, const TwinPolicy& policy = uniform_twin);

struct ExcisionInfo {
    int chi_before = 0;
    int chi_after = 0;
    int components_before = 0;  // link-connected pieces, counted when generators are tracked
    int components_after = 0;
    int odd_generators = 0;      // generators with odd overlap with the removed set
    int dangling_pairs = 0;      // reconnections skipped to avoid a self-loop
    int emptied_generators = 0;  // generators deleted after reaching weight 0
    bool isolated = false;
    bool parallel_links = false;  // q0 or q1 reached one neighbor through two colors
};

// Removes q0, q1 and their links, reconnects the freed flank pairs with the
// flank colors and updates the generators. Generators with odd overlap with
// {q0, q1} are combined: two are merged into one, a single one is dropped
// (it ends on a border) and three or more are replaced by the products with
// the first. Every other generator loses q0 and q1.
// Throws ProtocolError when the dimer link is absent.
ExcisionInfo excise_dimer(CodeState& state, const Dimer& dimer, int dimer_id = -1);

// Removal of a lost qubit without present neighbors.
ExcisionInfo excise_isolated(CodeState& state, Qubit q0, int dimer_id = -1);

struct ReconstructionOptions {
    TwinPolicy policy = uniform_twin;
    bool track_generators = true;
};

struct ReconstructionRecord {
    int num_qubits = 0;
    LossSet losses;
    std::vector<Dimer> dimers;  // in excision order; q1 = -1 marks an isolated loss
    std::vector<ExcisionInfo> steps;
    std::vector<Qubit> skipped;  // losses already removed as twins
    std::vector<Plaquette> final_plaquettes;
    std::vector<std::vector<int>> final_flips;
    // Correction support per dimer, found on the code right after its excision.
    std::vector<std::optional<std::vector<Qubit>>> chains;
    std::vector<Edge> final_edges;
    std::vector<uint8_t> mask;
    int masked = 0;
    double remaining_fraction = 1.0;
    int degenerate_events = 0;
    bool has_generators = true;

    int num_isolated() const;
    // The reconstructed code as a lattice on the original indices.
    ColorLattice final_lattice(const ColorLattice& original) const;
};

ReconstructionRecord reconstruct(const ColorLattice& lattice, const LossSet& losses, Rng& rng,
                                 const ReconstructionOptions& options = {});

// Generators of the reconstructed code. X and Z generators share these supports.
std::vector<Plaquette> updated_generators(const ReconstructionRecord& record);

enum class PauliType { X, Z };

struct CorrectionChain {
    int dimer = -1;
    PauliType pauli = PauliType::X;
    std::vector<Qubit> support;
};

// Qubits whose flip clears the excitation left by dimer `dimer`: odd overlap
// with the generators it redefined, even with all others, on the code right
// after that excision. Smallest chains first, lexicographic among equal
// sizes, then a linear solve. Throws ProtocolError if none exists.
CorrectionChain correction_chain(const ReconstructionRecord& record, int dimer, PauliType pauli);

}  // namespace colorloss
