#include "colorloss/reconstruction.h"

#include <algorithm>
#include <map>
#include <set>

#include "colorloss/bitvec.h"
#include "colorloss/gf2.h"
#include "colorloss/union_find.h"

namespace colorloss {

LossSet sample_losses(const ColorLattice& lattice, double p, Rng& rng) {
    LossSet out;
    out.rate = p;
    for (Qubit q = 0; q < lattice.num_qubits; q++) {
        if (rng.uniform() < p) out.lost.push_back(q);
    }
    return out;
}

LossSet losses_from_uniforms(const std::vector<double>& u, double p) {
    LossSet out;
    out.rate = p;
    for (size_t q = 0; q < u.size(); q++) {
        if (u[q] < p) out.lost.push_back(static_cast<Qubit>(q));
    }
    return out;
}

CodeState::CodeState(const ColorLattice& lattice, bool track_generators)
    : nbr_(lattice.num_qubits, {-1, -1, -1}), removed_(lattice.num_qubits, 0), track_(track_generators) {
    for (const Edge& e : lattice.edges) {
        nbr_[e.a][idx(e.color)] = e.b;
        nbr_[e.b][idx(e.color)] = e.a;
    }
    if (!track_) return;
    member_.resize(lattice.num_qubits);
    for (int p = 0; p < lattice.num_plaquettes(); p++) {
        Generator g;
        g.color = lattice.plaquettes[p].color;
        g.qubits = lattice.plaquettes[p].qubits;
        std::sort(g.qubits.begin(), g.qubits.end());
        for (Qubit q : g.qubits) member_[q].push_back(p);
        gens_.push_back(std::move(g));
    }
}

std::vector<Qubit> CodeState::neighbors(Qubit q) const {
    std::vector<Qubit> out;
    for (int c = 0; c < 3; c++) {
        Qubit x = nbr_[q][c];
        if (x >= 0 && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    return out;
}

int CodeState::num_edges() const {
    int twice = 0;
    for (const auto& s : nbr_) {
        for (Qubit x : s) twice += x >= 0;
    }
    return twice / 2;
}

int CodeState::num_generators() const {
    int n = 0;
    for (const auto& g : gens_) n += g.alive;
    return n;
}

int CodeState::euler_characteristic() const {
    return num_qubits() - num_removed_ - num_edges() + num_generators();
}

int CodeState::num_components() const {
    UnionFind uf(num_qubits());
    for (Qubit q = 0; q < num_qubits(); q++) {
        for (Qubit x : nbr_[q]) {
            if (x >= 0) uf.unite(q, x);
        }
    }
    int n = 0;
    for (Qubit q = 0; q < num_qubits(); q++) n += present(q) && uf.find(q) == q;
    return n;
}

std::vector<Edge> CodeState::edges() const {
    std::vector<Edge> out;
    for (Qubit q = 0; q < num_qubits(); q++) {
        for (int c = 0; c < 3; c++) {
            Qubit x = nbr_[q][c];
            if (x > q) out.push_back({q, x, color_at(c)});
        }
    }
    return out;
}

Qubit uniform_twin(const CodeState& state, Qubit q0, Rng& rng) {
    auto nb = state.neighbors(q0);
    return nb[rng.below(nb.size())];
}

TwinChoice select_twin(const CodeState& state, Qubit q0, Rng& rng, const TwinPolicy& policy) {
    if (!state.present(q0)) return {TwinStatus::AlreadyExcised, -1};
    if (state.neighbors(q0).empty()) return {TwinStatus::Isolated, -1};
    return {TwinStatus::Ok, policy(state, q0, rng)};
}

namespace {

void toggle(std::vector<int>& set, int x) {
    auto it = std::lower_bound(set.begin(), set.end(), x);
    if (it != set.end() && *it == x) {
        set.erase(it);
    } else {
        set.insert(it, x);
    }
}

std::vector<int> sym_diff(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

// Mutation helpers with access to CodeState internals.
struct Excisor {
    CodeState& s;

    void drop_links(Qubit q) {
        for (int c = 0; c < 3; c++) {
            Qubit x = s.nbr_[q][c];
            if (x >= 0 && s.nbr_[x][c] == q) s.nbr_[x][c] = -1;
            s.nbr_[q][c] = -1;
        }
    }

    void mark_removed(Qubit q) {
        if (!s.removed_[q]) {
            s.removed_[q] = 1;
            s.num_removed_++;
        }
    }

    void set_support(int g, std::vector<Qubit> qubits) {
        for (Qubit q : s.gens_[g].qubits) {
            auto& m = s.member_[q];
            m.erase(std::remove(m.begin(), m.end(), g), m.end());
        }
        s.gens_[g].qubits = std::move(qubits);
        for (Qubit q : s.gens_[g].qubits) s.member_[q].push_back(g);
    }

    void kill(int g) {
        set_support(g, {});
        s.gens_[g].alive = false;
        s.gens_[g].flips.clear();
    }

    // Generator update for a removed qubit set (one or two qubits).
    void update_generators(const std::vector<Qubit>& gone, int dimer_id, ExcisionInfo& info) {
        std::vector<int> touched;
        for (Qubit q : gone) {
            for (int g : s.member_[q]) {
                if (std::find(touched.begin(), touched.end(), g) == touched.end()) touched.push_back(g);
            }
        }
        std::sort(touched.begin(), touched.end());
        std::vector<int> odd, even;
        for (int g : touched) {
            int cnt = 0;
            for (Qubit q : gone) cnt += std::binary_search(s.gens_[g].qubits.begin(), s.gens_[g].qubits.end(), q);
            (cnt % 2 ? odd : even).push_back(g);
        }
        info.odd_generators = static_cast<int>(odd.size());
        auto strip = [&](const std::vector<Qubit>& qs) {
            std::vector<Qubit> out;
            for (Qubit q : qs) {
                if (std::find(gone.begin(), gone.end(), q) == gone.end()) out.push_back(q);
            }
            return out;
        };
        for (int g : even) {
            set_support(g, strip(s.gens_[g].qubits));
            if (dimer_id >= 0) toggle(s.gens_[g].flips, dimer_id);
        }
        if (odd.size() == 1) {
            kill(odd[0]);
        } else if (odd.size() >= 2) {
            // Keep O1*Oj for j >= 2 in the slots of Oj, except that a plain
            // merge of two keeps the lower index.
            const int first = odd[0];
            const auto base = s.gens_[first].qubits;
            const auto base_flips = s.gens_[first].flips;
            if (odd.size() == 2) {
                std::vector<Qubit> merged;
                std::set_symmetric_difference(base.begin(), base.end(), s.gens_[odd[1]].qubits.begin(),
                                              s.gens_[odd[1]].qubits.end(), std::back_inserter(merged));
                auto flips = sym_diff(base_flips, s.gens_[odd[1]].flips);
                kill(odd[1]);
                set_support(first, strip(merged));
                s.gens_[first].flips = flips;
                if (dimer_id >= 0) toggle(s.gens_[first].flips, dimer_id);
            } else {
                for (size_t j = 1; j < odd.size(); j++) {
                    int g = odd[j];
                    std::vector<Qubit> prod;
                    std::set_symmetric_difference(base.begin(), base.end(), s.gens_[g].qubits.begin(),
                                                  s.gens_[g].qubits.end(), std::back_inserter(prod));
                    auto flips = sym_diff(base_flips, s.gens_[g].flips);
                    set_support(g, strip(prod));
                    s.gens_[g].flips = flips;
                    if (dimer_id >= 0) toggle(s.gens_[g].flips, dimer_id);
                }
                kill(first);
            }
        }
        for (int g : touched) {
            if (s.gens_[g].alive && s.gens_[g].qubits.empty()) {
                kill(g);
                info.emptied_generators++;
            }
        }
    }
};

ExcisionInfo excise_dimer(CodeState& state, const Dimer& dimer, int dimer_id) {
    const Qubit q0 = dimer.q0, q1 = dimer.q1;
    if (q0 < 0 || q1 < 0 || q0 >= state.num_qubits() || q1 >= state.num_qubits() || q0 == q1 ||
        !state.present(q0) || !state.present(q1) || state.neighbor(q0, dimer.color) != q1) {
        throw ProtocolError("excise_dimer: no link of color " + std::string(1, color_char(dimer.color)) +
                            " between qubits " + std::to_string(q0) + " and " + std::to_string(q1));
    }
    Excisor ex{state};
    ExcisionInfo info;
    if (state.track_) {
        info.chi_before = state.euler_characteristic();
        info.components_before = state.num_components();
    }

    std::array<std::pair<Qubit, Qubit>, 3> flank;
    for (int c = 0; c < 3; c++) flank[c] = {state.nbr_[q0][c], state.nbr_[q1][c]};
    for (Qubit q : {q0, q1}) {
        const auto& s = state.nbr_[q];
        for (int c = 0; c < 3; c++) {
            for (int c2 = c + 1; c2 < 3; c2++) info.parallel_links |= s[c] >= 0 && s[c] == s[c2];
        }
    }
    ex.drop_links(q0);
    ex.drop_links(q1);
    for (int c = 0; c < 3; c++) {
        if (c == idx(dimer.color)) continue;
        auto [a, b] = flank[c];
        auto outside = [&](Qubit x) { return x >= 0 && x != q0 && x != q1; };
        if (!outside(a) || !outside(b)) continue;
        if (a == b) {
            info.dangling_pairs++;
            continue;
        }
        state.nbr_[a][c] = b;
        state.nbr_[b][c] = a;
    }
    ex.mark_removed(q0);
    ex.mark_removed(q1);
    if (state.track_) {
        ex.update_generators({q0, q1}, dimer_id, info);
        info.chi_after = state.euler_characteristic();
        info.components_after = state.num_components();
    }
    return info;
}

ExcisionInfo excise_isolated(CodeState& state, Qubit q0, int dimer_id) {
    if (q0 < 0 || q0 >= state.num_qubits() || !state.present(q0))
        throw ProtocolError("excise_isolated: qubit " + std::to_string(q0) + " is not present");
    Excisor ex{state};
    ExcisionInfo info;
    info.isolated = true;
    if (state.track_) {
        info.chi_before = state.euler_characteristic();
        info.components_before = state.num_components();
    }
    ex.drop_links(q0);
    ex.mark_removed(q0);
    if (state.track_) {
        ex.update_generators({q0}, dimer_id, info);
        info.chi_after = state.euler_characteristic();
        info.components_after = state.num_components();
    }
    return info;
}

int ReconstructionRecord::num_isolated() const {
    return static_cast<int>(std::count_if(dimers.begin(), dimers.end(), [](const Dimer& d) { return d.q1 < 0; }));
}

ColorLattice ReconstructionRecord::final_lattice(const ColorLattice& original) const {
    ColorLattice out;
    out.geometry = original.geometry;
    out.variant = original.variant;
    out.distance = original.distance;
    out.num_qubits = original.num_qubits;
    out.num_logical = original.num_logical;
    out.edges = final_edges;
    out.plaquettes = final_plaquettes;
    for (int c = 0; c < 3; c++) {
        for (int s = 0; s < 2; s++) {
            for (Qubit q : original.borders[c][s]) {
                if (!mask[q]) out.borders[c][s].push_back(q);
            }
        }
    }
    out.reindex();
    return out;
}

namespace {

// Qubits off the mask with odd overlap exactly with the generators marked in
// target. Chains of up to four qubits are searched by branching on the first
// generator with the wrong parity, which every valid chain must touch; the
// lexicographically smallest chain of the smallest size wins. Larger chains
// come from a linear solve over all present qubits.
std::optional<std::vector<Qubit>> find_chain(const CodeState& state, const std::vector<uint8_t>& target) {
    const auto& gens = state.generators();
    const int ng = static_cast<int>(gens.size());
    std::set<int> wrong;
    for (int g = 0; g < ng; g++) {
        if (target[g] && gens[g].alive) wrong.insert(g);
    }
    if (wrong.empty()) return std::vector<Qubit>{};

    std::vector<Qubit> chosen, best;
    auto toggle = [&](Qubit q) {
        for (int g : state.member_of(q)) {
            if (!gens[g].alive) continue;
            if (!wrong.erase(g)) wrong.insert(g);
        }
    };
    auto search = [&](auto&& self, int left) -> void {
        if (wrong.empty()) {
            auto c = chosen;
            std::sort(c.begin(), c.end());
            if (best.empty() || c < best) best = std::move(c);
            return;
        }
        if (left == 0 || static_cast<int>(wrong.size()) > 3 * left) return;
        const int g = *wrong.begin();
        for (Qubit q : gens[g].qubits) {
            if (!state.present(q) || std::find(chosen.begin(), chosen.end(), q) != chosen.end()) continue;
            toggle(q);
            chosen.push_back(q);
            self(self, left - 1);
            chosen.pop_back();
            toggle(q);
        }
    };
    for (int size = 1; size <= 4 && best.empty(); size++) search(search, size);
    if (!best.empty()) return best;

    std::vector<Qubit> cols;
    for (Qubit q = 0; q < state.num_qubits(); q++) {
        if (state.present(q)) cols.push_back(q);
    }
    std::vector<int> col_of(state.num_qubits(), -1);
    for (size_t i = 0; i < cols.size(); i++) col_of[cols[i]] = static_cast<int>(i);
    std::vector<BitVec> rows;
    std::vector<uint8_t> rhs;
    for (int g = 0; g < ng; g++) {
        if (!gens[g].alive) continue;
        BitVec r(cols.size());
        for (Qubit q : gens[g].qubits) r.flip(col_of[q]);
        rows.push_back(std::move(r));
        rhs.push_back(target[g]);
    }
    auto x = gf2_solve(cols.size(), std::move(rows), std::move(rhs));
    if (!x) return std::nullopt;
    std::vector<Qubit> out;
    for (int i : x->ones()) out.push_back(cols[i]);
    return out;
}

// Chain for the excitation left by dimer id, on the code right after its excision.
std::optional<std::vector<Qubit>> chain_after(const CodeState& state, int id) {
    const auto& gens = state.generators();
    std::vector<uint8_t> target(gens.size(), 0);
    for (size_t g = 0; g < gens.size(); g++) {
        target[g] = gens[g].alive && std::binary_search(gens[g].flips.begin(), gens[g].flips.end(), id);
    }
    return find_chain(state, target);
}

}  // namespace

ReconstructionRecord reconstruct(const ColorLattice& lattice, const LossSet& losses, Rng& rng,
                                 const ReconstructionOptions& options) {
    CodeState state(lattice, options.track_generators);
    ReconstructionRecord rec;
    rec.num_qubits = lattice.num_qubits;
    rec.losses = losses;
    std::sort(rec.losses.lost.begin(), rec.losses.lost.end());
    rec.has_generators = options.track_generators;

    for (Qubit q0 : rec.losses.lost) {
        TwinChoice t = select_twin(state, q0, rng, options.policy);
        if (t.status == TwinStatus::AlreadyExcised) {
            rec.skipped.push_back(q0);
            continue;
        }
        const int id = static_cast<int>(rec.dimers.size());
        if (t.status == TwinStatus::Isolated) {
            rec.dimers.push_back({q0, -1, Color::R});
            rec.steps.push_back(excise_isolated(state, q0, id));
            rec.degenerate_events++;
            if (options.track_generators) rec.chains.push_back(chain_after(state, id));
            continue;
        }
        Color link = Color::R;
        for (Color c : kColors) {
            if (state.neighbor(q0, c) == t.twin) {
                link = c;
                break;
            }
        }
        Dimer d{q0, t.twin, link};
        rec.dimers.push_back(d);
        ExcisionInfo info = excise_dimer(state, d, id);
        if (info.dangling_pairs || info.emptied_generators || info.odd_generators > 2) rec.degenerate_events++;
        rec.steps.push_back(info);
        if (options.track_generators) rec.chains.push_back(chain_after(state, id));
    }

    rec.mask = state.removed();
    rec.masked = state.num_removed();
    rec.remaining_fraction =
        lattice.num_qubits ? double(lattice.num_qubits - rec.masked) / double(lattice.num_qubits) : 1.0;
    rec.final_edges = state.edges();
    if (options.track_generators) {
        for (const auto& g : state.generators()) {
            if (!g.alive) continue;
            rec.final_plaquettes.push_back({g.color, g.qubits});
            rec.final_flips.push_back(g.flips);
        }
    }
    return rec;
}

std::vector<Plaquette> updated_generators(const ReconstructionRecord& record) {
    if (!record.has_generators) throw ProtocolError("updated_generators: record was built without generator tracking");
    return record.final_plaquettes;
}

CorrectionChain correction_chain(const ReconstructionRecord& record, int dimer, PauliType pauli) {
    if (!record.has_generators) throw ProtocolError("correction_chain: record was built without generator tracking");
    if (dimer < 0 || dimer >= static_cast<int>(record.dimers.size()))
        throw ProtocolError("correction_chain: unknown dimer " + std::to_string(dimer));
    if (!record.chains[dimer])
        throw ProtocolError("correction_chain: no chain clears the excitation of dimer " + std::to_string(dimer));
    return {dimer, pauli, *record.chains[dimer]};
}

}  // namespace colorloss
