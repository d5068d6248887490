#include "colorloss/logical_checks.h"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "colorloss/gf2.h"
#include "colorloss/union_find.h"

namespace colorloss {

std::string to_string(Method m) {
    switch (m) {
        case Method::StringPercolation: return "string";
        case Method::Branching: return "branching";
        default: return "algebraic";
    }
}

Method parse_method(std::string_view s) {
    if (s == "string" || s == "I") return Method::StringPercolation;
    if (s == "branching" || s == "II") return Method::Branching;
    if (s == "algebraic" || s == "III") return Method::Algebraic;
    throw ValidationError("unknown method '" + std::string(s) + "' (expected string, branching or algebraic)");
}

namespace {

bool usable(const std::vector<uint8_t>* mask, Qubit q) { return !mask || !(*mask)[q]; }

bool contains(const std::vector<Qubit>& v, Qubit q) { return std::find(v.begin(), v.end(), q) != v.end(); }

std::vector<Qubit> sorted_support(const std::vector<uint8_t>& parity) {
    std::vector<Qubit> out;
    for (size_t q = 0; q < parity.size(); q++) {
        if (parity[q]) out.push_back(static_cast<Qubit>(q));
    }
    return out;
}

}  // namespace

std::optional<StringPath> border_path(const ColorLattice& lattice, const ShrunkLattice& shrunk,
                                      const std::vector<uint8_t>* mask) {
    const int nn = shrunk.num_nodes;
    // adjacency entries: (other node, step id); link ids first, attachments after
    std::vector<std::vector<std::pair<int, int>>> adj(nn);
    const int nl = static_cast<int>(shrunk.links.size());
    for (int i = 0; i < nl; i++) {
        const auto& l = shrunk.links[i];
        if (l.from < 0 || l.to < 0 || !usable(mask, l.u) || !usable(mask, l.v)) continue;
        adj[l.from].push_back({l.to, i});
        adj[l.to].push_back({l.from, i});
    }
    for (int i = 0; i < static_cast<int>(shrunk.attachments.size()); i++) {
        const auto& a = shrunk.attachments[i];
        if (!usable(mask, a.qubit)) continue;
        adj[a.plaquette].push_back({a.border, nl + i});
        adj[a.border].push_back({a.plaquette, nl + i});
    }
    std::vector<int> prev(nn, -2), via(nn, -1);
    std::deque<int> queue{shrunk.border_a};
    prev[shrunk.border_a] = -1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == shrunk.border_b) break;
        for (auto [v, step] : adj[u]) {
            if (prev[v] != -2) continue;
            prev[v] = u;
            via[v] = step;
            queue.push_back(v);
        }
    }
    if (prev[shrunk.border_b] == -2) return std::nullopt;
    StringPath out;
    std::vector<uint8_t> parity(lattice.num_qubits, 0);
    for (int v = shrunk.border_b; v != -1; v = prev[v]) {
        out.nodes.push_back(v);
        int step = via[v];
        if (step < 0) continue;
        if (step < nl) {
            parity[shrunk.links[step].u] ^= 1;
            parity[shrunk.links[step].v] ^= 1;
        } else {
            parity[shrunk.attachments[step - nl].qubit] ^= 1;
        }
    }
    std::reverse(out.nodes.begin(), out.nodes.end());
    out.qubits = sorted_support(parity);
    return out;
}

int logical_index_of(const ColorLattice& lattice, Color c) {
    for (const auto& p : lattice.logical_paths) {
        if (p.color == c) return p.index;
    }
    return -1;
}

CheckOutcome check_string_percolation(const ColorLattice& lattice, const std::vector<uint8_t>& mask, Color c,
                                      bool want_witness) {
    CheckOutcome out;
    out.method = Method::StringPercolation;
    out.color = c;
    out.logical_index = logical_index_of(lattice, c);
    auto path = border_path(lattice, shrunk_lattice(lattice, c), &mask);
    out.survives = path.has_value();
    if (path && want_witness) {
        Witness w;
        w.nodes = std::move(path->nodes);
        w.qubits = std::move(path->qubits);
        out.witness = std::move(w);
    }
    return out;
}

namespace {

// Connectivity of the shrunk lattices with bounded branching. Level 0 is
// plain string percolation. At level L a node of color k is also joined to
// every node of color k reached through a junction pair (x, y) whose nodes of
// the two other colors are connected at level L-1.
class Branching {
  public:
    Branching(const ColorLattice& lat, const std::vector<uint8_t>& mask) : lat_(lat), mask_(mask) {
        for (int k = 0; k < 3; k++) {
            uf_[0][k].reset(lat.num_nodes());
            for (const Edge& e : lat.edges) {
                if (idx(e.color) != k || mask[e.a] || mask[e.b]) continue;
                int u = lat.node_of[e.a][k], v = lat.node_of[e.b][k];
                if (u >= 0 && v >= 0) uf_[0][k].unite(u, v);
            }
            for (int s = 0; s < 2; s++) {
                for (Qubit q : lat.borders[k][s]) {
                    int p = lat.plaquette_of[q][k];
                    if (p >= 0 && !mask[q]) uf_[0][k].unite(p, lat.border_node(s));
                }
            }
        }
        // Corners: a border of color k meets one border of each other color
        // at a shared qubit. A branch whose two strings end on such a pair of
        // borders can be slid into that corner, so it ends on the k border.
        for (int k = 0; k < 3; k++) {
            const int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
            for (int s = 0; s < 2; s++) {
                for (int s1 = 0; s1 < 2; s1++) {
                    for (int s2 = 0; s2 < 2; s2++) {
                        bool meet = false;
                        for (Qubit q : lat.borders[k][s]) {
                            meet |= contains(lat.borders[k1][s1], q) && contains(lat.borders[k2][s2], q);
                        }
                        if (meet) corners_[k][s].push_back({s1, s2});
                    }
                }
            }
        }
    }

    void build_level(int level, int k) {
        uf_[level][k] = uf_[0][k];
        auto& uf = uf_[level][k];
        std::unordered_map<uint64_t, int> first;
        first.reserve(lat_.num_qubits);
        for (Qubit x = 0; x < lat_.num_qubits; x++) {
            uint64_t key;
            if (!junction_key(level, k, x, key)) continue;
            int nk = lat_.node_of[x][k];
            auto [it, fresh] = first.emplace(key, nk);
            if (!fresh) uf.unite(nk, it->second);
            for (int s = 0; s < 2; s++) {
                if (corner_branch(level, k, x, s) >= 0) uf.unite(nk, lat_.border_node(s));
            }
        }
    }

    // Corner pair (index into corners_[k][s]) whose borders the two branch
    // strings from junction x reach at level-1, or -1.
    int corner_branch(int level, int k, Qubit x, int s) {
        const int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
        const int n1 = lat_.node_of[x][k1], n2 = lat_.node_of[x][k2];
        for (size_t i = 0; i < corners_[k][s].size(); i++) {
            auto [s1, s2] = corners_[k][s][i];
            if (uf_[level - 1][k1].same(n1, lat_.border_node(s1)) && uf_[level - 1][k2].same(n2, lat_.border_node(s2)))
                return static_cast<int>(i);
        }
        return -1;
    }

    bool connected(int level, int k, int a, int b) { return uf_[level][k].same(a, b); }

    bool junction_key(int level, int k, Qubit x, uint64_t& key) {
        if (mask_[x]) return false;
        const int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
        int nk = lat_.node_of[x][k], n1 = lat_.node_of[x][k1], n2 = lat_.node_of[x][k2];
        if (nk < 0 || n1 < 0 || n2 < 0) return false;
        uint64_t r1 = uf_[level - 1][k1].find(n1), r2 = uf_[level - 1][k2].find(n2);
        key = r1 * static_cast<uint64_t>(lat_.num_nodes()) + r2;
        return true;
    }

    // Support of a level-`level` string of color k between nodes s and t,
    // XORed into parity. Junction pairs used are appended to junctions.
    void trace(int level, int k, int s, int t, std::vector<uint8_t>& parity,
               std::vector<std::pair<Qubit, Qubit>>& junctions) {
        if (s == t) return;
        const int nn = lat_.num_nodes();
        struct Step {
            int prev = -2;
            int kind = 0;  // 0 link, 1 attachment, 2 junction pair, 3 branch into a corner
            int a = -1;
            int b = -1;
        };
        std::vector<std::vector<std::array<int, 4>>> adj(nn);  // (to, kind, a, b)
        for (int e = 0; e < static_cast<int>(lat_.edges.size()); e++) {
            const Edge& ed = lat_.edges[e];
            if (idx(ed.color) != k || mask_[ed.a] || mask_[ed.b]) continue;
            int u = lat_.node_of[ed.a][k], v = lat_.node_of[ed.b][k];
            if (u < 0 || v < 0) continue;
            adj[u].push_back({v, 0, ed.a, ed.b});
            adj[v].push_back({u, 0, ed.a, ed.b});
        }
        for (int side = 0; side < 2; side++) {
            for (Qubit q : lat_.borders[k][side]) {
                int p = lat_.plaquette_of[q][k];
                if (p < 0 || mask_[q]) continue;
                adj[p].push_back({lat_.border_node(side), 1, q, -1});
                adj[lat_.border_node(side)].push_back({p, 1, q, -1});
            }
        }
        std::unordered_map<uint64_t, std::vector<Qubit>> groups;
        std::vector<std::vector<Qubit>> junctions_at(nn);
        if (level > 0) {
            for (Qubit x = 0; x < lat_.num_qubits; x++) {
                uint64_t key;
                if (!junction_key(level, k, x, key)) continue;
                groups[key].push_back(x);
                junctions_at[lat_.node_of[x][k]].push_back(x);
                for (int side = 0; side < 2; side++) {
                    int i = corner_branch(level, k, x, side);
                    if (i < 0) continue;
                    const int u = lat_.node_of[x][k], bn = lat_.border_node(side);
                    adj[u].push_back({bn, 3, x, side * 8 + i});
                    adj[bn].push_back({u, 3, x, side * 8 + i});
                }
            }
        }
        std::vector<Step> step(nn);
        std::unordered_map<uint64_t, bool> expanded;
        std::deque<int> queue{s};
        step[s].prev = -1;
        while (!queue.empty() && step[t].prev == -2) {
            int u = queue.front();
            queue.pop_front();
            for (const auto& a : adj[u]) {
                if (step[a[0]].prev != -2) continue;
                step[a[0]] = {u, a[1], a[2], a[3]};
                queue.push_back(a[0]);
            }
            for (Qubit x : junctions_at[u]) {
                uint64_t key;
                junction_key(level, k, x, key);
                if (expanded[key]) continue;
                expanded[key] = true;
                for (Qubit y : groups[key]) {
                    int v = lat_.node_of[y][k];
                    if (step[v].prev != -2) continue;
                    step[v] = {u, 2, x, y};
                    queue.push_back(v);
                }
            }
        }
        if (step[t].prev == -2) throw std::logic_error("branching witness: target not reachable");
        for (int v = t; v != s; v = step[v].prev) {
            const Step& st = step[v];
            if (st.kind == 0) {
                parity[st.a] ^= 1;
                parity[st.b] ^= 1;
            } else if (st.kind == 1) {
                parity[st.a] ^= 1;
            } else if (st.kind == 3) {
                const Qubit x = st.a;
                const auto [s1, s2] = corners_[k][st.b / 8][st.b % 8];
                junctions.push_back({x, -1});
                parity[x] ^= 1;
                trace(level - 1, (k + 1) % 3, lat_.node_of[x][(k + 1) % 3], lat_.border_node(s1), parity, junctions);
                trace(level - 1, (k + 2) % 3, lat_.node_of[x][(k + 2) % 3], lat_.border_node(s2), parity, junctions);
            } else {
                const Qubit x = st.a, y = st.b;
                junctions.push_back({x, y});
                parity[x] ^= 1;
                parity[y] ^= 1;
                for (int k2 : {(k + 1) % 3, (k + 2) % 3}) {
                    trace(level - 1, k2, lat_.node_of[x][k2], lat_.node_of[y][k2], parity, junctions);
                }
            }
        }
    }

  private:
    const ColorLattice& lat_;
    const std::vector<uint8_t>& mask_;
    UnionFind uf_[3][3];
    std::vector<std::pair<int, int>> corners_[3][2];
};

std::vector<uint8_t> support_parity(int n, const std::vector<Qubit>& qs) {
    std::vector<uint8_t> p(n, 0);
    for (Qubit q : qs) p[q] ^= 1;
    return p;
}

// Moves a string-net into the class of Q_c by adding unblocked
// border-to-border strings, if needed.
void fix_class(const ColorLattice& lat, const std::vector<uint8_t>& mask, Color c, int mu, std::vector<Qubit>& qubits) {
    const LogicalPath* ref = lat.logical_path(mu, c);
    if (!ref) return;
    const int n = lat.num_qubits;
    std::vector<BitVec> gens;
    for (const auto& p : lat.plaquettes) gens.push_back(BitVec::from_indices(n, p.qubits));
    Gf2Basis basis(gens);
    BitVec base = BitVec::from_indices(n, qubits) ^ BitVec::from_indices(n, ref->qubits);
    if (basis.contains(base)) return;
    std::vector<BitVec> extra;
    for (Color k : kColors) {
        auto sp = border_path(lat, shrunk_lattice(lat, k), &mask);
        if (sp) extra.push_back(BitVec::from_indices(n, sp->qubits));
    }
    for (int m = 1; m < (1 << extra.size()); m++) {
        BitVec trial = base;
        for (size_t i = 0; i < extra.size(); i++) {
            if (m >> i & 1) trial ^= extra[i];
        }
        if (basis.contains(trial)) {
            BitVec fixed = BitVec::from_indices(n, qubits);
            for (size_t i = 0; i < extra.size(); i++) {
                if (m >> i & 1) fixed ^= extra[i];
            }
            auto ones = fixed.ones();
            qubits.assign(ones.begin(), ones.end());
            return;
        }
    }
}

}  // namespace

CheckOutcome check_branching(const ColorLattice& lattice, const std::vector<uint8_t>& mask, Color c, int max_level,
                             bool want_witness) {
    CheckOutcome out;
    out.method = Method::Branching;
    out.color = c;
    out.logical_index = logical_index_of(lattice, c);
    max_level = std::clamp(max_level, 0, 2);
    const int k = idx(c);
    Branching br(lattice, mask);
    if (max_level >= 2) {
        for (int j = 0; j < 3; j++) {
            if (j != k) br.build_level(1, j);
        }
    }
    if (max_level >= 1) br.build_level(max_level, k);
    const int a = lattice.border_node(0), b = lattice.border_node(1);
    out.survives = br.connected(max_level, k, a, b);
    if (out.survives && want_witness) {
        Witness w;
        std::vector<uint8_t> parity(lattice.num_qubits, 0);
        br.trace(max_level, k, a, b, parity, w.junctions);
        w.qubits = sorted_support(parity);
        fix_class(lattice, mask, c, out.logical_index, w.qubits);
        out.witness = std::move(w);
    }
    return out;
}

Gf2System build_system(const ColorLattice& lattice, const std::vector<uint8_t>& mask, Color c, int mu) {
    const LogicalPath* ref = lattice.logical_path(mu, c);
    if (!ref) {
        throw ValidationError("no reference path for color " + std::string(1, color_char(c)) + " and logical index " +
                              std::to_string(mu));
    }
    Gf2System sys;
    sys.num_qubits = lattice.num_qubits;
    for (const auto& p : lattice.plaquettes) sys.columns.push_back(BitVec::from_indices(lattice.num_qubits, p.qubits));
    sys.mask = mask;
    sys.path = BitVec::from_indices(lattice.num_qubits, ref->qubits);
    return sys;
}

Gf2System build_system(const ColorLattice& lattice, const ReconstructionRecord& record, Color c, int mu) {
    return build_system(lattice, record.mask, c, mu);
}

std::optional<BitVec> solve_system(const Gf2System& sys) {
    const size_t n = sys.columns.size();
    std::vector<BitVec> rows;
    std::vector<uint8_t> rhs;
    for (int q = 0; q < sys.num_qubits; q++) {
        if (!sys.mask[q]) continue;
        BitVec r(n);
        for (size_t j = 0; j < n; j++) {
            if (sys.columns[j].get(q)) r.set(j);
        }
        rows.push_back(std::move(r));
        rhs.push_back(sys.path.get(q));
    }
    return gf2_solve(n, std::move(rows), std::move(rhs));
}

namespace {

// Rows of the masked system built from the per-qubit plaquette lookup.
std::optional<BitVec> solve_masked(const ColorLattice& lattice, const std::vector<uint8_t>& mask,
                                   const std::vector<uint8_t>& path) {
    const size_t n = lattice.plaquettes.size();
    std::vector<BitVec> rows;
    std::vector<uint8_t> rhs;
    for (Qubit q = 0; q < lattice.num_qubits; q++) {
        if (!mask[q]) continue;
        BitVec r(n);
        bool any = false;
        for (int c = 0; c < 3; c++) {
            int p = lattice.plaquette_of[q][c];
            if (p >= 0) {
                r.set(p);
                any = true;
            }
        }
        if (!any) {
            if (path[q]) return std::nullopt;
            continue;
        }
        rows.push_back(std::move(r));
        rhs.push_back(path[q]);
    }
    return gf2_solve(n, std::move(rows), std::move(rhs));
}

}  // namespace

CheckOutcome check_algebraic(const ColorLattice& lattice, const std::vector<uint8_t>& mask, Color c, int mu,
                             bool want_witness) {
    const LogicalPath* ref = lattice.logical_path(mu, c);
    if (!ref) {
        throw ValidationError("no reference path for color " + std::string(1, color_char(c)) + " and logical index " +
                              std::to_string(mu));
    }
    CheckOutcome out;
    out.method = Method::Algebraic;
    out.color = c;
    out.logical_index = mu;
    auto path = support_parity(lattice.num_qubits, ref->qubits);
    auto x = solve_masked(lattice, mask, path);
    if (!x) return out;
    // Q~ = A x + Q_c must avoid the mask.
    std::vector<uint8_t> q = path;
    for (int p : x->ones()) {
        for (Qubit v : lattice.plaquettes[p].qubits) q[v] ^= 1;
    }
    for (Qubit v = 0; v < lattice.num_qubits; v++) {
        if (mask[v] && q[v]) throw std::logic_error("check_algebraic: solution touches a masked qubit");
    }
    out.survives = true;
    if (want_witness) {
        Witness w;
        w.solution = *x;
        w.qubits = sorted_support(q);
        out.witness = std::move(w);
    }
    return out;
}

CheckOutcome check_algebraic(const ColorLattice& lattice, const ReconstructionRecord& record, Color c, int mu) {
    return check_algebraic(lattice, record.mask, c, mu, true);
}

bool survives(const ColorLattice& lattice, const std::vector<uint8_t>& mask, Method method, Color c, int mu) {
    switch (method) {
        case Method::StringPercolation: return check_string_percolation(lattice, mask, c, false).survives;
        case Method::Branching: return check_branching(lattice, mask, c, 2, false).survives;
        default: {
            if (mu < 0) mu = logical_index_of(lattice, c);
            return check_algebraic(lattice, mask, c, mu, false).survives;
        }
    }
}

bool verify_witness(const CheckOutcome& outcome, const ColorLattice& lattice, const std::vector<uint8_t>& mask,
                    const std::vector<Plaquette>* updated) {
    if (!outcome.survives || !outcome.witness) return false;
    const Witness& w = *outcome.witness;
    const int n = lattice.num_qubits;
    for (Qubit q : w.qubits) {
        if (q < 0 || q >= n || mask[q]) return false;
    }
    BitVec support = BitVec::from_indices(n, w.qubits);
    if (support.popcount() != w.qubits.size()) return false;  // repeated qubits
    std::vector<BitVec> gens;
    for (const auto& p : lattice.plaquettes) {
        gens.push_back(BitVec::from_indices(n, p.qubits));
        if (support.dot(gens.back())) return false;
    }
    const LogicalPath* ref = lattice.logical_path(outcome.logical_index, outcome.color);
    if (!ref) return false;
    BitVec q = BitVec::from_indices(n, ref->qubits);
    if (outcome.method == Method::Algebraic) {
        if (w.solution.size() != gens.size()) return false;
        BitVec expect = q;
        for (int p : w.solution.ones()) expect ^= gens[p];
        if (!(expect == support)) return false;
    } else {
        // Same logical class as the reference path, hence border to border.
        if (!Gf2Basis(gens).contains(support ^ q)) return false;
        if (outcome.method == Method::StringPercolation) {
            if (w.nodes.empty() || w.nodes.front() != lattice.border_node(0) ||
                w.nodes.back() != lattice.border_node(1))
                return false;
        }
    }
    if (updated) {
        for (const auto& g : *updated) {
            if (support.dot(BitVec::from_indices(n, g.qubits))) return false;
        }
    }
    return true;
}

bool verify_witness(const CheckOutcome& outcome, const ColorLattice& lattice, const ReconstructionRecord& record) {
    const std::vector<Plaquette>* updated = record.has_generators ? &record.final_plaquettes : nullptr;
    return verify_witness(outcome, lattice, record.mask, updated);
}

}  // namespace colorloss
