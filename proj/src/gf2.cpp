#include "colorloss/gf2.h"

#include <bit>
#include <stdexcept>
#include <utility>

namespace colorloss {

namespace {

// Forward elimination in place. Returns pivot column per leading row.
// Rows at index >= result.size() end up zero. The optional rhs follows swaps.
std::vector<size_t> echelon(std::vector<BitVec>& rows, std::vector<uint8_t>* rhs) {
    std::vector<size_t> pivots;
    if (rows.empty()) return pivots;
    const size_t n = rows[0].size();
    const size_t m = rows.size();
    const size_t words = rows[0].num_words();
    size_t r = 0;
    for (size_t col = 0; col < n && r < m; col++) {
        size_t p = r;
        while (p < m && !rows[p].get(col)) p++;
        if (p == m) continue;
        if (p != r) {
            std::swap(rows[p], rows[r]);
            if (rhs) std::swap((*rhs)[p], (*rhs)[r]);
        }
        const size_t k0 = col >> 6;
        const uint64_t* src = rows[r].data();
        for (size_t i = r + 1; i < m; i++) {
            if (!rows[i].get(col)) continue;
            uint64_t* dst = rows[i].data();
            for (size_t k = k0; k < words; k++) dst[k] ^= src[k];
            if (rhs) (*rhs)[i] ^= (*rhs)[r];
        }
        pivots.push_back(col);
        r++;
    }
    return pivots;
}

}  // namespace

std::optional<BitVec> gf2_solve(size_t num_vars, std::vector<BitVec> rows, std::vector<uint8_t> rhs) {
    if (rows.size() != rhs.size()) throw std::invalid_argument("gf2_solve: row/rhs count mismatch");
    for (const auto& row : rows) {
        if (row.size() != num_vars) throw std::invalid_argument("gf2_solve: row length mismatch");
    }
    auto pivots = echelon(rows, &rhs);
    for (size_t i = pivots.size(); i < rows.size(); i++) {
        if (rhs[i]) return std::nullopt;
    }
    BitVec x(num_vars);
    for (size_t i = pivots.size(); i-- > 0;) {
        bool v = rhs[i] ^ rows[i].dot(x);
        if (v) x.set(pivots[i]);
    }
    return x;
}

size_t gf2_rank(std::vector<BitVec> rows) { return echelon(rows, nullptr).size(); }

Gf2Basis::Gf2Basis(std::vector<BitVec> vectors) : rows_(std::move(vectors)) {
    pivots_ = echelon(rows_, nullptr);
    rows_.resize(pivots_.size());
}

bool Gf2Basis::contains(BitVec target) const {
    for (size_t i = 0; i < rows_.size(); i++) {
        if (target.get(pivots_[i])) target ^= rows_[i];
    }
    return !target.any();
}

}  // namespace colorloss
