#pragma once

#include <optional>
#include <vector>

#include "colorloss/bitvec.h"

namespace colorloss {

// Solves rows * x = rhs over GF(2). Each row holds one bit per unknown and
// rhs[i] is the right-hand side of equation i. Returns a solution with every
// free variable set to zero, or nullopt when the system is inconsistent.
std::optional<BitVec> gf2_solve(size_t num_vars, std::vector<BitVec> rows, std::vector<uint8_t> rhs);

size_t gf2_rank(std::vector<BitVec> rows);

// Row-echelon basis for repeated span membership queries.
class Gf2Basis {
  public:
    explicit Gf2Basis(std::vector<BitVec> vectors);
    size_t rank() const { return rows_.size(); }
    bool contains(BitVec target) const;

  private:
    std::vector<BitVec> rows_;
    std::vector<size_t> pivots_;
};

}  // namespace colorloss
