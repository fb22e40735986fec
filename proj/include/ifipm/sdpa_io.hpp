#pragma once

#include <string>

#include "ifipm/model.hpp"

namespace ifipm {

// Sparse SDPA-style interchange format:
//   line 1: m                    (number of constraint matrices)
//   line 2: nblocks
//   line 3: block sizes          (negative size = diagonal block)
//   line 4: the m entries of b
//   then quintuples "matno blkno i j value" with matno 0 denoting the cost
//   matrix, upper-triangle entries only, 1-based indices.
// Lines whose first non-blank character is '"' or '*' are comments.
// Multi-block files are collapsed into one block-diagonal block, with block
// k occupying the index range after the preceding |sizes|.
SdoProblem read_sdpa(const std::string& path);

// Writes a single-block file at 17 significant digits, so a write/read
// round trip reproduces the problem bit-for-bit modulo float formatting.
void write_sdpa(const SdoProblem& p, const std::string& path);

}  // namespace ifipm
