#pragma once

// Generators for the block frames.
//
// The coordinate space of N blocks is R^{N(N+1)/2}, split into consecutive
// blocks H_n of dimension n (n = 1..N); block n occupies the 1-based
// coordinates (n-1)n/2 + 1 .. (n-1)n/2 + n. On each block we place the
// Parseval system of n+1 vectors
//
//   f_i     = e_i - (1/n) * sum_j e_j     (i = 1..n)
//   f_{n+1} = (1/sqrt(n)) * sum_j e_j
//
// and the perturbed system g_i = e_i - ((1-eps)/n) * sum_j e_j, g_{n+1} = f_{n+1}.

#include <cmath>
#include <vector>

#include "framekit/frame.hpp"

namespace framekit {

// 1-based flat coordinate index of the i-th basis vector of block n.
inline Index block_index(Index n, Index i) {
  if (n < 1) throw InvalidParameter("block number must be >= 1");
  if (i < 1 || i > n) {
    throw InvalidParameter("position " + std::to_string(i) + " out of range for block " +
                           std::to_string(n));
  }
  return (n - 1) * n / 2 + i;
}

class BlockStructure {
 public:
  explicit BlockStructure(Index num_blocks) : num_blocks_(num_blocks) {
    if (num_blocks < 1) throw InvalidParameter("number of blocks must be >= 1");
  }

  Index num_blocks() const { return num_blocks_; }
  Index block_dim(Index n) const { return n; }
  // 0-based coordinate offset of block n (1-based n).
  Index offset(Index n) const { return (n - 1) * n / 2; }
  Index total_dim() const { return num_blocks_ * (num_blocks_ + 1) / 2; }

  // Elements per block (n+1 for block n) and their 0-based start in the
  // flattened family.
  Index block_size(Index n) const { return n + 1; }
  Index element_offset(Index n) const { return (n - 1) * (n + 2) / 2; }
  Index total_elements() const { return num_blocks_ * (num_blocks_ + 3) / 2; }

  // 0-based flat index of element (n, i), i = 1..n+1.
  Index element(Index n, Index i) const {
    if (n < 1 || n > num_blocks_) throw InvalidParameter("block number out of range");
    if (i < 1 || i > n + 1) throw InvalidParameter("element position out of range");
    return element_offset(n) + (i - 1);
  }

  // Flattened-family positions where each block ends (block 1 ends at 2, ...).
  std::vector<Index> element_boundaries() const {
    std::vector<Index> out;
    for (Index n = 1; n <= num_blocks_; ++n) out.push_back(element_offset(n) + block_size(n));
    return out;
  }

  bool operator==(const BlockStructure&) const = default;

 private:
  Index num_blocks_;
};

struct BlockIndexedFrame {
  Frame frame;
  BlockStructure structure;

  Index element(Index n, Index i) const { return structure.element(n, i); }
};

namespace detail {

// Block n system with centring weight `shrink` (1 for the Parseval system,
// 1 - eps for the perturbed one), written into columns of `t` starting at
// `col`, rows starting at `row`.
inline void write_block(Matrix& t, Index row, Index col, Index n, double shrink) {
  const double nn = static_cast<double>(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      t(row + j, col + i) = (i == j ? 1.0 : 0.0) - shrink / nn;
    }
  }
  for (Index j = 0; j < n; ++j) t(row + j, col + n) = 1.0 / std::sqrt(nn);
}

inline BlockIndexedFrame build_blocks(Index num_blocks, double shrink) {
  BlockStructure s(num_blocks);
  Matrix t = Matrix::Zero(s.total_dim(), s.total_elements());
  for (Index n = 1; n <= num_blocks; ++n) {
    write_block(t, s.offset(n), s.element_offset(n), n, shrink);
  }
  return {Frame(std::move(t), FieldKind::real), s};
}

}  // namespace detail

inline Frame parseval_block(Index n) {
  if (n < 1) throw InvalidParameter("block dimension must be >= 1");
  Matrix t = Matrix::Zero(n, n + 1);
  detail::write_block(t, 0, 0, n, 1.0);
  return Frame(std::move(t), FieldKind::real);
}

inline BlockIndexedFrame block_frame(Index num_blocks) {
  return detail::build_blocks(num_blocks, 1.0);
}

inline BlockIndexedFrame perturbed_block_frame(Index num_blocks, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameter("eps must lie in (0, 1)");
  return detail::build_blocks(num_blocks, 1.0 - eps);
}

// The elements {g_i^n}, i <= n, of every block (drops each block's last vector).
inline std::vector<Index> leading_elements(const BlockStructure& s) {
  std::vector<Index> out;
  for (Index n = 1; n <= s.num_blocks(); ++n) {
    for (Index i = 1; i <= n; ++i) out.push_back(s.element(n, i));
  }
  return out;
}

}  // namespace framekit
