// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CHINDEX_BLOCK_HPP
#define CHINDEX_BLOCK_HPP

#include <vector>

#include "chindex/operator.hpp"

namespace chindex {

/// One connected component of the bipartite sparsity graph. Isolated domain
/// or codomain labels become singleton blocks with a zero operator.
struct Block {
  std::vector<std::size_t> domain_positions;    // ascending, into the parent domain
  std::vector<std::size_t> codomain_positions;  // ascending, into the parent codomain
  SparseOperator op;
};

/// Connected components of the sparsity graph over rows u cols with edges at
/// stored entries; a label occurring in both bases is a single node, so for
/// an endomorphism the graph lives on its basis. The blocks partition both
/// bases and reassemble to the input. Order is deterministic: by the
/// smallest participating label.
std::vector<Block> block_decompose(const SparseOperator& a);

/// Number of singleton blocks carrying a zero operator (labels touched by no
/// entry). Growth of this census across truncation sizes is the operational
/// signal for an infinite-dimensional kernel.
long long zero_block_census(const SparseOperator& a);

}  // namespace chindex

#endif
