// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#include "chindex/block.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace chindex {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Nodes of the sparsity graph are labels; a label occurring in both bases is
// one node, so an endomorphism's graph is over its single basis.
std::map<BasisLabel, std::size_t> label_nodes(const SparseOperator& a) {
  std::map<BasisLabel, std::size_t> nodes;
  for (const auto& l : a.codomain()) nodes.emplace(l, 0);
  for (const auto& l : a.domain()) nodes.emplace(l, 0);
  std::size_t id = 0;
  for (auto& [l, node] : nodes) node = id++;
  return nodes;
}

}  // namespace

std::vector<Block> block_decompose(const SparseOperator& a) {
  const auto nodes = label_nodes(a);
  UnionFind uf(nodes.size());
  for (const auto& [rc, v] : a.entries())
    uf.unite(nodes.at(a.codomain()[rc.first]), nodes.at(a.domain()[rc.second]));

  // roots are the smallest node of each component, so iterating the ordered
  // map yields blocks sorted by their smallest label
  std::map<std::size_t, Block> groups;
  for (std::size_t r = 0; r < a.rows(); ++r)
    groups[uf.find(nodes.at(a.codomain()[r]))].codomain_positions.push_back(r);
  for (std::size_t c = 0; c < a.cols(); ++c)
    groups[uf.find(nodes.at(a.domain()[c]))].domain_positions.push_back(c);

  std::vector<Block> blocks;
  blocks.reserve(groups.size());
  for (auto& [root, blk] : groups) {
    Basis dom, codom;
    for (std::size_t c : blk.domain_positions) dom.push_back(a.domain()[c]);
    for (std::size_t r : blk.codomain_positions) codom.push_back(a.codomain()[r]);
    blk.op = SparseOperator(std::move(codom), std::move(dom), a.drop_tol());
    blocks.push_back(std::move(blk));
  }
  for (auto& blk : blocks) {
    std::map<std::size_t, std::size_t> rloc, cloc;
    for (std::size_t i = 0; i < blk.codomain_positions.size(); ++i)
      rloc[blk.codomain_positions[i]] = i;
    for (std::size_t i = 0; i < blk.domain_positions.size(); ++i)
      cloc[blk.domain_positions[i]] = i;
    for (const auto& [rc, v] : a.entries())
      if (rloc.count(rc.first) && cloc.count(rc.second))
        blk.op.set_at(rloc[rc.first], cloc[rc.second], v);
  }
  return blocks;
}

long long zero_block_census(const SparseOperator& a) {
  const auto nodes = label_nodes(a);
  std::vector<char> touched(nodes.size(), 0);
  for (const auto& [rc, v] : a.entries()) {
    touched[nodes.at(a.codomain()[rc.first])] = 1;
    touched[nodes.at(a.domain()[rc.second])] = 1;
  }
  long long census = 0;
  for (char t : touched)
    if (!t) ++census;
  return census;
}

}  // namespace chindex
