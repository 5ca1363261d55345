#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "multitrace/rational.hpp"

namespace multitrace {

// Partition of [k] = {1, ..., k}. Canonical form: blocks sorted by least
// element, elements ascending inside each block, so equality is
// structural and hashing is deterministic.
class SetPartition {
 public:
  SetPartition(int k, std::vector<std::vector<int>> blocks);

  // Builds from block labels: block_of[i] is the (arbitrary) label of
  // element i+1.
  static SetPartition from_assignment(const std::vector<int>& block_of);
  static SetPartition zero(int k);  // 0_k, all singletons
  static SetPartition one(int k);   // 1_k, one block

  int ground_size() const { return k_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  // block_index()[i] = index of the block containing element i+1.
  const std::vector<int>& block_index() const { return index_; }

  friend bool operator==(const SetPartition& a, const SetPartition& b) {
    return a.k_ == b.k_ && a.blocks_ == b.blocks_;
  }
  friend bool operator<(const SetPartition& a, const SetPartition& b) {
    return a.blocks_ < b.blocks_;
  }

  std::string to_string() const;

 private:
  int k_;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> index_;
};

// All Bell(k) partitions of [k], canonical, in restricted-growth order.
std::vector<SetPartition> set_partitions(int k);  // 1 <= k <= 12

bool leq(const SetPartition& a, const SetPartition& b);
SetPartition meet(const SetPartition& a, const SetPartition& b);
SetPartition join(const SetPartition& a, const SetPartition& b);

// Moebius function of the partition lattice,
//   Moeb(a, b) = prod_i (-1)^(l_i - 1) (l_i - 1)!
// over the blocks of b, where l_i counts the blocks of a inside block i.
// Returns 0 when a is not <= b (incidence-algebra convention).
long long moebius(const SetPartition& a, const SetPartition& b);

// Precomputed lattice of Part(k) with a leq table; the cumulant formulas
// re-traverse these heavily, so instances are memoized per k.
class PartitionLattice {
 public:
  explicit PartitionLattice(int k);

  int k() const { return k_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const SetPartition& at(int i) const { return elems_[i]; }
  const std::vector<SetPartition>& elements() const { return elems_; }
  int index_of(const SetPartition& p) const;
  bool leq(int i, int j) const { return leq_[i][j] != 0; }

  using Matrix = std::vector<std::vector<Rat>>;
  Matrix delta_matrix() const;
  Matrix zeta_matrix() const;
  Matrix moebius_matrix() const;
  // (f * g)(p1, p2) = sum over p1 <= p3 <= p2 of f(p1, p3) g(p3, p2).
  Matrix convolve(const Matrix& f, const Matrix& g) const;

 private:
  int k_;
  std::vector<SetPartition> elems_;
  std::vector<std::vector<uint8_t>> leq_;
};

// Shared memoized lattice, k <= 8.
const PartitionLattice& part_lattice(int k);

}  // namespace multitrace
