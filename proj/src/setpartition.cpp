#include "multitrace/setpartition.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "multitrace/errors.hpp"

namespace multitrace {

namespace {

std::vector<int> index_from_blocks(int k, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> idx(k, -1);
  for (size_t b = 0; b < blocks.size(); ++b) {
    for (int e : blocks[b]) {
      if (e < 1 || e > k) throw ArgumentError("set partition element out of [k]");
      if (idx[e - 1] != -1) throw ArgumentError("set partition blocks overlap");
      idx[e - 1] = static_cast<int>(b);
    }
  }
  for (int i = 0; i < k; ++i)
    if (idx[i] == -1) throw ArgumentError("set partition does not cover [k]");
  return idx;
}

}  // namespace

SetPartition::SetPartition(int k, std::vector<std::vector<int>> blocks)
    : k_(k), blocks_(std::move(blocks)) {
  for (auto& b : blocks_) {
    if (b.empty()) throw ArgumentError("empty block in set partition");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  index_ = index_from_blocks(k_, blocks_);
}

SetPartition SetPartition::from_assignment(const std::vector<int>& block_of) {
  const int k = static_cast<int>(block_of.size());
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < k; ++i) groups[block_of[i]].push_back(i + 1);
  std::vector<std::vector<int>> blocks;
  blocks.reserve(groups.size());
  for (auto& [label, elems] : groups) blocks.push_back(std::move(elems));
  return SetPartition(k, std::move(blocks));
}

SetPartition SetPartition::zero(int k) {
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= k; ++i) blocks.push_back({i});
  return SetPartition(k, std::move(blocks));
}

SetPartition SetPartition::one(int k) {
  std::vector<int> all(k);
  std::iota(all.begin(), all.end(), 1);
  return SetPartition(k, {all});
}

std::string SetPartition::to_string() const {
  std::ostringstream out;
  out << "{";
  for (size_t b = 0; b < blocks_.size(); ++b) {
    out << (b ? "|" : "");
    for (size_t i = 0; i < blocks_[b].size(); ++i)
      out << (i ? "," : "") << blocks_[b][i];
  }
  out << "}";
  return out.str();
}

std::vector<SetPartition> set_partitions(int k) {
  if (k < 1 || k > 12) throw SizeError("set_partitions: k out of range [1, 12]");
  // Restricted growth strings: a[0] = 0, a[i] <= max(a[0..i-1]) + 1.
  std::vector<SetPartition> out;
  std::vector<int> a(k, 0);
  std::function<void(int, int)> rec = [&](int i, int maxv) {
    if (i == k) {
      out.push_back(SetPartition::from_assignment(a));
      return;
    }
    for (int v = 0; v <= maxv + 1; ++v) {
      a[i] = v;
      rec(i + 1, std::max(maxv, v));
    }
  };
  rec(0, -1);
  return out;
}

bool leq(const SetPartition& a, const SetPartition& b) {
  if (a.ground_size() != b.ground_size())
    throw ArgumentError("leq: mismatched ground sets");
  for (const auto& block : a.blocks()) {
    const int target = b.block_index()[block.front() - 1];
    for (int e : block)
      if (b.block_index()[e - 1] != target) return false;
  }
  return true;
}

SetPartition meet(const SetPartition& a, const SetPartition& b) {
  const int k = a.ground_size();
  if (k != b.ground_size()) throw ArgumentError("meet: mismatched ground sets");
  // Common refinement: elements belong together iff together in both.
  std::vector<int> label(k);
  const int nb = b.block_count();
  for (int i = 0; i < k; ++i)
    label[i] = a.block_index()[i] * nb + b.block_index()[i];
  return SetPartition::from_assignment(label);
}

SetPartition join(const SetPartition& a, const SetPartition& b) {
  const int k = a.ground_size();
  if (k != b.ground_size()) throw ArgumentError("join: mismatched ground sets");
  // Connected components of the union of both block graphs.
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
  for (const auto* part : {&a, &b})
    for (const auto& block : part->blocks())
      for (size_t i = 1; i < block.size(); ++i)
        unite(block[0] - 1, block[i] - 1);
  std::vector<int> label(k);
  for (int i = 0; i < k; ++i) label[i] = find(i);
  return SetPartition::from_assignment(label);
}

long long moebius(const SetPartition& a, const SetPartition& b) {
  if (a.ground_size() != b.ground_size())
    throw ArgumentError("moebius: mismatched ground sets");
  if (!leq(a, b)) return 0;
  long long result = 1;
  for (const auto& block : b.blocks()) {
    // Count the blocks of a inside this block of b.
    std::vector<int> seen;
    for (int e : block) seen.push_back(a.block_index()[e - 1]);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    const long long l = static_cast<long long>(seen.size());
    long long factor = 1;
    for (long long i = 2; i < l; ++i) factor *= i;  // (l-1)!
    if ((l - 1) % 2 == 1) factor = -factor;
    result *= factor;
  }
  return result;
}

PartitionLattice::PartitionLattice(int k) : k_(k) {
  if (k < 1 || k > 8) throw SizeError("PartitionLattice: k out of range [1, 8]");
  elems_ = set_partitions(k);
  const int n = size();
  leq_.assign(n, std::vector<uint8_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) leq_[i][j] = multitrace::leq(elems_[i], elems_[j]) ? 1 : 0;
}

int PartitionLattice::index_of(const SetPartition& p) const {
  for (int i = 0; i < size(); ++i)
    if (elems_[i] == p) return i;
  throw ArgumentError("partition not in lattice");
}

PartitionLattice::Matrix PartitionLattice::delta_matrix() const {
  Matrix m(size(), std::vector<Rat>(size(), Rat(0)));
  for (int i = 0; i < size(); ++i) m[i][i] = Rat(1);
  return m;
}

PartitionLattice::Matrix PartitionLattice::zeta_matrix() const {
  Matrix m(size(), std::vector<Rat>(size(), Rat(0)));
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (leq(i, j)) m[i][j] = Rat(1);
  return m;
}

PartitionLattice::Matrix PartitionLattice::moebius_matrix() const {
  Matrix m(size(), std::vector<Rat>(size(), Rat(0)));
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (leq(i, j)) m[i][j] = rat(multitrace::moebius(elems_[i], elems_[j]));
  return m;
}

PartitionLattice::Matrix PartitionLattice::convolve(const Matrix& f, const Matrix& g) const {
  const int n = size();
  Matrix out(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!leq(i, j)) continue;
      Rat acc(0);
      for (int t = 0; t < n; ++t)
        if (leq(i, t) && leq(t, j)) acc += f[i][t] * g[t][j];
      out[i][j] = acc;
    }
  return out;
}

const PartitionLattice& part_lattice(int k) {
  static std::mutex mu;
  static std::map<int, PartitionLattice> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, PartitionLattice(k)).first;
  return it->second;
}

}  // namespace multitrace
