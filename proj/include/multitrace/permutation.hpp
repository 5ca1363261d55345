#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "multitrace/intpartition.hpp"

namespace multitrace {

// Bijection on {0, ..., k-1}.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int k);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const;
  // (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.img_ == b.img_;
  }

  IntPartition cycle_type() const;

 private:
  std::vector<int> img_;
};

// All k! permutations of {0..k-1}; k <= 8.
std::vector<Permutation> all_permutations(int k);

// Enumerates the fixed-point-free involutions that pair positions
// carrying equal tags; mate[i] = j with labels[i] == labels[j]. The
// enumeration is lazy (backtracking, no materialized list), so k up to
// 16 stays cheap in memory. A tag class of odd size yields nothing:
// the corresponding Gaussian expectation is zero.
void for_each_matched_pairing(const std::vector<int>& labels,
                              const std::function<void(const std::vector<int>& mate)>& fn);

// Iterator-style generator yielding each pairing as an involution;
// holds only the backtracking stack, never the full list.
class MatchedPairings {
 public:
  explicit MatchedPairings(std::vector<int> labels);
  // nullopt when exhausted.
  std::optional<Permutation> next();

 private:
  struct Frame {
    int a;
    size_t cand_idx;
    std::vector<int> cands;
  };
  bool descend();
  bool advance();

  std::vector<int> labels_;
  std::vector<int> mate_;
  std::vector<Frame> stack_;
  bool started_ = false;
  bool done_ = false;
};

// (m-1)!! for even m, used by pairing-count checks.
unsigned long long double_factorial_odd(int m);

}  // namespace multitrace
