#pragma once

#include <string>
#include <vector>

namespace multitrace {

// Integer partition: weakly decreasing positive parts summing to n.
class IntPartition {
 public:
  IntPartition() = default;
  explicit IntPartition(std::vector<int> parts);

  int n() const { return n_; }
  int rows() const { return static_cast<int>(parts_.size()); }
  const std::vector<int>& parts() const { return parts_; }
  int part(int i) const { return parts_[i]; }

  friend bool operator==(const IntPartition& a, const IntPartition& b) {
    return a.parts_ == b.parts_;
  }
  friend bool operator<(const IntPartition& a, const IntPartition& b) {
    return a.parts_ < b.parts_;
  }

  std::string to_string() const;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

// All partitions of n in descending lexicographic order:
// (n), (n-1,1), ..., (1,...,1).  n <= 20.
std::vector<IntPartition> integer_partitions(int n);

// Irreducible character chi^lambda of S_n evaluated at cycle type mu,
// by the Murnaghan-Nakayama border-strip recursion (exact integers,
// memoized). Requires |lambda| = |mu| and n <= 12.
long long character(const IntPartition& lambda, const IntPartition& mu);

// f^lambda = chi^lambda(id) = n! / prod(hook lengths), n <= 12.
long long dimension(const IntPartition& lambda);

// Size of the conjugacy class with cycle type mu: n! / z_mu.
long long conjugacy_class_size(const IntPartition& mu);

}  // namespace multitrace
