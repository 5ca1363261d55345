#include "multitrace/intpartition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "multitrace/errors.hpp"

namespace multitrace {

IntPartition::IntPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p <= 0) throw ArgumentError("integer partition parts must be positive");
    n_ += p;
  }
  if (!std::is_sorted(parts_.rbegin(), parts_.rend()))
    throw ArgumentError("integer partition parts must be weakly decreasing");
}

std::string IntPartition::to_string() const {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < parts_.size(); ++i) out << (i ? "," : "") << parts_[i];
  out << ")";
  return out.str();
}

std::vector<IntPartition> integer_partitions(int n) {
  if (n < 1 || n > 20) throw SizeError("integer_partitions: n out of range [1, 20]");
  std::vector<IntPartition> out;
  std::vector<int> cur;
  // Largest part first gives descending lexicographic order.
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

namespace {

// Murnaghan-Nakayama: chi^lambda(mu) = sum over border strips of length
// mu[0] of (-1)^height * chi^(lambda minus strip)(mu minus first part).
long long mn_character(std::vector<int> lambda, std::vector<int> mu,
                       std::map<std::pair<std::vector<int>, std::vector<int>>, long long>& memo) {
  while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
  if (mu.empty()) return lambda.empty() ? 1 : 0;
  auto key = std::make_pair(lambda, mu);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  const int strip = mu[0];
  std::vector<int> mu_rest(mu.begin() + 1, mu.end());
  long long total = 0;
  const int rows = static_cast<int>(lambda.size());
  // Border strips of length `strip` spanning rows start..end. Removal
  // leaves lambda'[i] = lambda[i+1] - 1 for start <= i < end and
  // lambda'[end] = lambda[start] - strip + (end - start); valid strips
  // are exactly those whose removal leaves a partition shape.
  for (int start = 0; start < rows; ++start) {
    for (int end = start; end < rows; ++end) {
      std::vector<int> next(lambda);
      for (int i = start; i < end; ++i) next[i] = lambda[i + 1] - 1;
      next[end] = lambda[start] - strip + (end - start);
      bool ok = next[end] >= 0;
      for (size_t i = 0; ok && i + 1 < next.size(); ++i) ok = next[i] >= next[i + 1];
      if (!ok) continue;
      const long long sign = ((end - start) % 2 == 0) ? 1 : -1;
      total += sign * mn_character(next, mu_rest, memo);
    }
  }
  memo[key] = total;
  return total;
}

}  // namespace

long long character(const IntPartition& lambda, const IntPartition& mu) {
  if (lambda.n() != mu.n()) throw ArgumentError("character: |lambda| != |mu|");
  if (lambda.n() > 12) throw SizeError("character: n out of range [1, 12]");
  static std::mutex mtx;
  static std::map<std::pair<std::vector<int>, std::vector<int>>, long long> memo;
  std::lock_guard<std::mutex> lock(mtx);
  return mn_character(lambda.parts(), mu.parts(), memo);
}

long long dimension(const IntPartition& lambda) {
  const int n = lambda.n();
  if (n > 12) throw SizeError("dimension: n out of range [1, 12]");
  // Hook length formula.
  const auto& parts = lambda.parts();
  std::vector<int> conj(parts.empty() ? 0 : parts[0], 0);
  for (int p : parts)
    for (int j = 0; j < p; ++j) conj[j]++;
  long long hooks = 1;
  for (size_t i = 0; i < parts.size(); ++i)
    for (int j = 0; j < parts[i]; ++j)
      hooks *= (parts[i] - j) + (conj[j] - static_cast<int>(i)) - 1;
  long long fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  return fact / hooks;
}

long long conjugacy_class_size(const IntPartition& mu) {
  const int n = mu.n();
  long long z = 1;
  int run = 0;
  int prev = -1;
  for (int p : mu.parts()) {
    if (p == prev) {
      ++run;
    } else {
      prev = p;
      run = 1;
    }
    z *= p * run;  // accumulates p^{a_p} a_p! over the runs
  }
  long long fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  return fact / z;
}

}  // namespace multitrace
