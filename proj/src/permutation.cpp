#include "multitrace/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "multitrace/errors.hpp"

namespace multitrace {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
      throw ArgumentError("permutation images are not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int k) {
  std::vector<int> img(k);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 0; i < size(); ++i) inv[img_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw ArgumentError("permutation sizes differ");
  std::vector<int> img(a.size());
  for (int i = 0; i < a.size(); ++i) img[i] = a(b(i));
  return Permutation(std::move(img));
}

IntPartition Permutation::cycle_type() const {
  std::vector<char> seen(img_.size(), 0);
  std::vector<int> lengths;
  for (int i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return IntPartition(std::move(lengths));
}

std::vector<Permutation> all_permutations(int k) {
  if (k < 0 || k > 8) throw SizeError("all_permutations: k out of range [0, 8]");
  std::vector<int> img(k);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

namespace {

void pair_rec(const std::vector<int>& labels, std::vector<int>& mate,
              const std::function<void(const std::vector<int>&)>& fn) {
  const int k = static_cast<int>(labels.size());
  int a = 0;
  while (a < k && mate[a] != -1) ++a;
  if (a == k) {
    fn(mate);
    return;
  }
  for (int b = a + 1; b < k; ++b) {
    if (mate[b] != -1 || labels[b] != labels[a]) continue;
    mate[a] = b;
    mate[b] = a;
    pair_rec(labels, mate, fn);
    mate[a] = -1;
    mate[b] = -1;
  }
}

}  // namespace

void for_each_matched_pairing(const std::vector<int>& labels,
                              const std::function<void(const std::vector<int>&)>& fn) {
  if (labels.size() > 16) throw SizeError("matched pairings: k out of range [0, 16]");
  std::vector<int> mate(labels.size(), -1);
  pair_rec(labels, mate, fn);
}

MatchedPairings::MatchedPairings(std::vector<int> labels)
    : labels_(std::move(labels)), mate_(labels_.size(), -1) {
  if (labels_.size() > 16) throw SizeError("matched pairings: k out of range [0, 16]");
}

bool MatchedPairings::descend() {
  const int k = static_cast<int>(labels_.size());
  for (;;) {
    int a = 0;
    while (a < k && mate_[a] != -1) ++a;
    if (a == k) return true;
    std::vector<int> cands;
    for (int b = a + 1; b < k; ++b)
      if (mate_[b] == -1 && labels_[b] == labels_[a]) cands.push_back(b);
    if (cands.empty()) return false;  // odd tag class
    mate_[a] = cands[0];
    mate_[cands[0]] = a;
    stack_.push_back(Frame{a, 0, std::move(cands)});
  }
}

bool MatchedPairings::advance() {
  while (!stack_.empty()) {
    Frame& f = stack_.back();
    mate_[f.cands[f.cand_idx]] = -1;
    mate_[f.a] = -1;
    if (++f.cand_idx < f.cands.size()) {
      mate_[f.a] = f.cands[f.cand_idx];
      mate_[f.cands[f.cand_idx]] = f.a;
      if (descend()) return true;
    } else {
      stack_.pop_back();
    }
  }
  return false;
}

std::optional<Permutation> MatchedPairings::next() {
  if (done_) return std::nullopt;
  bool have = false;
  if (!started_) {
    started_ = true;
    have = descend();
    if (!have) have = advance();
  } else {
    have = advance();
  }
  if (!have) {
    done_ = true;
    return std::nullopt;
  }
  return Permutation(mate_);
}

unsigned long long double_factorial_odd(int m) {
  // (m - 1)!! for even m >= 0.
  unsigned long long acc = 1;
  for (int v = m - 1; v > 1; v -= 2) acc *= static_cast<unsigned long long>(v);
  return acc;
}

}  // namespace multitrace
