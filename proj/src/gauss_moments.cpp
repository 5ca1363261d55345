#include "multitrace/gauss_moments.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "multitrace/permutation.hpp"

namespace multitrace {

namespace {

// Union-find over the 2k row/column slots; small and copied per term.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Returns 1 if the edge merged two components.
  int unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return 0;
    parent[x] = y;
    return 1;
  }
};

// Positions are numbered consecutively through the word list; slot 2t is
// the row index of position t, slot 2t+1 its column index.
constexpr int row_slot(int t) { return 2 * t; }
constexpr int col_slot(int t) { return 2 * t + 1; }

// The cyclic trace structure: within each word, col of position t is the
// row of position t+1 (wrapping).
Dsu trace_wiring(const std::vector<Word>& words, int k) {
  Dsu dsu(2 * k);
  int base = 0;
  for (const auto& w : words) {
    const int len = w.length();
    for (int t = 0; t < len; ++t)
      dsu.unite(col_slot(base + t), row_slot(base + (t + 1) % len));
    base += len;
  }
  return dsu;
}

struct FlatWords {
  std::vector<int> labels;  // letter index per position
  int k = 0;
  int r = 0;
  bool balanced = true;  // every letter appears an even number of times
};

FlatWords flatten(const std::vector<Word>& words) {
  FlatWords fw;
  fw.r = static_cast<int>(words.size());
  std::map<int, int> counts;
  for (const auto& w : words)
    for (const auto& l : w.letters) {
      if (l.star) throw ArgumentError("Gaussian ensembles take star-free words");
      fw.labels.push_back(l.index);
      counts[l.index]++;
    }
  fw.k = static_cast<int>(fw.labels.size());
  for (const auto& [idx, c] : counts)
    if (c % 2) fw.balanced = false;
  return fw;
}

Poly poly_from_power_histogram(const std::map<int, long long>& hist) {
  std::vector<Rat> coeffs;
  for (const auto& [power, count] : hist) {
    if (static_cast<int>(coeffs.size()) <= power) coeffs.resize(power + 1, Rat(0));
    coeffs[power] += rat(count);
  }
  return Poly(std::move(coeffs));
}

Poly gue_moment_uncached(const std::vector<Word>& words) {
  FlatWords fw = flatten(words);
  if (fw.k % 2 || !fw.balanced || fw.k == 0) {
    // Empty tuple is the empty product; odd/unbalanced cases vanish.
    return fw.k == 0 ? Poly::constant(Rat(1)) : Poly();
  }
  const Dsu wired = trace_wiring(words, fw.k);
  std::map<int, long long> hist;  // power of x -> pairing count
  for_each_matched_pairing(fw.labels, [&](const std::vector<int>& mate) {
    Dsu dsu = wired;
    int merges = 0;
    for (int a = 0; a < fw.k; ++a) {
      const int b = mate[a];
      if (b < a) continue;
      merges += dsu.unite(row_slot(a), col_slot(b));
      merges += dsu.unite(col_slot(a), row_slot(b));
    }
    const int loops = fw.k - merges;  // trace wiring leaves exactly k components
    hist[fw.k / 2 + fw.r - loops] += 1;
  });
  return poly_from_power_histogram(hist);
}

Poly goe_moment_uncached(const std::vector<Word>& words) {
  FlatWords fw = flatten(words);
  if (fw.k % 2 || !fw.balanced || fw.k == 0)
    return fw.k == 0 ? Poly::constant(Rat(1)) : Poly();
  const Dsu wired = trace_wiring(words, fw.k);
  const int pairs = fw.k / 2;
  std::map<int, long long> hist;
  for_each_matched_pairing(fw.labels, [&](const std::vector<int>& mate) {
    std::vector<std::pair<int, int>> plist;
    plist.reserve(pairs);
    for (int a = 0; a < fw.k; ++a)
      if (mate[a] > a) plist.emplace_back(a, mate[a]);
    // Each pair independently picks the straight or the twisted wiring.
    for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
      Dsu dsu = wired;
      int merges = 0;
      for (int p = 0; p < pairs; ++p) {
        const auto [a, b] = plist[p];
        if (mask & (1u << p)) {
          merges += dsu.unite(row_slot(a), row_slot(b));
          merges += dsu.unite(col_slot(a), col_slot(b));
        } else {
          merges += dsu.unite(row_slot(a), col_slot(b));
          merges += dsu.unite(col_slot(a), row_slot(b));
        }
      }
      const int loops = fw.k - merges;
      hist[fw.k / 2 + fw.r - loops] += 1;
    }
  });
  return poly_from_power_histogram(hist);
}

// Trace expectations are invariant under cyclic rotation of each word and
// reordering of the traces; memo keys canonicalize both.
std::string memo_key(const std::vector<Word>& words) {
  std::vector<Word> canon;
  canon.reserve(words.size());
  for (const auto& w : words) canon.push_back(w.min_rotation());
  std::sort(canon.begin(), canon.end());
  std::string key;
  for (const auto& w : canon) {
    key += w.to_string();
    key += '|';
  }
  return key;
}

int total_length(const std::vector<Word>& words) {
  int k = 0;
  for (const auto& w : words) k += w.length();
  return k;
}

Poly cached_moment(Ensemble e, const std::vector<Word>& words_in) {
  // Identity words contribute tr(I) = 1 and no slots; drop them so the
  // N^r normalization counts only slot-bearing traces.
  std::vector<Word> words;
  for (const auto& w : words_in)
    if (!w.is_identity()) words.push_back(w);
  const int k = total_length(words);
  const int cap = (e == Ensemble::GUE) ? 16 : 12;
  if (k > cap)
    throw SizeError("gauss engine: total word length " + std::to_string(k) +
                    " exceeds cap " + std::to_string(cap));
  static std::mutex mtx;
  static std::map<std::string, Poly> memo_gue, memo_goe;
  auto& memo = (e == Ensemble::GUE) ? memo_gue : memo_goe;
  const std::string key = memo_key(words);
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  Poly value = (e == Ensemble::GUE) ? gue_moment_uncached(words) : goe_moment_uncached(words);
  std::lock_guard<std::mutex> lock(mtx);
  memo.emplace(key, value);
  return value;
}

}  // namespace

Poly expect_trace_product_gue(const std::vector<Word>& words) {
  return cached_moment(Ensemble::GUE, words);
}

Poly expect_trace_product_goe(const std::vector<Word>& words) {
  return cached_moment(Ensemble::GOE, words);
}

Rat expect_trace_product_gse_at(const std::vector<Word>& words, long N) {
  if (N < 1) throw ArgumentError("GSE dimension must be positive");
  return expect_trace_product_goe(words).eval(rat(-1, 2 * N));
}

namespace {

// Multilinear expansion over the term tuples of the polys.
void for_each_term_tuple(const std::vector<NCPoly>& polys,
                         const std::function<void(const std::vector<Word>&, const CRat&)>& fn) {
  std::vector<Word> tuple(polys.size());
  std::function<void(size_t, CRat)> rec = [&](size_t i, CRat coeff) {
    if (i == polys.size()) {
      fn(tuple, coeff);
      return;
    }
    for (const auto& [w, c] : polys[i].terms()) {
      tuple[i] = w;
      rec(i + 1, coeff * c);
    }
  };
  rec(0, CRat(1));
}

}  // namespace

Poly expect_ncpoly_product_gauss(Ensemble ensemble, const std::vector<NCPoly>& polys) {
  if (ensemble != Ensemble::GUE && ensemble != Ensemble::GOE)
    throw ArgumentError("expect_ncpoly_product_gauss: ensemble must be GUE or GOE");
  Poly re, im;
  for_each_term_tuple(polys, [&](const std::vector<Word>& tuple, const CRat& coeff) {
    if (coeff.is_zero()) return;
    Poly m = cached_moment(ensemble, tuple);
    if (m.is_zero()) return;
    re += coeff.re * m;
    im += coeff.im * m;
  });
  if (!im.is_zero())
    throw ConsistencyError("trace expectation has a nonzero imaginary part; inputs are not self-adjoint");
  return re;
}

Rat expect_ncpoly_product_gse_at(const std::vector<NCPoly>& polys, long N) {
  return expect_ncpoly_product_gauss(Ensemble::GOE, polys).eval(rat(-1, 2 * N));
}

}  // namespace multitrace
