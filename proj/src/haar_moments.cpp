#include "multitrace/haar_moments.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

#include "multitrace/permutation.hpp"

namespace multitrace {

Poly c_lambda(const IntPartition& lambda) {
  if (lambda.n() > 8) throw SizeError("c_lambda: |lambda| out of range [0, 8]");
  Poly acc = Poly::constant(Rat(1));
  for (int i = 0; i < lambda.rows(); ++i)
    for (int j = 0; j < lambda.part(i); ++j) {
      // Cell in row i+1, column j+1 contributes N + (j+1) - (i+1).
      acc = acc * Poly({rat(j - i), Rat(1)});
    }
  return acc;
}

RatFn weingarten(int n, const IntPartition& mu) {
  if (n < 1 || n > 7) throw SizeError("weingarten: n out of range [1, 7]");
  if (mu.n() != n) throw ArgumentError("weingarten: |mu| != n");
  static std::mutex mtx;
  static std::map<std::pair<int, IntPartition>, RatFn> memo;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = memo.find({n, mu});
    if (it != memo.end()) return it->second;
  }
  Rat nfact(1);
  for (int i = 2; i <= n; ++i) nfact *= i;
  RatFn acc;
  for (const auto& lambda : integer_partitions(n)) {
    const Rat scalar = rat(dimension(lambda)) * rat(character(lambda, mu)) / nfact;
    if (scalar == 0) continue;
    acc = acc + RatFn(Poly::constant(scalar), c_lambda(lambda));
  }
  std::lock_guard<std::mutex> lock(mtx);
  memo.emplace(std::make_pair(n, mu), acc);
  return acc;
}

std::map<IntPartition, RatFn> weingarten_table(int n) {
  std::map<IntPartition, RatFn> table;
  for (const auto& mu : integer_partitions(n)) table.emplace(mu, weingarten(n, mu));
  return table;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  int unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return 0;
    parent[x] = y;
    return 1;
  }
};

constexpr int row_slot(int t) { return 2 * t; }
constexpr int col_slot(int t) { return 2 * t + 1; }

// Star-entry convention: (U*)_{ab} = conj(U_{ba}), so a starred position
// t carries the underlying U with row index col(t) and column index
// row(t). The sigma constraint matches rows of U factors with rows of
// conj(U) factors, i.e. row(unstarred m) ~ col(starred sigma(m)); tau
// matches columns: col(unstarred m) ~ row(starred tau(m)).
struct LetterOcc {
  std::vector<int> unstarred;
  std::vector<int> starred;
};

RatFn haar_moment_uncached(const std::vector<Word>& words) {
  int k = 0;
  for (const auto& w : words) k += w.length();
  const int r = static_cast<int>(words.size());
  if (k == 0) return RatFn::from_poly(Poly::constant(Rat(1)));

  std::map<int, LetterOcc> occ;
  {
    int t = 0;
    for (const auto& w : words)
      for (const auto& l : w.letters) {
        if (l.star)
          occ[l.index].starred.push_back(t);
        else
          occ[l.index].unstarred.push_back(t);
        ++t;
      }
  }
  for (const auto& [idx, o] : occ) {
    if (o.unstarred.size() != o.starred.size()) return RatFn();  // unbalanced: zero
    if (o.unstarred.size() > 5)
      throw SizeError("haar engine: letter u" + std::to_string(idx) +
                      " occurs more than 5 times with each star");
  }

  Dsu wired(2 * k);
  {
    int base = 0;
    for (const auto& w : words) {
      const int len = w.length();
      for (int t = 0; t < len; ++t)
        wired.unite(col_slot(base + t), row_slot(base + (t + 1) % len));
      base += len;
    }
  }

  struct ActiveLetter {
    const LetterOcc* o;
    int m;
    const std::vector<Permutation>* perms;
  };
  std::vector<ActiveLetter> letters;
  static std::mutex perm_mtx;
  static std::map<int, std::vector<Permutation>> perm_cache;
  {
    std::lock_guard<std::mutex> lock(perm_mtx);
    for (const auto& [idx, o] : occ) {
      const int m = static_cast<int>(o.unstarred.size());
      if (m == 0) continue;
      auto it = perm_cache.find(m);
      if (it == perm_cache.end()) it = perm_cache.emplace(m, all_permutations(m)).first;
      letters.push_back(ActiveLetter{&o, m, &it->second});
    }
  }

  // Class key: per-letter cycle type of sigma^-1 tau; the Weingarten
  // weight depends only on this, so terms are binned by (key, loops)
  // and the exact rational assembly happens once per class.
  std::map<std::string, std::map<int, long long>> hist;
  std::map<std::string, std::vector<IntPartition>> class_types;

  const size_t nl = letters.size();
  std::vector<size_t> sigma_idx(nl, 0), tau_idx(nl, 0);
  for (;;) {
    Dsu dsu = wired;
    int merges = 0;
    std::ostringstream key;
    std::vector<IntPartition> types;
    for (size_t li = 0; li < nl; ++li) {
      const auto& L = letters[li];
      const Permutation& sigma = (*L.perms)[sigma_idx[li]];
      const Permutation& tau = (*L.perms)[tau_idx[li]];
      for (int m = 0; m < L.m; ++m) {
        merges += dsu.unite(row_slot(L.o->unstarred[m]), col_slot(L.o->starred[sigma(m)]));
        merges += dsu.unite(col_slot(L.o->unstarred[m]), row_slot(L.o->starred[tau(m)]));
      }
      IntPartition type = (sigma.inverse() * tau).cycle_type();
      key << type.to_string() << ";";
      types.push_back(std::move(type));
    }
    const int loops = k - merges;  // trace wiring leaves exactly k components
    auto& bucket = hist[key.str()];
    bucket[loops] += 1;
    class_types.emplace(key.str(), std::move(types));

    // Odometer over the per-letter (sigma, tau) product space.
    size_t li = 0;
    for (; li < nl; ++li) {
      if (++tau_idx[li] < letters[li].perms->size()) break;
      tau_idx[li] = 0;
      if (++sigma_idx[li] < letters[li].perms->size()) break;
      sigma_idx[li] = 0;
    }
    if (li == nl) break;
  }

  RatFn total_in_n;
  for (const auto& [key, bucket] : hist) {
    std::vector<Rat> coeffs;
    for (const auto& [loops, count] : bucket) {
      if (static_cast<int>(coeffs.size()) <= loops) coeffs.resize(loops + 1, Rat(0));
      coeffs[loops] += rat(count);
    }
    RatFn term = RatFn::from_poly(Poly(std::move(coeffs)));
    const auto& types = class_types.at(key);
    for (size_t li = 0; li < nl; ++li)
      term = term * weingarten(letters[li].m, types[li]);
    total_in_n = total_in_n + term;
  }
  // tr = Tr / N for each of the r traces.
  total_in_n = total_in_n * RatFn(Poly::constant(Rat(1)), Poly::monomial(r));
  return ratfn_n_to_x(total_in_n);
}

std::string memo_key(const std::vector<Word>& words) {
  std::vector<Word> canon;
  canon.reserve(words.size());
  for (const auto& w : words) canon.push_back(w.min_rotation());
  std::sort(canon.begin(), canon.end());
  std::string key;
  for (const auto& w : canon) {
    key += w.to_string('u');
    key += '|';
  }
  return key;
}

}  // namespace

RatFn expect_trace_product_haar_u(const std::vector<Word>& words_in) {
  std::vector<Word> words;
  for (const auto& w : words_in)
    if (!w.is_identity()) words.push_back(w);
  int k = 0;
  for (const auto& w : words) k += w.length();
  if (k > 12)
    throw SizeError("haar engine: total word length " + std::to_string(k) + " exceeds cap 12");
  static std::mutex mtx;
  static std::map<std::string, RatFn> memo;
  const std::string key = memo_key(words);
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  RatFn value = haar_moment_uncached(words);
  std::lock_guard<std::mutex> lock(mtx);
  memo.emplace(key, value);
  return value;
}

RatFn expect_ncpoly_product_haar_u(const std::vector<NCPoly>& polys) {
  RatFn re, im;
  std::vector<Word> tuple(polys.size());
  std::function<void(size_t, CRat)> rec = [&](size_t i, CRat coeff) {
    if (coeff.is_zero()) return;
    if (i == polys.size()) {
      RatFn m = expect_trace_product_haar_u(tuple);
      if (m.is_zero()) return;
      if (coeff.re != 0) re = re + coeff.re * m;
      if (coeff.im != 0) im = im + coeff.im * m;
      return;
    }
    for (const auto& [w, c] : polys[i].terms()) {
      tuple[i] = w;
      rec(i + 1, coeff * c);
    }
  };
  rec(0, CRat(1));
  if (!im.is_zero())
    throw ConsistencyError("trace expectation has a nonzero imaginary part; inputs are not self-adjoint");
  return re;
}

}  // namespace multitrace
