#include "gowerslab/additive.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace gowerslab::additive {

namespace {

constexpr std::int64_t kResultBudget = 10'000'000;   // max elements in a sumset result
constexpr std::int64_t kWindowBudget = 40'000'000;   // max bits in a 1-d sumset window
constexpr std::int64_t kGridBitBudget = 64'000'000;  // max bits in a 2-d iterate grid

// Dense subset of [off, off + width) as a bit vector.
struct BitWindow {
  std::int64_t off = 0;
  std::int64_t width = 0;
  std::vector<std::uint64_t> bits;

  explicit BitWindow(std::int64_t o = 0, std::int64_t w = 0)
      : off(o), width(w), bits(static_cast<std::size_t>((w + 63) / 64), 0) {}

  void set(std::int64_t v) {
    const std::int64_t i = v - off;
    bits[static_cast<std::size_t>(i >> 6)] |= 1ULL << (i & 63);
  }
  bool test(std::int64_t v) const {
    const std::int64_t i = v - off;
    if (i < 0 || i >= width) return false;
    return (bits[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1ULL;
  }
};

// dst |= src << s (bit shift), dst must be wide enough
void or_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                std::int64_t s) {
  const std::int64_t wordshift = s >> 6;
  const int bitshift = static_cast<int>(s & 63);
  for (std::int64_t w = static_cast<std::int64_t>(src.size()) - 1; w >= 0; --w) {
    const std::uint64_t v = src[static_cast<std::size_t>(w)];
    if (!v) continue;
    dst[static_cast<std::size_t>(w + wordshift)] |= v << bitshift;
    if (bitshift)
      dst[static_cast<std::size_t>(w + wordshift + 1)] |= v >> (64 - bitshift);
  }
}

// translate the set by the elements of `shifts` (given relative to 0) and union
BitWindow add_elements(const BitWindow& S, const std::vector<std::int64_t>& shifts) {
  const std::int64_t lo = *std::min_element(shifts.begin(), shifts.end());
  const std::int64_t hi = *std::max_element(shifts.begin(), shifts.end());
  BitWindow out(S.off + lo, S.width + (hi - lo));
  out.bits.resize(static_cast<std::size_t>((out.width + 63) / 64) + 1, 0);
  for (std::int64_t a : shifts) or_shifted(out.bits, S.bits, a - lo);
  out.bits.resize(static_cast<std::size_t>((out.width + 63) / 64));
  return out;
}

BitWindow fold_sum(const std::vector<std::int64_t>& elems, int copies, bool negate) {
  BitWindow S(0, 1);
  S.set(0);
  if (copies == 0) return S;
  std::vector<std::int64_t> shifts = elems;
  if (negate)
    for (auto& v : shifts) v = -v;
  for (int j = 0; j < copies; ++j) S = add_elements(S, shifts);
  return S;
}

}  // namespace

IntSet make_intset(std::int64_t N, std::vector<std::int64_t> elems) {
  if (N < 1) throw std::invalid_argument("make_intset: N must be positive");
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  for (std::int64_t e : elems)
    if (e < 0 || e > N) throw std::invalid_argument("make_intset: element outside [0,N]");
  IntSet A;
  A.N = N;
  A.elems = std::move(elems);
  A.alpha = static_cast<double>(A.elems.size()) / static_cast<double>(N);
  return A;
}

PairSet make_pairset(std::int64_t N, std::vector<std::pair<std::int64_t, std::int64_t>> pairs) {
  if (N < 1) throw std::invalid_argument("make_pairset: N must be positive");
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (auto& [x, y] : pairs)
    if (x < 0 || x > N || y < 0 || y > N)
      throw std::invalid_argument("make_pairset: pair outside [0,N]^2");
  PairSet A;
  A.N = N;
  A.lo = 0;
  A.hi = N;
  A.pairs = std::move(pairs);
  A.alpha = static_cast<double>(A.pairs.size()) / (static_cast<double>(N) * static_cast<double>(N));
  return A;
}

std::vector<std::int64_t> iterated_sumset(const IntSet& A, int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("iterated_sumset: negative fold count");
  if (k > 512 || l > 512) throw std::length_error("iterated_sumset: fold count above 512");
  if (A.elems.empty()) {
    if (k == 0 && l == 0) return {0};
    return {};
  }
  const std::int64_t span = A.elems.back() - A.elems.front();
  const std::int64_t width = static_cast<std::int64_t>(k + l) * span + 1;
  if (width > kWindowBudget) throw std::length_error("iterated_sumset: window exceeds budget");
  const std::int64_t work =
      static_cast<std::int64_t>(k + l) * static_cast<std::int64_t>(A.elems.size()) * (width / 64 + 1);
  if (work > 2'000'000'000) throw std::length_error("iterated_sumset: work exceeds budget");

  BitWindow S = fold_sum(A.elems, k, false);
  if (l > 0) {
    std::vector<std::int64_t> neg = A.elems;
    for (auto& v : neg) v = -v;
    for (int j = 0; j < l; ++j) S = add_elements(S, neg);
  }
  std::vector<std::int64_t> out;
  for (std::int64_t v = S.off; v < S.off + S.width; ++v)
    if (S.test(v)) {
      out.push_back(v);
      if (static_cast<std::int64_t>(out.size()) > kResultBudget)
        throw std::length_error("iterated_sumset: result exceeds budget");
    }
  return out;
}

std::optional<std::int64_t> find_lev_progression(const IntSet& A, int k) {
  if (A.elems.empty()) return std::nullopt;
  auto D = iterated_sumset(A, k, k);
  BitWindow member(D.front(), D.back() - D.front() + 1);
  if (member.width > kWindowBudget) throw std::length_error("find_lev_progression: window budget");
  for (std::int64_t v : D) member.set(v);
  const std::int64_t dmax = A.N / static_cast<std::int64_t>(A.elems.size());  // floor(1/alpha)
  for (std::int64_t d = 1; d <= dmax; ++d) {
    bool ok = true;
    for (std::int64_t i = 0; i < A.N && ok; ++i) ok = member.test(i * d);
    if (ok) return d;
  }
  return std::nullopt;
}

PairSet bilinear_oplus(const PairSet& A) {
  PairSet out;
  out.N = A.N;
  out.lo = std::min(2 * A.lo, A.lo - A.hi);
  out.hi = std::max(2 * A.hi, A.hi - A.lo);
  out.alpha = A.alpha;
  if (A.pairs.empty()) return out;

  std::map<std::int64_t, std::vector<std::int64_t>> by_x, by_y;
  for (auto& [x, y] : A.pairs) {
    by_x[x].push_back(y);
    by_y[y].push_back(x);
  }
  std::int64_t work = 0;
  for (auto& [x, ys] : by_x) work += static_cast<std::int64_t>(ys.size()) * static_cast<std::int64_t>(ys.size());
  for (auto& [y, xs] : by_y) work += static_cast<std::int64_t>(xs.size()) * static_cast<std::int64_t>(xs.size());
  if (work > 200'000'000) throw std::length_error("bilinear_oplus: work exceeds budget");

  std::set<std::pair<std::int64_t, std::int64_t>> acc;
  for (auto& [x, ys] : by_x)
    for (std::int64_t y1 : ys)
      for (std::int64_t y2 : ys) {
        acc.emplace(x, y1 + y2);
        acc.emplace(x, y1 - y2);
      }
  for (auto& [y, xs] : by_y)
    for (std::int64_t x1 : xs)
      for (std::int64_t x2 : xs) {
        acc.emplace(x1 + x2, y);
        acc.emplace(x1 - x2, y);
      }
  if (static_cast<std::int64_t>(acc.size()) > kResultBudget)
    throw std::length_error("bilinear_oplus: result exceeds budget");
  out.pairs.assign(acc.begin(), acc.end());
  return out;
}

namespace {

// dense symmetric window [-W, W]^2; rows indexed by x, bit columns by y
struct Grid {
  std::int64_t W = 0;
  std::int64_t side = 0;
  std::int64_t words = 0;
  std::vector<std::uint64_t> rows;  // side * words

  explicit Grid(std::int64_t w)
      : W(w), side(2 * w + 1), words((side + 63) / 64),
        rows(static_cast<std::size_t>(side * words), 0) {}

  std::uint64_t* row(std::int64_t ix) { return rows.data() + ix * words; }
  const std::uint64_t* row(std::int64_t ix) const { return rows.data() + ix * words; }
  void set(std::int64_t x, std::int64_t y) {
    row(x + W)[(y + W) >> 6] |= 1ULL << ((y + W) & 63);
  }
  bool test(std::int64_t x, std::int64_t y) const {
    if (x < -W || x > W || y < -W || y > W) return false;
    return (row(x + W)[(y + W) >> 6] >> ((y + W) & 63)) & 1ULL;
  }
};

// For one row r (a set F of window indices in [0, side)), write the
// window-clipped union of { i1 + i2 - W } and { i1 - i2 + W } over i1, i2 in F
// into out: exactly the y1 +- y2 values of the underlying fibre, re-centred.
void square_row(const std::uint64_t* r, std::int64_t side, std::int64_t words,
                std::uint64_t* out) {
  const std::size_t dwords = static_cast<std::size_t>((2 * side + 63) / 64) + 2;
  std::vector<std::uint64_t> rev(static_cast<std::size_t>(words), 0);
  for (std::int64_t i = 0; i < side; ++i)
    if ((r[i >> 6] >> (i & 63)) & 1ULL) {
      const std::int64_t j = side - 1 - i;  // reversal: minus-sums become plus-shifts
      rev[static_cast<std::size_t>(j >> 6)] |= 1ULL << (j & 63);
    }
  std::vector<std::uint64_t> acc_plus(dwords, 0), acc_minus(dwords, 0);
  std::vector<std::uint64_t> src(r, r + words);
  for (std::int64_t i = 0; i < side; ++i)
    if ((r[i >> 6] >> (i & 63)) & 1ULL) {
      or_shifted(acc_plus, src, i);
      or_shifted(acc_minus, rev, i);
    }
  // acc_plus holds i1+i2; acc_minus holds (i1-i2)+side-1; both map to window
  // index t via idx = t + W
  const std::int64_t W = (side - 1) / 2;
  for (std::int64_t t = 0; t < side; ++t) {
    const std::int64_t idx = t + W;
    bool bit = (acc_plus[static_cast<std::size_t>(idx >> 6)] >> (idx & 63)) & 1ULL;
    bit = bit || ((acc_minus[static_cast<std::size_t>(idx >> 6)] >> (idx & 63)) & 1ULL);
    if (bit) out[t >> 6] |= 1ULL << (t & 63);
  }
}

Grid square_grid(const Grid& G) {
  Grid out(G.W);
  // vertical: square every x-fibre
  for (std::int64_t ix = 0; ix < G.side; ++ix) {
    bool any = false;
    for (std::int64_t w = 0; w < G.words && !any; ++w) any = G.row(ix)[w] != 0;
    if (any) square_row(G.row(ix), G.side, G.words, out.row(ix));
  }
  // horizontal: transpose, square every y-fibre, transpose back
  Grid T(G.W), TS(G.W);
  for (std::int64_t ix = 0; ix < G.side; ++ix)
    for (std::int64_t iy = 0; iy < G.side; ++iy)
      if ((G.row(ix)[iy >> 6] >> (iy & 63)) & 1ULL)
        T.row(iy)[ix >> 6] |= 1ULL << (ix & 63);
  for (std::int64_t iy = 0; iy < G.side; ++iy) {
    bool any = false;
    for (std::int64_t w = 0; w < G.words && !any; ++w) any = T.row(iy)[w] != 0;
    if (any) square_row(T.row(iy), G.side, G.words, TS.row(iy));
  }
  for (std::int64_t iy = 0; iy < G.side; ++iy)
    for (std::int64_t ix = 0; ix < G.side; ++ix)
      if ((TS.row(iy)[ix >> 6] >> (ix & 63)) & 1ULL)
        out.row(ix)[iy >> 6] |= 1ULL << (iy & 63);
  return out;
}

}  // namespace

std::optional<std::pair<std::int64_t, std::int64_t>> find_product_progression(const PairSet& A,
                                                                              std::int64_t k) {
  if (A.N > 64) throw std::invalid_argument("find_product_progression: N must be <= 64");
  if (k < 1) throw std::invalid_argument("find_product_progression: k must be positive");
  if (A.pairs.empty()) return std::nullopt;

  const std::int64_t dmax =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(4.0 / (A.alpha * A.alpha) + 1e-9)));
  // wide enough for every candidate product and for the seed pairs themselves
  const std::int64_t W = std::max((A.N - 1) * dmax, A.N);
  const std::int64_t side = 2 * W + 1;
  if (side * side > kGridBitBudget)
    throw std::length_error("find_product_progression: window exceeds budget");

  Grid cur(W);
  for (auto& [x, y] : A.pairs)
    if (std::abs(x) <= W && std::abs(y) <= W) cur.set(x, y);

  std::int64_t copies = 1;
  while (copies < k) {
    Grid next = square_grid(cur);
    copies *= 2;
    if (copies >= 4 && next.rows == cur.rows) break;  // monotone from the 2nd iterate on
    cur = std::move(next);
  }

  for (std::int64_t d = 1; d <= dmax; ++d)
    for (std::int64_t dp = 1; dp <= dmax; ++dp) {
      bool ok = true;
      for (std::int64_t i = 0; i < A.N && ok; ++i)
        for (std::int64_t j = 0; j < A.N && ok; ++j) ok = cur.test(i * d, j * dp);
      if (ok) return std::make_pair(d, dp);
    }
  return std::nullopt;
}

std::int64_t additive_energy(const std::vector<GridPoint>& S1, const std::vector<GridPoint>& S2,
                             const std::vector<GridPoint>& S3, const std::vector<GridPoint>& S4,
                             std::int64_t grid) {
  if (grid < 1 || grid > (1 << 20)) throw std::invalid_argument("additive_energy: grid out of range");
  auto validate = [&](const std::vector<GridPoint>& S) {
    for (auto& [x, r] : S) {
      if (r < 0 || r >= grid) throw std::invalid_argument("additive_energy: off-grid coordinate");
      if (std::abs(x) > (1LL << 40)) throw std::invalid_argument("additive_energy: x out of range");
    }
  };
  validate(S1); validate(S2); validate(S3); validate(S4);
  if (S1.size() * S2.size() > 50'000'000 || S3.size() * S4.size() > 50'000'000)
    throw std::length_error("additive_energy: pair count exceeds budget");

  std::unordered_map<std::int64_t, std::int64_t> sums;
  sums.reserve(S1.size() * S2.size());
  for (auto& [x1, r1] : S1)
    for (auto& [x2, r2] : S2) sums[(x1 + x2) * grid + (r1 + r2) % grid] += 1;
  std::int64_t count = 0;
  for (auto& [x3, r3] : S3)
    for (auto& [x4, r4] : S4) {
      auto it = sums.find((x3 + x4) * grid + (r3 + r4) % grid);
      if (it != sums.end()) count += it->second;
    }
  return count;
}

std::map<std::int64_t, Rational> round_to_grid(const std::map<std::int64_t, double>& f, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("round_to_grid: eps must lie in (0,1)");
  const std::int64_t G = static_cast<std::int64_t>(std::floor(1.0 / eps + 1e-9));
  std::map<std::int64_t, Rational> out;
  for (auto& [x, v] : f) {
    // nearest grid index with half-way ties sent down: ceil(v*G - 1/2)
    std::int64_t r = static_cast<std::int64_t>(std::ceil(v * static_cast<double>(G) - 0.5));
    r %= G;
    if (r < 0) r += G;
    out.emplace(x, rational(r, G));
  }
  return out;
}

}  // namespace gowerslab::additive
