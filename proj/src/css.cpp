#include "fibercode/css.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <thread>

#include "fibercode/error.hpp"

namespace fibercode {
namespace {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t acc = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // acc * (n-k+i) / i stays integral; divide by the gcd first to delay overflow.
    const std::uint64_t num = n - k + i;
    const std::uint64_t g = std::gcd(acc, static_cast<std::uint64_t>(i));
    const std::uint64_t a = acc / g, den = i / g;
    const std::uint64_t b = num / den;  // den divides num once acc's share is removed
    if (b != 0 && a > UINT64_MAX / b) return UINT64_MAX;
    acc = a * b;
  }
  return acc;
}

// Lexicographic order of equal-size position sets encoded as masks.
bool lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  return diff != 0 && (a & (diff & (~diff + 1))) != 0;
}

std::size_t logical_count(const BinMatrix& checks, const BinMatrix& stabilizers) {
  const std::size_t n = checks.cols();
  const std::size_t used = gf2_rank(checks) + gf2_rank(stabilizers);
  return used >= n ? 0 : n - used;
}

void require_compatible(const BinMatrix& checks, const BinMatrix& stabilizers) {
  if (checks.cols() != stabilizers.cols()) {
    throw Error(Errc::dimension_mismatch, "check and stabilizer matrices have different lengths");
  }
  if (!gf2_mul(checks, stabilizers.transpose()).is_zero()) {
    throw Error(Errc::css_violation, "stabilizers are not in the kernel of the checks");
  }
}

// Searches all weight-w vectors whose first position is `first`, in
// lexicographic order; returns the first logical vector found.
class WeightSearch {
 public:
  WeightSearch(const BinMatrix& checks, const RowSpace& stabilizers, std::size_t weight)
      : n_(checks.cols()), sw_(words_for(checks.rows())), weight_(weight), space_(stabilizers) {
    const BinMatrix cols = checks.transpose();
    columns_.resize(n_ * sw_);
    for (std::size_t c = 0; c < n_; ++c) {
      const auto words = cols.row_words(c);
      std::copy(words.begin(), words.end(), columns_.begin() + static_cast<std::ptrdiff_t>(c * sw_));
    }
  }

  std::optional<std::vector<std::size_t>> from(std::size_t first) const {
    if (first + weight_ > n_) return std::nullopt;
    std::vector<std::size_t> pos(weight_);
    std::vector<std::uint64_t> syn((weight_ + 1) * sw_, 0);
    pos[0] = first;
    xor_into(syn, 1, 0, first);
    if (descend(pos, syn, 1)) return pos;
    return std::nullopt;
  }

 private:
  void xor_into(std::vector<std::uint64_t>& syn, std::size_t level, std::size_t prev, std::size_t col) const {
    for (std::size_t w = 0; w < sw_; ++w) syn[level * sw_ + w] = syn[prev * sw_ + w] ^ columns_[col * sw_ + w];
  }

  bool descend(std::vector<std::size_t>& pos, std::vector<std::uint64_t>& syn, std::size_t depth) const {
    if (depth == weight_) return is_logical(pos, syn);
    for (std::size_t c = pos[depth - 1] + 1; c + (weight_ - depth) <= n_; ++c) {
      pos[depth] = c;
      xor_into(syn, depth + 1, depth, c);
      if (descend(pos, syn, depth + 1)) return true;
    }
    return false;
  }

  bool is_logical(const std::vector<std::size_t>& pos, const std::vector<std::uint64_t>& syn) const {
    for (std::size_t w = 0; w < sw_; ++w) {
      if (syn[weight_ * sw_ + w]) return false;
    }
    BitVec x = BitVec::from_positions(n_, pos);
    space_.reduce(x.words());
    return !x.is_zero();
  }

  std::size_t n_, sw_, weight_;
  const RowSpace& space_;
  std::vector<std::uint64_t> columns_;
};

std::optional<std::vector<std::size_t>> search_weight(const BinMatrix& checks, const RowSpace& space,
                                                      std::size_t weight, unsigned threads) {
  const std::size_t n = checks.cols();
  const WeightSearch search(checks, space, weight);
  if (threads <= 1 || binomial(n, weight) < 50000) {
    for (std::size_t first = 0; first < n; ++first) {
      if (auto hit = search.from(first)) return hit;
    }
    return std::nullopt;
  }
  // Workers take first positions in increasing order; the hit with the
  // smallest first position is the sequential answer.
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{n};
  std::vector<std::optional<std::vector<std::size_t>>> hits(n);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t first = next.fetch_add(1);
        if (first >= n || first > best.load()) return;
        if (auto hit = search.from(first)) {
          hits[first] = std::move(hit);
          std::size_t cur = best.load();
          while (first < cur && !best.compare_exchange_weak(cur, first)) {
          }
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  const std::size_t b = best.load();
  if (b < n) return hits[b];
  return std::nullopt;
}

}  // namespace

CssCode assemble_css(BinMatrix hx, BinMatrix hz, GroupPtr group) {
  if (hx.cols() != hz.cols()) {
    throw Error(Errc::dimension_mismatch, "H_X has " + std::to_string(hx.cols()) + " columns, H_Z has " +
                                              std::to_string(hz.cols()));
  }
  if (!gf2_mul(hx, hz.transpose()).is_zero()) {
    throw Error(Errc::css_violation, "H_X * H_Z^T is nonzero; the checks do not commute");
  }
  CssCode code;
  code.group = std::move(group);
  code.n = hx.cols();
  code.rank_hx = gf2_rank(hx);
  code.rank_hz = gf2_rank(hz);
  code.k = code.n - code.rank_hx - code.rank_hz;
  code.hx = std::move(hx);
  code.hz = std::move(hz);
  code.css_ok = true;
  return code;
}

CssCode assemble_css(const TotalComplex& total) {
  return assemble_css(expand_bientry_matrix(total.d1), expand_bientry_matrix(total.d2).transpose(), total.group);
}

std::optional<std::size_t> DistanceResult::d() const {
  if (x.d && z.d) return std::min(*x.d, *z.d);
  if (x.d && z.cleared_weight >= *x.d) return x.d;
  if (z.d && x.cleared_weight >= *z.d) return z.d;
  return std::nullopt;
}

SideDistance min_logical_weight(const BinMatrix& checks, const BinMatrix& stabilizers,
                                const DistanceOptions& options) {
  if (options.weight_cap == 0) throw Error(Errc::invalid_argument, "weight cap must be at least 1");
  require_compatible(checks, stabilizers);
  SideDistance out;
  if (logical_count(checks, stabilizers) == 0) {
    out.no_logicals = true;
    out.exact = true;
    return out;
  }
  const std::size_t n = checks.cols();
  const RowSpace space(stabilizers);
  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  for (std::size_t w = 1; w <= std::min(options.weight_cap, n); ++w) {
    const std::uint64_t count = binomial(n, w);
    if (options.budget && (count > *options.budget || out.examined > *options.budget - count)) {
      out.budget_exhausted = true;
      return out;
    }
    out.examined += count;
    if (auto hit = search_weight(checks, space, w, threads)) {
      out.d = w;
      out.exact = true;
      out.witness = BitVec::from_positions(n, *hit);
      return out;
    }
    out.cleared_weight = w;
  }
  return out;
}

SideDistance min_logical_weight_full(const BinMatrix& checks, const BinMatrix& stabilizers) {
  const std::size_t n = checks.cols();
  if (n > kFullEnumerationMaxLength) {
    throw Error(Errc::invalid_argument, "full enumeration is limited to n <= " +
                                            std::to_string(kFullEnumerationMaxLength));
  }
  require_compatible(checks, stabilizers);
  SideDistance out;
  out.exact = true;

  // Stabilizer basis first, then kernel vectors extending it: the extra
  // generators are logical representatives.
  std::vector<std::uint64_t> gens, echelon;
  std::vector<std::size_t> pivots;
  auto insert = [&](std::uint64_t v) {
    const std::uint64_t orig = v;
    for (std::size_t i = 0; i < echelon.size(); ++i) {
      if ((v >> pivots[i]) & 1u) v ^= echelon[i];
    }
    if (!v) return false;
    pivots.push_back(static_cast<std::size_t>(std::countr_zero(v)));
    echelon.push_back(v);
    gens.push_back(orig);
    return true;
  };
  for (std::size_t r = 0; r < stabilizers.rows(); ++r) insert(n ? stabilizers.row_words(r)[0] : 0);
  const std::size_t stab_dim = gens.size();
  for (const auto& v : kernel_basis(checks)) insert(n ? v.words()[0] : 0);
  const std::size_t dim = gens.size();
  if (dim == stab_dim) {
    out.no_logicals = true;
    return out;
  }

  std::uint64_t x = 0, coeff = 0, best = 0;
  std::size_t best_weight = n + 1;
  const std::uint64_t total = std::uint64_t{1} << dim;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(i));
    x ^= gens[bit];
    coeff ^= std::uint64_t{1} << bit;
    if ((coeff >> stab_dim) == 0) continue;
    const auto w = static_cast<std::size_t>(std::popcount(x));
    if (w < best_weight || (w == best_weight && lex_less(x, best))) {
      best_weight = w;
      best = x;
    }
  }
  out.examined = total - 1;
  out.d = best_weight;
  out.cleared_weight = best_weight - 1;
  BitVec witness(n);
  witness.words()[0] = best;
  out.witness = witness;
  return out;
}

DistanceResult min_distance(const CssCode& code, const DistanceOptions& options) {
  DistanceResult result;
  result.weight_cap = options.weight_cap;
  if (options.full_enumeration && code.n <= kFullEnumerationMaxLength) {
    result.method = DistanceMethod::full_enumeration;
    result.x = min_logical_weight_full(code.hx, code.hz);
    result.z = min_logical_weight_full(code.hz, code.hx);
  } else {
    result.x = min_logical_weight(code.hx, code.hz, options);
    result.z = min_logical_weight(code.hz, code.hx, options);
  }
  return result;
}

IsoReport verify_chain_iso(const RMatrix& base, const RMatrix& fiber, const TwistData& twists) {
  IsoReport report;
  const GroupPtr& g = base.group();
  const std::size_t l = g->order();
  const std::size_t m = base.cols(), n = base.rows(), p = fiber.cols(), q = fiber.rows();

  const bool flat = check_flatness(fiber, twists).flat;
  const TotalComplex tw = build_twisted_complex(base, fiber, twists, /*allow_nonflat=*/true);
  const TotalComplex untw = build_twisted_complex(base, fiber, TwistData::identity(g, m, n, p, q));
  const BinMatrix d1_tw = expand_bientry_matrix(tw.d1), d2_tw = expand_bientry_matrix(tw.d2);
  const BinMatrix d1_un = expand_bientry_matrix(untw.d1), d2_un = expand_bientry_matrix(untw.d2);
  report.rank_d1_twisted = gf2_rank(d1_tw);
  report.rank_d2_twisted = gf2_rank(d2_tw);
  report.rank_d1_untwisted = gf2_rank(d1_un);
  report.rank_d2_untwisted = gf2_rank(d2_un);
  report.ranks_equal = report.rank_d1_twisted == report.rank_d1_untwisted &&
                       report.rank_d2_twisted == report.rank_d2_untwisted;

  if (!twists.column_uniform()) {
    report.reason = "per-entry twists differ within a column; no generator-wise isomorphism";
    return report;
  }

  std::vector<BinMatrix> inv1, inv0;
  report.all_invertible = true;
  bool all_monomial = true;
  for (std::size_t j = 0; j < m; ++j) {
    const Twist& t = twists.column(j);
    const BinMatrix e1 = expand_twist(t.phi1, t.transport);
    const BinMatrix e0 = expand_twist(t.phi0, t.transport);
    auto i1 = gf2_inverse(e1);
    auto i0 = gf2_inverse(e0);
    TwistIsoEntry entry{j, i1.has_value(), i0.has_value(), is_monomial(e0)};
    report.all_invertible = report.all_invertible && entry.phi1_invertible && entry.phi0_invertible;
    all_monomial = all_monomial && entry.phi0_monomial;
    report.twists.push_back(entry);
    if (i1 && i0) {
      inv1.push_back(std::move(*i1));
      inv0.push_back(std::move(*i0));
    }
  }
  if (!flat) {
    report.reason = "twists are not flat";
    return report;
  }
  if (!report.all_invertible) {
    report.reason = "a twist is not invertible; the isomorphism hypothesis fails";
    return report;
  }

  report.applicable = true;
  BinMatrix t2(m * p * l, m * p * l);
  BinMatrix t1(tw.rank_c1() * l, tw.rank_c1() * l);
  for (std::size_t j = 0; j < m; ++j) {
    t2.set_block(j * p * l, j * p * l, inv1[j]);
    t1.set_block(j * q * l, j * q * l, inv0[j]);
  }
  t1.set_block(m * q * l, m * q * l, BinMatrix::identity(n * p * l));
  report.square2_commutes = gf2_mul(d2_tw, t2) == gf2_mul(t1, d2_un);
  report.square1_commutes = gf2_mul(d1_tw, t1) == d1_un;
  report.distance_certified = report.square1_commutes && report.square2_commutes && all_monomial;
  return report;
}

}  // namespace fibercode
