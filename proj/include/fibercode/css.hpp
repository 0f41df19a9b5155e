#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fibercode/complex.hpp"

namespace fibercode {

struct CssCode {
  GroupPtr group;
  BinMatrix hx;  // expanded d1
  BinMatrix hz;  // transpose of expanded d2
  std::size_t n = 0;
  std::size_t rank_hx = 0;
  std::size_t rank_hz = 0;
  std::size_t k = 0;
  bool css_ok = false;
};

/// H_X from d1, H_Z as the binary transpose of expanded d2. Throws
/// css_violation if H_X * H_Z^T != 0.
CssCode assemble_css(const TotalComplex& total);
CssCode assemble_css(BinMatrix hx, BinMatrix hz, GroupPtr group = nullptr);

struct CodeParameters {
  std::size_t n, k, rank_hx, rank_hz;
  friend bool operator==(const CodeParameters&, const CodeParameters&) = default;
};

inline CodeParameters code_parameters(const CssCode& code) {
  return {code.n, code.k, code.rank_hx, code.rank_hz};
}

inline constexpr std::size_t kDefaultWeightCap = 6;
inline constexpr std::size_t kFullEnumerationMaxLength = 28;

struct DistanceOptions {
  std::size_t weight_cap = kDefaultWeightCap;
  // Upper bound on candidate vectors examined per side.
  std::optional<std::uint64_t> budget;
  // Exhaustive certification; honoured only when n <= kFullEnumerationMaxLength.
  bool full_enumeration = false;
  // 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct SideDistance {
  // Minimum weight of a vector in ker(checks) outside span(stabilizers).
  std::optional<std::size_t> d;
  bool exact = false;
  // No logical operators exist (k = 0); d stays empty and exact is true.
  bool no_logicals = false;
  bool budget_exhausted = false;
  // Every weight up to this one was fully searched without a hit.
  std::size_t cleared_weight = 0;
  std::optional<BitVec> witness;
  std::uint64_t examined = 0;
};

enum class DistanceMethod { bounded, full_enumeration };

struct DistanceResult {
  SideDistance x;  // ker H_X outside rowspace(H_Z)
  SideDistance z;  // ker H_Z outside rowspace(H_X)
  std::size_t weight_cap = 0;
  DistanceMethod method = DistanceMethod::bounded;

  std::optional<std::size_t> d() const;
  bool exact() const { return x.exact && z.exact; }
};

/// Bounded-exact search: weights 1..cap in lexicographic position order, the
/// first logical vector found is the witness. Result is independent of the
/// thread count.
SideDistance min_logical_weight(const BinMatrix& checks, const BinMatrix& stabilizers,
                                const DistanceOptions& options);

/// Exhaustive sweep of ker(checks) for length <= kFullEnumerationMaxLength.
SideDistance min_logical_weight_full(const BinMatrix& checks, const BinMatrix& stabilizers);

DistanceResult min_distance(const CssCode& code, const DistanceOptions& options = {});

struct TwistIsoEntry {
  std::size_t generator;
  bool phi1_invertible = false;
  bool phi0_invertible = false;
  bool phi0_monomial = false;
};

struct IsoReport {
  bool applicable = false;
  std::string reason;  // why the chain isomorphism was not built
  std::vector<TwistIsoEntry> twists;
  bool all_invertible = false;
  bool square2_commutes = false;  // d2_tw * T2 == T1 * d2_untw
  bool square1_commutes = false;  // d1_tw * T1 == T0 * d1_untw
  std::size_t rank_d1_twisted = 0, rank_d2_twisted = 0;
  std::size_t rank_d1_untwisted = 0, rank_d2_untwisted = 0;
  bool ranks_equal = false;
  // Every expanded phi0 is a permutation, so twisted and untwisted distances agree.
  bool distance_certified = false;
};

IsoReport verify_chain_iso(const RMatrix& base, const RMatrix& fiber, const TwistData& twists);

}  // namespace fibercode
