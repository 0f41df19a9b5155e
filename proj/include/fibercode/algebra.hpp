#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fibercode/binmatrix.hpp"
#include "fibercode/group.hpp"

namespace fibercode {

/// Element of the group algebra F2[G]: the set of group elements carrying
/// coefficient 1, stored as a fixed-width bit field.
class AlgElem {
 public:
  using Bits = std::array<std::uint64_t, words_for(kMaxGroupOrder)>;

  AlgElem() = default;
  explicit AlgElem(GroupPtr group) : group_(std::move(group)) {}

  static AlgElem zero(GroupPtr group) { return AlgElem(std::move(group)); }
  static AlgElem one(GroupPtr group) { return of(std::move(group), 0); }
  static AlgElem of(GroupPtr group, Elem g);
  // Repeated indices cancel in pairs.
  static AlgElem from_support(GroupPtr group, std::span<const Elem> support);

  const GroupPtr& group() const noexcept { return group_; }
  bool contains(Elem g) const noexcept { return (bits_[g / 64] >> (g % 64)) & 1u; }
  void toggle(Elem g) noexcept { bits_[g / 64] ^= std::uint64_t{1} << (g % 64); }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  std::size_t weight() const noexcept;
  std::vector<Elem> support() const;
  const Bits& bits() const noexcept { return bits_; }

  // Sum of element names in index order, "1" for the identity, "0" when empty.
  std::string to_string() const;

  AlgElem& operator+=(const AlgElem& other);
  friend AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
  friend AlgElem operator*(const AlgElem& a, const AlgElem& b);

  friend bool operator==(const AlgElem& a, const AlgElem& b) {
    return a.bits_ == b.bits_ && same_group(a.group_, b.group_);
  }

 private:
  GroupPtr group_;
  Bits bits_{};
};

// Sends every group element to its inverse.
AlgElem antipode(const AlgElem& a);

// Matrix of x -> a*x on coordinate columns in the group's element order.
BinMatrix left_regular(const AlgElem& a);
// Matrix of x -> x*a.
BinMatrix right_regular(const AlgElem& a);
// right_regular(base) * left_regular(fiber) without forming either factor.
BinMatrix mixed_regular(const AlgElem& base, const AlgElem& fiber);

/// Parses the element grammar: terms joined by '+', each term a product of
/// symbols (optionally separated by '*') with optional integer powers.
/// "0" is zero, "e" and "1" denote the identity; whitespace is ignored.
AlgElem parse_element(const GroupPtr& group, std::string_view text);

void require_same_group(const GroupPtr& a, const GroupPtr& b);

}  // namespace fibercode
