#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fibercode {

using Elem = std::size_t;

inline constexpr std::size_t kMaxGroupOrder = 512;

// A name the element parser accepts, bound to a group element.
struct Symbol {
  std::string name;
  Elem elem;
};

/// A finite group given by its full multiplication table.
///
/// Element 0 is always the identity and is named "e". Tables are validated
/// on construction (identity law, two-sided inverses, Latin rows and
/// columns, associativity), so a Group value is always a group.
class Group {
 public:
  std::size_t order() const noexcept { return names_.size(); }
  Elem mul(Elem a, Elem b) const noexcept { return table_[a * order() + b]; }
  Elem inverse(Elem a) const noexcept { return inverse_[a]; }
  Elem identity() const noexcept { return 0; }

  const std::string& name(Elem a) const { return names_.at(a); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Elem> find(std::string_view name) const;

  // "cyclic", "dihedral" or "table".
  const std::string& kind() const noexcept { return kind_; }
  // Constructor parameter (cyclic order or dihedral n); zero for tables.
  std::size_t parameter() const noexcept { return parameter_; }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

  std::vector<std::vector<Elem>> table() const;

  // Two groups are equal when names and tables agree entry for entry.
  bool operator==(const Group& other) const {
    return names_ == other.names_ && table_ == other.table_;
  }

 private:
  friend std::shared_ptr<const Group> group_from_table(std::vector<std::string>,
                                                       const std::vector<std::vector<Elem>>&);
  friend std::shared_ptr<const Group> cyclic_group(std::size_t);
  friend std::shared_ptr<const Group> dihedral_group(std::size_t);

  Group() = default;

  std::vector<std::string> names_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<Symbol> symbols_;
  std::string kind_ = "table";
  std::size_t parameter_ = 0;
};

using GroupPtr = std::shared_ptr<const Group>;

/// Z_order with elements e, g, g^2, ...
GroupPtr cyclic_group(std::size_t order);

/// D_n of order 2n, ordered e, r, ..., r^{n-1}, s, rs, ..., r^{n-1}s.
/// Names multiply left to right: "rs" is r*s.
GroupPtr dihedral_group(std::size_t n);

/// Validates an explicit table. Identity must sit at index 0 under the name "e".
GroupPtr group_from_table(std::vector<std::string> element_names,
                          const std::vector<std::vector<Elem>>& mul_table);

bool same_group(const GroupPtr& a, const GroupPtr& b);

}  // namespace fibercode
