#include "fibercode/group.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "fibercode/error.hpp"

namespace fibercode {
namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_valid_name(const std::string& s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '+' || c == '*' || c == ',' ||
           c == '"' || c == '[' || c == ']';
  });
}

std::string power_name(const std::string& base, std::size_t k) {
  if (k == 0) return "";
  if (k == 1) return base;
  return base + "^" + std::to_string(k);
}

}  // namespace

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::group_mismatch: return "group_mismatch";
    case Errc::group_too_large: return "group_too_large";
    case Errc::group_identity: return "group_identity";
    case Errc::group_missing_inverse: return "group_missing_inverse";
    case Errc::group_not_latin: return "group_not_latin";
    case Errc::group_not_associative: return "group_not_associative";
    case Errc::parse_error: return "parse_error";
    case Errc::unknown_group_kind: return "unknown_group_kind";
    case Errc::unknown_token: return "unknown_token";
    case Errc::ragged_matrix: return "ragged_matrix";
    case Errc::twist_mode_conflict: return "twist_mode_conflict";
    case Errc::missing_assignment: return "missing_assignment";
    case Errc::io_error: return "io_error";
    case Errc::not_flat: return "not_flat";
    case Errc::css_violation: return "css_violation";
    case Errc::empty_pool: return "empty_pool";
  }
  return "unknown";
}

std::optional<Elem> Group::find(std::string_view name) const {
  for (Elem a = 0; a < names_.size(); ++a) {
    if (names_[a] == name) return a;
  }
  return std::nullopt;
}

std::vector<std::vector<Elem>> Group::table() const {
  std::vector<std::vector<Elem>> out(order(), std::vector<Elem>(order()));
  for (Elem a = 0; a < order(); ++a) {
    for (Elem b = 0; b < order(); ++b) out[a][b] = mul(a, b);
  }
  return out;
}

GroupPtr group_from_table(std::vector<std::string> element_names,
                          const std::vector<std::vector<Elem>>& mul_table) {
  const std::size_t l = element_names.size();
  if (l == 0) throw Error(Errc::invalid_argument, "group must have at least one element");
  if (l > kMaxGroupOrder) {
    throw Error(Errc::group_too_large, "group order " + std::to_string(l) + " exceeds the limit of " +
                                           std::to_string(kMaxGroupOrder));
  }
  if (element_names[0] != "e") {
    throw Error(Errc::invalid_argument, "element 0 must be the identity named \"e\", got \"" +
                                            element_names[0] + "\"");
  }
  std::set<std::string> seen;
  for (const auto& name : element_names) {
    if (!is_valid_name(name)) throw Error(Errc::invalid_argument, "invalid element name \"" + name + "\"");
    if (name == "1") throw Error(Errc::invalid_argument, "\"1\" is reserved for the identity");
    if (!seen.insert(name).second) throw Error(Errc::invalid_argument, "duplicate element name \"" + name + "\"");
  }
  if (mul_table.size() != l) {
    throw Error(Errc::dimension_mismatch, "multiplication table has " + std::to_string(mul_table.size()) +
                                              " rows, expected " + std::to_string(l));
  }
  for (std::size_t a = 0; a < l; ++a) {
    if (mul_table[a].size() != l) {
      throw Error(Errc::dimension_mismatch, "multiplication table row " + std::to_string(a) + " has " +
                                                std::to_string(mul_table[a].size()) + " entries, expected " +
                                                std::to_string(l));
    }
    for (Elem v : mul_table[a]) {
      if (v >= l) throw Error(Errc::invalid_argument, "table entry " + std::to_string(v) + " out of range");
    }
  }

  for (Elem a = 0; a < l; ++a) {
    if (mul_table[0][a] != a || mul_table[a][0] != a) {
      throw Error(Errc::group_identity, "element 0 is not a two-sided identity (fails at element " +
                                            element_names[a] + ")");
    }
  }

  std::vector<Elem> inverse(l);
  for (Elem a = 0; a < l; ++a) {
    auto it = std::find(mul_table[a].begin(), mul_table[a].end(), Elem{0});
    const Elem b = static_cast<Elem>(it - mul_table[a].begin());
    if (it == mul_table[a].end() || mul_table[b][a] != 0) {
      throw Error(Errc::group_missing_inverse, "element " + element_names[a] + " has no two-sided inverse");
    }
    inverse[a] = b;
  }

  std::vector<char> mark(l);
  for (Elem a = 0; a < l; ++a) {
    std::fill(mark.begin(), mark.end(), 0);
    for (Elem b = 0; b < l; ++b) {
      if (mark[mul_table[a][b]]++) {
        throw Error(Errc::group_not_latin, "row " + element_names[a] + " repeats an element");
      }
    }
    std::fill(mark.begin(), mark.end(), 0);
    for (Elem b = 0; b < l; ++b) {
      if (mark[mul_table[b][a]]++) {
        throw Error(Errc::group_not_latin, "column " + element_names[a] + " repeats an element");
      }
    }
  }

  for (Elem a = 0; a < l; ++a) {
    for (Elem b = 0; b < l; ++b) {
      const Elem ab = mul_table[a][b];
      for (Elem c = 0; c < l; ++c) {
        if (mul_table[ab][c] != mul_table[a][mul_table[b][c]]) {
          throw Error(Errc::group_not_associative, "(" + element_names[a] + "*" + element_names[b] + ")*" +
                                                       element_names[c] + " != " + element_names[a] + "*(" +
                                                       element_names[b] + "*" + element_names[c] + ")");
        }
      }
    }
  }

  auto g = std::shared_ptr<Group>(new Group());
  g->names_ = std::move(element_names);
  g->table_.reserve(l * l);
  for (const auto& row : mul_table) g->table_.insert(g->table_.end(), row.begin(), row.end());
  g->inverse_ = std::move(inverse);
  for (Elem a = 1; a < l; ++a) {
    if (is_identifier(g->names_[a])) g->symbols_.push_back({g->names_[a], a});
  }
  return g;
}

GroupPtr cyclic_group(std::size_t order) {
  if (order == 0) throw Error(Errc::invalid_argument, "cyclic group order must be at least 1");
  if (order > kMaxGroupOrder) {
    throw Error(Errc::group_too_large, "cyclic group order " + std::to_string(order) + " exceeds the limit");
  }
  std::vector<std::string> names{"e"};
  for (std::size_t k = 1; k < order; ++k) names.push_back(power_name("g", k));
  std::vector<std::vector<Elem>> table(order, std::vector<Elem>(order));
  for (Elem a = 0; a < order; ++a) {
    for (Elem b = 0; b < order; ++b) table[a][b] = (a + b) % order;
  }
  auto g = std::const_pointer_cast<Group>(group_from_table(std::move(names), table));
  g->kind_ = "cyclic";
  g->parameter_ = order;
  g->symbols_.clear();
  if (order > 1) g->symbols_.push_back({"g", 1});
  return g;
}

GroupPtr dihedral_group(std::size_t n) {
  if (n < 2) throw Error(Errc::invalid_argument, "dihedral group D_n needs n >= 2");
  if (2 * n > kMaxGroupOrder) {
    throw Error(Errc::group_too_large, "dihedral group D_" + std::to_string(n) + " exceeds the order limit");
  }
  // r^a s^b sits at index b*n + a.
  std::vector<std::string> names;
  for (std::size_t b = 0; b < 2; ++b) {
    for (std::size_t a = 0; a < n; ++a) {
      std::string name = power_name("r", a) + (b ? "s" : "");
      names.push_back(name.empty() ? "e" : name);
    }
  }
  std::vector<std::vector<Elem>> table(2 * n, std::vector<Elem>(2 * n));
  for (Elem x = 0; x < 2 * n; ++x) {
    const std::size_t a = x % n, b = x / n;
    for (Elem y = 0; y < 2 * n; ++y) {
      const std::size_t c = y % n, d = y / n;
      // s r^c = r^{-c} s
      const std::size_t rot = b == 0 ? (a + c) % n : (a + n - c) % n;
      table[x][y] = ((b + d) % 2) * n + rot;
    }
  }
  auto g = std::const_pointer_cast<Group>(group_from_table(std::move(names), table));
  g->kind_ = "dihedral";
  g->parameter_ = n;
  g->symbols_ = {{"r", 1}, {"s", n}};
  return g;
}

bool same_group(const GroupPtr& a, const GroupPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace fibercode
