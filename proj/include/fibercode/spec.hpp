#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibercode/complex.hpp"
#include "fibercode/css.hpp"

namespace fibercode {

enum class Construction { twisted, lifted_product };

const char* construction_name(Construction c);

struct CodeOptions {
  std::size_t weight_cap = kDefaultWeightCap;
  bool full_enumeration = false;
  bool allow_nonflat = false;
  TransposeMode lp_transpose = TransposeMode::plain;
  Construction construction = Construction::twisted;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
};

enum class PoolKind { group_scalars, low_weight, list };

const char* pool_kind_name(PoolKind kind);

struct SearchSettings {
  PoolKind pool = PoolKind::group_scalars;
  std::vector<Twist> list;  // PoolKind::list
  std::size_t max_support = 1;
  std::size_t max_candidates = 4096;
  // Twist matrices generated per side before the low-weight pool is cut short.
  std::size_t max_pool_matrices = 250000;
  std::size_t top = 3;
  std::size_t report_limit = 50;
};

/// A fully validated code description.
struct CodeSpec {
  GroupPtr group;
  RMatrix base;   // n x m
  RMatrix fiber;  // q x p
  TwistData twists;
  // "identity", "per_column", "per_entry" or "connection".
  std::string twist_source;
  FiberAction connection_action = FiberAction::right_translation;
  CodeOptions options;
  std::optional<SearchSettings> search;
  std::string digest;
};

/// Parses and validates a code spec document. Diagnostics name the section,
/// the line and the offending token.
CodeSpec parse_code_spec(std::string_view text);
CodeSpec load_code_spec(const std::filesystem::path& path);

/// Twist pool document: `[pool]` with parallel arrays `phi1` and `phi0`.
std::vector<Twist> parse_twist_pool(std::string_view text, const CodeSpec& spec);

std::string input_digest(std::string_view text);

std::string read_file(const std::filesystem::path& path);

}  // namespace fibercode
