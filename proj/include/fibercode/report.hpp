#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "fibercode/css.hpp"
#include "fibercode/error.hpp"
#include "fibercode/spec.hpp"

namespace fibercode {

using Json = nlohmann::json;

/// Command-line adjustments applied on top of the spec's [options].
struct Overrides {
  std::optional<std::size_t> weight_cap;
  bool full_enumeration = false;
  bool allow_nonflat = false;
  std::optional<TransposeMode> lp_transpose;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  bool timing = false;
  unsigned threads = 0;
};

CodeOptions resolve_options(const CodeSpec& spec, const Overrides& overrides);

struct BuiltCode {
  TotalComplex complex;
  FlatnessReport flatness;
  CssCode css;
};

/// Builds the code described by `spec`. Throws ReportFailure when the twists
/// are not flat (without override) or the checks do not commute.
BuiltCode build_code(const CodeSpec& spec, const CodeOptions& options);

/// Error that carries the part of the report computed before the failure.
class ReportFailure : public Error {
 public:
  ReportFailure(Errc code, const std::string& message, Json partial)
      : Error(code, message), partial_(std::move(partial)) {}
  const Json& partial() const noexcept { return partial_; }

 private:
  Json partial_;
};

Json run_report(const CodeSpec& spec, const Overrides& overrides);
Json flatness_report(const CodeSpec& spec, const Overrides& overrides);
Json distance_report(const CodeSpec& spec, const Overrides& overrides);
Json iso_report(const CodeSpec& spec, const Overrides& overrides);

enum class MatrixTarget { hx, hz, d1, d2 };

std::optional<MatrixTarget> parse_matrix_target(std::string_view name);
BinMatrix export_matrix(const BuiltCode& code, MatrixTarget target);

/// Ranks candidate per-column twist tuples drawn from `settings.pool`.
Json search_twists(const CodeSpec& spec, const SearchSettings& settings, const Overrides& overrides);

/// Sorted keys, two-space indent, trailing newline.
std::string serialize(const Json& report);

}  // namespace fibercode
