#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fibercode {

/// Value in the key-value spec format (a TOML subset: strings, integers,
/// booleans and nested arrays). Every value remembers its source line.
struct TextValue {
  enum class Kind { string, integer, boolean, array };

  Kind kind = Kind::string;
  std::string str;
  std::int64_t integer = 0;
  bool boolean = false;
  std::vector<TextValue> items;
  std::size_t line = 0;

  const char* kind_name() const;
};

struct TextEntry {
  std::string key;
  TextValue value;
  std::size_t line = 0;
};

struct TextSection {
  std::string name;  // empty for keys before the first header
  std::size_t line = 0;
  std::vector<TextEntry> entries;

  const TextEntry* find(std::string_view key) const;
};

struct TextDocument {
  std::vector<TextSection> sections;

  const TextSection* find(std::string_view name) const;
};

/// Parses `[section]` headers, `key = value` lines, `#` comments and
/// multi-line arrays. Errors are parse_error with the offending line.
TextDocument parse_text_document(std::string_view text);

}  // namespace fibercode
