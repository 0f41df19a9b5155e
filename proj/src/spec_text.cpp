#include "fibercode/spec_text.hpp"

#include <cctype>
#include <limits>

#include "fibercode/error.hpp"

namespace fibercode {

const char* TextValue::kind_name() const {
  switch (kind) {
    case Kind::string: return "string";
    case Kind::integer: return "integer";
    case Kind::boolean: return "boolean";
    case Kind::array: return "array";
  }
  return "value";
}

const TextEntry* TextSection::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

const TextSection* TextDocument::find(std::string_view name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  TextDocument read() {
    TextDocument doc;
    doc.sections.push_back({"", 1, {}});
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        read_header(doc);
      } else {
        read_entry(doc.sections.back());
      }
    }
    return doc;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') ++line_;
    ++pos_;
  }

  void skip_inline_space() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }

  void skip_comment() {
    if (!eof() && peek() == '#') {
      while (!eof() && peek() != '\n') advance();
    }
  }

  // Whitespace, newlines and comments.
  void skip_blank_lines() {
    while (!eof()) {
      skip_inline_space();
      skip_comment();
      if (!eof() && peek() == '\n') {
        advance();
        continue;
      }
      break;
    }
  }

  void expect_line_end() {
    skip_inline_space();
    skip_comment();
    if (!eof() && peek() != '\n') fail(std::string("unexpected '") + peek() + "' after value");
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::parse_error, "line " + std::to_string(line_) + ": " + why);
  }

  void read_header(TextDocument& doc) {
    const std::size_t header_line = line_;
    advance();
    if (!eof() && peek() == '[') fail("arrays of tables are not supported");
    skip_inline_space();
    std::string name;
    while (!eof() && is_bare_key_char(peek())) {
      name.push_back(peek());
      advance();
    }
    skip_inline_space();
    if (eof() || peek() != ']') fail("malformed section header");
    advance();
    if (name.empty()) fail("empty section name");
    if (doc.find(name)) fail("duplicate section [" + name + "]");
    expect_line_end();
    doc.sections.push_back({name, header_line, {}});
  }

  void read_entry(TextSection& section) {
    const std::size_t entry_line = line_;
    std::string key;
    if (peek() == '"') {
      key = read_string().str;
    } else {
      while (!eof() && is_bare_key_char(peek())) {
        key.push_back(peek());
        advance();
      }
    }
    if (key.empty()) fail(std::string("expected a key, found '") + peek() + "'");
    skip_inline_space();
    if (eof() || peek() != '=') fail("expected '=' after key '" + key + "'");
    advance();
    skip_inline_space();
    TextValue value = read_value();
    expect_line_end();
    if (section.find(key)) fail("duplicate key '" + key + "'");
    section.entries.push_back({key, std::move(value), entry_line});
  }

  TextValue read_value() {
    if (eof()) fail("missing value");
    const char c = peek();
    if (c == '"' || c == '\'') return read_string();
    if (c == '[') return read_array();
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) return read_integer();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      TextValue v;
      v.line = line_;
      std::string word;
      while (!eof() && std::isalpha(static_cast<unsigned char>(peek()))) {
        word.push_back(peek());
        advance();
      }
      if (word == "true" || word == "false") {
        v.kind = TextValue::Kind::boolean;
        v.boolean = word == "true";
        return v;
      }
      fail("unquoted value '" + word + "' (strings need quotes)");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  TextValue read_string() {
    TextValue v;
    v.line = line_;
    const char quote = peek();
    advance();
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = peek();
      advance();
      if (c == quote) break;
      if (c == '\\' && quote == '"') {
        if (eof()) fail("unterminated string");
        const char esc = peek();
        advance();
        switch (esc) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unsupported escape \\") + esc);
        }
      }
      v.str.push_back(c);
    }
    return v;
  }

  TextValue read_integer() {
    TextValue v;
    v.kind = TextValue::Kind::integer;
    v.line = line_;
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      advance();
    }
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed integer");
    std::int64_t acc = 0;
    while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_')) {
      if (peek() != '_') {
        const int d = peek() - '0';
        if (acc > (std::numeric_limits<std::int64_t>::max() - d) / 10) fail("integer out of range");
        acc = acc * 10 + d;
      }
      advance();
    }
    v.integer = negative ? -acc : acc;
    return v;
  }

  TextValue read_array() {
    TextValue v;
    v.kind = TextValue::Kind::array;
    v.line = line_;
    advance();
    while (true) {
      skip_blank_lines();
      if (eof()) fail("unterminated array");
      if (peek() == ']') {
        advance();
        return v;
      }
      v.items.push_back(read_value());
      skip_blank_lines();
      if (eof()) fail("unterminated array");
      if (peek() == ',') {
        advance();
      } else if (peek() != ']') {
        fail(std::string("expected ',' or ']' in array, found '") + peek() + "'");
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

TextDocument parse_text_document(std::string_view text) { return Reader(text).read(); }

}  // namespace fibercode
