#include "fibercode/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <optional>

#include "fibercode/error.hpp"

namespace fibercode {

void require_same_group(const GroupPtr& a, const GroupPtr& b) {
  if (!same_group(a, b)) throw Error(Errc::group_mismatch, "operands live over different groups");
}

AlgElem AlgElem::of(GroupPtr group, Elem g) {
  if (!group || g >= group->order()) throw Error(Errc::invalid_argument, "group element out of range");
  AlgElem a(std::move(group));
  a.toggle(g);
  return a;
}

AlgElem AlgElem::from_support(GroupPtr group, std::span<const Elem> support) {
  AlgElem a(std::move(group));
  for (Elem g : support) {
    if (g >= a.group_->order()) throw Error(Errc::invalid_argument, "group element out of range");
    a.toggle(g);
  }
  return a;
}

bool AlgElem::is_zero() const noexcept {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

bool AlgElem::is_one() const noexcept { return weight() == 1 && contains(0); }

std::size_t AlgElem::weight() const noexcept {
  std::size_t w = 0;
  for (auto word : bits_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

std::vector<Elem> AlgElem::support() const {
  std::vector<Elem> out;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    for (std::uint64_t b = bits_[w]; b; b &= b - 1) {
      out.push_back(w * 64 + static_cast<Elem>(std::countr_zero(b)));
    }
  }
  return out;
}

std::string AlgElem::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (Elem g : support()) {
    if (!out.empty()) out += "+";
    out += g == 0 ? std::string("1") : group_->name(g);
  }
  return out;
}

AlgElem& AlgElem::operator+=(const AlgElem& other) {
  require_same_group(group_, other.group_);
  for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] ^= other.bits_[w];
  return *this;
}

AlgElem operator*(const AlgElem& a, const AlgElem& b) {
  require_same_group(a.group_, b.group_);
  AlgElem out(a.group_);
  const auto sb = b.support();
  for (Elem x : a.support()) {
    for (Elem y : sb) out.toggle(a.group_->mul(x, y));
  }
  return out;
}

AlgElem antipode(const AlgElem& a) {
  AlgElem out(a.group());
  for (Elem g : a.support()) out.toggle(a.group()->inverse(g));
  return out;
}

BinMatrix left_regular(const AlgElem& a) {
  const Group& g = *a.group();
  BinMatrix m(g.order(), g.order());
  const auto sa = a.support();
  for (Elem col = 0; col < g.order(); ++col) {
    for (Elem h : sa) m.flip(g.mul(h, col), col);
  }
  return m;
}

BinMatrix right_regular(const AlgElem& a) {
  const Group& g = *a.group();
  BinMatrix m(g.order(), g.order());
  const auto sa = a.support();
  for (Elem col = 0; col < g.order(); ++col) {
    for (Elem h : sa) m.flip(g.mul(col, h), col);
  }
  return m;
}

BinMatrix mixed_regular(const AlgElem& base, const AlgElem& fiber) {
  require_same_group(base.group(), fiber.group());
  const Group& g = *base.group();
  BinMatrix m(g.order(), g.order());
  const auto sb = base.support();
  const auto sf = fiber.support();
  // Column x maps to f*x*b.
  for (Elem col = 0; col < g.order(); ++col) {
    for (Elem h : sf) {
      const Elem hx = g.mul(h, col);
      for (Elem k : sb) m.flip(g.mul(hx, k), col);
    }
  }
  return m;
}

namespace {

class ElementParser {
 public:
  ElementParser(const GroupPtr& group, std::string_view text) : group_(group), text_(text) {}

  AlgElem parse() {
    Accumulator sum(group_);
    skip_space();
    if (pos_ == text_.size()) fail("empty element");
    while (true) {
      sum.toggle_all(parse_term());
      skip_space();
      if (pos_ == text_.size()) break;
      if (text_[pos_] != '+') fail("expected '+'");
      ++pos_;
    }
    return sum.value;
  }

 private:
  struct Accumulator {
    AlgElem value;
    explicit Accumulator(const GroupPtr& g) : value(g) {}
    void toggle_all(std::optional<Elem> term) {
      if (term) value.toggle(*term);
    }
  };

  // Returns nullopt for the zero term "0".
  std::optional<Elem> parse_term() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '0') {
      ++pos_;
      return std::nullopt;
    }
    Elem acc = 0;
    bool any = false;
    while (true) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] == '+') break;
      if (text_[pos_] == '*') {
        if (!any) fail("'*' without a left factor");
        ++pos_;
        skip_space();
      }
      Elem factor = parse_atom();
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        factor = power(factor, parse_exponent());
      }
      acc = group_->mul(acc, factor);
      any = true;
    }
    if (!any) fail("empty term");
    return acc;
  }

  Elem parse_atom() {
    if (text_[pos_] == '1' && !(pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return 0;
    }
    std::size_t best_len = 0;
    Elem best = 0;
    auto consider = [&](std::string_view name, Elem e) {
      if (name.size() > best_len && text_.substr(pos_, name.size()) == name) {
        best_len = name.size();
        best = e;
      }
    };
    consider("e", 0);
    for (const auto& sym : group_->symbols()) consider(sym.name, sym.elem);
    if (best_len == 0) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
      if (end == pos_) ++end;
      throw Error(Errc::unknown_token, "unknown token '" + std::string(text_.substr(pos_, end - pos_)) +
                                           "' in element \"" + std::string(text_) + "\"");
    }
    pos_ += best_len;
    return best;
  }

  long long parse_exponent() {
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected exponent");
    long long k = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      k = (k * 10 + (text_[pos_] - '0')) % static_cast<long long>(group_->order());
      ++pos_;
    }
    return negative ? -k : k;
  }

  Elem power(Elem g, long long k) const {
    if (k < 0) {
      g = group_->inverse(g);
      k = -k;
    }
    Elem acc = 0;
    for (long long i = 0; i < k; ++i) acc = group_->mul(acc, g);
    return acc;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::parse_error, why + " at offset " + std::to_string(pos_) + " in element \"" +
                                       std::string(text_) + "\"");
  }

  const GroupPtr& group_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgElem parse_element(const GroupPtr& group, std::string_view text) {
  if (!group) throw Error(Errc::invalid_argument, "no group");
  return ElementParser(group, text).parse();
}

}  // namespace fibercode
