#include "fibercode/spec.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "fibercode/error.hpp"
#include "fibercode/spec_text.hpp"

namespace fibercode {
namespace {

using Kind = TextValue::Kind;

std::string where(const std::string& section, std::size_t line) {
  return "section [" + (section.empty() ? std::string("root") : section) + "], line " + std::to_string(line) + ": ";
}

// Runs `fn`, prefixing any error with the section and line it came from.
template <typename Fn>
auto in_context(const std::string& section, std::size_t line, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    const std::string what = e.what();
    if (what.rfind("section [", 0) == 0) throw;
    throw Error(e.code(), where(section, line) + what);
  }
}

[[noreturn]] void bad_type(const TextValue& v, const char* expected) {
  throw Error(Errc::parse_error, std::string("expected ") + expected + ", found " + v.kind_name());
}

const std::string& as_string(const TextValue& v) {
  if (v.kind != Kind::string) bad_type(v, "a string");
  return v.str;
}

bool as_bool(const TextValue& v) {
  if (v.kind != Kind::boolean) bad_type(v, "true or false");
  return v.boolean;
}

std::uint64_t as_count(const TextValue& v, std::uint64_t min_value) {
  if (v.kind != Kind::integer) bad_type(v, "an integer");
  if (v.integer < 0 || static_cast<std::uint64_t>(v.integer) < min_value) {
    throw Error(Errc::parse_error, "value " + std::to_string(v.integer) + " must be at least " + std::to_string(min_value));
  }
  return static_cast<std::uint64_t>(v.integer);
}

const std::vector<TextValue>& as_array(const TextValue& v) {
  if (v.kind != Kind::array) bad_type(v, "an array");
  return v.items;
}

void reject_unknown_keys(const TextSection& section, std::initializer_list<std::string_view> known) {
  for (const auto& e : section.entries) {
    if (std::find(known.begin(), known.end(), e.key) == known.end()) {
      throw Error(Errc::parse_error, where(section.name, e.line) + "unknown key '" + e.key + "'");
    }
  }
}

const TextSection& require_section(const TextDocument& doc, const std::string& name) {
  const TextSection* s = doc.find(name);
  if (!s) throw Error(Errc::parse_error, "missing section [" + name + "]");
  return *s;
}

const TextEntry& require_key(const TextSection& section, const std::string& key) {
  const TextEntry* e = section.find(key);
  if (!e) throw Error(Errc::parse_error, where(section.name, section.line) + "missing key '" + key + "'");
  return *e;
}

// Nested string arrays (integers 0 and 1 are accepted as shorthand).
RMatrix parse_matrix(const GroupPtr& group, const TextValue& v, const std::string& section, const char* what) {
  return in_context(section, v.line, [&] {
    const auto& rows = as_array(v);
    if (rows.empty()) throw Error(Errc::parse_error, std::string(what) + " has no rows");
    std::vector<std::vector<AlgElem>> parsed;
    std::size_t width = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& row = in_context(section, rows[r].line, [&]() -> const std::vector<TextValue>& {
        return as_array(rows[r]);
      });
      if (r == 0) width = row.size();
      if (row.empty() || row.size() != width) {
        throw Error(Errc::ragged_matrix, where(section, rows[r].line) + std::string(what) + " row " +
                                             std::to_string(r) + " has " + std::to_string(row.size()) +
                                             " entries, expected " + std::to_string(width));
      }
      std::vector<AlgElem> out;
      for (const auto& cell : row) {
        out.push_back(in_context(section, cell.line, [&] {
          if (cell.kind == Kind::integer && (cell.integer == 0 || cell.integer == 1)) {
            return cell.integer ? AlgElem::one(group) : AlgElem::zero(group);
          }
          return parse_element(group, as_string(cell));
        }));
      }
      parsed.push_back(std::move(out));
    }
    return RMatrix::from_rows(group, parsed);
  });
}

std::vector<RMatrix> parse_matrix_list(const GroupPtr& group, const TextValue& v, const std::string& section,
                                       const char* what) {
  std::vector<RMatrix> out;
  for (const auto& item : in_context(section, v.line, [&]() -> const std::vector<TextValue>& { return as_array(v); })) {
    out.push_back(parse_matrix(group, item, section, what));
  }
  return out;
}

void require_square(const RMatrix& m, std::size_t size, const std::string& section, std::size_t line, const char* what) {
  if (m.rows() != size || m.cols() != size) {
    throw Error(Errc::dimension_mismatch, where(section, line) + what + " must be " + std::to_string(size) + "x" +
                                              std::to_string(size) + ", got " + std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()));
  }
}

GroupPtr parse_group(const TextDocument& doc) {
  const TextSection& s = require_section(doc, "group");
  const TextEntry& kind_entry = require_key(s, "kind");
  const std::string kind = in_context(s.name, kind_entry.line, [&] { return as_string(kind_entry.value); });
  auto count = [&](const char* key) {
    const TextEntry& e = require_key(s, key);
    return in_context(s.name, e.line, [&] { return as_count(e.value, 0); });
  };
  if (kind == "cyclic") {
    reject_unknown_keys(s, {"kind", "order"});
    const TextEntry& e = require_key(s, "order");
    return in_context(s.name, e.line, [&] { return cyclic_group(count("order")); });
  }
  if (kind == "dihedral") {
    reject_unknown_keys(s, {"kind", "n"});
    const TextEntry& e = require_key(s, "n");
    return in_context(s.name, e.line, [&] { return dihedral_group(count("n")); });
  }
  if (kind == "table") {
    reject_unknown_keys(s, {"kind", "element_names", "mul_table"});
    const TextEntry& names_entry = require_key(s, "element_names");
    const TextEntry& table_entry = require_key(s, "mul_table");
    std::vector<std::string> names;
    in_context(s.name, names_entry.line, [&] {
      for (const auto& v : as_array(names_entry.value)) names.push_back(as_string(v));
    });
    std::vector<std::vector<Elem>> table;
    in_context(s.name, table_entry.line, [&] {
      for (const auto& row : as_array(table_entry.value)) {
        std::vector<Elem> out;
        for (const auto& cell : as_array(row)) out.push_back(static_cast<Elem>(as_count(cell, 0)));
        table.push_back(std::move(out));
      }
    });
    return in_context(s.name, table_entry.line, [&] { return group_from_table(std::move(names), table); });
  }
  throw Error(Errc::unknown_group_kind, where(s.name, kind_entry.line) + "unknown group kind '" + kind +
                                            "' (expected cyclic, dihedral or table)");
}

void parse_twists(const TextDocument& doc, CodeSpec& spec) {
  const std::size_t m = spec.base.cols(), n = spec.base.rows(), p = spec.fiber.cols(), q = spec.fiber.rows();
  const TextSection* s = doc.find("twists");
  if (!s) {
    if (spec.options.construction == Construction::lifted_product) {
      spec.twists = TwistData::identity(spec.group, m, n, p, q);
      spec.twist_source = "identity";
      return;
    }
    throw Error(Errc::parse_error, "missing section [twists]");
  }
  reject_unknown_keys(*s, {"identity", "phi1", "phi0", "entry_phi1", "entry_phi0", "connection", "action"});

  std::vector<std::string> modes;
  if (s->find("identity")) modes.push_back("identity");
  if (s->find("phi1") || s->find("phi0")) modes.push_back("per-column (phi1/phi0)");
  if (s->find("entry_phi1") || s->find("entry_phi0")) modes.push_back("per-entry (entry_phi1/entry_phi0)");
  if (s->find("connection")) modes.push_back("connection");
  if (modes.size() != 1) {
    std::string msg = modes.empty() ? "no twist mode given" : "conflicting twist modes:";
    for (const auto& mode : modes) msg += " " + mode;
    throw Error(Errc::twist_mode_conflict, where(s->name, s->line) + msg);
  }
  if (s->find("action") && !s->find("connection")) {
    throw Error(Errc::parse_error, where(s->name, s->find("action")->line) + "'action' only applies to a connection");
  }

  if (const TextEntry* e = s->find("identity")) {
    const bool on = in_context(s->name, e->line, [&] { return as_bool(e->value); });
    if (!on) throw Error(Errc::parse_error, where(s->name, e->line) + "identity = false names no twists");
    spec.twists = TwistData::identity(spec.group, m, n, p, q);
    spec.twist_source = "identity";
  } else if (s->find("phi1") || s->find("phi0")) {
    const TextEntry& e1 = require_key(*s, "phi1");
    const TextEntry& e0 = require_key(*s, "phi0");
    const auto phi1 = parse_matrix_list(spec.group, e1.value, s->name, "phi1");
    const auto phi0 = parse_matrix_list(spec.group, e0.value, s->name, "phi0");
    if (phi1.size() != m || phi0.size() != m) {
      throw Error(Errc::dimension_mismatch, where(s->name, e1.line) + "expected one phi1 and one phi0 per base column (" +
                                                std::to_string(m) + "), got " + std::to_string(phi1.size()) + " and " +
                                                std::to_string(phi0.size()));
    }
    std::vector<Twist> columns;
    for (std::size_t j = 0; j < m; ++j) {
      require_square(phi1[j], p, s->name, e1.line, "phi1");
      require_square(phi0[j], q, s->name, e0.line, "phi0");
      columns.push_back({phi1[j], phi0[j], 0});
    }
    spec.twists = TwistData::per_column(n, std::move(columns));
    spec.twist_source = "per_column";
  } else if (s->find("entry_phi1") || s->find("entry_phi0")) {
    const TextEntry& e1 = require_key(*s, "entry_phi1");
    const TextEntry& e0 = require_key(*s, "entry_phi0");
    auto grid = [&](const TextEntry& e, const char* what) {
      std::vector<std::vector<RMatrix>> out;
      const auto& rows = in_context(s->name, e.line, [&]() -> const std::vector<TextValue>& { return as_array(e.value); });
      if (rows.size() != n) {
        throw Error(Errc::dimension_mismatch, where(s->name, e.line) + what + " must have one row per base row (" +
                                                  std::to_string(n) + ")");
      }
      for (const auto& row : rows) {
        out.push_back(parse_matrix_list(spec.group, row, s->name, what));
        if (out.back().size() != m) {
          throw Error(Errc::ragged_matrix, where(s->name, row.line) + what + " row must have " + std::to_string(m) + " matrices");
        }
      }
      return out;
    };
    const auto g1 = grid(e1, "entry_phi1");
    const auto g0 = grid(e0, "entry_phi0");
    std::vector<std::vector<Twist>> entries(m, std::vector<Twist>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        require_square(g1[i][j], p, s->name, e1.line, "entry_phi1");
        require_square(g0[i][j], q, s->name, e0.line, "entry_phi0");
        entries[j][i] = {g1[i][j], g0[i][j], 0};
      }
    }
    spec.twists = TwistData::per_entry(std::move(entries));
    spec.twist_source = "per_entry";
  } else {
    const TextEntry& e = require_key(*s, "connection");
    if (const TextEntry* a = s->find("action")) {
      const std::string action = in_context(s->name, a->line, [&] { return as_string(a->value); });
      if (action == "right_translation") spec.connection_action = FiberAction::right_translation;
      else if (action == "left_scalar") spec.connection_action = FiberAction::left_scalar;
      else throw Error(Errc::parse_error, where(s->name, a->line) + "unknown action '" + action + "'");
    }
    std::vector<std::vector<std::optional<Elem>>> assignment;
    in_context(s->name, e.line, [&] {
      for (const auto& row : as_array(e.value)) {
        std::vector<std::optional<Elem>> out;
        for (const auto& cell : in_context(s->name, row.line, [&]() -> const std::vector<TextValue>& { return as_array(row); })) {
          const std::string& text = in_context(s->name, cell.line, [&]() -> const std::string& { return as_string(cell); });
          if (text.empty() || text == "-") {
            out.emplace_back();
            continue;
          }
          const AlgElem g = in_context(s->name, cell.line, [&] { return parse_element(spec.group, text); });
          if (g.weight() != 1) {
            throw Error(Errc::parse_error, where(s->name, cell.line) + "connection entry \"" + text +
                                               "\" is not a single group element");
          }
          out.push_back(g.support().front());
        }
        assignment.push_back(std::move(out));
      }
    });
    spec.twists = in_context(s->name, e.line, [&] {
      return connection_from_group(spec.base, spec.fiber, assignment, spec.connection_action);
    });
    spec.twist_source = "connection";
  }

  if (spec.options.construction == Construction::lifted_product && spec.twist_source != "identity") {
    throw Error(Errc::twist_mode_conflict, where(s->name, s->line) + "the lifted_product construction takes identity twists only");
  }
}

void parse_options(const TextDocument& doc, CodeOptions& options) {
  const TextSection* s = doc.find("options");
  if (!s) return;
  reject_unknown_keys(*s, {"weight_cap", "full_enumeration", "allow_nonflat", "lp_transpose", "construction", "seed", "budget"});
  for (const auto& e : s->entries) {
    in_context(s->name, e.line, [&] {
      if (e.key == "weight_cap") options.weight_cap = as_count(e.value, 1);
      else if (e.key == "full_enumeration") options.full_enumeration = as_bool(e.value);
      else if (e.key == "allow_nonflat") options.allow_nonflat = as_bool(e.value);
      else if (e.key == "seed") options.seed = as_count(e.value, 0);
      else if (e.key == "budget") options.budget = as_count(e.value, 1);
      else if (e.key == "lp_transpose") {
        const auto& mode = as_string(e.value);
        if (mode == "plain") options.lp_transpose = TransposeMode::plain;
        else if (mode == "antipode") options.lp_transpose = TransposeMode::antipode;
        else throw Error(Errc::parse_error, "lp_transpose must be \"plain\" or \"antipode\", got \"" + mode + "\"");
      } else if (e.key == "construction") {
        const auto& c = as_string(e.value);
        if (c == "twisted") options.construction = Construction::twisted;
        else if (c == "lifted_product") options.construction = Construction::lifted_product;
        else throw Error(Errc::parse_error, "construction must be \"twisted\" or \"lifted_product\", got \"" + c + "\"");
      }
    });
  }
}

std::vector<Twist> parse_pool_section(const TextSection& s, const CodeSpec& spec) {
  const TextEntry& e1 = require_key(s, "phi1");
  const TextEntry& e0 = require_key(s, "phi0");
  const auto phi1 = parse_matrix_list(spec.group, e1.value, s.name, "phi1");
  const auto phi0 = parse_matrix_list(spec.group, e0.value, s.name, "phi0");
  if (phi1.size() != phi0.size()) {
    throw Error(Errc::dimension_mismatch, where(s.name, e1.line) + "phi1 and phi0 lists differ in length");
  }
  std::vector<Twist> out;
  for (std::size_t i = 0; i < phi1.size(); ++i) {
    require_square(phi1[i], spec.fiber.cols(), s.name, e1.line, "phi1");
    require_square(phi0[i], spec.fiber.rows(), s.name, e0.line, "phi0");
    out.push_back({phi1[i], phi0[i], 0});
  }
  return out;
}

void parse_search(const TextDocument& doc, CodeSpec& spec) {
  const TextSection* s = doc.find("search");
  if (!s) return;
  reject_unknown_keys(*s, {"pool", "max_support", "max_candidates", "max_pool_matrices", "top", "report_limit"});
  SearchSettings settings;
  for (const auto& e : s->entries) {
    in_context(s->name, e.line, [&] {
      if (e.key == "pool") {
        const auto& kind = as_string(e.value);
        if (kind == "group_scalars") settings.pool = PoolKind::group_scalars;
        else if (kind == "low_weight") settings.pool = PoolKind::low_weight;
        else if (kind == "list") settings.pool = PoolKind::list;
        else throw Error(Errc::parse_error, "pool must be group_scalars, low_weight or list, got \"" + kind + "\"");
      } else if (e.key == "max_support") settings.max_support = as_count(e.value, 0);
      else if (e.key == "max_candidates") settings.max_candidates = as_count(e.value, 1);
      else if (e.key == "max_pool_matrices") settings.max_pool_matrices = as_count(e.value, 1);
      else if (e.key == "top") settings.top = as_count(e.value, 0);
      else if (e.key == "report_limit") settings.report_limit = as_count(e.value, 1);
    });
  }
  if (settings.pool == PoolKind::list) {
    const TextSection* pool = doc.find("pool");
    if (!pool) throw Error(Errc::parse_error, where(s->name, s->line) + "pool = \"list\" needs a [pool] section");
    reject_unknown_keys(*pool, {"phi1", "phi0"});
    settings.list = parse_pool_section(*pool, spec);
  }
  spec.search = std::move(settings);
}

}  // namespace

const char* construction_name(Construction c) {
  return c == Construction::twisted ? "twisted" : "lifted_product";
}

const char* pool_kind_name(PoolKind kind) {
  switch (kind) {
    case PoolKind::group_scalars: return "group_scalars";
    case PoolKind::low_weight: return "low_weight";
    case PoolKind::list: return "list";
  }
  return "unknown";
}

std::string input_digest(std::string_view text) {
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

CodeSpec parse_code_spec(std::string_view text) {
  const TextDocument doc = parse_text_document(text);
  for (const auto& s : doc.sections) {
    static const std::set<std::string> known{"", "group", "complex", "twists", "options", "search", "pool"};
    if (!known.count(s.name)) throw Error(Errc::parse_error, where(s.name, s.line) + "unknown section");
    if (s.name.empty() && !s.entries.empty()) {
      throw Error(Errc::parse_error, where("", s.entries.front().line) + "key outside of any section");
    }
  }

  CodeSpec spec;
  spec.digest = input_digest(text);
  spec.group = parse_group(doc);
  parse_options(doc, spec.options);

  const TextSection& complex = require_section(doc, "complex");
  reject_unknown_keys(complex, {"base", "fiber"});
  spec.base = parse_matrix(spec.group, require_key(complex, "base").value, complex.name, "base");
  spec.fiber = parse_matrix(spec.group, require_key(complex, "fiber").value, complex.name, "fiber");

  parse_twists(doc, spec);
  parse_search(doc, spec);
  if (!spec.search && doc.find("pool")) {
    throw Error(Errc::parse_error, where("pool", doc.find("pool")->line) + "[pool] needs [search] with pool = \"list\"");
  }
  return spec;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CodeSpec load_code_spec(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_code_spec(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<Twist> parse_twist_pool(std::string_view text, const CodeSpec& spec) {
  const TextDocument doc = parse_text_document(text);
  const TextSection& s = require_section(doc, "pool");
  reject_unknown_keys(s, {"phi1", "phi0"});
  return parse_pool_section(s, spec);
}

}  // namespace fibercode
