#include <doctest.h>

#include "fibercode/spec.hpp"
#include "fibercode/spec_text.hpp"
#include "helpers.hpp"

using namespace fibercode;
using testing_util::code_of;

namespace {

const std::string kFixtures = FIBERCODE_FIXTURE_DIR;

const char* kHeader = R"([group]
kind = "dihedral"
n = 3

[complex]
base = [["0", "r + r^2"], ["1 + r + r^2", "0"]]
fiber = [["1", "r"], ["s", "1"]]
)";

std::string with_twists(const std::string& twists) { return std::string(kHeader) + "\n[twists]\n" + twists; }

std::string message_of(const std::string& text) {
  try {
    parse_code_spec(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("key-value reader") {
  const auto doc = parse_text_document(R"(top = 1
[a]
s = "x\"y" # comment
n = -1_000
b = true
arr = [
  [1, 2,],
  ["p"],
]
)");
  REQUIRE(doc.find("a"));
  const auto& a = *doc.find("a");
  CHECK(a.find("s")->value.str == "x\"y");
  CHECK(a.find("n")->value.integer == -1000);
  CHECK(a.find("b")->value.boolean);
  CHECK(a.find("arr")->value.items.size() == 2);
  CHECK(a.find("arr")->value.items[1].items[0].line == 8);
  CHECK(doc.find("")->find("top")->value.integer == 1);

  CHECK(code_of([] { parse_text_document("[a]\n[a]\n"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_text_document("x = 1\nx = 2\n"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_text_document("x = bare\n"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_text_document("x = [1, 2\n"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_text_document("x = \"open\n"); }) == Errc::parse_error);
}

TEST_CASE("bundled fixtures parse") {
  const CodeSpec c1 = load_code_spec(kFixtures + "/d3_case1.toml");
  CHECK(c1.group->order() == 6);
  CHECK(c1.base.rows() == 2);
  CHECK(c1.base.cols() == 2);
  CHECK(c1.fiber.rows() == 2);
  CHECK(c1.fiber.cols() == 2);
  CHECK(c1.twist_source == "per_column");
  CHECK(c1.twists.column(0).phi1.to_strings()[1][0] == "s+rs");
  CHECK(c1.options.weight_cap == 3);
  CHECK(c1.digest.rfind("fnv1a64:", 0) == 0);

  const CodeSpec hgp = load_code_spec(kFixtures + "/hgp_trivial.toml");
  CHECK(hgp.group->order() == 1);
  CHECK(hgp.options.full_enumeration);
  CHECK(hgp.twist_source == "identity");
}

TEST_CASE("element strings resolve against the declared group") {
  const CodeSpec s = parse_code_spec(with_twists("identity = true\n") + "\n");
  CHECK(s.base(1, 0).to_string() == "1+r+r^2");
  const std::string text = std::string(kHeader).replace(std::string(kHeader).find("r + r^2"), 7, "r^3") +
                           "\n[twists]\nidentity = true\n";
  CHECK(parse_code_spec(text).base(0, 1).is_one());
}

TEST_CASE("diagnostics name section, line and token") {
  CHECK(code_of([] { parse_code_spec(with_twists("identity = true\nphi1 = []\nphi0 = []\n")); }) ==
        Errc::twist_mode_conflict);
  CHECK(code_of([] { parse_code_spec(with_twists("")); }) == Errc::twist_mode_conflict);

  std::string bad = std::string(kHeader);
  bad.replace(bad.find("\"s\""), 3, "\"t\"");
  const std::string msg = message_of(bad + "\n[twists]\nidentity = true\n");
  CHECK(msg.find("section [complex]") != std::string::npos);
  CHECK(msg.find("line 7") != std::string::npos);
  CHECK(msg.find("'t'") != std::string::npos);
  CHECK(code_of([&] { parse_code_spec(bad + "\n[twists]\nidentity = true\n"); }) == Errc::unknown_token);

  std::string ragged = std::string(kHeader);
  ragged.replace(ragged.find("[\"s\", \"1\"]"), 10, "[\"s\"]");
  CHECK(code_of([&] { parse_code_spec(ragged + "\n[twists]\nidentity = true\n"); }) == Errc::ragged_matrix);

  CHECK(code_of([] { parse_code_spec("[group]\nkind = \"quaternion\"\n"); }) == Errc::unknown_group_kind);
  CHECK(message_of("[group]\nkind = \"quaternion\"\n").find("line 2") != std::string::npos);
  CHECK(code_of([] { parse_code_spec(with_twists("identity = true\ncolour = 1\n")); }) == Errc::parse_error);
  CHECK(code_of([] { parse_code_spec(with_twists("identity = true\n") + "[extra]\n"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_code_spec(with_twists("phi1 = [[[\"1\"]]]\nphi0 = [[[\"1\"]]]\n")); }) ==
        Errc::dimension_mismatch);
  CHECK(code_of([] { parse_code_spec("[group]\nkind = \"cyclic\"\norder = 0\n"); }) == Errc::invalid_argument);
}

TEST_CASE("explicit group tables") {
  const CodeSpec s = parse_code_spec(R"([group]
kind = "table"
element_names = ["e", "a"]
mul_table = [[0, 1], [1, 0]]

[complex]
base = [["1 + a"]]
fiber = [[1]]

[twists]
identity = true
)");
  CHECK(s.group->order() == 2);
  CHECK(s.base(0, 0).weight() == 2);
  CHECK(code_of([] {
          parse_code_spec(
              "[group]\nkind = \"table\"\nelement_names = [\"e\", \"a\", \"b\"]\n"
              "mul_table = [[0, 1, 2], [1, 0, 0], [2, 0, 0]]\n");
        }) == Errc::group_not_latin);
}

TEST_CASE("per-entry and connection twists") {
  const CodeSpec entries = parse_code_spec(with_twists(R"(entry_phi1 = [
  [[["1", "0"], ["0", "1"]], [["0", "r"], ["s", "0"]]],
  [[["1", "0"], ["0", "1"]], [["1", "0"], ["0", "1"]]],
]
entry_phi0 = [
  [[["1", "0"], ["0", "1"]], [["0", "r"], ["s", "0"]]],
  [[["1", "0"], ["0", "1"]], [["1", "0"], ["0", "1"]]],
]
)"));
  CHECK(entries.twists.mode() == TwistMode::per_entry);
  CHECK(entries.twists.at(0, 1).phi1.to_strings()[0][1] == "r");
  CHECK(entries.twists.at(1, 1).phi1.is_identity());

  const CodeSpec conn = parse_code_spec(with_twists("connection = [[\"-\", \"r\"], [\"s\", \"\"]]\n"));
  CHECK(conn.twist_source == "connection");
  CHECK(conn.twists.at(0, 1).transport == *conn.group->find("r"));
  CHECK(conn.twists.at(1, 0).transport == *conn.group->find("s"));

  CHECK(code_of([] { parse_code_spec(with_twists("connection = [[\"-\", \"-\"], [\"s\", \"\"]]\n")); }) ==
        Errc::missing_assignment);
  CHECK(code_of([] { parse_code_spec(with_twists("connection = [[\"-\", \"r+s\"], [\"s\", \"\"]]\n")); }) ==
        Errc::parse_error);
  const CodeSpec left =
      parse_code_spec(with_twists("connection = [[\"-\", \"r\"], [\"s\", \"\"]]\naction = \"left_scalar\"\n"));
  CHECK(left.connection_action == FiberAction::left_scalar);
}

TEST_CASE("options and search sections") {
  const CodeSpec s = parse_code_spec(with_twists("identity = true\n") + R"(
[options]
weight_cap = 4
budget = 1000
seed = 7
construction = "lifted_product"
lp_transpose = "antipode"

[search]
pool = "list"
top = 1

[pool]
phi1 = [[["1", "0"], ["0", "1"]]]
phi0 = [[["1", "0"], ["0", "1"]]]
)");
  CHECK(s.options.weight_cap == 4);
  CHECK(s.options.budget == std::optional<std::uint64_t>(1000));
  CHECK(s.options.seed == std::optional<std::uint64_t>(7));
  CHECK(s.options.construction == Construction::lifted_product);
  CHECK(s.options.lp_transpose == TransposeMode::antipode);
  REQUIRE(s.search.has_value());
  CHECK(s.search->pool == PoolKind::list);
  CHECK(s.search->list.size() == 1);
  CHECK(s.search->top == 1);

  CHECK(code_of([] { parse_code_spec(with_twists("identity = true\n") + "[options]\nweight_cap = 0\n"); }) ==
        Errc::parse_error);
  CHECK(code_of([] { parse_code_spec(with_twists("identity = true\n") + "[search]\npool = \"list\"\n"); }) ==
        Errc::parse_error);
}

TEST_CASE("twist pools and digests") {
  const CodeSpec s = load_code_spec(kFixtures + "/d3_untwisted.toml");
  const auto pool = parse_twist_pool(read_file(kFixtures + "/d3_pool.toml"), s);
  REQUIRE(pool.size() == 2);
  CHECK(pool[1].phi1 == s.fiber);
  CHECK(code_of([&] { parse_twist_pool("[pool]\nphi1 = []\n", s); }) == Errc::parse_error);

  CHECK(input_digest("") == "fnv1a64:cbf29ce484222325");
  CHECK(input_digest("a") == "fnv1a64:af63dc4c8601ec8c");
  CHECK(input_digest("x") != input_digest("y"));
  CHECK(code_of([] { load_code_spec("/nonexistent/spec.toml"); }) == Errc::io_error);
}
