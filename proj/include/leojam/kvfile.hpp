#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace leojam::kv {

struct Value;
using Array = std::vector<Value>;

struct Value {
  std::variant<bool, double, std::string, Array> data;
  int line = 0;
  int column = 0;
};

/// A section of a scenario file: `key = value` pairs, nested `[a.b]` sections
/// and repeated `[[a.b]]` sections.
struct Table {
  std::map<std::string, Value> values;
  std::map<std::string, Table> tables;
  std::map<std::string, std::vector<Table>> arrays;
  int line = 0;

  bool empty() const { return values.empty() && tables.empty() && arrays.empty(); }
};

/// Parses the sectioned key-value text format. Strings are double-quoted,
/// numbers use C syntax, booleans are `true`/`false`, arrays are `[a, b]`
/// (may span lines) and `#` starts a comment. Throws ParseError.
Table parse(std::string_view text);

/// Shortest text that parses back to exactly `value`.
std::string format_number(double value);
std::string quote(std::string_view text);

}  // namespace leojam::kv
