#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nomaee::toml {

// Minimal TOML reader covering what the config and sweep files use:
// [table] headers, bare keys, strings, numbers, booleans, and flat
// arrays of those. Keys inside a table are stored as "table.key".

struct Value;
using Array = std::vector<Value>;

struct Value {
  std::variant<double, bool, std::string, Array> data;

  bool is_number() const { return std::holds_alternative<double>(data); }
  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_array() const { return std::holds_alternative<Array>(data); }
  double as_number() const;
  bool as_bool() const;
  const std::string& as_string() const;
  const Array& as_array() const;
};

using Document = std::map<std::string, Value>;

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what) {}
};

Document parse(std::string_view text);

}  // namespace nomaee::toml
