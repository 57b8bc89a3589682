#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace planarstack::toml {

// Minimal TOML-compatible reader covering what the document formats
// use: [table] / [table.sub] headers, [[array-of-tables]] headers,
// bare keys, and string / number / boolean / single-line array values.

class Value;
using Array = std::vector<Value>;

class Value {
 public:
  using Data = std::variant<std::string, double, bool, Array>;

  Value() = default;
  Value(Data data, int line) : data_(std::move(data)), line_(line) {}

  int line() const { return line_; }
  bool is_string() const { return std::holds_alternative<std::string>(data_); }
  bool is_number() const { return std::holds_alternative<double>(data_); }
  bool is_bool() const { return std::holds_alternative<bool>(data_); }
  bool is_array() const { return std::holds_alternative<Array>(data_); }

  // Typed accessors; throw ParseError mentioning the key and line on
  // type mismatch.
  const std::string& as_string(const std::string& key) const;
  double as_number(const std::string& key) const;
  bool as_bool(const std::string& key) const;
  const Array& as_array(const std::string& key) const;

 private:
  Data data_;
  int line_ = 0;
};

struct Table {
  std::map<std::string, Value> values;
  std::map<std::string, Table> subtables;
  std::map<std::string, std::vector<Table>> table_arrays;
  int line = 0;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const Value& at(const std::string& key) const;  // throws if missing
  const Value* find(const std::string& key) const;
  const Table* find_table(const std::string& key) const;
  const std::vector<Table>* find_array(const std::string& key) const;
};

Table parse(const std::string& text, const std::string& name);
Table parse_file(const std::string& path);

}  // namespace planarstack::toml
