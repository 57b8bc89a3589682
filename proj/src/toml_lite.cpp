#include "planarstack/toml_lite.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

#include "planarstack/errors.hpp"

namespace planarstack::toml {

const Value& Table::at(const std::string& key) const {
  if (const Value* v = find(key)) return *v;
  throw ParseError("missing required key '" + key + "'", line);
}

const Value* Table::find(const std::string& key) const {
  auto it = values.find(key);
  return it == values.end() ? nullptr : &it->second;
}

const Table* Table::find_table(const std::string& key) const {
  auto it = subtables.find(key);
  return it == subtables.end() ? nullptr : &it->second;
}

const std::vector<Table>* Table::find_array(const std::string& key) const {
  auto it = table_arrays.find(key);
  return it == table_arrays.end() ? nullptr : &it->second;
}

const std::string& Value::as_string(const std::string& key) const {
  if (const auto* s = std::get_if<std::string>(&data_)) return *s;
  throw ParseError("key '" + key + "' must be a string", line_);
}

double Value::as_number(const std::string& key) const {
  if (const auto* d = std::get_if<double>(&data_)) return *d;
  throw ParseError("key '" + key + "' must be a number", line_);
}

bool Value::as_bool(const std::string& key) const {
  if (const auto* b = std::get_if<bool>(&data_)) return *b;
  throw ParseError("key '" + key + "' must be a boolean", line_);
}

const Array& Value::as_array(const std::string& key) const {
  if (const auto* a = std::get_if<Array>(&data_)) return *a;
  throw ParseError("key '" + key + "' must be an array", line_);
}

namespace {

class Cursor {
 public:
  Cursor(const std::string& text, int line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size() || text_[pos_] == '#';
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char take() { return text_[pos_++]; }
  int column() const { return static_cast<int>(pos_) + 1; }
  int line() const { return line_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, column());
  }

  std::string bare_token(const char* extra = "") {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '-' || c == '+' || c == '.' ||
          std::strchr(extra, c) != nullptr) {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) fail("expected a token");
    return text_.substr(start, pos_ - start);
  }

  std::string quoted_string() {
    // opening quote already consumed
    std::string out;
    while (pos_ < text_.size()) {
      char c = take();
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("unterminated escape");
        char e = take();
        switch (e) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default: fail(std::string("unsupported escape '\\") + e + "'");
        }
      } else {
        out += c;
      }
    }
    fail("unterminated string");
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_;
};

Value parse_value(Cursor& cur);

Value parse_scalar(Cursor& cur) {
  cur.skip_space();
  const int line = cur.line();
  if (cur.peek() == '"') {
    cur.take();
    return Value(cur.quoted_string(), line);
  }
  const std::string tok = cur.bare_token();
  if (tok == "true") return Value(true, line);
  if (tok == "false") return Value(false, line);
  try {
    std::size_t used = 0;
    // Underscore digit separators are TOML; strip them first.
    std::string digits;
    digits.reserve(tok.size());
    for (char c : tok) {
      if (c != '_') digits += c;
    }
    const double v = std::stod(digits, &used);
    if (used != digits.size()) throw std::invalid_argument("trailing");
    return Value(v, line);
  } catch (const std::exception&) {
    cur.fail("cannot parse value '" + tok + "'");
  }
}

Value parse_value(Cursor& cur) {
  cur.skip_space();
  const int line = cur.line();
  if (cur.peek() != '[') return parse_scalar(cur);
  cur.take();
  Array items;
  cur.skip_space();
  if (cur.peek() == ']') {
    cur.take();
    return Value(std::move(items), line);
  }
  while (true) {
    items.push_back(parse_value(cur));
    cur.skip_space();
    const char c = cur.peek();
    if (c == ',') {
      cur.take();
      continue;
    }
    if (c == ']') {
      cur.take();
      return Value(std::move(items), line);
    }
    cur.fail("expected ',' or ']' in array");
  }
}

std::vector<std::string> split_path(const std::string& dotted, Cursor& cur) {
  std::vector<std::string> parts;
  std::string part;
  for (char c : dotted) {
    if (c == '.') {
      if (part.empty()) cur.fail("empty path segment in table header");
      parts.push_back(part);
      part.clear();
    } else {
      part += c;
    }
  }
  if (part.empty()) cur.fail("empty path segment in table header");
  parts.push_back(part);
  return parts;
}

}  // namespace

Table parse(const std::string& text, const std::string& name) {
  Table root;
  Table* current = &root;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    Cursor cur(raw, lineno);
    if (cur.at_end()) continue;

    if (cur.peek() == '[') {
      cur.take();
      const bool array_of_tables = cur.peek() == '[';
      if (array_of_tables) cur.take();
      const std::string dotted = cur.bare_token();
      if (cur.peek() != ']') cur.fail("expected ']' in table header");
      cur.take();
      if (array_of_tables) {
        if (cur.peek() != ']') cur.fail("expected ']]' in table header");
        cur.take();
      }
      if (!cur.at_end()) cur.fail("unexpected text after table header");

      const auto path = split_path(dotted, cur);
      Table* t = &root;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        t = &t->subtables[path[i]];
      }
      if (array_of_tables) {
        auto& arr = t->table_arrays[path.back()];
        arr.emplace_back();
        arr.back().line = lineno;
        current = &arr.back();
      } else {
        Table& sub = t->subtables[path.back()];
        if (sub.line != 0) {
          throw ParseError(name + ": table [" + dotted + "] redefined",
                           lineno);
        }
        sub.line = lineno;
        current = &sub;
      }
      continue;
    }

    const std::string key = cur.bare_token();
    cur.skip_space();
    if (cur.peek() != '=') cur.fail("expected '=' after key '" + key + "'");
    cur.take();
    Value value = parse_value(cur);
    if (!cur.at_end()) cur.fail("unexpected text after value");
    if (current->values.count(key)) {
      throw ParseError(name + ": key '" + key + "' redefined", lineno);
    }
    current->values.emplace(key, std::move(value));
  }
  return root;
}

Table parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

}  // namespace planarstack::toml
