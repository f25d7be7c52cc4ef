#include "nomaee/toml_lite.hpp"

#include <cctype>
#include <charconv>

namespace nomaee::toml {

double Value::as_number() const {
  if (!is_number()) throw std::runtime_error("expected a number");
  return std::get<double>(data);
}

bool Value::as_bool() const {
  if (!is_bool()) throw std::runtime_error("expected a boolean");
  return std::get<bool>(data);
}

const std::string& Value::as_string() const {
  if (!is_string()) throw std::runtime_error("expected a string");
  return std::get<std::string>(data);
}

const Array& Value::as_array() const {
  if (!is_array()) throw std::runtime_error("expected an array");
  return std::get<Array>(data);
}

namespace {

class Cursor {
 public:
  Cursor(std::string_view text, int line) : s_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }

  Value value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("missing value");
    char c = s_[pos_];
    if (c == '"' || c == '\'') return Value{string(c)};
    if (c == '[') return Value{array()};
    if (s_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return Value{true};
    }
    if (s_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return Value{false};
    }
    return Value{number()};
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

 private:
  std::string string(char quote) {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != quote) {
      char c = s_[pos_++];
      if (c == '\\' && quote == '"' && pos_ < s_.size()) {
        char e = s_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default: out += e;
        }
      } else {
        out += c;
      }
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  Array array() {
    ++pos_;
    Array out;
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) fail("unterminated array");
      if (s_[pos_] == ']') {
        ++pos_;
        return out;
      }
      out.push_back(value());
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ',') ++pos_;
    }
  }

  double number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
            s_[pos_] == '-' || s_[pos_] == '+' || s_[pos_] == '_')) {
      ++pos_;
    }
    std::string tok;
    for (char c : s_.substr(start, pos_ - start)) {
      if (c != '_') tok += c;
    }
    if (tok.empty()) fail("expected a value");
    double v = 0.0;
    const char* first = tok.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("bad number '" + tok + "'");
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Count brackets outside strings so multi-line arrays can be joined.
int bracket_balance(std::string_view s) {
  int depth = 0;
  char quote = 0;
  bool comment = false;
  for (char c : s) {
    if (comment) {
      comment = c != '\n';
      continue;
    }
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      comment = true;
    } else if (c == '[') {
      ++depth;
    } else if (c == ']') {
      --depth;
    }
  }
  return depth;
}

}  // namespace

Document parse(std::string_view text) {
  Document doc;
  std::string table;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    int start_line = line_no;

    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t[0] == '[') {
      auto close = t.find(']');
      if (close == std::string::npos) throw ParseError(line_no, "unterminated table header");
      table = trim(std::string_view(t).substr(1, close - 1));
      if (table.empty()) throw ParseError(line_no, "empty table name");
      continue;
    }

    auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected key = value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.size() >= 2 && (key.front() == '"' || key.front() == '\'')) key = key.substr(1, key.size() - 2);
    if (key.empty()) throw ParseError(line_no, "empty key");
    std::string rhs = t.substr(eq + 1);
    while (bracket_balance(rhs) > 0 && pos < text.size()) {
      end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      rhs += '\n';
      rhs += text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
    }

    Cursor cur(rhs, start_line);
    Value v = cur.value();
    if (!cur.done()) cur.fail("trailing characters after value");
    std::string full = table.empty() ? key : table + "." + key;
    if (doc.contains(full)) throw ParseError(start_line, "duplicate key '" + full + "'");
    doc.emplace(std::move(full), std::move(v));
  }
  return doc;
}

}  // namespace nomaee::toml
