#include "leojam/kvfile.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "leojam/errors.hpp"

namespace leojam::kv {
namespace {

bool is_key_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-';
}

class Cursor {
 public:
  Cursor(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  int line() const { return line_; }
  int column() const { return static_cast<int>(pos_ - line_start_) + 1; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column()); }

  Value value() {
    skip_space();
    Value v;
    v.line = line_;
    v.column = column();
    const char c = peek();
    if (c == '"') {
      v.data = string();
    } else if (c == '[') {
      ++pos_;
      Array items;
      skip_space();
      while (peek() != ']') {
        items.push_back(value());
        skip_space();
        if (peek() == ',') {
          ++pos_;
          skip_space();
        } else if (peek() != ']') {
          fail("expected ',' or ']' in array");
        }
      }
      ++pos_;
      v.data = std::move(items);
    } else if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      v.data = true;
    } else if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      v.data = false;
    } else {
      v.data = number();
    }
    return v;
  }

  std::string key() {
    skip_space();
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && is_key_char(text_[pos_])) ++pos_;
    if (begin == pos_) fail("expected a key");
    return std::string(text_.substr(begin, pos_ - begin));
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  /// Everything after a value on the same line must be blank or a comment.
  void end_of_line() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) {
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] != '\n' && text_[pos_] != '#') {
      fail("unexpected text after value");
    }
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string string() {
    ++pos_;  // opening quote
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("unterminated escape");
        const char e = text_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unknown escape '\\") + e + "'");
        }
      }
      out += c;
    }
    return out;
  }

  double number() {
    std::size_t end = pos_;
    while (end < text_.size()) {
      const char c = text_[end];
      if ((c >= '0' && c <= '9') || c == '.' || c == 'e' || c == 'E' || c == '+' || c == '-' ||
          c == 'i' || c == 'n' || c == 'f' || c == 'a') {
        ++end;
      } else {
        break;
      }
    }
    std::string_view token = text_.substr(pos_, end - pos_);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      fail("expected a value (number, string, boolean or array)");
    }
    pos_ = end;
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  int line_ = 1;
};

std::vector<std::string> split_path(Cursor& cur, std::string_view raw) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = raw.find('.', start);
    std::string part(raw.substr(start, dot == std::string_view::npos ? raw.npos : dot - start));
    while (!part.empty() && part.back() == ' ') part.pop_back();
    while (!part.empty() && part.front() == ' ') part.erase(0, 1);
    if (part.empty()) cur.fail("empty section name");
    for (char c : part) {
      if (!is_key_char(c)) cur.fail("invalid character in section name");
    }
    parts.push_back(std::move(part));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

Table* descend(Cursor& cur, Table& root, const std::vector<std::string>& path, std::size_t count) {
  Table* t = &root;
  for (std::size_t i = 0; i < count; ++i) {
    const std::string& p = path[i];
    if (auto arr = t->arrays.find(p); arr != t->arrays.end()) {
      t = &arr->second.back();
    } else {
      if (t->values.count(p)) cur.fail("'" + p + "' is already a value");
      t = &t->tables[p];
    }
  }
  return t;
}

}  // namespace

Table parse(std::string_view text) {
  Table root;
  Table* current = &root;
  Cursor cur(text, 1);
  while (true) {
    cur.skip_space();
    if (cur.at_end()) break;
    if (cur.peek() == '[') {
      const int header_line = cur.line();
      const bool array = text.substr(cur.pos(), 2) == "[[";
      cur.advance(array ? 2 : 1);
      const std::size_t begin = cur.pos();
      const std::size_t close = text.find(']', begin);
      const std::size_t newline = text.find('\n', begin);
      if (close == std::string_view::npos || (newline != std::string_view::npos && close > newline)) {
        cur.fail("unterminated section header");
      }
      const auto path = split_path(cur, text.substr(begin, close - begin));
      cur.advance(close - begin + 1);
      if (array) cur.expect(']');
      cur.end_of_line();
      Table* parent = descend(cur, root, path, path.size() - 1);
      const std::string& leaf = path.back();
      if (array) {
        if (parent->tables.count(leaf) || parent->values.count(leaf)) {
          cur.fail("'" + leaf + "' is not a repeated section");
        }
        auto& list = parent->arrays[leaf];
        list.emplace_back();
        current = &list.back();
      } else {
        if (parent->arrays.count(leaf) || parent->values.count(leaf)) {
          cur.fail("'" + leaf + "' is already defined");
        }
        auto [it, inserted] = parent->tables.try_emplace(leaf);
        if (!inserted && it->second.line != 0) cur.fail("section '" + leaf + "' defined twice");
        current = &it->second;
      }
      current->line = header_line;
      continue;
    }
    const int key_line = cur.line();
    const int key_column = cur.column();
    std::string key = cur.key();
    cur.expect('=');
    Value v = cur.value();
    cur.end_of_line();
    if (current->values.count(key) || current->tables.count(key) || current->arrays.count(key)) {
      throw ParseError("duplicate key '" + key + "'", key_line, key_column);
    }
    current->values.emplace(std::move(key), std::move(v));
  }
  return root;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace leojam::kv
