#include "xml.hpp"

#include <charconv>
#include <string>

#include "osmag/error.hpp"

namespace osmag::xml {

const std::string* Element::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes)
    if (k == key) return &v;
  return nullptr;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == ':' || c == '-' || c == '.' || static_cast<unsigned char>(c) >= 0x80;
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Element document() {
    if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    skip_misc();
    if (at_end() || peek() != '<') fail("expected root element");
    Element root = element();
    skip_misc();
    if (!at_end()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

  [[noreturn]] void fail_at(std::size_t offset, const std::string& what) const {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::XmlSyntax,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  void skip_until(std::string_view terminator) {
    auto found = text_.find(terminator, pos_);
    if (found == std::string_view::npos) fail("unterminated construct");
    pos_ = found + terminator.size();
  }

  // Prolog, comments, processing instructions, doctype and whitespace.
  void skip_misc() {
    for (;;) {
      skip_space();
      if (starts_with("<?")) {
        skip_until("?>");
      } else if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<!DOCTYPE")) {
        skip_until(">");
      } else {
        return;
      }
    }
  }

  std::string name() {
    std::size_t start = pos_;
    while (!at_end() && is_name_char(peek())) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string decode(std::size_t start, std::size_t stop) {
    std::string out;
    out.reserve(stop - start);
    for (std::size_t i = start; i < stop; ++i) {
      char c = text_[i];
      if (c == '<') fail_at(i, "'<' inside attribute value");
      if (c != '&') {
        out.push_back(c);
        continue;
      }
      auto semi = text_.find(';', i);
      if (semi == std::string_view::npos || semi >= stop) fail_at(i, "unterminated entity");
      std::string_view ent = text_.substr(i + 1, semi - i - 1);
      if (ent == "amp") {
        out.push_back('&');
      } else if (ent == "lt") {
        out.push_back('<');
      } else if (ent == "gt") {
        out.push_back('>');
      } else if (ent == "quot") {
        out.push_back('"');
      } else if (ent == "apos") {
        out.push_back('\'');
      } else if (ent.size() > 1 && ent[0] == '#') {
        unsigned long cp = 0;
        bool hex = ent[1] == 'x' || ent[1] == 'X';
        std::string_view digits = ent.substr(hex ? 2 : 1);
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
        if (ec != std::errc() || p != digits.data() + digits.size() || cp > 0x10FFFF)
          fail_at(i, "bad character reference");
        append_utf8(out, cp);
      } else {
        fail_at(i, "unknown entity '&" + std::string(ent) + ";'");
      }
      i = semi;
    }
    return out;
  }

  Element element() {
    Element el;
    el.begin = pos_;
    ++pos_;  // '<'
    el.name = name();
    for (;;) {
      bool had_space = !at_end() && is_space(peek());
      skip_space();
      if (at_end()) fail("unterminated start tag <" + el.name + ">");
      if (starts_with("/>")) {
        pos_ += 2;
        el.end = pos_;
        return el;
      }
      if (peek() == '>') {
        ++pos_;
        break;
      }
      if (!had_space) fail("expected whitespace before attribute");
      std::string key = name();
      skip_space();
      if (at_end() || peek() != '=') fail("expected '=' after attribute " + key);
      ++pos_;
      skip_space();
      if (at_end() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
      char quote = peek();
      std::size_t start = ++pos_;
      auto close = text_.find(quote, start);
      if (close == std::string_view::npos) fail("unterminated attribute value");
      std::string value = decode(start, close);
      pos_ = close + 1;
      if (el.attribute(key)) fail("duplicate attribute " + key);
      el.attributes.emplace_back(std::move(key), std::move(value));
    }
    // Content.
    for (;;) {
      if (at_end()) fail("missing </" + el.name + ">");
      if (starts_with("</")) {
        std::size_t close_at = pos_;
        pos_ += 2;
        std::string closing = name();
        skip_space();
        if (at_end() || peek() != '>') fail("expected '>'");
        ++pos_;
        if (closing != el.name) fail_at(close_at, "mismatched </" + closing + ">, expected </" + el.name + ">");
        el.end = pos_;
        return el;
      }
      if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<![CDATA[")) {
        skip_until("]]>");
      } else if (starts_with("<?")) {
        skip_until("?>");
      } else if (peek() == '<') {
        el.children.push_back(element());
      } else {
        std::size_t start = pos_;
        while (!at_end() && peek() != '<') ++pos_;
        decode(start, pos_);  // validates entities; text is not retained
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void set_position(Element& el, std::string_view text, std::size_t& scanned, int& line, int& col) {
  for (; scanned < el.begin; ++scanned) {
    if (text[scanned] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  el.line = line;
  el.column = col;
  for (auto& child : el.children) set_position(child, text, scanned, line, col);
}

}  // namespace

Element parse(std::string_view text) {
  Element root = Reader(text).document();
  std::size_t scanned = 0;
  int line = 1;
  int col = 1;
  set_position(root, text, scanned, line, col);
  return root;
}

std::string escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace osmag::xml
