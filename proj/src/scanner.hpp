#pragma once

// Shared lexer state for the word and presentation grammars.

#include <cctype>
#include <string>
#include <string_view>

#include "xg/errors.hpp"
#include "xg/words.hpp"

namespace xg::detail {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::size_t position() const { return pos_; }

  bool at_identifier() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
  }
  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_])))
      fail("expected identifier");
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  /// Optionally signed decimal integer.
  long integer() {
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
      skip_space();
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    long v = std::stol(std::string(text_.substr(start, pos_ - start)));
    return negative ? -v : v;
  }
  /// `~` immediately after an identifier, no whitespace allowed.
  bool accept_tilde_tight() {
    if (pos_ < text_.size() && text_[pos_] == '~') {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Parses a word expression; stops before any token that cannot continue it
/// (`,` `]` `)` `|` `>` or end of input).
Word parse_word_expr(Scanner& in, const Alphabet& alphabet);

}  // namespace xg::detail
