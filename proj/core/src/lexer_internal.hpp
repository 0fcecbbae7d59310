// Shared tokenizer for the .tipspec and formula parsers. Internal.
#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "tipforge/tipspec_parser.hpp"

namespace tipforge::internal {

enum class Tok {
  Ident, Number, Newline, End,
  LParen, RParen, LBracket, RBracket, Comma, Dot, Colon,
  Plus, Minus, Star, Slash,
  Amp, AmpAmp, Bar, Tilde, Caret,
  Le, Lt, Ge, Gt, EqEq, Eq, Ne,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  Lexer(const std::string& text, std::string origin)
      : text_(text), origin_(std::move(origin)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') {
        out.push_back({Tok::Newline, "\n", line_, col_});
        ++pos_;
        ++line_;
        col_ = 1;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
        continue;
      }
      int line = line_, col = col_;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
          id += text_[pos_++];
          ++col_;
        }
        out.push_back({Tok::Ident, id, line, col});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          num += text_[pos_++];
          ++col_;
        }
        out.push_back({Tok::Number, num, line, col});
        continue;
      }
      auto two = [&](char a, char b) {
        return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
      };
      Tok kind;
      int len = 1;
      if (two('<', '=')) { kind = Tok::Le; len = 2; }
      else if (two('>', '=')) { kind = Tok::Ge; len = 2; }
      else if (two('=', '=')) { kind = Tok::EqEq; len = 2; }
      else if (two('!', '=')) { kind = Tok::Ne; len = 2; }
      else if (two('&', '&')) { kind = Tok::AmpAmp; len = 2; }
      else if (c == '<') kind = Tok::Lt;
      else if (c == '>') kind = Tok::Gt;
      else if (c == '=') kind = Tok::Eq;
      else if (c == '(') kind = Tok::LParen;
      else if (c == ')') kind = Tok::RParen;
      else if (c == '[') kind = Tok::LBracket;
      else if (c == ']') kind = Tok::RBracket;
      else if (c == ',') kind = Tok::Comma;
      else if (c == '.') kind = Tok::Dot;
      else if (c == ':') kind = Tok::Colon;
      else if (c == '+') kind = Tok::Plus;
      else if (c == '-') kind = Tok::Minus;
      else if (c == '*') kind = Tok::Star;
      else if (c == '/') kind = Tok::Slash;
      else if (c == '&') kind = Tok::Amp;
      else if (c == '|') kind = Tok::Bar;
      else if (c == '~') kind = Tok::Tilde;
      else if (c == '^') kind = Tok::Caret;
      else
        throw ParseError(std::string("unexpected character '") + c + "' in " +
                             origin_,
                         line, col);
      out.push_back({kind, text_.substr(pos_, len), line, col});
      pos_ += len;
      col_ += len;
    }
    out.push_back({Tok::End, "", line_, col_});
    return out;
  }

 private:
  const std::string& text_;
  std::string origin_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

// Common cursor helpers over a token vector.
class TokenCursor {
 public:
  TokenCursor(std::vector<Token> toks, std::string origin)
      : toks_(std::move(toks)), origin_(std::move(origin)) {}

  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  const Token& advance() { return toks_[pos_++]; }
  bool try_eat(Tok k) {
    if (at(k)) { ++pos_; return true; }
    return false;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) fail("expected " + what);
    return advance();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in " + origin_, cur().line, cur().col);
  }
  size_t save() const { return pos_; }
  void restore(size_t p) { pos_ = p; }
  void skip_newlines() {
    while (at(Tok::Newline)) ++pos_;
  }

 protected:
  std::vector<Token> toks_;
  std::string origin_;
  size_t pos_ = 0;
};

}  // namespace tipforge::internal
