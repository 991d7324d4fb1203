#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace emoc::detail {

enum class Tok : std::uint8_t {
  End,
  Ident,
  Int,
  // keywords
  Fn,
  Let,
  If,
  Else,
  While,
  For,
  In,
  Range,
  Return,
  Assert,
  True,
  False,
  // punctuation
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Assign,
  Plus,
  Minus,
  Star,
  Slash,
  Percent,
  EqEq,
  NotEq,
  Less,
  LessEq,
  Greater,
  GreaterEq,
  AndAnd,
  OrOr,
  Bang,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string_view token_description(Tok kind);

/// Splits source into tokens; `#` comments and whitespace are dropped.
/// Throws SyntaxError on stray characters or out-of-range integer literals.
std::vector<Token> tokenize(std::string_view text);

}  // namespace emoc::detail
