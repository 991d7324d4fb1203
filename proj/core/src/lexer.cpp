#include "lexer.hpp"

#include <cctype>
#include <charconv>
#include <unordered_map>

#include "emoc/error.hpp"

namespace emoc::detail {

std::string_view token_description(Tok kind) {
  switch (kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer literal";
    case Tok::Fn: return "'fn'";
    case Tok::Let: return "'let'";
    case Tok::If: return "'if'";
    case Tok::Else: return "'else'";
    case Tok::While: return "'while'";
    case Tok::For: return "'for'";
    case Tok::In: return "'in'";
    case Tok::Range: return "'range'";
    case Tok::Return: return "'return'";
    case Tok::Assert: return "'assert'";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Assign: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Percent: return "'%'";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Less: return "'<'";
    case Tok::LessEq: return "'<='";
    case Tok::Greater: return "'>'";
    case Tok::GreaterEq: return "'>='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Bang: return "'!'";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text) {
  static const std::unordered_map<std::string_view, Tok> keywords = {
      {"fn", Tok::Fn},         {"let", Tok::Let},       {"if", Tok::If},
      {"else", Tok::Else},     {"while", Tok::While},   {"for", Tok::For},
      {"in", Tok::In},         {"range", Tok::Range},   {"return", Tok::Return},
      {"assert", Tok::Assert}, {"true", Tok::True},     {"false", Tok::False},
  };

  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }

    Token tok;
    tok.line = line;
    tok.column = col;

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      tok.text = std::string(text.substr(i, j - i));
      auto kw = keywords.find(tok.text);
      tok.kind = kw == keywords.end() ? Tok::Ident : kw->second;
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() &&
          (std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        throw SyntaxError("malformed number", line, col);
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, v);
      if (ec != std::errc()) throw SyntaxError("integer literal out of range", line, col);
      tok.kind = Tok::Int;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }

    auto two = i + 1 < text.size() ? text.substr(i, 2) : std::string_view{};
    Tok kind = Tok::End;
    std::size_t len = 2;
    if (two == "==") kind = Tok::EqEq;
    else if (two == "!=") kind = Tok::NotEq;
    else if (two == "<=") kind = Tok::LessEq;
    else if (two == ">=") kind = Tok::GreaterEq;
    else if (two == "&&") kind = Tok::AndAnd;
    else if (two == "||") kind = Tok::OrOr;
    else {
      len = 1;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case ',': kind = Tok::Comma; break;
        case ';': kind = Tok::Semi; break;
        case '=': kind = Tok::Assign; break;
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '/': kind = Tok::Slash; break;
        case '%': kind = Tok::Percent; break;
        case '<': kind = Tok::Less; break;
        case '>': kind = Tok::Greater; break;
        case '!': kind = Tok::Bang; break;
        default:
          throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
    tok.kind = kind;
    tok.text = std::string(text.substr(i, len));
    advance(len);
    out.push_back(std::move(tok));
  }

  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

}  // namespace emoc::detail
