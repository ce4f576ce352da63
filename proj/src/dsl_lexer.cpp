#include <cctype>

#include "idv/dsl.hpp"

namespace idv::dsl {
namespace {

const char* kKeywords[] = {"identity", "param", "constraint", "sample",
                           "hint",     "lhs",   "rhs",        "in",
                           "status",   "note"};

bool is_keyword(const std::string& s) {
  for (const char* k : kKeywords)
    if (s == k) return true;
  return false;
}

}  // namespace

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i < text.size() && text[i] == '\n') {
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
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      t.text = text.substr(i, j - i);
      t.kind = is_keyword(t.text) ? TokKind::keyword : TokKind::ident;
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      if (j < text.size() && text[j] == '.') {
        ++j;
        while (j < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[j])))
          ++j;
      }
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          ++k;
          while (k < text.size() &&
                 std::isdigit(static_cast<unsigned char>(text[k])))
            ++k;
          j = k;
        }
      }
      t.kind = TokKind::number;
      t.text = text.substr(i, j - i);
      t.num = std::stod(t.text);
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      std::string s;
      while (j < text.size() && text[j] != '"') {
        if (text[j] == '\n')
          throw parse_error("unterminated string literal", line, col);
        s.push_back(text[j]);
        ++j;
      }
      if (j >= text.size())
        throw parse_error("unterminated string literal", line, col);
      t.kind = TokKind::string;
      t.text = std::move(s);
      advance(j - i + 1);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      t.kind = TokKind::op;
      t.text = std::string(1, c);
      advance(1);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == '{' ||
        c == '}' || c == ',' || c == '=' || c == ';') {
      t.kind = TokKind::punct;
      t.text = std::string(1, c);
      advance(1);
      out.push_back(std::move(t));
      continue;
    }
    throw parse_error(std::string("illegal character '") + c + "'", line, col);
  }
  Token end;
  end.kind = TokKind::eof;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

}  // namespace idv::dsl
