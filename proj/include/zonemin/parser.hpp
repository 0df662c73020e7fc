#pragma once

#include <stdexcept>
#include <string>

#include "zonemin/ast.hpp"

namespace zonemin {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string &msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_), col(col_) {}
};

// Grammar:
//   program := decl* stmt*
//   decl    := "int" ident ";"
//   stmt    := ident ":=" expr ";" | "if" "(" cond ")" block ("else" block)?
//            | "while" "(" cond ")" block | "assert" cond ";" | "havoc" ident ";"
//   block   := "{" stmt* "}"
//   expr    := int | ident | ident ("+"|"-") int
//   cond    := ident ("<="|"<"|">="|">"|"=="|"!=") (ident ("+"|"-") int | ident | int)
// Comments run from "//" to end of line.
Program parse_program(const std::string &text, const std::string &name = "main");

// Canonical source form; parsing it again yields an identical AST.
std::string pretty_print(const Program &p);

} // namespace zonemin
