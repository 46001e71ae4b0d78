#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "loomcheck/syntax.hpp"

namespace loomcheck {

struct ParseError : std::runtime_error {
  ParseError(std::string what, int line, int column)
      : std::runtime_error(std::move(what)), line(line), column(column) {}

  int line;
  int column;
};

// Edinburgh-style subset: facts `p(a).`, rules `h :- b1, \+ b2.`,
// list sugar `[a, X|T]`, `%` line comments. Variables start with a capital
// letter or underscore; a bare `_` is a fresh variable per occurrence.
// No operators, arithmetic or cut.
Program parse_program(std::string_view text);

// A query is a single atom, with an optional terminating `.`.
Atom parse_query(std::string_view text);

}  // namespace loomcheck
