#pragma once

#include <string>
#include <string_view>

#include "shuffle/term.hpp"

namespace shuffle {

/// Parses `term ::= abs | app`, `abs ::= ("\" | "λ") ident "." term`,
/// `app ::= atom+`, `atom ::= ident | "(" term ")"`. Free occurrences of
/// `I` and `D` stand for \x.x and \x.x x. Throws SyntaxError.
Term parse(std::string_view text);

struct PrintOptions {
  bool unicode = false;     // emit λ instead of a backslash
  bool abbreviate = false;  // print closed \x.x and \x.x x as I and D
};

std::string print(const Term& t, const PrintOptions& options = {});

/// Common combinators.
Term identity();  // \x.x
Term delta();     // \x.x x

}  // namespace shuffle
