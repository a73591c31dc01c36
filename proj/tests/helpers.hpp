#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>

#include "doctest.h"
#include "shuffle/syntax.hpp"
#include "shuffle/reduction.hpp"
#include "shuffle/term.hpp"
#include "shuffle/trace.hpp"

namespace shuffle::testing {

inline Term T(std::string_view text) { return parse(text); }

inline std::string show(const Term& t) { return print(t); }

// A trace through the given terms, each one a single step from the previous.
inline Trace chain(std::initializer_list<std::string_view> texts) {
  auto it = texts.begin();
  Trace tr(T(*it));
  for (++it; it != texts.end(); ++it) {
    Term next = T(*it);
    bool found = false;
    for (const Step& s : successors(tr.last(), Relation::full()))
      if (alpha_eq(s.result, next)) {
        tr.steps.push_back(s);
        found = true;
        break;
      }
    if (!found) throw std::logic_error("no step to " + std::string(*it));
  }
  return tr;
}

}  // namespace shuffle::testing

#define CHECK_ALPHA(a, b)                                                         \
  do {                                                                            \
    const ::shuffle::Term lhs_ = (a);                                             \
    const ::shuffle::Term rhs_ = (b);                                             \
    INFO("lhs: ", ::shuffle::print(lhs_), "  rhs: ", ::shuffle::print(rhs_));     \
    CHECK(::shuffle::alpha_eq(lhs_, rhs_));                                       \
  } while (false)
