#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shuffle/trace.hpp"
#include "shuffle/verdict.hpp"

namespace shuffle {

struct Analysis {
  Verdict3 verdict = Verdict3::Unknown;
  /// One line: the value, the stuck or looping term, the distinguishing
  /// context, or the substitution / arguments used.
  std::string witness;
  std::optional<Trace> trace;
  std::optional<Term> value;
  std::size_t fuel_spent = 0;
};

/// Head betav evaluation: Yes on a value, No on a stuck term or a cycle.
Analysis halts(const Term& m, std::size_t fuel);

/// Breadth-first over head v steps (`fuel` expanded terms). A value found
/// must be the one head betav evaluation reaches; otherwise ConsistencyError.
Analysis head_v_eval(const Term& m, std::size_t fuel);

/// The hole of a context, printed as [].
Ident hole();
/// Fills every hole of `ctx` with `t`, capturing freely.
Term plug(const Term& ctx, const Term& t);

/// Contexts of size <= `size` over the free variables of m and n, at most
/// `contexts` of them. No when a context separates them by halts; never Yes.
Analysis obs_equiv_sample(const Term& m, const Term& n, std::size_t contexts, std::size_t size, std::size_t fuel);

/// Leftmost weak (resp. stratified) normalization: normal form Yes, cycle No.
Analysis potentially_valuable(const Term& m, std::size_t fuel);
Analysis solvable(const Term& m, std::size_t fuel);

/// Closed values of size <= val_size for the free variables (sorted by
/// name), then head betav evaluation to a value.
Analysis betav_pv_oracle(const Term& m, std::size_t val_size, std::size_t fuel);
/// (\x1...xk.m) M1 ... Mn with n <= arg_count closed arguments of size <=
/// arg_size, checking M ->betav* I.
Analysis betav_solv_oracle(const Term& m, std::size_t arg_count, std::size_t arg_size, std::size_t fuel);

}  // namespace shuffle
