#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "crgeom/algebra/coeff.hpp"

namespace crgeom::algebra {

/// Parses the coefficient grammar:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' ['-'] integer)?
///   base   := rational | 'i' | ident | '(' expr ')'
///   ident  := t | z<d> | zb<d> | s | a | E
/// Without an explicit arity the largest z/zb index in the text is used.
/// Throws ParseError with the offending byte offset.
Coeff parse_expr(std::string_view text, std::optional<int> arity = std::nullopt);

/// Canonical printed form; parse_expr(print_expr(x), x.arity()) == x.
inline std::string print_expr(const Coeff& x) { return x.to_string(); }

}  // namespace crgeom::algebra
