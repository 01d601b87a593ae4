#pragma once

#include <iosfwd>
#include <string>

#include "depa/quiver.hpp"
#include "depa/rewrite.hpp"

namespace depa {

/// Named constructor expressions: `k` (or `ground`), `sum_of_ground(n)`,
/// `truncated_poly(n)`, `z_algebra(n)`, `matrix_algebra(n)`, `group_like(n)`,
/// `exterior(n)`, `clifford(n)` (identity form). Throws UnknownAlgebra.
StandardAlgebra parse_algebra_expr(const std::string& expr, long long field);

/// Quiver spec text, one declaration per line, `#` comments:
///   algebra <name> = <expr>
///   algebra <name> dim=<d> sc=[(i,j,k,c),...] unit=[...] form=[...] xdeg=[...]
///   vertex <id> : <name-or-expr>
///   arrow <id> : <src> -> <tgt> kind=(tensor|ident) [xweight=<k>/2]
///   fold by (<vertex cycles>; <arrow cycles>)
/// Throws ParseError with the line number.
DecoratedQuiver parse_quiver_spec(std::istream& in, long long field);

/// Rewrite rule file. Generator declarations come first:
///   gen <name> : <src> -> <tgt> [xweight=<k>/2]
///   xgen <name> : <vertex>
///   bound <n>
/// then `order vertex <i>: g1 > g2 > ...` and `rule: <word> -> ...` lines as
/// accepted by apply_rule_file.
RewriteSystem parse_rule_system(std::istream& in, long long field,
                                int degree_bound = -1);

}  // namespace depa
