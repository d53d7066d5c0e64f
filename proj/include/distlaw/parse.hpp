#ifndef DISTLAW_PARSE_HPP
#define DISTLAW_PARSE_HPP

#include "distlaw/theory.hpp"

#include <stdexcept>
#include <string>

namespace distlaw {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(std::string msg, int l = 0, int c = 0)
        : std::runtime_error(std::move(msg)), line(l), column(c) {}
};

// Canonical textual term form: prefix op(arg,...), bare identifiers for
// variables, rational parameters as op@{num/den}. Parenthesised infix for
// binary symbols is accepted on input (a * b, x + (neg(x))); chains like
// a*b*c are rejected as ambiguous. Whether a bare identifier is a variable
// or a constant is resolved against the signature.
Term parse_term(const std::string& text, const Signature& sig);

// Theory presentation files:
//   theory NAME {
//     op NAME : ARITY;        # op NAME@{} : ARITY declares a parameter family
//     const NAME;
//     eq NAME: TERM = TERM;
//     oracle builtin ID;      # or: oracle generic;
//     assert METAPROP;
//     exclude_ops NAME, ...;
//   }
// '#' starts a comment. Returns a finalized theory (certificate computed).
TheoryPtr parse_theory(const std::string& text);

enum class RenderFormat { Text, Json };
std::string render_theory(const Theory& th, RenderFormat fmt);

} // namespace distlaw

#endif
