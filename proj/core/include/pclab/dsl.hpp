#ifndef PCLAB_DSL_HPP
#define PCLAB_DSL_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pclab/series.hpp"

namespace pclab::dsl {

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
    enum class Kind { number, zeta, var, call, negate, binary, power };

    Kind kind;
    Int number;             // number (non-negative integer literal)
    unsigned long zeta_n = 0;  // zeta(n)
    int var_index = 0;      // var: 1-based; 0 encodes 't'
    std::string call_name;  // call
    char op = 0;            // binary: + - * /
    unsigned long exponent = 0;  // power
    std::vector<AstPtr> args;    // call args, binary lhs/rhs, negate/power operand
};

/// Parses against the declared arity m; syntax errors carry line/column and
/// the expected-token set, variable indexes above m raise arity errors.
AstPtr parse(const std::string& expr, int m);

/// Canonical rendering; parse(render(ast), m) is structurally identical.
std::string render(const AstPtr& ast);

bool ast_equal(const AstPtr& a, const AstPtr& b);

/// Lowering result: a series or an exact constant.
struct Lowered {
    std::optional<SeriesExpr> series;
    std::optional<CycloElement> constant;
};

Lowered lower(const AstPtr& ast, int m);

/// Convenience: expression -> series (constants become constant series of arity m).
SeriesExpr lower_to_series(const std::string& expr, int m);

/// Constant expressions only (round-trips CycloElement::to_string()).
CycloElement parse_element(const std::string& expr);

/// Expression -> polynomial in m variables (rejects non-polynomial input).
MultiPoly parse_polynomial(const std::string& expr, int m);

}  // namespace pclab::dsl

#endif
