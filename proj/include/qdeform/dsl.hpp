#ifndef QDEFORM_DSL_HPP
#define QDEFORM_DSL_HPP

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdeform/errors.hpp"

namespace qdeform::dsl {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Scalar expressions (complex-valued). Constant subtrees are folded at parse
// time, so a non-literal node always has a parameter reference somewhere
// below it; that keeps the rendered form canonical.
// ---------------------------------------------------------------------------

struct ScalarExpr;
using ScalarPtr = std::shared_ptr<const ScalarExpr>;

struct ScalarExpr {
    enum class Kind { literal, param, add, sub, mul, div, neg, exp_fn, cos_fn };
    Kind kind = Kind::literal;
    Complex value{};   // literal
    std::string name;  // param
    ScalarPtr a, b;    // operands
};

ScalarPtr scalar_literal(Complex value);
ScalarPtr scalar_param(std::string name);
ScalarPtr scalar_neg(ScalarPtr a);
ScalarPtr scalar_add(ScalarPtr a, ScalarPtr b);
ScalarPtr scalar_sub(ScalarPtr a, ScalarPtr b);
ScalarPtr scalar_mul(ScalarPtr a, ScalarPtr b);
ScalarPtr scalar_div(ScalarPtr a, ScalarPtr b);
ScalarPtr scalar_exp(ScalarPtr a);
ScalarPtr scalar_cos(ScalarPtr a);

Complex eval_scalar(const ScalarPtr& s, const std::map<std::string, Complex>& params);

// ---------------------------------------------------------------------------
// Matrix expressions.
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        generator,   // name
        identity,    // I
        scalar_atom, // bare scalar, meaning scalar * I
        scalar_mul,  // scalar * factor
        sum,         // kids with signs (+1/-1), first sign always +1
        product,     // juxtaposition, left to right
        bracket,     // kids = {x, y}, scalar = q
        antibracket, // kids = {x, y}
        dagger,      // kids = {x}
        power        // kids = {x}, exponent
    };
    Kind kind = Kind::identity;
    std::string name;
    ScalarPtr scalar;
    std::vector<ExprPtr> kids;
    std::vector<int> signs;
    int exponent = 0;
};

ExprPtr make_generator(std::string name);
ExprPtr make_identity();
ExprPtr make_scalar_atom(ScalarPtr s);
/// Normalizes scalar*(scalar_atom) and scalar*(scalar*x) so the tree matches
/// what the parser would produce for its own rendering.
ExprPtr make_scalar_mul(ScalarPtr s, ExprPtr x);
ExprPtr make_sum(std::vector<ExprPtr> terms, std::vector<int> signs);
ExprPtr make_product(std::vector<ExprPtr> factors);
ExprPtr make_bracket(ExprPtr x, ExprPtr y, ScalarPtr q);
ExprPtr make_antibracket(ExprPtr x, ExprPtr y);
ExprPtr make_dagger(ExprPtr x);
ExprPtr make_power(ExprPtr x, int exponent);

struct Relation {
    std::string label;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct AlgebraPresentation {
    std::string name;
    std::vector<std::string> generators;
    std::vector<std::pair<std::string, Complex>> parameters;
    std::vector<Relation> relations;

    bool has_generator(std::string_view id) const;
    bool has_parameter(std::string_view id) const;
    /// Replaces the default of an existing parameter, or appends a new one.
    void set_parameter(const std::string& id, Complex value);
};

/// Parses .qdl source. Total: every failure surfaces as ParseError with a
/// 1-based line/column position.
AlgebraPresentation parse_presentation(std::string_view source);

/// Canonical textual form; parse_presentation(render_presentation(p)) is
/// structurally equal to p.
std::string render_presentation(const AlgebraPresentation& p);

bool equal(const ScalarPtr& a, const ScalarPtr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);
bool structurally_equal(const AlgebraPresentation& a, const AlgebraPresentation& b, bool ignore_name = false);

/// Generator names referenced anywhere in the relation trees.
std::vector<std::string> referenced_generators(const AlgebraPresentation& p);

} // namespace qdeform::dsl

#endif
