#include "qdeform/dsl.hpp"

#include <cstdio>
#include <sstream>

namespace qdeform::dsl {

namespace {

// precedence levels shared by renderer and parser expectations:
// scalars: add/sub 0, mul/div 1, neg 2, atom 3
// matrix: sum 0, product 1, factor (scalar_mul / scalar_atom) 2, primary 3

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_complex_literal(Complex v, bool& negative_leading) {
    const double re = v.real(), im = v.imag();
    negative_leading = false;
    if (im == 0.0) {
        negative_leading = re < 0.0;
        return fmt_double(re);
    }
    if (re == 0.0) {
        negative_leading = im < 0.0;
        return fmt_double(im) + "i";
    }
    // both parts: a+bi as a single parenthesized literal
    std::string s = "(" + fmt_double(re);
    s += im < 0.0 ? "-" : "+";
    s += fmt_double(im < 0.0 ? -im : im);
    s += "i)";
    return s;
}

int scalar_prec(const ScalarExpr& s) {
    switch (s.kind) {
        case ScalarExpr::Kind::add:
        case ScalarExpr::Kind::sub: return 0;
        case ScalarExpr::Kind::mul:
        case ScalarExpr::Kind::div: return 1;
        case ScalarExpr::Kind::neg: return 2;
        default: return 3;
    }
}

std::string scalar_str(const ScalarPtr& s, int parent_prec) {
    std::string out;
    bool wrap = scalar_prec(*s) < parent_prec;
    switch (s->kind) {
        case ScalarExpr::Kind::literal: {
            bool neg = false;
            out = fmt_complex_literal(s->value, neg);
            wrap = neg && parent_prec > 0;
            break;
        }
        case ScalarExpr::Kind::param:
            out = s->name;
            break;
        case ScalarExpr::Kind::add:
            out = scalar_str(s->a, 0) + "+" + scalar_str(s->b, 1);
            break;
        case ScalarExpr::Kind::sub:
            out = scalar_str(s->a, 0) + "-" + scalar_str(s->b, 1);
            break;
        case ScalarExpr::Kind::mul:
            out = scalar_str(s->a, 1) + "*" + scalar_str(s->b, 2);
            break;
        case ScalarExpr::Kind::div:
            out = scalar_str(s->a, 1) + "/" + scalar_str(s->b, 2);
            break;
        case ScalarExpr::Kind::neg:
            out = "-" + scalar_str(s->a, 3);
            break;
        case ScalarExpr::Kind::exp_fn:
            out = "exp(" + scalar_str(s->a, 0) + ")";
            break;
        case ScalarExpr::Kind::cos_fn:
            out = "cos(" + scalar_str(s->a, 0) + ")";
            break;
    }
    return wrap ? "(" + out + ")" : out;
}

int expr_prec(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::sum: return 0;
        case Expr::Kind::product: return 1;
        case Expr::Kind::scalar_mul:
        case Expr::Kind::scalar_atom: return 2;
        default: return 3;
    }
}

bool ends_in_scalar_atom(const ExprPtr& e) {
    if (e->kind == Expr::Kind::scalar_atom) return true;
    // inside a product the last child renders unparenthesized only when it is
    // factor-level, so only a trailing scalar_atom is exposed
    return e->kind == Expr::Kind::product && e->kids.back()->kind == Expr::Kind::scalar_atom;
}

std::string expr_str(const ExprPtr& e, int parent_prec) {
    std::string out;
    bool wrap = expr_prec(*e) < parent_prec;
    switch (e->kind) {
        case Expr::Kind::generator:
            out = e->name;
            break;
        case Expr::Kind::identity:
            out = "I";
            break;
        case Expr::Kind::scalar_atom:
            out = scalar_str(e->scalar, 0);
            break;
        case Expr::Kind::scalar_mul:
            out = scalar_str(e->scalar, 0) + "*" + expr_str(e->kids[0], 3);
            break;
        case Expr::Kind::sum: {
            std::ostringstream os;
            for (std::size_t k = 0; k < e->kids.size(); ++k) {
                if (k > 0) os << (e->signs[k] > 0 ? " + " : " - ");
                std::string part = expr_str(e->kids[k], 1);
                // a non-final term ending in a bare scalar would let the
                // scalar parser absorb the following +/- on reparse
                if (k + 1 < e->kids.size() && ends_in_scalar_atom(e->kids[k]))
                    part = "(" + part + ")";
                os << part;
            }
            out = os.str();
            break;
        }
        case Expr::Kind::product: {
            std::ostringstream os;
            for (std::size_t k = 0; k < e->kids.size(); ++k) {
                std::string part = expr_str(e->kids[k], 2);
                // a leading '-' after the first factor would reparse as subtraction
                if (k > 0) {
                    if (part[0] == '-') part = "(" + part + ")";
                    os << ' ';
                }
                os << part;
            }
            out = os.str();
            break;
        }
        case Expr::Kind::bracket:
            out = "bracket(" + expr_str(e->kids[0], 0) + ", " + expr_str(e->kids[1], 0) + ", " +
                  scalar_str(e->scalar, 0) + ")";
            break;
        case Expr::Kind::antibracket:
            out = "antibracket(" + expr_str(e->kids[0], 0) + ", " + expr_str(e->kids[1], 0) + ")";
            break;
        case Expr::Kind::dagger:
            out = "dagger(" + expr_str(e->kids[0], 3) + ")";
            break;
        case Expr::Kind::power:
            out = "power(" + expr_str(e->kids[0], 3) + ", " + std::to_string(e->exponent) + ")";
            break;
    }
    return wrap ? "(" + out + ")" : out;
}

} // namespace

std::string render_presentation(const AlgebraPresentation& p) {
    std::ostringstream os;
    os << "algebra " << p.name << ";\n";
    if (!p.generators.empty()) {
        os << "gen ";
        for (std::size_t k = 0; k < p.generators.size(); ++k) {
            if (k > 0) os << ", ";
            os << p.generators[k];
        }
        os << ";\n";
    }
    for (const auto& [name, value] : p.parameters) {
        bool neg = false;
        os << "param " << name << " = " << fmt_complex_literal(value, neg) << ";\n";
    }
    for (const auto& r : p.relations)
        os << "rel " << r.label << ": " << expr_str(r.lhs, 0) << " = " << expr_str(r.rhs, 0) << ";\n";
    return os.str();
}

} // namespace qdeform::dsl
