#include "qdeform/dsl.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

namespace qdeform::dsl {

namespace {

double normalize_zero(double v) { return v == 0.0 ? 0.0 : v; }

Complex normalize(Complex v) { return Complex(normalize_zero(v.real()), normalize_zero(v.imag())); }

bool is_literal(const ScalarPtr& s) { return s->kind == ScalarExpr::Kind::literal; }

ScalarPtr node(ScalarExpr::Kind k, ScalarPtr a = nullptr, ScalarPtr b = nullptr) {
    auto n = std::make_shared<ScalarExpr>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

} // namespace

ScalarPtr scalar_literal(Complex value) {
    auto n = std::make_shared<ScalarExpr>();
    n->kind = ScalarExpr::Kind::literal;
    n->value = normalize(value);
    return n;
}

ScalarPtr scalar_param(std::string name) {
    auto n = std::make_shared<ScalarExpr>();
    n->kind = ScalarExpr::Kind::param;
    n->name = std::move(name);
    return n;
}

ScalarPtr scalar_neg(ScalarPtr a) {
    if (is_literal(a)) return scalar_literal(-a->value);
    return node(ScalarExpr::Kind::neg, std::move(a));
}

ScalarPtr scalar_add(ScalarPtr a, ScalarPtr b) {
    if (is_literal(a) && is_literal(b)) return scalar_literal(a->value + b->value);
    return node(ScalarExpr::Kind::add, std::move(a), std::move(b));
}

ScalarPtr scalar_sub(ScalarPtr a, ScalarPtr b) {
    if (is_literal(a) && is_literal(b)) return scalar_literal(a->value - b->value);
    return node(ScalarExpr::Kind::sub, std::move(a), std::move(b));
}

ScalarPtr scalar_mul(ScalarPtr a, ScalarPtr b) {
    if (is_literal(a) && is_literal(b)) return scalar_literal(a->value * b->value);
    return node(ScalarExpr::Kind::mul, std::move(a), std::move(b));
}

ScalarPtr scalar_div(ScalarPtr a, ScalarPtr b) {
    if (is_literal(a) && is_literal(b)) return scalar_literal(a->value / b->value);
    return node(ScalarExpr::Kind::div, std::move(a), std::move(b));
}

ScalarPtr scalar_exp(ScalarPtr a) {
    if (is_literal(a)) return scalar_literal(std::exp(a->value));
    return node(ScalarExpr::Kind::exp_fn, std::move(a));
}

ScalarPtr scalar_cos(ScalarPtr a) {
    if (is_literal(a)) return scalar_literal(std::cos(a->value));
    return node(ScalarExpr::Kind::cos_fn, std::move(a));
}

Complex eval_scalar(const ScalarPtr& s, const std::map<std::string, Complex>& params) {
    switch (s->kind) {
        case ScalarExpr::Kind::literal: return s->value;
        case ScalarExpr::Kind::param: {
            auto it = params.find(s->name);
            if (it == params.end()) throw BindingError("parameter '" + s->name + "' has no bound value");
            return it->second;
        }
        case ScalarExpr::Kind::add: return eval_scalar(s->a, params) + eval_scalar(s->b, params);
        case ScalarExpr::Kind::sub: return eval_scalar(s->a, params) - eval_scalar(s->b, params);
        case ScalarExpr::Kind::mul: return eval_scalar(s->a, params) * eval_scalar(s->b, params);
        case ScalarExpr::Kind::div: return eval_scalar(s->a, params) / eval_scalar(s->b, params);
        case ScalarExpr::Kind::neg: return -eval_scalar(s->a, params);
        case ScalarExpr::Kind::exp_fn: return std::exp(eval_scalar(s->a, params));
        case ScalarExpr::Kind::cos_fn: return std::cos(eval_scalar(s->a, params));
    }
    throw Error("eval_scalar: corrupt node");
}

// --- matrix expression constructors ----------------------------------------

namespace {

ExprPtr enode(Expr::Kind k) {
    auto n = std::make_shared<Expr>();
    n->kind = k;
    return n;
}

} // namespace

ExprPtr make_generator(std::string name) {
    auto n = std::make_shared<Expr>();
    n->kind = Expr::Kind::generator;
    n->name = std::move(name);
    return n;
}

ExprPtr make_identity() { return enode(Expr::Kind::identity); }

ExprPtr make_scalar_atom(ScalarPtr s) {
    auto n = std::make_shared<Expr>();
    n->kind = Expr::Kind::scalar_atom;
    n->scalar = std::move(s);
    return n;
}

ExprPtr make_scalar_mul(ScalarPtr s, ExprPtr x) {
    // the grammar cannot produce scalar*(bare scalar) or scalar*(scalar*f);
    // fold them so programmatic trees match parsed ones
    if (x->kind == Expr::Kind::scalar_atom) return make_scalar_atom(scalar_mul(std::move(s), x->scalar));
    if (x->kind == Expr::Kind::scalar_mul)
        return make_scalar_mul(scalar_mul(std::move(s), x->scalar), x->kids.front());
    auto n = std::make_shared<Expr>();
    n->kind = Expr::Kind::scalar_mul;
    n->scalar = std::move(s);
    n->kids.push_back(std::move(x));
    return n;
}

ExprPtr make_sum(std::vector<ExprPtr> terms, std::vector<int> signs) {
    if (terms.size() != signs.size() || terms.empty())
        throw Error("make_sum: terms/signs mismatch");
    if (terms.size() == 1 && signs[0] == 1) return terms[0];
    auto n = std::make_shared<Expr>();
    n->kind = Expr::Kind::sum;
    n->kids = std::move(terms);
    n->signs = std::move(signs);
    return n;
}

ExprPtr make_product(std::vector<ExprPtr> factors) {
    if (factors.empty()) throw Error("make_product: empty");
    if (factors.size() == 1) return factors[0];
    auto n = std::make_shared<Expr>();
    n->kind = Expr::Kind::product;
    n->kids = std::move(factors);
    return n;
}

ExprPtr make_bracket(ExprPtr x, ExprPtr y, ScalarPtr q) {
    auto n = std::make_shared<Expr>();
    n->kind = Expr::Kind::bracket;
    n->kids = {std::move(x), std::move(y)};
    n->scalar = std::move(q);
    return n;
}

ExprPtr make_antibracket(ExprPtr x, ExprPtr y) {
    auto n = std::make_shared<Expr>();
    n->kind = Expr::Kind::antibracket;
    n->kids = {std::move(x), std::move(y)};
    return n;
}

ExprPtr make_dagger(ExprPtr x) {
    auto n = std::make_shared<Expr>();
    n->kind = Expr::Kind::dagger;
    n->kids = {std::move(x)};
    return n;
}

ExprPtr make_power(ExprPtr x, int exponent) {
    if (exponent < 0) throw Error("make_power: exponent must be >= 0");
    auto n = std::make_shared<Expr>();
    n->kind = Expr::Kind::power;
    n->kids = {std::move(x)};
    n->exponent = exponent;
    return n;
}

bool AlgebraPresentation::has_generator(std::string_view id) const {
    return std::find(generators.begin(), generators.end(), id) != generators.end();
}

bool AlgebraPresentation::has_parameter(std::string_view id) const {
    for (const auto& [name, _] : parameters)
        if (name == id) return true;
    return false;
}

void AlgebraPresentation::set_parameter(const std::string& id, Complex value) {
    for (auto& [name, v] : parameters)
        if (name == id) {
            v = value;
            return;
        }
    parameters.emplace_back(id, value);
}

// --- lexer ------------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { end, ident, number, punct };
    Kind kind = Kind::end;
    std::string text;
    double num = 0.0;
    bool imaginary = false;
    char ch = 0;
    int line = 1;
    int col = 1;
};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::string printable(char c) {
    if (c >= 0x20 && c < 0x7f) return std::string("'") + c + "'";
    char buf[16];
    std::snprintf(buf, sizeof buf, "byte 0x%02x", static_cast<unsigned char>(c));
    return buf;
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            t.kind = Token::Kind::ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (digit(c) || (c == '.' && i + 1 < src.size() && digit(src[i + 1]))) {
            std::size_t j = i;
            while (j < src.size() && digit(src[j])) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                while (j < src.size() && digit(src[j])) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && digit(src[k])) {
                    while (k < src.size() && digit(src[k])) ++k;
                    j = k;
                }
            }
            double value = 0.0;
            auto res = std::from_chars(src.data() + i, src.data() + j, value);
            if (res.ec != std::errc() || !std::isfinite(value))
                throw ParseError(line, col, "number literal out of range");
            t.kind = Token::Kind::number;
            t.num = value;
            // a bare trailing 'i' marks an imaginary literal (0.5i)
            if (j < src.size() && src[j] == 'i' && !(j + 1 < src.size() && ident_char(src[j + 1]))) {
                t.imaginary = true;
                ++j;
            }
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        switch (c) {
            case ';': case ':': case ',': case '(': case ')': case '=':
            case '+': case '-': case '*': case '/':
                t.kind = Token::Kind::punct;
                t.ch = c;
                advance(1);
                out.push_back(std::move(t));
                continue;
            default:
                throw ParseError(line, col, "unexpected character " + printable(c));
        }
    }
    Token end;
    end.kind = Token::Kind::end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

const std::set<std::string> kKeywords = {"algebra", "gen", "param", "rel",    "bracket", "antibracket",
                                         "dagger",  "power", "I",    "pi",    "i",       "exp",
                                         "cos"};

// internal signal for "this is not a scalar here"; rewound, never user-facing
struct ScalarFail {
    int line, col;
    std::string msg;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

    AlgebraPresentation parse() {
        expect_keyword("algebra");
        p_.name = expect_ident("algebra name");
        expect_punct(';');
        while (!at_end()) {
            const Token& t = peek();
            if (t.kind != Token::Kind::ident)
                fail(t, "expected 'gen', 'param' or 'rel'");
            if (t.text == "gen") parse_gen_decl();
            else if (t.text == "param") parse_param_decl();
            else if (t.text == "rel") parse_rel_decl();
            else fail(t, "expected 'gen', 'param' or 'rel', found '" + t.text + "'");
        }
        return std::move(p_);
    }

  private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    static constexpr int kMaxDepth = 200;
    AlgebraPresentation p_;
    std::set<std::string> labels_;

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser) : p(parser) {
            if (++p.depth_ > kMaxDepth) {
                const Token& t = p.peek();
                throw ParseError(t.line, t.col, "expression nesting too deep");
            }
        }
        ~DepthGuard() { --p.depth_; }
    };

    bool at_end() const { return toks_[pos_].kind == Token::Kind::end; }
    const Token& peek() const { return toks_[pos_]; }
    const Token& get() { return toks_[pos_++]; }

    [[noreturn]] static void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.col, msg);
    }

    bool peek_punct(char c) const {
        return peek().kind == Token::Kind::punct && peek().ch == c;
    }

    void expect_punct(char c) {
        if (!peek_punct(c)) fail(peek(), std::string("expected '") + c + "'" + found_str());
        get();
    }

    std::string found_str() const {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Kind::end: return ", found end of input";
            case Token::Kind::ident: return ", found '" + t.text + "'";
            case Token::Kind::number: return ", found number";
            case Token::Kind::punct: return std::string(", found '") + t.ch + "'";
        }
        return "";
    }

    void expect_keyword(const std::string& kw) {
        const Token& t = peek();
        if (t.kind != Token::Kind::ident || t.text != kw)
            fail(t, "expected '" + kw + "'" + found_str());
        get();
    }

    std::string expect_ident(const std::string& what) {
        const Token& t = peek();
        if (t.kind != Token::Kind::ident)
            fail(t, "expected " + what + found_str());
        return get().text;
    }

    void declare(const std::string& id, const Token& t, bool as_generator) {
        if (kKeywords.count(id))
            fail(t, "'" + id + "' is a reserved word and cannot be declared");
        if (p_.has_generator(id) || p_.has_parameter(id))
            fail(t, "duplicate identifier '" + id + "'");
        if (as_generator) p_.generators.push_back(id);
    }

    void parse_gen_decl() {
        get(); // gen
        for (;;) {
            const Token& t = peek();
            std::string id = expect_ident("generator name");
            declare(id, t, true);
            if (peek_punct(',')) {
                get();
                continue;
            }
            break;
        }
        expect_punct(';');
    }

    void parse_param_decl() {
        get(); // param
        const Token& t = peek();
        std::string id = expect_ident("parameter name");
        declare(id, t, false);
        expect_punct('=');
        ScalarPtr v = parse_scalar_root(/*allow_params=*/false);
        if (v->kind != ScalarExpr::Kind::literal)
            fail(peek(), "parameter default must be a constant");
        p_.parameters.emplace_back(id, v->value);
        expect_punct(';');
    }

    void parse_rel_decl() {
        get(); // rel
        const Token& t = peek();
        std::string label = expect_ident("relation label");
        if (!labels_.insert(label).second) fail(t, "duplicate relation label '" + label + "'");
        expect_punct(':');
        ExprPtr lhs = parse_expr();
        expect_punct('=');
        ExprPtr rhs = parse_expr();
        expect_punct(';');
        p_.relations.push_back(Relation{std::move(label), std::move(lhs), std::move(rhs)});
    }

    // --- matrix expressions ---

    ExprPtr parse_expr() {
        DepthGuard guard(*this);
        std::vector<ExprPtr> terms{parse_term()};
        std::vector<int> signs{+1};
        while (peek_punct('+') || peek_punct('-')) {
            const int sign = peek().ch == '+' ? +1 : -1;
            get();
            terms.push_back(parse_term());
            signs.push_back(sign);
        }
        return make_sum(std::move(terms), std::move(signs));
    }

    bool starts_factor() const {
        const Token& t = peek();
        return t.kind == Token::Kind::ident || t.kind == Token::Kind::number ||
               (t.kind == Token::Kind::punct && t.ch == '(');
    }

    ExprPtr parse_term() {
        std::vector<ExprPtr> factors{parse_factor()};
        while (starts_factor()) factors.push_back(parse_factor());
        return make_product(std::move(factors));
    }

    ExprPtr parse_factor() {
        DepthGuard guard(*this);
        const Token& t = peek();
        if (t.kind == Token::Kind::ident) {
            if (t.text == "I" || t.text == "bracket" || t.text == "antibracket" || t.text == "dagger" ||
                t.text == "power" || p_.has_generator(t.text))
                return parse_primary();
            if (t.text == "pi" || t.text == "i" || t.text == "exp" || t.text == "cos" ||
                p_.has_parameter(t.text))
                return parse_scalar_factor();
            fail(t, "unknown symbol '" + t.text + "'");
        }
        if (t.kind == Token::Kind::number || (t.kind == Token::Kind::punct && t.ch == '-'))
            return parse_scalar_factor();
        if (t.kind == Token::Kind::punct && t.ch == '(') {
            // could open a scalar or a matrix expression; try the scalar first
            const std::size_t save = pos_;
            try {
                return parse_scalar_factor();
            } catch (const ScalarFail&) {
                pos_ = save;
                return parse_primary();
            }
        }
        return parse_primary();
    }

    ExprPtr parse_scalar_factor() {
        ScalarPtr s = parse_scalar();
        if (peek_punct('*')) {
            get();
            return make_scalar_mul(std::move(s), parse_factor());
        }
        return make_scalar_atom(std::move(s));
    }

    ExprPtr parse_primary() {
        DepthGuard guard(*this);
        const Token& t = peek();
        if (t.kind == Token::Kind::ident) {
            if (t.text == "I") {
                get();
                return make_identity();
            }
            if (t.text == "bracket") {
                get();
                expect_punct('(');
                ExprPtr x = parse_expr();
                expect_punct(',');
                ExprPtr y = parse_expr();
                expect_punct(',');
                ScalarPtr q = parse_scalar_root(/*allow_params=*/true);
                expect_punct(')');
                return make_bracket(std::move(x), std::move(y), std::move(q));
            }
            if (t.text == "antibracket") {
                get();
                expect_punct('(');
                ExprPtr x = parse_expr();
                expect_punct(',');
                ExprPtr y = parse_expr();
                expect_punct(')');
                return make_antibracket(std::move(x), std::move(y));
            }
            if (t.text == "dagger") {
                get();
                expect_punct('(');
                ExprPtr x = parse_primary();
                expect_punct(')');
                return make_dagger(std::move(x));
            }
            if (t.text == "power") {
                get();
                expect_punct('(');
                ExprPtr x = parse_primary();
                expect_punct(',');
                const Token& k = peek();
                if (k.kind != Token::Kind::number || k.imaginary || k.num != std::floor(k.num) || k.num < 0 ||
                    k.num > 1e9)
                    fail(k, "power exponent must be a nonnegative integer");
                get();
                expect_punct(')');
                return make_power(std::move(x), static_cast<int>(k.num));
            }
            if (p_.has_generator(t.text)) {
                get();
                return make_generator(t.text);
            }
            if (p_.has_parameter(t.text))
                fail(t, "parameter '" + t.text + "' used where a matrix expression is required");
            fail(t, "unknown symbol '" + t.text + "'");
        }
        if (t.kind == Token::Kind::punct && t.ch == '(') {
            get();
            ExprPtr e = parse_expr();
            expect_punct(')');
            return e;
        }
        fail(t, "expected an expression; expected one of: identifier, 'I', '(', 'bracket', 'antibracket', "
                "'dagger', 'power', scalar" + found_str());
    }

    // --- scalar expressions ---

    ScalarPtr parse_scalar_root(bool allow_params) {
        try {
            return parse_scalar(allow_params);
        } catch (const ScalarFail& f) {
            throw ParseError(f.line, f.col, f.msg);
        }
    }

    ScalarPtr parse_scalar(bool allow_params = true) {
        DepthGuard guard(*this);
        ScalarPtr v = parse_scalar_term(allow_params);
        for (;;) {
            if (!(peek_punct('+') || peek_punct('-'))) break;
            const std::size_t save = pos_;
            const char op = get().ch;
            ScalarPtr rhs;
            try {
                rhs = parse_scalar_term(allow_params);
            } catch (const ScalarFail&) {
                pos_ = save;
                break;
            }
            v = op == '+' ? scalar_add(std::move(v), std::move(rhs)) : scalar_sub(std::move(v), std::move(rhs));
        }
        return v;
    }

    ScalarPtr parse_scalar_term(bool allow_params) {
        ScalarPtr v = parse_scalar_unary(allow_params);
        for (;;) {
            if (!(peek_punct('*') || peek_punct('/'))) break;
            const std::size_t save = pos_;
            const char op = get().ch;
            ScalarPtr rhs;
            try {
                rhs = parse_scalar_unary(allow_params);
            } catch (const ScalarFail&) {
                pos_ = save;
                break;
            }
            v = op == '*' ? scalar_mul(std::move(v), std::move(rhs)) : scalar_div(std::move(v), std::move(rhs));
        }
        return v;
    }

    ScalarPtr parse_scalar_unary(bool allow_params) {
        DepthGuard guard(*this);
        if (peek_punct('-')) {
            get();
            return scalar_neg(parse_scalar_unary(allow_params));
        }
        return parse_scalar_atom(allow_params);
    }

    ScalarPtr parse_scalar_atom(bool allow_params) {
        DepthGuard guard(*this);
        const Token& t = peek();
        if (t.kind == Token::Kind::number) {
            get();
            return scalar_literal(t.imaginary ? Complex(0.0, t.num) : Complex(t.num, 0.0));
        }
        if (t.kind == Token::Kind::punct && t.ch == '(') {
            get();
            ScalarPtr v = parse_scalar(allow_params);
            if (!peek_punct(')')) throw ScalarFail{peek().line, peek().col, "expected ')' in scalar expression"};
            get();
            return v;
        }
        if (t.kind == Token::Kind::ident) {
            if (t.text == "pi") {
                get();
                return scalar_literal(Complex(std::numbers::pi, 0.0));
            }
            if (t.text == "i") {
                get();
                return scalar_literal(Complex(0.0, 1.0));
            }
            if (t.text == "exp" || t.text == "cos") {
                const bool is_exp = t.text == "exp";
                get();
                if (!peek_punct('(')) throw ScalarFail{peek().line, peek().col, "expected '(' after '" + t.text + "'"};
                get();
                ScalarPtr v = parse_scalar(allow_params);
                if (!peek_punct(')'))
                    throw ScalarFail{peek().line, peek().col, "expected ')' in scalar expression"};
                get();
                return is_exp ? scalar_exp(std::move(v)) : scalar_cos(std::move(v));
            }
            if (p_.has_parameter(t.text)) {
                if (!allow_params)
                    throw ScalarFail{t.line, t.col, "parameter defaults must be constant"};
                get();
                return scalar_param(t.text);
            }
            if (p_.has_generator(t.text))
                throw ScalarFail{t.line, t.col, "generator '" + t.text + "' cannot appear in a scalar"};
            throw ScalarFail{t.line, t.col, "unknown symbol '" + t.text + "'"};
        }
        throw ScalarFail{t.line, t.col, "expected a scalar"};
    }
};

} // namespace

AlgebraPresentation parse_presentation(std::string_view source) {
    Parser parser(source);
    return parser.parse();
}

// --- equality ----------------------------------------------------------------

bool equal(const ScalarPtr& a, const ScalarPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case ScalarExpr::Kind::literal:
            return a->value.real() == b->value.real() && a->value.imag() == b->value.imag();
        case ScalarExpr::Kind::param:
            return a->name == b->name;
        case ScalarExpr::Kind::neg:
        case ScalarExpr::Kind::exp_fn:
        case ScalarExpr::Kind::cos_fn:
            return equal(a->a, b->a);
        default:
            return equal(a->a, b->a) && equal(a->b, b->b);
    }
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    if (a->name != b->name || a->exponent != b->exponent || a->signs != b->signs) return false;
    if ((a->scalar == nullptr) != (b->scalar == nullptr)) return false;
    if (a->scalar && !equal(a->scalar, b->scalar)) return false;
    if (a->kids.size() != b->kids.size()) return false;
    for (std::size_t k = 0; k < a->kids.size(); ++k)
        if (!equal(a->kids[k], b->kids[k])) return false;
    return true;
}

bool structurally_equal(const AlgebraPresentation& a, const AlgebraPresentation& b, bool ignore_name) {
    if (!ignore_name && a.name != b.name) return false;
    if (a.generators != b.generators) return false;
    if (a.parameters.size() != b.parameters.size()) return false;
    for (std::size_t k = 0; k < a.parameters.size(); ++k) {
        if (a.parameters[k].first != b.parameters[k].first) return false;
        const Complex x = a.parameters[k].second, y = b.parameters[k].second;
        if (x.real() != y.real() || x.imag() != y.imag()) return false;
    }
    if (a.relations.size() != b.relations.size()) return false;
    for (std::size_t k = 0; k < a.relations.size(); ++k) {
        if (a.relations[k].label != b.relations[k].label) return false;
        if (!equal(a.relations[k].lhs, b.relations[k].lhs)) return false;
        if (!equal(a.relations[k].rhs, b.relations[k].rhs)) return false;
    }
    return true;
}

namespace {

void collect_generators(const ExprPtr& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind == Expr::Kind::generator) out.insert(e->name);
    for (const auto& k : e->kids) collect_generators(k, out);
}

} // namespace

std::vector<std::string> referenced_generators(const AlgebraPresentation& p) {
    std::set<std::string> names;
    for (const auto& r : p.relations) {
        collect_generators(r.lhs, names);
        collect_generators(r.rhs, names);
    }
    return {names.begin(), names.end()};
}

} // namespace qdeform::dsl
