#ifndef QDEFORM_TESTS_ORACLE_EVAL_HPP
#define QDEFORM_TESTS_ORACLE_EVAL_HPP

// Straight-line matrix arithmetic oracle for the expression evaluator. Kept
// deliberately naive and independent of the library's evaluation path: plain
// nested vectors, triple-loop products, no Eigen.

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdeform/dsl.hpp"

namespace oracle {

using Complex = std::complex<double>;
using NaiveMatrix = std::vector<std::vector<Complex>>;

inline NaiveMatrix zeros(std::size_t n) { return NaiveMatrix(n, std::vector<Complex>(n)); }

inline NaiveMatrix identity(std::size_t n) {
    NaiveMatrix m = zeros(n);
    for (std::size_t k = 0; k < n; ++k) m[k][k] = 1.0;
    return m;
}

inline NaiveMatrix add(const NaiveMatrix& a, const NaiveMatrix& b, Complex sign) {
    NaiveMatrix out = a;
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < a.size(); ++c) out[r][c] += sign * b[r][c];
    return out;
}

inline NaiveMatrix mul(const NaiveMatrix& a, const NaiveMatrix& b) {
    const std::size_t n = a.size();
    NaiveMatrix out = zeros(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t c = 0; c < n; ++c) out[r][c] += a[r][k] * b[k][c];
    return out;
}

inline NaiveMatrix scale(const NaiveMatrix& a, Complex s) {
    NaiveMatrix out = a;
    for (auto& row : out)
        for (auto& v : row) v *= s;
    return out;
}

inline NaiveMatrix adjoint(const NaiveMatrix& a) {
    const std::size_t n = a.size();
    NaiveMatrix out = zeros(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out[r][c] = std::conj(a[c][r]);
    return out;
}

inline Complex scalar(const qdeform::dsl::ScalarPtr& s, const std::map<std::string, Complex>& params) {
    using K = qdeform::dsl::ScalarExpr::Kind;
    switch (s->kind) {
        case K::literal: return s->value;
        case K::param: return params.at(s->name);
        case K::add: return scalar(s->a, params) + scalar(s->b, params);
        case K::sub: return scalar(s->a, params) - scalar(s->b, params);
        case K::mul: return scalar(s->a, params) * scalar(s->b, params);
        case K::div: return scalar(s->a, params) / scalar(s->b, params);
        case K::neg: return -scalar(s->a, params);
        case K::exp_fn: return std::exp(scalar(s->a, params));
        case K::cos_fn: return std::cos(scalar(s->a, params));
    }
    throw std::logic_error("oracle: bad scalar node");
}

inline NaiveMatrix eval(const qdeform::dsl::ExprPtr& e, const std::map<std::string, NaiveMatrix>& gens,
                        const std::map<std::string, Complex>& params, std::size_t dim) {
    using K = qdeform::dsl::Expr::Kind;
    switch (e->kind) {
        case K::generator: return gens.at(e->name);
        case K::identity: return identity(dim);
        case K::scalar_atom: return scale(identity(dim), scalar(e->scalar, params));
        case K::scalar_mul: return scale(eval(e->kids[0], gens, params, dim), scalar(e->scalar, params));
        case K::sum: {
            NaiveMatrix acc = eval(e->kids[0], gens, params, dim);
            for (std::size_t k = 1; k < e->kids.size(); ++k)
                acc = add(acc, eval(e->kids[k], gens, params, dim),
                          Complex(static_cast<double>(e->signs[k]), 0.0));
            return acc;
        }
        case K::product: {
            NaiveMatrix acc = eval(e->kids[0], gens, params, dim);
            for (std::size_t k = 1; k < e->kids.size(); ++k)
                acc = mul(acc, eval(e->kids[k], gens, params, dim));
            return acc;
        }
        case K::bracket: {
            NaiveMatrix x = eval(e->kids[0], gens, params, dim);
            NaiveMatrix y = eval(e->kids[1], gens, params, dim);
            return add(mul(x, y), scale(mul(y, x), scalar(e->scalar, params)), Complex(-1.0, 0.0));
        }
        case K::antibracket: {
            NaiveMatrix x = eval(e->kids[0], gens, params, dim);
            NaiveMatrix y = eval(e->kids[1], gens, params, dim);
            return add(mul(x, y), mul(y, x), Complex(1.0, 0.0));
        }
        case K::dagger: return adjoint(eval(e->kids[0], gens, params, dim));
        case K::power: {
            NaiveMatrix acc = identity(dim);
            for (int k = 0; k < e->exponent; ++k) acc = mul(acc, eval(e->kids[0], gens, params, dim));
            return acc;
        }
    }
    throw std::logic_error("oracle: bad expr node");
}

} // namespace oracle

#endif
