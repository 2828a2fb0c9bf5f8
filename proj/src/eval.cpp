#include "qdeform/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <mutex>
#include <set>
#include <thread>

namespace qdeform {

namespace {

std::vector<int> matrix_band(const Matrix& m, const ModeShape& shape) {
    const int modes = static_cast<int>(shape.dims.size());
    std::vector<int> band(modes, 0);
    // strides for composite index decomposition (first mode is the major index)
    std::vector<int> stride(modes, 1);
    for (int k = modes - 2; k >= 0; --k) stride[k] = stride[k + 1] * shape.dims[k + 1];
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (m(r, c) == dsl::Complex(0.0, 0.0)) continue;
            int rr = static_cast<int>(r), cc = static_cast<int>(c);
            for (int k = 0; k < modes; ++k) {
                const int rk = rr / stride[k], ck = cc / stride[k];
                rr %= stride[k];
                cc %= stride[k];
                band[k] = std::max(band[k], std::abs(rk - ck));
            }
        }
    return band;
}

struct EvalValue {
    Matrix m;
    bool diag = false;
};

EvalValue ev_multiply(const EvalValue& a, const EvalValue& b) {
    return EvalValue{multiply(a.m, a.diag, b.m, b.diag), a.diag && b.diag};
}

EvalValue evaluate(const dsl::ExprPtr& e, const BoundAlgebra& alg) {
    using K = dsl::Expr::Kind;
    switch (e->kind) {
        case K::generator: {
            auto it = alg.generators.find(e->name);
            if (it == alg.generators.end())
                throw BindingError("generator '" + e->name + "' is not bound");
            return EvalValue{it->second.matrix, it->second.diagonal};
        }
        case K::identity:
            return EvalValue{Matrix::Identity(alg.dim, alg.dim), true};
        case K::scalar_atom: {
            const dsl::Complex s = dsl::eval_scalar(e->scalar, alg.parameters);
            Matrix m = Matrix::Zero(alg.dim, alg.dim);
            m.diagonal().setConstant(s);
            return EvalValue{std::move(m), true};
        }
        case K::scalar_mul: {
            EvalValue v = evaluate(e->kids[0], alg);
            v.m *= dsl::eval_scalar(e->scalar, alg.parameters);
            return v;
        }
        case K::sum: {
            EvalValue acc = evaluate(e->kids[0], alg);
            for (std::size_t k = 1; k < e->kids.size(); ++k) {
                EvalValue t = evaluate(e->kids[k], alg);
                if (e->signs[k] > 0)
                    acc.m += t.m;
                else
                    acc.m -= t.m;
                acc.diag = acc.diag && t.diag;
            }
            return acc;
        }
        case K::product: {
            EvalValue acc = evaluate(e->kids[0], alg);
            for (std::size_t k = 1; k < e->kids.size(); ++k)
                acc = ev_multiply(acc, evaluate(e->kids[k], alg));
            return acc;
        }
        case K::bracket: {
            EvalValue x = evaluate(e->kids[0], alg);
            EvalValue y = evaluate(e->kids[1], alg);
            const dsl::Complex q = dsl::eval_scalar(e->scalar, alg.parameters);
            EvalValue xy = ev_multiply(x, y), yx = ev_multiply(y, x);
            return EvalValue{xy.m - q * yx.m, xy.diag && yx.diag};
        }
        case K::antibracket: {
            EvalValue x = evaluate(e->kids[0], alg);
            EvalValue y = evaluate(e->kids[1], alg);
            EvalValue xy = ev_multiply(x, y), yx = ev_multiply(y, x);
            return EvalValue{xy.m + yx.m, xy.diag && yx.diag};
        }
        case K::dagger: {
            EvalValue v = evaluate(e->kids[0], alg);
            return EvalValue{v.m.adjoint(), v.diag};
        }
        case K::power: {
            EvalValue v = evaluate(e->kids[0], alg);
            EvalValue acc{Matrix::Identity(alg.dim, alg.dim), true};
            int ex = e->exponent;
            while (ex > 0) {
                if (ex & 1) acc = ev_multiply(acc, v);
                ex >>= 1;
                if (ex > 0) v = ev_multiply(v, v);
            }
            return acc;
        }
    }
    throw Error("evaluate: corrupt node");
}

std::vector<int> band_of(const dsl::ExprPtr& e, const BoundAlgebra& alg) {
    using K = dsl::Expr::Kind;
    const int modes = static_cast<int>(alg.shape.dims.size());
    std::vector<int> zero(modes, 0);
    switch (e->kind) {
        case K::generator: {
            auto it = alg.generators.find(e->name);
            return it == alg.generators.end() ? zero : it->second.band;
        }
        case K::identity:
        case K::scalar_atom:
            return zero;
        case K::scalar_mul:
        case K::dagger:
            return band_of(e->kids[0], alg);
        case K::sum: {
            std::vector<int> b = zero;
            for (const auto& k : e->kids) {
                auto kb = band_of(k, alg);
                for (int m = 0; m < modes; ++m) b[m] = std::max(b[m], kb[m]);
            }
            return b;
        }
        case K::product: {
            std::vector<int> b = zero;
            for (const auto& k : e->kids) {
                auto kb = band_of(k, alg);
                for (int m = 0; m < modes; ++m) b[m] += kb[m];
            }
            return b;
        }
        case K::bracket:
        case K::antibracket: {
            auto x = band_of(e->kids[0], alg), y = band_of(e->kids[1], alg);
            for (int m = 0; m < modes; ++m) x[m] += y[m];
            return x;
        }
        case K::power: {
            auto b = band_of(e->kids[0], alg);
            for (int m = 0; m < modes; ++m) b[m] *= e->exponent;
            return b;
        }
    }
    return zero;
}

void collect_singulars(const dsl::ExprPtr& e, const BoundAlgebra& alg, std::set<int>& out) {
    if (!e) return;
    if (e->kind == dsl::Expr::Kind::generator) {
        auto it = alg.generators.find(e->name);
        if (it != alg.generators.end())
            out.insert(it->second.singular_levels.begin(), it->second.singular_levels.end());
    }
    for (const auto& k : e->kids) collect_singulars(k, alg, out);
}

} // namespace

BoundAlgebra bind_representation(const dsl::AlgebraPresentation& presentation,
                                 const std::map<std::string, OperatorMatrix>& bindings,
                                 const std::map<std::string, dsl::Complex>& params,
                                 ModeShape shape,
                                 const std::map<std::string, std::vector<int>>& singular) {
    BoundAlgebra alg;
    alg.presentation = presentation;

    int dim = -1;
    FockBasis basis{};
    for (const auto& g : presentation.generators) {
        auto it = bindings.find(g);
        if (it == bindings.end())
            throw BindingError("missing binding for generator '" + g + "'");
        if (dim < 0) {
            dim = it->second.dim();
            basis = it->second.basis();
        } else if (!(it->second.basis() == basis)) {
            throw BindingError("generator '" + g + "' is bound on a different basis");
        }
    }
    if (dim < 0) dim = 0;
    alg.dim = dim;
    if (shape.dims.empty()) shape.dims = {dim};
    if (shape.total_dim() != dim)
        throw BindingError("mode shape does not match the bound dimension");
    alg.shape = shape;

    for (const auto& g : presentation.generators) {
        const OperatorMatrix& op = bindings.at(g);
        GeneratorBinding b;
        b.matrix = op.entries();
        b.diagonal = op.is_diagonal();
        b.band = matrix_band(b.matrix, alg.shape);
        if (auto it = singular.find(g); it != singular.end()) b.singular_levels = it->second;
        alg.generators.emplace(g, std::move(b));
    }

    for (const auto& [name, def] : presentation.parameters) {
        auto it = params.find(name);
        alg.parameters[name] = it != params.end() ? it->second : def;
    }
    // extra parameter values are allowed only if the name is declared
    for (const auto& [name, value] : params) {
        (void)value;
        if (!presentation.has_parameter(name) && !alg.parameters.count(name))
            alg.parameters.emplace(name, value); // tolerated: harmless superset
    }
    return alg;
}

Matrix evaluate_expression(const dsl::ExprPtr& expr, const BoundAlgebra& algebra) {
    return evaluate(expr, algebra).m;
}

std::vector<int> expression_band(const dsl::ExprPtr& expr, const BoundAlgebra& algebra) {
    return band_of(expr, algebra);
}

std::vector<bool> excluded_levels(const ModeShape& shape, const std::vector<int>& mask_per_mode,
                                  const std::vector<int>& extra) {
    const int modes = static_cast<int>(shape.dims.size());
    const int total = shape.total_dim();
    std::vector<bool> excluded(total, false);
    std::vector<int> stride(modes, 1);
    for (int k = modes - 2; k >= 0; --k) stride[k] = stride[k + 1] * shape.dims[k + 1];
    for (int n = 0; n < total; ++n) {
        int rest = n;
        for (int k = 0; k < modes; ++k) {
            const int nk = rest / stride[k];
            rest %= stride[k];
            if (nk >= shape.dims[k] - mask_per_mode[k]) {
                excluded[n] = true;
                break;
            }
        }
    }
    for (int n : extra)
        if (n >= 0 && n < total) excluded[n] = true;
    return excluded;
}

double restricted_norm(const Matrix& m, const std::vector<bool>& excluded) {
    double acc = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (excluded[static_cast<std::size_t>(c)]) continue;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (excluded[static_cast<std::size_t>(r)]) continue;
            acc += std::norm(m(r, c));
        }
    }
    return std::sqrt(acc);
}

ResidualReport check_relations(const BoundAlgebra& algebra, double tolerance, MaskPolicy policy) {
    ResidualReport report;
    report.presentation = algebra.presentation.name;
    report.params.dim = algebra.dim;
    const std::size_t n = algebra.presentation.relations.size();
    report.relations.resize(n);

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(n, 1)));

    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors(n);

    auto run_one = [&](std::size_t idx) {
        const dsl::Relation& rel = algebra.presentation.relations[idx];
        RelationRecord rec;
        rec.label = rel.label;
        rec.tolerance = tolerance;

        Matrix lhs = evaluate_expression(rel.lhs, algebra);
        Matrix rhs = evaluate_expression(rel.rhs, algebra);
        Matrix residual = lhs - rhs;
        if (!residual.allFinite())
            throw EvaluationError("relation '" + rel.label + "': evaluation produced non-finite values");

        const int modes = static_cast<int>(algebra.shape.dims.size());
        std::vector<int> mask(modes, 0);
        if (policy.kind == MaskPolicy::Kind::automatic) {
            auto lb = expression_band(rel.lhs, algebra);
            auto rb = expression_band(rel.rhs, algebra);
            for (int m = 0; m < modes; ++m)
                mask[m] = std::min(std::max(lb[m], rb[m]), algebra.shape.dims[m] - 1);
        } else {
            for (int m = 0; m < modes; ++m)
                mask[m] = std::min(policy.fixed_levels, algebra.shape.dims[m] - 1);
        }
        std::set<int> sing;
        collect_singulars(rel.lhs, algebra, sing);
        collect_singulars(rel.rhs, algebra, sing);
        const std::vector<int> extra(sing.begin(), sing.end());
        const auto excluded = excluded_levels(algebra.shape, mask, extra);

        rec.raw_norm = residual.norm();
        rec.masked_norm = restricted_norm(residual, excluded);
        rec.mask_levels = *std::max_element(mask.begin(), mask.end());
        const double denom = std::max(1.0, restricted_norm(lhs, excluded));
        rec.pass = rec.masked_norm / denom <= tolerance;
        if (!extra.empty())
            rec.note = std::to_string(extra.size()) + " singular level(s) excluded";

        report.relations[idx] = std::move(rec);
    };

    if (workers <= 1 || n <= 1) {
        for (std::size_t idx = 0; idx < n; ++idx) run_one(idx);
    } else {
        std::vector<std::future<void>> futures;
        std::exception_ptr first_error;
        std::mutex error_mutex;
        for (unsigned w = 0; w < workers; ++w)
            futures.push_back(std::async(std::launch::async, [&] {
                for (;;) {
                    const std::size_t idx = next.fetch_add(1);
                    if (idx >= n) return;
                    try {
                        run_one(idx);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            }));
        for (auto& f : futures) f.get();
        if (first_error) std::rethrow_exception(first_error);
    }

    report.recompute_overall();
    return report;
}

} // namespace qdeform
