#ifndef QDEFORM_EVAL_HPP
#define QDEFORM_EVAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdeform/dsl.hpp"
#include "qdeform/fock.hpp"
#include "qdeform/report.hpp"

namespace qdeform {

/// Mode layout of the carrier space: one entry per tensor factor; the matrix
/// dimension is the product. A plain single-mode space has one entry.
struct ModeShape {
    std::vector<int> dims;

    int total_dim() const {
        int d = 1;
        for (int x : dims) d *= x;
        return d;
    }
};

struct GeneratorBinding {
    Matrix matrix;
    bool diagonal = false;
    /// Largest |row - col| shift per mode; drives the automatic truncation mask.
    std::vector<int> band;
    /// Fock levels (per composite index) where this operator is undefined;
    /// relations referencing the generator are evaluated away from them.
    std::vector<int> singular_levels;
};

/// An algebra presentation closed over concrete matrices and parameter values.
struct BoundAlgebra {
    dsl::AlgebraPresentation presentation;
    std::map<std::string, GeneratorBinding> generators;
    std::map<std::string, dsl::Complex> parameters;
    ModeShape shape;
    int dim = 0;
};

struct MaskPolicy {
    enum class Kind { automatic, fixed };
    Kind kind = Kind::automatic;
    int fixed_levels = 0;

    static MaskPolicy automatic() { return MaskPolicy{}; }
    static MaskPolicy fixed(int k) { return MaskPolicy{Kind::fixed, k}; }
};

/// Binds every declared generator to a matrix (all on one space) and resolves
/// parameter values (explicit values win over declared defaults).
///
/// `singular` optionally lists undefined levels per generator name.
BoundAlgebra bind_representation(const dsl::AlgebraPresentation& presentation,
                                 const std::map<std::string, OperatorMatrix>& bindings,
                                 const std::map<std::string, dsl::Complex>& params,
                                 ModeShape shape = {},
                                 const std::map<std::string, std::vector<int>>& singular = {});

/// Evaluates one matrix expression against the bindings.
Matrix evaluate_expression(const dsl::ExprPtr& expr, const BoundAlgebra& algebra);

/// Structural upper bound on how far an expression can shift Fock levels,
/// per mode ("highest total ladder power").
std::vector<int> expression_band(const dsl::ExprPtr& expr, const BoundAlgebra& algebra);

/// Measures every relation; pass iff masked residual relative to
/// max(1, ||lhs||) is within tolerance. Relations evaluate concurrently.
ResidualReport check_relations(const BoundAlgebra& algebra, double tolerance, MaskPolicy policy);

/// Frobenius norm of `m` restricted to rows/columns not in `excluded`.
double restricted_norm(const Matrix& m, const std::vector<bool>& excluded);

/// Composite levels hit by masking the top `mask` levels of each mode, plus
/// any explicitly excluded levels.
std::vector<bool> excluded_levels(const ModeShape& shape, const std::vector<int>& mask_per_mode,
                                  const std::vector<int>& extra = {});

} // namespace qdeform

#endif
