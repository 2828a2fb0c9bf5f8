#include "qdeform/fock.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qdeform {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool structurally_diagonal(const Matrix& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (r != c && m(r, c) != Complex(0.0, 0.0)) return false;
    return true;
}

// e^{2 pi i k / lambda}, exact at quarter turns so that lambda = 1, 2, 4
// Klein operators are exactly ±1, ±i
Complex root_of_unity(long k, long lambda) {
    k %= lambda;
    if (k < 0) k += lambda;
    if (4 * k % lambda == 0) {
        switch (4 * k / lambda) {
            case 0: return Complex(1.0, 0.0);
            case 1: return Complex(0.0, 1.0);
            case 2: return Complex(-1.0, 0.0);
            case 3: return Complex(0.0, -1.0);
        }
    }
    return std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(lambda));
}

} // namespace

FockBasis make_fock_space(int dim, int lambda) {
    if (dim < 2)
        throw InvalidArgument("make_fock_space: dim >= 2 violated (dim=" + std::to_string(dim) + ")");
    if (lambda < 1)
        throw InvalidArgument("make_fock_space: lambda >= 1 violated (lambda=" + std::to_string(lambda) + ")");
    if (lambda > dim)
        throw InvalidArgument("make_fock_space: lambda <= dim violated (lambda=" + std::to_string(lambda) +
                              ", dim=" + std::to_string(dim) + ")");
    return FockBasis{dim, lambda};
}

OperatorMatrix::OperatorMatrix(FockBasis basis, Matrix entries)
    : basis_(basis), entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw InvalidArgument("OperatorMatrix: entries must be square");
    if (entries_.rows() != basis_.dim)
        throw InvalidArgument("OperatorMatrix: entries dimension " + std::to_string(entries_.rows()) +
                              " does not match basis dim " + std::to_string(basis_.dim));
    if (!entries_.allFinite())
        throw InvalidArgument("OperatorMatrix: non-finite entries");
    diagonal_ = structurally_diagonal(entries_);
}

StructureFunctionSpec StructureFunctionSpec::from_alphas(std::vector<double> alphas) {
    if (alphas.empty())
        throw InvalidArgument("StructureFunctionSpec: alphas must be non-empty");
    double total = 0.0, scale = 0.0;
    for (double a : alphas) {
        total += a;
        scale += std::abs(a);
    }
    if (std::abs(total) > 1e-12 * std::max(1.0, scale))
        throw InvalidArgument("StructureFunctionSpec: sum(alpha) = " + std::to_string(total) +
                              " violates the sum-zero constraint");
    std::vector<double> betas(alphas.size(), 0.0);
    for (std::size_t mu = 1; mu < alphas.size(); ++mu) {
        betas[mu] = betas[mu - 1] + alphas[mu - 1];
        if (betas[mu] <= -1.0)
            throw InvalidArgument("StructureFunctionSpec: partial-sum constraint beta_" + std::to_string(mu) +
                                  " > -1 violated (beta = " + std::to_string(betas[mu]) + ")");
    }
    StructureFunctionSpec spec;
    spec.alphas = std::move(alphas);
    spec.betas = std::move(betas);
    return spec;
}

double StructureFunctionSpec::value(long n) const {
    const long lam = static_cast<long>(alphas.size());
    return static_cast<double>(n) + betas[static_cast<std::size_t>(n % lam)];
}

OperatorMatrix number_operator(const FockBasis& basis) {
    Matrix m = Matrix::Zero(basis.dim, basis.dim);
    for (int n = 0; n < basis.dim; ++n) m(n, n) = Complex(n, 0.0);
    return OperatorMatrix(basis, std::move(m));
}

OperatorMatrix projector(const FockBasis& basis, int mu) {
    const int lam = basis.grading;
    if (mu < 0 || mu >= lam)
        throw InvalidArgument("projector: mu = " + std::to_string(mu) + " outside [0, lambda-1] with lambda = " +
                              std::to_string(lam));
    Matrix m = Matrix::Zero(basis.dim, basis.dim);
    for (int n = 0; n < basis.dim; ++n) {
        // exponential-sum route; (n - mu) reduced mod lambda keeps arguments small
        int d = (n - mu) % lam;
        if (d < 0) d += lam;
        Complex sum(0.0, 0.0);
        for (int nu = 0; nu < lam; ++nu) sum += root_of_unity(static_cast<long>(nu) * d, lam);
        const Complex via_sum = sum / static_cast<double>(lam);
        const double via_indicator = (d == 0) ? 1.0 : 0.0;
        if (std::abs(via_sum - Complex(via_indicator, 0.0)) > 1e-13)
            throw RepresentationError("projector: exponential-sum and congruence constructions disagree at level " +
                                      std::to_string(n));
        m(n, n) = via_sum;
    }
    return OperatorMatrix(basis, std::move(m));
}

OperatorMatrix klein_operator(const FockBasis& basis) {
    const int lam = basis.grading;
    Matrix m = Matrix::Zero(basis.dim, basis.dim);
    for (int n = 0; n < basis.dim; ++n) m(n, n) = root_of_unity(n, lam);
    return OperatorMatrix(basis, std::move(m));
}

OperatorMatrix structure_function_operator(const FockBasis& basis, const StructureFunctionSpec& spec) {
    if (spec.lambda() != basis.grading)
        throw InvalidArgument("structure_function_operator: spec has " + std::to_string(spec.lambda()) +
                              " alphas but basis grading is " + std::to_string(basis.grading));
    Matrix m = Matrix::Zero(basis.dim, basis.dim);
    for (int n = 0; n < basis.dim; ++n) m(n, n) = Complex(spec.value(n), 0.0);
    return OperatorMatrix(basis, std::move(m));
}

LadderPair ladder_operators(const FockBasis& basis, const StructureFunctionSpec& spec) {
    if (spec.lambda() != basis.grading)
        throw InvalidArgument("ladder_operators: spec has " + std::to_string(spec.lambda()) +
                              " alphas but basis grading is " + std::to_string(basis.grading));
    const int dim = basis.dim;
    Matrix lower = Matrix::Zero(dim, dim);
    Matrix raise = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        const double f = spec.value(n);
        if (f < 0.0)
            throw RepresentationError("ladder_operators: F(" + std::to_string(n) + ") = " + std::to_string(f) +
                                      " < 0, square root undefined");
        const double root = std::sqrt(f);
        lower(n - 1, n) = root; // a |n> = sqrt(F(n)) |n-1>
        raise(n, n - 1) = root; // a† |n-1> = sqrt(F(n)) |n>
    }
    return LadderPair{OperatorMatrix(basis, std::move(lower)), OperatorMatrix(basis, std::move(raise))};
}

Matrix multiply(const Matrix& a, bool a_diag, const Matrix& b, bool b_diag) {
    if (a_diag && b_diag) {
        Matrix out = Matrix::Zero(a.rows(), b.cols());
        out.diagonal() = a.diagonal().cwiseProduct(b.diagonal());
        return out;
    }
    if (a_diag) return a.diagonal().asDiagonal() * b;
    if (b_diag) return a * b.diagonal().asDiagonal();
    return a * b;
}

OperatorMatrix q_bracket(const OperatorMatrix& a, const OperatorMatrix& b, Complex q) {
    if (!(a.basis() == b.basis()))
        throw InvalidArgument("q_bracket: operands live on different bases");
    Matrix ab = multiply(a.entries(), a.is_diagonal(), b.entries(), b.is_diagonal());
    Matrix ba = multiply(b.entries(), b.is_diagonal(), a.entries(), a.is_diagonal());
    return OperatorMatrix(a.basis(), ab - q * ba);
}

MaskedResidual masked_residual(const OperatorMatrix& a, int mask_levels) {
    const int dim = a.dim();
    if (mask_levels < 0 || mask_levels >= dim)
        throw InvalidArgument("masked_residual: mask_levels = " + std::to_string(mask_levels) +
                              " must lie in [0, dim) with dim = " + std::to_string(dim));
    MaskedResidual r;
    r.mask_levels = mask_levels;
    r.raw_norm = a.entries().norm();
    const int keep = dim - mask_levels;
    r.masked_norm = a.entries().topLeftCorner(keep, keep).norm();
    return r;
}

OperatorMatrix diagonal_exponential(const OperatorMatrix& diag, Complex scale) {
    if (!diag.is_diagonal())
        throw InvalidArgument("diagonal_exponential: operator is not diagonal");
    Matrix m = Matrix::Zero(diag.dim(), diag.dim());
    for (int n = 0; n < diag.dim(); ++n) m(n, n) = std::exp(scale * diag.entries()(n, n));
    return OperatorMatrix(diag.basis(), std::move(m));
}

OperatorMatrix matrix_power(const OperatorMatrix& a, int exponent) {
    if (exponent < 0)
        throw InvalidArgument("matrix_power: exponent must be >= 0");
    Matrix acc = Matrix::Identity(a.dim(), a.dim());
    Matrix base = a.entries();
    int e = exponent;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return OperatorMatrix(a.basis(), std::move(acc));
}

OperatorMatrix kronecker(const OperatorMatrix& a, const OperatorMatrix& b) {
    const int da = a.dim(), db = b.dim();
    Matrix out(da * db, da * db);
    for (int r1 = 0; r1 < da; ++r1)
        for (int c1 = 0; c1 < da; ++c1)
            out.block(r1 * db, c1 * db, db, db) = a.entries()(r1, c1) * b.entries();
    return OperatorMatrix(FockBasis{da * db, a.basis().grading}, std::move(out));
}

OperatorMatrix identity_operator(const FockBasis& basis) {
    return OperatorMatrix(basis, Matrix::Identity(basis.dim, basis.dim));
}

} // namespace qdeform
