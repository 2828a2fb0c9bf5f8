#ifndef QDEFORM_FOCK_HPP
#define QDEFORM_FOCK_HPP

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qdeform/errors.hpp"

namespace qdeform {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Truncated Fock space: levels |0> ... |dim-1| with a cyclic grading of
/// period `grading` (the lambda of the C_lambda extension; 1 means ungraded).
struct FockBasis {
    int dim = 0;
    int grading = 1;

    friend bool operator==(const FockBasis&, const FockBasis&) = default;
};

FockBasis make_fock_space(int dim, int lambda);

/// Dense complex matrix acting on a truncated Fock basis. Validates shape and
/// finiteness at construction; immutable afterwards.
class OperatorMatrix {
  public:
    OperatorMatrix(FockBasis basis, Matrix entries);

    const FockBasis& basis() const { return basis_; }
    const Matrix& entries() const { return entries_; }
    int dim() const { return basis_.dim; }

    /// True when every off-diagonal entry is exactly zero (structural, not a
    /// tolerance check); diagonal operators get O(D^2) product fast paths.
    bool is_diagonal() const { return diagonal_; }

    double frobenius_norm() const { return entries_.norm(); }

  private:
    FockBasis basis_;
    Matrix entries_;
    bool diagonal_;
};

/// alpha_mu parameters of the C_lambda structure function, with the derived
/// partial sums beta_mu. Valid iff sum(alpha) = 0 and every beta_mu > -1.
struct StructureFunctionSpec {
    std::vector<double> alphas;
    std::vector<double> betas; // betas[mu] = sum_{nu<mu} alphas[nu]

    static StructureFunctionSpec from_alphas(std::vector<double> alphas);

    int lambda() const { return static_cast<int>(alphas.size()); }
    /// F(n) = n + beta_{n mod lambda}
    double value(long n) const;
};

/// Frobenius norms of a residual matrix, full and restricted to the top-left
/// block that survives masking the top `mask_levels` Fock levels.
struct MaskedResidual {
    double raw_norm = 0.0;
    double masked_norm = 0.0;
    int mask_levels = 0;
};

OperatorMatrix number_operator(const FockBasis& basis);

/// P_mu built by the exponential sum (1/lambda) sum_nu e^{2 pi i nu (N-mu)/lambda},
/// cross-checked against the n == mu (mod lambda) indicator; the two routes must
/// agree to 1e-13 or construction fails.
OperatorMatrix projector(const FockBasis& basis, int mu);

/// K = diag(e^{2 pi i n / lambda}); (-1)^N when lambda = 2, identity when lambda = 1.
OperatorMatrix klein_operator(const FockBasis& basis);

/// F(N) = N + sum_mu beta_mu P_mu as a diagonal operator.
OperatorMatrix structure_function_operator(const FockBasis& basis, const StructureFunctionSpec& spec);

struct LadderPair {
    OperatorMatrix lowering; // a |n> = sqrt(F(n)) |n-1>
    OperatorMatrix raising;  // a† |n> = sqrt(F(n+1)) |n+1>
};

LadderPair ladder_operators(const FockBasis& basis, const StructureFunctionSpec& spec);

/// [A, B]_q = AB - q BA. q = 1 is the commutator, q = -1 the anticommutator.
OperatorMatrix q_bracket(const OperatorMatrix& a, const OperatorMatrix& b, Complex q);

MaskedResidual masked_residual(const OperatorMatrix& a, int mask_levels);

/// exp(scale * D) of a diagonal operator, evaluated spectrally entry by entry.
OperatorMatrix diagonal_exponential(const OperatorMatrix& diag, Complex scale);

/// Integer matrix power by repeated squaring; exponent >= 0.
OperatorMatrix matrix_power(const OperatorMatrix& a, int exponent);

/// Kronecker product; the result lives on a basis of dimension dim(a)*dim(b)
/// with a's grading.
OperatorMatrix kronecker(const OperatorMatrix& a, const OperatorMatrix& b);

OperatorMatrix identity_operator(const FockBasis& basis);

/// A*B with a diagonal fast path on either side.
Matrix multiply(const Matrix& a, bool a_diag, const Matrix& b, bool b_diag);

} // namespace qdeform

#endif
