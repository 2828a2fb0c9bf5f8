#ifndef QDEFORM_EXOTIC_HPP
#define QDEFORM_EXOTIC_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdeform/dsl.hpp"
#include "qdeform/eval.hpp"
#include "qdeform/fock.hpp"
#include "qdeform/report.hpp"

namespace qdeform {

/// Choice of the scalar function f(nu) entering eta.
enum class FChoice {
    /// f = (1 + chi)/2 on the configured branch, so (1+chi)/f == 2 and
    /// eta = cos(2 pi nu) exactly; not hermitian for nu strictly inside (0,1).
    default_half_one_plus_chi,
    /// Real-valued f = cos^2(nu pi / 2); hermitian but the nu -> 1 ratio
    /// (1+chi)/f diverges.
    cos_squared
};

std::string f_choice_name(FChoice f);
FChoice f_choice_from_name(const std::string& name);

/// Statistical-parameter package: chi = e^{sign i nu pi}, theta = nu (1+chi),
/// eta = (1+chi)/(2 f(nu)) * cos(2 pi nu).
struct DeformationParams {
    double nu = 0.0;
    int sign = +1;
    double mu_omega = 1.0;
    int lambda = 1;
    FChoice f_choice = FChoice::default_half_one_plus_chi;
    Complex chi{1.0, 0.0};
    Complex theta{0.0, 0.0};
    Complex eta{1.0, 0.0};
    Complex f_value{1.0, 0.0};
};

Complex default_f(double nu, int sign = +1);
Complex scalar_f(double nu, int sign, FChoice choice);

DeformationParams make_params(double nu, int sign, double mu_omega, int lambda,
                              FChoice f_choice = FChoice::default_half_one_plus_chi);

/// Position/momentum actions per the Fock-space formulas; momentum columns at
/// levels with sin(2 pi n / lambda) = 0 are undefined: zeroed and recorded.
struct PositionMomentum {
    OperatorMatrix position;
    std::optional<OperatorMatrix> momentum;
    std::vector<int> singular_levels;
    std::string diagnostic; // non-empty when momentum is undefined everywhere
};

PositionMomentum position_momentum_action(const FockBasis& basis, const DeformationParams& params,
                                          const StructureFunctionSpec& spec);

/// One deformed mode: ladder pair, number/Klein operators, xi = e^{i nu pi K},
/// the phase-space pair (verbatim formulas) and the inversion-derived pair.
struct ModeRep {
    FockBasis basis;
    DeformationParams params;
    StructureFunctionSpec spec;
    OperatorMatrix lowering, raising;       // b-, b+
    OperatorMatrix number;                  // N
    OperatorMatrix klein;                   // K
    OperatorMatrix structure;               // F(N)
    OperatorMatrix xi, xi_inverse;          // e^{± i nu pi K}
    OperatorMatrix exp_plus_ipik;           // e^{+ i pi K}
    OperatorMatrix exp_minus_ipik;          // e^{- i pi K}
    OperatorMatrix position;                // x (verbatim)
    std::optional<OperatorMatrix> momentum; // p (verbatim), absent when undefined
    std::vector<int> singular_levels;
    std::string momentum_diagnostic;
    OperatorMatrix position_from_ladder;             // inversion-derived x
    std::optional<OperatorMatrix> momentum_from_ladder; // inversion-derived p
    /// Levels where xi + xi^-1 vanishes (nu = 1/2 + integer on real-spectrum
    /// levels); the inversion pair's rows there are zeroed and flagged.
    std::vector<int> inversion_singular_levels;
    double position_disagreement = 0.0; // ||x_verbatim - x_inversion||_F away from singular levels
    double momentum_disagreement = 0.0;
};

ModeRep build_mode(const FockBasis& basis, const DeformationParams& params,
                   const StructureFunctionSpec& spec);

/// Two modes assembled as a plain tensor product: O1 = O x I, O2 = I x O.
struct TwoModeRep {
    std::array<int, 2> mode_dims{};
    int lambda = 1;
    DeformationParams params;
    ModeShape shape;
    std::map<std::string, OperatorMatrix> ops;
    std::map<std::string, std::vector<int>> singular;
    bool momentum_defined = false;
    std::string construction = "tensor_product";
};

TwoModeRep assemble_two_mode(const ModeRep& m1, const ModeRep& m2);

/// Generator/parameter bindings for the shipped presets, single-mode names
/// (a, N, K, fn, P0..P{lambda-1}) plus two-mode names (bm1..ekm2, x1..p2).
struct StandardBindings {
    std::map<std::string, OperatorMatrix> matrices;
    std::map<std::string, Complex> params;
    std::map<std::string, std::vector<int>> singular;
    ModeShape shape;
};

/// Which x/p pair binds to preset generators: the verbatim Fock-action
/// formulas (with their singular momentum columns flagged and excluded), or
/// the pair obtained by inverting the ladder definitions (total operators).
enum class XPSource { eq32, inversion };

StandardBindings single_mode_bindings(const ModeRep& mode, const StructureFunctionSpec& spec);
StandardBindings two_mode_bindings(const TwoModeRep& two, const StructureFunctionSpec& spec,
                                   XPSource xp_source = XPSource::inversion);

/// Relation-set builders. At exact integer nu the presentations collapse to
/// the printed limit forms (bosonic for even nu, deformed fermionic for odd).
dsl::AlgebraPresentation case1_relation_set(const DeformationParams& params);
dsl::AlgebraPresentation case2_relation_set(const DeformationParams& params);

enum class LimitFamily { bosonic, fermionic_case1, fermionic_case2 };
dsl::AlgebraPresentation limit_relation_set(LimitFamily family);

/// Taylor-block form of the deformed bracket: R from the odd/even kappa sums,
/// Q from the p-sum over (-K_j)^p C - K_i^p D, A from the (K_i - K_j) series.
struct TaylorBlocks {
    OperatorMatrix R, Q, A;
    std::vector<Complex> kappa_odd;  // kappa_{nu,l},  l = 1..(n+1)/2
    std::vector<Complex> kappa_even; // kappa_{nu,k},  k = 1..m/2
    int truncation_order = 0;        // lambda - 1
    double remainder_bound = 0.0;    // (nu pi)^lambda / lambda! * e^{nu pi}
};

TaylorBlocks taylor_blocks(const DeformationParams& params, const OperatorMatrix& K_i,
                           const OperatorMatrix& K_j, const OperatorMatrix& C_ji,
                           const OperatorMatrix& D_ji);

/// Scalar remainder of truncating exp at order lambda-1 on a unit spectrum.
double exponential_remainder_bound(double nu, int lambda);

/// Same-mode consistency of the exact-exponential relation form against the
/// Taylor-block form, plus the xi truncation check. Requires lambda >= 3.
ResidualReport check_taylor_consistency(const FockBasis& basis, const DeformationParams& params,
                                        const StructureFunctionSpec& spec);

struct SweepSettings {
    int sign = +1;
    double mu_omega = 1.0;
    FChoice f_choice = FChoice::default_half_one_plus_chi;
    double tolerance = 1e-10;
    MaskPolicy mask = MaskPolicy::automatic();
    bool measure_only = false;
    XPSource xp_source = XPSource::inversion;
};

/// Binds the named relation family at each nu of the grid (general,
/// non-collapsing forms: constant relation count across rows).
std::vector<std::pair<double, ResidualReport>> nu_sweep(const std::vector<double>& grid,
                                                        const std::string& family,
                                                        const FockBasis& basis,
                                                        const StructureFunctionSpec& spec,
                                                        const SweepSettings& settings);

} // namespace qdeform

#endif
