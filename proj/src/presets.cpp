#include "qdeform/presets.hpp"

#include <map>
#include <sstream>

#include "qdeform/errors.hpp"

namespace qdeform {

namespace {

// Ladder sectors are shared between the limit presets and the collapsed forms
// of the case presets, so the exact same text is reused.

constexpr const char* kBosonicLadder =
    "rel bmbp_11: bracket(bm1, bp1, 1) = I;\n"
    "rel bmbp_12: bracket(bm1, bp2, 1) = 0;\n"
    "rel bmbp_21: bracket(bm2, bp1, 1) = 0;\n"
    "rel bmbp_22: bracket(bm2, bp2, 1) = I;\n"
    "rel bpbp_11: bracket(bp1, bp1, 1) = 0;\n"
    "rel bpbp_12: bracket(bp1, bp2, 1) = 0;\n"
    "rel bpbp_21: bracket(bp2, bp1, 1) = 0;\n"
    "rel bpbp_22: bracket(bp2, bp2, 1) = 0;\n"
    "rel bmbm_11: bracket(bm1, bm1, 1) = 0;\n"
    "rel bmbm_12: bracket(bm1, bm2, 1) = 0;\n"
    "rel bmbm_21: bracket(bm2, bm1, 1) = 0;\n"
    "rel bmbm_22: bracket(bm2, bm2, 1) = 0;\n";

constexpr const char* kFermionicC1Ladder =
    "rel bmbp_11: antibracket(bm1, bp1) = 0.5*(ekm1 - ekp1);\n"
    "rel bmbp_12: antibracket(bm1, bp2) = 0;\n"
    "rel bmbp_21: antibracket(bm2, bp1) = 0;\n"
    "rel bmbp_22: antibracket(bm2, bp2) = 0.5*(ekm2 - ekp2);\n"
    "rel bpbp_11: antibracket(bp1, bp1) = 0.5*(ekm1 + ekm1);\n"
    "rel bpbp_12: antibracket(bp1, bp2) = 0;\n"
    "rel bpbp_21: antibracket(bp2, bp1) = 0;\n"
    "rel bpbp_22: antibracket(bp2, bp2) = 0.5*(ekm2 + ekm2);\n"
    "rel bmbm_11: antibracket(bm1, bm1) = 0.5*(ekp1 + ekp1);\n"
    "rel bmbm_12: antibracket(bm1, bm2) = 0;\n"
    "rel bmbm_21: antibracket(bm2, bm1) = 0;\n"
    "rel bmbm_22: antibracket(bm2, bm2) = 0.5*(ekp2 + ekp2);\n";

constexpr const char* kFermionicC2Ladder =
    "rel bmbp_11: antibracket(bm1, bp1) = 0.5*(ekp1 + ekm1) - i*(ekm1 p1 x1) + i*(ekp1 x1 p1);\n"
    "rel bmbp_12: antibracket(bm1, bp2) = -i*(ekm2 p2 x1) + i*(ekp1 x2 p1);\n"
    "rel bmbp_21: antibracket(bm2, bp1) = -i*(ekm1 p1 x2) + i*(ekp2 x1 p2);\n"
    "rel bmbp_22: antibracket(bm2, bp2) = 0.5*(ekp2 + ekm2) - i*(ekm2 p2 x2) + i*(ekp2 x2 p2);\n"
    "rel bpbp_11: antibracket(bp1, bp1) = -i*(ekm1 p1 x1) - i*(ekm1 x1 p1);\n"
    "rel bpbp_12: antibracket(bp1, bp2) = -i*(ekm2 p2 x1) - i*(ekm1 x2 p1);\n"
    "rel bpbp_21: antibracket(bp2, bp1) = -i*(ekm1 p1 x2) - i*(ekm2 x1 p2);\n"
    "rel bpbp_22: antibracket(bp2, bp2) = -i*(ekm2 p2 x2) - i*(ekm2 x2 p2);\n"
    "rel bmbm_11: antibracket(bm1, bm1) = i*(ekp1 p1 x1) + i*(ekp1 x1 p1);\n"
    "rel bmbm_12: antibracket(bm1, bm2) = i*(ekp2 p2 x1) + i*(ekp1 x2 p1);\n"
    "rel bmbm_21: antibracket(bm2, bm1) = i*(ekp1 p1 x2) + i*(ekp2 x1 p2);\n"
    "rel bmbm_22: antibracket(bm2, bm2) = i*(ekp2 p2 x2) + i*(ekp2 x2 p2);\n";

constexpr const char* kCommutativePhase =
    "rel xx_11: bracket(x1, x1, 1) = 0;\n"
    "rel xx_12: bracket(x1, x2, 1) = 0;\n"
    "rel xx_21: bracket(x2, x1, 1) = 0;\n"
    "rel xx_22: bracket(x2, x2, 1) = 0;\n"
    "rel pp_11: bracket(p1, p1, 1) = 0;\n"
    "rel pp_12: bracket(p1, p2, 1) = 0;\n"
    "rel pp_21: bracket(p2, p1, 1) = 0;\n"
    "rel pp_22: bracket(p2, p2, 1) = 0;\n"
    "rel px_11: bracket(p1, x1, 1) = -i;\n"
    "rel px_12: bracket(p1, x2, 1) = 0;\n"
    "rel px_21: bracket(p2, x1, 1) = 0;\n"
    "rel px_22: bracket(p2, x2, 1) = -i;\n";

const std::string kBosonic = std::string("algebra bosonic;\n"
                                         "gen x1, x2, p1, p2, bm1, bp1, bm2, bp2;\n") +
                             kCommutativePhase + kBosonicLadder;

const std::string kFermionicC1 = std::string("algebra fermionic_case1;\n"
                                             "gen bm1, bp1, bm2, bp2, ekp1, ekm1, ekp2, ekm2;\n") +
                                 kFermionicC1Ladder;

const std::string kFermionicC2 =
    std::string("algebra fermionic_case2;\n"
                "gen bm1, bp1, bm2, bp2, ekp1, ekm1, ekp2, ekm2, x1, x2, p1, p2;\n") +
    kFermionicC2Ladder;

constexpr const char* kCase1 = R"qdl(algebra case1;
gen x1, x2, p1, p2, bm1, bp1, bm2, bp2, xi1, xi2, xi1inv, xi2inv;
param chi = 1;
param theta = 0;
param eta = 1;
param muw = 1;
rel xx_11: bracket(x1, x1, chi) = 0;
rel xx_12: bracket(x1, x2, chi) = i*theta;
rel xx_21: bracket(x2, x1, chi) = -i*theta;
rel xx_22: bracket(x2, x2, chi) = 0;
rel pp_11: bracket(p1, p1, chi) = 0;
rel pp_12: bracket(p1, p2, chi) = -i*theta*muw*muw;
rel pp_21: bracket(p2, p1, chi) = i*theta*muw*muw;
rel pp_22: bracket(p2, p2, chi) = 0;
rel px_11: bracket(p1, x1, chi) = -i*eta;
rel px_12: bracket(p1, x2, chi) = 0;
rel px_21: bracket(p2, x1, chi) = 0;
rel px_22: bracket(p2, x2, chi) = -i*eta;
rel bmbp_11: bracket(bm1, bp1, chi) = 0.5*eta*((1/chi)*xi1 + xi1inv) - 0.5*i*(1/chi - chi)*(xi1inv p1 x1);
rel bmbp_12: bracket(bm1, bp2, chi) = 0.5*i*muw*theta*(I + xi1 xi2inv) - 0.5*i*(1/chi - chi)*(xi2inv p2 x1);
rel bmbp_21: bracket(bm2, bp1, chi) = -0.5*i*muw*theta*(I + xi2 xi1inv) - 0.5*i*(1/chi - chi)*(xi1inv p1 x2);
rel bmbp_22: bracket(bm2, bp2, chi) = 0.5*eta*((1/chi)*xi2 + xi2inv) - 0.5*i*(1/chi - chi)*(xi2inv p2 x2);
rel bpbp_11: bracket(bp1, bp1, chi) = 0.5*eta*(xi1inv - (1/chi)*xi1inv) - 0.5*i*(1/chi - chi)*(xi1inv p1 x1);
rel bpbp_12: bracket(bp1, bp2, chi) = 0.5*i*muw*theta*(I - xi1inv xi2inv) - 0.5*i*(1/chi - chi)*(xi2inv p2 x1);
rel bpbp_21: bracket(bp2, bp1, chi) = -0.5*i*muw*theta*(I - xi2inv xi1inv) - 0.5*i*(1/chi - chi)*(xi1inv p1 x2);
rel bpbp_22: bracket(bp2, bp2, chi) = 0.5*eta*(xi2inv - (1/chi)*xi2inv) - 0.5*i*(1/chi - chi)*(xi2inv p2 x2);
rel bmbm_11: bracket(bm1, bm1, chi) = 0.5*eta*((1/chi)*xi1 - xi1) + 0.5*i*(1/chi - chi)*(xi1 p1 x1);
rel bmbm_12: bracket(bm1, bm2, chi) = 0.5*i*muw*theta*(I - xi1 xi2) + 0.5*i*(1/chi - chi)*(xi2 p2 x1);
rel bmbm_21: bracket(bm2, bm1, chi) = -0.5*i*muw*theta*(I - xi2 xi1) + 0.5*i*(1/chi - chi)*(xi1 p1 x2);
rel bmbm_22: bracket(bm2, bm2, chi) = 0.5*eta*((1/chi)*xi2 - xi2) + 0.5*i*(1/chi - chi)*(xi2 p2 x2);
)qdl";

constexpr const char* kCase2 = R"qdl(algebra case2;
gen x1, x2, p1, p2, bm1, bp1, bm2, bp2, xi1, xi2, xi1inv, xi2inv;
param chi = 1;
param theta = 0;
param muw = 1;
rel xx_11: bracket(x1, x1, chi) = 0;
rel xx_12: bracket(x1, x2, chi) = i*theta;
rel xx_21: bracket(x2, x1, chi) = -i*theta;
rel xx_22: bracket(x2, x2, chi) = 0;
rel pp_11: bracket(p1, p1, chi) = 0;
rel pp_12: bracket(p1, p2, chi) = -i*theta*muw*muw;
rel pp_21: bracket(p2, p1, chi) = i*theta*muw*muw;
rel pp_22: bracket(p2, p2, chi) = 0;
rel px_11: bracket(p1, x1, 1) = -i;
rel px_12: bracket(p1, x2, 1) = 0;
rel px_21: bracket(p2, x1, 1) = 0;
rel px_22: bracket(p2, x2, 1) = -i;
rel xpchi_11: bracket(x1, p1, chi) = (1 - chi)*(p1 x1) + i;
rel xpchi_12: bracket(x1, p2, chi) = (1 - chi)*(p2 x1);
rel xpchi_21: bracket(x2, p1, chi) = (1 - chi)*(p1 x2);
rel xpchi_22: bracket(x2, p2, chi) = (1 - chi)*(p2 x2) + i;
rel pxchi_11: bracket(p1, x1, chi) = (1 - chi)*(x1 p1) - i;
rel pxchi_12: bracket(p1, x2, chi) = (1 - chi)*(x2 p1);
rel pxchi_21: bracket(p2, x1, chi) = (1 - chi)*(x1 p2);
rel pxchi_22: bracket(p2, x2, chi) = (1 - chi)*(x2 p2) - i;
rel bmbp_11: bracket(bm1, bp1, chi) = 0.5*(xi1 + xi1inv) - 0.5*i*(1 - chi)*(xi1inv p1 x1) + 0.5*i*(1 - chi)*(xi1 x1 p1);
rel bmbp_12: bracket(bm1, bp2, chi) = 0.5*i*muw*theta*(I + xi1 xi2inv) - 0.5*i*(1 - chi)*(xi2inv p2 x1) + 0.5*i*(1 - chi)*(xi1 x2 p1);
rel bmbp_21: bracket(bm2, bp1, chi) = -0.5*i*muw*theta*(I + xi2 xi1inv) - 0.5*i*(1 - chi)*(xi1inv p1 x2) + 0.5*i*(1 - chi)*(xi2 x1 p2);
rel bmbp_22: bracket(bm2, bp2, chi) = 0.5*(xi2 + xi2inv) - 0.5*i*(1 - chi)*(xi2inv p2 x2) + 0.5*i*(1 - chi)*(xi2 x2 p2);
rel bpbp_11: bracket(bp1, bp1, chi) = -0.5*i*(1 - chi)*(xi1inv p1 x1) - 0.5*i*(1 - chi)*(xi1inv x1 p1);
rel bpbp_12: bracket(bp1, bp2, chi) = 0.5*i*muw*theta*(I - xi1inv xi2inv) - 0.5*i*(1 - chi)*(xi2inv p2 x1) - 0.5*i*(1 - chi)*(xi1inv x2 p1);
rel bpbp_21: bracket(bp2, bp1, chi) = -0.5*i*muw*theta*(I - xi2inv xi1inv) - 0.5*i*(1 - chi)*(xi1inv p1 x2) - 0.5*i*(1 - chi)*(xi2inv x1 p2);
rel bpbp_22: bracket(bp2, bp2, chi) = -0.5*i*(1 - chi)*(xi2inv p2 x2) - 0.5*i*(1 - chi)*(xi2inv x2 p2);
rel bmbm_11: bracket(bm1, bm1, chi) = 0.5*i*(1 - chi)*(xi1 p1 x1) + 0.5*i*(1 - chi)*(xi1 x1 p1);
rel bmbm_12: bracket(bm1, bm2, chi) = 0.5*i*muw*theta*(I - xi1 xi2) + 0.5*i*(1 - chi)*(xi2 p2 x1) + 0.5*i*(1 - chi)*(xi1 x2 p1);
rel bmbm_21: bracket(bm2, bm1, chi) = -0.5*i*muw*theta*(I - xi2 xi1) + 0.5*i*(1 - chi)*(xi1 p1 x2) + 0.5*i*(1 - chi)*(xi2 x1 p2);
rel bmbm_22: bracket(bm2, bm2, chi) = 0.5*i*(1 - chi)*(xi2 p2 x2) + 0.5*i*(1 - chi)*(xi2 x2 p2);
)qdl";

constexpr const char* kCalogeroVasiliev = R"qdl(algebra calogero_vasiliev;
gen a, K;
param kappa = 0.5;
rel ccr: bracket(a, dagger(a), 1) = I + kappa*K;
rel klein: antibracket(K, dagger(a)) = 0;
)qdl";

std::string gdoa_source(int lambda) {
    if (lambda < 1) throw InvalidArgument("gdoa preset: lambda must be >= 1");
    std::ostringstream os;
    os << "algebra gdoa;\n";
    os << "gen a, N, fn";
    for (int mu = 0; mu < lambda; ++mu) os << ", P" << mu;
    os << ";\n";
    for (int mu = 0; mu < lambda; ++mu) os << "param a" << mu << " = 0;\n";
    os << "rel num_raise: bracket(N, dagger(a), 1) = dagger(a);\n";
    os << "rel num_lower: bracket(N, a, 1) = -1*a;\n";
    os << "rel ccr: bracket(a, dagger(a), 1) = I";
    for (int mu = 0; mu < lambda; ++mu) os << " + a" << mu << "*P" << mu;
    os << ";\n";
    os << "rel number: dagger(a) a = fn;\n";
    os << "rel proj_complete: P0";
    for (int mu = 1; mu < lambda; ++mu) os << " + P" << mu;
    os << " = I;\n";
    for (int mu = 0; mu < lambda; ++mu)
        os << "rel proj_comm_" << mu << ": bracket(N, P" << mu << ", 1) = 0;\n";
    for (int mu = 0; mu < lambda; ++mu)
        os << "rel shift_" << mu << ": dagger(a) P" << mu << " = P" << (mu + 1) % lambda << " dagger(a);\n";
    return os.str();
}

// scalar text for (i nu pi)^p / p!
std::string inupi_power_over_factorial(int p) {
    if (p == 0) return "1";
    std::ostringstream os;
    long fact = 1;
    for (int k = 1; k <= p; ++k) {
        os << (k == 1 ? "" : "*") << "(i*nu*pi)";
        fact *= k;
    }
    if (fact > 1) os << "/" << fact;
    return os.str();
}

// Q_ij text: -(i/2) sum_p ((i nu pi)^p / p!) ((-K_j)^p C_ji - K_i^p D_ji)
// with C_ji = (1-chi) p_j x_i and D_ji = (1-chi) x_j p_i.
std::string q_block_text(int i, int j, int lambda) {
    std::ostringstream os;
    for (int p = 0; p < lambda; ++p) {
        const std::string coeff = inupi_power_over_factorial(p);
        const bool odd = p % 2 == 1;
        // (-K_j)^p C term carries (-1)^p
        os << (odd ? " + " : " - ") << "0.5*i*" << coeff << "*(1 - chi)*(power(K" << j << ", " << p
           << ") p" << j << " x" << i << ")";
        os << " + 0.5*i*" << coeff << "*(1 - chi)*(power(K" << i << ", " << p << ") x" << j << " p" << i
           << ")";
    }
    return os.str();
}

// R_ii text (even kappa sum only; the odd differences vanish for i = j)
std::string r_block_text(int i, int lambda) {
    std::ostringstream os;
    const int m = (lambda - 1) % 2 == 0 ? lambda - 1 : lambda - 2; // largest even <= lambda-1
    for (int k = 1; 2 * k <= m; ++k)
        os << " + " << inupi_power_over_factorial(2 * k) << "*power(K" << i << ", " << 2 * k << ")";
    return os.str();
}

// A_ij text: (i theta muw / 2)(I + sum_alpha ((i nu pi)^alpha/alpha!)(K_i-K_j)^alpha), as printed;
// emitted as the leading term of its relation
std::string a_block_text(int i, int j, int lambda, bool positive_eps) {
    std::ostringstream os;
    os << (positive_eps ? "" : "-") << "0.5*i*theta*muw*(I";
    for (int alpha = 0; alpha < lambda; ++alpha)
        os << " + " << inupi_power_over_factorial(alpha) << "*power((K" << i << " - K" << j << "), "
           << alpha << ")";
    os << ")";
    return os.str();
}

std::string deformed_clambda_source(int lambda) {
    if (lambda < 1) throw InvalidArgument("deformed_clambda preset: lambda must be >= 1");
    std::ostringstream os;
    os << "algebra deformed_clambda;\n";
    os << "gen bm1, bp1, bm2, bp2, N1, N2, K1, K2, fn1, fn2, x1, x2, p1, p2;\n";
    os << "param nu = 0;\n";
    os << "param chi = 1;\n";
    os << "param theta = 0;\n";
    os << "param muw = 1;\n";
    for (int m = 1; m <= 2; ++m) {
        os << "rel num_lower_" << m << ": bracket(N" << m << ", bm" << m << ", 1) = -1*bm" << m << ";\n";
        os << "rel num_raise_" << m << ": bracket(N" << m << ", bp" << m << ", 1) = bp" << m << ";\n";
    }
    os << "rel num_cross_12: bracket(N1, bm2, 1) = 0;\n";
    os << "rel num_cross_21: bracket(N2, bm1, 1) = 0;\n";
    for (int m = 1; m <= 2; ++m) {
        os << "rel braid_lower_" << m << ": K" << m << " bm" << m << " = exp(-2*i*pi/" << lambda
           << ")*(bm" << m << " K" << m << ");\n";
        os << "rel braid_raise_" << m << ": K" << m << " bp" << m << " = exp(2*i*pi/" << lambda
           << ")*(bp" << m << " K" << m << ");\n";
    }
    os << "rel braid_cross_12: bracket(K1, bm2, 1) = 0;\n";
    os << "rel braid_cross_21: bracket(K2, bm1, 1) = 0;\n";
    for (int m = 1; m <= 2; ++m)
        os << "rel number_" << m << ": bp" << m << " bm" << m << " = fn" << m << ";\n";
    for (int m = 1; m <= 2; ++m)
        os << "rel klein_cyclic_" << m << ": power(K" << m << ", " << lambda << ") = I;\n";
    // Taylor-block bracket forms: same-mode carry (I + R)delta + Q, cross-mode A eps + Q
    os << "rel taylor_bmbp_11: bracket(bm1, bp1, chi) = I" << r_block_text(1, lambda)
       << q_block_text(1, 1, lambda) << ";\n";
    os << "rel taylor_bmbp_22: bracket(bm2, bp2, chi) = I" << r_block_text(2, lambda)
       << q_block_text(2, 2, lambda) << ";\n";
    os << "rel taylor_bmbp_12: bracket(bm1, bp2, chi) = " << a_block_text(1, 2, lambda, true)
       << q_block_text(1, 2, lambda) << ";\n";
    os << "rel taylor_bmbp_21: bracket(bm2, bp1, chi) = " << a_block_text(2, 1, lambda, false)
       << q_block_text(2, 1, lambda) << ";\n";
    return os.str();
}

const std::map<std::string, std::string>& fixed_sources() {
    static const std::map<std::string, std::string> sources = {
        {"bosonic", kBosonic},
        {"fermionic_case1", kFermionicC1},
        {"fermionic_case2", kFermionicC2},
        {"case1", kCase1},
        {"case2", kCase2},
        {"calogero_vasiliev", kCalogeroVasiliev},
    };
    return sources;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"bosonic",  "fermionic_case1", "fermionic_case2",   "case1",
            "case2",    "gdoa",            "calogero_vasiliev", "deformed_clambda"};
}

bool is_preset(const std::string& name) {
    for (const auto& n : preset_names())
        if (n == name) return true;
    return false;
}

std::string preset_description(const std::string& name) {
    static const std::map<std::string, std::string> descriptions = {
        {"bosonic", "two-mode bosonic ladder relations (the nu = 0 extreme)"},
        {"fermionic_case1", "deformed fermionic relations of case 1 at nu = 1, RHS in e^{±i pi K}"},
        {"fermionic_case2", "deformed fermionic relations of case 2 at nu = 1, with C/D corrections"},
        {"case1", "deformed phase space with [p,x]_chi = -i eta delta and the b± relations"},
        {"case2", "deformed phase space keeping [p,x] = -i delta, with C/D corrections"},
        {"gdoa", "C_lambda-extended oscillator: number, projector, shift and ccr relations"},
        {"calogero_vasiliev", "lambda = 2 Calogero-Vasiliev pair: [a,a†] = I + kappa K, {K,a†} = 0"},
        {"deformed_clambda", "deformed C_lambda-extended Heisenberg algebra in Taylor-block form"},
    };
    auto it = descriptions.find(name);
    if (it == descriptions.end()) throw ConfigError("unknown preset '" + name + "'");
    return it->second;
}

std::string preset_source(const std::string& name, int lambda) {
    if (name == "gdoa") return gdoa_source(lambda);
    if (name == "deformed_clambda") return deformed_clambda_source(lambda);
    auto it = fixed_sources().find(name);
    if (it == fixed_sources().end()) throw ConfigError("unknown preset '" + name + "'");
    return it->second;
}

dsl::AlgebraPresentation preset_presentation(const std::string& name, int lambda) {
    return dsl::parse_presentation(preset_source(name, lambda));
}

dsl::AlgebraPresentation collapsed_case_presentation(const std::string& name, bool fermionic) {
    if (name != "case1" && name != "case2")
        throw ConfigError("collapsed_case_presentation: name must be case1 or case2");
    std::ostringstream os;
    os << "algebra " << name << ";\n";
    if (!fermionic) {
        // commutative extreme: theta = 0, eta = 1, chi = 1
        os << "gen x1, x2, p1, p2, bm1, bp1, bm2, bp2;\n";
        os << kCommutativePhase;
        os << kBosonicLadder;
        return dsl::parse_presentation(os.str());
    }
    const bool case2 = name == "case2";
    os << "gen x1, x2, p1, p2, bm1, bp1, bm2, bp2, ekp1, ekm1, ekp2, ekm2;\n";
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            os << "rel xx_" << i << j << ": antibracket(x" << i << ", x" << j << ") = 0;\n";
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            os << "rel pp_" << i << j << ": antibracket(p" << i << ", p" << j << ") = 0;\n";
    if (!case2) {
        // case 1 deforms [p,x] along with everything else: {p_i, x_j} = -i eta delta, eta = 1
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                os << "rel px_" << i << j << ": antibracket(p" << i << ", x" << j << ") = "
                   << (i == j ? "-i" : "0") << ";\n";
        os << kFermionicC1Ladder;
    } else {
        // case 2 keeps [p_i, x_j] = -i delta undeformed; C/D corrections with 1 - chi = 2
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                os << "rel px_" << i << j << ": bracket(p" << i << ", x" << j << ", 1) = "
                   << (i == j ? "-i" : "0") << ";\n";
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                os << "rel xpchi_" << i << j << ": antibracket(x" << i << ", p" << j << ") = "
                   << "2*(p" << j << " x" << i << ")" << (i == j ? " + i" : "") << ";\n";
            }
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                os << "rel pxchi_" << i << j << ": antibracket(p" << i << ", x" << j << ") = "
                   << "2*(x" << j << " p" << i << ")" << (i == j ? " - i" : "") << ";\n";
            }
        os << kFermionicC2Ladder;
    }
    return dsl::parse_presentation(os.str());
}

} // namespace qdeform
