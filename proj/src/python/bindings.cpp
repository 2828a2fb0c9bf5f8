#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdeform/dsl.hpp"
#include "qdeform/exotic.hpp"
#include "qdeform/fock.hpp"
#include "qdeform/presets.hpp"
#include "qdeform/report.hpp"
#include "qdeform/run.hpp"

namespace py = pybind11;
using namespace qdeform;

namespace {

RunConfig config_from_kwargs(const std::string& preset, const std::string& dsl_source, int dim,
                             int lambda, const std::string& nu, int sign, double mu_omega,
                             const std::vector<double>& alphas, const std::string& f, double tol,
                             const std::string& mask, bool measure_only, const std::string& xp_source) {
    RunConfig cfg;
    cfg.preset = preset;
    cfg.dsl_path = dsl_source; // path semantics, matching the CLI
    cfg.dim = dim;
    cfg.lambda = lambda;
    cfg.nu_grid = parse_nu_grid(nu);
    cfg.sign = sign;
    cfg.mu_omega = mu_omega;
    cfg.alphas = alphas;
    cfg.f_choice = f_choice_from_name(f);
    cfg.tolerance = tol;
    cfg.mask = parse_mask_policy(mask);
    cfg.measure_only = measure_only;
    cfg.xp_source = xp_source == "eq32" ? XPSource::eq32 : XPSource::inversion;
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Truncated Fock-space checks for deformed oscillator algebras";

    py::register_exception<ParseError>(m, "QdlParseError", PyExc_ValueError);
    py::register_exception<InvalidArgument>(m, "InvalidArgumentError", PyExc_ValueError);

    py::class_<FockBasis>(m, "FockBasis")
        .def(py::init([](int dim, int lambda) { return make_fock_space(dim, lambda); }),
             py::arg("dim"), py::arg("lambda") = 1)
        .def_readonly("dim", &FockBasis::dim)
        .def_readonly("grading", &FockBasis::grading)
        .def("__repr__", [](const FockBasis& b) {
            return "FockBasis(dim=" + std::to_string(b.dim) + ", lambda=" + std::to_string(b.grading) + ")";
        });

    m.def("make_fock_space", &make_fock_space, py::arg("dim"), py::arg("lambda") = 1);
    m.def("number_operator",
          [](const FockBasis& b) { return number_operator(b).entries(); });
    m.def("projector",
          [](const FockBasis& b, int mu) { return projector(b, mu).entries(); });
    m.def("klein_operator",
          [](const FockBasis& b) { return klein_operator(b).entries(); });
    m.def(
        "structure_function_operator",
        [](const FockBasis& b, const std::vector<double>& alphas) {
            return structure_function_operator(b, StructureFunctionSpec::from_alphas(alphas)).entries();
        },
        py::arg("basis"), py::arg("alphas"));
    m.def(
        "ladder_operators",
        [](const FockBasis& b, const std::vector<double>& alphas) {
            LadderPair p = ladder_operators(b, StructureFunctionSpec::from_alphas(alphas));
            return py::make_tuple(p.lowering.entries(), p.raising.entries());
        },
        py::arg("basis"), py::arg("alphas"), "Returns (lowering, raising) matrices.");
    m.def(
        "q_bracket",
        [](const Matrix& a, const Matrix& b, Complex q) {
            if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
                throw InvalidArgument("q_bracket: operands must be square and equally sized");
            return Matrix(a * b - q * (b * a));
        },
        py::arg("a"), py::arg("b"), py::arg("q"), "a b - q b a");
    m.def(
        "masked_residual",
        [](const Matrix& a, int mask_levels) {
            if (a.rows() != a.cols()) throw InvalidArgument("masked_residual: matrix must be square");
            FockBasis basis{static_cast<int>(a.rows()), 1};
            MaskedResidual r = masked_residual(OperatorMatrix(basis, a), mask_levels);
            return py::make_tuple(r.raw_norm, r.masked_norm);
        },
        py::arg("matrix"), py::arg("mask_levels"), "Returns (raw_norm, masked_norm).");

    py::class_<DeformationParams>(m, "DeformationParams")
        .def_readonly("nu", &DeformationParams::nu)
        .def_readonly("sign", &DeformationParams::sign)
        .def_readonly("mu_omega", &DeformationParams::mu_omega)
        .def_readonly("lambda_", &DeformationParams::lambda)
        .def_readonly("chi", &DeformationParams::chi)
        .def_readonly("theta", &DeformationParams::theta)
        .def_readonly("eta", &DeformationParams::eta)
        .def_readonly("f_value", &DeformationParams::f_value);

    m.def(
        "make_params",
        [](double nu, int sign, double mu_omega, int lambda, const std::string& f) {
            return make_params(nu, sign, mu_omega, lambda, f_choice_from_name(f));
        },
        py::arg("nu"), py::arg("sign") = 1, py::arg("mu_omega") = 1.0, py::arg("lambda") = 2,
        py::arg("f") = "default");
    m.def(
        "default_f", [](double nu, int sign) { return default_f(nu, sign); }, py::arg("nu"),
        py::arg("sign") = 1);

    py::class_<ModeRep>(m, "ModeRep")
        .def_property_readonly("lowering", [](const ModeRep& r) { return r.lowering.entries(); })
        .def_property_readonly("raising", [](const ModeRep& r) { return r.raising.entries(); })
        .def_property_readonly("number", [](const ModeRep& r) { return r.number.entries(); })
        .def_property_readonly("klein", [](const ModeRep& r) { return r.klein.entries(); })
        .def_property_readonly("xi", [](const ModeRep& r) { return r.xi.entries(); })
        .def_property_readonly("xi_inverse", [](const ModeRep& r) { return r.xi_inverse.entries(); })
        .def_property_readonly("position", [](const ModeRep& r) { return r.position.entries(); })
        .def_property_readonly("momentum",
                               [](const ModeRep& r) -> py::object {
                                   if (!r.momentum) return py::none();
                                   return py::cast(r.momentum->entries());
                               })
        .def_readonly("singular_levels", &ModeRep::singular_levels)
        .def_readonly("momentum_diagnostic", &ModeRep::momentum_diagnostic)
        .def_readonly("position_disagreement", &ModeRep::position_disagreement)
        .def_readonly("momentum_disagreement", &ModeRep::momentum_disagreement);

    m.def(
        "build_mode",
        [](const FockBasis& basis, const DeformationParams& params, const std::vector<double>& alphas) {
            return build_mode(basis, params, StructureFunctionSpec::from_alphas(alphas));
        },
        py::arg("basis"), py::arg("params"), py::arg("alphas"));

    py::class_<dsl::AlgebraPresentation>(m, "AlgebraPresentation")
        .def_readonly("name", &dsl::AlgebraPresentation::name)
        .def_readonly("generators", &dsl::AlgebraPresentation::generators)
        .def_property_readonly("parameters",
                               [](const dsl::AlgebraPresentation& p) {
                                   py::dict d;
                                   for (const auto& [name, value] : p.parameters)
                                       d[py::cast(name)] = value;
                                   return d;
                               })
        .def_property_readonly("relation_labels",
                               [](const dsl::AlgebraPresentation& p) {
                                   std::vector<std::string> labels;
                                   for (const auto& r : p.relations) labels.push_back(r.label);
                                   return labels;
                               })
        .def("render", &dsl::render_presentation);

    m.def("parse_presentation",
          [](const std::string& source) { return dsl::parse_presentation(source); });
    m.def("render_presentation", &dsl::render_presentation);

    m.def("preset_names", &preset_names);
    m.def("preset_source", &preset_source, py::arg("name"), py::arg("lambda") = 4);

    m.def(
        "check_json",
        [](const std::string& preset, const std::string& dsl_path, int dim, int lambda,
           const std::string& nu, int sign, double mu_omega, const std::vector<double>& alphas,
           const std::string& f, double tol, const std::string& mask, bool measure_only,
           const std::string& xp_source) {
            RunConfig cfg = config_from_kwargs(preset, dsl_path, dim, lambda, nu, sign, mu_omega,
                                               alphas, f, tol, mask, measure_only, xp_source);
            return emit_json(check_report(cfg));
        },
        py::arg("preset") = "", py::arg("dsl_path") = "", py::arg("dim") = 16, py::arg("lambda") = 2,
        py::arg("nu") = "0", py::arg("sign") = 1, py::arg("mu_omega") = 1.0,
        py::arg("alphas") = std::vector<double>{}, py::arg("f") = "default", py::arg("tol") = 1e-10,
        py::arg("mask") = "auto", py::arg("measure_only") = false, py::arg("xp_source") = "inversion");

    m.def(
        "sweep_csv",
        [](const std::string& preset, int dim, int lambda, const std::string& nu, int sign,
           double mu_omega, const std::vector<double>& alphas, const std::string& f, double tol,
           const std::string& mask, bool measure_only, const std::string& xp_source) {
            RunConfig cfg = config_from_kwargs(preset, "", dim, lambda, nu, sign, mu_omega, alphas, f,
                                               tol, mask, measure_only, xp_source);
            return emit_csv(sweep_reports(cfg));
        },
        py::arg("preset"), py::arg("dim") = 16, py::arg("lambda") = 4, py::arg("nu") = "0:1:0.1",
        py::arg("sign") = 1, py::arg("mu_omega") = 1.0, py::arg("alphas") = std::vector<double>{},
        py::arg("f") = "default", py::arg("tol") = 1e-10, py::arg("mask") = "auto",
        py::arg("measure_only") = false, py::arg("xp_source") = "inversion");
}
