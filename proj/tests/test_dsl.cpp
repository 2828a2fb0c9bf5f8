#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracle_eval.hpp"
#include "random_presentations.hpp"
#include "qdeform/eval.hpp"
#include "qdeform/presets.hpp"

using namespace qdeform;
using dsl::AlgebraPresentation;
using dsl::ExprPtr;
using dsl::ScalarPtr;
using testgen::Gen;

namespace {

OperatorMatrix wrap(const FockBasis& basis, const Matrix& m) { return OperatorMatrix(basis, m); }

} // namespace

TEST_CASE("minimal program parses") {
    auto p = dsl::parse_presentation("algebra boson; gen a; rel heis: bracket(a, dagger(a), 1) = I;");
    CHECK(p.name == "boson");
    CHECK(p.generators == std::vector<std::string>{"a"});
    CHECK(p.relations.size() == 1);
    CHECK(p.relations[0].label == "heis");
}

TEST_CASE("calogero-vasiliev example program") {
    auto p = dsl::parse_presentation(
        "algebra cv; gen a, K; param kappa = 0.5; "
        "rel r1: bracket(a, dagger(a), 1) = I + kappa*K; rel r2: antibracket(K, dagger(a)) = 0;");
    CHECK(p.generators.size() == 2);
    CHECK(p.parameters.size() == 1);
    CHECK(p.parameters[0].first == "kappa");
    CHECK(p.parameters[0].second == Complex(0.5, 0.0));
    CHECK(p.relations.size() == 2);
}

TEST_CASE("diagnostics carry positions and names") {
    SUBCASE("unknown symbol") {
        try {
            dsl::parse_presentation("algebra bad; rel r: bracket(a, b, 1) = I;");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("unknown symbol 'a'") != std::string::npos);
            CHECK(e.line == 1);
        }
    }
    SUBCASE("syntax error has line and column") {
        try {
            dsl::parse_presentation("algebra x;\ngen a\nrel r: a = a;");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 3);
            CHECK(std::string(e.what()).find("expected") != std::string::npos);
        }
    }
    SUBCASE("duplicate identifiers") {
        CHECK_THROWS_AS(dsl::parse_presentation("algebra x; gen a, a;"), ParseError);
        CHECK_THROWS_AS(dsl::parse_presentation("algebra x; gen a; param a = 1;"), ParseError);
        CHECK_THROWS_AS(dsl::parse_presentation("algebra x; gen K; rel r: K = K; rel r: K = K;"),
                        ParseError);
    }
    SUBCASE("reserved words cannot be declared") {
        CHECK_THROWS_AS(dsl::parse_presentation("algebra x; gen bracket;"), ParseError);
        CHECK_THROWS_AS(dsl::parse_presentation("algebra x; param pi = 1;"), ParseError);
    }
    SUBCASE("power exponent must be a nonnegative integer") {
        CHECK_THROWS_AS(dsl::parse_presentation("algebra x; gen a; rel r: power(a, 1.5) = I;"),
                        ParseError);
        CHECK_THROWS_AS(dsl::parse_presentation("algebra x; gen a; rel r: power(a, -1) = I;"),
                        ParseError);
    }
}

TEST_CASE("scalar syntax: complex literals, pi, exp, cos") {
    auto p = dsl::parse_presentation(
        "algebra s; gen a; param z = 1.5+0.5i; param w = -2i; param u = exp(i*pi); "
        "rel r: z*a = w*a + u*a;");
    CHECK(p.parameters[0].second == Complex(1.5, 0.5));
    CHECK(p.parameters[1].second == Complex(0.0, -2.0));
    CHECK(std::abs(p.parameters[2].second - Complex(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("parse-render round trip on shipped presets") {
    for (const auto& name : preset_names()) {
        for (int lambda : {1, 2, 3, 4}) {
            if (lambda != 4 && name != "gdoa" && name != "deformed_clambda") continue;
            AlgebraPresentation p = preset_presentation(name, lambda);
            const std::string rendered = dsl::render_presentation(p);
            AlgebraPresentation q = dsl::parse_presentation(rendered);
            CHECK_MESSAGE(dsl::structurally_equal(p, q), "round trip failed for ", name,
                          " at lambda=", lambda);
            // canonicalization fixed point
            CHECK(dsl::render_presentation(q) == rendered);
        }
    }
}

TEST_CASE("parse-render round trip on random presentations") {
    Gen gen(20240817);
    for (int trial = 0; trial < 120; ++trial) {
        AlgebraPresentation p = gen.presentation();
        std::string rendered;
        AlgebraPresentation q;
        REQUIRE_NOTHROW(rendered = dsl::render_presentation(p));
        CAPTURE(rendered);
        REQUIRE_NOTHROW(q = dsl::parse_presentation(rendered));
        CHECK_MESSAGE(dsl::structurally_equal(p, q), "random round trip failed:\n", rendered);
        CHECK(dsl::render_presentation(q) == rendered);
    }
}

TEST_CASE("parser totality under fuzzing") {
    std::mt19937 rng(1234);
    const std::string alphabet =
        "algebra gen param rel bracket antibracket dagger power I pi i exp cos "
        "abc123 ; : , ( ) = + - * / 0.5 2i # \n \t \xff \x00";
    int diagnostics = 0, ok = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        std::string input;
        const int len = static_cast<int>(rng() % 200);
        if (trial % 2 == 0) {
            for (int k = 0; k < len; ++k) input += static_cast<char>(rng() % 256);
        } else {
            for (int k = 0; k < len; ++k) input += alphabet[rng() % alphabet.size()];
        }
        try {
            dsl::parse_presentation(input);
            ++ok;
        } catch (const ParseError&) {
            ++diagnostics;
        }
        // any other exception escapes and fails the test
    }
    CHECK(diagnostics + ok == 10000);
    CHECK(diagnostics > 0);
}

TEST_CASE("deep nesting yields a diagnostic, not a crash") {
    std::string deep = "algebra d; gen a; rel r: ";
    for (int k = 0; k < 5000; ++k) deep += "(";
    deep += "a";
    for (int k = 0; k < 5000; ++k) deep += ")";
    deep += " = a;";
    CHECK_THROWS_AS(dsl::parse_presentation(deep), ParseError);
}

TEST_CASE("evaluator equals the straight-line oracle on random draws") {
    Gen gen(977);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const int dim = 4;
    FockBasis basis = make_fock_space(dim, 1);

    for (int trial = 0; trial < 200; ++trial) {
        AlgebraPresentation p = gen.presentation();

        std::map<std::string, OperatorMatrix> bindings;
        std::map<std::string, oracle::NaiveMatrix> naive;
        for (const auto& g : p.generators) {
            Matrix m(dim, dim);
            oracle::NaiveMatrix nm = oracle::zeros(dim);
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) {
                    const Complex v(dist(rng), dist(rng));
                    m(r, c) = v;
                    nm[r][c] = v;
                }
            bindings.emplace(g, wrap(basis, m));
            naive.emplace(g, std::move(nm));
        }
        std::map<std::string, Complex> params;
        for (const auto& [name, def] : p.parameters) params[name] = def;

        BoundAlgebra bound = bind_representation(p, bindings, params);
        for (const auto& rel : p.relations) {
            for (const ExprPtr& side : {rel.lhs, rel.rhs}) {
                Matrix got = evaluate_expression(side, bound);
                oracle::NaiveMatrix want = oracle::eval(side, naive, params, dim);
                double err = 0.0, scale = 1.0;
                for (int r = 0; r < dim; ++r)
                    for (int c = 0; c < dim; ++c) {
                        err = std::max(err, std::abs(got(r, c) - want[r][c]));
                        scale = std::max(scale, std::abs(want[r][c]));
                    }
                CHECK(err / scale < 1e-12);
            }
        }
    }
}

TEST_CASE("bind_representation reports missing and mismatched bindings") {
    auto cv = preset_presentation("calogero_vasiliev");
    FockBasis basis = make_fock_space(4, 2);
    auto spec = StructureFunctionSpec::from_alphas({0.5, -0.5});
    LadderPair l = ladder_operators(basis, spec);

    std::map<std::string, OperatorMatrix> missing_k{{"a", l.lowering}};
    try {
        bind_representation(cv, missing_k, {});
        FAIL("expected BindingError");
    } catch (const BindingError& e) {
        CHECK(std::string(e.what()).find("'K'") != std::string::npos);
    }

    std::map<std::string, OperatorMatrix> mismatched{
        {"a", l.lowering}, {"K", klein_operator(make_fock_space(6, 2))}};
    CHECK_THROWS_AS(bind_representation(cv, mismatched, {}), BindingError);
}

TEST_CASE("check_relations on the boson program") {
    const std::string boson = "algebra boson; gen a; rel heis: bracket(a, dagger(a), 1) = I;";
    auto p = dsl::parse_presentation(boson);
    for (int dim : {4, 8, 16, 64}) {
        FockBasis basis = make_fock_space(dim, 1);
        auto spec = StructureFunctionSpec::from_alphas({0.0});
        LadderPair l = ladder_operators(basis, spec);
        BoundAlgebra bound = bind_representation(p, {{"a", l.lowering}}, {});
        ResidualReport report = check_relations(bound, 1e-10, MaskPolicy::automatic());
        REQUIRE(report.relations.size() == 1);
        // mask policy soundness: automatic mask is at least 1 and the masked
        // residual vanishes
        CHECK(report.relations[0].mask_levels >= 1);
        CHECK(report.relations[0].masked_norm < 1e-12);
        CHECK(report.relations[0].pass);
        CHECK(report.overall_pass);
        // raw norm carries the truncation artifact
        CHECK(report.relations[0].raw_norm > 1.0);
    }
}

TEST_CASE("check_relations flags a failing binding") {
    const std::string boson = "algebra boson; gen a; rel heis: bracket(a, dagger(a), 1) = I;";
    auto p = dsl::parse_presentation(boson);
    const int dim = 16;
    FockBasis basis = make_fock_space(dim, 1);
    BoundAlgebra bound = bind_representation(p, {{"a", wrap(basis, Matrix::Zero(dim, dim))}}, {});
    ResidualReport report = check_relations(bound, 1e-10, MaskPolicy::automatic());
    CHECK_FALSE(report.overall_pass);
    // residual is exactly -I on the masked block; automatic mask never
    // exceeds the bracket band (0 for the zero matrix)
    CHECK(report.relations[0].masked_norm == doctest::Approx(std::sqrt(double(dim))));
}

TEST_CASE("automatic mask follows the band structure") {
    auto p = dsl::parse_presentation("algebra t; gen a; rel quad: power(a, 2) dagger(power(a, 2)) = I;");
    const int dim = 12;
    FockBasis basis = make_fock_space(dim, 1);
    auto spec = StructureFunctionSpec::from_alphas({0.0});
    LadderPair l = ladder_operators(basis, spec);
    BoundAlgebra bound = bind_representation(p, {{"a", l.lowering}}, {});
    auto band = expression_band(p.relations[0].lhs, bound);
    CHECK(band == std::vector<int>{4});
}

TEST_CASE("evaluation failure names the relation") {
    auto p = dsl::parse_presentation("algebra t; gen a; param huge = 1e308; rel blow: huge*(huge*a) = I;");
    const int dim = 4;
    FockBasis basis = make_fock_space(dim, 1);
    Matrix big = Matrix::Identity(dim, dim) * 1e300;
    BoundAlgebra bound = bind_representation(p, {{"a", wrap(basis, big)}}, {});
    try {
        check_relations(bound, 1e-10, MaskPolicy::automatic());
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(std::string(e.what()).find("blow") != std::string::npos);
    }
}

TEST_CASE("renderer emits canonical source for the cv example") {
    auto p = dsl::parse_presentation(preset_source("calogero_vasiliev"));
    const std::string rendered = dsl::render_presentation(p);
    CHECK(rendered.find("algebra calogero_vasiliev;") == 0);
    CHECK(rendered.find("param kappa = 0.5;") != std::string::npos);
    CHECK(rendered.find("bracket(a, dagger(a), 1)") != std::string::npos);
    auto q = dsl::parse_presentation(rendered);
    CHECK(dsl::structurally_equal(p, q));
}
