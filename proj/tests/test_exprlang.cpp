#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qfock/exprlang.hpp"

using namespace qfock;

namespace {

ExprPtr random_expr(std::mt19937& rng, int depth);

ExprPtr random_leaf(std::mt19937& rng, bool allow_scalar) {
    std::uniform_int_distribution<int> pick(allow_scalar ? 0 : 1, 6);
    std::uniform_int_distribution<int> index(1, 4);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> expo(-3, 3);
    switch (pick(rng)) {
    case 0: {
        LaurentPoly s;
        std::uniform_int_distribution<int> terms(0, 3);
        const int k = terms(rng);
        for (int t = 0; t < k; ++t) s += LaurentPoly::monomial(Rational(coeff(rng)), expo(rng));
        return Expr::make_scalar(s);
    }
    case 1: return Expr::make_atom(AtomKind::Ap, index(rng));
    case 2: return Expr::make_atom(AtomKind::Am, index(rng));
    case 3: return Expr::make_atom(AtomKind::H, index(rng));
    case 4: return Expr::make_atom(AtomKind::L, index(rng));
    case 5: return Expr::make_atom(AtomKind::Linv, index(rng));
    default: return Expr::make_atom(AtomKind::Hch, index(rng));
    }
}

// generates parser-canonical trees: scalar folding means a foldable node
// never has two scalar children, and Pow never has a scalar base
ExprPtr random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    std::uniform_int_distribution<int> defo(-2, 2);
    std::uniform_int_distribution<int> power(0, 3);
    switch (pick(rng)) {
    case 0:
    case 1: return random_leaf(rng, true);
    case 2: {
        auto a = random_expr(rng, depth - 1);
        auto b = random_expr(rng, depth - 1);
        if (a->kind == Expr::Kind::Scalar && b->kind == Expr::Kind::Scalar)
            b = random_leaf(rng, false);
        return Expr::make_add(a, b);
    }
    case 3: {
        auto a = random_expr(rng, depth - 1);
        auto b = random_expr(rng, depth - 1);
        if (a->kind == Expr::Kind::Scalar && b->kind == Expr::Kind::Scalar)
            b = random_leaf(rng, false);
        return Expr::make_sub(a, b);
    }
    case 4: {
        auto a = random_expr(rng, depth - 1);
        auto b = random_expr(rng, depth - 1);
        if (a->kind == Expr::Kind::Scalar && b->kind == Expr::Kind::Scalar)
            b = random_leaf(rng, false);
        return Expr::make_mul(a, b);
    }
    case 5: {
        auto base = random_expr(rng, depth - 1);
        if (base->kind == Expr::Kind::Scalar) base = random_leaf(rng, false);
        return Expr::make_pow(base, power(rng));
    }
    case 6:
        return Expr::make_bracket(Expr::Kind::Comm, random_expr(rng, depth - 1),
                                  random_expr(rng, depth - 1), defo(rng));
    case 7:
        return Expr::make_bracket(Expr::Kind::Acomm, random_expr(rng, depth - 1),
                                  random_expr(rng, depth - 1), defo(rng));
    case 8:
        return Expr::make_bracket(Expr::Kind::Scomm, random_expr(rng, depth - 1),
                                  random_expr(rng, depth - 1), defo(rng));
    default:
        return Expr::make_qdivdiff(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    }
}

} // namespace

TEST_CASE("parsing identities and expressions") {
    const Identity id =
        parse_identity("scomm(Am(1), Ap(1)) == qdivdiff(L(1), Linv(1))");
    CHECK(id.lhs->kind == Expr::Kind::Scomm);
    CHECK(id.rhs->kind == Expr::Kind::QDivDiff);
    CHECK(id.lhs->lhs->atom == AtomKind::Am);

    const ExprPtr e = parse_expr_text("comm(H(1), H(2))");
    CHECK(e->kind == Expr::Kind::Comm);
    CHECK(e->exponent == 0);

    const ExprPtr deformed = parse_expr_text("scomm(Ap(1), Ap(2), 1)");
    CHECK(deformed->exponent == 1);

    const ExprPtr negdef = parse_expr_text("comm(E(1), E(2), -1)");
    CHECK(negdef->exponent == -1);

    const auto parsed = parse_input("Ap(1)*Ap(1) == Ap(1)^2");
    CHECK(std::holds_alternative<Identity>(parsed));
    CHECK(std::holds_alternative<ExprPtr>(parse_input("L(1)*Linv(1)")));
}

TEST_CASE("precedence and scalar folding") {
    // '^' binds tighter than '*', which binds tighter than '+'
    const ExprPtr e = parse_expr_text("H(1) + H(2)*Ap(1)^2");
    CHECK(e->kind == Expr::Kind::Add);
    CHECK(e->rhs->kind == Expr::Kind::Mul);
    CHECK(e->rhs->rhs->kind == Expr::Kind::Pow);

    // pure scalar arithmetic folds to one node
    const ExprPtr s = parse_expr_text("q^2 - 2 + q^-2");
    CHECK(s->kind == Expr::Kind::Scalar);
    CHECK(s->scalar == LaurentPoly::parse("q^2 - 2 + q^-2"));
    const ExprPtr r = parse_expr_text("3/2*q");
    CHECK(r->kind == Expr::Kind::Scalar);
    CHECK(r->scalar == LaurentPoly::monomial(Rational(3, 2), 1));

    // unary minus folds through scalars and wraps operators
    CHECK(parse_expr_text("-2")->scalar == LaurentPoly(-2));
    const ExprPtr neg = parse_expr_text("-2*Ap(1)");
    CHECK(neg->kind == Expr::Kind::Sub);
    CHECK(neg->lhs->scalar.is_zero());
}

TEST_CASE("parse errors carry positions and codes") {
    CHECK_THROWS_AS(parse_expr_text("comm(H(1)"), ParseError);
    CHECK_THROWS_AS(parse_expr_text("H(1) +"), ParseError);
    CHECK_THROWS_AS(parse_expr_text("foo(1)"), ParseError);
    CHECK_THROWS_AS(parse_expr_text("H(1) = H(2)"), ParseError);
    CHECK_THROWS_AS(parse_identity("H(1)"), ParseError);
    try {
        parse_expr_text("comm(H(1), H(2)");
    } catch (const ParseError& e) {
        CHECK(e.position() == 15);
    }
    try {
        parse_expr_text("comm(H(1))");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Arity);
    }
    try {
        parse_expr_text("qdivdiff(L(1), Linv(1), 2)");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Arity);
    }
    try {
        parse_expr_text("Ap(0)");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IndexRange);
    }
}

TEST_CASE("evaluation of atoms, identities and the homomorphism laws") {
    const FockParams params{1, 1, 2};
    const GeneratorSet gens(params);
    const ExactContext ctx(gens);

    CHECK(eval_expr(parse_expr_text("Am(1)"), ctx).mat == gens.a_minus(1).mat);
    CHECK(eval_expr(parse_expr_text("L(1)*Linv(1)"), ctx).mat ==
          SparseMatrix<LaurentPoly>::identity(5));
    CHECK(eval_expr(parse_expr_text("scomm(Am(1), Ap(1)) - qdivdiff(L(1), Linv(1))"), ctx)
              .mat.empty());

    CHECK(check_identity(parse_identity("comm(H(1), H(2)) == 0"), ctx).passed());
    CHECK(check_identity(parse_identity("Ap(1)*Ap(1) == Ap(1)^2"), ctx).passed());
    CHECK(check_identity(parse_identity("scomm(Ap(1), Ap(2), 1) == 0"), ctx).passed());
    CHECK_FALSE(check_identity(parse_identity("H(1) == H(2)"), ctx).passed());

    // eval distributes over + and * on random small trees
    std::mt19937 rng(5);
    int done = 0;
    while (done < 60) {
        const ExprPtr a = random_expr(rng, 2);
        const ExprPtr b = random_expr(rng, 2);
        try {
            const auto va = eval_expr(a, ctx).mat;
            const auto vb = eval_expr(b, ctx).mat;
            CHECK(eval_expr(Expr::make_add(a, b), ctx).mat == va + vb);
            CHECK(eval_expr(Expr::make_mul(a, b), ctx).mat == va * vb);
            ++done;
        } catch (const Error&) {
            // trees referencing unavailable atoms or mixed grades are skipped
        }
    }
}

TEST_CASE("evaluation errors") {
    const FockParams params{1, 1, 2};
    const GeneratorSet gens(params);
    const ExactContext ctx(gens);

    try {
        eval_expr(parse_expr_text("E(1)"), ctx);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnresolvedAtom);
    }
    try {
        eval_expr(parse_expr_text("Ap(3)"), ctx);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IndexRange);
    }
    try {
        eval_expr(parse_expr_text("scomm(Ap(1) + Ap(2), Am(1))"), ctx);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GradeUndefined);
    }
    try {
        eval_expr(parse_expr_text("qdivdiff(H(1), H(2))"), ctx);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonDivisible);
    }
    CHECK_THROWS_AS(eval_expr(parse_expr_text("Ap(1)^-1"), ctx), Error);
}

TEST_CASE("chevalley atoms resolve in a sample-pinned context") {
    const Rational q0(2, 3);
    const GeneratorSet gens({1, 1, 2}, ExactQ(q0));
    const ChevalleySet chev = reconstruct_chevalley(gens);
    const ExactContext ctx(gens, &chev);

    CHECK(check_identity(parse_identity("E(1) == Am(1)"), ctx).passed());
    CHECK(check_identity(parse_identity("scomm(E(1), F(1)) == qdivdiff(K(1), Kinv(1))"), ctx)
              .passed());
    CHECK(check_identity(parse_identity("E(2)^2 == 0"), ctx).passed());

    // context construction rejects a mismatched sample
    const GeneratorSet symbolic({1, 1, 2});
    CHECK_THROWS_AS(ExactContext(symbolic, &chev), Error);
    const GeneratorSet other({1, 1, 2}, ExactQ(Rational(3, 5)));
    CHECK_THROWS_AS(ExactContext(other, &chev), Error);
}

TEST_CASE("numeric evaluation context") {
    const NumericGeneratorSet gens({1, 1, 2}, 0.7);
    const NumericContext ctx{gens, 1e-10};
    CHECK(check_identity(parse_identity("scomm(Am(1), Ap(1)) == qdivdiff(L(1), Linv(1))"), ctx)
              .passed());
    CHECK_FALSE(check_identity(parse_identity("H(1) == H(2)"), ctx).passed());
    CHECK_THROWS_AS(eval_expr(parse_expr_text("E(1)"), ctx), Error);
}

TEST_CASE("print/parse round trip on 1000 random trees") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const ExprPtr e = random_expr(rng, 3);
        const std::string text = print_expr(e);
        ExprPtr back;
        try {
            back = parse_expr_text(text);
        } catch (const Error& err) {
            FAIL("failed to reparse: ", text, "  (", err.what(), ")");
        }
        if (!expr_equal(e, back)) FAIL("round trip changed: ", text, " -> ", print_expr(back));
        CHECK(print_expr(back) == text);
    }
}

TEST_CASE("identity printing round trips") {
    const Identity id = parse_identity("scomm(Am(1), Ap(1)) == qdivdiff(L(1), Linv(1))");
    CHECK(print_identity(id) == "scomm(Am(1), Ap(1)) == qdivdiff(L(1), Linv(1))");
}

TEST_CASE("catalog files") {
    const std::string content = "# defining relations\n"
                                "params 1 1 2\n"
                                "\n"
                                "comm(H(1), H(2)) == 0\n"
                                "scomm(Ap(1), Ap(2), 1) == 0\n";
    const CatalogFile file = parse_catalog_file(content);
    REQUIRE(file.params.has_value());
    CHECK(file.params->n == 1);
    CHECK(file.params->p == 2);
    CHECK(file.identities.size() == 2);
    CHECK(file.identities[0].first == 4);
    CHECK_THROWS_AS(parse_catalog_file("params 1 1\n"), Error);
    CHECK_THROWS_AS(parse_catalog_file("params 1 1 2\nparams 1 1 2\n"), Error);
}
