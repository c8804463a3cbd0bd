#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "qfock/operators.hpp"

using namespace qfock;

namespace {

LaurentPoly lp(const char* text) { return LaurentPoly::parse(text); }

double entry_or_zero(const SparseMatrix<double>& m, int r, int c) { return m.get(r, c); }

} // namespace

TEST_CASE("cartan diagonals on the 5-state module") {
    const GeneratorSet gens({1, 1, 2});
    const std::vector<int> h1 = {2, 1, 0, -1, -2};
    const std::vector<int> h2 = {2, 2, 1, 1, 0};
    for (int k = 0; k < 5; ++k) {
        CHECK(gens.h_diag(1).mat.get(k, k) == LaurentPoly(h1[k]));
        CHECK(gens.h_diag(2).mat.get(k, k) == LaurentPoly(h2[k]));
        CHECK(gens.l_diag(1).mat.get(k, k) == LaurentPoly::q(h1[k]));
        CHECK(gens.l_inv(1).mat.get(k, k) == LaurentPoly::q(-h1[k]));
    }
    CHECK(gens.h_diag(1).grade == 0);
    CHECK_THROWS_AS(gens.h_diag(3), Error);
    CHECK_THROWS_AS(gens.a_plus(0), Error);
}

TEST_CASE("ladder matrices on the 5-state module") {
    // basis order: (0,0), (0,1), (1,0), (1,1), (2,0)
    const GeneratorSet gens({1, 1, 2});

    const auto& am1 = gens.a_minus(1).mat;
    CHECK(am1.entries().size() == 3);
    CHECK(am1.get(0, 2) == lp("q + q^-1"));
    CHECK(am1.get(1, 3) == lp("1"));
    CHECK(am1.get(2, 4) == lp("q + q^-1"));

    const auto& ap1 = gens.a_plus(1).mat;
    CHECK(ap1.entries().size() == 3);
    CHECK(ap1.get(2, 0) == lp("1"));
    CHECK(ap1.get(3, 1) == lp("1"));
    CHECK(ap1.get(4, 2) == lp("1"));

    const auto& am2 = gens.a_minus(2).mat;
    CHECK(am2.entries().size() == 2);
    CHECK(am2.get(0, 1) == lp("q + q^-1"));
    CHECK(am2.get(2, 3) == lp("q"));

    const auto& ap2 = gens.a_plus(2).mat;
    CHECK(ap2.entries().size() == 2);
    CHECK(ap2.get(1, 0) == lp("1"));
    CHECK(ap2.get(3, 2) == lp("q^-1"));

    CHECK(gens.a_plus(1).grade == 0);
    CHECK(gens.a_plus(2).grade == 1);
}

TEST_CASE("exclusion bound and fermionic double occupancy") {
    for (const FockParams params : {FockParams{1, 1, 2}, FockParams{2, 1, 2}, FockParams{2, 2, 3}}) {
        const GeneratorSet gens(params);
        for (int i = 1; i <= params.generator_count(); ++i) {
            const auto& ap = gens.a_plus(i).mat;
            for (int c = 0; c < gens.basis()->dim(); ++c) {
                const auto& r = gens.basis()->state(c);
                const int total = std::accumulate(r.begin(), r.end(), 0);
                if (total == params.p) CHECK(ap.column(c).empty());
                if (i > params.n && r[i - 1] == 1) CHECK(ap.column(c).empty());
            }
            // annihilator kills the vacuum
            CHECK(gens.a_minus(i).mat.column(gens.basis()->vacuum_index()).empty());
        }
    }
}

TEST_CASE("grade bookkeeping") {
    const GeneratorSet gens({1, 1, 2});
    const auto prod = operator_product(gens.a_plus(1), gens.a_plus(2));
    CHECK(prod.grade == 1);
    const auto prod2 = operator_product(gens.a_plus(2), gens.a_minus(2));
    CHECK(prod2.grade == 0);

    const auto mixed = operator_sum(gens.a_plus(1), gens.a_plus(2));
    CHECK(!mixed.grade.has_value());
    CHECK_THROWS_AS(bracket(mixed, gens.a_plus(1), BracketKind::Supercommutator, 0, gens.qctx()),
                    Error);

    // the zero matrix is homogeneous of every grade
    const auto zero = operator_difference(gens.a_plus(1), gens.a_plus(1));
    CHECK_NOTHROW(bracket(zero, gens.a_plus(2), BracketKind::Supercommutator, 0, gens.qctx()));
}

TEST_CASE("brackets") {
    const GeneratorSet gens({1, 1, 2});
    const ExactQ& qc = gens.qctx();

    const auto hcomm = bracket(gens.h_diag(1), gens.h_diag(2), BracketKind::Commutator, 0, qc);
    CHECK(hcomm.mat.empty());

    // odd operand: the graded bracket of A with itself is 2 A^2
    const auto& a2 = gens.a_plus(2);
    const auto sc = bracket(a2, a2, BracketKind::Supercommutator, 0, qc);
    const auto twice = operator_product(a2, a2).mat.scaled(LaurentPoly(2));
    CHECK(sc.mat == twice);

    // supercommutator of the mutually lowering pair: diagonal of q-numbers
    const auto sc11 = bracket(gens.a_minus(1), gens.a_plus(1), BracketKind::Supercommutator, 0, qc);
    const std::vector<int> h1 = {2, 1, 0, -1, -2};
    for (int k = 0; k < 5; ++k) CHECK(sc11.mat.get(k, k) == q_number(h1[k]));
    const auto rhs = qc.div_qdiff(gens.l_diag(1).mat - gens.l_inv(1).mat);
    CHECK(sc11.mat == rhs);

    // L L^-1 = 1
    const auto li = operator_product(gens.l_diag(1), gens.l_inv(1));
    CHECK(li.mat == SparseMatrix<LaurentPoly>::identity(5));
}

TEST_CASE("sample-pinned generator sets have constant entries") {
    const GeneratorSet gens({1, 1, 2}, ExactQ(Rational(2, 3)));
    for (const auto& [k, v] : gens.a_minus(1).mat.entries()) CHECK(v.is_constant());
    CHECK(gens.a_minus(1).mat.get(0, 2) == LaurentPoly(Rational(13, 6))); // 2/3 + 3/2
    CHECK_THROWS_AS(ExactQ(Rational(0)), Error);
}

TEST_CASE("numeric generators match the normalized formulas") {
    const FockParams params{1, 1, 2};
    const NumericGeneratorSet gens(params, 0.7);
    // lowering (1,0) to the vacuum carries amplitude sqrt([1][2])
    const int src = gens.basis()->index_of({1, 0});
    const int dst = gens.basis()->index_of({0, 0});
    CHECK(entry_or_zero(gens.a_minus(1).mat, dst, src) ==
          doctest::Approx(1.45896244933563).epsilon(1e-12));
    CHECK_THROWS_AS(NumericGeneratorSet(params, 1.0), Error);
    CHECK_THROWS_AS(NumericGeneratorSet(params, 0.0), Error);
    CHECK_THROWS_AS(NumericGeneratorSet(params, -0.7), Error);
    CHECK_THROWS_AS(NumericQ(-1.0), Error);
}

TEST_CASE("change of basis maps exact matrices onto numeric ones") {
    for (const FockParams params : {FockParams{1, 1, 2}, FockParams{2, 1, 2}, FockParams{1, 2, 2}}) {
        const GeneratorSet exact(params);
        for (double q0 : {0.7, 1.3}) {
            const NumericGeneratorSet numeric(params, q0);
            CHECK(numeric.normalization_diag().get(numeric.basis()->vacuum_index(),
                                                   numeric.basis()->vacuum_index()) ==
                  doctest::Approx(1.0).epsilon(1e-14));
            for (int i = 1; i <= params.generator_count(); ++i) {
                const auto conj_minus = conjugate_to_normalized(exact.a_minus(i), numeric);
                CHECK(max_abs(conj_minus - numeric.a_minus(i).mat) < 1e-12);
                const auto conj_plus = conjugate_to_normalized(exact.a_plus(i), numeric);
                CHECK(max_abs(conj_plus - numeric.a_plus(i).mat) < 1e-12);
            }
        }
    }
}

TEST_CASE("creation and annihilation magnitudes are adjoint under the q <-> 1/q twist") {
    for (const FockParams params : {FockParams{1, 1, 2}, FockParams{2, 1, 2}}) {
        for (double q0 : {0.7, 1.3}) {
            const NumericGeneratorSet at_q(params, q0);
            const NumericGeneratorSet at_qbar(params, 1.0 / q0);
            for (int i = 1; i <= params.generator_count(); ++i) {
                const auto plus = at_q.a_plus(i).mat;
                const auto minus_t = at_qbar.a_minus(i).mat.transpose();
                double worst = 0.0;
                for (const auto& [k, v] : plus.entries())
                    worst = std::max(worst, std::abs(std::abs(v) -
                                                     std::abs(minus_t.get(k.first, k.second))));
                for (const auto& [k, v] : minus_t.entries())
                    worst = std::max(worst,
                                     std::abs(std::abs(v) - std::abs(plus.get(k.first, k.second))));
                CHECK(worst < 1e-12);
            }
        }
    }
}

TEST_CASE("free hamiltonian spectrum and ladder") {
    const FreeHamiltonian fh = build_free_hamiltonian({1, 1, 2}, {Rational(1)});
    CHECK(fh.spectrum == std::vector<Rational>{0, 1, 1, 2, 2});
    CHECK(ladder_check(fh).pass);
    CHECK_FALSE(fh.sum_of_h_form_matches);

    const FreeHamiltonian fh32 = build_free_hamiltonian({1, 1, 2}, {Rational(3, 2)});
    CHECK(ladder_check(fh32).pass);

    // independent oracle: energy of r is sum_i e_i (r_i + r_{i+n})
    const FreeHamiltonian big = build_free_hamiltonian({2, 2, 3}, {Rational(3, 2), Rational(2, 5)});
    const FockBasis basis({2, 2, 3});
    for (int k = 0; k < basis.dim(); ++k) {
        const auto& r = basis.state(k);
        const Rational expected = Rational(3, 2) * (r[0] + r[2]) + Rational(2, 5) * (r[1] + r[3]);
        CHECK(big.spectrum[k] == expected);
    }
    CHECK(ladder_check(big).pass);
    CHECK_FALSE(big.sum_of_h_form_matches);

    CHECK_THROWS_AS(build_free_hamiltonian({2, 1, 2}, {Rational(1), Rational(1)}), Error);
    CHECK_THROWS_AS(build_free_hamiltonian({1, 1, 2}, {}), Error);
    try {
        build_free_hamiltonian({2, 1, 2}, {Rational(1), Rational(1)});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RequiresNEqM);
    }
}

TEST_CASE("matrix json schema") {
    const GeneratorSet gens({1, 1, 2});
    const auto j = nlohmann::json::parse(matrix_to_json(gens.a_plus(2)));
    CHECK(j["label"] == "a+_2");
    CHECK(j["grade"] == 1);
    CHECK(j["mode"] == "exact");
    CHECK(j["params"]["p"] == 2);
    CHECK(j["entries"].size() == 2);
    CHECK(j["entries"][0][2] == "1");

    const NumericGeneratorSet num({1, 1, 2}, 0.7);
    const auto jn = nlohmann::json::parse(matrix_to_json(num.a_plus(2)));
    CHECK(jn["mode"] == "numeric");
    CHECK(jn["entries"][0][2].is_number());
}
