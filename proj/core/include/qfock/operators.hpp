#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qfock/fock.hpp"
#include "qfock/laurent.hpp"
#include "qfock/matrix.hpp"

namespace qfock {

/**
 * A generator (or generator expression) realized as a matrix on a Fock
 * basis, together with its Z_2 grade. grade is empty when the value is an
 * inhomogeneous sum; the zero matrix is treated as homogeneous of every
 * grade.
 */
template <typename T>
struct BasicOperator {
    std::shared_ptr<const FockBasis> basis;
    SparseMatrix<T> mat;
    std::optional<int> grade;
    std::string label;

    int dim() const { return basis ? basis->dim() : mat.rows(); }
};

using ExactOperator = BasicOperator<LaurentPoly>;
using NumericOperator = BasicOperator<double>;

/// How q is realized in exact arithmetic: as the indeterminate itself
/// (symbolic Laurent entries) or pinned to a nonzero rational sample
/// (constant entries). All brackets and qdivdiff go through this.
class ExactQ {
public:
    ExactQ() = default;
    explicit ExactQ(const Rational& sample_q0);

    bool symbolic() const { return !sample_.has_value(); }
    const std::optional<Rational>& sample() const { return sample_; }

    LaurentPoly q_power(int k) const;
    LaurentPoly realize(const LaurentPoly& scalar) const;
    /// Entrywise division by (q - q^-1); exact-division in symbolic mode
    /// (NON_DIVISIBLE when no exact quotient exists), a scalar inverse at a
    /// sample (BAD_Q when the sample is 1 or -1).
    SparseMatrix<LaurentPoly> div_qdiff(const SparseMatrix<LaurentPoly>& m) const;

private:
    std::optional<Rational> sample_;
};

/// Numeric realization at a real sample q0 not in {0, 1, -1}.
class NumericQ {
public:
    explicit NumericQ(double q0);
    double q0() const { return q0_; }
    double q_power(int k) const;
    double realize(const LaurentPoly& scalar) const { return scalar.evaluate(q0_); }
    SparseMatrix<double> div_qdiff(const SparseMatrix<double>& m) const;

private:
    double q0_;
};

enum class BracketKind { Commutator, Anticommutator, Supercommutator };

/// Grade used by the graded bracket; GRADE_UNDEFINED for an inhomogeneous
/// nonzero operand.
template <typename T>
int definite_grade(const BasicOperator<T>& op);

template <typename T>
BasicOperator<T> operator_product(const BasicOperator<T>& a, const BasicOperator<T>& b);
template <typename T>
BasicOperator<T> operator_sum(const BasicOperator<T>& a, const BasicOperator<T>& b);
template <typename T>
BasicOperator<T> operator_difference(const BasicOperator<T>& a, const BasicOperator<T>& b);
template <typename T>
BasicOperator<T> operator_scaled(const BasicOperator<T>& a, const T& factor);

/// [a,b]_x = ab - x ba, {a,b}_x = ab + x ba, or the graded
/// [[a,b]]_x = ab - (-1)^{deg a deg b} x ba, with x = q^deform_exponent.
template <typename T, typename Q>
BasicOperator<T> bracket(const BasicOperator<T>& a, const BasicOperator<T>& b, BracketKind kind,
                         int deform_exponent, const Q& qctx);

/// All generator matrices of one Fock family in the unnormalized monomial
/// basis, where every entry is an exact Laurent polynomial. Immutable.
class GeneratorSet {
public:
    explicit GeneratorSet(const FockParams& params, ExactQ qctx = ExactQ());

    const FockParams& params() const { return params_; }
    const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
    const ExactQ& qctx() const { return qctx_; }

    const ExactOperator& a_plus(int i) const { return at(a_plus_, i); }
    const ExactOperator& a_minus(int i) const { return at(a_minus_, i); }
    const ExactOperator& h_diag(int i) const { return at(h_, i); }
    const ExactOperator& l_diag(int i) const { return at(l_, i); }
    const ExactOperator& l_inv(int i) const { return at(l_inv_, i); }

    /// Same family with q pinned to a nonzero rational sample.
    GeneratorSet evaluated_at(const Rational& q0) const { return GeneratorSet(params_, ExactQ(q0)); }

private:
    const ExactOperator& at(const std::vector<ExactOperator>& v, int i) const;

    FockParams params_;
    ExactQ qctx_;
    std::shared_ptr<const FockBasis> basis_;
    std::vector<ExactOperator> a_plus_, a_minus_, h_, l_, l_inv_;
};

/// Individual builders behind GeneratorSet (also used directly in tests).
using BasisPtr = std::shared_ptr<const FockBasis>;
ExactOperator build_h(const BasisPtr& basis, int i, const ExactQ& qctx = ExactQ());
ExactOperator build_l(const BasisPtr& basis, int i, int power, const ExactQ& qctx = ExactQ());
ExactOperator build_a_plus(const BasisPtr& basis, int i, const ExactQ& qctx = ExactQ());
ExactOperator build_a_minus(const BasisPtr& basis, int i, const ExactQ& qctx = ExactQ());

/// Normalized orthonormal-basis matrices in double precision, with the
/// q^{r_1+..+r_{i-1}} phase factors and square-root amplitudes.
class NumericGeneratorSet {
public:
    NumericGeneratorSet(const FockParams& params, double q0);

    const FockParams& params() const { return params_; }
    const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
    double q0() const { return qctx_.q0(); }
    const NumericQ& qctx() const { return qctx_; }

    const NumericOperator& a_plus(int i) const { return at(a_plus_, i); }
    const NumericOperator& a_minus(int i) const { return at(a_minus_, i); }
    const NumericOperator& h_diag(int i) const { return at(h_, i); }
    const NumericOperator& l_diag(int i) const { return at(l_, i); }
    const NumericOperator& l_inv(int i) const { return at(l_inv_, i); }

    /// Diagonal change of basis D with D_rr = sqrt([p-sum r]! / ([p]! prod [r_l]!)).
    SparseMatrix<double> normalization_diag() const;

private:
    const NumericOperator& at(const std::vector<NumericOperator>& v, int i) const;

    FockParams params_;
    NumericQ qctx_;
    std::shared_ptr<const FockBasis> basis_;
    std::vector<NumericOperator> a_plus_, a_minus_, h_, l_, l_inv_;
};

SparseMatrix<double> evaluate_matrix(const SparseMatrix<LaurentPoly>& m, double q0);
SparseMatrix<Rational> evaluate_matrix(const SparseMatrix<LaurentPoly>& m, const Rational& q0);

/// D^-1 * evaluate(exact at q0) * D: maps unnormalized exact matrices onto
/// the normalized numeric convention.
SparseMatrix<double> conjugate_to_normalized(const ExactOperator& exact, const NumericGeneratorSet& numeric);

/// The diagonal Hamiltonian sum_i e_i([[b_i^+,b_i^-]] + [[f_i^+,f_i^-]])
/// at q = 1 (exact rational arithmetic), with b_i = a_i, f_i = a_{i+n}.
struct FreeHamiltonian {
    FockParams params;
    std::vector<Rational> energies;
    ExactOperator hamiltonian;       // constant entries
    std::vector<Rational> spectrum;  // diagonal, basis order
    bool sum_of_h_form_matches;      // whether sum_i e_i(H_i + H_{i+n}) equals it
};

/// REQUIRES_N_EQ_M unless params.n == params.m; energies.size() must be n.
FreeHamiltonian build_free_hamiltonian(const FockParams& params, const std::vector<Rational>& energies);

struct LadderCheck {
    bool pass = true;
    std::string detail; // first failing bracket, if any
};

/// Verifies [H, a_j^+-] = +-e_i a_j^+- exactly for j = i and j = i + n.
LadderCheck ladder_check(const FreeHamiltonian& h);

/// {"params":..,"label":..,"grade":..,"mode":..,"entries":[[r,c,value],..]}
std::string matrix_to_json(const ExactOperator& op);
std::string matrix_to_json(const NumericOperator& op);

} // namespace qfock
