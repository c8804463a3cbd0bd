#pragma once

#include "qfock/operators.hpp"
#include "qfock/relations.hpp"

namespace qfock {

/// Cartan matrix entry computed from the grading:
/// (1 + (-1)^{t}) d_{ij} - (-1)^{t} d_{i,j-1} - d_{i-1,j} with
/// t = theta_{i-1} + theta_i.
int cartan_alpha(int i, int j, const FockParams& params);

/// Chevalley generators h_i, e_i, f_i, k_i = q0^{h_i} solved on a pinned
/// rational sample; all matrices have constant rational entries.
struct ChevalleySet {
    FockParams params;
    Rational q0;
    std::vector<ExactOperator> h, e, f, k, kinv; // position i-1 holds generator i

    const ExactOperator& h_op(int i) const { return at(h, i); }
    const ExactOperator& e_op(int i) const { return at(e, i); }
    const ExactOperator& f_op(int i) const { return at(f, i); }
    const ExactOperator& k_op(int i) const { return at(k, i); }
    const ExactOperator& kinv_op(int i) const { return at(kinv, i); }

    /// Z_2 degree of e_i and f_i: theta_{i-1} + theta_i mod 2 (only the
    /// boundary generator is odd).
    int grade(int i) const;

private:
    const ExactOperator& at(const std::vector<ExactOperator>& v, int i) const;
};

/// Inverts the triangular Cartan sums for the h_i and solves the two
/// ladder equations per index for e_i, f_i, subject to the weight
/// constraints. Requires a sample-pinned generator set; raises
/// UNDERDETERMINED when a masked system has a nontrivial null space and
/// INCONSISTENT when it has no solution.
ChevalleySet reconstruct_chevalley(const GeneratorSet& gens_at_sample);

/// Cartan-Kac and Serre relations for the solved generators, all at the
/// sample (tags 1a, 1b_e, 1b_f, 1c, 2a_e, 2a_sq_e, 2b_e, 2c_e plus the f
/// mirrors). Inapplicable families are reported as skipped.
std::vector<RelationReport> verify_cartan_kac_serre(const ChevalleySet& chev);

/// Rebuilds every a_i^-, a_i^+, H_i from the solved generators along the
/// normal-order chain and compares with the direct matrices
/// (tags 4m, 4p, 4H).
std::vector<RelationReport> verify_cag_roundtrip(const ChevalleySet& chev, const GeneratorSet& gens);

/// Chevalley relations as DSL text for a context populated with
/// E/F/Hch/K atoms at one sample.
std::vector<CatalogEntry> render_chevalley_catalog(const FockParams& params);

/// Dense exact linear solve (Gauss elimination over rationals).
struct LinearSolution {
    enum class Kind { Unique, Underdetermined, Inconsistent };
    Kind kind = Kind::Unique;
    std::vector<Rational> values; // meaningful when kind == Unique
    int nullity = 0;
};

LinearSolution solve_linear_system(std::vector<std::vector<Rational>> lhs, std::vector<Rational> rhs);

} // namespace qfock
