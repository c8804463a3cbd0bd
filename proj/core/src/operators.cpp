#include "qfock/operators.hpp"

#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

namespace qfock {

ExactQ::ExactQ(const Rational& sample_q0) : sample_(sample_q0) {
    if (sample_q0 == 0) throw Error(ErrorCode::BadQ, "q sample must be nonzero");
}

LaurentPoly ExactQ::q_power(int k) const {
    if (!sample_) return LaurentPoly::q(k);
    return LaurentPoly(rat_pow(*sample_, k));
}

LaurentPoly ExactQ::realize(const LaurentPoly& scalar) const {
    if (!sample_) return scalar;
    return LaurentPoly(scalar.evaluate(*sample_));
}

SparseMatrix<LaurentPoly> ExactQ::div_qdiff(const SparseMatrix<LaurentPoly>& m) const {
    if (!sample_) {
        const LaurentPoly d = LaurentPoly::q_minus_qbar();
        return m.map([&](const LaurentPoly& v) { return v.divided_exactly_by(d); });
    }
    const Rational c = *sample_ - Rational(denominator(*sample_), numerator(*sample_));
    if (c == 0) throw Error(ErrorCode::BadQ, "q - q^-1 vanishes at the sample " + to_string(*sample_));
    const LaurentPoly inv{Rational(1) / c};
    return m.map([&](const LaurentPoly& v) { return v * inv; });
}

NumericQ::NumericQ(double q0) : q0_(q0) {
    if (q0 == 0.0 || q0 == 1.0 || q0 == -1.0)
        throw Error(ErrorCode::BadQ, "numeric q0 must avoid {0, 1, -1}");
}

double NumericQ::q_power(int k) const { return std::pow(q0_, k); }

SparseMatrix<double> NumericQ::div_qdiff(const SparseMatrix<double>& m) const {
    const double c = q0_ - 1.0 / q0_;
    return m.map([&](double v) { return v / c; });
}

template <typename T>
int definite_grade(const BasicOperator<T>& op) {
    if (op.grade) return *op.grade;
    if (op.mat.empty()) return 0;
    throw Error(ErrorCode::GradeUndefined, "graded bracket on a mixed-grade operand" +
                                               (op.label.empty() ? "" : " '" + op.label + "'"));
}

template int definite_grade<LaurentPoly>(const ExactOperator&);
template int definite_grade<double>(const NumericOperator&);

namespace {

template <typename T>
void require_same_basis(const BasicOperator<T>& a, const BasicOperator<T>& b) {
    if (a.mat.rows() != b.mat.rows() || a.mat.cols() != b.mat.cols())
        throw Error(ErrorCode::Domain, "operands live on different bases");
}

template <typename T>
std::optional<int> sum_grade(const BasicOperator<T>& a, const BasicOperator<T>& b) {
    if (a.mat.empty()) return b.grade;
    if (b.mat.empty()) return a.grade;
    if (a.grade && b.grade && *a.grade == *b.grade) return a.grade;
    return std::nullopt;
}

} // namespace

template <typename T>
BasicOperator<T> operator_product(const BasicOperator<T>& a, const BasicOperator<T>& b) {
    require_same_basis(a, b);
    std::optional<int> grade;
    if (a.grade && b.grade) grade = (*a.grade + *b.grade) % 2;
    return {a.basis ? a.basis : b.basis, a.mat * b.mat, grade, ""};
}

template <typename T>
BasicOperator<T> operator_sum(const BasicOperator<T>& a, const BasicOperator<T>& b) {
    require_same_basis(a, b);
    return {a.basis ? a.basis : b.basis, a.mat + b.mat, sum_grade(a, b), ""};
}

template <typename T>
BasicOperator<T> operator_difference(const BasicOperator<T>& a, const BasicOperator<T>& b) {
    require_same_basis(a, b);
    return {a.basis ? a.basis : b.basis, a.mat - b.mat, sum_grade(a, b), ""};
}

template <typename T>
BasicOperator<T> operator_scaled(const BasicOperator<T>& a, const T& factor) {
    return {a.basis, a.mat.scaled(factor), a.grade, a.label};
}

template BasicOperator<LaurentPoly> operator_product(const ExactOperator&, const ExactOperator&);
template BasicOperator<double> operator_product(const NumericOperator&, const NumericOperator&);
template BasicOperator<LaurentPoly> operator_sum(const ExactOperator&, const ExactOperator&);
template BasicOperator<double> operator_sum(const NumericOperator&, const NumericOperator&);
template BasicOperator<LaurentPoly> operator_difference(const ExactOperator&, const ExactOperator&);
template BasicOperator<double> operator_difference(const NumericOperator&, const NumericOperator&);
template BasicOperator<LaurentPoly> operator_scaled(const ExactOperator&, const LaurentPoly&);
template BasicOperator<double> operator_scaled(const NumericOperator&, const double&);

template <typename T, typename Q>
BasicOperator<T> bracket(const BasicOperator<T>& a, const BasicOperator<T>& b, BracketKind kind,
                         int deform_exponent, const Q& qctx) {
    require_same_basis(a, b);
    const T x = qctx.q_power(deform_exponent);
    BasicOperator<T> ab = operator_product(a, b);
    BasicOperator<T> ba = operator_product(b, a);
    T factor = x;
    switch (kind) {
    case BracketKind::Commutator:
        factor = -factor;
        break;
    case BracketKind::Anticommutator:
        break;
    case BracketKind::Supercommutator: {
        const int sign = (definite_grade(a) * definite_grade(b)) % 2;
        if (sign == 0) factor = -factor;
        break;
    }
    }
    BasicOperator<T> scaled_ba = operator_scaled(ba, factor);
    return operator_sum(ab, scaled_ba);
}

template ExactOperator bracket(const ExactOperator&, const ExactOperator&, BracketKind, int, const ExactQ&);
template NumericOperator bracket(const NumericOperator&, const NumericOperator&, BracketKind, int,
                                 const NumericQ&);

namespace {

int check_generator_index(const FockBasis& basis, int i) {
    if (i < 1 || i > basis.params().generator_count())
        throw Error(ErrorCode::IndexRange, "generator index " + std::to_string(i));
    return i;
}

/// (-1)^{theta_i (theta_1 r_1 + ... + theta_{i-1} r_{i-1})}
int phase_sign(const FockBasis& basis, int i, const OccupationVector& r) {
    const FockParams& params = basis.params();
    if (theta(i, params) == 0) return 1;
    int odd = 0;
    for (int j = 1; j < i; ++j) odd += theta(j, params) * r[j - 1];
    return odd % 2 == 0 ? 1 : -1;
}

int prefix_sum(const OccupationVector& r, int i) {
    int s = 0;
    for (int j = 1; j < i; ++j) s += r[j - 1];
    return s;
}

} // namespace

ExactOperator build_h(const BasisPtr& bp, int i, const ExactQ&) {
    const FockBasis& basis = *bp;
    check_generator_index(basis, i);
    SparseMatrix<LaurentPoly> m(basis.dim(), basis.dim());
    for (int k = 0; k < basis.dim(); ++k) m.set(k, k, LaurentPoly(basis.h_eigenvalue(i, k)));
    return {bp, std::move(m), 0, "H_" + std::to_string(i)};
}

ExactOperator build_l(const BasisPtr& bp, int i, int power, const ExactQ& qctx) {
    const FockBasis& basis = *bp;
    check_generator_index(basis, i);
    if (power != 1 && power != -1) throw Error(ErrorCode::Domain, "L power must be +-1");
    SparseMatrix<LaurentPoly> m(basis.dim(), basis.dim());
    for (int k = 0; k < basis.dim(); ++k) m.set(k, k, qctx.q_power(power * basis.h_eigenvalue(i, k)));
    return {bp, std::move(m), 0, (power == 1 ? "L_" : "Linv_") + std::to_string(i)};
}

ExactOperator build_a_plus(const BasisPtr& bp, int i, const ExactQ& qctx) {
    const FockBasis& basis = *bp;
    check_generator_index(basis, i);
    const FockParams& params = basis.params();
    const int th = theta(i, params);
    SparseMatrix<LaurentPoly> m(basis.dim(), basis.dim());
    for (int c = 0; c < basis.dim(); ++c) {
        const OccupationVector& r = basis.state(c);
        const int total = std::accumulate(r.begin(), r.end(), 0);
        if (total == params.p) continue;          // order-p exclusion bound
        if (th == 1 && r[i - 1] == 1) continue;   // fermionic double occupancy
        OccupationVector target = r;
        ++target[i - 1];
        const Rational phi(phase_sign(basis, i, r));
        LaurentPoly value = LaurentPoly::monomial(phi, -prefix_sum(r, i));
        m.set(basis.index_of(target), c, qctx.realize(value));
    }
    return {bp, std::move(m), th, "a+_" + std::to_string(i)};
}

ExactOperator build_a_minus(const BasisPtr& bp, int i, const ExactQ& qctx) {
    const FockBasis& basis = *bp;
    check_generator_index(basis, i);
    const FockParams& params = basis.params();
    const int th = theta(i, params);
    SparseMatrix<LaurentPoly> m(basis.dim(), basis.dim());
    for (int c = 0; c < basis.dim(); ++c) {
        const OccupationVector& r = basis.state(c);
        if (r[i - 1] == 0) continue;
        OccupationVector target = r;
        --target[i - 1];
        const int total = std::accumulate(r.begin(), r.end(), 0);
        const Rational phi(phase_sign(basis, i, r));
        LaurentPoly value = LaurentPoly::monomial(phi, prefix_sum(r, i));
        value *= q_number(r[i - 1]);
        value *= q_number(params.p - total + 1);
        m.set(basis.index_of(target), c, qctx.realize(value));
    }
    return {bp, std::move(m), th, "a-_" + std::to_string(i)};
}

GeneratorSet::GeneratorSet(const FockParams& params, ExactQ qctx)
    : params_(params), qctx_(std::move(qctx)), basis_(make_basis(params)) {
    const int count = params_.generator_count();
    a_plus_.reserve(count);
    for (int i = 1; i <= count; ++i) {
        a_plus_.push_back(build_a_plus(basis_, i, qctx_));
        a_minus_.push_back(build_a_minus(basis_, i, qctx_));
        h_.push_back(build_h(basis_, i, qctx_));
        l_.push_back(build_l(basis_, i, 1, qctx_));
        l_inv_.push_back(build_l(basis_, i, -1, qctx_));
    }
}

const ExactOperator& GeneratorSet::at(const std::vector<ExactOperator>& v, int i) const {
    if (i < 1 || i > static_cast<int>(v.size()))
        throw Error(ErrorCode::IndexRange, "generator index " + std::to_string(i));
    return v[i - 1];
}

NumericGeneratorSet::NumericGeneratorSet(const FockParams& params, double q0)
    : params_(params), qctx_(q0), basis_(make_basis(params)) {
    if (q0 <= 0.0)
        throw Error(ErrorCode::BadQ, "normalized numeric matrices require q0 > 0 (real amplitudes)");
    auto qnum = [&](int x) { return q_number(x).evaluate(q0); };
    const int count = params_.generator_count();
    for (int i = 1; i <= count; ++i) {
        const int th = theta(i, params_);
        SparseMatrix<double> plus(basis_->dim(), basis_->dim());
        SparseMatrix<double> minus(basis_->dim(), basis_->dim());
        std::vector<double> hdiag(basis_->dim()), ldiag(basis_->dim()), linvdiag(basis_->dim());
        for (int c = 0; c < basis_->dim(); ++c) {
            const OccupationVector& r = basis_->state(c);
            const int total = std::accumulate(r.begin(), r.end(), 0);
            const int s = prefix_sum(r, i);
            const double phi = phase_sign(*basis_, i, r);
            const int h = basis_->h_eigenvalue(i, c);
            hdiag[c] = h;
            ldiag[c] = std::pow(q0, h);
            linvdiag[c] = std::pow(q0, -h);
            if (total < params_.p && !(th == 1 && r[i - 1] == 1)) {
                OccupationVector target = r;
                ++target[i - 1];
                const double amp = std::sqrt(qnum(r[i - 1] + 1) * qnum(params_.p - total));
                plus.set(basis_->index_of(target), c, phi * std::pow(q0, -s) * amp);
            }
            if (r[i - 1] > 0) {
                OccupationVector target = r;
                --target[i - 1];
                const double amp = std::sqrt(qnum(r[i - 1]) * qnum(params_.p - total + 1));
                minus.set(basis_->index_of(target), c, phi * std::pow(q0, s) * amp);
            }
        }
        a_plus_.push_back({basis_, std::move(plus), th, "a+_" + std::to_string(i)});
        a_minus_.push_back({basis_, std::move(minus), th, "a-_" + std::to_string(i)});
        h_.push_back({basis_, SparseMatrix<double>::diagonal(hdiag), 0, "H_" + std::to_string(i)});
        l_.push_back({basis_, SparseMatrix<double>::diagonal(ldiag), 0, "L_" + std::to_string(i)});
        l_inv_.push_back({basis_, SparseMatrix<double>::diagonal(linvdiag), 0, "Linv_" + std::to_string(i)});
    }
}

const NumericOperator& NumericGeneratorSet::at(const std::vector<NumericOperator>& v, int i) const {
    if (i < 1 || i > static_cast<int>(v.size()))
        throw Error(ErrorCode::IndexRange, "generator index " + std::to_string(i));
    return v[i - 1];
}

SparseMatrix<double> NumericGeneratorSet::normalization_diag() const {
    const double q0 = qctx_.q0();
    auto qfact = [&](int x) { return q_factorial(x).evaluate(q0); };
    std::vector<double> diag(basis_->dim());
    for (int k = 0; k < basis_->dim(); ++k) {
        const OccupationVector& r = basis_->state(k);
        const int total = std::accumulate(r.begin(), r.end(), 0);
        double value = qfact(params_.p - total) / qfact(params_.p);
        for (int v : r) value /= qfact(v);
        diag[k] = std::sqrt(value);
    }
    return SparseMatrix<double>::diagonal(diag);
}

SparseMatrix<double> evaluate_matrix(const SparseMatrix<LaurentPoly>& m, double q0) {
    return m.map([&](const LaurentPoly& v) { return v.evaluate(q0); });
}

SparseMatrix<Rational> evaluate_matrix(const SparseMatrix<LaurentPoly>& m, const Rational& q0) {
    return m.map([&](const LaurentPoly& v) { return v.evaluate(q0); });
}

SparseMatrix<double> conjugate_to_normalized(const ExactOperator& exact, const NumericGeneratorSet& numeric) {
    const SparseMatrix<double> d = numeric.normalization_diag();
    SparseMatrix<double> dinv(d.rows(), d.cols());
    for (const auto& [k, v] : d.entries()) dinv.set(k.first, k.second, 1.0 / v);
    return dinv * evaluate_matrix(exact.mat, numeric.q0()) * d;
}

FreeHamiltonian build_free_hamiltonian(const FockParams& params, const std::vector<Rational>& energies) {
    params.validate();
    if (params.n != params.m)
        throw Error(ErrorCode::RequiresNEqM, "free Hamiltonian needs n = m, got n=" +
                                                 std::to_string(params.n) + " m=" + std::to_string(params.m));
    if (static_cast<int>(energies.size()) != params.n)
        throw Error(ErrorCode::Domain, "expected " + std::to_string(params.n) + " energies");

    const GeneratorSet gens(params, ExactQ(Rational(1)));
    const ExactQ& qc = gens.qctx();
    ExactOperator h{gens.basis(), SparseMatrix<LaurentPoly>(gens.basis()->dim(), gens.basis()->dim()), 0, "H"};
    for (int i = 1; i <= params.n; ++i) {
        ExactOperator boson = bracket(gens.a_plus(i), gens.a_minus(i), BracketKind::Supercommutator, 0, qc);
        ExactOperator fermion =
            bracket(gens.a_plus(i + params.n), gens.a_minus(i + params.n), BracketKind::Supercommutator, 0, qc);
        ExactOperator pair = operator_sum(boson, fermion);
        h = operator_sum(h, operator_scaled(pair, LaurentPoly(energies[i - 1])));
    }

    std::vector<Rational> spectrum(gens.basis()->dim(), Rational(0));
    for (const auto& [k, v] : h.mat.entries()) {
        if (k.first != k.second)
            throw Error(ErrorCode::Domain, "free Hamiltonian is not diagonal at q = 1");
        spectrum[k.first] = v.constant_value();
    }

    SparseMatrix<LaurentPoly> alt(gens.basis()->dim(), gens.basis()->dim());
    for (int i = 1; i <= params.n; ++i) {
        const LaurentPoly e(energies[i - 1]);
        alt += gens.h_diag(i).mat.scaled(e);
        alt += gens.h_diag(i + params.n).mat.scaled(e);
    }
    const bool alt_matches = alt == h.mat;

    return {params, energies, std::move(h), std::move(spectrum), alt_matches};
}

LadderCheck ladder_check(const FreeHamiltonian& fh) {
    const GeneratorSet gens(fh.params, ExactQ(Rational(1)));
    const ExactQ& qc = gens.qctx();
    for (int i = 1; i <= fh.params.n; ++i) {
        for (int j : {i, i + fh.params.n}) {
            for (int sign : {+1, -1}) {
                const ExactOperator& gen = sign > 0 ? gens.a_plus(j) : gens.a_minus(j);
                ExactOperator lhs = bracket(fh.hamiltonian, gen, BracketKind::Commutator, 0, qc);
                ExactOperator rhs = operator_scaled(gen, LaurentPoly(Rational(sign) * fh.energies[i - 1]));
                if (!(lhs.mat == rhs.mat)) {
                    return {false, "[H, " + gen.label + "] != " + (sign > 0 ? "+" : "-") +
                                       to_string(fh.energies[i - 1]) + " * " + gen.label};
                }
            }
        }
    }
    return {true, ""};
}

namespace {

template <typename T>
nlohmann::ordered_json matrix_json_impl(const BasicOperator<T>& op, const std::string& mode) {
    nlohmann::ordered_json j;
    const FockParams& p = op.basis->params();
    j["params"] = {{"n", p.n}, {"m", p.m}, {"p", p.p}};
    j["label"] = op.label;
    if (op.grade)
        j["grade"] = *op.grade;
    else
        j["grade"] = nullptr;
    j["mode"] = mode;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& [k, v] : op.mat.entries()) {
        if constexpr (std::is_same_v<T, LaurentPoly>)
            entries.push_back({k.first, k.second, v.str()});
        else
            entries.push_back({k.first, k.second, v});
    }
    j["entries"] = std::move(entries);
    return j;
}

} // namespace

std::string matrix_to_json(const ExactOperator& op) { return matrix_json_impl(op, "exact").dump(); }
std::string matrix_to_json(const NumericOperator& op) { return matrix_json_impl(op, "numeric").dump(); }

} // namespace qfock
