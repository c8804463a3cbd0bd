#include "qfock/relations.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qfock {

int epsilon(int j, int k, int i) {
    if (j > k && k > i) return 1;
    if (j < k && k < i) return -1;
    return 0;
}

bool root_order_less(const Root& r1, const Root& r2, const FockParams& params) {
    auto check = [&](const Root& r) {
        if (r.first < 0 || r.first >= r.second || r.second > params.generator_count())
            throw Error(ErrorCode::MalformedRoot,
                        "(" + std::to_string(r.first) + "," + std::to_string(r.second) + ")");
    };
    check(r1);
    check(r2);
    return r1.second < r2.second || (r1.second == r2.second && r1.first < r2.first);
}

std::vector<Root> positive_roots(const FockParams& params) {
    params.validate();
    std::vector<Root> roots;
    for (int j = 1; j <= params.generator_count(); ++j)
        for (int i = 0; i < j; ++i) roots.emplace_back(i, j);
    std::sort(roots.begin(), roots.end(),
              [&](const Root& a, const Root& b) { return root_order_less(a, b, params); });
    return roots;
}

std::string RelationId::str() const {
    std::string out = tag;
    if (!indices.empty()) {
        out += "(";
        for (std::size_t k = 0; k < indices.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(indices[k]);
        }
        out += ")";
    }
    return out;
}

const char* to_string(RelationStatus status) {
    switch (status) {
    case RelationStatus::Pass: return "pass";
    case RelationStatus::Fail: return "fail";
    case RelationStatus::Skipped: return "skipped";
    }
    return "unknown";
}

VerifySummary summarize(const std::vector<RelationReport>& reports) {
    VerifySummary s;
    for (const auto& r : reports) {
        ++s.total;
        if (r.status == RelationStatus::Fail) ++s.failed;
        if (r.status == RelationStatus::Skipped) ++s.skipped;
    }
    return s;
}

namespace {

// ---------------------------------------------------------------------------
// catalog enumeration (single source for the native verifier and the DSL
// renderer, so both see exactly the same instances)
// ---------------------------------------------------------------------------

struct CatalogInstance {
    RelationId id;
    bool applicable = true;
    std::string note;

    CatalogInstance(RelationId i, bool a = true, std::string n = {})
        : id(std::move(i)), applicable(a), note(std::move(n)) {}
};

void enumerate_defining_ids(const FockParams& p, std::vector<CatalogInstance>& out) {
    const int N = p.generator_count();
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) out.push_back({{"6a", {i, j}}});
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int s : {+1, -1}) out.push_back({{"6b", {i, j, s}}});
    for (int i = 1; i <= N; ++i) out.push_back({{"6c", {i}}});
    if (N >= 2) {
        for (int i = 1; i <= N; ++i)
            for (int xi : {+1, -1}) {
                if (i + xi < 1 || i + xi > N) continue;
                for (int k = 1; k <= N; ++k)
                    for (int eta : {+1, -1}) out.push_back({{"6d", {i, k, xi, eta}}});
            }
    } else {
        out.push_back({{"6d", {}}, false, "no adjacent index pairs"});
    }
    for (int xi : {+1, -1}) {
        if (N >= 2)
            out.push_back({{"6e1", {xi}}});
        else
            out.push_back({{"6e1", {xi}}, false, "requires n+m >= 2"});
    }
    for (int xi : {+1, -1}) out.push_back({{"6e2", {xi}}});
}

void enumerate_derived_ids(const FockParams& p, std::vector<CatalogInstance>& out) {
    const int N = p.generator_count();
    if (N >= 2) {
        for (int i = 1; i <= N; ++i)
            for (int j = i + 1; j <= N; ++j)
                for (int xi : {+1, -1}) out.push_back({{"8", {i, j, xi}}});
    } else {
        out.push_back({{"8", {}}, false, "no index pairs i < j"});
    }
    for (int i = 1; i <= N; ++i)
        for (int v : {1, 2}) out.push_back({{"11a", {i, v}}});
    if (N >= 2) {
        for (int i = 1; i <= N; ++i)
            for (int j = i + 1; j <= N; ++j) out.push_back({{"11b", {i, j}}});
    } else {
        out.push_back({{"11b", {}}, false, "no index pairs i < j"});
    }
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int s : {+1, -1}) out.push_back({{"11c", {i, j, s}}});
    for (int i = 1; i <= N; ++i) out.push_back({{"12a", {i}}});
    if (N >= 2) {
        for (int i = 1; i <= N; ++i)
            for (int j = i + 1; j <= N; ++j)
                for (int eta : {+1, -1}) out.push_back({{"12b", {i, j, eta}}});
    } else {
        out.push_back({{"12b", {}}, false, "no index pairs i < j"});
    }
    if (N >= 2) {
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j) {
                if (i == j) continue;
                const int xi = j > i ? 1 : -1;
                for (int k = 1; k <= N; ++k)
                    for (int eta : {+1, -1}) {
                        out.push_back({{"13m", {i, j, k, xi, eta}}});
                        out.push_back({{"13r", {i, j, k, xi, eta}}});
                    }
            }
    } else {
        out.push_back({{"13m", {}}, false, "no index pairs i != j"});
        out.push_back({{"13r", {}}, false, "no index pairs i != j"});
    }
}

void enumerate_vacuum_ids(const FockParams& p, std::vector<CatalogInstance>& out) {
    const int N = p.generator_count();
    for (int i = 1; i <= N; ++i) out.push_back({{"7a", {i}}});
    for (int i = 1; i <= N; ++i) out.push_back({{"7b", {i}}});
    if (N >= 2) {
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j)
                if (i != j) out.push_back({{"7c", {i, j}}});
    } else {
        out.push_back({{"7c", {}}, false, "no index pairs i != j"});
    }
}

// ---------------------------------------------------------------------------
// evaluation engines
// ---------------------------------------------------------------------------

struct ExactEngine {
    const GeneratorSet& g;
    std::string mode;
    using Op = ExactOperator;
    using Scalar = LaurentPoly;

    explicit ExactEngine(const GeneratorSet& gens) : g(gens) {
        mode = gens.qctx().symbolic() ? "exact" : "exact@" + qfock::to_string(*gens.qctx().sample());
    }
    const FockParams& params() const { return g.params(); }
    int th(int i) const { return theta(i, g.params()); }
    const Op& a(int sign, int i) const { return sign > 0 ? g.a_plus(i) : g.a_minus(i); }
    const Op& cartan(int i) const { return g.h_diag(i); }
    const Op& l(int i) const { return g.l_diag(i); }
    const Op& linv(int i) const { return g.l_inv(i); }
    Op br(const Op& x, const Op& y, BracketKind kind, int k = 0) const {
        return bracket(x, y, kind, k, g.qctx());
    }
    Op scale_int(const Op& x, int c) const { return operator_scaled(x, LaurentPoly(c)); }
    Op scale_qpow(const Op& x, int k) const { return operator_scaled(x, g.qctx().q_power(k)); }
    Op scale_qdiff(const Op& x) const {
        return operator_scaled(x, g.qctx().realize(LaurentPoly::q_minus_qbar()));
    }
    Op qdiv(const Op& x) const {
        Op out = x;
        out.mat = g.qctx().div_qdiff(x.mat);
        return out;
    }
    Op zero() const {
        return {g.basis(), SparseMatrix<Scalar>(g.basis()->dim(), g.basis()->dim()), 0, "0"};
    }
    Op identity() const { return {g.basis(), SparseMatrix<Scalar>::identity(g.basis()->dim()), 0, "1"}; }
    Op unit_vacuum(int value) const {
        Op out = zero();
        const int v = g.basis()->vacuum_index();
        out.mat.set(v, v, Scalar(value));
        return out;
    }
    Op column_at(const Op& x, int c) const {
        Op out = zero();
        out.grade = x.grade;
        for (const auto& [row, val] : x.mat.column(c)) out.mat.set(row, c, val);
        return out;
    }
    int vacuum() const { return g.basis()->vacuum_index(); }
    bool is_zero(const SparseMatrix<Scalar>& m) const { return m.empty(); }
    ResidualMatrix residual(SparseMatrix<Scalar> m) const { return ResidualMatrix{std::move(m)}; }
};

struct NumericEngine {
    const NumericGeneratorSet& g;
    double tol;
    std::string mode;
    using Op = NumericOperator;
    using Scalar = double;

    NumericEngine(const NumericGeneratorSet& gens, double tolerance) : g(gens), tol(tolerance) {
        std::ostringstream os;
        os << "numeric@" << gens.q0();
        mode = os.str();
    }
    const FockParams& params() const { return g.params(); }
    int th(int i) const { return theta(i, g.params()); }
    const Op& a(int sign, int i) const { return sign > 0 ? g.a_plus(i) : g.a_minus(i); }
    const Op& cartan(int i) const { return g.h_diag(i); }
    const Op& l(int i) const { return g.l_diag(i); }
    const Op& linv(int i) const { return g.l_inv(i); }
    Op br(const Op& x, const Op& y, BracketKind kind, int k = 0) const {
        return bracket(x, y, kind, k, g.qctx());
    }
    Op scale_int(const Op& x, int c) const { return operator_scaled(x, static_cast<double>(c)); }
    Op scale_qpow(const Op& x, int k) const { return operator_scaled(x, g.qctx().q_power(k)); }
    Op scale_qdiff(const Op& x) const { return operator_scaled(x, g.q0() - 1.0 / g.q0()); }
    Op qdiv(const Op& x) const {
        Op out = x;
        out.mat = g.qctx().div_qdiff(x.mat);
        return out;
    }
    Op zero() const {
        return {g.basis(), SparseMatrix<double>(g.basis()->dim(), g.basis()->dim()), 0, "0"};
    }
    Op identity() const { return {g.basis(), SparseMatrix<double>::identity(g.basis()->dim()), 0, "1"}; }
    Op unit_vacuum(int value) const {
        Op out = zero();
        const int v = g.basis()->vacuum_index();
        out.mat.set(v, v, static_cast<double>(value));
        return out;
    }
    Op column_at(const Op& x, int c) const {
        Op out = zero();
        out.grade = x.grade;
        for (const auto& [row, val] : x.mat.column(c)) out.mat.set(row, c, val);
        return out;
    }
    int vacuum() const { return g.basis()->vacuum_index(); }
    bool is_zero(const SparseMatrix<double>& m) const { return max_abs(m) <= tol; }
    ResidualMatrix residual(SparseMatrix<double> m) const { return ResidualMatrix{std::move(m)}; }
};

template <class E>
RelationReport make_report(const E& e, RelationId id, const typename E::Op& lhs,
                           const typename E::Op& rhs) {
    auto diff = lhs.mat - rhs.mat;
    RelationReport r{std::move(id), RelationStatus::Pass, e.mode, std::monostate{}, ""};
    if (!e.is_zero(diff)) {
        r.status = RelationStatus::Fail;
        r.residual = e.residual(std::move(diff));
    }
    return r;
}

RelationReport make_skipped(RelationId id, const std::string& mode, const std::string& note) {
    return {std::move(id), RelationStatus::Skipped, mode, std::monostate{}, note};
}

/// eta^{theta} as an integer sign.
int eta_power_theta(int eta, int th) { return th == 1 ? eta : 1; }

template <class E>
RelationReport compute_instance(const E& e, const CatalogInstance& inst) {
    if (!inst.applicable) return make_skipped(inst.id, e.mode, inst.note);
    const auto& ix = inst.id.indices;
    const std::string& tag = inst.id.tag;
    using Op = typename E::Op;

    if (tag == "6a") {
        return make_report(e, inst.id, e.br(e.cartan(ix[0]), e.cartan(ix[1]), BracketKind::Commutator),
                           e.zero());
    }
    if (tag == "6b") {
        const int i = ix[0], j = ix[1], s = ix[2];
        const int c = -s * (1 + (e.th(i) == 0 ? 1 : -1) * (i == j ? 1 : 0));
        return make_report(e, inst.id, e.br(e.cartan(i), e.a(s, j), BracketKind::Commutator),
                           e.scale_int(e.a(s, j), c));
    }
    if (tag == "6c" || tag == "12a") {
        const int i = ix[0];
        const Op lhs = e.br(e.a(-1, i), e.a(+1, i), BracketKind::Supercommutator);
        try {
            const Op rhs = e.qdiv(operator_difference(e.l(i), e.linv(i)));
            return make_report(e, inst.id, lhs, rhs);
        } catch (const Error& err) {
            if (err.code() != ErrorCode::NonDivisible) throw;
            RelationReport r{inst.id, RelationStatus::Fail, e.mode, std::monostate{}, err.what()};
            return r;
        }
    }
    if (tag == "6d" || tag == "13m" || tag == "13r") {
        int i, j, k, xi, eta;
        if (tag == "6d") {
            i = ix[0], k = ix[1], xi = ix[2], eta = ix[3];
            j = i + xi;
        } else {
            i = ix[0], j = ix[1], k = ix[2], xi = ix[3], eta = ix[4];
        }
        const Op inner = e.br(e.a(eta, i), e.a(-eta, j), BracketKind::Supercommutator);
        const int kk = xi * (1 + (e.th(i) == 0 ? 1 : -1) * (i == k ? 1 : 0));
        const Op lhs = e.br(inner, e.a(eta, k), BracketKind::Supercommutator, kk);

        Op rhs = e.zero();
        if (j == k) {
            const Op& lfactor = (xi * eta == 1) ? e.linv(k) : e.l(k);
            rhs = operator_product(lfactor, e.a(eta, i));
            const int sign = eta_power_theta(eta, e.th(tag == "6d" ? k : j));
            if (sign < 0) rhs = e.scale_int(rhs, -1);
        }
        if (tag != "6d") {
            const int eps_v = epsilon(j, k, i);
            if (eps_v != 0) {
                const Op pair = e.br(e.a(eta, k), e.a(-eta, j), BracketKind::Supercommutator);
                if (tag == "13m") {
                    const int c = (e.th(k) == 1 ? -1 : 1) * eps_v;
                    Op corr = e.scale_qdiff(operator_product(pair, e.a(eta, i)));
                    rhs = operator_sum(rhs, e.scale_int(corr, c));
                } else {
                    const int c = ((e.th(k) * e.th(j)) % 2 == 1 ? -1 : 1) * eps_v;
                    Op corr = e.scale_qpow(e.scale_qdiff(operator_product(e.a(eta, i), pair)), xi);
                    rhs = operator_sum(rhs, e.scale_int(corr, c));
                }
            }
        }
        return make_report(e, inst.id, lhs, rhs);
    }
    if (tag == "6e1") {
        const int xi = ix[0];
        return make_report(e, inst.id, e.br(e.a(xi, 1), e.a(xi, 2), BracketKind::Supercommutator, 1),
                           e.zero());
    }
    if (tag == "6e2") {
        const int xi = ix[0];
        return make_report(e, inst.id, e.br(e.a(xi, 1), e.a(xi, 1), BracketKind::Supercommutator),
                           e.zero());
    }
    if (tag == "8" || tag == "12b") {
        const int i = ix[0], j = ix[1], xi = ix[2];
        return make_report(e, inst.id, e.br(e.a(xi, i), e.a(xi, j), BracketKind::Supercommutator, 1),
                           e.zero());
    }
    if (tag == "11a") {
        const int i = ix[0], v = ix[1];
        const Op lhs =
            v == 1 ? operator_product(e.l(i), e.linv(i)) : operator_product(e.linv(i), e.l(i));
        return make_report(e, inst.id, lhs, e.identity());
    }
    if (tag == "11b") {
        const int i = ix[0], j = ix[1];
        return make_report(e, inst.id, operator_product(e.l(i), e.l(j)),
                           operator_product(e.l(j), e.l(i)));
    }
    if (tag == "11c") {
        const int i = ix[0], j = ix[1], s = ix[2];
        const int c = -s * (1 + (e.th(i) == 0 ? 1 : -1) * (i == j ? 1 : 0));
        const Op lhs = operator_product(e.l(i), e.a(s, j));
        const Op rhs = e.scale_qpow(operator_product(e.a(s, j), e.l(i)), c);
        return make_report(e, inst.id, lhs, rhs);
    }
    if (tag == "7a") {
        const int i = ix[0];
        return make_report(e, inst.id, e.column_at(e.a(-1, i), e.vacuum()), e.zero());
    }
    if (tag == "7b") {
        const int i = ix[0];
        return make_report(e, inst.id, e.column_at(e.cartan(i), e.vacuum()),
                           e.unit_vacuum(e.params().p));
    }
    if (tag == "7c") {
        const int i = ix[0], j = ix[1];
        const auto sc = e.br(e.a(-1, i), e.a(+1, j), BracketKind::Supercommutator);
        return make_report(e, inst.id, e.column_at(sc, e.vacuum()), e.zero());
    }
    throw Error(ErrorCode::Domain, "unknown relation tag '" + tag + "'");
}

template <class E>
std::vector<RelationReport> compute_all(const E& e, const std::vector<CatalogInstance>& instances) {
    std::vector<RelationReport> out;
    out.reserve(instances.size());
    for (const auto& inst : instances) out.push_back(compute_instance(e, inst));
    return out;
}

// ---------------------------------------------------------------------------
// DSL rendering
// ---------------------------------------------------------------------------

std::string atom_a(int sign, int i) {
    return (sign > 0 ? "Ap(" : "Am(") + std::to_string(i) + ")";
}
std::string atom_name(const char* name, int i) { return std::string(name) + "(" + std::to_string(i) + ")"; }

std::string scaled_term(int c, const std::string& term) {
    if (c == 1) return term;
    if (c == -1) return "-" + term;
    return std::to_string(c) + "*" + term;
}

std::string qpow_factor(int k) {
    if (k == 1) return "q";
    return "q^" + std::to_string(k);
}

std::string bracket_call(const char* fn, const std::string& x, const std::string& y, int k) {
    std::string out = std::string(fn) + "(" + x + ", " + y;
    if (k != 0) out += ", " + std::to_string(k);
    return out + ")";
}

std::string render_instance(const FockParams& p, const RelationId& id) {
    const auto& ix = id.indices;
    const std::string& tag = id.tag;
    auto th = [&](int i) { return theta(i, p); };

    if (tag == "6a")
        return bracket_call("comm", atom_name("H", ix[0]), atom_name("H", ix[1]), 0) + " == 0";
    if (tag == "6b") {
        const int i = ix[0], j = ix[1], s = ix[2];
        const int c = -s * (1 + (th(i) == 0 ? 1 : -1) * (i == j ? 1 : 0));
        const std::string lhs = bracket_call("comm", atom_name("H", i), atom_a(s, j), 0);
        if (c == 0) return lhs + " == 0";
        return lhs + " == " + scaled_term(c, atom_a(s, j));
    }
    if (tag == "6c" || tag == "12a") {
        const int i = ix[0];
        return bracket_call("scomm", atom_a(-1, i), atom_a(+1, i), 0) +
               " == " + bracket_call("qdivdiff", atom_name("L", i), atom_name("Linv", i), 0);
    }
    if (tag == "6d" || tag == "13m" || tag == "13r") {
        int i, j, k, xi, eta;
        if (tag == "6d") {
            i = ix[0], k = ix[1], xi = ix[2], eta = ix[3];
            j = i + xi;
        } else {
            i = ix[0], j = ix[1], k = ix[2], xi = ix[3], eta = ix[4];
        }
        const int kk = xi * (1 + (th(i) == 0 ? 1 : -1) * (i == k ? 1 : 0));
        const std::string inner = bracket_call("scomm", atom_a(eta, i), atom_a(-eta, j), 0);
        const std::string lhs = bracket_call("scomm", inner, atom_a(eta, k), kk);

        std::vector<std::pair<int, std::string>> terms; // (sign, unsigned term)
        if (j == k) {
            const std::string lfactor = atom_name(xi * eta == 1 ? "Linv" : "L", k);
            const int sign = eta_power_theta(eta, th(tag == "6d" ? k : j));
            terms.emplace_back(sign, lfactor + "*" + atom_a(eta, i));
        }
        if (tag != "6d") {
            const int eps_v = epsilon(j, k, i);
            if (eps_v != 0) {
                const std::string pair = bracket_call("scomm", atom_a(eta, k), atom_a(-eta, j), 0);
                if (tag == "13m") {
                    const int c = (th(k) == 1 ? -1 : 1) * eps_v;
                    terms.emplace_back(c, "(q - q^-1)*" + pair + "*" + atom_a(eta, i));
                } else {
                    const int c = ((th(k) * th(j)) % 2 == 1 ? -1 : 1) * eps_v;
                    terms.emplace_back(c, qpow_factor(xi) + "*(q - q^-1)*" + atom_a(eta, i) + "*" + pair);
                }
            }
        }
        if (terms.empty()) return lhs + " == 0";
        std::string rhs;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const auto& [sign, text] = terms[t];
            if (t == 0)
                rhs += (sign < 0 ? "-" : "") + text;
            else
                rhs += (sign < 0 ? " - " : " + ") + text;
        }
        return lhs + " == " + rhs;
    }
    if (tag == "6e1") {
        const int xi = ix[0];
        return bracket_call("scomm", atom_a(xi, 1), atom_a(xi, 2), 1) + " == 0";
    }
    if (tag == "6e2") {
        const int xi = ix[0];
        return bracket_call("scomm", atom_a(xi, 1), atom_a(xi, 1), 0) + " == 0";
    }
    if (tag == "8" || tag == "12b") {
        const int i = ix[0], j = ix[1], xi = ix[2];
        return bracket_call("scomm", atom_a(xi, i), atom_a(xi, j), 1) + " == 0";
    }
    if (tag == "11a") {
        const int i = ix[0], v = ix[1];
        const std::string lhs = v == 1
                                    ? atom_name("L", i) + "*" + atom_name("Linv", i)
                                    : atom_name("Linv", i) + "*" + atom_name("L", i);
        return lhs + " == 1";
    }
    if (tag == "11b") {
        const int i = ix[0], j = ix[1];
        return atom_name("L", i) + "*" + atom_name("L", j) + " == " + atom_name("L", j) + "*" +
               atom_name("L", i);
    }
    if (tag == "11c") {
        const int i = ix[0], j = ix[1], s = ix[2];
        const int c = -s * (1 + (th(i) == 0 ? 1 : -1) * (i == j ? 1 : 0));
        std::string rhs = atom_a(s, j) + "*" + atom_name("L", i);
        if (c != 0) rhs = qpow_factor(c) + "*" + rhs;
        return atom_name("L", i) + "*" + atom_a(s, j) + " == " + rhs;
    }
    return ""; // vacuum tags: column conditions have no identity rendering
}

} // namespace

std::vector<RelationReport> verify_defining(const GeneratorSet& gens) {
    std::vector<CatalogInstance> ids;
    enumerate_defining_ids(gens.params(), ids);
    return compute_all(ExactEngine(gens), ids);
}

std::vector<RelationReport> verify_defining(const NumericGeneratorSet& gens, double tol) {
    std::vector<CatalogInstance> ids;
    enumerate_defining_ids(gens.params(), ids);
    return compute_all(NumericEngine(gens, tol), ids);
}

std::vector<RelationReport> verify_derived(const GeneratorSet& gens) {
    std::vector<CatalogInstance> ids;
    enumerate_derived_ids(gens.params(), ids);
    return compute_all(ExactEngine(gens), ids);
}

std::vector<RelationReport> verify_derived(const NumericGeneratorSet& gens, double tol) {
    std::vector<CatalogInstance> ids;
    enumerate_derived_ids(gens.params(), ids);
    return compute_all(NumericEngine(gens, tol), ids);
}

std::vector<RelationReport> verify_vacuum(const GeneratorSet& gens) {
    std::vector<CatalogInstance> ids;
    enumerate_vacuum_ids(gens.params(), ids);
    return compute_all(ExactEngine(gens), ids);
}

std::vector<RelationReport> verify_vacuum(const NumericGeneratorSet& gens, double tol) {
    std::vector<CatalogInstance> ids;
    enumerate_vacuum_ids(gens.params(), ids);
    return compute_all(NumericEngine(gens, tol), ids);
}

std::vector<CatalogEntry> render_catalog(const FockParams& params) {
    params.validate();
    std::vector<CatalogInstance> ids;
    enumerate_defining_ids(params, ids);
    enumerate_derived_ids(params, ids);
    std::vector<CatalogEntry> out;
    for (const auto& inst : ids) {
        if (!inst.applicable) continue;
        std::string text = render_instance(params, inst.id);
        if (!text.empty()) out.push_back({inst.id, std::move(text)});
    }
    return out;
}

namespace {

nlohmann::ordered_json report_to_json(const RelationReport& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id.tag;
    j["indices"] = r.id.indices;
    j["status"] = to_string(r.status);
    if (!r.note.empty()) j["note"] = r.note;
    if (std::holds_alternative<SparseMatrix<LaurentPoly>>(r.residual)) {
        nlohmann::ordered_json entries = nlohmann::ordered_json::array();
        for (const auto& [k, v] : std::get<SparseMatrix<LaurentPoly>>(r.residual).entries())
            entries.push_back({k.first, k.second, v.str()});
        j["residual"] = {{"entries", std::move(entries)}};
    } else if (std::holds_alternative<SparseMatrix<double>>(r.residual)) {
        nlohmann::ordered_json entries = nlohmann::ordered_json::array();
        for (const auto& [k, v] : std::get<SparseMatrix<double>>(r.residual).entries())
            entries.push_back({k.first, k.second, v});
        j["residual"] = {{"entries", std::move(entries)}};
    }
    return j;
}

} // namespace

std::vector<std::string> standard_notes(const FockParams& params) {
    std::vector<std::string> notes;
    if (params.p == 0) notes.push_back("p = 0 admitted: one-dimensional module (vacuum only)");
    return notes;
}

std::string verify_report_json(const FockParams& params, const std::string& mode,
                               const std::vector<RelationReport>& reports,
                               const std::vector<ChevalleySection>& chevalley,
                               const std::vector<std::string>& notes) {
    nlohmann::ordered_json j;
    j["params"] = {{"n", params.n}, {"m", params.m}, {"p", params.p}};
    j["mode"] = mode;
    nlohmann::ordered_json rel = nlohmann::ordered_json::array();
    VerifySummary total = summarize(reports);
    for (const auto& r : reports) rel.push_back(report_to_json(r));
    j["relations"] = std::move(rel);
    if (!chevalley.empty()) {
        nlohmann::ordered_json sections = nlohmann::ordered_json::array();
        for (const auto& s : chevalley) {
            nlohmann::ordered_json sec;
            sec["q0"] = to_string(s.q0);
            sec["status"] = s.status;
            nlohmann::ordered_json rels = nlohmann::ordered_json::array();
            for (const auto& r : s.reports) rels.push_back(report_to_json(r));
            sec["relations"] = std::move(rels);
            sections.push_back(std::move(sec));
            const VerifySummary sub = summarize(s.reports);
            total.total += sub.total;
            total.failed += sub.failed;
            total.skipped += sub.skipped;
            if (s.status != "ok") ++total.failed;
        }
        j["chevalley"] = std::move(sections);
    }
    if (!notes.empty()) j["notes"] = notes;
    j["summary"] = {{"total", total.total}, {"failed", total.failed}, {"skipped", total.skipped}};
    return j.dump();
}

std::string verify_report_csv(const std::vector<RelationReport>& reports,
                              const std::vector<ChevalleySection>& chevalley) {
    std::ostringstream os;
    os << "id,indices,status,mode\n";
    auto line = [&os](const RelationReport& r) {
        os << r.id.tag << ",";
        for (std::size_t k = 0; k < r.id.indices.size(); ++k) {
            if (k) os << ' ';
            os << r.id.indices[k];
        }
        os << "," << to_string(r.status) << "," << r.mode << "\n";
    };
    for (const auto& r : reports) line(r);
    for (const auto& s : chevalley)
        for (const auto& r : s.reports) line(r);
    return os.str();
}

std::string verify_report_text(const FockParams& params, const std::string& mode,
                               const std::vector<RelationReport>& reports,
                               const std::vector<ChevalleySection>& chevalley,
                               const std::vector<std::string>& notes) {
    std::ostringstream os;
    os << "params n=" << params.n << " m=" << params.m << " p=" << params.p << " mode=" << mode
       << "\n";
    VerifySummary total = summarize(reports);
    for (const auto& r : reports) {
        os << "  [" << to_string(r.status) << "] " << r.id.str();
        if (!r.note.empty()) os << "  (" << r.note << ")";
        os << "\n";
    }
    for (const auto& s : chevalley) {
        os << "chevalley sample q0=" << to_string(s.q0) << " status=" << s.status << "\n";
        const VerifySummary sub = summarize(s.reports);
        total.total += sub.total;
        total.failed += sub.failed;
        total.skipped += sub.skipped;
        if (s.status != "ok") ++total.failed;
        for (const auto& r : s.reports) {
            os << "  [" << to_string(r.status) << "] " << r.id.str();
            if (!r.note.empty()) os << "  (" << r.note << ")";
            os << "\n";
        }
    }
    for (const auto& n : notes) os << "note: " << n << "\n";
    os << "summary: total=" << total.total << " failed=" << total.failed
       << " skipped=" << total.skipped << "\n";
    return os.str();
}

} // namespace qfock
