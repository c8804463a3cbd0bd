#include "qfock/chevalley.hpp"

#include <numeric>

namespace qfock {

int cartan_alpha(int i, int j, const FockParams& params) {
    const int count = params.generator_count();
    if (i < 1 || i > count || j < 1 || j > count)
        throw Error(ErrorCode::IndexRange, "cartan index (" + std::to_string(i) + "," + std::to_string(j) + ")");
    const int t = theta(i - 1, params) + theta(i, params);
    const int sign = t % 2 == 0 ? 1 : -1;
    int value = 0;
    if (i == j) value += 1 + sign;
    if (i == j - 1) value -= sign;
    if (i - 1 == j) value -= 1;
    return value;
}

int ChevalleySet::grade(int i) const {
    return (theta(i - 1, params) + theta(i, params)) % 2;
}

const ExactOperator& ChevalleySet::at(const std::vector<ExactOperator>& v, int i) const {
    if (i < 1 || i > static_cast<int>(v.size()))
        throw Error(ErrorCode::IndexRange, "chevalley index " + std::to_string(i));
    return v[i - 1];
}

LinearSolution solve_linear_system(std::vector<std::vector<Rational>> lhs, std::vector<Rational> rhs) {
    const int rows = static_cast<int>(lhs.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(lhs[0].size());
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        for (int r = row; r < rows; ++r)
            if (lhs[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(lhs[pivot], lhs[row]);
        std::swap(rhs[pivot], rhs[row]);
        const Rational inv = Rational(1) / lhs[row][col];
        for (int c = col; c < cols; ++c) lhs[row][c] *= inv;
        rhs[row] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row || lhs[r][col] == 0) continue;
            const Rational factor = lhs[r][col];
            for (int c = col; c < cols; ++c) lhs[r][c] -= factor * lhs[row][c];
            rhs[r] -= factor * rhs[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int r = row; r < rows; ++r)
        if (rhs[r] != 0) return {LinearSolution::Kind::Inconsistent, {}, 0};

    const int rank = static_cast<int>(pivot_col.size());
    if (rank < cols) return {LinearSolution::Kind::Underdetermined, {}, cols - rank};

    std::vector<Rational> values(cols, Rational(0));
    for (int r = 0; r < rank; ++r) values[pivot_col[r]] = rhs[r];
    return {LinearSolution::Kind::Unique, std::move(values), 0};
}

namespace {

/// Integer diagonal of h_j at the sample basis (triangular inversion of
/// the Cartan sums; h_1 is the first diagonal itself).
int h_value(int j, const FockBasis& basis, int state) {
    if (j == 1) return basis.h_eigenvalue(1, state);
    const int sign = theta(j - 1, basis.params()) == 0 ? 1 : -1;
    return sign * (basis.h_eigenvalue(j, state) - basis.h_eigenvalue(j - 1, state));
}

SparseMatrix<Rational> rational_matrix(const ExactOperator& op) {
    return op.mat.map([](const LaurentPoly& v) {
        if (!v.is_constant())
            throw Error(ErrorCode::Domain, "expected a sample-pinned (constant) matrix");
        return v.constant_value();
    });
}

ExactOperator from_rational(const SparseMatrix<Rational>& m, const BasisPtr& basis, int grade,
                            std::string label) {
    SparseMatrix<LaurentPoly> out(m.rows(), m.cols());
    for (const auto& [k, v] : m.entries()) out.set(k.first, k.second, LaurentPoly(v));
    return {basis, std::move(out), grade, std::move(label)};
}

/// Solves M X - lambda * X * M = B (order = RootSide::Left) or
/// X M - lambda * M X = B (RootSide::Right) for X restricted to the
/// entries allowed by the weight mask.
enum class RootSide { Left, Right };

SparseMatrix<Rational> solve_root_vector(const SparseMatrix<Rational>& m, const Rational& lambda,
                                         const SparseMatrix<Rational>& b, const FockBasis& basis,
                                         const std::vector<int>& target_weight, RootSide side,
                                         const std::string& what) {
    const int d = basis.dim();
    const int count = basis.params().generator_count();
    std::vector<std::pair<int, int>> unknowns;
    std::map<std::pair<int, int>, int> unknown_index;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            bool keep = true;
            for (int j = 1; j <= count && keep; ++j)
                keep = h_value(j, basis, r) - h_value(j, basis, c) == target_weight[j - 1];
            if (keep) {
                unknown_index[{r, c}] = static_cast<int>(unknowns.size());
                unknowns.emplace_back(r, c);
            }
        }

    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            std::vector<Rational> row(unknowns.size(), Rational(0));
            bool nonzero = false;
            for (std::size_t u = 0; u < unknowns.size(); ++u) {
                const auto& [a, bb] = unknowns[u];
                Rational coeff(0);
                if (side == RootSide::Left) {
                    if (bb == c) coeff += m.get(r, a);
                    if (a == r) coeff -= lambda * m.get(bb, c);
                } else {
                    if (a == r) coeff += m.get(bb, c);
                    if (bb == c) coeff -= lambda * m.get(r, a);
                }
                if (coeff != 0) {
                    row[u] = coeff;
                    nonzero = true;
                }
            }
            const Rational target = b.get(r, c);
            if (nonzero || target != 0) {
                rows.push_back(std::move(row));
                rhs.push_back(target);
            }
        }

    LinearSolution sol = solve_linear_system(std::move(rows), std::move(rhs));
    if (sol.kind == LinearSolution::Kind::Inconsistent)
        throw Error(ErrorCode::Inconsistent, what + ": the ladder equation has no solution");
    if (sol.kind == LinearSolution::Kind::Underdetermined)
        throw Error(ErrorCode::Underdetermined,
                    what + ": solution space has dimension " + std::to_string(sol.nullity));

    SparseMatrix<Rational> x(d, d);
    for (std::size_t u = 0; u < unknowns.size(); ++u)
        x.set(unknowns[u].first, unknowns[u].second, sol.values[u]);
    return x;
}

} // namespace

ChevalleySet reconstruct_chevalley(const GeneratorSet& gens) {
    if (gens.qctx().symbolic())
        throw Error(ErrorCode::Domain, "chevalley reconstruction needs a sample-pinned generator set");
    const Rational q0 = *gens.qctx().sample();
    const FockParams& params = gens.params();
    const FockBasis& basis = *gens.basis();
    const int count = params.generator_count();
    const int d = basis.dim();

    ChevalleySet chev;
    chev.params = params;
    chev.q0 = q0;

    for (int i = 1; i <= count; ++i) {
        SparseMatrix<LaurentPoly> hm(d, d), km(d, d), kim(d, d);
        for (int s = 0; s < d; ++s) {
            const int value = h_value(i, basis, s);
            hm.set(s, s, LaurentPoly(value));
            km.set(s, s, LaurentPoly(rat_pow(q0, value)));
            kim.set(s, s, LaurentPoly(rat_pow(q0, -value)));
        }
        chev.h.push_back({gens.basis(), std::move(hm), 0, "h_" + std::to_string(i)});
        chev.k.push_back({gens.basis(), std::move(km), 0, "k_" + std::to_string(i)});
        chev.kinv.push_back({gens.basis(), std::move(kim), 0, "kinv_" + std::to_string(i)});
    }

    ExactOperator e1 = gens.a_minus(1);
    e1.label = "e_1";
    ExactOperator f1 = gens.a_plus(1);
    f1.label = "f_1";
    chev.e.push_back(std::move(e1));
    chev.f.push_back(std::move(f1));

    for (int i = 2; i <= count; ++i) {
        // q_{i-1} = q^{1-2 theta_{i-1}}
        const int kexp = 1 - 2 * theta(i - 1, params);
        const Rational qprev = rat_pow(q0, kexp);
        const Rational qprev_inv = rat_pow(q0, -kexp);

        std::vector<int> weight_e(count), weight_f(count);
        for (int j = 1; j <= count; ++j) {
            weight_e[j - 1] = cartan_alpha(j, i, params);
            weight_f[j - 1] = -cartan_alpha(j, i, params);
        }

        const SparseMatrix<Rational> am_prev = rational_matrix(gens.a_minus(i - 1));
        const SparseMatrix<Rational> am_i = rational_matrix(gens.a_minus(i));
        SparseMatrix<Rational> ei = solve_root_vector(am_prev, qprev_inv, am_i, basis, weight_e,
                                                      RootSide::Left, "e_" + std::to_string(i));

        const SparseMatrix<Rational> ap_prev = rational_matrix(gens.a_plus(i - 1));
        const SparseMatrix<Rational> ap_i = rational_matrix(gens.a_plus(i));
        SparseMatrix<Rational> fi = solve_root_vector(ap_prev, qprev, ap_i, basis, weight_f,
                                                      RootSide::Right, "f_" + std::to_string(i));

        const int grade = (theta(i - 1, params) + theta(i, params)) % 2;
        chev.e.push_back(from_rational(ei, gens.basis(), grade, "e_" + std::to_string(i)));
        chev.f.push_back(from_rational(fi, gens.basis(), grade, "f_" + std::to_string(i)));
    }
    return chev;
}

namespace {

struct ChevInstance {
    RelationId id;
    bool applicable = true;
    std::string note;

    ChevInstance(RelationId i, bool a = true, std::string n = {})
        : id(std::move(i)), applicable(a), note(std::move(n)) {}
};

void enumerate_chevalley_ids(const FockParams& p, std::vector<ChevInstance>& out,
                             bool with_roundtrip) {
    const int N = p.generator_count();
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) out.push_back({{"1a", {i, j}}});
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            out.push_back({{"1b_e", {i, j}}});
            out.push_back({{"1b_f", {i, j}}});
        }
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) out.push_back({{"1c", {i, j}}});

    for (const char* fam : {"e", "f"}) {
        const std::string suffix = std::string("_") + fam;
        bool any = false;
        for (int i = 1; i <= N; ++i)
            for (int j = i + 2; j <= N; ++j) {
                out.push_back({{"2a" + suffix, {i, j}}});
                any = true;
            }
        if (!any) out.push_back({{"2a" + suffix, {}}, false, "no index pairs with |i-j| > 1"});
        if (p.m >= 1)
            out.push_back({{"2a_sq" + suffix, {p.n + 1}}});
        else
            out.push_back({{"2a_sq" + suffix, {}}, false, "no odd generator (m = 0)"});
        any = false;
        for (int i = 1; i <= N; ++i) {
            if (i == p.n + 1) continue;
            for (int dlt : {+1, -1}) {
                const int j = i + dlt;
                if (j < 1 || j > N) continue;
                for (int v : {1, 2}) out.push_back({{"2b" + suffix, {i, j, v}}});
                any = true;
            }
        }
        if (!any) out.push_back({{"2b" + suffix, {}}, false, "no valid neighbor pairs with i != n+1"});
        if (p.n >= 1 && p.m >= 2) {
            for (int v : {1, 2}) out.push_back({{"2c" + suffix, {v}}});
        } else {
            out.push_back({{"2c" + suffix, {}}, false, "requires n >= 1 and m >= 2"});
        }
    }
    if (with_roundtrip) {
        for (int i = 1; i <= N; ++i) {
            out.push_back({{"4m", {i}}});
            out.push_back({{"4p", {i}}});
            out.push_back({{"4H", {i}}});
        }
    }
}

struct ChevEngine {
    const ChevalleySet& chev;
    const GeneratorSet* gens; // only for round trips
    ExactQ qc;
    std::string mode;

    ChevEngine(const ChevalleySet& c, const GeneratorSet* g)
        : chev(c), gens(g), qc(c.q0), mode("exact@" + qfock::to_string(c.q0)) {}

    int N() const { return chev.params.generator_count(); }
    ExactOperator zero() const {
        const int d = chev.h.front().mat.rows();
        return {chev.h.front().basis, SparseMatrix<LaurentPoly>(d, d), 0, "0"};
    }

    RelationReport report(RelationId id, const ExactOperator& lhs, const ExactOperator& rhs) const {
        auto diff = lhs.mat - rhs.mat;
        RelationReport r{std::move(id), RelationStatus::Pass, mode, std::monostate{}, ""};
        if (!diff.empty()) {
            r.status = RelationStatus::Fail;
            r.residual = ResidualMatrix{std::move(diff)};
        }
        return r;
    }

    RelationReport compute(const ChevInstance& inst) const {
        if (!inst.applicable)
            return {inst.id, RelationStatus::Skipped, mode, std::monostate{}, inst.note};
        const auto& ix = inst.id.indices;
        const std::string& tag = inst.id.tag;
        const auto& C = chev;

        if (tag == "1a")
            return report(inst.id, bracket(C.h_op(ix[0]), C.h_op(ix[1]), BracketKind::Commutator, 0, qc),
                          zero());
        if (tag == "1b_e" || tag == "1b_f") {
            const int i = ix[0], j = ix[1];
            const bool is_e = tag == "1b_e";
            const ExactOperator& x = is_e ? C.e_op(j) : C.f_op(j);
            const int alpha = cartan_alpha(i, j, C.params) * (is_e ? 1 : -1);
            return report(inst.id, bracket(C.h_op(i), x, BracketKind::Commutator, 0, qc),
                          operator_scaled(x, LaurentPoly(alpha)));
        }
        if (tag == "1c") {
            const int i = ix[0], j = ix[1];
            const ExactOperator lhs = bracket(C.e_op(i), C.f_op(j), BracketKind::Supercommutator, 0, qc);
            if (i != j) return report(inst.id, lhs, zero());
            ExactOperator rhs = C.k_op(i);
            rhs.mat = qc.div_qdiff(rhs.mat - C.kinv_op(i).mat);
            rhs.grade = 0;
            return report(inst.id, lhs, rhs);
        }

        const bool is_e_family = tag.size() >= 2 && tag.back() == 'e';
        auto gen = [&](int i) -> const ExactOperator& { return is_e_family ? C.e_op(i) : C.f_op(i); };

        if (tag == "2a_e" || tag == "2a_f")
            return report(inst.id, bracket(gen(ix[0]), gen(ix[1]), BracketKind::Commutator, 0, qc),
                          zero());
        if (tag == "2a_sq_e" || tag == "2a_sq_f")
            return report(inst.id, operator_product(gen(ix[0]), gen(ix[0])), zero());
        if (tag == "2b_e" || tag == "2b_f") {
            const int i = ix[0], j = ix[1], v = ix[2];
            const int inner_k = v == 1 ? -1 : 1;
            const ExactOperator inner = bracket(gen(i), gen(j), BracketKind::Commutator, inner_k, qc);
            const ExactOperator lhs = bracket(gen(i), inner, BracketKind::Commutator, -inner_k, qc);
            return report(inst.id, lhs, zero());
        }
        if (tag == "2c_e" || tag == "2c_f") {
            const int v = ix[0];
            const int n = C.params.n;
            const int inner_k = v == 1 ? 1 : -1;
            ExactOperator inner = bracket(gen(n), gen(n + 1), BracketKind::Commutator, inner_k, qc);
            inner = bracket(inner, gen(n + 2), BracketKind::Commutator, -inner_k, qc);
            const ExactOperator lhs = bracket(gen(n + 1), inner, BracketKind::Anticommutator, 0, qc);
            return report(inst.id, lhs, zero());
        }

        if (tag == "4m" || tag == "4p" || tag == "4H") {
            const int i = ix[0];
            if (!gens) throw Error(ErrorCode::Domain, "round trip needs the generator set");
            if (tag == "4H") {
                ExactOperator acc = C.h_op(1);
                for (int t = 2; t <= i; ++t) {
                    const int sign = theta(t - 1, C.params) == 0 ? 1 : -1;
                    acc = operator_sum(acc, operator_scaled(C.h_op(t), LaurentPoly(sign)));
                }
                return report(inst.id, acc, gens->h_diag(i));
            }
            if (tag == "4m") {
                ExactOperator acc = C.e_op(1);
                for (int t = 2; t <= i; ++t) {
                    const int kbar = 2 * theta(t - 1, C.params) - 1;
                    acc = bracket(acc, C.e_op(t), BracketKind::Commutator, kbar, qc);
                }
                return report(inst.id, acc, gens->a_minus(i));
            }
            ExactOperator acc = C.f_op(1);
            for (int t = 2; t <= i; ++t) {
                const int kq = 1 - 2 * theta(t - 1, C.params);
                acc = bracket(C.f_op(t), acc, BracketKind::Commutator, kq, qc);
            }
            return report(inst.id, acc, gens->a_plus(i));
        }
        throw Error(ErrorCode::Domain, "unknown chevalley tag '" + tag + "'");
    }
};

std::string render_chev_instance(const FockParams& p, const RelationId& id) {
    const auto& ix = id.indices;
    const std::string& tag = id.tag;
    auto name = [](const char* fn, int i) { return std::string(fn) + "(" + std::to_string(i) + ")"; };
    auto call = [](const char* fn, const std::string& x, const std::string& y, int k) {
        std::string out = std::string(fn) + "(" + x + ", " + y;
        if (k != 0) out += ", " + std::to_string(k);
        return out + ")";
    };
    const bool is_e_family = tag.size() >= 2 && tag.back() == 'e' && tag != "1c";
    const char* gen = is_e_family ? "E" : "F";

    if (tag == "1a") return call("comm", name("Hch", ix[0]), name("Hch", ix[1]), 0) + " == 0";
    if (tag == "1b_e" || tag == "1b_f") {
        const int i = ix[0], j = ix[1];
        const bool is_e = tag == "1b_e";
        const char* g = is_e ? "E" : "F";
        const int alpha = cartan_alpha(i, j, p) * (is_e ? 1 : -1);
        const std::string lhs = call("comm", name("Hch", i), name(g, j), 0);
        if (alpha == 0) return lhs + " == 0";
        std::string term = name(g, j);
        if (alpha == -1)
            term = "-" + term;
        else if (alpha != 1)
            term = std::to_string(alpha) + "*" + term;
        return lhs + " == " + term;
    }
    if (tag == "1c") {
        const int i = ix[0], j = ix[1];
        const std::string lhs = call("scomm", name("E", i), name("F", j), 0);
        if (i != j) return lhs + " == 0";
        return lhs + " == " + call("qdivdiff", name("K", i), name("Kinv", i), 0);
    }
    if (tag == "2a_e" || tag == "2a_f")
        return call("comm", name(gen, ix[0]), name(gen, ix[1]), 0) + " == 0";
    if (tag == "2a_sq_e" || tag == "2a_sq_f") return name(gen, ix[0]) + "^2 == 0";
    if (tag == "2b_e" || tag == "2b_f") {
        const int i = ix[0], j = ix[1], v = ix[2];
        const int inner_k = v == 1 ? -1 : 1;
        return call("comm", name(gen, i), call("comm", name(gen, i), name(gen, j), inner_k), -inner_k) +
               " == 0";
    }
    if (tag == "2c_e" || tag == "2c_f") {
        const int v = ix[0];
        const int inner_k = v == 1 ? 1 : -1;
        const std::string inner =
            call("comm", call("comm", name(gen, p.n), name(gen, p.n + 1), inner_k), name(gen, p.n + 2),
                 -inner_k);
        return call("acomm", name(gen, p.n + 1), inner, 0) + " == 0";
    }
    if (tag == "4m") {
        const int i = ix[0];
        std::string acc = name("E", 1);
        for (int t = 2; t <= i; ++t) acc = call("comm", acc, name("E", t), 2 * theta(t - 1, p) - 1);
        return acc + " == " + name("Am", i);
    }
    if (tag == "4p") {
        const int i = ix[0];
        std::string acc = name("F", 1);
        for (int t = 2; t <= i; ++t) acc = call("comm", name("F", t), acc, 1 - 2 * theta(t - 1, p));
        return acc + " == " + name("Ap", i);
    }
    if (tag == "4H") {
        const int i = ix[0];
        std::string out = name("Hch", 1);
        for (int t = 2; t <= i; ++t)
            out += (theta(t - 1, p) == 0 ? " + " : " - ") + name("Hch", t);
        return out + " == " + name("H", i);
    }
    return "";
}

} // namespace

std::vector<RelationReport> verify_cartan_kac_serre(const ChevalleySet& chev) {
    std::vector<ChevInstance> ids;
    enumerate_chevalley_ids(chev.params, ids, false);
    ChevEngine engine(chev, nullptr);
    std::vector<RelationReport> out;
    out.reserve(ids.size());
    for (const auto& inst : ids) out.push_back(engine.compute(inst));
    return out;
}

std::vector<RelationReport> verify_cag_roundtrip(const ChevalleySet& chev, const GeneratorSet& gens) {
    std::vector<ChevInstance> ids;
    const int N = chev.params.generator_count();
    for (int i = 1; i <= N; ++i) {
        ids.push_back({{"4m", {i}}});
        ids.push_back({{"4p", {i}}});
        ids.push_back({{"4H", {i}}});
    }
    ChevEngine engine(chev, &gens);
    std::vector<RelationReport> out;
    out.reserve(ids.size());
    for (const auto& inst : ids) out.push_back(engine.compute(inst));
    return out;
}

std::vector<CatalogEntry> render_chevalley_catalog(const FockParams& params) {
    params.validate();
    std::vector<ChevInstance> ids;
    enumerate_chevalley_ids(params, ids, true);
    std::vector<CatalogEntry> out;
    for (const auto& inst : ids) {
        if (!inst.applicable) continue;
        std::string text = render_chev_instance(params, inst.id);
        if (!text.empty()) out.push_back({inst.id, std::move(text)});
    }
    return out;
}

} // namespace qfock
