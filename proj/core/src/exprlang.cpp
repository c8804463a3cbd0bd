#include "qfock/exprlang.hpp"

#include <cctype>
#include <sstream>

namespace qfock {

const char* atom_kind_name(AtomKind kind) {
    switch (kind) {
    case AtomKind::Ap: return "Ap";
    case AtomKind::Am: return "Am";
    case AtomKind::H: return "H";
    case AtomKind::L: return "L";
    case AtomKind::Linv: return "Linv";
    case AtomKind::E: return "E";
    case AtomKind::F: return "F";
    case AtomKind::Hch: return "Hch";
    case AtomKind::K: return "K";
    case AtomKind::Kinv: return "Kinv";
    }
    return "?";
}

ExprPtr Expr::make_atom(AtomKind kind, int index) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Atom;
    e->atom = kind;
    e->index = index;
    return e;
}

ExprPtr Expr::make_scalar(LaurentPoly value) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Scalar;
    e->scalar = std::move(value);
    return e;
}

namespace {
bool is_scalar(const ExprPtr& e) { return e->kind == Expr::Kind::Scalar; }
} // namespace

ExprPtr Expr::make_add(ExprPtr a, ExprPtr b) {
    if (is_scalar(a) && is_scalar(b)) return make_scalar(a->scalar + b->scalar);
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Add;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr Expr::make_sub(ExprPtr a, ExprPtr b) {
    if (is_scalar(a) && is_scalar(b)) return make_scalar(a->scalar - b->scalar);
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Sub;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr Expr::make_mul(ExprPtr a, ExprPtr b) {
    if (is_scalar(a) && is_scalar(b)) return make_scalar(a->scalar * b->scalar);
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Mul;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr Expr::make_pow(ExprPtr base, int exponent) {
    if (is_scalar(base)) return make_scalar(base->scalar.pow(exponent));
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Pow;
    e->lhs = std::move(base);
    e->exponent = exponent;
    return e;
}

ExprPtr Expr::make_bracket(Kind kind, ExprPtr a, ExprPtr b, int deform_exponent) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    e->exponent = deform_exponent;
    return e;
}

ExprPtr Expr::make_qdivdiff(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::QDivDiff;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Expr::Kind::Atom: return a->atom == b->atom && a->index == b->index;
    case Expr::Kind::Scalar: return a->scalar == b->scalar;
    case Expr::Kind::Pow: return a->exponent == b->exponent && expr_equal(a->lhs, b->lhs);
    case Expr::Kind::Comm:
    case Expr::Kind::Acomm:
    case Expr::Kind::Scomm:
        if (a->exponent != b->exponent) return false;
        [[fallthrough]];
    default: return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    }
}

// ---------------------------------------------------------------------------
// printing
// ---------------------------------------------------------------------------

namespace {

// a scalar's canonical string reparses at the precedence level of its
// outermost operator: "4*q^3" is a product, "q^2 - 2" or "-5" is additive
int scalar_precedence(const LaurentPoly& s) {
    if (s.is_zero()) return 4;
    if (s.terms().size() > 1) return 1;
    const auto& [e, c] = *s.terms().begin();
    if (c < 0) return 1;
    if (e == 0 || c == 1) return 4;
    return 2;
}

// precedence: additive 1, multiplicative 2, power 3, primary 4
int node_precedence(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Pow: return 3;
    case Expr::Kind::Scalar: return scalar_precedence(e.scalar);
    default: return 4;
    }
}

bool is_unary_minus(const Expr& e) {
    return e.kind == Expr::Kind::Sub && e.lhs->kind == Expr::Kind::Scalar && e.lhs->scalar.is_zero();
}

void print_node(const Expr& e, int min_prec, std::string& out);

void print_bracket(const Expr& e, const char* name, std::string& out) {
    out += name;
    out += "(";
    print_node(*e.lhs, 1, out);
    out += ", ";
    print_node(*e.rhs, 1, out);
    if (e.exponent != 0 && e.kind != Expr::Kind::QDivDiff) {
        out += ", ";
        out += std::to_string(e.exponent);
    }
    out += ")";
}

void print_node(const Expr& e, int min_prec, std::string& out) {
    const int prec = node_precedence(e);
    const bool unary = is_unary_minus(e);
    const bool parens = prec < min_prec;
    if (parens) out += "(";
    switch (e.kind) {
    case Expr::Kind::Atom:
        out += atom_kind_name(e.atom);
        out += "(" + std::to_string(e.index) + ")";
        break;
    case Expr::Kind::Scalar: out += e.scalar.str(); break;
    case Expr::Kind::Add:
        print_node(*e.lhs, 1, out);
        out += " + ";
        print_node(*e.rhs, 2, out);
        break;
    case Expr::Kind::Sub:
        if (unary) {
            out += "-";
            print_node(*e.rhs, 2, out);
        } else {
            print_node(*e.lhs, 1, out);
            out += " - ";
            print_node(*e.rhs, 2, out);
        }
        break;
    case Expr::Kind::Mul:
        print_node(*e.lhs, 2, out);
        out += "*";
        print_node(*e.rhs, 3, out);
        break;
    case Expr::Kind::Pow:
        print_node(*e.lhs, 4, out);
        out += "^" + std::to_string(e.exponent);
        break;
    case Expr::Kind::Comm: print_bracket(e, "comm", out); break;
    case Expr::Kind::Acomm: print_bracket(e, "acomm", out); break;
    case Expr::Kind::Scomm: print_bracket(e, "scomm", out); break;
    case Expr::Kind::QDivDiff: print_bracket(e, "qdivdiff", out); break;
    }
    if (parens) out += ")";
}

} // namespace

std::string print_expr(const ExprPtr& expr) {
    if (!expr) throw Error(ErrorCode::Domain, "null expression");
    std::string out;
    print_node(*expr, 1, out);
    return out;
}

std::string print_identity(const Identity& id) {
    return print_expr(id.lhs) + " == " + print_expr(id.rhs);
}

// ---------------------------------------------------------------------------
// lexing / parsing
// ---------------------------------------------------------------------------

namespace {

enum class Tok { Ident, Int, LParen, RParen, Comma, Plus, Minus, Star, Caret, Slash, Eq, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

struct Lexer {
    const std::string& src;
    std::size_t pos = 0;

    explicit Lexer(const std::string& s) : src(s) {}

    Token next() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos >= src.size()) return {Tok::End, "", pos};
        const std::size_t start = pos;
        const char c = src[pos];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos < src.size() && std::isalnum(static_cast<unsigned char>(src[pos]))) ++pos;
            return {Tok::Ident, src.substr(start, pos - start), start};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            return {Tok::Int, src.substr(start, pos - start), start};
        }
        ++pos;
        switch (c) {
        case '(': return {Tok::LParen, "(", start};
        case ')': return {Tok::RParen, ")", start};
        case ',': return {Tok::Comma, ",", start};
        case '+': return {Tok::Plus, "+", start};
        case '-': return {Tok::Minus, "-", start};
        case '*': return {Tok::Star, "*", start};
        case '^': return {Tok::Caret, "^", start};
        case '/': return {Tok::Slash, "/", start};
        case '=':
            if (pos < src.size() && src[pos] == '=') {
                ++pos;
                return {Tok::Eq, "==", start};
            }
            throw ParseError(start, "'=='", "'='");
        default: throw ParseError(start, "a token", std::string("'") + c + "'");
        }
    }
};

std::optional<AtomKind> lookup_atom(const std::string& name) {
    if (name == "Ap") return AtomKind::Ap;
    if (name == "Am") return AtomKind::Am;
    if (name == "H") return AtomKind::H;
    if (name == "L") return AtomKind::L;
    if (name == "Linv") return AtomKind::Linv;
    if (name == "E") return AtomKind::E;
    if (name == "F") return AtomKind::F;
    if (name == "Hch") return AtomKind::Hch;
    if (name == "K") return AtomKind::K;
    if (name == "Kinv") return AtomKind::Kinv;
    return std::nullopt;
}

std::optional<Expr::Kind> lookup_call(const std::string& name) {
    if (name == "comm") return Expr::Kind::Comm;
    if (name == "acomm") return Expr::Kind::Acomm;
    if (name == "scomm") return Expr::Kind::Scomm;
    if (name == "qdivdiff") return Expr::Kind::QDivDiff;
    return std::nullopt;
}

struct Parser {
    Lexer lexer;
    Token tok;

    explicit Parser(const std::string& src) : lexer(src) { advance(); }

    void advance() { tok = lexer.next(); }

    [[noreturn]] void fail(const std::string& expected) {
        throw ParseError(tok.pos, expected, tok.kind == Tok::End ? "end of input" : "'" + tok.text + "'");
    }

    void expect(Tok kind, const char* what) {
        if (tok.kind != kind) fail(what);
        advance();
    }

    long long integer_text_value(const Token& t) {
        try {
            return std::stoll(t.text);
        } catch (const std::exception&) {
            throw ParseError(t.pos, "an integer in range", "'" + t.text + "'");
        }
    }

    int signed_int() {
        bool neg = false;
        if (tok.kind == Tok::Minus) {
            neg = true;
            advance();
        } else if (tok.kind == Tok::Plus) {
            advance();
        }
        if (tok.kind != Tok::Int) fail("an integer");
        long long v = integer_text_value(tok);
        advance();
        if (neg) v = -v;
        if (v > 1000000 || v < -1000000) throw Error(ErrorCode::Domain, "exponent out of range");
        return static_cast<int>(v);
    }

    ExprPtr parse_expr() {
        bool negate = false;
        if (tok.kind == Tok::Minus) {
            negate = true;
            advance();
        }
        ExprPtr acc = parse_term();
        if (negate) acc = Expr::make_sub(Expr::make_scalar(LaurentPoly()), std::move(acc));
        while (tok.kind == Tok::Plus || tok.kind == Tok::Minus) {
            const bool minus = tok.kind == Tok::Minus;
            advance();
            ExprPtr rhs = parse_term();
            acc = minus ? Expr::make_sub(std::move(acc), std::move(rhs))
                        : Expr::make_add(std::move(acc), std::move(rhs));
        }
        return acc;
    }

    ExprPtr parse_term() {
        ExprPtr acc = parse_factor();
        while (tok.kind == Tok::Star) {
            advance();
            acc = Expr::make_mul(std::move(acc), parse_factor());
        }
        return acc;
    }

    ExprPtr parse_factor() {
        ExprPtr acc = parse_primary();
        while (tok.kind == Tok::Caret) {
            advance();
            acc = Expr::make_pow(std::move(acc), signed_int());
        }
        return acc;
    }

    ExprPtr parse_primary() {
        if (tok.kind == Tok::Int) {
            const Token first = tok;
            advance();
            Integer num(first.text);
            if (tok.kind == Tok::Slash) {
                advance();
                if (tok.kind != Tok::Int) fail("a denominator");
                Integer den(tok.text);
                if (den == 0) throw Error(ErrorCode::Domain, "zero denominator");
                advance();
                return Expr::make_scalar(LaurentPoly(Rational(num, den)));
            }
            return Expr::make_scalar(LaurentPoly(Rational(num)));
        }
        if (tok.kind == Tok::LParen) {
            advance();
            ExprPtr inner = parse_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (tok.kind == Tok::Ident) {
            const Token name = tok;
            advance();
            if (name.text == "q") return Expr::make_scalar(LaurentPoly::q(1));
            if (auto atom = lookup_atom(name.text)) {
                expect(Tok::LParen, "'('");
                if (tok.kind != Tok::Int) fail("a generator index");
                const long long index = integer_text_value(tok);
                if (index < 1)
                    throw Error(ErrorCode::IndexRange, "generator index must be >= 1, got " + tok.text);
                advance();
                expect(Tok::RParen, "')'");
                return Expr::make_atom(*atom, static_cast<int>(index));
            }
            if (auto call = lookup_call(name.text)) {
                expect(Tok::LParen, "'('");
                ExprPtr a = parse_expr();
                if (tok.kind == Tok::RParen)
                    throw Error(ErrorCode::Arity, name.text + " needs two operands");
                expect(Tok::Comma, "','");
                ExprPtr b = parse_expr();
                int deform = 0;
                if (tok.kind == Tok::Comma) {
                    if (*call == Expr::Kind::QDivDiff)
                        throw Error(ErrorCode::Arity, "qdivdiff takes exactly two operands");
                    advance();
                    deform = signed_int();
                }
                if (tok.kind == Tok::Comma)
                    throw Error(ErrorCode::Arity, name.text + " takes at most three arguments");
                expect(Tok::RParen, "')'");
                if (*call == Expr::Kind::QDivDiff)
                    return Expr::make_qdivdiff(std::move(a), std::move(b));
                return Expr::make_bracket(*call, std::move(a), std::move(b), deform);
            }
            throw ParseError(name.pos, "an atom, bracket call, 'q' or literal", "'" + name.text + "'");
        }
        fail("an expression");
    }
};

} // namespace

ExprPtr parse_expr_text(const std::string& text) {
    Parser p(text);
    ExprPtr e = p.parse_expr();
    if (p.tok.kind != Tok::End) p.fail("end of input");
    return e;
}

Identity parse_identity(const std::string& text) {
    Parser p(text);
    ExprPtr lhs = p.parse_expr();
    if (p.tok.kind != Tok::Eq) p.fail("'=='");
    p.advance();
    ExprPtr rhs = p.parse_expr();
    if (p.tok.kind != Tok::End) p.fail("end of input");
    return {std::move(lhs), std::move(rhs)};
}

std::variant<ExprPtr, Identity> parse_input(const std::string& text) {
    if (text.find("==") != std::string::npos) return parse_identity(text);
    return parse_expr_text(text);
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

ExactContext::ExactContext(const GeneratorSet& g, const ChevalleySet* chev)
    : gens(g), chevalley(chev) {
    if (chevalley) {
        if (gens.qctx().symbolic() || *gens.qctx().sample() != chevalley->q0)
            throw Error(ErrorCode::Domain,
                        "chevalley context requires the generator set pinned at the same sample");
    }
}

std::string ExactContext::mode() const {
    return gens.qctx().symbolic() ? "exact" : "exact@" + to_string(*gens.qctx().sample());
}

ExactOperator ExactContext::atom(AtomKind kind, int index) const {
    switch (kind) {
    case AtomKind::Ap: return gens.a_plus(index);
    case AtomKind::Am: return gens.a_minus(index);
    case AtomKind::H: return gens.h_diag(index);
    case AtomKind::L: return gens.l_diag(index);
    case AtomKind::Linv: return gens.l_inv(index);
    default: break;
    }
    if (!chevalley)
        throw Error(ErrorCode::UnresolvedAtom,
                    std::string(atom_kind_name(kind)) + "(" + std::to_string(index) +
                        ") needs a chevalley context");
    switch (kind) {
    case AtomKind::E: return chevalley->e_op(index);
    case AtomKind::F: return chevalley->f_op(index);
    case AtomKind::Hch: return chevalley->h_op(index);
    case AtomKind::K: return chevalley->k_op(index);
    case AtomKind::Kinv: return chevalley->kinv_op(index);
    default: break;
    }
    throw Error(ErrorCode::UnresolvedAtom, atom_kind_name(kind));
}

std::string NumericContext::mode() const {
    std::ostringstream os;
    os << "numeric@" << gens.q0();
    return os.str();
}

NumericOperator NumericContext::atom(AtomKind kind, int index) const {
    switch (kind) {
    case AtomKind::Ap: return gens.a_plus(index);
    case AtomKind::Am: return gens.a_minus(index);
    case AtomKind::H: return gens.h_diag(index);
    case AtomKind::L: return gens.l_diag(index);
    case AtomKind::Linv: return gens.l_inv(index);
    default:
        throw Error(ErrorCode::UnresolvedAtom, std::string(atom_kind_name(kind)) +
                                                   " is not available in numeric mode");
    }
}

namespace {

template <typename Op, typename Ctx, typename Q>
Op eval_node(const Expr& e, const Ctx& ctx, const Q& qctx, const BasisPtr& basis) {
    using Scalar = decltype(qctx.q_power(0));
    switch (e.kind) {
    case Expr::Kind::Atom: return ctx.atom(e.atom, e.index);
    case Expr::Kind::Scalar: {
        const Scalar value = qctx.realize(e.scalar);
        Op out{basis, SparseMatrix<Scalar>::identity(basis->dim()).scaled(value), 0, ""};
        return out;
    }
    case Expr::Kind::Add:
        return operator_sum(eval_node<Op>(*e.lhs, ctx, qctx, basis),
                            eval_node<Op>(*e.rhs, ctx, qctx, basis));
    case Expr::Kind::Sub:
        return operator_difference(eval_node<Op>(*e.lhs, ctx, qctx, basis),
                                   eval_node<Op>(*e.rhs, ctx, qctx, basis));
    case Expr::Kind::Mul:
        return operator_product(eval_node<Op>(*e.lhs, ctx, qctx, basis),
                                eval_node<Op>(*e.rhs, ctx, qctx, basis));
    case Expr::Kind::Pow: {
        if (e.exponent < 0)
            throw Error(ErrorCode::Domain, "negative power of an operator expression");
        Op base = eval_node<Op>(*e.lhs, ctx, qctx, basis);
        Op acc{basis, SparseMatrix<Scalar>::identity(basis->dim()), 0, ""};
        for (int k = 0; k < e.exponent; ++k) acc = operator_product(acc, base);
        return acc;
    }
    case Expr::Kind::Comm:
        return bracket(eval_node<Op>(*e.lhs, ctx, qctx, basis),
                       eval_node<Op>(*e.rhs, ctx, qctx, basis), BracketKind::Commutator, e.exponent,
                       qctx);
    case Expr::Kind::Acomm:
        return bracket(eval_node<Op>(*e.lhs, ctx, qctx, basis),
                       eval_node<Op>(*e.rhs, ctx, qctx, basis), BracketKind::Anticommutator,
                       e.exponent, qctx);
    case Expr::Kind::Scomm:
        return bracket(eval_node<Op>(*e.lhs, ctx, qctx, basis),
                       eval_node<Op>(*e.rhs, ctx, qctx, basis), BracketKind::Supercommutator,
                       e.exponent, qctx);
    case Expr::Kind::QDivDiff: {
        Op diff = operator_difference(eval_node<Op>(*e.lhs, ctx, qctx, basis),
                                      eval_node<Op>(*e.rhs, ctx, qctx, basis));
        diff.mat = qctx.div_qdiff(diff.mat);
        return diff;
    }
    }
    throw Error(ErrorCode::Domain, "unreachable expression kind");
}

} // namespace

ExactOperator eval_expr(const ExprPtr& expr, const ExactContext& ctx) {
    if (!expr) throw Error(ErrorCode::Domain, "null expression");
    return eval_node<ExactOperator>(*expr, ctx, ctx.gens.qctx(), ctx.gens.basis());
}

NumericOperator eval_expr(const ExprPtr& expr, const NumericContext& ctx) {
    if (!expr) throw Error(ErrorCode::Domain, "null expression");
    return eval_node<NumericOperator>(*expr, ctx, ctx.gens.qctx(), ctx.gens.basis());
}

RelationReport check_identity(const Identity& identity, const ExactContext& ctx, RelationId id) {
    const ExactOperator lhs = eval_expr(identity.lhs, ctx);
    const ExactOperator rhs = eval_expr(identity.rhs, ctx);
    auto diff = lhs.mat - rhs.mat;
    RelationReport r{std::move(id), RelationStatus::Pass, ctx.mode(), std::monostate{}, ""};
    if (!diff.empty()) {
        r.status = RelationStatus::Fail;
        r.residual = ResidualMatrix{std::move(diff)};
    }
    return r;
}

RelationReport check_identity(const Identity& identity, const NumericContext& ctx, RelationId id) {
    const NumericOperator lhs = eval_expr(identity.lhs, ctx);
    const NumericOperator rhs = eval_expr(identity.rhs, ctx);
    auto diff = lhs.mat - rhs.mat;
    RelationReport r{std::move(id), RelationStatus::Pass, ctx.mode(), std::monostate{}, ""};
    if (max_abs(diff) > ctx.tol) {
        r.status = RelationStatus::Fail;
        r.residual = ResidualMatrix{std::move(diff)};
    }
    return r;
}

CatalogFile parse_catalog_file(const std::string& content) {
    CatalogFile out;
    std::istringstream is(content);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string trimmed;
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        trimmed = line.substr(begin, end - begin + 1);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        if (trimmed.rfind("params", 0) == 0) {
            std::istringstream ps(trimmed.substr(6));
            FockParams params;
            if (!(ps >> params.n >> params.m >> params.p))
                throw ParseError(0, "'params n m p' on line " + std::to_string(lineno), trimmed);
            std::string rest;
            if (ps >> rest)
                throw ParseError(0, "'params n m p' on line " + std::to_string(lineno), rest);
            if (out.params)
                throw ParseError(0, "a single params header", "a second one on line " + std::to_string(lineno));
            params.validate();
            out.params = params;
            continue;
        }
        out.identities.emplace_back(lineno, trimmed);
    }
    return out;
}

} // namespace qfock
