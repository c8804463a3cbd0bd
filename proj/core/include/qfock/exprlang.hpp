#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qfock/chevalley.hpp"
#include "qfock/operators.hpp"
#include "qfock/relations.hpp"

namespace qfock {

enum class AtomKind { Ap, Am, H, L, Linv, E, F, Hch, K, Kinv };

const char* atom_kind_name(AtomKind kind);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/**
 * Expression node. Scalars are Laurent polynomials; the parser folds any
 * pure-scalar arithmetic into a single Scalar node, so a printed canonical
 * form reparses to a structurally identical tree.
 */
struct Expr {
    enum class Kind { Atom, Scalar, Add, Sub, Mul, Pow, Comm, Acomm, Scomm, QDivDiff };

    Kind kind;
    AtomKind atom = AtomKind::Ap; // Atom
    int index = 0;                // Atom
    LaurentPoly scalar;           // Scalar
    ExprPtr lhs, rhs;
    int exponent = 0; // Pow power, or bracket deformation exponent k (x = q^k)

    static ExprPtr make_atom(AtomKind kind, int index);
    static ExprPtr make_scalar(LaurentPoly value);
    static ExprPtr make_add(ExprPtr a, ExprPtr b);
    static ExprPtr make_sub(ExprPtr a, ExprPtr b);
    static ExprPtr make_mul(ExprPtr a, ExprPtr b);
    static ExprPtr make_pow(ExprPtr base, int exponent);
    static ExprPtr make_bracket(Kind kind, ExprPtr a, ExprPtr b, int deform_exponent);
    static ExprPtr make_qdivdiff(ExprPtr a, ExprPtr b);
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Canonical text; parse(print_expr(x)) is structurally equal to x.
std::string print_expr(const ExprPtr& expr);

struct Identity {
    ExprPtr lhs;
    ExprPtr rhs;
};

std::string print_identity(const Identity& id);

/// Single-pass recursive-descent parse of an expression (no "==" allowed).
ExprPtr parse_expr_text(const std::string& text);
/// Parses "expr == expr".
Identity parse_identity(const std::string& text);
/// Either of the above, by presence of "==".
std::variant<ExprPtr, Identity> parse_input(const std::string& text);

/// Exact evaluation context: generator atoms always resolve; Chevalley
/// atoms resolve only when a ChevalleySet is attached, which requires the
/// generator set to be pinned at the same sample.
struct ExactContext {
    const GeneratorSet& gens;
    const ChevalleySet* chevalley = nullptr;

    ExactContext(const GeneratorSet& g, const ChevalleySet* chev = nullptr);
    ExactOperator atom(AtomKind kind, int index) const;
    std::string mode() const;
};

struct NumericContext {
    const NumericGeneratorSet& gens;
    double tol = 1e-10;

    NumericOperator atom(AtomKind kind, int index) const;
    std::string mode() const;
};

ExactOperator eval_expr(const ExprPtr& expr, const ExactContext& ctx);
NumericOperator eval_expr(const ExprPtr& expr, const NumericContext& ctx);

RelationReport check_identity(const Identity& identity, const ExactContext& ctx,
                              RelationId id = {"check", {}});
RelationReport check_identity(const Identity& identity, const NumericContext& ctx,
                              RelationId id = {"check", {}});

/// Catalog file: '#' comments, optional "params n m p" header, one
/// identity per line.
struct CatalogFile {
    std::optional<FockParams> params;
    std::vector<std::pair<int, std::string>> identities; // (line number, text)
};

CatalogFile parse_catalog_file(const std::string& content);

} // namespace qfock
