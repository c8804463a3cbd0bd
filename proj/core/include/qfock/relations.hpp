#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qfock/operators.hpp"

namespace qfock {

/// Ordering symbol on index triples: 1 if j > k > i, -1 if j < k < i,
/// 0 otherwise. Controls the correction term of the triple-bracket family.
int epsilon(int j, int k, int i);

/// A positive root is a pair (i, j) with 0 <= i < j <= n+m.
using Root = std::pair<int, int>;

/// Normal order on positive roots: (i,j) < (k,l) iff j < l, or j = l and
/// i < k. MALFORMED_ROOT unless both pairs are valid roots for params.
bool root_order_less(const Root& r1, const Root& r2, const FockParams& params);

/// All positive roots in normal order.
std::vector<Root> positive_roots(const FockParams& params);

struct RelationId {
    std::string tag;
    std::vector<int> indices;

    std::string str() const;
    friend bool operator==(const RelationId&, const RelationId&) = default;
};

enum class RelationStatus { Pass, Fail, Skipped };

const char* to_string(RelationStatus status);

using ResidualMatrix = std::variant<std::monostate, SparseMatrix<LaurentPoly>, SparseMatrix<double>>;

struct RelationReport {
    RelationId id;
    RelationStatus status = RelationStatus::Pass;
    std::string mode; // "exact", "exact@q0", "numeric@q0"
    ResidualMatrix residual;
    std::string note;

    bool passed() const { return status == RelationStatus::Pass; }
};

struct VerifySummary {
    int total = 0;
    int failed = 0;
    int skipped = 0;
};

VerifySummary summarize(const std::vector<RelationReport>& reports);

/// The defining catalog on exact matrices: commuting Cartan diagonals,
/// weight brackets, the q-divided-difference identity, the triple-bracket
/// family with adjacent middle index, and the degree-lowering pair
/// identities (tags 6a, 6b, 6c, 6d, 6e1, 6e2).
std::vector<RelationReport> verify_defining(const GeneratorSet& gens);
std::vector<RelationReport> verify_defining(const NumericGeneratorSet& gens, double tol);

/// Derived catalog: q-supercommuting same-sign pairs, the L exchange laws,
/// and both printed forms of the general triple-bracket identity with the
/// epsilon correction (tags 8, 11a, 11b, 11c, 12a, 12b, 13m, 13r).
std::vector<RelationReport> verify_derived(const GeneratorSet& gens);
std::vector<RelationReport> verify_derived(const NumericGeneratorSet& gens, double tol);

/// Vacuum conditions (tags 7a, 7b, 7c): annihilators kill the vacuum, the
/// Cartan diagonals take value p there, and mixed supercommutators with
/// i != j kill it too.
std::vector<RelationReport> verify_vacuum(const GeneratorSet& gens);
std::vector<RelationReport> verify_vacuum(const NumericGeneratorSet& gens, double tol);

/// One identity of the catalog rendered as expression-language text.
struct CatalogEntry {
    RelationId id;
    std::string identity;
};

/// Every operator-identity relation of the defining + derived catalog as
/// DSL text (the vacuum family is a column condition and has no rendering).
std::vector<CatalogEntry> render_catalog(const FockParams& params);

/// JSON for a list of reports:
/// {"params":.., "mode":.., "relations":[..], "summary":{"total":..,"failed":..,"skipped":..}}
/// plus optional "notes" and nested "chevalley" sections.
struct ChevalleySection {
    Rational q0;
    std::string status; // "ok", or the error name when reconstruction failed
    std::vector<RelationReport> reports;
};

std::string verify_report_json(const FockParams& params, const std::string& mode,
                               const std::vector<RelationReport>& reports,
                               const std::vector<ChevalleySection>& chevalley = {},
                               const std::vector<std::string>& notes = {});

std::string verify_report_csv(const std::vector<RelationReport>& reports,
                              const std::vector<ChevalleySection>& chevalley = {});

std::string verify_report_text(const FockParams& params, const std::string& mode,
                               const std::vector<RelationReport>& reports,
                               const std::vector<ChevalleySection>& chevalley = {},
                               const std::vector<std::string>& notes = {});

/// Standard note list for a parameter set (currently: the p = 0 flag).
std::vector<std::string> standard_notes(const FockParams& params);

} // namespace qfock
