#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qfock/chevalley.hpp"
#include "qfock/exprlang.hpp"
#include "qfock/fock.hpp"
#include "qfock/operators.hpp"
#include "qfock/relations.hpp"

namespace qfock::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
    int n = 0;
    int m = 0;
    int p = 0;
    bool have_params = false;
    std::string mode = "exact";
    std::string q;
    double tol = 1e-10;
    std::string out = "json";
    bool chevalley = false;
    std::string catalog;
    std::string energies;
    std::vector<std::string> items; // matrix labels or the check identity
};

void add_param_flags(CLI::App* cmd, Options& o, bool required) {
    auto* n = cmd->add_option("--n", o.n, "number of even generator pairs");
    auto* m = cmd->add_option("--m", o.m, "number of odd generator pairs");
    auto* p = cmd->add_option("--p", o.p, "order of the statistics");
    if (required) {
        n->required();
        m->required();
        p->required();
    }
    cmd->callback([&o, n, m, p] {
        const int given = (n->count() > 0) + (m->count() > 0) + (p->count() > 0);
        if (given != 0 && given != 3)
            throw CLI::ValidationError("params", "--n, --m and --p must be given together");
        o.have_params = o.have_params || given == 3;
    });
}

void add_mode_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--mode", o.mode, "exact | numeric")->check(CLI::IsMember({"exact", "numeric"}));
    cmd->add_option("--q", o.q, "q sample(s): rational a/b or decimal, comma separated");
    cmd->add_option("--tol", o.tol, "numeric tolerance")->check(CLI::PositiveNumber);
}

void add_out_flag(CLI::App* cmd, Options& o) {
    cmd->add_option("--out", o.out, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
}

FockParams params_of(const Options& o) {
    FockParams params{o.n, o.m, o.p};
    params.validate();
    return params;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(parse_rational(item));
    }
    return out;
}

std::vector<Rational> q_samples(const Options& o, const std::string& fallback) {
    const std::string text = o.q.empty() ? fallback : o.q;
    std::vector<Rational> samples = parse_rational_list(text);
    if (samples.empty()) throw Error(ErrorCode::Usage, "no q samples given");
    return samples;
}

double numeric_q0(const Options& o) {
    if (o.q.empty()) throw Error(ErrorCode::Usage, "numeric mode needs --q");
    const std::vector<Rational> values = parse_rational_list(o.q);
    if (values.size() != 1) throw Error(ErrorCode::Usage, "numeric mode needs exactly one q value");
    return to_double(values[0]);
}

// ---------------------------------------------------------------------- basis
int run_basis(const Options& o, std::ostream& out) {
    const FockBasis basis(params_of(o));
    if (o.out == "json") {
        out << basis_to_json(basis) << "\n";
    } else if (o.out == "csv") {
        for (const auto& state : basis.states()) {
            for (std::size_t k = 0; k < state.size(); ++k) out << (k ? "," : "") << state[k];
            out << "\n";
        }
    } else {
        for (int k = 0; k < basis.dim(); ++k) {
            out << k << ": (";
            const auto& state = basis.state(k);
            for (std::size_t j = 0; j < state.size(); ++j) out << (j ? "," : "") << state[j];
            out << ")\n";
        }
    }
    return 0;
}

// ------------------------------------------------------------------------ dim
int run_dim(const Options& o, std::ostream& out) {
    out << dim_formula(params_of(o)) << "\n";
    return 0;
}

// --------------------------------------------------------------------- matrix
struct ParsedLabel {
    std::string name;
    int index = 0;
};

ParsedLabel parse_label(const std::string& label) {
    const auto us = label.rfind('_');
    if (us == std::string::npos || us + 1 >= label.size())
        throw Error(ErrorCode::Usage, "matrix label must look like a+_1, H_2, e_2; got '" + label + "'");
    ParsedLabel out;
    out.name = label.substr(0, us);
    try {
        out.index = std::stoi(label.substr(us + 1));
    } catch (const std::exception&) {
        throw Error(ErrorCode::Usage, "bad index in label '" + label + "'");
    }
    return out;
}

int run_matrix(const Options& o, std::ostream& out) {
    const FockParams params = params_of(o);
    if (o.items.empty()) throw Error(ErrorCode::Usage, "matrix needs at least one label");

    std::vector<std::string> payloads;
    if (o.mode == "numeric") {
        const NumericGeneratorSet gens(params, numeric_q0(o));
        for (const auto& label : o.items) {
            const ParsedLabel pl = parse_label(label);
            const NumericOperator* op = nullptr;
            if (pl.name == "a+") op = &gens.a_plus(pl.index);
            else if (pl.name == "a-") op = &gens.a_minus(pl.index);
            else if (pl.name == "H") op = &gens.h_diag(pl.index);
            else if (pl.name == "L") op = &gens.l_diag(pl.index);
            else if (pl.name == "Linv") op = &gens.l_inv(pl.index);
            else throw Error(ErrorCode::Usage, "unknown numeric label '" + label + "'");
            payloads.push_back(matrix_to_json(*op));
        }
    } else {
        ExactQ qctx;
        if (!o.q.empty()) {
            const auto samples = q_samples(o, "");
            if (samples.size() != 1) throw Error(ErrorCode::Usage, "matrix takes a single q sample");
            qctx = ExactQ(samples[0]);
        }
        if (o.chevalley && qctx.symbolic())
            throw Error(ErrorCode::Usage, "--chevalley needs a rational --q sample");
        const GeneratorSet gens(params, qctx);
        std::optional<ChevalleySet> chev;
        if (o.chevalley) chev = reconstruct_chevalley(gens);
        for (const auto& label : o.items) {
            const ParsedLabel pl = parse_label(label);
            const ExactOperator* op = nullptr;
            if (pl.name == "a+") op = &gens.a_plus(pl.index);
            else if (pl.name == "a-") op = &gens.a_minus(pl.index);
            else if (pl.name == "H") op = &gens.h_diag(pl.index);
            else if (pl.name == "L") op = &gens.l_diag(pl.index);
            else if (pl.name == "Linv") op = &gens.l_inv(pl.index);
            else if (chev && pl.name == "e") op = &chev->e_op(pl.index);
            else if (chev && pl.name == "f") op = &chev->f_op(pl.index);
            else if (chev && pl.name == "h") op = &chev->h_op(pl.index);
            else if (chev && pl.name == "k") op = &chev->k_op(pl.index);
            else if (chev && pl.name == "kinv") op = &chev->kinv_op(pl.index);
            else
                throw Error(ErrorCode::Usage, "unknown label '" + label + "'" +
                                                  (o.chevalley ? "" : " (chevalley labels need --chevalley)"));
            payloads.push_back(matrix_to_json(*op));
        }
    }

    if (o.out == "json") {
        if (payloads.size() == 1) {
            out << payloads[0] << "\n";
        } else {
            ordered_json arr = ordered_json::array();
            for (const auto& s : payloads) arr.push_back(ordered_json::parse(s));
            out << arr.dump() << "\n";
        }
    } else {
        for (const auto& s : payloads) {
            const ordered_json j = ordered_json::parse(s);
            if (o.out == "csv") {
                out << "# " << j["label"].get<std::string>() << "\n";
                for (const auto& e : j["entries"])
                    out << e[0] << "," << e[1] << ","
                        << (e[2].is_string() ? e[2].get<std::string>() : e[2].dump()) << "\n";
            } else {
                out << j["label"].get<std::string>() << " (grade "
                    << (j["grade"].is_null() ? "mixed" : j["grade"].dump()) << ", "
                    << j["mode"].get<std::string>()
                    << ")\n";
                for (const auto& e : j["entries"])
                    out << "  [" << e[0] << "," << e[1] << "] = "
                        << (e[2].is_string() ? e[2].get<std::string>() : e[2].dump()) << "\n";
            }
        }
    }
    return 0;
}

// --------------------------------------------------------------------- verify
int run_verify(const Options& o, std::ostream& out) {
    const FockParams params = params_of(o);
    std::vector<RelationReport> reports;
    std::vector<ChevalleySection> sections;
    std::string mode;

    if (o.mode == "numeric") {
        if (o.chevalley)
            throw Error(ErrorCode::Usage, "--chevalley requires exact mode with rational samples");
        const NumericGeneratorSet gens(params, numeric_q0(o));
        mode = "numeric";
        for (auto&& r : verify_defining(gens, o.tol)) reports.push_back(std::move(r));
        for (auto&& r : verify_derived(gens, o.tol)) reports.push_back(std::move(r));
        for (auto&& r : verify_vacuum(gens, o.tol)) reports.push_back(std::move(r));
    } else {
        const GeneratorSet gens(params);
        mode = "exact";
        for (auto&& r : verify_defining(gens)) reports.push_back(std::move(r));
        for (auto&& r : verify_derived(gens)) reports.push_back(std::move(r));
        for (auto&& r : verify_vacuum(gens)) reports.push_back(std::move(r));
        if (o.chevalley) {
            for (const Rational& q0 : q_samples(o, "2/3,3/5,7/4")) {
                ChevalleySection section;
                section.q0 = q0;
                try {
                    const GeneratorSet sampled = gens.evaluated_at(q0);
                    const ChevalleySet chev = reconstruct_chevalley(sampled);
                    section.status = "ok";
                    section.reports = verify_cartan_kac_serre(chev);
                    for (auto&& r : verify_cag_roundtrip(chev, sampled))
                        section.reports.push_back(std::move(r));
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::Underdetermined && e.code() != ErrorCode::Inconsistent)
                        throw;
                    section.status = to_string(e.code());
                }
                sections.push_back(std::move(section));
            }
        }
    }

    const std::vector<std::string> notes = standard_notes(params);
    if (o.out == "json")
        out << verify_report_json(params, mode, reports, sections, notes) << "\n";
    else if (o.out == "csv")
        out << verify_report_csv(reports, sections);
    else
        out << verify_report_text(params, mode, reports, sections, notes);

    VerifySummary total = summarize(reports);
    for (const auto& s : sections) {
        const VerifySummary sub = summarize(s.reports);
        total.failed += sub.failed;
        if (s.status != "ok") ++total.failed;
    }
    return total.failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------- check
int run_check(const Options& o, std::ostream& out) {
    std::optional<FockParams> params;
    std::vector<std::pair<int, std::string>> identities;

    if (!o.catalog.empty()) {
        std::ifstream in(o.catalog);
        if (!in) throw Error(ErrorCode::Usage, "cannot open catalog '" + o.catalog + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        const CatalogFile file = parse_catalog_file(buffer.str());
        params = file.params;
        identities = file.identities;
        if (!o.items.empty())
            throw Error(ErrorCode::Usage, "give either an identity or --catalog, not both");
    } else {
        if (o.items.size() != 1)
            throw Error(ErrorCode::Usage, "check needs exactly one identity string or --catalog");
        identities.emplace_back(0, o.items[0]);
    }

    if (o.have_params) {
        const FockParams flag_params = params_of(o);
        if (params && !(*params == flag_params))
            throw Error(ErrorCode::Usage, "catalog params header disagrees with --n/--m/--p");
        params = flag_params;
    }
    if (!params) throw Error(ErrorCode::Usage, "no params: pass --n/--m/--p or a catalog header");

    ordered_json checks = ordered_json::array();
    int failed = 0;
    std::string mode;

    auto record = [&](int line, const std::string& text, const RelationReport& r) {
        ordered_json j;
        if (line > 0) j["line"] = line;
        j["identity"] = text;
        j["status"] = to_string(r.status);
        checks.push_back(std::move(j));
        if (r.status != RelationStatus::Pass) ++failed;
    };

    if (o.mode == "numeric") {
        const NumericGeneratorSet gens(*params, numeric_q0(o));
        const NumericContext ctx{gens, o.tol};
        mode = ctx.mode();
        for (const auto& [line, text] : identities)
            record(line, text, check_identity(parse_identity(text), ctx));
    } else {
        ExactQ qctx;
        if (!o.q.empty() || o.chevalley) {
            const auto samples = q_samples(o, "2/3");
            if (samples.size() != 1) throw Error(ErrorCode::Usage, "check takes a single q sample");
            qctx = ExactQ(samples[0]);
        }
        const GeneratorSet gens(*params, qctx);
        std::optional<ChevalleySet> chev;
        if (o.chevalley) chev = reconstruct_chevalley(gens);
        const ExactContext ctx(gens, chev ? &*chev : nullptr);
        mode = ctx.mode();
        for (const auto& [line, text] : identities)
            record(line, text, check_identity(parse_identity(text), ctx));
    }

    if (o.out == "json") {
        ordered_json j;
        j["params"] = {{"n", params->n}, {"m", params->m}, {"p", params->p}};
        j["mode"] = mode;
        const int total = static_cast<int>(checks.size());
        j["checks"] = std::move(checks);
        j["summary"] = {{"total", total}, {"failed", failed}};
        out << j.dump() << "\n";
    } else if (o.out == "csv") {
        out << "line,identity,status\n";
        for (const auto& c : checks)
            out << (c.contains("line") ? c["line"].dump() : "") << ",\""
                << c["identity"].get<std::string>() << "\"," << c["status"].get<std::string>() << "\n";
    } else {
        for (const auto& c : checks)
            out << "[" << c["status"].get<std::string>() << "] " << c["identity"].get<std::string>()
                << "\n";
        out << "failed: " << failed << "\n";
    }
    return failed == 0 ? 0 : 1;
}

// ------------------------------------------------------------------ chevalley
int run_chevalley(const Options& o, std::ostream& out) {
    const FockParams params = params_of(o);
    ordered_json samples_json = ordered_json::array();
    int failed = 0;

    std::vector<ChevalleySection> sections;
    for (const Rational& q0 : q_samples(o, "2/3,3/5,7/4")) {
        ordered_json sj;
        sj["q0"] = to_string(q0);
        ChevalleySection section;
        section.q0 = q0;
        try {
            const GeneratorSet gens(params, ExactQ(q0));
            const ChevalleySet chev = reconstruct_chevalley(gens);
            section.status = "ok";
            section.reports = verify_cartan_kac_serre(chev);
            for (auto&& r : verify_cag_roundtrip(chev, gens)) section.reports.push_back(std::move(r));
            sj["status"] = "ok";
            ordered_json mats = ordered_json::array();
            for (int i = 1; i <= params.generator_count(); ++i) {
                for (const ExactOperator* op :
                     {&chev.h_op(i), &chev.e_op(i), &chev.f_op(i), &chev.k_op(i), &chev.kinv_op(i)})
                    mats.push_back(ordered_json::parse(matrix_to_json(*op)));
            }
            sj["matrices"] = std::move(mats);
            ordered_json rels = ordered_json::array();
            for (const auto& r : section.reports) {
                ordered_json rj;
                rj["id"] = r.id.tag;
                rj["indices"] = r.id.indices;
                rj["status"] = to_string(r.status);
                if (!r.note.empty()) rj["note"] = r.note;
                rels.push_back(std::move(rj));
                if (r.status == RelationStatus::Fail) ++failed;
            }
            sj["relations"] = std::move(rels);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Underdetermined && e.code() != ErrorCode::Inconsistent) throw;
            section.status = to_string(e.code());
            sj["status"] = section.status;
            sj["error"] = e.what();
            ++failed;
        }
        sections.push_back(std::move(section));
        samples_json.push_back(std::move(sj));
    }

    if (o.out == "json") {
        ordered_json j;
        j["params"] = {{"n", params.n}, {"m", params.m}, {"p", params.p}};
        j["samples"] = std::move(samples_json);
        j["summary"] = {{"failed", failed}};
        out << j.dump() << "\n";
    } else if (o.out == "csv") {
        out << verify_report_csv({}, sections);
    } else {
        out << verify_report_text(params, "exact", {}, sections, standard_notes(params));
    }
    return failed == 0 ? 0 : 1;
}

// ------------------------------------------------------------------- spectrum
int run_spectrum(const Options& o, std::ostream& out) {
    const FockParams params = params_of(o);
    if (o.energies.empty()) throw Error(ErrorCode::Usage, "spectrum needs --energies \"e1,e2,...\"");
    const std::vector<Rational> energies = parse_rational_list(o.energies);

    const FreeHamiltonian fh = build_free_hamiltonian(params, energies);
    const LadderCheck ladder = ladder_check(fh);
    const FockBasis basis(params);

    if (o.out == "json") {
        ordered_json j;
        j["params"] = {{"n", params.n}, {"m", params.m}, {"p", params.p}};
        ordered_json es = ordered_json::array();
        for (const auto& e : energies) es.push_back(to_string(e));
        j["energies"] = std::move(es);
        ordered_json spec = ordered_json::array();
        for (int k = 0; k < basis.dim(); ++k) {
            ordered_json row;
            row["state"] = basis.state(k);
            row["energy"] = to_string(fh.spectrum[k]);
            spec.push_back(std::move(row));
        }
        j["spectrum"] = std::move(spec);
        j["ladder"] = {{"status", ladder.pass ? "pass" : "fail"}};
        if (!ladder.pass) j["ladder"]["detail"] = ladder.detail;
        j["sum_of_H_form_matches"] = fh.sum_of_h_form_matches;
        out << j.dump() << "\n";
    } else if (o.out == "csv") {
        out << "state,energy\n";
        for (int k = 0; k < basis.dim(); ++k) {
            out << "\"(";
            const auto& state = basis.state(k);
            for (std::size_t j = 0; j < state.size(); ++j) out << (j ? "," : "") << state[j];
            out << ")\"," << to_string(fh.spectrum[k]) << "\n";
        }
    } else {
        for (int k = 0; k < basis.dim(); ++k) {
            out << k << ": E = " << to_string(fh.spectrum[k]) << "\n";
        }
        out << "ladder: " << (ladder.pass ? "pass" : "fail") << "\n";
        out << "sum-of-H diagonal form matches: " << (fh.sum_of_h_form_matches ? "yes" : "no") << "\n";
    }
    return ladder.pass ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact verifier for the creation/annihilation-generator presentation of "
                 "U_q[sl(n+1|m)] on order-p Fock modules"};
    app.require_subcommand(1);
    Options o;

    auto* basis = app.add_subcommand("basis", "enumerate the Fock basis");
    add_param_flags(basis, o, true);
    add_out_flag(basis, o);

    auto* dim = app.add_subcommand("dim", "dimension of the Fock module");
    add_param_flags(dim, o, true);
    add_out_flag(dim, o);

    auto* matrix = app.add_subcommand("matrix", "export generator matrices");
    add_param_flags(matrix, o, true);
    add_mode_flags(matrix, o);
    add_out_flag(matrix, o);
    matrix->add_flag("--chevalley", o.chevalley, "resolve chevalley labels (needs rational --q)");
    matrix->add_option("labels", o.items, "labels like a+_1 a-_2 H_1 L_1 Linv_1 e_2 f_2 h_2 k_2");

    auto* verify = app.add_subcommand("verify", "verify the relation catalog");
    add_param_flags(verify, o, true);
    add_mode_flags(verify, o);
    add_out_flag(verify, o);
    verify->add_flag("--chevalley", o.chevalley, "also reconstruct and verify the chevalley layer");

    auto* check = app.add_subcommand("check", "check identities written in the expression language");
    add_param_flags(check, o, false);
    add_mode_flags(check, o);
    add_out_flag(check, o);
    check->add_flag("--chevalley", o.chevalley, "resolve E/F/Hch/K atoms (rational --q sample)");
    check->add_option("--catalog", o.catalog, "catalog file: '#' comments, 'params n m p' header");
    check->add_option("identity", o.items, "identity text, e.g. \"comm(H(1), H(2)) == 0\"");

    auto* chevalley = app.add_subcommand("chevalley", "reconstruct chevalley generators per sample");
    add_param_flags(chevalley, o, true);
    add_mode_flags(chevalley, o);
    add_out_flag(chevalley, o);

    auto* spectrum = app.add_subcommand("spectrum", "free-Hamiltonian spectrum and ladder check");
    add_param_flags(spectrum, o, true);
    add_out_flag(spectrum, o);
    spectrum->add_option("--energies", o.energies, "orbital energies e1,e2,... (rationals)");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (basis->parsed()) return run_basis(o, out);
        if (dim->parsed()) return run_dim(o, out);
        if (matrix->parsed()) return run_matrix(o, out);
        if (verify->parsed()) return run_verify(o, out);
        if (check->parsed()) return run_check(o, out);
        if (chevalley->parsed()) return run_chevalley(o, out);
        if (spectrum->parsed()) return run_spectrum(o, out);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

} // namespace qfock::cli
