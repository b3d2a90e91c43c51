#pragma once

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wittlab/covers.hpp"
#include "wittlab/detector.hpp"
#include "wittlab/milnor.hpp"

namespace wittlab::cli {

using json = nlohmann::ordered_json;

enum ExitCode { ok = 0, bad_input = 1, unsupported = 2, internal = 3 };

struct Outcome {
    json result;
    json witness;
    std::string method;
};

namespace detail {

inline json strings(const FieldDescriptor& F, const std::vector<FieldElement>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(F, x));
    return a;
}

inline json certificate(const Certificate& c) {
    json j;
    j["method"] = c.method;
    j["form"] = c.form;
    j["detail"] = c.detail;
    if (!c.uniformizer.empty()) j["uniformizer"] = c.uniformizer;
    if (c.place) j["place"] = c.place->to_string();
    if (!c.reduced.empty()) {
        json r = json::array();
        for (const auto& x : c.reduced) r.push_back(x.str());
        j["reduced"] = r;
    }
    if (!c.children.empty()) {
        j["children"] = json::array();
        for (const auto& ch : c.children) j["children"].push_back(certificate(ch));
    }
    return j;
}

inline std::string decision_method(const FieldDescriptor& F) {
    if (F.is_tower()) return "springer";
    switch (F.base->kind()) {
        case BaseKind::SymbolicAC:
            return "algebraically-closed";
        case BaseKind::Rationals:
            return "hasse-minkowski";
        default:
            return "finite-field";
    }
}

inline json isotropy_witness(const FieldDescriptor& F, const IsotropyVerdict& v) {
    if (v.witness) return strings(F, *v.witness);
    if (v.certificate) return certificate(*v.certificate);
    return nullptr;
}

inline std::vector<std::vector<std::int64_t>> parse_rows(const std::string& text) {
    std::vector<std::vector<std::int64_t>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<std::int64_t> r;
        for (const auto& x : expr::split_list(row)) {
            try {
                std::size_t used = 0;
                r.push_back(std::stoll(x, &used));
                if (used != x.size()) throw std::invalid_argument(x);
            } catch (const std::logic_error&) {
                throw input_error("bad integer \"" + x + "\" in character list");
            }
        }
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw input_error("empty character list");
    return rows;
}

inline json verdict_json(const Verdict& v) {
    json d = json::object();
    for (const auto& [k, x] : v.details) d[k] = x;
    json w;
    w["summary"] = v.witness;
    w["details"] = d;
    if (v.trace) w["trace"] = certificate(*v.trace);
    return w;
}

/// Splits one batch line into arguments; single and double quotes group words.
inline std::vector<std::string> split_command_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool have = false;
    char quote = 0;
    for (char c : line) {
        if (quote) {
            if (c == quote)
                quote = 0;
            else
                cur += c;
        } else if (c == '"' || c == '\'') {
            quote = c;
            have = true;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            if (have) out.push_back(cur);
            cur.clear();
            have = false;
        } else {
            cur += c;
            have = true;
        }
    }
    if (quote) throw input_error("unterminated quote in batch line");
    if (have) out.push_back(cur);
    return out;
}

}  // namespace detail

/// Parses and executes one query; the JSON document is returned, never printed.
inline std::pair<int, json> evaluate(const std::vector<std::string>& args) {
    CLI::App app{"wittlab: exact decision procedures for forms, p-bases, symbols and covers"};
    app.require_subcommand(1);

    std::string field, form, value, generators, candidates, candidate, entries, elements, characters, branch, translate, coords;
    std::string char_mode = "odd", search_height = "10000";
    std::uint64_t search_budget = 2'000'000;
    int prime = 0, m = 0;
    std::int64_t ell = 2, n = 0, g = -1, model_p = 0, model_u = 0, tag_d = -1;
    std::size_t cap = 4096, bar_cap = 729;

    auto add_search = [&](CLI::App* s) {
        s->add_option("--search-height", search_height, "coordinate bound of the witness search over Q (default 10000)");
        s->add_option("--search-budget", search_budget, "candidate evaluations of the witness search over Q (default 2000000)");
    };
    auto* iso = app.add_subcommand("isotropy", "decide whether a diagonal quadratic form has a nontrivial zero");
    iso->add_option("--field", field)->required();
    iso->add_option("--form", form, "comma-separated coefficients")->required();
    add_search(iso);
    auto* rep = app.add_subcommand("represents", "decide whether a form takes the value a");
    rep->add_option("--field", field)->required();
    rep->add_option("--form", form)->required();
    rep->add_option("--value", value)->required();
    add_search(rep);
    auto* uni = app.add_subcommand("universal", "decide whether a form represents every square class");
    uni->add_option("--field", field)->required();
    uni->add_option("--form", form)->required();
    add_search(uni);
    auto* pf = app.add_subcommand("pfister", "expand <<a1,...,an>> and decide hyperbolicity");
    pf->add_option("--field", field)->required();
    pf->add_option("--generators", generators)->required();
    add_search(pf);
    auto* pform = app.add_subcommand("pform", "the degree-p diagonal form of a system t1,...,tr");
    pform->add_option("--field", field)->required();
    pform->add_option("--candidates", candidates)->required();
    pform->add_option("--p", prime)->required();
    auto* pb = app.add_subcommand("pbasis", "p-independence and p-bases in F_q(x1,...,xd)");
    pb->add_option("--field", field)->required();
    pb->add_option("--candidate", candidate);
    pb->add_option("--coords", coords, "print the coordinates of f over K^p instead");
    pb->add_option("--cap", cap, "bound on p^(r+d) (default 4096)");
    auto* sym = app.add_subcommand("symbol", "mod 2 Milnor symbol: residue and vanishing");
    sym->add_option("--field", field)->required();
    sym->add_option("--entries", entries)->required();
    auto* cup = app.add_subcommand("cup", "cup products of degree-one classes mod ell");
    cup->add_option("--ell", ell);
    cup->add_option("--m", m, "rank of the group (Z/ell)^m");
    cup->add_option("--characters", characters, "rows separated by ';', entries by ','");
    cup->add_option("--field", field, "tower for Kummer classes of --elements");
    cup->add_option("--elements", elements);
    cup->add_option("--bar-cap", bar_cap, "bound on ell^(m(n-1)) (default 729)");
    auto* vcd = app.add_subcommand("vcd", "detect vcd_ell of a Laurent tower over F_q");
    vcd->add_option("--field", field)->required();
    vcd->add_option("--ell", ell);
    vcd->add_option("--tag-d", tag_d, "treat the tower as a d-dimensional arithmetic model");
    auto* gen = app.add_subcommand("genus", "genus of the fiber product of n elementary covers");
    gen->add_option("--n", n);
    gen->add_option("--char", char_mode, "odd or two");
    gen->add_option("--branch", branch, "explicit branch points; uses the conductor-discriminant formula");
    auto* bnd = app.add_subcommand("bound", "the bound c = g + 2 and the largest admissible cover size");
    bnd->add_option("--g", g)->required();
    bnd->add_option("--char", char_mode);
    auto* td = app.add_subcommand("tdeg", "transcendence degree of k(x1,...,xd) with a certificate");
    td->add_option("--field", field)->required();
    td->add_option("--translate", translate, "constants a_i for x_i - a_i");
    td->add_option("--model-p", model_p, "residue characteristic of the arithmetic model (default 5)");
    td->add_option("--model-u", model_u, "residue nonsquare of the arithmetic model (default least nonsquare)");
    auto* cert = app.add_subcommand("certify", "decide whether a candidate is a transcendence basis");
    cert->add_option("--field", field)->required();
    cert->add_option("--candidate", candidate)->required();
    cert->add_option("--model-p", model_p);
    cert->add_option("--model-u", model_u);
    auto* link = app.add_subcommand("linkage", "three-way check: represents -a, hyperbolic, symbol vanishes");
    link->add_option("--field", field)->required();
    link->add_option("--generators", generators)->required();
    link->add_option("--value", value)->required();

    json query;
    query["command"] = args.empty() ? "" : args[0];
    query["args"] = json::object();
    auto error = [&](int code, const std::string& kind, const std::string& msg) {
        json j;
        j["query"] = query;
        j["error"] = {{"kind", kind}, {"message", msg}};
        return std::pair<int, json>{code, j};
    };

    if (!args.empty() && !args[0].starts_with("-") && app.get_subcommand_no_throw(args[0]) == nullptr)
        return error(bad_input, "input", "unknown subcommand \"" + args[0] + "\"");
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        std::string text = app.help();
        for (const auto* s : app.get_subcommands()) text = s->help();
        return {ok, json{{"help", text}}};
    } catch (const CLI::ParseError& e) {
        return error(bad_input, "input", e.what());
    }
    CLI::App* sub = app.get_subcommands().front();
    query["command"] = sub->get_name();
    for (const auto* opt : sub->get_options())
        if (opt->count() > 0) query["args"][opt->get_name(false, true)] = opt->results().back();

    QuadOptions qopt;
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        qopt.search_height = BigInt(search_height);
        qopt.search_budget = search_budget;
        const std::string cmd = sub->get_name();
        if (cmd == "isotropy") {
            auto F = make_field(field);
            auto q = parse_form(F, form);
            auto v = is_isotropic(q, qopt);
            out.result["isotropic"] = v.isotropic;
            out.witness = detail::isotropy_witness(F, v);
            out.method = detail::decision_method(F);
        } else if (cmd == "represents") {
            auto F = make_field(field);
            auto q = parse_form(F, form);
            out.result["represents"] = represents(q, parse_element(F, value), qopt);
            out.method = detail::decision_method(F);
        } else if (cmd == "universal") {
            auto F = make_field(field);
            out.result["universal"] = is_universal(parse_form(F, form), qopt);
            json reps = json::array();
            for (const auto& r : square_class_reps(F)) reps.push_back(to_string(F, r));
            out.witness = {{"square_classes", reps}};
            out.method = detail::decision_method(F);
        } else if (cmd == "pfister") {
            auto F = make_field(field);
            PfisterSpec spec(F, parse_list(F, generators));
            auto q = pfister(spec);
            out.result["form"] = q.coefficient_strings();
            out.result["hyperbolic"] = is_hyperbolic_pfister(spec, qopt);
            out.witness = detail::isotropy_witness(F, is_isotropic(q, qopt));
            out.method = detail::decision_method(F);
        } else if (cmd == "pform") {
            auto F = make_field(field);
            auto q = char_p_form(PFormSpec(F, parse_list(F, candidates), prime));
            out.result["degree"] = q.degree;
            out.result["form"] = q.coefficient_strings();
            out.method = "expansion";
        } else if (cmd == "pbasis") {
            auto F = make_field(field);
            if (!coords.empty()) {
                auto c = coords_over_pth_powers(F, parse_element(F, coords));
                out.result["coordinates"] = detail::strings(F, c.r);
                out.method = "pth-power-grouping";
            } else {
                if (candidate.empty()) throw input_error("pbasis needs --candidate or --coords");
                auto B = parse_list(F, candidate);
                PBasisOptions po{cap};
                bool basis = B.size() == F.function_vars.size();
                auto r = basis ? is_p_basis(F, B, po) : is_p_independent(F, B, po);
                out.result[basis ? "p_basis" : "p_independent"] = r.independent;
                if (r.dependence) out.result["certificate"] = r.dependence->text;
                out.witness = {{"rank", r.rank}, {"rows", r.rows}};
                out.method = "fraction-free-elimination";
            }
        } else if (cmd == "symbol") {
            auto F = make_field(field);
            MilnorSymbol s(F, parse_list(F, entries));
            out.result["zero"] = symbol_is_zero_mod2(s);
            if (F.is_tower()) {
                auto r = symbol_residue(s);
                out.witness["residue"] = r.tame ? json(r.tame->to_string()) : json("0");
                out.witness["unramified"] = r.unramified.to_string();
            }
            out.method = "iterated-residue";
        } else if (cmd == "cup") {
            std::vector<std::vector<std::int64_t>> rows;
            if (!elements.empty()) {
                if (field.empty()) throw input_error("--elements needs --field");
                auto F = make_field(field);
                json cls = json::array();
                for (const auto& a : parse_list(F, elements)) {
                    rows.push_back(kummer_class(F, a, ell).vec);
                    cls.push_back(rows.back());
                }
                out.witness["classes"] = cls;
                m = static_cast<int>(rows[0].size());
            } else {
                if (characters.empty()) throw input_error("cup needs --characters or --field with --elements");
                rows = detail::parse_rows(characters);
                if (m == 0) m = static_cast<int>(rows[0].size());
            }
            auto rv = cup_rank(rows, ell);
            out.result["rank_verdict"] = to_string(rv);
            out.method = "rank";
            if (elements.empty()) {
                auto bar = cup_product_bar({ell, m, rows}, static_cast<std::int64_t>(bar_cap));
                out.result["cup"] = bar.nonzero ? "nonzero" : "zero";
                out.method = "bar-resolution";
                if (!bar.nonzero) out.witness["bounding_cochain"] = bar.bounding_cochain;
                if (rv != CupVerdict::indeterminate && (rv == CupVerdict::nonzero) != bar.nonzero)
                    throw std::logic_error("rank criterion and bar resolution disagree");
            } else {
                out.result["cup"] = rv == CupVerdict::indeterminate ? json(nullptr) : json(to_string(rv));
            }
        } else if (cmd == "vcd") {
            auto F = make_field(field);
            auto r = detect_vcd(F, ell, tag_d >= 0 ? std::optional<std::size_t>(tag_d) : std::nullopt);
            out.result["m"] = r.m;
            if (r.tagged_d) {
                out.result["d"] = *r.tagged_d;
                out.result["consistent"] = r.consistent;
            }
            json cls = json::array();
            for (const auto& k : r.classes) cls.push_back(k.vec);
            out.witness = {{"elements", detail::strings(F, r.witness)}, {"classes", cls}, {"cup", to_string(r.witness_cup)},
                           {"class_space_dimension", r.class_space_dimension}};
            out.method = "kummer-rank";
        } else if (cmd == "genus") {
            auto mode = parse_char_mode(char_mode);
            if (!branch.empty()) {
                auto pts = expr::split_list(branch);
                if (n && n != static_cast<std::int64_t>(pts.size())) throw input_error("--n does not match the number of branch points");
                out.result["genus"] = json::parse(fiber_product_genus(CoverSpec(mode, pts)).str());
                out.method = "conductor-discriminant";
            } else {
                out.result["genus"] = json::parse(genus_closed_form(n, mode).str());
                out.method = "closed-form";
            }
        } else if (cmd == "bound") {
            auto mode = parse_char_mode(char_mode);
            out.result["bound"] = json::parse(sx_bound(g).str());
            out.result["max_cover_size"] = max_cover_size(g, mode);
            out.method = "genus-enumeration";
        } else if (cmd == "tdeg" || cmd == "certify") {
            auto F = make_field(field);
            Presentation P(F);
            P.model_p = model_p;
            P.model_u = model_u;
            if (!translate.empty()) {
                std::vector<Scalar> a;
                for (const auto& x : parse_list(F, translate)) {
                    if (!x.ratfunc().is_polynomial() || !x.ratfunc().num().is_constant()) throw input_error("translation entries must be constants");
                    a.push_back(x.ratfunc().num().constant_term());
                }
                P.translation = a;
            }
            if (cmd == "certify") P.candidate = parse_list(F, candidate);
            auto v = cmd == "tdeg" ? tdeg(P) : certify_basis(P);
            out.result["tdeg"] = v.tdeg;
            if (cmd == "certify") out.result["basis"] = v.certified;
            out.result["certified"] = v.certified;
            out.witness = detail::verdict_json(v);
            out.method = v.method;
        } else if (cmd == "linkage") {
            auto F = make_field(field);
            auto r = linkage_check(PfisterSpec(F, parse_list(F, generators)), parse_element(F, value));
            out.result["represents"] = r.represents_minus_a;
            out.result["hyperbolic"] = r.hyperbolic;
            out.result["symbol_zero"] = r.symbol_zero;
            out.result["agree"] = r.agree();
            out.method = "three-way";
        }
    } catch (const unsupported_domain& e) {
        return error(unsupported, "unsupported", e.what());
    } catch (const input_error& e) {
        return error(bad_input, "input", e.what());
    } catch (const std::exception& e) {
        return error(internal, "internal", e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    json j;
    j["query"] = query;
    j["result"] = out.result;
    j["witness"] = out.witness;
    j["method"] = out.method;
    j["elapsed_ms"] = std::round(ms * 1000) / 1000;
    return {ok, j};
}

/// Runs a batch file: one query per line, evaluated concurrently, printed in input order.
inline std::pair<int, json> evaluate_batch(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {bad_input, json{{"error", {{"kind", "input"}, {"message", "cannot open batch file " + path}}}}};
    std::vector<std::vector<std::string>> queries;
    std::string line;
    try {
        while (std::getline(in, line)) {
            auto words = detail::split_command_line(line);
            if (words.empty() || words[0].starts_with("#")) continue;
            if (words[0] == "wittlab") words.erase(words.begin());
            queries.push_back(std::move(words));
        }
    } catch (const input_error& e) {
        return {bad_input, json{{"error", {{"kind", "input"}, {"message", e.what()}}}}};
    }
    std::vector<std::future<std::pair<int, json>>> jobs;
    for (const auto& q : queries) jobs.push_back(std::async(std::launch::async, [q] { return evaluate(q); }));
    json arr = json::array();
    int code = ok;
    for (auto& f : jobs) {
        auto [c, j] = f.get();
        code = std::max(code, c);
        arr.push_back(std::move(j));
    }
    return {code, arr};
}

/// Entry point behind the executable; args exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out) {
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        out << "usage: wittlab <isotropy|represents|universal|pfister|pform|pbasis|symbol|cup|vcd|genus|bound|tdeg|certify|linkage> [flags]\n"
               "       wittlab --batch FILE\n"
               "run 'wittlab <command> --help' for the flags of a command\n";
        return args.empty() ? bad_input : ok;
    }
    std::pair<int, json> r;
    if (args[0] == "--batch") {
        if (args.size() != 2) {
            out << json{{"error", {{"kind", "input"}, {"message", "--batch takes exactly one FILE"}}}}.dump(2) << "\n";
            return bad_input;
        }
        r = evaluate_batch(args[1]);
    } else {
        r = evaluate(args);
    }
    if (r.second.is_object() && r.second.contains("help"))
        out << r.second["help"].get<std::string>();
    else
        out << r.second.dump(2) << "\n";
    return r.first;
}

}  // namespace wittlab::cli
