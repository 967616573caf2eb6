// rescorr_cli: analyze, star, verify and factor polynomial correspondences.
//
// Exit codes: 0 ok, 2 parse/usage, 3 validation, 4 degree mismatch, 5 JZero, 6 rank not two.

#include <rescorr/rescorr.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace rescorr;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kValidation = 3, kMismatch = 4, kJZero = 5, kRank = 6 };

struct CliError {
    int code;
    std::string kind;
    std::string message;
};

struct Input {
    std::string expr;
    std::string file;
};

BiPoly read_input(const Input& in, const std::string& label) {
    if (in.expr.empty() == in.file.empty())
        throw CliError{kUsage, "usage", label + ": give exactly one of --expr / --file"};
    std::string text = in.expr;
    if (!in.file.empty()) {
        std::ifstream f(in.file);
        if (!f) throw CliError{kUsage, "usage", "cannot read " + in.file};
        std::ostringstream os;
        os << f.rdbuf();
        text = os.str();
    }
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw CliError{kUsage, "parse", e.what()};
    }
}

Correspondence checked(const BiPoly& p) {
    try {
        return validate(p);
    } catch (const ValidationError& e) {
        throw CliError{kValidation, to_string(e.kind()), e.what()};
    }
}

Json bidegree_json(Bidegree b) { return Json::array({b.d_w, b.d_z}); }

std::string complex_text(ComplexF c) {
    std::ostringstream os;
    os << std::setprecision(17) << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
    return os.str();
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

/// Coefficient matrix with z^j row labels and w^k column headers, right-aligned.
std::string matrix_text(const BiPoly& p) {
    const CoeffMatrix m = coeff_matrix(p);
    std::vector<std::vector<std::string>> cells(m.rows() + 1, std::vector<std::string>(m.cols() + 1));
    for (std::size_t c = 0; c < m.cols(); ++c) cells[0][c + 1] = "w^" + std::to_string(m.cols() - 1 - c);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        cells[r + 1][0] = "z^" + std::to_string(m.rows() - 1 - r);
        for (std::size_t c = 0; c < m.cols(); ++c) cells[r + 1][c + 1] = m(r, c).to_string();
    }
    std::vector<std::size_t> width(m.cols() + 1, 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    for (const auto& row : cells) {
        os << " ";
        for (std::size_t c = 0; c < row.size(); ++c) os << " " << std::setw(static_cast<int>(width[c])) << row[c];
        os << "\n";
    }
    return os.str();
}

Json separation_json(const RationalSeparation& s) {
    return {{"R_num", print(s.r_num, 'z')}, {"R_den", print(s.r_den, 'z')},
            {"S_num", print(s.s_num, 'w')}, {"S_den", print(s.s_den, 'w')}};
}

Json analyze(const BiPoly& p) {
    const auto [p1_ok, p2_ok] = check_p1_p2(p);
    const Classification c = classify(checked(p));
    Json out;
    out["command"] = "analyze";
    out["polynomial"] = print(p);
    out["bidegree"] = bidegree_json(p.bidegree());
    out["p1_ok"] = p1_ok;
    out["p2_ok"] = p2_ok;
    out["rank"] = c.rank;
    out["verdict"] = to_string(c.verdict);
    out["power"] = c.verdict == Verdict::ReducibleRestrictive ? Json(c.power) : Json(nullptr);
    out["root"] = c.root ? Json(print(*c.root)) : Json(nullptr);
    out["separation"] = c.rank == 2 ? separation_json(separate(p)) : Json(nullptr);
    Json terms = Json::array();
    for (const auto& t : decompose(p).terms) terms.push_back({{"g", print(t.g, 'w')}, {"h", print(t.h, 'z')}});
    out["decomposition"] = terms;
    out["symmetry"] = {{"sign", sign_symmetry(p)},
                       {"conjugate", conj_symmetry(p)},
                       {"consecutive_columns_independent", consecutive_columns_independent(p)}};
    return out;
}

void analyze_text(const Json& r, const BiPoly& p, std::ostream& os) {
    os << "P = " << r["polynomial"].get<std::string>() << "\n";
    os << "bidegree (" << r["bidegree"][0] << ", " << r["bidegree"][1] << "), rank " << r["rank"] << "\n";
    os << "coefficient matrix:\n" << matrix_text(p);
    os << "verdict: " << r["verdict"].get<std::string>();
    if (!r["power"].is_null()) os << " (d = " << r["power"] << ", root " << r["root"].get<std::string>() << ")";
    os << "\n";
    if (!r["separation"].is_null()) {
        const auto& s = r["separation"];
        os << "R(z) = (" << s["R_num"].get<std::string>() << ") / (" << s["R_den"].get<std::string>() << ")\n";
        os << "S(w) = (" << s["S_num"].get<std::string>() << ") / (" << s["S_den"].get<std::string>() << ")\n";
    }
    os << "decomposition:\n";
    for (const auto& t : r["decomposition"])
        os << "  (" << t["g"].get<std::string>() << ") (" << t["h"].get<std::string>() << ")\n";
    const auto& sym = r["symmetry"];
    os << "sign symmetric: " << sym["sign"] << ", conjugate symmetric: " << sym["conjugate"]
       << ", consecutive columns independent: " << sym["consecutive_columns_independent"] << "\n";
}

Json trace_json(const TraceQuad& t) {
    return {{"f1", t.f1.to_string()}, {"f2", t.f2.to_string()}, {"f3", t.f3.to_string()}, {"f4", t.f4.to_string()}};
}

Json star_cmd(const BiPoly& p, const BiPoly& q, bool check) {
    BiPoly pq;
    try {
        pq = star(p, q);
    } catch (const DegreeMismatch& e) {
        throw CliError{kMismatch, "degree_mismatch", e.what()};
    }
    Json out;
    out["command"] = "star";
    out["product"] = print(pq);
    out["product_bidegree"] = bidegree_json(pq.bidegree());
    out["product_rank"] = matrix_rank(pq);
    Json diag = nullptr;
    if (matrix_rank(p) == 2 && matrix_rank(q) == 2) {
        const StarDiagnostics d = diagnostics(p, q);
        diag = {{"verdict", to_string(d.verdict)},
                {"reason", d.reason},
                {"pairing_corner_top", d.pairing_corner_top.to_string()},
                {"pairing_corner_bottom", d.pairing_corner_bottom.to_string()},
                {"pairing_nr_s1_q0", d.pairing_nr_s1_q0.to_string()},
                {"pairing_dr_s1_qnz", d.pairing_dr_s1_qnz.to_string()},
                {"traces", trace_json(d.traces)},
                {"beta_degenerate", d.beta_degenerate},
                {"beta", d.beta ? Json(d.beta->to_string()) : Json(nullptr)},
                {"nominal_bidegree", bidegree_json(d.nominal_bidegree)},
                {"bidegree_dropped", d.bidegree_dropped}};
    }
    out["diagnostics"] = diag;
    if (check) {
        Json c;
        try {
            c = {{"t_equals_star", build_T(p, q) == pq}, {"degenerate", nullptr}};
        } catch (const DegenerateS& e) {
            c = {{"t_equals_star", nullptr}, {"degenerate", e.what()}};
        } catch (const RankNotTwo& e) {
            c = {{"t_equals_star", nullptr}, {"degenerate", e.what()}};
        }
        out["check"] = c;
    }
    return out;
}

void star_text(const Json& r, const BiPoly& pq, std::ostream& os) {
    os << "P * Q = " << r["product"].get<std::string>() << "\n";
    os << "bidegree (" << r["product_bidegree"][0] << ", " << r["product_bidegree"][1] << "), rank "
       << r["product_rank"] << "\n";
    os << "coefficient matrix:\n" << matrix_text(pq);
    if (r["diagnostics"].is_null()) {
        os << "diagnostics: unavailable (a factor does not have rank 2)\n";
    } else {
        const auto& d = r["diagnostics"];
        os << "verdict: " << d["verdict"].get<std::string>();
        if (!d["reason"].get<std::string>().empty()) os << " (" << d["reason"].get<std::string>() << ")";
        os << "\n";
        const auto& t = d["traces"];
        os << "traces: f1 = " << t["f1"].get<std::string>() << ", f2 = " << t["f2"].get<std::string>()
           << ", f3 = " << t["f3"].get<std::string>() << ", f4 = " << t["f4"].get<std::string>() << "\n";
    }
    if (r.contains("check")) {
        const auto& c = r["check"];
        if (c["degenerate"].is_null())
            os << "T == P * Q: " << c["t_equals_star"] << "\n";
        else
            os << "T not built: " << c["degenerate"].get<std::string>() << "\n";
    }
}

Json verify_cmd(const BiPoly& p, const VerifyOptions& opt) {
    checked(p);
    const VerificationReport rep = verify_restrictive(p, opt);
    Json failures = Json::array();
    for (const auto& f : rep.failures)
        failures.push_back({{"sample", f.sample},
                            {"direction", f.from_z ? "z" : "w"},
                            {"base", complex_text(f.base)},
                            {"branch_a", f.branch_a},
                            {"branch_b", f.branch_b},
                            {"distance", number_or_null(f.distance)}});
    return {{"command", "verify"},
            {"verdict", to_string(rep.verdict)},
            {"samples", rep.samples},
            {"seed", opt.seed},
            {"tol", opt.tol},
            {"clean_samples", rep.clean_samples},
            {"inconclusive_events", rep.inconclusive_events},
            {"max_list_discrepancy", number_or_null(rep.max_list_discrepancy)},
            {"max_containment_error", number_or_null(rep.max_containment_error)},
            {"failures", failures}};
}

void verify_text(const Json& r, std::ostream& os) {
    os << "verdict: " << r["verdict"].get<std::string>() << "\n";
    os << "samples " << r["samples"] << " per direction (seed " << r["seed"] << ", tol " << r["tol"] << ")\n";
    os << "clean " << r["clean_samples"] << ", inconclusive " << r["inconclusive_events"] << "\n";
    os << "max list discrepancy " << r["max_list_discrepancy"] << ", max containment error "
       << r["max_containment_error"] << "\n";
    for (const auto& f : r["failures"])
        os << "  mismatch: sample " << f["sample"] << " from " << f["direction"].get<std::string>() << " = "
           << f["base"].get<std::string>() << ", branches " << f["branch_a"] << "/" << f["branch_b"] << ", distance "
           << f["distance"] << "\n";
}

Json factor_cmd(const BiPoly& p) {
    CanonicalFactors f;
    try {
        f = canonical_factor(p);
    } catch (const JZero& e) {
        throw CliError{kJZero, "jzero", e.what()};
    } catch (const RankNotTwo& e) {
        throw CliError{kRank, "rank_not_two", e.what()};
    }
    return {{"command", "factor"},
            {"P1", print(f.left)},
            {"P2", print(f.right)},
            {"recovery", f.exact ? std::string("exact") : "proportional(" + f.scale.to_string() + ")"},
            {"scale", f.scale.to_string()}};
}

void factor_text(const Json& r, std::ostream& os) {
    os << "P1 = " << r["P1"].get<std::string>() << "\n";
    os << "P2 = " << r["P2"].get<std::string>() << "\n";
    os << "recovery: " << r["recovery"].get<std::string>() << "\n";
}

void add_input(CLI::App* cmd, Input& in, const std::string& prefix = "") {
    const std::string dash = prefix.empty() ? "" : prefix + "-";
    cmd->add_option("--" + dash + "expr", in.expr, "polynomial text" + (prefix.empty() ? "" : " for " + prefix));
    cmd->add_option("--" + dash + "file", in.file, "file holding one polynomial" + (prefix.empty() ? "" : " for " + prefix));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and numeric tools for restrictive polynomial correspondences"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    Input single, left, right;
    auto* analyze_sub = app.add_subcommand("analyze", "validate, classify, separate and decompose P");
    add_input(analyze_sub, single);

    bool check = false;
    auto* star_sub = app.add_subcommand("star", "*-product of P and Q with validity diagnostics");
    add_input(star_sub, left, "p");
    add_input(star_sub, right, "q");
    star_sub->add_flag("--check", check, "also build T from the separations and compare");

    VerifyOptions opt;
    auto* verify_sub = app.add_subcommand("verify", "numeric check of the restrictive property");
    add_input(verify_sub, single);
    verify_sub->add_option("--samples", opt.samples, "base points per direction")->capture_default_str();
    verify_sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    verify_sub->add_option("--tol", opt.tol, "multiset tolerance")->capture_default_str();

    auto* factor_sub = app.add_subcommand("factor", "write a rank-2 P as a (d_w,1) * (1,d_z) product");
    add_input(factor_sub, single);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    std::ostringstream text;
    Json out;
    try {
        if (analyze_sub->parsed()) {
            const BiPoly p = read_input(single, "analyze");
            out = analyze(p);
            analyze_text(out, p, text);
        } else if (star_sub->parsed()) {
            const BiPoly p = read_input(left, "P"), q = read_input(right, "Q");
            out = star_cmd(p, q, check);
            star_text(out, parse(out["product"].get<std::string>()), text);
        } else if (verify_sub->parsed()) {
            if (opt.samples == 0) throw CliError{kUsage, "usage", "--samples must be at least 1"};
            if (!(opt.tol > 0)) throw CliError{kUsage, "usage", "--tol must be positive"};
            out = verify_cmd(read_input(single, "verify"), opt);
            verify_text(out, text);
        } else {
            out = factor_cmd(read_input(single, "factor"));
            factor_text(out, text);
        }
    } catch (const CliError& e) {
        if (json)
            std::cout << Json{{"error", {{"code", e.code}, {"kind", e.kind}, {"message", e.message}}}}.dump(2) << "\n";
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    }
    if (json)
        std::cout << out.dump(2) << "\n";
    else
        std::cout << text.str();
    return kOk;
}
