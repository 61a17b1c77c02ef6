// bopcalc: homology tables, catalogs and exact identity checks for the
// Omega spectra of BoP, BP, bo, bu, F and X.
//
// Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage error.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bopcalc/bopcalc.hpp"

namespace {

using namespace bopcalc;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    int max_degree = 256;
    std::string format = "table";
    std::string output;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--max-degree", opts.max_degree, "Truncation degree")->check(CLI::NonNegativeNumber);
    cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
    cmd->add_option("--output", opts.output, "Write output to this file instead of stdout");
    cmd->add_flag("--quiet", opts.quiet, "Suppress standard output");
}

void emit(const CommonOptions& opts, const std::string& text)
{
    if (!opts.output.empty()) {
        std::ofstream out(opts.output);
        if (!out)
            throw InvalidParameter("cannot open '" + opts.output + "' for writing");
        out << text;
    }
    if (!opts.quiet && opts.output.empty())
        std::cout << text;
}

// --------------------------------------------------------------------------
// homology

std::string series_table(const TruncatedSeries& s)
{
    std::ostringstream out;
    for (int d = 0; d <= s.truncation(); ++d) {
        if (s[d] != 0)
            out << d << ' ' << s[d].str() << '\n';
    }
    return out.str();
}

std::string render_homology(const TowerResult& t, const std::string& format, const std::string& note)
{
    if (format == "json") {
        json j = to_json_value(t);
        if (!note.empty())
            j["note"] = note;
        return j.dump(2) + "\n";
    }
    if (format == "csv")
        return t.table ? tower_csv({t}) : to_csv(t.series);
    std::ostringstream out;
    out << "# H_*(" << to_string(t.space) << "), provenance " << to_string(t.provenance) << '\n';
    if (!note.empty())
        out << "# note: " << note << '\n';
    if (t.table) {
        out << "# kind " << to_string(t.table->kind()) << ", component_rank " << t.table->component_rank()
            << ", truncation " << t.table->truncation() << '\n';
        out << "# degree count\n";
        for (const auto& [d, c] : t.table->counts())
            out << d << ' ' << c.str() << '\n';
    } else {
        out << "# mixed-kind product: Poincare series only\n# degree dimension\n" << series_table(t.series);
    }
    return out.str();
}

int run_homology(const CommonOptions& opts, const std::string& spectrum_name, int index, bool ko)
{
    const auto spectrum = parse_spectrum(spectrum_name);
    const SpaceRef space{spectrum, index};
    std::string note;
    if (spectrum.tag == SpectrumTag::bo) {
        const auto where = normalize_bo_index(index, ko ? BoFlavor::periodic : BoFlavor::connective);
        if (where.normalized)
            note = "bo is 8-periodic below 4; bo_" + std::to_string(index) + " reported as the KO_" +
                   std::to_string(where.residue) + " table";
        else if (where.periodic && index >= 4)
            note = "KO_" + std::to_string(index) + " table";
    }
    const auto result = space_homology(space, opts.max_degree, ko ? BoFlavor::periodic : BoFlavor::connective);
    emit(opts, render_homology(result, opts.format, note));
    return 0;
}

// --------------------------------------------------------------------------
// tower

int run_tower(const CommonOptions& opts, int i_max)
{
    const auto tower = bop_tower(i_max, opts.max_degree);
    if (opts.format == "csv") {
        emit(opts, tower_csv(tower));
    } else if (opts.format == "json") {
        json arr = json::array();
        for (const auto& t : tower)
            arr.push_back(to_json_value(t));
        emit(opts, arr.dump(2) + "\n");
    } else {
        std::string text;
        for (const auto& t : tower)
            text += render_homology(t, "table", "");
        emit(opts, text);
    }
    return 0;
}

// --------------------------------------------------------------------------
// catalog

std::vector<SpectrumId> catalog_spectra()
{
    return {SpectrumId::bp(),     SpectrumId::bpbar(),  SpectrumId::bpn(1), SpectrumId::bpn(2),
            SpectrumId::bpn(3),   SpectrumId::bpn(4),   SpectrumId::bu(),   SpectrumId::bo(),
            SpectrumId::bop(),    SpectrumId::f(),      SpectrumId::x()};
}

int run_catalog(const CommonOptions& opts)
{
    const int n = opts.max_degree;
    std::vector<HomotopyProfile> profiles;
    for (const auto& s : catalog_spectra())
        profiles.push_back(homotopy_profile(s, n));

    if (opts.format == "csv") {
        std::string text = "spectrum,degree,free_rank,torsion_z2\n";
        for (const auto& p : profiles) {
            for (int d = 0; d <= n; ++d)
                text += to_string(p.spectrum) + "," + std::to_string(d) + "," + p.free_ranks[d].str() + "," +
                        std::to_string(p.torsion(d)) + "\n";
        }
        emit(opts, text);
        return 0;
    }
    if (opts.format == "json") {
        json j{{"truncation", n}, {"profiles", json::array()}, {"bo_tables", json::array()},
               {"bu_tables", json::array()}};
        for (const auto& p : profiles)
            j["profiles"].push_back(p);
        for (int i = 0; i <= 7; ++i) {
            for (auto flavor : {BoFlavor::connective, BoFlavor::periodic}) {
                if (flavor == BoFlavor::periodic && i < 4)
                    continue;
                j["bo_tables"].push_back({{"index", i},
                                          {"flavor", flavor == BoFlavor::periodic ? "KO" : "bo"},
                                          {"table", bo_space_homology(i, n, flavor)}});
            }
        }
        for (int i = 0; i <= 2; ++i)
            j["bu_tables"].push_back({{"index", i}, {"table", bu_space_homology(i, n)}});
        emit(opts, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream out;
    for (const auto& p : profiles) {
        out << "# " << to_string(p.spectrum) << " free ranks (degree rank)\n" << series_table(p.free_ranks);
        if (!p.torsion_z2.empty()) {
            out << "# " << to_string(p.spectrum) << " Z/2 torsion degrees:";
            for (const auto& [d, c] : p.torsion_z2)
                out << ' ' << d;
            out << '\n';
        }
    }
    emit(opts, out.str());
    return 0;
}

// --------------------------------------------------------------------------
// verify

struct VerifyOptions {
    std::string check;
    std::optional<int> from;
    std::optional<int> to;
    std::optional<int> bound;
    std::string fault;
};

HomotopyProfile corrupted_f_profile(int truncation)
{
    // An extra free summand in odd degree 5, which F cannot have.
    const auto good = homotopy_profile(SpectrumId::f(), truncation);
    return {good.spectrum, good.free_ranks + TruncatedSeries::monomial(5, 1, truncation), good.torsion_z2};
}

const std::vector<std::string>& known_checks()
{
    static const std::vector<std::string> names = {
        "rhs-one",          "bcb",          "telescope",          "rational-splitting", "irreducibility",
        "index-bijection",  "bpn-rank-recursion", "bop6-splitting", "negative-tower",   "bop-tower",
        "bo-tables",        "bu2-product",  "oracle-equivalence", "epsilon",            "conjecture-limit",
        "first-appearance", "squares",      "shape",              "all"};
    return names;
}

VerificationReport run_single_check(const VerifyOptions& v, int n)
{
    const auto& c = v.check;
    auto from_or = [&](int d) { return v.from.value_or(d); };
    auto to_or = [&](int d) { return v.to.value_or(d); };
    if (!v.fault.empty()) {
        if (c == "bcb" && v.fault == "drop-one-plus-x2")
            return verify_bcb(from_or(2), to_or(9), n, SplittingFault::drop_one_plus_x2);
        if (c == "negative-tower" && v.fault == "corrupt-f-profile") {
            const int lo = from_or(-8);
            return verify_negative_tower(lo, to_or(5), n, corrupted_f_profile(profile_truncation_for(lo, n)));
        }
        throw InvalidParameter("fault '" + v.fault + "' does not apply to check '" + c + "'");
    }
    if (c == "rhs-one")
        return verify_rhs_one(n);
    if (c == "bcb")
        return verify_bcb(from_or(2), to_or(9), n);
    if (c == "telescope")
        return verify_telescope(from_or(2), to_or(9), n);
    if (c == "rational-splitting")
        return verify_rational_splitting(n);
    if (c == "irreducibility")
        return verify_irreducibility(to_or(12));
    if (c == "index-bijection")
        return verify_index_bijection(v.bound.value_or(1 << 13));
    if (c == "bpn-rank-recursion")
        return verify_bpn_rank_recursion(from_or(2), to_or(6), n);
    if (c == "bop6-splitting")
        return verify_bop6_splitting(n);
    if (c == "negative-tower")
        return verify_negative_tower(from_or(-8), to_or(5), n);
    if (c == "bop-tower")
        return verify_bop_tower(to_or(12), n);
    if (c == "bo-tables")
        return verify_bo_tables(n);
    if (c == "bu2-product")
        return verify_bu2_product(n);
    if (c == "oracle-equivalence")
        return verify_oracle_equivalence(from_or(-6), to_or(6), n);
    if (c == "epsilon")
        return verify_epsilon_partition(to_or(64));
    if (c == "conjecture-limit")
        return verify_conjecture_limit(from_or(16), to_or(64), n);
    if (c == "first-appearance")
        return verify_first_appearance(to_or(64));
    if (c == "squares")
        return verify_squares(v.bound.value_or(1 << 12));
    if (c == "shape")
        return verify_shape(to_or(16), n);
    throw InvalidParameter("unknown check '" + c + "'");
}

/// Every acceptance-level check. Degree-bounded checks run at N, except the
/// conjecture limit, which is only claimed in degrees <= 64.
VerificationReport run_all(int n)
{
    return timed_check("all", {{"max_degree", n}}, [n](VerificationReport& r) {
        std::vector<VerificationReport> reports = {
            verify_rhs_one(n),
            verify_bcb(2, 9, n),
            verify_telescope(2, 9, n),
            verify_rational_splitting(n),
            verify_bo_tables(n),
            verify_bu2_product(n),
            verify_negative_tower(-8, 5, n),
            verify_bop_tower(12, n),
            verify_oracle_equivalence(-6, 6, n),
            verify_irreducibility(12),
            verify_index_bijection(1 << 13),
            verify_bpn_rank_recursion(2, 6, n),
            verify_bop6_splitting(n),
            verify_epsilon_partition(64),
            verify_conjecture_limit(16, 64, std::min(n, 64)),
            verify_first_appearance(64),
            verify_squares(1 << 12),
            verify_shape(16, n),
        };
        auto arr = ojson::array();
        for (const auto& sub : reports) {
            r.absorb(sub);
            arr.push_back(to_json(sub));
        }
        r.details["reports"] = std::move(arr);
    });
}

std::string render_reports(const VerificationReport& report, const std::string& format)
{
    if (format == "json")
        return to_json(report).dump(2) + "\n";
    std::vector<ojson> rows;
    if (report.check == "all") {
        for (const auto& sub : report.details["reports"])
            rows.push_back(sub);
    }
    rows.push_back(to_json(report));
    std::ostringstream out;
    if (format == "csv") {
        out << "check,pass,first_failure_degree,elapsed_ms\n";
        for (const auto& j : rows) {
            out << j["check"].get<std::string>() << ',' << (j["pass"].get<bool>() ? "true" : "false") << ',';
            if (j.contains("first_failure_degree"))
                out << j["first_failure_degree"].get<int>();
            out << ',' << j["elapsed_ms"].get<double>() << '\n';
        }
        return out.str();
    }
    for (const auto& j : rows) {
        out << (j["pass"].get<bool>() ? "PASS " : "FAIL ") << j["check"].get<std::string>() << ' '
            << j["parameters"].dump();
        if (j.contains("first_failure_degree"))
            out << " first failing degree " << j["first_failure_degree"].get<int>() << ": "
                << j["message"].get<std::string>();
        out << " (" << static_cast<long long>(j["elapsed_ms"].get<double>()) << " ms)\n";
    }
    return out.str();
}

int run_verify(const CommonOptions& opts, const VerifyOptions& v)
{
    const auto report = v.check == "all" ? run_all(opts.max_degree) : run_single_check(v, opts.max_degree);
    emit(opts, render_reports(report, opts.format));
    return report.pass ? 0 : kExitFail;
}

// --------------------------------------------------------------------------
// conjecture

int run_conjecture(const CommonOptions& opts, int n, const std::string& check, std::optional<int> q_max,
                   std::optional<int> bound)
{
    if (check.empty()) {
        const auto s = conjectured_bopn_cohomology(n, opts.max_degree);
        if (opts.format == "json") {
            ojson j;
            j["n"] = n;
            j["series"] = json(s);
            emit(opts, j.dump(2) + "\n");
        } else if (opts.format == "csv") {
            emit(opts, to_csv(s));
        } else {
            emit(opts, "# conjectured H^*(BoP<" + std::to_string(n) + ">) (degree dimension)\n" + series_table(s));
        }
        return 0;
    }
    VerifyOptions v;
    if (check == "limit") {
        v.check = "conjecture-limit";
        v.from = n;
        v.to = std::max(n, 64);
    } else if (check == "epsilon") {
        v.check = "epsilon";
        v.to = n;
    } else if (check == "first-appearance") {
        v.check = "first-appearance";
        v.to = q_max.value_or(64);
    } else if (check == "squares") {
        v.check = "squares";
        v.bound = bound;
    } else {
        v.check = "shape";
        v.to = n;
    }
    return run_verify(opts, v);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Homology, catalogs and exact identity checks for the Omega spectra of BoP, BP, bo, bu, F, X"};
    app.require_subcommand(1);

    CommonOptions opts;

    auto* homology = app.add_subcommand("homology", "Mod-2 homology of one space of an Omega spectrum");
    std::string spectrum;
    int index = 0;
    bool ko = false;
    homology->add_option("spectrum", spectrum, "BP, BPbar, BPn(k), bu, bo, BoP, F or X")->required();
    homology->add_option("index", index, "Space index (may be negative)")->required();
    homology->add_flag("--ko", ko, "For bo at 4 <= i <= 7, report the periodic KO_i table");
    add_common(homology, opts);

    auto* tower = app.add_subcommand("tower", "H_*(BoP_i) for 2 <= i <= --to");
    int tower_to = 12;
    tower->add_option("--to", tower_to, "Largest space index")->check(CLI::Range(2, 1000));
    add_common(tower, opts);

    auto* catalog = app.add_subcommand("catalog", "Dump every homotopy profile and bo/bu homology table");
    add_common(catalog, opts);

    auto* verify = app.add_subcommand("verify", "Run an exact verification; exit 1 on failure");
    VerifyOptions v;
    verify->add_option("check", v.check, "Check name, or 'all'")->required()->check(CLI::IsMember(known_checks()));
    verify->add_option("--from", v.from, "Lower end of the check's parameter range");
    verify->add_option("--to", v.to, "Upper end of the check's parameter range");
    verify->add_option("--bound", v.bound, "Enumeration bound (index-bijection, squares)");
    verify->add_option("--fault", v.fault, "Inject a fault: drop-one-plus-x2 (bcb) or corrupt-f-profile (negative-tower)")
        ->check(CLI::IsMember({"drop-one-plus-x2", "corrupt-f-profile"}));
    add_common(verify, opts);

    auto* conjecture = app.add_subcommand("conjecture", "Conjectured H^*(BoP<n>) and its consistency checks");
    int conj_n = 16;
    std::string conj_check;
    std::optional<int> q_max, bound;
    conjecture->add_option("--n", conj_n, "n > 2")->check(CLI::Range(3, 1 << 16));
    conjecture->add_option("--check", conj_check, "Consistency check to run")
        ->check(CLI::IsMember({"limit", "epsilon", "first-appearance", "squares", "shape"}));
    conjecture->add_option("--q-max", q_max, "Largest q for first-appearance");
    conjecture->add_option("--bound", bound, "Bound on j for squares");
    add_common(conjecture, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*homology)
            return run_homology(opts, spectrum, index, ko);
        if (*tower)
            return run_tower(opts, tower_to);
        if (*catalog)
            return run_catalog(opts);
        if (*verify)
            return run_verify(opts, v);
        if (*conjecture)
            return run_conjecture(opts, conj_n, conj_check, q_max, bound);
    } catch (const bopcalc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
