// Acceptance run: one PASS/FAIL line per criterion at its stated parameters.
// Exits 1 if any criterion fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bopcalc/bopcalc.hpp"
#include "cli_runner.hpp"

using namespace bopcalc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(const VerificationReport& r)
    {
        if (!r.pass) {
            pass = false;
            detail += r.check + " failed at degree " + std::to_string(*r.first_failure_degree) + ": " + r.message + "; ";
        }
    }

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail += what + "; ";
        }
    }
};

struct Criterion {
    int number;
    std::string title;
    std::function<Outcome()> run;
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<Criterion> criteria()
{
    return {
        {1, "B_2 + A_2 = 1 to degree 512 in under 1 s",
         [] {
             Outcome o;
             const auto r = verify_rhs_one(512);
             o.require(r);
             o.require(r.elapsed_ms < 1000.0, "took " + std::to_string(r.elapsed_ms) + " ms");
             return o;
         }},
        {2, "B_{s+1} = B_s + C_s and A_s = C_s + A_{s+1}, s = 2..9, degree 512",
         [] {
             Outcome o;
             o.require(verify_bcb(2, 9, 512));
             o.require(verify_telescope(2, 9, 512));
             return o;
         }},
        {3, "BoP free ranks = bo + shifted BP<k> sum to degree 256, torsion identical",
         [] {
             Outcome o;
             o.require(verify_rational_splitting(256));
             return o;
         }},
        {4, "bss_iterate reproduces the bo_i tables to degree 64",
         [] {
             Outcome o;
             o.require(verify_bo_tables(64));
             return o;
         }},
        {5, "H(bu_2) = H(bo_2) x H(bo_4) to degree 100, x^8 coefficient 5",
         [] {
             Outcome o;
             const auto r = verify_bu2_product(100);
             o.require(r);
             o.require(r.details.value("coefficient_x8", std::string()) == "5", "x^8 coefficient is not 5");
             return o;
         }},
        {6, "series(X_i) = series(F_i) x series(F_{i+2}), i = -8..5, degree 64",
         [] {
             Outcome o;
             o.require(verify_negative_tower(-8, 5, 64));
             return o;
         }},
        {7, "bop_tower(12, 60): counts, parity, reconstruction, base cross-check, H_2(BoP_2)",
         [] {
             Outcome o;
             o.require(verify_bop_tower(12, 60));
             return o;
         }},
        {8, "rank rule = bss_iterate for BP and bu, i = -6..6, degree 40",
         [] {
             Outcome o;
             o.require(verify_oracle_equivalence(-6, 6, 40));
             return o;
         }},
        {9, "irreducibility window k <= 12, index bijection to 2^13, BP<j> rank identity j = 2..6 to 128",
         [] {
             Outcome o;
             o.require(verify_irreducibility(12));
             o.require(verify_index_bijection(1 << 13));
             o.require(verify_bpn_rank_recursion(2, 6, 128));
             return o;
         }},
        {10, "free and torsion homotopy of BoP_6 match the product to degree 256",
         [] {
             Outcome o;
             o.require(verify_bop6_splitting(256));
             return o;
         }},
        {11, "epsilon partition n <= 64, conjecture limit n >= 16 to 64, first appearance q <= 64, squares j < 2^12",
         [] {
             Outcome o;
             o.require(verify_epsilon_partition(64));
             o.require(verify_conjecture_limit(16, 64, 64));
             o.require(verify_first_appearance(64));
             o.require(verify_squares(1 << 12));
             return o;
         }},
        {12, "CLI: verify all at 256 exits 0 in < 30 s, JSON schemas, faults exit 1 with a degree",
         [] {
             Outcome o;
             const auto start = std::chrono::steady_clock::now();
             const auto all = cli::run("verify all --max-degree 256 --format json");
             const double secs = seconds_since(start);
             o.require(all.exit_code == 0, "verify all exited " + std::to_string(all.exit_code));
             o.require(secs < 30.0, "verify all took " + std::to_string(secs) + " s");
             const auto j = nlohmann::json::parse(all.out, nullptr, false);
             o.require(!j.is_discarded() && j.value("pass", false), "verify all report does not pass");

             const std::string validate = std::string(BOPCALC_PYTHON) + " " + BOPCALC_SCHEMA_SCRIPT + " " +
                                          BOPCALC_CLI + " " + BOPCALC_SCHEMA + " > /dev/null";
             o.require(std::system(validate.c_str()) == 0, "schema validation failed");

             for (const char* args : {"verify bcb --fault drop-one-plus-x2 --max-degree 256 --format json",
                                      "verify negative-tower --fault corrupt-f-profile --max-degree 256 --format json"}) {
                 const auto f = cli::run(args);
                 o.require(f.exit_code == 1, std::string(args) + " exited " + std::to_string(f.exit_code));
                 const auto fj = nlohmann::json::parse(f.out, nullptr, false);
                 o.require(!fj.is_discarded() && fj.contains("first_failure_degree"),
                           std::string(args) + " reported no failing degree");
             }
             return o;
         }},
    };
}

}  // namespace

int main()
{
    int failed = 0;
    for (const auto& c : criteria()) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const auto ms = static_cast<long long>(seconds_since(start) * 1000.0);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.number << ": " << c.title << " (" << ms
                  << " ms)";
        if (!o.pass)
            std::cout << " -- " << o.detail;
        std::cout << '\n';
        failed += o.pass ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}
