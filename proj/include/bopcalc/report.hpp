#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace bopcalc {

/// Outcome of one verification. pass == !first_failure_degree.
struct VerificationReport {
    std::string check;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    bool pass = true;
    std::optional<int> first_failure_degree;
    std::string message;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    double elapsed_ms = 0.0;

    /// Records a failure; keeps the earliest degree when called repeatedly.
    void fail(int degree, std::string why)
    {
        if (!first_failure_degree || degree < *first_failure_degree) {
            first_failure_degree = degree;
            message = std::move(why);
        }
        pass = false;
    }

    void absorb(const VerificationReport& sub)
    {
        if (!sub.pass)
            fail(*sub.first_failure_degree, sub.check + ": " + sub.message);
    }
};

/// Runs body(report) and stamps the wall-clock time.
template <class Body>
VerificationReport timed_check(std::string name, nlohmann::ordered_json parameters, Body&& body)
{
    VerificationReport r;
    r.check = std::move(name);
    r.parameters = std::move(parameters);
    const auto start = std::chrono::steady_clock::now();
    body(r);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

inline nlohmann::ordered_json to_json(const VerificationReport& r)
{
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["parameters"] = r.parameters;
    j["pass"] = r.pass;
    if (r.first_failure_degree)
        j["first_failure_degree"] = *r.first_failure_degree;
    if (!r.message.empty())
        j["message"] = r.message;
    if (!r.details.empty())
        j["details"] = r.details;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

}  // namespace bopcalc
