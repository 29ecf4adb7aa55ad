#include "gafzeros/io.hpp"

#include <cstdio>

#include <json.hpp>

#include "gafzeros/errors.hpp"

namespace gafzeros {

std::string covariance_to_json(const Covariance& cov) {
    nlohmann::json j;
    j["n"] = cov.order();
    nlohmann::json arr = nlohmann::json::array();
    for (int k = 0; k <= cov.order(); ++k) {
        const cplx g = cov.gamma(k);
        arr.push_back({g.real(), g.imag()});
    }
    j["gamma"] = arr;
    return j.dump();
}

Covariance covariance_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("invalid covariance JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("gamma") || !j["gamma"].is_array())
        throw DomainError("covariance JSON must carry a gamma array");
    std::vector<cplx> gamma;
    for (const auto& entry : j["gamma"]) {
        if (entry.is_number()) {
            gamma.emplace_back(entry.get<double>(), 0.0);
        } else if (entry.is_array() && entry.size() == 2
                   && entry[0].is_number() && entry[1].is_number()) {
            gamma.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        } else {
            throw DomainError(
                "gamma entries must be numbers or [re, im] pairs");
        }
    }
    if (j.contains("n")) {
        if (!j["n"].is_number_integer())
            throw DomainError("covariance JSON field n must be an integer");
        if (j["n"].get<long>() != static_cast<long>(gamma.size()) - 1)
            throw DomainError("covariance JSON order disagrees with gamma");
    }
    return Covariance::from_gamma(std::move(gamma));
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace gafzeros
