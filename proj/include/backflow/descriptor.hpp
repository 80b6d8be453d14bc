#pragma once

// JSON wave-function descriptors:
//
//   { "kind": "line" | "ring",
//     "zeros": [ {"re": 0, "im": -0.25, "mult": 1}, ... ],
//     "poles": [ {"re": 0, "im": -1, "mult": 2}, ... ],
//     "period": 1,                        (ring only, default 1)
//     "gain": {"re": 1, "im": 0} }        (optional, default 1)

#include "backflow/error.hpp"
#include "backflow/polyring.hpp"
#include "backflow/rational.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace backflow {

struct WaveFunctionDescriptor {
    enum class Kind { Line, Ring };

    Kind kind = Kind::Line;
    std::vector<Root> zeros;
    std::vector<Root> poles;
    double period = 1.0;
    cplx gain{1.0};

    RationalSpec spec() const { return RationalSpec::make(zeros, poles, gain); }

    friend bool operator==(const WaveFunctionDescriptor&, const WaveFunctionDescriptor&) = default;
};

namespace detail {

inline double json_number(const nlohmann::json& j, const char* key, const std::string& where)
{
    if (!j.contains(key) || !j.at(key).is_number())
        throw SpecViolation(where + ": field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

inline std::vector<Root> json_roots(const nlohmann::json& j, const char* key)
{
    std::vector<Root> out;
    if (!j.contains(key))
        return out;
    if (!j.at(key).is_array())
        throw SpecViolation(std::string("descriptor field '") + key + "' must be an array");
    std::size_t i = 0;
    for (const auto& e : j.at(key)) {
        const std::string where = std::string(key) + "[" + std::to_string(i++) + "]";
        if (!e.is_object())
            throw SpecViolation(where + " must be an object {re, im, mult}");
        Root r;
        r.position = {json_number(e, "re", where), json_number(e, "im", where)};
        r.multiplicity = 1;
        if (e.contains("mult")) {
            if (!e.at("mult").is_number_integer())
                throw SpecViolation(where + ": field 'mult' must be an integer");
            r.multiplicity = e.at("mult").get<int>();
        }
        if (r.multiplicity < 1)
            throw SpecViolation(where + ": multiplicity must be >= 1");
        out.push_back(r);
    }
    return out;
}

inline nlohmann::json roots_json(const std::vector<Root>& roots)
{
    auto arr = nlohmann::json::array();
    for (const auto& r : roots)
        arr.push_back({{"re", r.position.real()}, {"im", r.position.imag()}, {"mult", r.multiplicity}});
    return arr;
}

} // namespace detail

inline WaveFunctionDescriptor parse_descriptor(const nlohmann::json& j)
{
    if (!j.is_object())
        throw SpecViolation("descriptor must be a JSON object");
    WaveFunctionDescriptor d;
    const std::string kind = j.value("kind", std::string{});
    if (kind == "line")
        d.kind = WaveFunctionDescriptor::Kind::Line;
    else if (kind == "ring")
        d.kind = WaveFunctionDescriptor::Kind::Ring;
    else
        throw SpecViolation("descriptor field 'kind' must be \"line\" or \"ring\"");
    d.zeros = detail::json_roots(j, "zeros");
    d.poles = detail::json_roots(j, "poles");
    if (j.contains("period")) {
        d.period = detail::json_number(j, "period", "descriptor");
        if (!(d.period > 0.0))
            throw SpecViolation("descriptor field 'period' must be positive");
    }
    if (j.contains("gain")) {
        const auto& g = j.at("gain");
        d.gain = {detail::json_number(g, "re", "gain"), detail::json_number(g, "im", "gain")};
    }
    return d;
}

inline nlohmann::json to_json(const WaveFunctionDescriptor& d)
{
    nlohmann::json j;
    j["kind"] = d.kind == WaveFunctionDescriptor::Kind::Line ? "line" : "ring";
    j["zeros"] = detail::roots_json(d.zeros);
    j["poles"] = detail::roots_json(d.poles);
    if (d.kind == WaveFunctionDescriptor::Kind::Ring)
        j["period"] = d.period;
    if (d.gain != cplx{1.0})
        j["gain"] = {{"re", d.gain.real()}, {"im", d.gain.imag()}};
    return j;
}

inline WaveFunctionDescriptor load_descriptor(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SpecViolation("cannot open descriptor file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SpecViolation(std::string("descriptor is not valid JSON: ") + e.what());
    }
    return parse_descriptor(j);
}

} // namespace backflow
