#pragma once

#include <json.hpp>

#include "mukai/lattice.hpp"

namespace mukai {

using json = nlohmann::json;

// Lattice integers exceed 64 bits on long reduction paths; values that fit
// are emitted as JSON numbers, the rest as decimal strings.
inline json int_to_json(const Int& a) {
    if (fits_long(a)) return json(static_cast<long>(a.get_si()));
    return json(a.get_str());
}

inline Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw NumericError("expected integer or decimal string");
}

inline json divisor_to_json(const DivisorClass& d) {
    json a = json::array();
    for (const auto& c : d.coords) a.push_back(int_to_json(c));
    return a;
}

inline DivisorClass divisor_from_json(const json& j) {
    if (!j.is_array()) throw NumericError("expected coordinate array");
    std::vector<Int> c;
    for (const auto& x : j) c.push_back(int_from_json(x));
    return DivisorClass(std::move(c));
}

}  // namespace mukai
