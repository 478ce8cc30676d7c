#pragma once

#include <json.hpp>

#include "qzrp/laurent.hpp"
#include "qzrp/tabchain.hpp"
#include "qzrp/zrp.hpp"

namespace qzrp {

using nlohmann::json;

// Polynomial wire format: an array of {"t": int, "x": [int...], "c": string}
// in canonical (t, x)-lexicographic term order.
inline json poly_to_json(const LaurentPoly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json term;
        term["t"] = e.t_exp;
        term["x"] = e.x;
        term["c"] = c.str();
        terms.push_back(std::move(term));
    }
    return terms;
}

inline LaurentPoly poly_from_json(const json& terms, int nvars) {
    LaurentPoly p(nvars);
    for (const auto& term : terms) {
        Exponent e{term.at("t").get<int>(), term.at("x").get<std::vector<int>>()};
        p.add_term(e, BigInt(term.at("c").get<std::string>()));
    }
    return p;
}

inline json transition_to_json(const Transition& tr) {
    json j;
    j["from"] = tr.from.str();
    j["trigger"] = {tr.trigger.row, tr.trigger.col};
    j["to"] = tr.to.str();
    j["rate"] = poly_to_json(tr.rate);
    return j;
}

inline json config_to_json(const ZrpConfig& w) { return w.str(); }

}  // namespace qzrp
