#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "expzero/poly.hpp"

namespace expzero {

using Json = nlohmann::json;

inline Json scalar_to_json(const ExactScalar& s) {
    Json syms = Json::object();
    for (const auto& [name, p] : s.syms) syms[name] = p;
    return Json{{"re", rational_to_string(s.coef.re)},
                {"im", rational_to_string(s.coef.im)},
                {"syms", syms}};
}

inline ExactScalar scalar_from_json(const Json& j) {
    ExactScalar s;
    s.coef.re = rational_from_string(j.at("re").get<std::string>());
    s.coef.im = j.contains("im") ? rational_from_string(j.at("im").get<std::string>())
                                 : Rational(0);
    if (j.contains("syms")) {
        for (const auto& [name, p] : j.at("syms").items()) {
            int e = p.get<int>();
            if (e != 0) s.syms[name] = e;
        }
    }
    if (s.coef.is_zero()) s.syms.clear();
    return s;
}

// Interchange encoding. Terms are emitted in the canonical key order, so the
// bytes of a given polynomial are identical across runs.
inline Json poly_to_json(const Poly& p) {
    Json vars = Json::array();
    for (const auto& v : p.vars()) vars.push_back(v);
    Json units = Json::array();
    for (std::size_t i = 0; i < p.vars().size(); ++i)
        if (p.unit_flags()[i]) units.push_back(p.vars()[i]);
    Json terms = Json::array();
    for (const auto& [k, c] : p.terms()) {
        Json t = scalar_to_json(ExactScalar(c, k.syms));
        Json exps = Json::array();
        for (auto e : k.exps) exps.push_back(e);
        t["exps"] = exps;
        terms.push_back(t);
    }
    return Json{{"vars", vars}, {"unit_vars", units}, {"terms", terms}};
}

inline Poly poly_from_json(const Json& j) {
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    std::vector<std::string> units;
    if (j.contains("unit_vars")) units = j.at("unit_vars").get<std::vector<std::string>>();
    std::vector<bool> flags(vars.size(), false);
    for (const auto& u : units) {
        bool found = false;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == u) { flags[i] = true; found = true; }
        if (!found) throw InputError("unit variable " + u + " not in vars");
    }
    Poly p(vars, flags);
    if (j.contains("terms")) {
        for (const auto& t : j.at("terms")) {
            ExactScalar s = scalar_from_json(t);
            auto exps = t.at("exps").get<std::vector<std::int64_t>>();
            p.add_term(std::move(exps), s);
        }
    }
    return p;
}

}  // namespace expzero
