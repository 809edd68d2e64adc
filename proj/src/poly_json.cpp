#include "kleinian/poly_json.hpp"

namespace kleinian {

using nlohmann::json;

json poly_to_json(const GradedPoly& p) {
    json vars = json::array(), weights = json::array(), capped = json::array();
    const Ring& r = p.ring();
    for (const Symbol& s : r.symbols()) {
        vars.push_back(s.name);
        weights.push_back(s.weight);
        capped.push_back(s.capped);
    }
    json terms = json::array();
    for (const Term& t : p.terms()) {
        json exps = json::array();
        for (size_t i = 0; i < r.size(); ++i) exps.push_back(int(t.e[i]));
        terms.push_back(json{{"coeff", t.c.str()}, {"exps", exps}});
    }
    return json{{"vars", vars}, {"weights", weights}, {"capped", capped}, {"terms", terms}};
}

GradedPoly poly_from_json(const json& j) {
    std::vector<Symbol> syms;
    const auto& vars = j.at("vars");
    const auto& weights = j.at("weights");
    for (size_t i = 0; i < vars.size(); ++i) {
        bool capped = j.contains("capped") ? j.at("capped").at(i).get<bool>() : false;
        syms.push_back({vars.at(i).get<std::string>(), weights.at(i).get<int>(), capped});
    }
    Ring ring(syms);
    std::vector<Term> ts;
    for (const auto& jt : j.at("terms")) {
        Term t;
        t.e = zero_exps();
        const auto& exps = jt.at("exps");
        if (exps.size() != ring.size())
            throw std::invalid_argument("poly_from_json: exps length mismatch");
        for (size_t i = 0; i < exps.size(); ++i) {
            int e = exps.at(i).get<int>();
            if (e < 0 || e > 250) throw std::invalid_argument("poly_from_json: bad exponent");
            t.e[i] = static_cast<uint8_t>(e);
        }
        t.c = Rational::from_string(jt.at("coeff").get<std::string>());
        ts.push_back(std::move(t));
    }
    return GradedPoly(ring, std::move(ts));
}

json series_to_json(const Series& s) {
    json j = poly_to_json(s.poly());
    j["cap"] = s.cap();
    return j;
}

Series series_from_json(const json& j) {
    return Series(poly_from_json(j), j.at("cap").get<int>());
}

}  // namespace kleinian
