#ifndef POLMOD_REPORT_HPP
#define POLMOD_REPORT_HPP

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "exceptions.hpp"
#include "frobenius.hpp"
#include "generators.hpp"

namespace polmod {

namespace detail {

// Integers as JSON numbers while they fit; otherwise strings.
inline nlohmann::json coeff_json(const Rational& c) {
    if (is_integer(c) && c.get_num().fits_slong_p()) return c.get_num().get_si();
    return to_string(c);
}

inline nlohmann::json symseries_json(const SymSeries& s) {
    std::vector<Partition> keys;
    for (auto& [mu, c] : s.coeffs) keys.push_back(mu);
    std::sort(keys.begin(), keys.end(), q_order);
    nlohmann::json arr = nlohmann::json::array();
    for (auto& mu : keys) arr.push_back({{"mu", mu}, {"coeff", coeff_json(s.coeffs.at(mu))}});
    return arr;
}

} // namespace detail

inline nlohmann::json frobenius_json(const FrobeniusSeries& f) {
    std::vector<std::pair<Partition, Partition>> keys;
    for (auto& [k, c] : f.coeffs) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [](auto& x, auto& y) {
        if (x.second != y.second) return x.second > y.second;
        return detail::q_order(x.first, y.first);
    });
    nlohmann::json arr = nlohmann::json::array();
    for (auto& k : keys)
        arr.push_back({{"mu", k.first}, {"lambda", k.second}, {"coeff", detail::coeff_json(f.coeffs.at(k))}});
    return arr;
}

struct ModuleReport {
    int n = 0, ell = 0;
    std::vector<std::string> generators;
    FrobeniusSeries frobenius;
    SymSeries hilbert;
    std::size_t dimension = 0;
};

inline ModuleReport module_report(const std::vector<GeneratorSpec>& gens, Dims d, int threads) {
    ModuleReport r;
    r.n = d.n;
    r.ell = d.ell;
    for (auto& g : gens) r.generators.push_back(render(g));
    GradedSpan M = polarization_module(build_family(gens, d), threads);
    r.frobenius = frobenius_series(M, threads);
    r.hilbert = hilbert_series(M);
    r.dimension = M.total_dimension();
    return r;
}

inline nlohmann::json module_json(const ModuleReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["ell"] = r.ell;
    j["generators"] = r.generators;
    j["frobenius"] = frobenius_json(r.frobenius);
    j["hilbert"] = detail::symseries_json(r.hilbert);
    j["hilbert_h_basis"] = detail::symseries_json(schur_to_h(r.hilbert));
    j["dimension"] = r.dimension;
    return j;
}

inline nlohmann::json span_json(const GradedSpan& span, const std::vector<std::string>& generators) {
    nlohmann::json j;
    j["dims"] = {{"ell", span.dims().ell}, {"n", span.dims().n}};
    j["generators"] = generators;
    nlohmann::json comps = nlohmann::json::array();
    for (auto& d : span.degrees()) {
        nlohmann::json basis = nlohmann::json::array();
        for (auto& p : span.component(d)->basis()) basis.push_back(render(p));
        comps.push_back({{"degree", d}, {"dimension", span.dimension(d)}, {"basis", basis}});
    }
    j["components"] = comps;
    j["dimension"] = span.total_dimension();
    return j;
}

struct ClassifiedPoint {
    std::vector<Rational> abc;
    bool exception = false;
    ClassTag tag = ClassTag::H3;
};

inline nlohmann::json exceptions_json(int n, const std::vector<ClassifiedPoint>& pts) {
    nlohmann::json j;
    j["n"] = n;
    if (n >= 3) {
        std::string eq = exception_equation(n).render();
        auto pos = eq.find('=');
        j["equation"] = {{"lhs", eq.substr(0, pos)}, {"rhs", eq.substr(pos + 1)}};
    } else {
        j["equation"] = {{"lhs", "b"}, {"rhs", "0"}};
    }
    nlohmann::json arr = nlohmann::json::array();
    for (auto& p : pts) {
        nlohmann::json abc = nlohmann::json::array();
        for (auto& c : p.abc) abc.push_back(detail::coeff_json(c));
        arr.push_back({{"abc", abc}, {"exception", p.exception}, {"class", class_name(p.tag)}});
    }
    j["points"] = arr;
    return j;
}

} // namespace polmod

#endif
