#ifndef POLMOD_FROBENIUS_HPP
#define POLMOD_FROBENIUS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "closure.hpp"
#include "symfunc.hpp"

namespace polmod {

// sum b_{lambda,mu} B_mu(q) B_lambda(w); keys are (mu, lambda).
// basis is Schur for Frobenius characteristics, Homogeneous for h-forms.
struct FrobeniusSeries {
    int n = 0;
    int ell = 0; // 0: not truncated
    Basis basis = Basis::Schur;
    std::map<std::pair<Partition, Partition>, Rational> coeffs;

    void add(const Partition& mu, const Partition& lambda, const Rational& c) {
        if (polmod::is_zero(c)) return;
        auto key = std::make_pair(mu, lambda);
        auto& slot = coeffs[key];
        slot += c;
        if (polmod::is_zero(slot)) coeffs.erase(key);
    }
    Rational at(const Partition& mu, const Partition& lambda) const {
        auto it = coeffs.find({mu, lambda});
        return it == coeffs.end() ? Rational(0) : it->second;
    }
    bool operator==(const FrobeniusSeries& o) const {
        return n == o.n && basis == o.basis && coeffs == o.coeffs;
    }
    bool operator!=(const FrobeniusSeries& o) const { return !(*this == o); }
};

inline FrobeniusSeries truncate(const FrobeniusSeries& s, int ell) {
    FrobeniusSeries out = s;
    out.ell = ell;
    out.coeffs.clear();
    for (auto& [k, c] : s.coeffs)
        if (length(k.first) <= ell) out.coeffs.emplace(k, c);
    return out;
}

inline SymSeries truncate(const SymSeries& s, int ell) {
    SymSeries out;
    out.basis = s.basis;
    for (auto& [mu, c] : s.coeffs)
        if (length(mu) <= ell) out.coeffs.emplace(mu, c);
    return out;
}

// Trace of sigma on V_d, read off at the pivots of the reduced basis.
inline Rational component_character(const GradedSpan& span, const MultiDegree& d, const Permutation& sigma) {
    const Component* comp = span.component(d);
    if (!comp) return 0;
    Rational tr = 0;
    for (std::size_t k = 0; k < comp->row_count(); ++k)
        tr += comp->pivot_coefficient(permute(comp->row_poly(k), sigma), k);
    if (!is_integer(tr)) throw Error(ErrorKind::NonIntegral, "character value " + to_string(tr) + " is not an integer");
    return tr;
}

namespace detail {

inline std::map<Partition, Integer> isotype_from_characters(int n, const std::vector<CycleType>& cts,
                                                            const std::vector<Rational>& chi, std::size_t dim) {
    std::map<Partition, Integer> out;
    Integer nf = factorial(static_cast<unsigned>(n));
    Integer check = 0;
    for (auto& lam : partitions(n)) {
        Rational s = 0;
        for (std::size_t k = 0; k < cts.size(); ++k)
            s += Rational(cts[k].class_size) * chi[k] * Rational(static_cast<long>(mn_character(lam, cts[k].type)));
        s /= Rational(nf);
        if (!is_integer(s))
            throw Error(ErrorKind::NonIntegral, "multiplicity of " + partition_string(lam) + " is " + to_string(s));
        if (sgn(s) < 0)
            throw Error(ErrorKind::NegativeCoefficient, "negative multiplicity for " + partition_string(lam));
        if (sgn(s) > 0) out[lam] = s.get_num();
        check += s.get_num() * f_lambda(lam);
    }
    if (check != Integer(static_cast<unsigned long>(dim)))
        throw Error(ErrorKind::NonIntegral, "isotype dimensions do not add up to the component dimension");
    return out;
}

} // namespace detail

inline std::map<Partition, Integer> component_isotype(const GradedSpan& span, const MultiDegree& d) {
    const int n = span.dims().n;
    auto cts = cycle_types(n);
    std::vector<Rational> chi;
    for (auto& ct : cts) chi.push_back(component_character(span, d, cycle_representative(ct.type)));
    return detail::isotype_from_characters(n, cts, chi, span.dimension(d));
}

inline Poly q_monomial(const MultiDegree& d, const Rational& c) {
    Dims qd{1, static_cast<int>(d.size())};
    ExponentMatrix m;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i]) m.set(static_cast<int>(i), d[i]);
    return Poly::monomial(qd, m, c);
}

inline FrobeniusSeries frobenius_series(const GradedSpan& span, int threads = 1) {
    const Dims dims = span.dims();
    const int n = dims.n;
    auto degs = span.degrees();
    std::vector<std::map<Partition, Integer>> iso(degs.size());
    auto cts = cycle_types(n);
    std::vector<Permutation> reps;
    for (auto& ct : cts) reps.push_back(cycle_representative(ct.type));
    // warm the character memo before going parallel
    for (auto& lam : partitions(n))
        for (auto& ct : cts) mn_character(lam, ct.type);
    parallel_for(degs.size(), threads, [&](std::size_t k) {
        std::vector<Rational> chi;
        for (auto& r : reps) chi.push_back(component_character(span, degs[k], r));
        iso[k] = detail::isotype_from_characters(n, cts, chi, span.dimension(degs[k]));
    });
    FrobeniusSeries out;
    out.n = n;
    out.ell = dims.ell;
    Dims qd{1, dims.ell};
    for (auto& lam : partitions(n)) {
        Poly g(qd);
        for (std::size_t k = 0; k < degs.size(); ++k) {
            auto it = iso[k].find(lam);
            if (it != iso[k].end()) g += q_monomial(degs[k], Rational(it->second));
        }
        if (g.is_zero()) continue;
        SymSeries s = to_schur(g);
        for (auto& [mu, c] : s.coeffs) {
            if (!is_integer(c) || sgn(c) < 0)
                throw Error(ErrorKind::NegativeCoefficient,
                            "Schur coefficient " + to_string(c) + " at " + partition_string(mu));
            out.add(mu, lam, c);
        }
    }
    return out;
}

inline SymSeries hilbert_series(const GradedSpan& span) {
    Dims qd{1, span.dims().ell};
    Poly g(qd);
    for (auto& d : span.degrees()) g += q_monomial(d, Rational(static_cast<unsigned long>(span.dimension(d))));
    SymSeries s = to_schur(g);
    for (auto& [mu, c] : s.coeffs)
        if (!is_integer(c) || sgn(c) < 0)
            throw Error(ErrorKind::NegativeCoefficient, "Hilbert coefficient " + to_string(c));
    return s;
}

// s_lambda(w) -> f^lambda
inline SymSeries hilbert_from_frobenius(const FrobeniusSeries& f) {
    SymSeries out;
    for (auto& [k, c] : f.coeffs) out.add(k.first, c * Rational(f_lambda(k.second)));
    return out;
}

// sum b f^lambda s_mu(1^ell)
inline Integer series_dimension(const FrobeniusSeries& f, int ell) {
    Integer s = 0;
    for (auto& [k, c] : f.coeffs) {
        if (!is_integer(c)) throw Error(ErrorKind::NonIntegral, "non-integral series coefficient");
        s += c.get_num() * f_lambda(k.second) * schur_at_ones(k.first, ell);
    }
    return s;
}

inline FrobeniusSeries frobenius_to_h(const FrobeniusSeries& f) {
    if (f.basis != Basis::Schur) throw Error(ErrorKind::InvalidArgument, "expected a Schur-Schur series");
    FrobeniusSeries out;
    out.n = f.n;
    out.ell = f.ell;
    out.basis = Basis::Homogeneous;
    for (auto& [k, c] : f.coeffs)
        for (auto& [hm, a] : detail::jacobi_trudi(k.first))
            for (auto& [hl, b] : detail::jacobi_trudi(k.second)) out.add(hm, hl, c * Rational(a * b));
    return out;
}

inline FrobeniusSeries frobenius_from_h(const FrobeniusSeries& h) {
    if (h.basis != Basis::Homogeneous) throw Error(ErrorKind::InvalidArgument, "expected an h-h series");
    FrobeniusSeries out;
    out.n = h.n;
    out.ell = h.ell;
    out.basis = Basis::Schur;
    for (auto& [k, c] : h.coeffs)
        for (auto& [sm, a] : detail::pieri_expand(k.first))
            for (auto& [sl, b] : detail::pieri_expand(k.second)) out.add(sm, sl, c * Rational(a * b));
    return out;
}

// ---------------------------------------------------------------- oracles

enum class ClassTag { P1_SQUARED, P2, P1_CUBED, P3, H3 };

inline const char* class_name(ClassTag t) {
    switch (t) {
    case ClassTag::P1_SQUARED: return "P1_SQUARED";
    case ClassTag::P2: return "P2";
    case ClassTag::P1_CUBED: return "P1_CUBED";
    case ClassTag::P3: return "P3";
    case ClassTag::H3: return "H3";
    }
    return "?";
}

enum class OracleKind { E1Power, PowerSum, Elementary, FamilyA, FamilyB, Deg2, Deg3 };

struct OracleParams {
    int n = 0;
    int d = 0;
    ClassTag cls = ClassTag::P2;
};

namespace detail {

inline Partition w_part(int n, const Partition& tail) {
    Partition p{n - size(tail)};
    p.insert(p.end(), tail.begin(), tail.end());
    if (!is_partition(p)) throw Error(ErrorKind::InvalidArgument, "w-partition out of range for n = " + std::to_string(n));
    return p;
}

// (sum_{j=lo}^{hi} s_j(q)) s_lambda(w)
inline void add_run(FrobeniusSeries& f, int lo, int hi, const Partition& lambda) {
    for (int j = lo; j <= hi; ++j) f.add(j ? Partition{j} : Partition{}, lambda, 1);
}

} // namespace detail

// Closed-form series built symbolically, without touching the engine.
inline FrobeniusSeries oracle_series(OracleKind kind, const OracleParams& prm) {
    const int n = prm.n, d = prm.d;
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "oracle needs n >= 1");
    FrobeniusSeries f;
    f.n = n;
    using detail::add_run;
    using detail::w_part;
    auto need_n2 = [&] {
        if (n < 2) throw Error(ErrorKind::InvalidArgument, "formula requires n >= 2");
    };
    switch (kind) {
    case OracleKind::E1Power:
        add_run(f, 0, d, w_part(n, {}));
        break;
    case OracleKind::PowerSum:
        need_n2();
        add_run(f, 0, d, w_part(n, {}));
        add_run(f, 1, d - 1, w_part(n, {1}));
        break;
    case OracleKind::Elementary:
        if (n < d) throw Error(ErrorKind::InvalidArgument, "e_d formula requires n >= d");
        for (int i = 0; i <= d / 2; ++i) add_run(f, i, d - i, w_part(n, i ? Partition{i} : Partition{}));
        break;
    case OracleKind::FamilyA:
        need_n2();
        add_run(f, 0, d, w_part(n, {}));
        add_run(f, 1, d, w_part(n, {1}));
        break;
    case OracleKind::FamilyB:
        need_n2();
        add_run(f, 0, d - 1, w_part(n, {}));
        add_run(f, 1, d, w_part(n, {1}));
        break;
    case OracleKind::Deg2:
    case OracleKind::Deg3: {
        need_n2();
        // stated in the h-basis, converted with the Pieri rule
        FrobeniusSeries h;
        h.n = n;
        h.basis = Basis::Homogeneous;
        const Partition hn = w_part(n, {}), hn1 = w_part(n, {1});
        switch (prm.cls) {
        case ClassTag::P1_SQUARED:
            for (int j = 0; j <= 2; ++j) h.add(j ? Partition{j} : Partition{}, hn, 1);
            break;
        case ClassTag::P2:
            h.add({}, hn, 1);
            h.add({2}, hn, 1);
            h.add({1}, hn1, 1);
            break;
        case ClassTag::P1_CUBED:
            for (int j = 0; j <= 3; ++j) h.add(j ? Partition{j} : Partition{}, hn, 1);
            break;
        case ClassTag::P3:
            h.add({}, hn, 1);
            h.add({3}, hn, 1);
            h.add({1}, hn1, 1);
            h.add({2}, hn1, 1);
            break;
        case ClassTag::H3:
            h.add({}, hn, 1);
            h.add({2}, hn, 1);
            h.add({3}, hn, 1);
            h.add({1}, hn1, 1);
            h.add({2}, hn1, 1);
            break;
        }
        bool deg2 = prm.cls == ClassTag::P1_SQUARED || prm.cls == ClassTag::P2;
        if (deg2 != (kind == OracleKind::Deg2)) throw Error(ErrorKind::InvalidArgument, "class tag does not match degree");
        f = frobenius_from_h(h);
        break;
    }
    }
    return f;
}

// ---------------------------------------------------------------- rendering

namespace detail {

inline bool q_order(const Partition& a, const Partition& b) {
    if (size(a) != size(b)) return size(a) < size(b);
    return a > b;
}

inline std::string coeff_prefix(const Rational& c) {
    return c == 1 ? "" : to_string(c) + " ";
}

inline std::string q_atom(char letter, const Partition& mu) {
    if (mu.empty()) return "1";
    std::string s(1, letter);
    s += "[";
    for (std::size_t k = 0; k < mu.size(); ++k) s += (k ? "," : "") + std::to_string(mu[k]);
    return s + "]";
}

inline std::string w_atom(char letter, const Partition& lambda) {
    Partition tail(lambda.begin() + 1, lambda.end());
    int k = size(tail);
    std::string s(1, letter);
    s += "[n";
    if (k) s += "-" + std::to_string(k);
    for (int v : tail) s += "," + std::to_string(v);
    return s + "]";
}

// Joins signed terms as "a + b - c".
inline std::string join_signed(const std::vector<std::pair<Rational, std::string>>& items) {
    if (items.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < items.size(); ++k) {
        Rational c = items[k].first;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (k == 0) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        if (items[k].second == "1") out += to_string(c);
        else out += coeff_prefix(c) + items[k].second;
    }
    return out;
}

} // namespace detail

// Text such as "1 + 3 s[1] + s[2]".
inline std::string render_symseries(const SymSeries& s) {
    std::vector<Partition> keys;
    for (auto& [mu, c] : s.coeffs) keys.push_back(mu);
    std::sort(keys.begin(), keys.end(), detail::q_order);
    std::vector<std::pair<Rational, std::string>> items;
    for (auto& mu : keys) items.push_back({s.coeffs.at(mu), detail::q_atom(basis_letter(s.basis), mu)});
    return detail::join_signed(items);
}

// Text such as "(1 + s[1] + 2 s[2]) s[n] + (s[1] + s[2]) s[n-1,1]".
inline std::string render_frobenius(const FrobeniusSeries& f) {
    const char L = basis_letter(f.basis);
    std::map<Partition, SymSeries, std::greater<Partition>> groups;
    for (auto& [k, c] : f.coeffs) {
        auto& g = groups[k.second];
        g.basis = f.basis;
        g.add(k.first, c);
    }
    if (groups.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [lam, g] : groups) {
        std::string w = detail::w_atom(L, lam);
        std::string piece;
        bool neg = false;
        if (g.coeffs.size() == 1) {
            auto [mu, c] = *g.coeffs.begin();
            neg = sgn(c) < 0;
            Rational a = neg ? Rational(-c) : c;
            std::string q = detail::q_atom(L, mu);
            piece = detail::coeff_prefix(a) + (q == "1" ? "" : q + " ") + w;
        } else {
            piece = "(" + render_symseries(g) + ") " + w;
        }
        if (first) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        out += piece;
        first = false;
    }
    return out;
}

} // namespace polmod

#endif
