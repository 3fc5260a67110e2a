#ifndef POLMOD_GENERATORS_HPP
#define POLMOD_GENERATORS_HPP

#include <cctype>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "closure.hpp"
#include "symfunc.hpp"

namespace polmod {

// Leaf of a generator expression: a symmetric function b[lambda] in row 1, or a variable x[i,j].
struct Atom {
    char kind = 'x'; // one of p e h m s x
    Partition part;  // for p e h m s
    int i = 0, j = 0; // for x

    bool operator<(const Atom& o) const {
        return std::tie(kind, part, i, j) < std::tie(o.kind, o.part, o.i, o.j);
    }
    bool operator==(const Atom& o) const {
        return kind == o.kind && part == o.part && i == o.i && j == o.j;
    }
    std::string render() const {
        if (kind == 'x') return "x[" + std::to_string(i) + "," + std::to_string(j) + "]";
        std::string s(1, kind);
        s += "[";
        for (std::size_t k = 0; k < part.size(); ++k) s += (k ? "," : "") + std::to_string(part[k]);
        return s + "]";
    }
};

using AtomProduct = std::map<Atom, int>;

// Canonical sum-of-products form; parentheses are multiplied out while parsing.
struct Expr {
    std::map<AtomProduct, Rational> terms;

    static Expr constant(const Rational& c) {
        Expr e;
        if (!polmod::is_zero(c)) e.terms[{}] = c;
        return e;
    }
    static Expr atom(const Atom& a) {
        Expr e;
        e.terms[{{a, 1}}] = 1;
        return e;
    }
    Expr operator+(const Expr& o) const {
        Expr r = *this;
        for (auto& [k, c] : o.terms) {
            auto& slot = r.terms[k];
            slot += c;
            if (polmod::is_zero(slot)) r.terms.erase(k);
        }
        return r;
    }
    Expr operator-() const {
        Expr r = *this;
        for (auto& [k, c] : r.terms) c = -c;
        return r;
    }
    Expr operator*(const Expr& o) const {
        Expr r;
        for (auto& [k1, c1] : terms)
            for (auto& [k2, c2] : o.terms) {
                AtomProduct k = k1;
                for (auto& [a, p] : k2) k[a] += p;
                Expr t;
                t.terms[k] = c1 * c2;
                r = r + t;
            }
        return r;
    }
    bool operator==(const Expr& o) const { return terms == o.terms; }
};

inline std::string render(const Expr& e) {
    if (e.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [k, c0] : e.terms) {
        Rational c = c0;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        std::string prod;
        for (auto& [a, p] : k) {
            if (!prod.empty()) prod += "*";
            prod += a.render();
            if (p > 1) prod += "^" + std::to_string(p);
        }
        if (prod.empty()) out += to_string(c);
        else if (c == 1) out += prod;
        else out += to_string(c) + "*" + prod;
    }
    return out;
}

struct GeneratorSpec {
    enum class Type { Expression, Family, Vandermonde };
    Type type = Type::Expression;
    Expr expr;
    char family = 0; // A B C T
    int degree = 0;

    bool operator==(const GeneratorSpec& o) const {
        return type == o.type && expr == o.expr && family == o.family && degree == o.degree;
    }
};

inline std::string render(const GeneratorSpec& g) {
    switch (g.type) {
    case GeneratorSpec::Type::Family: return std::string("family:") + g.family + ":" + std::to_string(g.degree);
    case GeneratorSpec::Type::Vandermonde: return "vandermonde";
    default: return render(g.expr);
    }
}

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string s) : s_(std::move(s)) {}

    Expr parse() {
        Expr e = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::Parse, msg + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    long integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        if (pos_ - start > 9) fail("integer too large");
        return std::stol(s_.substr(start, pos_ - start));
    }
    Expr sum() {
        skip();
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        Expr e = product();
        if (neg) e = -e;
        for (;;) {
            if (accept('+')) e = e + product();
            else if (accept('-')) e = e + (-product());
            else return e;
        }
    }
    Expr product() {
        Expr e = power();
        while (accept('*')) e = e * power();
        return e;
    }
    Expr power() {
        Expr base = primary();
        if (accept('^')) {
            long k = integer();
            Expr r = Expr::constant(1);
            for (long t = 0; t < k; ++t) r = r * base;
            return r;
        }
        return base;
    }
    Expr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = sum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = integer();
            long den = 1;
            std::size_t save = pos_;
            if (accept('/')) {
                skip();
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) den = integer();
                else pos_ = save;
            }
            if (den == 0) fail("zero denominator");
            return Expr::constant(make_rational(num, den));
        }
        if (std::string("pehmsx").find(c) != std::string::npos) {
            ++pos_;
            expect('[');
            std::vector<int> ints;
            skip();
            if (!accept(']')) {
                do ints.push_back(static_cast<int>(integer()));
                while (accept(','));
                expect(']');
            }
            Atom a;
            a.kind = c;
            if (c == 'x') {
                if (ints.size() != 2) fail("x[i,j] takes two indices");
                a.i = ints[0];
                a.j = ints[1];
                if (a.i < 1 || a.j < 1) fail("variable indices start at 1");
            } else {
                for (int v : ints)
                    if (v <= 0) fail("partition parts must be positive");
                a.part = make_partition(ints);
                if (a.part.empty()) return Expr::constant(1);
            }
            return Expr::atom(a);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
};

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\n\r"), b = s.find_last_not_of(" \t\n\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

} // namespace detail

inline GeneratorSpec parse_generator(const std::string& text) {
    std::string t = detail::trim(text);
    GeneratorSpec g;
    if (t == "vandermonde") {
        g.type = GeneratorSpec::Type::Vandermonde;
        return g;
    }
    if (t.rfind("family:", 0) == 0) {
        auto second = t.find(':', 7);
        if (second == std::string::npos || second != 8)
            throw Error(ErrorKind::Parse, "family syntax is family:<A|B|C|T>:<degree>, got '" + t + "'");
        char f = t[7];
        if (std::string("ABCT").find(f) == std::string::npos)
            throw Error(ErrorKind::UnknownFamily, std::string("unknown family '") + f + "'");
        std::string ds = t.substr(9);
        if (ds.empty() || ds.find_first_not_of("0123456789") != std::string::npos || ds.size() > 4)
            throw Error(ErrorKind::Parse, "bad family degree in '" + t + "'");
        g.type = GeneratorSpec::Type::Family;
        g.family = f;
        g.degree = std::stoi(ds);
        if (g.degree < 1) throw Error(ErrorKind::Parse, "family degree must be positive");
        return g;
    }
    g.expr = detail::ExprParser(t).parse();
    return g;
}

inline Poly expand(const Expr& e, Dims d) {
    Poly f(d);
    std::map<Atom, Poly> cache;
    for (auto& [k, c] : e.terms) {
        Poly t = Poly::constant(d, c);
        for (auto& [a, p] : k) {
            auto it = cache.find(a);
            if (it == cache.end()) {
                Poly v(d);
                if (a.kind == 'x') v = Poly::variable(d, a.i, a.j);
                else v = expand_basis(*basis_from_letter(a.kind), a.part, 1, d);
                it = cache.emplace(a, v).first;
            }
            t = t * it->second.pow(static_cast<unsigned>(p));
        }
        f += t;
    }
    return f;
}

inline std::vector<Poly> family_polys(char family, int deg, Dims d) {
    std::vector<Poly> out;
    auto var_pow = [&](int j, int e) {
        ExponentMatrix m;
        m.set(j - 1, e);
        return Poly::monomial(d, m, 1);
    };
    switch (family) {
    case 'A':
        for (int j = 1; j <= d.n; ++j) out.push_back(var_pow(j, deg));
        break;
    case 'B':
        for (int i = 1; i <= d.n; ++i)
            for (int j = 1; j <= d.n; ++j)
                if (i != j) out.push_back(var_pow(i, deg) - var_pow(j, deg));
        break;
    case 'C':
    case 'T': {
        const bool squarefree = family == 'C';
        std::vector<int> e(static_cast<std::size_t>(d.n), 0);
        std::function<void(int, int)> rec = [&](int j, int left) {
            if (j == d.n) {
                if (left == 0) {
                    ExponentMatrix m;
                    for (int k = 0; k < d.n; ++k)
                        if (e[static_cast<std::size_t>(k)]) m.set(k, e[static_cast<std::size_t>(k)]);
                    out.push_back(Poly::monomial(d, m, 1));
                }
                return;
            }
            int cap = squarefree ? std::min(1, left) : left;
            for (int a = cap; a >= 0; --a) {
                e[static_cast<std::size_t>(j)] = a;
                rec(j + 1, left - a);
            }
            e[static_cast<std::size_t>(j)] = 0;
        };
        rec(0, deg);
        break;
    }
    default: throw Error(ErrorKind::UnknownFamily, std::string("unknown family '") + family + "'");
    }
    if (out.empty())
        throw Error(ErrorKind::ZeroPolynomial, std::string("family ") + family + " is empty for n = " + std::to_string(d.n));
    return out;
}

inline Poly vandermonde(Dims d) {
    Poly f = Poly::constant(d, 1);
    for (int i = 1; i <= d.n; ++i)
        for (int j = i + 1; j <= d.n; ++j) f = f * (Poly::variable(d, 1, i) - Poly::variable(d, 1, j));
    return f;
}

// Families are stable as given; plain expressions generate their orbits.
inline GeneratorFamily build_family(const std::vector<GeneratorSpec>& specs, Dims d) {
    GeneratorFamily F;
    bool all_families = !specs.empty();
    for (auto& g : specs) {
        switch (g.type) {
        case GeneratorSpec::Type::Family:
            for (auto& p : family_polys(g.family, g.degree, d)) F.polys.push_back(p);
            break;
        case GeneratorSpec::Type::Vandermonde:
            F.polys.push_back(vandermonde(d));
            all_families = false;
            break;
        case GeneratorSpec::Type::Expression:
            F.polys.push_back(expand(g.expr, d));
            all_families = false;
            break;
        }
    }
    F.mode = all_families ? GeneratorFamily::Mode::Verbatim : GeneratorFamily::Mode::Orbit;
    return F;
}

inline GeneratorFamily build_family(const std::vector<std::string>& texts, Dims d) {
    std::vector<GeneratorSpec> specs;
    for (auto& t : texts) specs.push_back(parse_generator(t));
    return build_family(specs, d);
}

} // namespace polmod

#endif
