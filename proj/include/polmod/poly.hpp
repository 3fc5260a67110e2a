#ifndef POLMOD_POLY_HPP
#define POLMOD_POLY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace polmod {

// Upper bound on ell*n; exponent storage is a fixed inline array.
constexpr int kMaxVars = 64;
constexpr int kMaxExponent = 255;

struct Dims {
    int ell = 1;
    int n = 1;
    bool operator==(const Dims& o) const { return ell == o.ell && n == o.n; }
    bool operator!=(const Dims& o) const { return !(*this == o); }
    int vars() const { return ell * n; }
};

inline void check_dims(Dims d) {
    if (d.ell < 1 || d.n < 1)
        throw Error(ErrorKind::InvalidArgument, "ell and n must be positive");
    if (d.vars() > kMaxVars)
        throw Error(ErrorKind::InvalidArgument,
                    "ell*n = " + std::to_string(d.vars()) + " exceeds " + std::to_string(kMaxVars));
}

using MultiDegree = std::vector<int>;

inline int total(const MultiDegree& d) { return std::accumulate(d.begin(), d.end(), 0); }

// Exponent matrix a_{ij}, flattened row-major (index (i-1)*n + (j-1)).
// Unused trailing slots stay zero, so comparisons never need the dims.
struct ExponentMatrix {
    std::array<std::uint8_t, kMaxVars> a{};
    std::uint16_t deg = 0;

    int at(int idx) const { return a[static_cast<std::size_t>(idx)]; }
    void set(int idx, int v) {
        if (v < 0 || v > kMaxExponent)
            throw Error(ErrorKind::InvalidArgument, "exponent out of range");
        deg = static_cast<std::uint16_t>(deg - a[static_cast<std::size_t>(idx)] + v);
        a[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(v);
    }
    void add(int idx, int v) { set(idx, at(idx) + v); }

    bool operator==(const ExponentMatrix& o) const {
        return deg == o.deg && std::memcmp(a.data(), o.a.data(), kMaxVars) == 0;
    }
    bool operator!=(const ExponentMatrix& o) const { return !(*this == o); }
};

// Graded lexicographic order on the row-major flattening.
inline int grlex_compare(const ExponentMatrix& x, const ExponentMatrix& y) {
    if (x.deg != y.deg) return x.deg < y.deg ? -1 : 1;
    int c = std::memcmp(x.a.data(), y.a.data(), kMaxVars);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

struct GrlexGreater {
    bool operator()(const ExponentMatrix& x, const ExponentMatrix& y) const {
        return grlex_compare(x, y) > 0;
    }
};

struct ExponentHash {
    std::size_t operator()(const ExponentMatrix& m) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto b : m.a) {
            h ^= b;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

inline MultiDegree row_degrees(const ExponentMatrix& m, Dims d) {
    MultiDegree r(static_cast<std::size_t>(d.ell), 0);
    for (int i = 0; i < d.ell; ++i)
        for (int j = 0; j < d.n; ++j) r[static_cast<std::size_t>(i)] += m.at(i * d.n + j);
    return r;
}

struct Permutation {
    std::vector<int> images; // 1-based, images[j-1] = sigma(j)

    int n() const { return static_cast<int>(images.size()); }
    int operator()(int j) const { return images[static_cast<std::size_t>(j - 1)]; }

    static Permutation identity(int n) {
        Permutation p;
        p.images.resize(static_cast<std::size_t>(n));
        std::iota(p.images.begin(), p.images.end(), 1);
        return p;
    }
    static Permutation transposition(int n, int a, int b) {
        Permutation p = identity(n);
        std::swap(p.images[static_cast<std::size_t>(a - 1)], p.images[static_cast<std::size_t>(b - 1)]);
        return p;
    }
    // (tau * sigma)(j) = tau(sigma(j))
    Permutation compose_after(const Permutation& sigma) const {
        Permutation r;
        r.images.resize(sigma.images.size());
        for (std::size_t j = 0; j < sigma.images.size(); ++j)
            r.images[j] = (*this)(sigma.images[j]);
        return r;
    }
    bool valid() const {
        std::vector<bool> seen(images.size() + 1, false);
        for (int v : images) {
            if (v < 1 || v > n() || seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = true;
        }
        return true;
    }
};

class Poly {
public:
    struct Term {
        ExponentMatrix mono;
        Rational coeff;
    };

    Poly() = default;
    explicit Poly(Dims d) : dims_(d) { check_dims(d); }

    static Poly constant(Dims d, const Rational& c) {
        Poly p(d);
        if (!polmod::is_zero(c)) p.terms_.push_back({ExponentMatrix{}, c});
        return p;
    }
    static Poly variable(Dims d, int i, int j) {
        Poly p(d);
        p.check_index(i, j);
        ExponentMatrix m;
        m.set(p.index(i, j), 1);
        p.terms_.push_back({m, Rational(1)});
        return p;
    }
    static Poly monomial(Dims d, const ExponentMatrix& m, const Rational& c) {
        Poly p(d);
        if (!polmod::is_zero(c)) p.terms_.push_back({m, c});
        return p;
    }
    // Sorts, merges duplicates and drops zeros.
    static Poly from_terms(Dims d, std::vector<Term> ts) {
        Poly p(d);
        std::sort(ts.begin(), ts.end(),
                  [](const Term& x, const Term& y) { return grlex_compare(x.mono, y.mono) > 0; });
        for (auto& t : ts) {
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coeff += t.coeff;
            } else {
                if (!p.terms_.empty() && polmod::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
                p.terms_.push_back(std::move(t));
            }
        }
        if (!p.terms_.empty() && polmod::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
        return p;
    }
    // Caller guarantees strictly decreasing grlex order and nonzero coefficients.
    static Poly from_sorted_terms(Dims d, std::vector<Term> ts) {
        Poly p(d);
        p.terms_ = std::move(ts);
        return p;
    }

    Dims dims() const { return dims_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int index(int i, int j) const { return (i - 1) * dims_.n + (j - 1); }
    void check_index(int i, int j) const {
        if (i < 1 || i > dims_.ell || j < 1 || j > dims_.n)
            throw Error(ErrorKind::IndexOutOfRange,
                        "x[" + std::to_string(i) + "," + std::to_string(j) + "] outside " +
                            std::to_string(dims_.ell) + "x" + std::to_string(dims_.n));
    }
    void check_row(int i) const {
        if (i < 1 || i > dims_.ell)
            throw Error(ErrorKind::IndexOutOfRange, "row " + std::to_string(i) + " outside 1.." +
                                                        std::to_string(dims_.ell));
    }

    Rational coeff(const ExponentMatrix& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const ExponentMatrix& x) {
            return grlex_compare(t.mono, x) > 0;
        });
        if (it != terms_.end() && it->mono == m) return it->coeff;
        return Rational(0);
    }

    int max_total_degree() const { return terms_.empty() ? -1 : terms_.front().mono.deg; }

    bool operator==(const Poly& o) const {
        if (dims_ != o.dims_ || terms_.size() != o.terms_.size()) return false;
        for (std::size_t k = 0; k < terms_.size(); ++k)
            if (terms_[k].mono != o.terms_[k].mono || terms_[k].coeff != o.terms_[k].coeff) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Total order used only for deduplicating containers.
    bool operator<(const Poly& o) const {
        if (dims_.ell != o.dims_.ell) return dims_.ell < o.dims_.ell;
        if (dims_.n != o.dims_.n) return dims_.n < o.dims_.n;
        std::size_t k = 0;
        for (; k < terms_.size() && k < o.terms_.size(); ++k) {
            int c = grlex_compare(terms_[k].mono, o.terms_[k].mono);
            if (c != 0) return c > 0;
            int cc = cmp(terms_[k].coeff, o.terms_[k].coeff);
            if (cc != 0) return cc < 0;
        }
        return terms_.size() < o.terms_.size();
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend Poly operator+(const Poly& x, const Poly& y) { return combine(x, y, 1); }
    friend Poly operator-(const Poly& x, const Poly& y) { return combine(x, y, -1); }

    friend Poly operator*(const Rational& c, const Poly& f) {
        if (polmod::is_zero(c)) return Poly(f.dims_);
        Poly r = f;
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }
    friend Poly operator*(const Poly& f, const Rational& c) { return c * f; }

    friend Poly operator*(const Poly& x, const Poly& y) {
        x.same_dims(y);
        std::vector<Term> ts;
        ts.reserve(x.terms_.size() * y.terms_.size());
        const int nv = x.dims_.vars();
        for (const auto& s : x.terms_)
            for (const auto& t : y.terms_) {
                Term u{s.mono, s.coeff * t.coeff};
                for (int v = 0; v < nv; ++v)
                    if (t.mono.at(v)) u.mono.add(v, t.mono.at(v));
                ts.push_back(std::move(u));
            }
        return from_terms(x.dims_, std::move(ts));
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(unsigned e) const {
        Poly r = constant(dims_, 1);
        for (unsigned k = 0; k < e; ++k) r = r * *this;
        return r;
    }

    void same_dims(const Poly& o) const {
        if (dims_ != o.dims_) throw Error(ErrorKind::DimensionMismatch, "polynomials live in different rings");
    }

private:
    static Poly combine(const Poly& x, const Poly& y, int sign) {
        x.same_dims(y);
        Poly r(x.dims_);
        r.terms_.reserve(x.terms_.size() + y.terms_.size());
        std::size_t a = 0, b = 0;
        while (a < x.terms_.size() || b < y.terms_.size()) {
            int c;
            if (a == x.terms_.size()) c = -1;
            else if (b == y.terms_.size()) c = 1;
            else c = grlex_compare(x.terms_[a].mono, y.terms_[b].mono);
            if (c > 0) {
                r.terms_.push_back(x.terms_[a++]);
            } else if (c < 0) {
                r.terms_.push_back(y.terms_[b++]);
                if (sign < 0) r.terms_.back().coeff = -r.terms_.back().coeff;
            } else {
                Rational s = sign > 0 ? Rational(x.terms_[a].coeff + y.terms_[b].coeff)
                                      : Rational(x.terms_[a].coeff - y.terms_[b].coeff);
                if (!polmod::is_zero(s)) r.terms_.push_back({x.terms_[a].mono, s});
                ++a;
                ++b;
            }
        }
        return r;
    }

    Dims dims_{};
    std::vector<Term> terms_;
};

inline Integer falling(int a, int p) {
    Integer r = 1;
    for (int k = 0; k < p; ++k) r *= (a - k);
    return r;
}

// d^p f / d x_{ij}^p
inline Poly derive(const Poly& f, int i, int j, int p = 1) {
    f.check_index(i, j);
    if (p < 1) throw Error(ErrorKind::InvalidArgument, "derivative order must be positive");
    const int idx = f.index(i, j);
    std::vector<Poly::Term> out;
    for (const auto& t : f.terms()) {
        int a = t.mono.at(idx);
        if (a < p) continue;
        Poly::Term u{t.mono, t.coeff * Rational(falling(a, p))};
        u.mono.set(idx, a - p);
        out.push_back(std::move(u));
    }
    // Lowering one fixed coordinate by p keeps the grlex order.
    return Poly::from_sorted_terms(f.dims(), std::move(out));
}

// E_{i,k}^{(p)} = sum_j x_{ij} d^p/dx_{kj}^p
inline Poly polarize(const Poly& f, int i, int k, int p = 1) {
    f.check_row(i);
    f.check_row(k);
    if (p < 1) throw Error(ErrorKind::InvalidArgument, "polarization order must be positive");
    const int n = f.dims().n;
    std::vector<Poly::Term> out;
    for (const auto& t : f.terms()) {
        for (int j = 1; j <= n; ++j) {
            const int src = f.index(k, j);
            int a = t.mono.at(src);
            if (a < p) continue;
            Poly::Term u{t.mono, t.coeff * Rational(falling(a, p))};
            u.mono.set(src, a - p);
            u.mono.add(f.index(i, j), 1);
            out.push_back(std::move(u));
        }
    }
    return Poly::from_terms(f.dims(), std::move(out));
}

// x_{ij} -> x_{i,sigma(j)}
inline Poly permute(const Poly& f, const Permutation& sigma) {
    const Dims d = f.dims();
    if (sigma.n() != d.n || !sigma.valid())
        throw Error(ErrorKind::DimensionMismatch, "permutation does not act on n columns");
    std::vector<Poly::Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
        Poly::Term u{ExponentMatrix{}, t.coeff};
        for (int i = 0; i < d.ell; ++i)
            for (int j = 0; j < d.n; ++j) {
                int a = t.mono.at(i * d.n + j);
                if (a) u.mono.set(i * d.n + (sigma(j + 1) - 1), a);
            }
        out.push_back(std::move(u));
    }
    return Poly::from_terms(d, std::move(out));
}

inline std::string degree_string(const MultiDegree& d) {
    std::string s = "(";
    for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + std::to_string(d[k]);
    return s + ")";
}

inline bool is_homogeneous(const Poly& f) {
    if (f.is_zero()) return true;
    MultiDegree d0 = row_degrees(f.terms().front().mono, f.dims());
    for (const auto& t : f.terms())
        if (row_degrees(t.mono, f.dims()) != d0) return false;
    return true;
}

inline MultiDegree multidegree(const Poly& f) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial has no multidegree");
    MultiDegree d0 = row_degrees(f.terms().front().mono, f.dims());
    for (const auto& t : f.terms()) {
        MultiDegree d = row_degrees(t.mono, f.dims());
        if (d != d0)
            throw Error(ErrorKind::NonHomogeneous,
                        "terms of multidegree " + degree_string(d0) + " and " + degree_string(d));
    }
    return d0;
}

inline bool supported_on_row(const Poly& f, int row) {
    const Dims d = f.dims();
    for (const auto& t : f.terms())
        for (int i = 1; i <= d.ell; ++i)
            if (i != row)
                for (int j = 1; j <= d.n; ++j)
                    if (t.mono.at(f.index(i, j))) return false;
    return true;
}

inline void check_degree_vector(const Poly& f, const MultiDegree& d) {
    if (static_cast<int>(d.size()) != f.dims().ell)
        throw Error(ErrorKind::DegreeMismatch, "degree vector length differs from ell");
    for (int v : d)
        if (v < 0) throw Error(ErrorKind::DegreeMismatch, "negative degree component");
}

// E^d = d_1!/|d|! * E_{ell,1}^{d_ell} o ... o E_{2,1}^{d_2}
inline Poly polarization_up(const Poly& f, const MultiDegree& d) {
    check_degree_vector(f, d);
    if (!supported_on_row(f, 1))
        throw Error(ErrorKind::DegreeMismatch, "polarization_up expects a row-1 polynomial");
    if (f.is_zero()) return f;
    if (!is_homogeneous(f) || f.max_total_degree() != total(d))
        throw Error(ErrorKind::DegreeMismatch, "generator degree differs from |d| = " + std::to_string(total(d)));
    Poly g = f;
    for (int i = 2; i <= f.dims().ell; ++i)
        for (int r = 0; r < d[static_cast<std::size_t>(i - 1)]; ++r) g = polarize(g, i, 1, 1);
    Rational scale(factorial(static_cast<unsigned>(d[0])), factorial(static_cast<unsigned>(total(d))));
    scale.canonicalize();
    return scale * g;
}

// E_d = 1/(d_2!...d_ell!) * E_{1,2}^{d_2} o ... o E_{1,ell}^{d_ell}
inline Poly restitution(const Poly& f, const MultiDegree& d) {
    check_degree_vector(f, d);
    if (f.is_zero()) return f;
    if (multidegree(f) != d)
        throw Error(ErrorKind::DegreeMismatch, "polynomial is not of multidegree " + degree_string(d));
    Poly g = f;
    Integer denom = 1;
    for (int i = f.dims().ell; i >= 2; --i) {
        for (int r = 0; r < d[static_cast<std::size_t>(i - 1)]; ++r) g = polarize(g, 1, i, 1);
        denom *= factorial(static_cast<unsigned>(d[static_cast<std::size_t>(i - 1)]));
    }
    Rational scale(Integer(1), denom);
    scale.canonicalize();
    return scale * g;
}

// x_{ij} <- sum_k m_{ik} x_{kj} for an ell x ell matrix m.
inline Poly gl_substitute(const Poly& f, const std::vector<std::vector<Rational>>& m) {
    const Dims d = f.dims();
    std::vector<Poly> image(static_cast<std::size_t>(d.vars()), Poly(d));
    for (int i = 1; i <= d.ell; ++i)
        for (int j = 1; j <= d.n; ++j) {
            Poly s(d);
            for (int k = 1; k <= d.ell; ++k)
                s += m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] * Poly::variable(d, k, j);
            image[static_cast<std::size_t>(f.index(i, j))] = s;
        }
    Poly r(d);
    for (const auto& t : f.terms()) {
        Poly prod = Poly::constant(d, t.coeff);
        for (int v = 0; v < d.vars(); ++v)
            if (t.mono.at(v)) prod = prod * image[static_cast<std::size_t>(v)].pow(static_cast<unsigned>(t.mono.at(v)));
        r += prod;
    }
    return r;
}

// Canonical text form, e.g. "3*x[1,2]^2*x[2,1] - 1/2*x[1,1]".
inline std::string render(const Poly& f) {
    if (f.is_zero()) return "0";
    const Dims d = f.dims();
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        Rational c = t.coeff;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        first = false;
        std::string mono;
        for (int i = 1; i <= d.ell; ++i)
            for (int j = 1; j <= d.n; ++j) {
                int a = t.mono.at(f.index(i, j));
                if (!a) continue;
                if (!mono.empty()) mono += "*";
                mono += "x[" + std::to_string(i) + "," + std::to_string(j) + "]";
                if (a > 1) mono += "^" + std::to_string(a);
            }
        if (mono.empty()) out += to_string(c);
        else if (c == 1) out += mono;
        else out += to_string(c) + "*" + mono;
    }
    return out;
}

} // namespace polmod

#endif
