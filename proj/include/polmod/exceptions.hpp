#ifndef POLMOD_EXCEPTIONS_HPP
#define POLMOD_EXCEPTIONS_HPP

#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "closure.hpp"
#include "frobenius.hpp"
#include "symfunc.hpp"

namespace polmod {

using Matrix = std::vector<std::vector<Rational>>;

inline Matrix zeros(int r, int c) {
    return Matrix(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(c), Rational(0)));
}

inline Matrix transpose(const Matrix& m) {
    if (m.empty()) return {};
    Matrix t = zeros(static_cast<int>(m[0].size()), static_cast<int>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    Matrix out = zeros(static_cast<int>(r), static_cast<int>(c));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (sgn(a[i][t]) == 0) continue;
            for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

inline Matrix gram(const Matrix& m) { return multiply(transpose(m), m); }

// Fraction-free (Bareiss) elimination with row pivoting.
inline Rational bareiss_det(Matrix m) {
    const std::size_t n = m.size();
    for (auto& row : m)
        if (row.size() != n) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
    if (n == 0) return 1;
    Rational prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m[k][k]) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m[p][k]) == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

enum class MatrixKind { T, H, F, E, D, G };

struct StructuredMatrix {
    MatrixKind kind;
    int n;
    Matrix m;
};

// T_n: x / y in the leading (n-1)x(n-1) block, z along the last row, w down the last column, t in the corner.
inline Matrix build_T(int n, const Rational& x, const Rational& y, const Rational& z, const Rational& w,
                      const Rational& t) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "T_n needs n >= 2");
    Matrix m = zeros(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto& e = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (i < n - 1 && j < n - 1) e = i == j ? x : y;
            else if (i == n - 1 && j < n - 1) e = z;
            else if (i < n - 1 && j == n - 1) e = w;
            else e = t;
        }
    return m;
}

// H_n: n x (n-1), x / y above, z along the last row.
inline Matrix build_H(int n, const Rational& x, const Rational& y, const Rational& z) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "H_n needs n >= 2");
    Matrix m = zeros(n, n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n - 1; ++j)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = i == n - 1 ? z : (i == j ? x : y);
    return m;
}

// Rows: permutations of (2b,2b,c,...,c), lex in the positions of the 2b entries.
inline Matrix build_F(int n, const Rational& b, const Rational& c) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "F_n needs n >= 2");
    Matrix m;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            std::vector<Rational> row(static_cast<std::size_t>(n), c);
            row[static_cast<std::size_t>(p)] = 2 * b;
            row[static_cast<std::size_t>(q)] = 2 * b;
            m.push_back(row);
        }
    return m;
}

inline Matrix build_E(int n, const Rational& a, const Rational& b, const Rational& c) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "E_n needs n >= 2");
    Matrix m;
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> row;
        for (int j = 0; j < n; ++j) row.push_back(i == j ? Rational(3 * a) : b);
        row.push_back(6 * a);
        m.push_back(row);
    }
    for (auto row : build_F(n, b, c)) {
        row.push_back(4 * b);
        m.push_back(row);
    }
    return m;
}

inline Matrix build_D(int n, const Rational& a, const Rational& b, const Rational& c) {
    Matrix m = build_E(n, a, b, c);
    for (auto& row : m) row.pop_back();
    return m;
}

inline Matrix build_G(int n, const Rational& a, const Rational& b, const Rational& c) {
    Matrix m = build_E(n, a, b, c);
    for (auto& row : m) {
        row[static_cast<std::size_t>(n - 1)] = row[static_cast<std::size_t>(n)];
        row.pop_back();
    }
    return m;
}

// params: T (x,y,z,w,t); H (x,y,z); F (b,c); E/D/G (a,b,c)
inline StructuredMatrix build_matrix(MatrixKind kind, int n, const std::vector<Rational>& p) {
    auto need = [&](std::size_t k) {
        if (p.size() != k) throw Error(ErrorKind::InvalidArgument, "wrong number of matrix parameters");
    };
    auto need_n3 = [&] {
        if (n < 3 && kind != MatrixKind::E) throw Error(ErrorKind::InvalidArgument, "matrix kind needs n >= 3");
    };
    switch (kind) {
    case MatrixKind::T: need(5); return {kind, n, build_T(n, p[0], p[1], p[2], p[3], p[4])};
    case MatrixKind::H: need(3); return {kind, n, build_H(n, p[0], p[1], p[2])};
    case MatrixKind::F: need(2); need_n3(); return {kind, n, build_F(n, p[0], p[1])};
    case MatrixKind::E: need(3); return {kind, n, build_E(n, p[0], p[1], p[2])};
    case MatrixKind::D: need(3); need_n3(); return {kind, n, build_D(n, p[0], p[1], p[2])};
    case MatrixKind::G: need(3); need_n3(); return {kind, n, build_G(n, p[0], p[1], p[2])};
    }
    throw Error(ErrorKind::InvalidArgument, "unknown matrix kind");
}

inline Rational rpow(const Rational& x, int e) {
    Rational r = 1;
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}

inline Rational det_T(const Rational& x, const Rational& y, const Rational& z, const Rational& w, const Rational& t,
                      int n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "det_T needs n >= 2");
    return rpow(x - y, n - 2) * (t * (x + (n - 2) * y) - (n - 1) * w * z);
}

enum class AuxKind { P, Q, R, A };

inline Rational aux_poly(AuxKind kind, const Rational& a, const Rational& b, const Rational& c, int n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "auxiliary polynomials need n >= 2");
    const Rational N = n;
    const Rational C = Rational(binomial(n - 1, 2));
    switch (kind) {
    case AuxKind::P: return 12 * a * b + 6 * (N - 2) * a * c - 4 * (N - 1) * b * b;
    case AuxKind::Q:
        return 9 * a * a - 6 * a * b + (4 * N - 7) * b * b - 4 * (N - 2) * b * c + (N - 2) * c * c;
    case AuxKind::R:
        return 9 * a * a + 6 * (N - 1) * a * b + (N - 1) * (N + 7) * b * b + 4 * (N - 1) * (N - 2) * b * c +
               (N - 2) * C * c * c;
    case AuxKind::A: {
        Rational a2 = a * a, b2 = b * b, c2 = c * c;
        return 81 * a2 * a2 - 54 * a2 * a * b + (18 * N * N + 18 * N - 63) * a2 * b2 +
               18 * (N - 2) * (N * N - 2 * N - 1) * a2 * b * c +
               Rational(9, 2) * N * (N - 2) * (N * N - 4 * N + 5) * a2 * c2 -
               12 * (N - 1) * (N * N - 2 * N + 2) * a * b2 * b - 12 * (N - 1) * (N - 1) * C * a * b2 * c +
               2 * (N - 1) * (N * N * N - 3 * N * N + 7 * N - 8) * b2 * b2 - 8 * (N - 2) * (N - 1) * b2 * b * c +
               2 * (N - 2) * (N - 1) * b2 * c2;
    }
    }
    return 0;
}

// Right-hand side of the determinant lemmas, as stated.
inline Rational det_identity_rhs(MatrixKind kind, const Rational& a, const Rational& b, const Rational& c, int n) {
    Rational q = rpow(aux_poly(AuxKind::Q, a, b, c, n), n - 1);
    switch (kind) {
    case MatrixKind::E: return Rational(binomial(n, 2)) * rpow(aux_poly(AuxKind::P, a, b, c, n), 2) * q;
    case MatrixKind::D: return aux_poly(AuxKind::R, a, b, c, n) * q;
    case MatrixKind::G: return aux_poly(AuxKind::A, a, b, c, n) * q;
    default: throw Error(ErrorKind::InvalidArgument, "determinant identity only for E, D, G");
    }
}

inline Rational gram_det(MatrixKind kind, const Rational& a, const Rational& b, const Rational& c, int n) {
    return bareiss_det(gram(build_matrix(kind, n, {a, b, c}).m));
}

// True iff det(M^t M) equals the stated closed form at (a,b,c).
inline bool det_identity_check(MatrixKind kind, const Rational& a, const Rational& b, const Rational& c, int n) {
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "determinant identities need n >= 3");
    return gram_det(kind, a, b, c, n) == det_identity_rhs(kind, a, b, c, n);
}

// The G identity that actually holds: det(G^t G) = 4 A_n Q_n^{n-2}.
inline bool det_identity_check_corrected(const Rational& a, const Rational& b, const Rational& c, int n) {
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "determinant identities need n >= 3");
    return gram_det(MatrixKind::G, a, b, c, n) ==
           4 * aux_poly(AuxKind::A, a, b, c, n) * rpow(aux_poly(AuxKind::Q, a, b, c, n), n - 2);
}

// ---------------------------------------------------------------- projective points

struct ProjectivePoint3 {
    Rational a, b, c;

    ProjectivePoint3(Rational x, Rational y, Rational z) : a(std::move(x)), b(std::move(y)), c(std::move(z)) {
        if (sgn(a) == 0 && sgn(b) == 0 && sgn(c) == 0)
            throw Error(ErrorKind::ZeroPolynomial, "[0:0:0] is not a projective point");
    }
    ProjectivePoint3 canonical() const {
        Rational s = sgn(a) ? a : (sgn(b) ? b : c);
        return {a / s, b / s, c / s};
    }
    // cross-multiplication, no division
    bool operator==(const ProjectivePoint3& o) const {
        return a * o.b == b * o.a && a * o.c == c * o.a && b * o.c == c * o.b;
    }
};

inline bool is_p1_cubed(const Rational& a, const Rational& b, const Rational& c) {
    return sgn(a) != 0 && b == 3 * a && c == 6 * a && c == 2 * b;
}

inline void reject_zero3(const Rational& a, const Rational& b, const Rational& c) {
    if (sgn(a) == 0 && sgn(b) == 0 && sgn(c) == 0) throw Error(ErrorKind::ZeroPolynomial, "[a:b:c] = [0:0:0]");
}

// For two variables m_{111} vanishes, so only [a:b] matters; b = 3a is then p_1^3 itself
// and never an exception, leaving b = 0.
inline bool is_n_exception(const Rational& a, const Rational& b, const Rational& c, int n) {
    reject_zero3(a, b, c);
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "n-exceptions need n >= 2");
    if (n == 2) {
        if (sgn(a) == 0 && sgn(b) == 0)
            throw Error(ErrorKind::ZeroPolynomial, "c*m_111 vanishes in two variables");
        return sgn(b) == 0;
    }
    if (is_p1_cubed(a, b, c)) return false;
    return 6 * a * (2 * b + (n - 2) * c) == 4 * (n - 1) * b * b;
}

// The conic k*a*(u*b + v*c) = w*b^2 in lowest terms.
struct ExceptionEquation {
    long k, u, v, w;
    bool operator==(const ExceptionEquation& o) const { return k == o.k && u == o.u && v == o.v && w == o.w; }
    std::string render() const {
        auto mono = [](long coef, const char* var) {
            return (coef == 1 ? std::string() : std::to_string(coef)) + var;
        };
        return mono(k, "a") + "(" + mono(u, "b") + "+" + mono(v, "c") + ")=" + mono(w, "b^2");
    }
};

inline ExceptionEquation exception_equation(int n) {
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "exception equation needs n >= 3");
    // 6a(2b + (n-2)c) = 4(n-1)b^2
    long u = 2, v = n - 2, k = 6, w = 4L * (n - 1);
    long g = std::gcd(u, v);
    u /= g;
    v /= g;
    k *= g;
    long h = std::gcd(k, w);
    return {k / h, u, v, w / h};
}

struct GcdForm {
    long n1, n2, n3, n4;
};

inline GcdForm gcd_form(int n) {
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "gcd form needs n >= 3");
    GcdForm g{};
    g.n1 = 3 / std::gcd(n + 2, 3);
    g.n2 = std::gcd(n + 1, n - 1);
    g.n3 = n % 2 ? n - 2 : (n - 2) / 2;
    g.n4 = n % 2 == 0 ? (n - 1) / std::gcd(n - 1, 6) : (2L * n - 2) / std::gcd(n - 1, 3);
    return g;
}

inline bool gcd_form_predicate(const Rational& a, const Rational& b, const Rational& c, int n) {
    reject_zero3(a, b, c);
    if (is_p1_cubed(a, b, c)) return false;
    GcdForm g = gcd_form(n);
    return g.n1 * a * (g.n2 * b + g.n3 * c) == g.n4 * b * b;
}

// Agreement of the gcd-form predicate with is_n_exception.
inline bool gcd_form_check(const Rational& a, const Rational& b, const Rational& c, int n) {
    return gcd_form_predicate(a, b, c, n) == is_n_exception(a, b, c, n);
}

inline Poly cubic_point(const Rational& a, const Rational& b, const Rational& c, int n, int ell = 1) {
    Dims d{ell, n};
    Poly f = a * expand_basis(Basis::Monomial, {3}, 1, d) + b * expand_basis(Basis::Monomial, {2, 1}, 1, d);
    if (n >= 3) f += c * expand_basis(Basis::Monomial, {1, 1, 1}, 1, d);
    return f;
}

// dim span{d_{11} f, ..., d_{1n} f, E_{11}^{(2)} f}
inline int exception_rank(const Rational& a, const Rational& b, const Rational& c, int n) {
    Poly f = cubic_point(a, b, c, n);
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "the cubic vanishes for this n");
    GradedSpan s(f.dims());
    for (int j = 1; j <= n; ++j) s.insert_remainder(derive(f, 1, j, 1));
    s.insert_remainder(polarize(f, 1, 1, 2));
    return static_cast<int>(s.total_dimension());
}

inline bool rank_lower_bound_check(const Rational& a, const Rational& b, const Rational& c, int n) {
    return exception_rank(a, b, c, n) >= n;
}

inline ClassTag classify(int degree, const std::vector<Rational>& coeffs, int n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "classification needs n >= 2");
    if (degree == 2) {
        if (coeffs.size() != 2) throw Error(ErrorKind::InvalidArgument, "degree 2 takes [a:b]");
        const auto &a = coeffs[0], &b = coeffs[1];
        if (sgn(a) == 0 && sgn(b) == 0) throw Error(ErrorKind::ZeroPolynomial, "[a:b] = [0:0]");
        return (sgn(a) != 0 && b == 2 * a) ? ClassTag::P1_SQUARED : ClassTag::P2;
    }
    if (degree == 3) {
        if (coeffs.size() != 3) throw Error(ErrorKind::InvalidArgument, "degree 3 takes [a:b:c]");
        const auto &a = coeffs[0], &b = coeffs[1];
        Rational c = n == 2 ? Rational(6 * a) : coeffs[2]; // m_111 = 0 when n = 2
        reject_zero3(a, b, coeffs[2]);
        if (n == 2 && sgn(a) == 0 && sgn(b) == 0)
            throw Error(ErrorKind::ZeroPolynomial, "c*m_111 vanishes in two variables");
        if (is_p1_cubed(a, b, c)) return ClassTag::P1_CUBED;
        return is_n_exception(a, b, c, n) ? ClassTag::P3 : ClassTag::H3;
    }
    throw Error(ErrorKind::InvalidArgument, "classification only for degrees 2 and 3");
}

// E_{11}^{(2)} g = sum_j d_{1j} g for g = p_2 p_1^{d-2} in d+1 variables.
inline bool p2p1_identity_holds(int d) {
    Dims dm{1, d + 1};
    Poly g = expand_basis(Basis::PowerSum, make_partition({2}), 1, dm) *
             expand_basis(Basis::PowerSum, {1}, 1, dm).pow(static_cast<unsigned>(d - 2));
    Poly rhs(dm);
    for (int j = 1; j <= d + 1; ++j) rhs += derive(g, 1, j, 1);
    return polarize(g, 1, 1, 2) == rhs;
}

} // namespace polmod

#endif
