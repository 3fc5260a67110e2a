#include <catch_amalgamated.hpp>

#include <set>

#include "naive.hpp"
#include "polmod/symfunc.hpp"

using namespace polmod;

namespace {

Poly x(Dims d, int i, int j) { return Poly::variable(d, i, j); }

// keep only terms whose trailing t-block has total degree <= order
naive::NPoly truncate_t(const naive::NPoly& f, int first_t, int order) {
    naive::NPoly r(f.nvars);
    for (auto& [e, c] : f.t) {
        int deg = 0;
        for (int v = first_t; v < f.nvars; ++v) deg += e[static_cast<std::size_t>(v)];
        if (deg <= order) r.add(e, c);
    }
    return r;
}

// coefficient of t^md, as a polynomial in the first nx variables
naive::NPoly t_coefficient(const naive::NPoly& f, int nx, const std::vector<int>& md) {
    naive::NPoly r(nx);
    for (auto& [e, c] : f.t) {
        bool ok = true;
        for (std::size_t i = 0; i < md.size(); ++i) ok = ok && e[static_cast<std::size_t>(nx) + i] == md[i];
        if (ok) r.add(naive::Exps(e.begin(), e.begin() + nx), c);
    }
    return r;
}

std::vector<MultiDegree> vectors_up_to(int ell, int max_total) {
    std::vector<MultiDegree> out;
    MultiDegree cur(static_cast<std::size_t>(ell), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == ell) {
            out.push_back(cur);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            cur[static_cast<std::size_t>(i)] = a;
            rec(i + 1, left - a);
        }
    };
    rec(0, max_total);
    return out;
}

Integer chi(const Partition& lam, const Partition& mu) { return Integer(static_cast<long>(mn_character(lam, mu))); }

int fixed_points(const Permutation& s) {
    int c = 0;
    for (int j = 1; j <= s.n(); ++j) c += s(j) == j;
    return c;
}

} // namespace

TEST_CASE("partitions and cycle types") {
    CHECK(partitions(4).size() == 5);
    CHECK(partitions(6, 2).size() == 4);
    CHECK(conjugate({3, 1}) == Partition{2, 1, 1});
    CHECK(f_lambda({2, 1}) == 2);
    CHECK(f_lambda({3, 2}) == 5);
    for (int n = 1; n <= 7; ++n) {
        Integer total = 0, sq = 0;
        for (auto& ct : cycle_types(n)) total += ct.class_size;
        for (auto& lam : partitions(n)) sq += f_lambda(lam) * f_lambda(lam);
        CHECK(total == factorial(static_cast<unsigned>(n)));
        CHECK(sq == factorial(static_cast<unsigned>(n)));
    }
    CHECK(class_size({2, 1, 1, 1}) == 10);
    CHECK(class_size({4, 1}) == 30);
    CHECK(make_partition({1, 0, 2}) == Partition{2, 1});
    CHECK_THROWS_AS(make_partition({1, -1}), Error);
    CHECK_FALSE(is_partition({1, 2}));
}

TEST_CASE("classical bases in one row") {
    Dims d2{1, 2}, d3{1, 3};
    CHECK(expand_basis(Basis::PowerSum, {3}, 1, d2) == x(d2, 1, 1).pow(3) + x(d2, 1, 2).pow(3));
    Poly m21 = expand_basis(Basis::Monomial, {2, 1}, 1, d3);
    // orbit of x^2 y under S_3
    std::set<std::pair<int, int>> orbit;
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            if (a != b) orbit.insert({a, b});
    Poly want(d3);
    for (auto [a, b] : orbit) want += x(d3, 1, a).pow(2) * x(d3, 1, b);
    CHECK(m21 == want);
    CHECK(m21.size() == 6);
    // p_1^3 = m_3 + 3 m_21 + 6 m_111
    Poly p13 = expand_basis(Basis::PowerSum, {1, 1, 1}, 1, d3);
    CHECK(p13 == expand_basis(Basis::Monomial, {3}, 1, d3) + 3 * m21 + 6 * expand_basis(Basis::Monomial, {1, 1, 1}, 1, d3));
    CHECK_THROWS_AS(expand_basis(Basis::Monomial, {1, 1, 1}, 1, d2), Error);
    CHECK_THROWS_AS(expand_basis(Basis::Schur, {1, 1, 1}, 1, d2), Error);
    // elementary with too many parts is simply zero
    CHECK(expand_basis(Basis::Elementary, {3}, 1, d2).is_zero());
    Dims d{3, 4};
    for (Basis b : {Basis::Monomial, Basis::Elementary, Basis::Homogeneous, Basis::PowerSum, Basis::Schur})
        for (auto& lam : partitions(4, 4))
            for (int row = 1; row <= 3; ++row) {
                Poly f = expand_basis(b, lam, row, d);
                CHECK(supported_on_row(f, row));
                for (int j = 1; j < 4; ++j) CHECK(permute(f, Permutation::transposition(4, j, j + 1)) == f);
            }
}

TEST_CASE("diagonal power sums") {
    Dims d{2, 2};
    CHECK(diag_power_sum({1, 1}, d) == x(d, 1, 1) * x(d, 2, 1) + x(d, 1, 2) * x(d, 2, 2));
    CHECK_THROWS_AS(diag_power_sum({0, 0}, d), Error);
    Dims d3{3, 4};
    Poly p = diag_power_sum({2, 0, 1}, d3);
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) CHECK(permute(p, Permutation::transposition(4, a, b)) == p);
}

TEST_CASE("diagonal power sums from the logarithm of the generating product") {
    // log prod_j (1 - t_1 x_1j - t_2 x_2j)^{-1} = sum_d (|d|-1)!/d! p_d(X) t^d
    const Dims d{2, 2};
    const int nx = 4, nv = nx + 2, order = 3;
    naive::NPoly F = naive::constant(nv, 1);
    for (int j = 1; j <= d.n; ++j) {
        naive::NPoly L(nv);
        for (int i = 1; i <= 2; ++i) L = L + naive::var(nv, nx + i - 1) * naive::var(nv, naive::vidx(d, i, j));
        // geometric series 1 + L + L^2 + L^3
        naive::NPoly g = naive::constant(nv, 1), pw = naive::constant(nv, 1);
        for (int k = 1; k <= order; ++k) {
            pw = pw * L;
            g = g + pw;
        }
        F = truncate_t(F * g, nx, order);
    }
    naive::NPoly U = F - naive::constant(nv, 1), logF(nv), pw = naive::constant(nv, 1);
    for (int k = 1; k <= order; ++k) {
        pw = truncate_t(pw * U, nx, order);
        Rational c(k % 2 ? 1 : -1, k);
        c.canonicalize();
        logF = logF + pw.scaled(c);
    }
    for (auto& md : vectors_up_to(2, order)) {
        int tot = total(md);
        if (tot == 0) continue;
        Rational w(factorial(static_cast<unsigned>(tot - 1)),
                   factorial(static_cast<unsigned>(md[0])) * factorial(static_cast<unsigned>(md[1])));
        w.canonicalize();
        CHECK(naive::to(t_coefficient(logF, nx, md), d) == w * diag_power_sum(md, d));
    }
}

TEST_CASE("multisymmetric elementary polynomials from the generating product") {
    CHECK(multi_elementary({1, 0}, Dims{2, 2}) == x(Dims{2, 2}, 1, 1) + x(Dims{2, 2}, 1, 2));
    {
        Dims d{2, 2};
        CHECK(multi_elementary({1, 1}, d) == x(d, 1, 1) * x(d, 2, 2) + x(d, 1, 2) * x(d, 2, 1));
    }
    for (int ell = 1; ell <= 3; ++ell)
        for (int n = 1; n <= 4; ++n) {
            Dims d{ell, n};
            const int nx = ell * n, nv = nx + ell;
            naive::NPoly G = naive::constant(nv, 1);
            for (int j = 1; j <= n; ++j) {
                naive::NPoly f = naive::constant(nv, 1);
                for (int i = 1; i <= ell; ++i) f = f + naive::var(nv, nx + i - 1) * naive::var(nv, naive::vidx(d, i, j));
                G = G * f;
            }
            for (auto& md : vectors_up_to(ell, 4)) {
                if (total(md) == 0) continue;
                INFO("ell=" << ell << " n=" << n << " d=" << degree_string(md));
                CHECK(multi_elementary(md, d) == naive::to(t_coefficient(G, nx, md), d));
            }
        }
}

TEST_CASE("characters by Murnaghan-Nakayama") {
    for (int n = 1; n <= 7; ++n) {
        auto cts = cycle_types(n);
        for (auto& ct : cts) {
            Permutation s = cycle_representative(ct.type);
            CHECK(mn_character({n}, ct.type) == 1);
            if (n >= 2) CHECK(mn_character({n - 1, 1}, ct.type) == fixed_points(s) - 1);
            // sum_{j<=s} chi^{(n-j,j)} counts stable s-subsets
            for (int k = 0; 2 * k <= n; ++k) {
                long long sum = 0;
                for (int j = 0; j <= k; ++j) sum += mn_character(j ? Partition{n - j, j} : Partition{n}, ct.type);
                long long stable = 0;
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    if (std::popcount(mask) != k) continue;
                    unsigned img = 0;
                    for (int a = 1; a <= n; ++a)
                        if (mask & (1u << (a - 1))) img |= 1u << (s(a) - 1);
                    stable += img == mask;
                }
                CHECK(sum == stable);
            }
        }
        // both orthogonality relations
        auto parts = partitions(n);
        for (auto& a : cts)
            for (auto& b : cts) {
                Integer s = 0;
                for (auto& lam : parts) s += chi(lam, a.type) * chi(lam, b.type);
                Integer want = a.type == b.type ? factorial(static_cast<unsigned>(n)) / a.class_size : Integer(0);
                CHECK(s == want);
            }
        for (auto& lam : parts)
            for (auto& kap : parts) {
                Integer s = 0;
                for (auto& ct : cts) s += ct.class_size * chi(lam, ct.type) * chi(kap, ct.type);
                CHECK(s == (lam == kap ? factorial(static_cast<unsigned>(n)) : Integer(0)));
            }
        for (auto& lam : parts) CHECK(chi(lam, Partition(static_cast<std::size_t>(n), 1)) == f_lambda(lam));
    }
    CHECK_THROWS_AS(mn_character({2, 1}, {2}), Error);
}

TEST_CASE("characters agree with the Schur expansion of power sums") {
    // p_mu = sum_lambda chi^lambda(mu) s_lambda in n variables
    for (int n = 1; n <= 5; ++n) {
        Dims d{1, n};
        for (auto& mu : partitions(n)) {
            SymSeries s = to_schur(expand_basis(Basis::PowerSum, mu, 1, d));
            for (auto& lam : partitions(n)) {
                auto it = s.coeffs.find(lam);
                Rational got = it == s.coeffs.end() ? Rational(0) : it->second;
                CHECK(got == Rational(static_cast<long>(mn_character(lam, mu))));
            }
        }
    }
}

TEST_CASE("Schur expansions") {
    {
        Dims d{1, 2};
        SymSeries s = to_schur(expand_basis(Basis::Homogeneous, {2}, 1, d));
        CHECK(s.coeffs == std::map<Partition, Rational>{{{2}, 1}});
    }
    {
        Dims d{1, 3};
        SymSeries s = to_schur(expand_basis(Basis::Elementary, {2}, 1, d));
        CHECK(s.coeffs == std::map<Partition, Rational>{{{1, 1}, 1}});
    }
    {
        // all monomials of degree <= 2 in two variables
        Dims d{1, 2};
        Poly f = Poly::constant(d, 1);
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; a + b <= 2; ++b)
                if (a + b) f += x(d, 1, 1).pow(static_cast<unsigned>(a)) * x(d, 1, 2).pow(static_cast<unsigned>(b));
        SymSeries s = to_schur(f);
        CHECK(s.coeffs == std::map<Partition, Rational>{{{}, 1}, {{1}, 1}, {{2}, 1}});
    }
    {
        Dims d{1, 2};
        CHECK_THROWS_AS(to_schur(x(d, 1, 1)), Error);
        try {
            to_schur(x(d, 1, 1) * x(d, 1, 1) + x(d, 1, 2));
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotSymmetric);
        }
    }
    // random symmetric polynomials round trip
    std::mt19937 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + trial % 3;
        Dims d{1, n};
        SymSeries s;
        for (int deg = 0; deg <= 4; ++deg)
            for (auto& lam : partitions(deg, n))
                if (rng() % 2) s.add(lam, naive::random_rational(rng));
        Poly f = series_to_poly(s, d);
        CHECK(to_schur(f) == s);
    }
}

TEST_CASE("hook-content formula matches tableau counts") {
    for (int ell = 1; ell <= 4; ++ell)
        for (int deg = 1; deg <= 5; ++deg)
            for (auto& lam : partitions(deg, ell)) {
                Poly s = expand_basis(Basis::Schur, lam, 1, Dims{1, ell});
                Rational sum = 0;
                for (auto& t : s.terms()) sum += t.coeff;
                CHECK(Rational(schur_at_ones(lam, ell)) == sum);
            }
    CHECK(schur_at_ones({2, 1}, 2) == 2);
    CHECK(schur_at_ones({3}, 3) == 10);
    CHECK(schur_at_ones({1, 1, 1}, 2) == 0);
}

TEST_CASE("Schur and complete homogeneous bases convert exactly") {
    {
        SymSeries s;
        s.add({1}, 1);
        SymSeries h = schur_to_h(s);
        CHECK(h.basis == Basis::Homogeneous);
        CHECK(h.coeffs == std::map<Partition, Rational>{{{1}, 1}});
    }
    {
        SymSeries s;
        s.add({}, 1);
        s.add({1}, 1);
        s.add({2}, 2);
        s.add({3}, 1);
        SymSeries h = schur_to_h(s);
        // s_2 = h_2, s_3 = h_3
        CHECK(h.coeffs == std::map<Partition, Rational>{{{}, 1}, {{1}, 1}, {{2}, 2}, {{3}, 1}});
        SymSeries s11;
        s11.add({1, 1}, 1);
        CHECK(schur_to_h(s11).coeffs == std::map<Partition, Rational>{{{1, 1}, 1}, {{2}, -1}});
    }
    // each conversion against explicit polynomials in 5 variables
    Dims d{1, 5};
    for (int deg = 0; deg <= 5; ++deg)
        for (auto& lam : partitions(deg)) {
            SymSeries s;
            s.add(lam, 1);
            SymSeries h = schur_to_h(s);
            Poly fh(d);
            for (auto& [mu, c] : h.coeffs) fh += c * expand_basis(Basis::Homogeneous, mu, 1, d);
            if (length(lam) <= 5) CHECK(fh == expand_basis(Basis::Schur, lam, 1, d));
            CHECK(h_to_schur(h) == s);
            SymSeries hh;
            hh.basis = Basis::Homogeneous;
            hh.add(lam, 1);
            CHECK(schur_to_h(h_to_schur(hh)) == hh);
        }
    SymSeries wrong;
    wrong.basis = Basis::Homogeneous;
    CHECK_THROWS_AS(schur_to_h(wrong), Error);
}

TEST_CASE("straightening of Schur functions indexed by compositions") {
    CHECK(straighten({0, 2}) == std::pair<int, Partition>{-1, {1, 1}});
    CHECK(straighten({1, 2}).first == 0);
    CHECK(straighten({2, 1}) == std::pair<int, Partition>{1, {2, 1}});
    CHECK(straighten({-1, 2}) == std::pair<int, Partition>{-1, {1}});
}
