#include <catch_amalgamated.hpp>

#include "naive.hpp"
#include "polmod/closure.hpp"
#include "polmod/generators.hpp"
#include "polmod/symfunc.hpp"

using namespace polmod;

namespace {

Poly x(Dims d, int i, int j) { return Poly::variable(d, i, j); }

Poly e1_row(Dims d, int row) { return expand_basis(Basis::Elementary, {1}, row, d); }

std::vector<MultiDegree> all_vectors(int ell, int max_total) {
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

// X_j^a = prod_i x_{ij}^{a_i}
Poly column_power(Dims d, int j, const MultiDegree& a) {
    Poly r = Poly::constant(d, 1);
    for (int i = 1; i <= d.ell; ++i) r = r * x(d, i, j).pow(static_cast<unsigned>(a[static_cast<std::size_t>(i - 1)]));
    return r;
}

void check_reduced(const GradedSpan& s) {
    for (auto& deg : s.degrees()) {
        const Component* c = s.component(deg);
        REQUIRE(c != nullptr);
        CHECK(c->basis().size() == c->dimension());
        std::vector<Poly> basis;
        for (std::size_t k = 0; k < c->row_count(); ++k) basis.push_back(c->row_poly(k));
        std::set<ExponentMatrix, GrlexGreater> pivots;
        for (std::size_t r = 0; r < basis.size(); ++r) {
            pivots.insert(c->pivot_monomial(r));
            CHECK(multidegree(basis[r]) == deg);
            CHECK(basis[r].coeff(c->pivot_monomial(r)) == 1);
            for (std::size_t o = 0; o < basis.size(); ++o)
                if (o != r) CHECK(basis[o].coeff(c->pivot_monomial(r)) == 0);
        }
        CHECK(pivots.size() == basis.size());
    }
}

Integer choose(long n, long k) { return binomial(n, k); }

} // namespace

TEST_CASE("span insertion") {
    Dims d{1, 3};
    GradedSpan s(d);
    CHECK(span_insert(s, x(d, 1, 1)));
    CHECK(s.dimension({1}) == 1);
    CHECK(span_insert(s, x(d, 1, 1) + x(d, 1, 2)));
    CHECK(s.dimension({1}) == 2);
    CHECK_FALSE(span_insert(s, 2 * x(d, 1, 1)));
    CHECK_FALSE(span_insert(s, Poly(d)));
    CHECK(s.contains(x(d, 1, 2)));
    CHECK_FALSE(s.contains(x(d, 1, 3)));
    CHECK_THROWS_AS(span_insert(s, x(d, 1, 1) + x(d, 1, 2).pow(2)), Error);
    CHECK_THROWS_AS(span_insert(s, Poly::variable(Dims{2, 3}, 1, 1)), Error);
    check_reduced(s);
}

TEST_CASE("differences of powers span n-1 dimensions") {
    for (int n = 2; n <= 5; ++n)
        for (int deg = 1; deg <= 3; ++deg) {
            Dims d{2, n};
            GradedSpan s(d);
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    if (i != j) span_insert(s, x(d, 1, i).pow(static_cast<unsigned>(deg)) - x(d, 1, j).pow(static_cast<unsigned>(deg)));
            CHECK(s.dimension({deg, 0}) == static_cast<std::size_t>(n - 1));
            check_reduced(s);
        }
}

TEST_CASE("modules of powers of e_1") {
    for (int ell = 1; ell <= 3; ++ell)
        for (int n = 2; n <= 4; ++n)
            for (int deg = 1; deg <= 4; ++deg) {
                Dims d{ell, n};
                auto M = polarization_module(e1_row(d, 1).pow(static_cast<unsigned>(deg)));
                CHECK(Integer(static_cast<long>(M.total_dimension())) == choose(ell + deg, deg));
                for (auto& md : all_vectors(ell, deg)) {
                    auto b = component_basis(M, md);
                    REQUIRE(b.size() == 1);
                    Poly want = Poly::constant(d, 1);
                    for (int i = 1; i <= ell; ++i) want = want * e1_row(d, i).pow(static_cast<unsigned>(md[static_cast<std::size_t>(i - 1)]));
                    GradedSpan one(d);
                    span_insert(one, want);
                    CHECK(one.contains(b[0]));
                }
                check_reduced(M);
            }
    Dims d{2, 2};
    CHECK(polarization_module(expand_basis(Basis::PowerSum, {1, 1, 1}, 1, d)).total_dimension() == 10);
}

TEST_CASE("modules of power sums have the diagonal basis") {
    for (int ell = 1; ell <= 2; ++ell)
        for (int n = 2; n <= 4; ++n)
            for (int deg = 1; deg <= 4; ++deg) {
                Dims d{ell, n};
                auto M = polarization_module(expand_basis(Basis::PowerSum, {deg}, 1, d));
                for (auto& md : all_vectors(ell, deg)) {
                    int t = total(md);
                    std::size_t want = t == deg ? 1 : t == 0 ? 1 : static_cast<std::size_t>(n);
                    INFO("ell=" << ell << " n=" << n << " deg=" << deg << " d=" << degree_string(md));
                    CHECK(M.dimension(md) == want);
                    if (t == deg) CHECK(M.contains(diag_power_sum(md, d)));
                    else
                        for (int j = 1; j <= n; ++j) CHECK(M.contains(column_power(d, j, md)));
                }
            }
}

TEST_CASE("modules of elementary polynomials") {
    for (int n = 2; n <= 5; ++n)
        for (int deg = 2; deg <= n && deg <= 4; ++deg)
            for (int ell = 1; ell <= 2; ++ell) {
                Dims d{ell, n};
                auto M = polarization_module(expand_basis(Basis::Elementary, {deg}, 1, d));
                for (auto& md : all_vectors(ell, deg / 2)) {
                    INFO("n=" << n << " deg=" << deg << " d=" << degree_string(md));
                    CHECK(Integer(static_cast<long>(M.dimension(md))) == choose(n, total(md)));
                }
                for (auto& md : all_vectors(ell, deg))
                    if (total(md) == deg) CHECK(M.contains(multi_elementary(md, d)));
            }
}

TEST_CASE("family B basis dimension") {
    // B_d = {x_i^d - x_j^d}: top component n-1, lower degrees n-1 as well
    for (int n = 2; n <= 4; ++n)
        for (int deg = 2; deg <= 3; ++deg) {
            Dims d{1, n};
            auto F = build_family(std::vector<std::string>{"family:B:" + std::to_string(deg)}, d);
            auto M = polarization_module(F);
            CHECK(M.dimension({deg}) == static_cast<std::size_t>(n - 1));
            CHECK(M.dimension({0}) == 1);
        }
}

TEST_CASE("closure order does not matter") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> degs(1, 4), nn(2, 4);
    for (int trial = 0; trial < 20; ++trial) {
        Dims d{2, nn(rng)};
        int tot = degs(rng);
        std::uniform_int_distribution<int> split(0, tot);
        int a = split(rng);
        Poly g = naive::random_homogeneous(rng, d, {a, tot - a}, 3);
        if (g.is_zero()) continue;
        GradedSpan s(d);
        span_insert(s, g);
        GradedSpan ed = polarization_closure(derivative_closure(s));
        GradedSpan de = derivative_closure(polarization_closure(s));
        CHECK(same_span(ed, de));
        for (auto& md : ed.degrees()) CHECK(ed.dimension(md) == de.dimension(md));
        // and both are closed under everything
        for (auto& b : ed.all_basis())
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= d.n; ++j) CHECK(ed.contains(derive(b, i, j)));
    }
}

TEST_CASE("modules are stable under the symmetric group and GL_2") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        Dims d{2, 3};
        Poly g = naive::random_homogeneous(rng, d, {2 + trial % 2, 0}, 3);
        auto M = polarization_module(g);
        check_reduced(M);
        std::vector<std::vector<Rational>> m{{naive::random_rational(rng), naive::random_rational(rng)},
                                             {naive::random_rational(rng), naive::random_rational(rng)}};
        if (m[0][0] * m[1][1] == m[0][1] * m[1][0]) m[0][0] += 1;
        for (auto& deg : M.degrees())
            for (auto& b : component_basis(M, deg)) {
                for (int j = 1; j < d.n; ++j) {
                    Poly t = permute(b, Permutation::transposition(d.n, j, j + 1));
                    CHECK(M.contains(t));
                    const Component* c = M.component(deg);
                    CHECK(c->contains(t));
                }
                Poly h = gl_substitute(b, m);
                // GL mixes rows: decompose by multidegree
                std::map<MultiDegree, Poly> parts;
                for (auto& term : h.terms()) {
                    auto rd = row_degrees(term.mono, d);
                    auto it = parts.try_emplace(rd, Poly(d)).first;
                    it->second += Poly::monomial(d, term.mono, term.coeff);
                }
                for (auto& [rd, p] : parts) CHECK(M.contains(p));
            }
    }
}

TEST_CASE("scaling the generator does not change the module") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        Dims d{2, 3};
        Poly g = naive::random_homogeneous(rng, d, {3, 0}, 4);
        Rational k = naive::random_rational(rng);
        if (k == 0) k = 3;
        CHECK(same_span(polarization_module(g), polarization_module(k * g)));
    }
}

TEST_CASE("results do not depend on the thread count") {
    Dims d{2, 4};
    auto F = build_family(std::vector<std::string>{"h[3]"}, d);
    auto a = polarization_module(F, 1);
    auto b = polarization_module(F, 4);
    CHECK(same_span(a, b));
    for (auto& deg : a.degrees()) {
        auto ba = component_basis(a, deg), bb = component_basis(b, deg);
        REQUIRE(ba.size() == bb.size());
        for (std::size_t k = 0; k < ba.size(); ++k) CHECK(render(ba[k]) == render(bb[k]));
    }
}

TEST_CASE("orbit and verbatim families") {
    Dims d{1, 3};
    CHECK(orbit(x(d, 1, 1)).size() == 3);
    CHECK(orbit(x(d, 1, 1) * x(d, 1, 2)).size() == 3);
    CHECK(orbit(expand_basis(Basis::PowerSum, {2}, 1, d)).size() == 1);
    CHECK(is_stable_family({x(d, 1, 1), x(d, 1, 2), x(d, 1, 3)}));
    CHECK_FALSE(is_stable_family({x(d, 1, 1), x(d, 1, 2)}));
    // a single x_11 in orbit mode gives the whole linear space
    auto M = polarization_module(x(d, 1, 1));
    CHECK(M.dimension({1}) == 3);
    GeneratorFamily bad{{x(d, 1, 1)}, GeneratorFamily::Mode::Verbatim};
    CHECK_THROWS_AS(polarization_module(bad), Error);
    CHECK_THROWS_AS(polarization_module(GeneratorFamily{}), Error);
    try {
        polarization_module(x(d, 1, 1) + x(d, 1, 2).pow(2));
        FAIL("expected NonHomogeneous");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonHomogeneous);
    }
    // the constant component is always present
    CHECK(M.dimension({0}) == 1);
}
