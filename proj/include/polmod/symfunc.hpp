#ifndef POLMOD_SYMFUNC_HPP
#define POLMOD_SYMFUNC_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace polmod {

using Partition = std::vector<int>;

inline int size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }
inline int length(const Partition& p) { return static_cast<int>(p.size()); }

inline bool is_partition(const Partition& p) {
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] <= 0) return false;
        if (k && p[k] > p[k - 1]) return false;
    }
    return true;
}

// Sorts decreasingly and drops zeros; negative parts are rejected.
inline Partition make_partition(std::vector<int> parts) {
    for (int v : parts)
        if (v < 0) throw Error(ErrorKind::InvalidArgument, "negative part in partition");
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    return parts;
}

inline std::string partition_string(const Partition& p) {
    std::string s = "[";
    for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + std::to_string(p[k]);
    return s + "]";
}

// All partitions of n with at most max_len parts, in decreasing lex order.
inline std::vector<Partition> partitions(int n, int max_len = -1) {
    std::vector<Partition> out;
    if (n < 0) return out;
    if (max_len < 0) max_len = n;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rem, int maxpart) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) == max_len) return;
        for (int v = std::min(rem, maxpart); v >= 1; --v) {
            cur.push_back(v);
            rec(rem - v, v);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

inline Partition conjugate(const Partition& p) {
    Partition c;
    if (p.empty()) return c;
    for (int k = 1; k <= p[0]; ++k) {
        int cnt = 0;
        for (int v : p)
            if (v >= k) ++cnt;
        c.push_back(cnt);
    }
    return c;
}

// Number of standard Young tableaux (hook length formula).
inline Integer f_lambda(const Partition& p) {
    Partition c = conjugate(p);
    Integer num = factorial(static_cast<unsigned>(size(p)));
    Integer den = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (int j = 0; j < p[i]; ++j) den *= (p[i] - j - 1) + (c[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1) + 1;
    return num / den;
}

// s_mu(1^ell) by the hook-content formula.
inline Integer schur_at_ones(const Partition& p, int ell) {
    Partition c = conjugate(p);
    Rational r = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (int j = 0; j < p[i]; ++j) {
            int hook = (p[i] - j - 1) + (c[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1) + 1;
            int content = j - static_cast<int>(i);
            r *= Rational(ell + content, hook);
        }
    r.canonicalize();
    return r.get_num();
}

// Straightening of s_alpha for an arbitrary integer vector alpha:
// returns (sign, partition) with sign 0 when s_alpha vanishes.
inline std::pair<int, Partition> straighten(const std::vector<int>& alpha) {
    const int k = static_cast<int>(alpha.size());
    std::vector<int> beta(alpha.size());
    for (int i = 0; i < k; ++i) beta[static_cast<std::size_t>(i)] = alpha[static_cast<std::size_t>(i)] + (k - 1 - i);
    int sign = 1;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j + 1 < k - i; ++j)
            if (beta[static_cast<std::size_t>(j)] < beta[static_cast<std::size_t>(j + 1)]) {
                std::swap(beta[static_cast<std::size_t>(j)], beta[static_cast<std::size_t>(j + 1)]);
                sign = -sign;
            }
    for (int i = 0; i + 1 < k; ++i)
        if (beta[static_cast<std::size_t>(i)] == beta[static_cast<std::size_t>(i + 1)]) return {0, {}};
    Partition lam;
    for (int i = 0; i < k; ++i) {
        int v = beta[static_cast<std::size_t>(i)] - (k - 1 - i);
        if (v < 0) return {0, {}};
        lam.push_back(v);
    }
    while (!lam.empty() && lam.back() == 0) lam.pop_back();
    return {sign, lam};
}

// ---------------------------------------------------------------- cycle types

struct CycleType {
    Partition type;
    Integer class_size;
};

inline Integer class_size(const Partition& mu) {
    Integer den = 1;
    std::map<int, int> mult;
    for (int v : mu) mult[v]++;
    for (auto [i, c] : mult) {
        Integer ip;
        mpz_ui_pow_ui(ip.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(c));
        den *= ip * factorial(static_cast<unsigned>(c));
    }
    return factorial(static_cast<unsigned>(size(mu))) / den;
}

inline std::vector<CycleType> cycle_types(int n) {
    std::vector<CycleType> out;
    for (auto& mu : partitions(n)) out.push_back({mu, class_size(mu)});
    return out;
}

// Canonical representative: consecutive blocks (1..mu_1)(mu_1+1..)...
inline Permutation cycle_representative(const Partition& mu) {
    Permutation p = Permutation::identity(size(mu));
    int start = 1;
    for (int len : mu) {
        for (int k = 0; k < len; ++k) p.images[static_cast<std::size_t>(start - 1 + k)] = start + (k + 1) % len;
        start += len;
    }
    return p;
}

// ---------------------------------------------------------------- characters

namespace detail {
struct CharacterMemo {
    std::shared_mutex mu;
    std::map<std::pair<Partition, Partition>, long long> table;
};
inline CharacterMemo& character_memo() {
    static CharacterMemo m;
    return m;
}

inline long long mn_rec(const Partition& lambda, const Partition& mu) {
    if (mu.empty()) return lambda.empty() ? 1 : 0;
    auto& memo = character_memo();
    auto key = std::make_pair(lambda, mu);
    {
        std::shared_lock lk(memo.mu);
        auto it = memo.table.find(key);
        if (it != memo.table.end()) return it->second;
    }
    const int r = mu.front();
    Partition rest(mu.begin() + 1, mu.end());
    const int k = static_cast<int>(lambda.size());
    std::vector<int> beta(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) beta[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + (k - 1 - i);
    long long total = 0;
    for (int i = 0; i < k; ++i) {
        int b = beta[static_cast<std::size_t>(i)];
        int nb = b - r;
        if (nb < 0 || std::find(beta.begin(), beta.end(), nb) != beta.end()) continue;
        int between = 0;
        for (int v : beta)
            if (v > nb && v < b) ++between;
        std::vector<int> nbeta = beta;
        nbeta[static_cast<std::size_t>(i)] = nb;
        std::sort(nbeta.begin(), nbeta.end(), std::greater<int>());
        Partition nl;
        for (int t = 0; t < k; ++t) nl.push_back(nbeta[static_cast<std::size_t>(t)] - (k - 1 - t));
        while (!nl.empty() && nl.back() == 0) nl.pop_back();
        long long sub = mn_rec(nl, rest);
        total += (between % 2 ? -sub : sub);
    }
    {
        std::unique_lock lk(memo.mu);
        memo.table.emplace(key, total);
    }
    return total;
}
} // namespace detail

// Irreducible character chi^lambda at cycle type mu (Murnaghan-Nakayama).
inline long long mn_character(const Partition& lambda, const Partition& mu) {
    if (!is_partition(lambda) || !is_partition(mu))
        throw Error(ErrorKind::InvalidArgument, "arguments must be partitions");
    if (size(lambda) != size(mu)) throw Error(ErrorKind::InvalidArgument, "size mismatch in character");
    return detail::mn_rec(lambda, mu);
}

// ---------------------------------------------------------------- bases

enum class Basis { Monomial, Elementary, Homogeneous, PowerSum, Schur };

inline char basis_letter(Basis b) {
    switch (b) {
    case Basis::Monomial: return 'm';
    case Basis::Elementary: return 'e';
    case Basis::Homogeneous: return 'h';
    case Basis::PowerSum: return 'p';
    case Basis::Schur: return 's';
    }
    return '?';
}

inline std::optional<Basis> basis_from_letter(char c) {
    switch (c) {
    case 'm': return Basis::Monomial;
    case 'e': return Basis::Elementary;
    case 'h': return Basis::Homogeneous;
    case 'p': return Basis::PowerSum;
    case 's': return Basis::Schur;
    default: return std::nullopt;
    }
}

namespace detail {

inline Poly monomial_symmetric(const Partition& lam, int row, Dims d) {
    Poly f(d);
    if (length(lam) > d.n) return f;
    std::vector<int> v(static_cast<std::size_t>(d.n), 0);
    std::copy(lam.begin(), lam.end(), v.begin());
    std::sort(v.begin(), v.end());
    std::vector<Poly::Term> ts;
    do {
        ExponentMatrix m;
        for (int j = 0; j < d.n; ++j)
            if (v[static_cast<std::size_t>(j)]) m.set((row - 1) * d.n + j, v[static_cast<std::size_t>(j)]);
        ts.push_back({m, Rational(1)});
    } while (std::next_permutation(v.begin(), v.end()));
    return Poly::from_terms(d, std::move(ts));
}

inline Poly power_sum(int k, int row, Dims d) {
    std::vector<Poly::Term> ts;
    for (int j = 0; j < d.n; ++j) {
        ExponentMatrix m;
        m.set((row - 1) * d.n + j, k);
        ts.push_back({m, Rational(1)});
    }
    return Poly::from_terms(d, std::move(ts));
}

inline Poly complete(int k, int row, Dims d) {
    Poly f(d);
    for (auto& nu : partitions(k, d.n)) f += monomial_symmetric(nu, row, d);
    return f;
}

// Schur polynomial by enumerating semistandard tableaux.
inline Poly schur(const Partition& lam, int row, Dims d) {
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < length(lam); ++i)
        for (int j = 0; j < lam[static_cast<std::size_t>(i)]; ++j) cells.push_back({i, j});
    std::vector<std::vector<int>> T(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) T[i].assign(static_cast<std::size_t>(lam[i]), 0);
    std::map<std::vector<int>, long> counts;
    std::vector<int> content(static_cast<std::size_t>(d.n), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == cells.size()) {
            counts[content]++;
            return;
        }
        auto [i, j] = cells[c];
        int lo = 1;
        if (j > 0) lo = std::max(lo, T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)]);
        if (i > 0) lo = std::max(lo, T[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] + 1);
        for (int v = lo; v <= d.n; ++v) {
            T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            content[static_cast<std::size_t>(v - 1)]++;
            rec(c + 1);
            content[static_cast<std::size_t>(v - 1)]--;
        }
    };
    rec(0);
    std::vector<Poly::Term> ts;
    for (auto& [ct, k] : counts) {
        ExponentMatrix m;
        for (int j = 0; j < d.n; ++j)
            if (ct[static_cast<std::size_t>(j)]) m.set((row - 1) * d.n + j, ct[static_cast<std::size_t>(j)]);
        ts.push_back({m, Rational(k)});
    }
    return Poly::from_terms(d, std::move(ts));
}

} // namespace detail

// The symmetric polynomial b_lambda in the variables x_{row,1..n}.
inline Poly expand_basis(Basis basis, const Partition& lambda, int row, Dims d) {
    check_dims(d);
    if (row < 1 || row > d.ell) throw Error(ErrorKind::IndexOutOfRange, "row outside 1..ell");
    if (!is_partition(lambda)) throw Error(ErrorKind::InvalidArgument, "not a partition: " + partition_string(lambda));
    if ((basis == Basis::Monomial || basis == Basis::Schur) && length(lambda) > d.n)
        throw Error(ErrorKind::InvalidArgument, std::string(1, basis_letter(basis)) + partition_string(lambda) +
                                                    " has more parts than n = " + std::to_string(d.n));
    switch (basis) {
    case Basis::Monomial: return detail::monomial_symmetric(lambda, row, d);
    case Basis::Schur: return detail::schur(lambda, row, d);
    default: break;
    }
    Poly f = Poly::constant(d, 1);
    for (int part : lambda) {
        if (basis == Basis::PowerSum) f = f * detail::power_sum(part, row, d);
        else if (basis == Basis::Homogeneous) f = f * detail::complete(part, row, d);
        else f = f * detail::monomial_symmetric(Partition(static_cast<std::size_t>(part), 1), row, d);
    }
    return f;
}

// p_d(X) = sum_j prod_i x_{ij}^{d_i}
inline Poly diag_power_sum(const MultiDegree& deg, Dims d) {
    check_dims(d);
    if (static_cast<int>(deg.size()) != d.ell) throw Error(ErrorKind::DegreeMismatch, "degree vector length differs from ell");
    if (total(deg) < 1) throw Error(ErrorKind::InvalidArgument, "diagonal power sum needs |d| >= 1");
    std::vector<Poly::Term> ts;
    for (int j = 0; j < d.n; ++j) {
        ExponentMatrix m;
        for (int i = 0; i < d.ell; ++i)
            if (deg[static_cast<std::size_t>(i)]) m.set(i * d.n + j, deg[static_cast<std::size_t>(i)]);
        ts.push_back({m, Rational(1)});
    }
    return Poly::from_terms(d, std::move(ts));
}

// e_d(X): sum over subsets B of columns and colourings B -> rows with |g^-1(i)| = d_i.
inline Poly multi_elementary(const MultiDegree& deg, Dims d) {
    check_dims(d);
    if (static_cast<int>(deg.size()) != d.ell) throw Error(ErrorKind::DegreeMismatch, "degree vector length differs from ell");
    for (int v : deg)
        if (v < 0) throw Error(ErrorKind::DegreeMismatch, "negative degree component");
    std::vector<Poly::Term> ts;
    std::vector<int> left = deg;
    ExponentMatrix m;
    int remaining = total(deg);
    std::function<void(int)> rec = [&](int j) {
        if (remaining == 0) {
            ts.push_back({m, Rational(1)});
            return;
        }
        if (d.n - j < remaining) return;
        rec(j + 1); // column j not in B
        for (int i = 0; i < d.ell; ++i) {
            if (!left[static_cast<std::size_t>(i)]) continue;
            left[static_cast<std::size_t>(i)]--;
            remaining--;
            m.set(i * d.n + j, 1);
            rec(j + 1);
            m.set(i * d.n + j, 0);
            remaining++;
            left[static_cast<std::size_t>(i)]++;
        }
    };
    rec(0);
    return Poly::from_terms(d, std::move(ts));
}

// ---------------------------------------------------------------- SymSeries

struct SymSeries {
    Basis basis = Basis::Schur;
    std::map<Partition, Rational> coeffs;

    void add(const Partition& p, const Rational& c) {
        if (polmod::is_zero(c)) return;
        auto& slot = coeffs[p];
        slot += c;
        if (polmod::is_zero(slot)) coeffs.erase(p);
    }
    bool operator==(const SymSeries& o) const { return basis == o.basis && coeffs == o.coeffs; }
    bool operator!=(const SymSeries& o) const { return !(*this == o); }
};

inline bool is_symmetric_in_row(const Poly& f, int row = 1) {
    if (!supported_on_row(f, row)) return false;
    const int n = f.dims().n;
    for (int j = 1; j < n; ++j)
        if (permute(f, Permutation::transposition(n, j, j + 1)) != f) return false;
    return true;
}

// Schur expansion by repeatedly stripping the leading monomial's Schur polynomial.
inline SymSeries to_schur(const Poly& f) {
    if (!is_symmetric_in_row(f, 1)) throw Error(ErrorKind::NotSymmetric, "polynomial is not symmetric in row 1");
    const Dims d = f.dims();
    SymSeries out;
    Poly g = f;
    while (!g.is_zero()) {
        const auto& lead = g.terms().front();
        Partition lam;
        for (int j = 0; j < d.n; ++j) {
            int e = lead.mono.at(j);
            if (j && e > lam.back()) throw Error(ErrorKind::NotSymmetric, "leading exponent is not a partition");
            lam.push_back(e);
        }
        while (!lam.empty() && lam.back() == 0) lam.pop_back();
        Rational c = lead.coeff;
        out.add(lam, c);
        g -= c * detail::schur(lam, 1, d);
    }
    return out;
}

// Poly of a series in the variables of row 1 with the given dims.
inline Poly series_to_poly(const SymSeries& s, Dims d) {
    Poly f(d);
    for (auto& [p, c] : s.coeffs) {
        if ((s.basis == Basis::Schur || s.basis == Basis::Monomial) && length(p) > d.n) continue;
        f += c * expand_basis(s.basis, p, 1, d);
    }
    return f;
}

namespace detail {

struct TransitionMemo {
    std::mutex mu;
    std::map<Partition, std::map<Partition, Integer>> jt;
    std::map<Partition, std::map<Partition, Integer>> pieri;
};
inline TransitionMemo& transition_memo() {
    static TransitionMemo m;
    return m;
}

// s_lambda = det(h_{lambda_i - i + j}) expanded over permutations.
inline std::map<Partition, Integer> jacobi_trudi(const Partition& lam) {
    auto& memo = transition_memo();
    {
        std::lock_guard lk(memo.mu);
        auto it = memo.jt.find(lam);
        if (it != memo.jt.end()) return it->second;
    }
    const int k = length(lam);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::map<Partition, Integer> out;
    do {
        int inv = 0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inv;
        std::vector<int> parts;
        bool zero = false;
        for (int i = 0; i < k; ++i) {
            int idx = lam[static_cast<std::size_t>(i)] - i + perm[static_cast<std::size_t>(i)];
            if (idx < 0) {
                zero = true;
                break;
            }
            if (idx > 0) parts.push_back(idx);
        }
        if (zero) continue;
        Partition p = make_partition(parts);
        auto& slot = out[p];
        slot += (inv % 2 ? -1 : 1);
        if (slot == 0) out.erase(p);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::lock_guard lk(memo.mu);
    memo.jt.emplace(lam, out);
    return out;
}

inline void horizontal_strips(const Partition& nu, int r, std::vector<Partition>& out) {
    Partition cur(nu);
    cur.push_back(0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == cur.size()) {
            if (left == 0) {
                Partition p(cur);
                while (!p.empty() && p.back() == 0) p.pop_back();
                out.push_back(p);
            }
            return;
        }
        int base = i < nu.size() ? nu[i] : 0;
        int cap = i == 0 ? left : std::min(left, nu[i - 1] - base);
        for (int a = 0; a <= cap; ++a) {
            cur[i] = base + a;
            rec(i + 1, left - a);
        }
        cur[i] = base;
    };
    rec(0, r);
}

// h_mu = sum_lambda K_{lambda,mu} s_lambda via the Pieri rule.
inline std::map<Partition, Integer> pieri_expand(const Partition& mu) {
    auto& memo = transition_memo();
    {
        std::lock_guard lk(memo.mu);
        auto it = memo.pieri.find(mu);
        if (it != memo.pieri.end()) return it->second;
    }
    std::map<Partition, Integer> cur{{Partition{}, Integer(1)}};
    for (int r : mu) {
        std::map<Partition, Integer> next;
        for (auto& [nu, c] : cur) {
            std::vector<Partition> strips;
            horizontal_strips(nu, r, strips);
            for (auto& p : strips) next[p] += c;
        }
        cur.swap(next);
    }
    std::lock_guard lk(memo.mu);
    memo.pieri.emplace(mu, cur);
    return cur;
}

} // namespace detail

inline SymSeries schur_to_h(const SymSeries& s) {
    if (s.basis != Basis::Schur) throw Error(ErrorKind::InvalidArgument, "schur_to_h expects a Schur series");
    SymSeries out;
    out.basis = Basis::Homogeneous;
    for (auto& [lam, c] : s.coeffs)
        for (auto& [mu, k] : detail::jacobi_trudi(lam)) out.add(mu, c * Rational(k));
    return out;
}

inline SymSeries h_to_schur(const SymSeries& s) {
    if (s.basis != Basis::Homogeneous) throw Error(ErrorKind::InvalidArgument, "h_to_schur expects an h series");
    SymSeries out;
    out.basis = Basis::Schur;
    for (auto& [mu, c] : s.coeffs)
        for (auto& [lam, k] : detail::pieri_expand(mu)) out.add(lam, c * Rational(k));
    return out;
}

} // namespace polmod

#endif
