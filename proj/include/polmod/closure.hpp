#ifndef POLMOD_CLOSURE_HPP
#define POLMOD_CLOSURE_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace polmod {

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t k = 0; k < count; ++k) body(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= count) return;
            try {
                body(k);
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int nt = static_cast<int>(std::min<std::size_t>(count, static_cast<std::size_t>(threads)));
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// Components are visited by increasing |d|, then lexicographically.
struct DegreeOrder {
    bool operator()(const MultiDegree& a, const MultiDegree& b) const {
        int ta = total(a), tb = total(b);
        if (ta != tb) return ta < tb;
        return a < b;
    }
};

// One homogeneous component V_d kept in fully reduced echelon form.
// Rows are sparse over a component-local monomial dictionary.
class Component {
public:
    struct Row {
        int pivot = -1;
        std::vector<std::pair<int, Rational>> entries; // sorted by dictionary index
    };

    Component() = default;
    Component(MultiDegree d, Dims dims) : degree_(std::move(d)), dims_(dims) {}

    const MultiDegree& degree() const { return degree_; }
    std::size_t dimension() const { return rows_.size(); }

    // Returns the normalized remainder if f enlarged the span.
    std::optional<Poly> insert(const Poly& f) {
        if (f.is_zero()) return std::nullopt;
        for (const auto& t : f.terms()) {
            if (!dict_.count(t.mono)) {
                dict_.emplace(t.mono, static_cast<int>(monos_.size()));
                monos_.push_back(t.mono);
            }
        }
        if (scratch_.size() < monos_.size()) scratch_.resize(monos_.size());
        std::vector<int> touched;
        reduce(f, scratch_, touched);
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        Row row;
        for (int idx : touched) {
            auto& v = scratch_[static_cast<std::size_t>(idx)];
            if (sgn(v) != 0) row.entries.push_back({idx, v});
            v = 0;
        }
        if (row.entries.empty()) return std::nullopt;
        // pivot: greatest monomial in grlex
        std::size_t best = 0;
        for (std::size_t k = 1; k < row.entries.size(); ++k)
            if (grlex_compare(monos_[static_cast<std::size_t>(row.entries[k].first)],
                              monos_[static_cast<std::size_t>(row.entries[best].first)]) > 0)
                best = k;
        row.pivot = row.entries[best].first;
        Rational inv = 1 / row.entries[best].second;
        for (auto& e : row.entries) e.second *= inv;
        for (auto& r : rows_) {
            Rational c = coefficient(r, row.pivot);
            if (sgn(c) != 0) axpy(r, c, row);
        }
        rows_.push_back(row);
        return to_poly(row);
    }

    bool contains(const Poly& f) const {
        if (f.is_zero()) return true;
        for (const auto& t : f.terms())
            if (!dict_.count(t.mono)) return false;
        std::vector<Rational> local(monos_.size());
        std::vector<int> touched;
        reduce(f, local, touched);
        for (int idx : touched)
            if (sgn(local[static_cast<std::size_t>(idx)]) != 0) return false;
        return true;
    }

    // Coordinates of f in the basis, read at the pivots (f must lie in the span).
    Rational pivot_coefficient(const Poly& f, std::size_t row_index) const {
        return f.coeff(monos_[static_cast<std::size_t>(rows_[row_index].pivot)]);
    }

    const ExponentMatrix& pivot_monomial(std::size_t row_index) const {
        return monos_[static_cast<std::size_t>(rows_[row_index].pivot)];
    }

    // Basis sorted by decreasing pivot monomial, independent of insertion order.
    std::vector<Poly> basis() const {
        std::vector<std::size_t> order(rows_.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return grlex_compare(pivot_monomial(a), pivot_monomial(b)) > 0;
        });
        std::vector<Poly> out;
        for (auto k : order) out.push_back(to_poly(rows_[k]));
        return out;
    }

    std::size_t row_count() const { return rows_.size(); }
    Poly row_poly(std::size_t k) const { return to_poly(rows_[k]); }

private:
    void reduce(const Poly& f, std::vector<Rational>& acc, std::vector<int>& touched) const {
        for (const auto& t : f.terms()) {
            int idx = dict_.at(t.mono);
            acc[static_cast<std::size_t>(idx)] = t.coeff;
            touched.push_back(idx);
        }
        // Fully reduced rows: one pass suffices and order does not matter.
        Rational c;
        for (const auto& r : rows_) {
            const auto& pv = acc[static_cast<std::size_t>(r.pivot)];
            if (sgn(pv) == 0) continue;
            c = pv;
            for (const auto& [idx, v] : r.entries) {
                acc[static_cast<std::size_t>(idx)] -= c * v;
                touched.push_back(idx);
            }
        }
    }

    static Rational coefficient(const Row& r, int idx) {
        auto it = std::lower_bound(r.entries.begin(), r.entries.end(), idx,
                                   [](const std::pair<int, Rational>& e, int x) { return e.first < x; });
        if (it != r.entries.end() && it->first == idx) return it->second;
        return Rational(0);
    }

    // r -= c * s
    static void axpy(Row& r, const Rational& c, const Row& s) {
        std::vector<std::pair<int, Rational>> out;
        out.reserve(r.entries.size() + s.entries.size());
        std::size_t a = 0, b = 0;
        while (a < r.entries.size() || b < s.entries.size()) {
            if (b == s.entries.size() || (a < r.entries.size() && r.entries[a].first < s.entries[b].first)) {
                out.push_back(std::move(r.entries[a++]));
            } else if (a == r.entries.size() || s.entries[b].first < r.entries[a].first) {
                out.push_back({s.entries[b].first, -c * s.entries[b].second});
                ++b;
            } else {
                Rational v = r.entries[a].second - c * s.entries[b].second;
                if (sgn(v) != 0) out.push_back({r.entries[a].first, v});
                ++a;
                ++b;
            }
        }
        r.entries.swap(out);
    }

    Poly to_poly(const Row& r) const {
        std::vector<Poly::Term> ts;
        ts.reserve(r.entries.size());
        for (const auto& [idx, v] : r.entries) ts.push_back({monos_[static_cast<std::size_t>(idx)], v});
        return Poly::from_terms(dims_, std::move(ts));
    }

    MultiDegree degree_;
    Dims dims_{};
    std::unordered_map<ExponentMatrix, int, ExponentHash> dict_;
    std::vector<ExponentMatrix> monos_;
    std::vector<Row> rows_;
    std::vector<Rational> scratch_;
};

class GradedSpan {
public:
    GradedSpan() = default;
    explicit GradedSpan(Dims d) : dims_(d) { check_dims(d); }

    Dims dims() const { return dims_; }

    Component& ensure(const MultiDegree& d) {
        auto it = comps_.find(d);
        if (it == comps_.end()) it = comps_.emplace(d, Component(d, dims_)).first;
        return it->second;
    }

    std::optional<Poly> insert_remainder(const Poly& f) {
        if (f.dims() != dims_) throw Error(ErrorKind::DimensionMismatch, "polynomial ring differs from span ring");
        if (f.is_zero()) return std::nullopt;
        return ensure(multidegree(f)).insert(f);
    }

    bool contains(const Poly& f) const {
        if (f.is_zero()) return true;
        auto it = comps_.find(multidegree(f));
        return it != comps_.end() && it->second.contains(f);
    }

    const Component* component(const MultiDegree& d) const {
        auto it = comps_.find(d);
        return it == comps_.end() ? nullptr : &it->second;
    }

    std::vector<MultiDegree> degrees() const {
        std::vector<MultiDegree> out;
        for (auto& [d, c] : comps_)
            if (c.dimension()) out.push_back(d);
        return out;
    }

    std::size_t dimension(const MultiDegree& d) const {
        auto c = component(d);
        return c ? c->dimension() : 0;
    }

    std::size_t total_dimension() const {
        std::size_t s = 0;
        for (auto& [d, c] : comps_) s += c.dimension();
        return s;
    }

    int max_degree() const {
        int m = 0;
        for (auto& [d, c] : comps_)
            if (c.dimension()) m = std::max(m, total(d));
        return m;
    }

    std::vector<Poly> all_basis() const {
        std::vector<Poly> out;
        for (auto& [d, c] : comps_)
            for (auto& b : c.basis()) out.push_back(b);
        return out;
    }

    std::vector<Poly> generators;

private:
    Dims dims_{};
    std::map<MultiDegree, Component, DegreeOrder> comps_;
};

// span_insert: true iff the span grew.
inline bool span_insert(GradedSpan& span, const Poly& f) { return span.insert_remainder(f).has_value(); }

inline std::vector<Poly> component_basis(const GradedSpan& span, const MultiDegree& d) {
    auto c = span.component(d);
    return c ? c->basis() : std::vector<Poly>{};
}

enum ClosureOps : unsigned { kDerivatives = 1u, kPolarizations = 2u };

namespace detail {

inline std::vector<Poly> apply_operators(const Poly& g, unsigned ops, int max_p) {
    std::vector<Poly> out;
    const Dims d = g.dims();
    const MultiDegree deg = multidegree(g);
    if (ops & kDerivatives)
        for (int i = 1; i <= d.ell; ++i) {
            if (deg[static_cast<std::size_t>(i - 1)] == 0) continue;
            for (int j = 1; j <= d.n; ++j) {
                Poly h = derive(g, i, j, 1);
                if (!h.is_zero()) out.push_back(std::move(h));
            }
        }
    if (ops & kPolarizations)
        for (int k = 1; k <= d.ell; ++k) {
            const int dk = deg[static_cast<std::size_t>(k - 1)];
            for (int p = 1; p <= std::min(max_p, dk); ++p)
                for (int i = 1; i <= d.ell; ++i) {
                    if (i == k && p == 1) continue; // Euler operator: scalar multiple
                    Poly h = polarize(g, i, k, p);
                    if (!h.is_zero()) out.push_back(std::move(h));
                }
        }
    return out;
}

// Bulk-synchronous worklist; the final reduced bases do not depend on scheduling.
inline void close_from(GradedSpan& span, std::vector<Poly> frontier, unsigned ops, int max_p, int threads) {
    while (!frontier.empty()) {
        std::vector<std::vector<Poly>> produced(frontier.size());
        parallel_for(frontier.size(), threads,
                     [&](std::size_t k) { produced[k] = apply_operators(frontier[k], ops, max_p); });
        std::map<MultiDegree, std::vector<const Poly*>, DegreeOrder> inbox;
        for (auto& batch : produced)
            for (auto& g : batch) inbox[multidegree(g)].push_back(&g);
        std::vector<std::pair<Component*, const std::vector<const Poly*>*>> work;
        for (auto& [deg, items] : inbox) work.push_back({&span.ensure(deg), &items});
        std::vector<std::vector<Poly>> added(work.size());
        parallel_for(work.size(), threads, [&](std::size_t k) {
            for (const Poly* g : *work[k].second)
                if (auto r = work[k].first->insert(*g)) added[k].push_back(std::move(*r));
        });
        frontier.clear();
        for (auto& a : added)
            for (auto& g : a) frontier.push_back(std::move(g));
    }
}

} // namespace detail

inline GradedSpan derivative_closure(GradedSpan span, int threads = 1) {
    detail::close_from(span, span.all_basis(), kDerivatives, span.max_degree(), threads);
    return span;
}

inline GradedSpan polarization_closure(GradedSpan span, int threads = 1) {
    detail::close_from(span, span.all_basis(), kPolarizations, span.max_degree(), threads);
    return span;
}

struct GeneratorFamily {
    enum class Mode { Orbit, Verbatim };
    std::vector<Poly> polys;
    Mode mode = Mode::Orbit;
};

// All sigma.f, generated breadth-first by adjacent transpositions.
inline std::vector<Poly> orbit(const Poly& f) {
    const int n = f.dims().n;
    std::set<Poly> seen{f};
    std::vector<Poly> out{f};
    for (std::size_t k = 0; k < out.size(); ++k)
        for (int j = 1; j < n; ++j) {
            Poly g = permute(out[k], Permutation::transposition(n, j, j + 1));
            if (seen.insert(g).second) out.push_back(g);
        }
    return out;
}

inline bool is_stable_family(const std::vector<Poly>& polys) {
    if (polys.empty()) return true;
    GradedSpan s(polys.front().dims());
    for (auto& g : polys) s.insert_remainder(g);
    const int n = polys.front().dims().n;
    for (auto& g : polys)
        for (int j = 1; j < n; ++j)
            if (!s.contains(permute(g, Permutation::transposition(n, j, j + 1)))) return false;
    return true;
}

// M_F: smallest space containing F, closed under all d_{ij} and E_{ik}^{(p)}.
inline GradedSpan polarization_module(const GeneratorFamily& F, int threads = 1) {
    if (F.polys.empty()) throw Error(ErrorKind::InvalidArgument, "empty generator family");
    const Dims d = F.polys.front().dims();
    std::vector<Poly> gens;
    for (auto& g : F.polys) {
        if (g.dims() != d) throw Error(ErrorKind::DimensionMismatch, "generators live in different rings");
        if (g.is_zero()) continue;
        multidegree(g); // throws NonHomogeneous
        gens.push_back(g);
    }
    if (gens.empty()) throw Error(ErrorKind::ZeroPolynomial, "all generators vanish");
    if (F.mode == GeneratorFamily::Mode::Verbatim) {
        if (!is_stable_family(gens))
            throw Error(ErrorKind::InvalidArgument, "verbatim family is not stable under the symmetric group");
    } else {
        std::vector<Poly> all;
        std::set<Poly> seen;
        for (auto& g : gens)
            for (auto& h : orbit(g))
                if (seen.insert(h).second) all.push_back(h);
        gens.swap(all);
    }
    GradedSpan span(d);
    span.generators = F.polys;
    int max_p = 0;
    std::vector<Poly> frontier;
    for (auto& g : gens) {
        max_p = std::max(max_p, g.max_total_degree());
        if (auto r = span.insert_remainder(g)) frontier.push_back(std::move(*r));
    }
    detail::close_from(span, std::move(frontier), kDerivatives | kPolarizations, max_p, threads);
    return span;
}

inline GradedSpan polarization_module(const Poly& f, int threads = 1) {
    return polarization_module(GeneratorFamily{{f}, GeneratorFamily::Mode::Orbit}, threads);
}

inline bool same_span(const GradedSpan& a, const GradedSpan& b) {
    if (a.degrees() != b.degrees()) return false;
    for (auto& d : a.degrees()) {
        if (a.dimension(d) != b.dimension(d)) return false;
        if (component_basis(a, d) != component_basis(b, d)) return false;
    }
    return true;
}

} // namespace polmod

#endif
