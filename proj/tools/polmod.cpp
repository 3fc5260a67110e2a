#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polmod/report.hpp"
#include "polmod/verify.hpp"

using namespace polmod;

namespace {

struct Options {
    int n = 0;
    int ell = 1;
    std::vector<std::string> gens;
    std::string format = "text";
    bool full_mu = false;
    int threads = 1;
    bool allow_large = false;
    std::vector<std::string> points;
    std::vector<std::string> selectors;
    std::string fixtures;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<GeneratorSpec> parse_gens(const Options& o) {
    if (o.gens.empty()) throw UsageError("at least one --gen is required");
    std::vector<GeneratorSpec> out;
    for (auto& g : o.gens) out.push_back(parse_generator(g));
    for (auto& g : out)
        if (g.type == GeneratorSpec::Type::Vandermonde && o.n > 4 && !o.allow_large)
            throw UsageError("vandermonde is limited to n <= 4; pass --allow-large to override");
    return out;
}

int max_degree(const std::vector<GeneratorSpec>& gens, int n) {
    int deg = 0;
    for (auto& p : build_family(gens, Dims{1, n}).polys) deg = std::max(deg, p.max_total_degree());
    return deg;
}

Dims job_dims(const Options& o, const std::vector<GeneratorSpec>& gens) {
    if (o.n < 1) throw UsageError("--n must be at least 1");
    int ell = o.ell;
    // mu never needs more rows than n or than the degree
    if (o.full_mu) ell = std::max(1, std::min(o.n, max_degree(gens, o.n)));
    if (ell < 1) throw UsageError("--ell must be at least 1");
    Dims d{ell, o.n};
    check_dims(d);
    return d;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_series(const Options& o, bool frobenius) {
    auto gens = parse_gens(o);
    Dims d = job_dims(o, gens);
    ModuleReport r = module_report(gens, d, o.threads);
    if (o.format == "json") {
        print_json(module_json(r));
        return 0;
    }
    if (frobenius) std::cout << render_frobenius(r.frobenius) << "\n";
    else {
        std::cout << render_symseries(r.hilbert) << "\n";
        std::cout << "h-basis: " << render_symseries(schur_to_h(r.hilbert)) << "\n";
    }
    std::cout << "n=" << d.n << " ell=" << d.ell << " dimension=" << r.dimension << "\n";
    return 0;
}

int cmd_basis(const Options& o) {
    auto gens = parse_gens(o);
    Dims d = job_dims(o, gens);
    GradedSpan M = polarization_module(build_family(gens, d), o.threads);
    std::vector<std::string> names;
    for (auto& g : gens) names.push_back(render(g));
    if (o.format == "json") {
        print_json(span_json(M, names));
        return 0;
    }
    for (auto& deg : M.degrees()) {
        std::cout << "degree " << degree_string(deg) << " (dimension " << M.dimension(deg) << ")\n";
        for (auto& p : M.component(deg)->basis()) std::cout << "  " << render(p) << "\n";
    }
    std::cout << "total dimension " << M.total_dimension() << "\n";
    return 0;
}

std::vector<Rational> parse_point(const std::string& text) {
    std::vector<Rational> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) v.push_back(parse_rational(part));
    if (v.size() != 2 && v.size() != 3) throw UsageError("a point is a:b or a:b:c, got '" + text + "'");
    return v;
}

// Coordinates of a symmetric form of degree 2 or 3 in the monomial basis.
std::vector<Rational> point_of(const Poly& f, int n) {
    if (f.is_zero() || !is_homogeneous(f) || !is_symmetric_in_row(f, 1))
        throw UsageError("classify needs a nonzero symmetric form in the first row");
    int deg = f.max_total_degree();
    auto coeff = [&](std::vector<int> e) {
        ExponentMatrix m;
        for (std::size_t j = 0; j < e.size(); ++j)
            if (e[j]) m.set(static_cast<int>(j), e[j]);
        return f.coeff(m);
    };
    if (deg == 2) return {coeff({2}), n >= 2 ? coeff({1, 1}) : Rational(0)};
    if (deg == 3) return {coeff({3}), n >= 2 ? coeff({2, 1}) : Rational(0), n >= 3 ? coeff({1, 1, 1}) : Rational(0)};
    throw UsageError("classification is defined for degrees 2 and 3");
}

ClassifiedPoint classify_point(const std::vector<Rational>& abc, int n) {
    ClassifiedPoint p;
    p.abc = abc;
    p.tag = classify(static_cast<int>(abc.size()), abc, n);
    p.exception = p.tag == ClassTag::P3;
    return p;
}

int cmd_classify(const Options& o) {
    if (o.n < 2) throw UsageError("--n must be at least 2");
    std::vector<std::vector<Rational>> pts;
    for (auto& s : o.points) pts.push_back(parse_point(s));
    for (auto& g : o.gens) pts.push_back(point_of(expand(parse_generator(g).expr, Dims{1, o.n}), o.n));
    if (pts.empty()) throw UsageError("give --gen or --point");
    std::vector<ClassifiedPoint> out;
    for (auto& p : pts) out.push_back(classify_point(p, o.n));
    if (o.format == "json") {
        print_json(exceptions_json(o.n, out));
        return 0;
    }
    for (auto& p : out) {
        std::string s = "[";
        for (std::size_t k = 0; k < p.abc.size(); ++k) s += (k ? ":" : "") + to_string(p.abc[k]);
        s += "]";
        OracleParams prm{o.n, static_cast<int>(p.abc.size()), p.tag};
        auto series = truncate(oracle_series(p.abc.size() == 2 ? OracleKind::Deg2 : OracleKind::Deg3, prm), o.ell);
        std::cout << s << " " << class_name(p.tag) << "  " << render_frobenius(series) << "\n";
    }
    return 0;
}

int cmd_exceptions(const Options& o) {
    if (o.n < 2) throw UsageError("--n must be at least 2");
    std::vector<ClassifiedPoint> out;
    for (auto& s : o.points) {
        auto abc = parse_point(s);
        if (abc.size() != 3) throw UsageError("exception points are a:b:c");
        out.push_back(classify_point(abc, o.n));
    }
    if (o.format == "json") {
        print_json(exceptions_json(o.n, out));
        return 0;
    }
    if (o.n >= 3) std::cout << "n=" << o.n << ": " << exception_equation(o.n).render() << "  (excluding [1:3:6])\n";
    else std::cout << "n=2: b=0\n";
    for (auto& p : out)
        std::cout << "[" << to_string(p.abc[0]) << ":" << to_string(p.abc[1]) << ":" << to_string(p.abc[2]) << "] "
                  << (p.exception ? "exception" : "not an exception") << " (" << class_name(p.tag) << ")\n";
    return 0;
}

int cmd_verify(const Options& o) {
    auto files = load_all_fixtures(o.fixtures.empty() ? fixture_dir() : std::filesystem::path(o.fixtures));
    std::vector<std::string> sel = o.selectors.empty() ? std::vector<std::string>{"all"} : o.selectors;
    std::vector<const FixtureFile*> chosen;
    for (auto& s : sel) {
        bool found = false;
        for (auto& f : files)
            if (s == "all" || f.selector == s) {
                chosen.push_back(&f);
                found = true;
            }
        if (!found) {
            std::string known;
            for (auto& k : fixture_selectors(files)) known += " " + k;
            throw UsageError("unknown selector '" + s + "'; known:" + known);
        }
    }
    ModuleCache cache(o.threads);
    int failures = 0;
    Json all = Json::array();
    for (auto* f : chosen) {
        SetReport rep = run_fixture(*f, cache);
        failures += rep.failures();
        if (o.format == "json") {
            Json rows = Json::array();
            for (auto& r : rep.rows)
                rows.push_back({{"id", r.id}, {"n", r.n}, {"ell", r.ell}, {"verdict", verdict_name(r.verdict)},
                                {"expected", r.expected}, {"got", r.got}, {"detail", r.detail}});
            all.push_back({{"selector", rep.selector}, {"citation", rep.citation}, {"rows", rows},
                           {"failures", rep.failures()}});
            continue;
        }
        std::cout << "# " << rep.selector << "  (" << rep.citation << ")\n";
        for (auto& r : rep.rows) {
            std::cout << verdict_name(r.verdict) << "  " << r.id << "  n=" << r.n;
            if (r.ell) std::cout << " ell=" << r.ell;
            if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
            std::cout << "\n";
            if (r.verdict != Verdict::Pass) {
                std::cout << "    expected: " << r.expected << "\n";
                std::cout << "    got:      " << r.got << "\n";
            }
        }
        std::cout << "summary " << rep.selector << ": " << rep.count(Verdict::Pass) << " pass, " << rep.failures()
                  << " fail";
        if (int e = rep.count(Verdict::Erratum)) std::cout << " (" << e << " match a documented correction)";
        if (int d = rep.count(Verdict::DuplicateOther)) std::cout << ", " << d << " duplicate listing(s)";
        if (int x = rep.count(Verdict::Report)) std::cout << ", " << x << " experiment mismatch(es), not counted";
        std::cout << "\n\n";
    }
    if (o.format == "json") print_json({{"sets", all}, {"failures", failures}});
    else std::cout << (failures ? "VERIFY FAILED: " : "VERIFY OK: ") << failures << " mismatch(es)\n";
    return failures ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polarization modules: Frobenius characteristics, Hilbert series and degree 3 exceptions"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool needs_gen) {
        sub->add_option("--n", o.n, "number of columns")->required(needs_gen);
        sub->add_option("--ell", o.ell, "number of variable rows")->check(CLI::PositiveNumber);
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--full-mu", o.full_mu, "use enough rows to see every mu");
    };
    auto gen_opts = [&](CLI::App* sub) {
        sub->add_option("--gen", o.gens, "generator: p[..] e[..] h[..] m[..] s[..] x[i,j], family:X:d, vandermonde");
        sub->add_flag("--allow-large", o.allow_large, "lift the n <= 4 limit on vandermonde");
    };

    auto* fro = app.add_subcommand("frobenius", "graded Frobenius characteristic");
    common(fro, true);
    gen_opts(fro);
    auto* hil = app.add_subcommand("hilbert", "Hilbert series in the Schur and h bases");
    common(hil, true);
    gen_opts(hil);
    auto* bas = app.add_subcommand("basis", "graded basis of the module");
    common(bas, true);
    gen_opts(bas);
    auto* cls = app.add_subcommand("classify", "classify degree 2 or 3 symmetric generators");
    common(cls, true);
    gen_opts(cls);
    cls->add_option("--point", o.points, "projective point a:b or a:b:c in the monomial basis");
    auto* exc = app.add_subcommand("exceptions", "n-exception conic and point tests");
    common(exc, true);
    exc->add_option("--point", o.points, "point a:b:c");
    auto* ver = app.add_subcommand("verify", "check the bundled fixture tables");
    common(ver, false);
    ver->add_option("selectors", o.selectors, "table:4 table:5 homog examples:fast hilbert:4 hilbert:5 hbasis:4 hbasis:5 exceptions monomials:3 all");
    ver->add_option("--fixtures", o.fixtures, "fixture directory (default: $POLMOD_FIXTURES or the bundled one)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*fro) return cmd_series(o, true);
        if (*hil) return cmd_series(o, false);
        if (*bas) return cmd_basis(o);
        if (*cls) return cmd_classify(o);
        if (*exc) return cmd_exceptions(o);
        if (*ver) return cmd_verify(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_internal(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
