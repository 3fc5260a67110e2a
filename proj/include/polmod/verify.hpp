#ifndef POLMOD_VERIFY_HPP
#define POLMOD_VERIFY_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "exceptions.hpp"
#include "generators.hpp"
#include "notation.hpp"

#ifndef POLMOD_DEFAULT_FIXTURE_DIR
#define POLMOD_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace polmod {

using Json = nlohmann::json;

inline std::filesystem::path fixture_dir() {
    if (const char* env = std::getenv("POLMOD_FIXTURES"); env && *env) return env;
    return POLMOD_DEFAULT_FIXTURE_DIR;
}

struct FixtureFile {
    std::string selector;
    std::string kind; // frobenius, hilbert, exceptions
    std::string mode; // assert, experiment
    std::string citation;
    Json data;
};

inline FixtureFile load_fixture(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Fixture, "cannot open fixture " + path.string());
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Fixture, path.string() + ": " + e.what());
    }
    FixtureFile f;
    f.selector = j.value("selector", "");
    f.kind = j.value("kind", "");
    f.mode = j.value("mode", "assert");
    f.citation = j.value("citation", "");
    if (f.selector.empty() || f.kind.empty() || f.citation.empty())
        throw Error(ErrorKind::Fixture, path.string() + ": selector, kind and citation are required");
    f.data = std::move(j);
    return f;
}

inline std::vector<FixtureFile> load_all_fixtures(const std::filesystem::path& dir = fixture_dir()) {
    std::vector<std::filesystem::path> paths;
    if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::Fixture, "fixture directory not found: " + dir.string());
    for (auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    std::vector<FixtureFile> out;
    for (auto& p : paths) out.push_back(load_fixture(p));
    return out;
}

enum class Verdict { Pass, Fail, Erratum, DuplicateOther, Report, Skip };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Erratum: return "FAIL(erratum)";
    case Verdict::DuplicateOther: return "DUPLICATE";
    case Verdict::Report: return "REPORT";
    case Verdict::Skip: return "SKIP";
    }
    return "?";
}

// Counts as a mismatch for the exit status.
inline bool is_failure(Verdict v) { return v == Verdict::Fail || v == Verdict::Erratum; }

struct RowOutcome {
    std::string id;
    int n = 0;
    int ell = 0;
    Verdict verdict = Verdict::Pass;
    std::string expected;
    std::string got;
    std::string detail;
};

struct SetReport {
    std::string selector;
    std::string citation;
    std::vector<RowOutcome> rows;

    int count(Verdict v) const {
        int c = 0;
        for (auto& r : rows) c += r.verdict == v;
        return c;
    }
    int failures() const {
        int c = 0;
        for (auto& r : rows) c += is_failure(r.verdict);
        return c;
    }
};

struct ModuleResult {
    FrobeniusSeries frobenius;
    SymSeries hilbert;
    std::size_t dimension = 0;
};

// Memo of computed modules keyed by generators, n and ell.
class ModuleCache {
public:
    explicit ModuleCache(int threads = 1) : threads_(threads) {}

    const ModuleResult& get(const std::vector<std::string>& gens, int n, int ell) {
        std::string key = std::to_string(n) + "|" + std::to_string(ell);
        for (auto& g : gens) key += "|" + g;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Dims d{ell, n};
        check_dims(d);
        GradedSpan M = polarization_module(build_family(gens, d), threads_);
        ModuleResult r;
        r.frobenius = frobenius_series(M, threads_);
        r.hilbert = hilbert_series(M);
        r.dimension = M.total_dimension();
        return memo_.emplace(key, std::move(r)).first->second;
    }

private:
    int threads_;
    std::map<std::string, ModuleResult> memo_;
};

namespace detail {

inline std::vector<std::string> row_generators(const Json& row) {
    std::vector<std::string> g;
    for (auto& s : row.at("generators")) g.push_back(s.get<std::string>());
    if (g.empty()) throw Error(ErrorKind::Fixture, "row without generators");
    return g;
}

// n values a row runs at: explicit list, else the regime's first two values.
inline std::vector<int> row_ns(const Json& row, const Json& file) {
    std::vector<int> ns;
    if (row.contains("n")) {
        for (auto& v : row["n"]) ns.push_back(v.get<int>());
        return ns;
    }
    if (row.contains("n_min")) {
        int lo = row["n_min"].get<int>();
        ns.push_back(lo);
        if (row["n_max"].is_null()) ns.push_back(lo + 1);
        else if (row["n_max"].get<int>() != lo) ns.push_back(row["n_max"].get<int>());
        return ns;
    }
    if (file.contains("n"))
        for (auto& v : file["n"]) ns.push_back(v.get<int>());
    if (ns.empty()) throw Error(ErrorKind::Fixture, "row " + row.value("id", "?") + " has no n");
    return ns;
}

inline bool mentions(const FrobeniusSeries& f, const std::vector<Partition>& mus) {
    for (auto& [k, c] : f.coeffs)
        for (auto& m : mus)
            if (k.first == m) return true;
    return false;
}

inline SymSeries as_schur(const SymSeries& s) { return s.basis == Basis::Schur ? s : h_to_schur(s); }

inline FrobeniusSeries as_schur(const FrobeniusSeries& f) {
    return f.basis == Basis::Schur ? f : frobenius_from_h(f);
}

inline RowOutcome run_series_row(const FixtureFile& file, const Json& row, int n, int ell, ModuleCache& cache) {
    RowOutcome out;
    out.id = row.at("id").get<std::string>();
    out.n = n;
    out.ell = ell;
    const auto gens = row_generators(row);
    const ModuleResult& M = cache.get(gens, n, ell);
    const std::string text = row.at("expect").get<std::string>();
    bool ok = false;
    std::optional<bool> erratum_ok;
    if (file.kind == "frobenius") {
        FrobeniusSeries got = truncate(M.frobenius, ell);
        FrobeniusSeries want = truncate(as_schur(parse_frobenius_text(text, n, ell)), ell);
        want.n = got.n;
        ok = got == want;
        out.expected = render_frobenius(want);
        out.got = render_frobenius(got);
        if (!ok && row.contains("erratum")) {
            FrobeniusSeries alt = truncate(as_schur(parse_frobenius_text(row["erratum"].get<std::string>(), n, ell)), ell);
            alt.n = got.n;
            erratum_ok = alt == got;
        }
        if (ok && row.contains("expect_hilbert")) {
            SymSeries hw = truncate(as_schur(parse_hilbert_text(row["expect_hilbert"].get<std::string>(), n)), ell);
            if (hw != M.hilbert) {
                ok = false;
                out.expected = render_symseries(hw);
                out.got = render_symseries(M.hilbert);
                out.detail = "Hilbert series differs";
            }
        }
    } else {
        SymSeries parsed = parse_hilbert_text(text, n);
        SymSeries want = truncate(as_schur(parsed), ell);
        ok = want == M.hilbert;
        if (parsed.basis == Basis::Homogeneous) {
            out.expected = text;
            out.got = render_symseries(schur_to_h(M.hilbert));
            out.detail = "compared in the Schur basis up to length " + std::to_string(ell);
        } else {
            out.expected = render_symseries(want);
            out.got = render_symseries(M.hilbert);
        }
    }
    if (ok) out.verdict = Verdict::Pass;
    else if (erratum_ok && *erratum_ok) {
        out.verdict = Verdict::Erratum;
        out.detail = "engine matches the documented correction";
    } else out.verdict = Verdict::Fail;
    if (row.contains("note") && !ok) out.detail += (out.detail.empty() ? "" : "; ") + row["note"].get<std::string>();
    return out;
}

struct ConicCoeffs {
    Integer ab, ac, bb; // k*u a b + k*v a c - w b^2 = 0
    bool operator==(const ConicCoeffs& o) const { return ab == o.ab && ac == o.ac && bb == o.bb; }
};

inline std::optional<ConicCoeffs> parse_conic(const std::string& s) {
    static const std::regex re(R"((\d*)a\((\d*)b\+(\d*)c\)=(\d*)b\^2)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) return std::nullopt;
    auto num = [&](int k) { return m[k].str().empty() ? Integer(1) : Integer(m[k].str()); };
    return ConicCoeffs{num(1) * num(2), num(1) * num(3), num(4)};
}

inline std::vector<RowOutcome> run_exception_file(const FixtureFile& file) {
    std::vector<RowOutcome> out;
    for (auto& table : file.data.at("tables")) {
        for (auto& row : table.at("rows")) {
            RowOutcome r;
            r.id = row.at("id").get<std::string>();
            r.n = row.at("n").get<int>();
            r.expected = row.at("equation").get<std::string>();
            ExceptionEquation eq = exception_equation(r.n);
            r.got = eq.render();
            if (r.got == r.expected) r.verdict = Verdict::Pass;
            else if (row.contains("erratum") && row["erratum"].get<std::string>() == r.got) {
                r.verdict = Verdict::Erratum;
                r.detail = row.value("note", "");
            } else {
                r.verdict = Verdict::Fail;
                auto a = parse_conic(r.expected), b = parse_conic(r.got);
                if (a && b && *a == *b) r.detail = "same conic, different normal form";
            }
            out.push_back(r);
        }
    }
    for (auto& p : file.data.value("points", Json::array())) {
        RowOutcome r;
        r.n = p.at("n").get<int>();
        auto abc = p.at("abc");
        Rational a = abc[0].get<long>(), b = abc[1].get<long>(), c = abc[2].get<long>();
        r.id = "point/[" + to_string(a) + ":" + to_string(b) + ":" + to_string(c) + "]/n=" + std::to_string(r.n);
        bool want = p.at("exception").get<bool>();
        bool got = is_n_exception(a, b, c, r.n);
        r.expected = want ? "exception" : "not an exception";
        r.got = got ? "exception" : "not an exception";
        r.verdict = want == got ? Verdict::Pass : Verdict::Fail;
        out.push_back(r);
    }
    return out;
}

// Rows sharing a duplicate group pass as a group if any member matches.
inline void settle_duplicates(const Json& rows, std::vector<RowOutcome>& outcomes) {
    std::map<std::string, std::string> group; // id -> group head
    for (auto& row : rows)
        if (row.contains("duplicate_of")) {
            std::string head = row["duplicate_of"].get<std::string>();
            group[row["id"].get<std::string>()] = head;
            group[head] = head;
        }
    std::map<std::pair<std::string, int>, bool> any_pass;
    for (auto& o : outcomes)
        if (group.count(o.id) && o.verdict == Verdict::Pass) any_pass[{group[o.id], o.n}] = true;
    for (auto& o : outcomes) {
        if (!group.count(o.id) || o.verdict == Verdict::Pass) continue;
        if (any_pass[{group[o.id], o.n}]) {
            o.verdict = Verdict::DuplicateOther;
            o.detail = "listed twice; the engine matches the other listing";
        }
    }
}

} // namespace detail

inline SetReport run_fixture(const FixtureFile& file, ModuleCache& cache) {
    SetReport rep;
    rep.selector = file.selector;
    rep.citation = file.citation;
    if (file.kind == "exceptions") {
        rep.rows = detail::run_exception_file(file);
    } else {
        const Json& rows = file.data.at("rows");
        std::vector<Partition> rerun;
        for (auto& p : file.data.value("rerun_ell3_for", Json::array())) rerun.push_back(p.get<Partition>());
        for (auto& row : rows) {
            int ell = row.value("ell", file.data.value("ell", 2));
            for (int n : detail::row_ns(row, file.data)) {
                RowOutcome o;
                try {
                    o = detail::run_series_row(file, row, n, ell, cache);
                    if (file.kind == "frobenius" && ell < 3 && !rerun.empty() && o.verdict == Verdict::Pass) {
                        auto want = parse_frobenius_text(row.at("expect").get<std::string>(), n, 3);
                        if (detail::mentions(detail::as_schur(want), rerun)) {
                            RowOutcome o3 = detail::run_series_row(file, row, n, 3, cache);
                            if (o3.verdict != Verdict::Pass) o = o3;
                            else o.detail = "also checked at ell=3";
                        }
                    }
                } catch (const Error& e) {
                    if (is_internal(e.kind())) throw;
                    o.id = row.value("id", "?");
                    o.n = n;
                    o.ell = ell;
                    o.verdict = Verdict::Fail;
                    o.detail = e.what();
                }
                rep.rows.push_back(o);
            }
        }
        detail::settle_duplicates(rows, rep.rows);
    }
    if (file.mode == "experiment")
        for (auto& r : rep.rows)
            if (r.verdict != Verdict::Pass) r.verdict = Verdict::Report;
    return rep;
}

inline std::vector<std::string> fixture_selectors(const std::vector<FixtureFile>& files) {
    std::vector<std::string> s;
    for (auto& f : files) s.push_back(f.selector);
    return s;
}

} // namespace polmod

#endif
