#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>

#include "polmod/generators.hpp"
#include "polmod/symfunc.hpp"
#include "polmod/verify.hpp"

using namespace polmod;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const char* bin = std::getenv("POLMOD_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t k;
    while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), k);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

int count_lines_starting(const std::string& text, const std::string& prefix) {
    int c = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        if (text.compare(pos, prefix.size(), prefix) == 0) ++c;
        pos = end + 1;
    }
    return c;
}

ErrorKind parse_error_kind(const std::string& text) {
    try {
        parse_generator(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error for '" << text << "'");
    return ErrorKind::Fixture;
}

} // namespace

TEST_CASE("generator grammar") {
    Dims d{2, 3};
    CHECK(expand(parse_generator("m[2]+2*m[1,1]").expr, d) == expand_basis(Basis::PowerSum, {1, 1}, 1, d));
    CHECK(expand(parse_generator("p[3]").expr, d) == expand_basis(Basis::PowerSum, {3}, 1, d));
    CHECK(expand(parse_generator("1/2*e[2] - h[1]^2").expr, d) ==
          make_rational(1, 2) * expand_basis(Basis::Elementary, {2}, 1, d) - expand_basis(Basis::Homogeneous, {1, 1}, 1, d));
    CHECK(expand(parse_generator("x[1,1]*x[2,2]").expr, d) == Poly::variable(d, 1, 1) * Poly::variable(d, 2, 2));
    CHECK(parse_generator("family:A:3").type == GeneratorSpec::Type::Family);
    CHECK(parse_generator(" vandermonde ").type == GeneratorSpec::Type::Vandermonde);
    CHECK(parse_error_kind("p[3") == ErrorKind::Parse);
    CHECK(parse_error_kind("2**p[1]") == ErrorKind::Parse);
    CHECK(parse_error_kind("q[1]") == ErrorKind::Parse);
    CHECK(parse_error_kind("") == ErrorKind::Parse);
    CHECK(parse_error_kind("p[2]^") == ErrorKind::Parse);
    CHECK(parse_error_kind("family:Z:3") == ErrorKind::UnknownFamily);
    try {
        parse_generator("p[2] + + e[1]");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
    // x indices beyond the ring are caught at expansion time
    CHECK_THROWS_AS(expand(parse_generator("x[3,1]").expr, d), Error);
}

TEST_CASE("every fixture generator round-trips through render") {
    auto files = load_all_fixtures();
    REQUIRE(!files.empty());
    int seen = 0;
    for (auto& f : files) {
        if (!f.data.contains("rows")) continue;
        for (auto& row : f.data.at("rows"))
            for (auto& g : detail::row_generators(row)) {
                auto a = parse_generator(g);
                auto b = parse_generator(render(a));
                INFO(g << " -> " << render(a));
                CHECK(a == b);
                CHECK(render(b) == render(a));
                ++seen;
            }
    }
    CHECK(seen > 50);
}

TEST_CASE("error kinds map to exit codes") {
    CHECK(is_internal(ErrorKind::NonIntegral));
    CHECK(is_internal(ErrorKind::NegativeCoefficient));
    CHECK(is_internal(ErrorKind::NotSymmetric));
    CHECK_FALSE(is_internal(ErrorKind::Parse));
    CHECK_FALSE(is_internal(ErrorKind::NonHomogeneous));
}

TEST_CASE("command line: exit codes") {
    CHECK(run("frobenius --gen 'p[2]' --n 4 --ell 2").code == 0);
    CHECK(run("frobenius --gen 'p[2' --n 4").code == 1);
    CHECK(run("frobenius --gen 'x[1,1]+x[1,2]^2' --n 3").code == 1);
    CHECK(run("frobenius --n 4").code == 1);
    CHECK(run("nonsense").code == 1);
    CHECK(run("frobenius --gen vandermonde --n 5").code == 1);
    CHECK(run("hilbert --gen 'family:Q:2' --n 3").code == 1);
}

TEST_CASE("command line: text output") {
    auto r = run("frobenius --gen 'p[2]' --n 5 --ell 2");
    CHECK(r.out.find("(1 + s[1] + s[2]) s[n] + s[1] s[n-1,1]") != std::string::npos);
    auto h = run("hilbert --gen 'p[2]' --n 5 --ell 2");
    CHECK(h.out.find("1 + 5 s[1] + s[2]") != std::string::npos);
    auto c = run("classify --point 1:3:6 --n 4");
    CHECK(c.out.find("P1_CUBED") != std::string::npos);
    auto e = run("exceptions --n 4");
    CHECK(e.out.find("a(b+c)=b^2") != std::string::npos);
    auto full = run("frobenius --gen 'h[3]' --n 4 --full-mu");
    CHECK(full.code == 0);
    CHECK(full.out.find("ell=3") != std::string::npos);
}

TEST_CASE("command line: JSON is stable across thread counts") {
    auto a = run("frobenius --gen 'h[3]' --n 4 --ell 2 --format json --threads 1");
    auto b = run("frobenius --gen 'h[3]' --n 4 --ell 2 --format json --threads 3");
    auto c = run("frobenius --gen 'h[3]' --n 4 --ell 2 --format json");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    auto j = nlohmann::json::parse(a.out);
    for (auto key : {"n", "ell", "generators", "frobenius", "hilbert", "hilbert_h_basis", "dimension"})
        CHECK(j.contains(key));
    CHECK(j.at("n") == 4);
    CHECK(j.at("frobenius").at(0).contains("mu"));
    CHECK(j.at("frobenius").at(0).contains("lambda"));
    CHECK(j.at("frobenius").at(0).contains("coeff"));
    auto ex = nlohmann::json::parse(run("exceptions --n 5 --point 4:-3:4 --point 1:1:1 --format json").out);
    CHECK(ex.at("equation").at("lhs") == "3a(2b+3c)");
    CHECK(ex.at("equation").at("rhs") == "8b^2");
    CHECK(ex.at("points").at(0).at("exception") == true);
    CHECK(ex.at("points").at(0).at("class") == "P3");
    CHECK(ex.at("points").at(1).at("exception") == false);
    CHECK(ex.at("points").at(1).at("class") == "H3");
    auto basis = nlohmann::json::parse(run("basis --gen 'p[2]' --n 3 --ell 1 --format json").out);
    CHECK(basis.contains("components"));
}

TEST_CASE("command line: verify") {
    auto fast = run("verify examples:fast");
    CHECK(fast.code == 0);
    CHECK(count_lines_starting(fast.out, "FAIL") == 0);
    auto ex = run("verify exceptions");
    CHECK(ex.code == 1);
    CHECK(count_lines_starting(ex.out, "FAIL(erratum)") == 1);
    CHECK(count_lines_starting(ex.out, "FAIL ") == 0);
    CHECK(ex.out.find("conic42/n=28") != std::string::npos);
    CHECK(run("verify no-such-table").code == 1);
    CHECK(run("verify examples:fast --fixtures /nonexistent").code == 1);
}
