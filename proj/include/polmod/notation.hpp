#ifndef POLMOD_NOTATION_HPP
#define POLMOD_NOTATION_HPP

#include <cctype>
#include <string>
#include <vector>

#include "frobenius.hpp"

// Reader for series written the way the tables print them, e.g.
//   (1 + s[1] + {n-1} s[2]) s[n] + s[1] s[n-1,1]
// Braced coefficients are arithmetic in n; w-side shapes start with n.

namespace polmod {

namespace detail {

class NotationParser {
public:
    NotationParser(std::string s, int n) : s_(std::move(s)), n_(n) {}

    Rational nexpr_all() {
        Rational v = nsum();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

    // Frobenius text: sum of [coef] [q-part] w-atom.
    FrobeniusSeries frobenius(int ell) {
        FrobeniusSeries out;
        out.n = n_;
        out.ell = ell;
        bool first = true;
        char letter = 0;
        for (;;) {
            skip();
            if (pos_ == s_.size()) break;
            int sign = 1;
            if (accept('+')) sign = 1;
            else if (accept('-')) sign = -1;
            else if (!first) fail("expected '+' or '-'");
            first = false;
            Rational c = sign * coefficient();
            SymSeries q;
            skip();
            if (peek() == '(') {
                ++pos_;
                q = qsum(letter);
                expect(')');
            } else if (is_atom_start() && !w_atom_ahead()) {
                q.add(q_atom(letter), 1);
            } else {
                q.add({}, 1);
            }
            skip();
            if (!is_atom_start() || !w_atom_ahead()) fail("expected a w-side shape s[n...]");
            auto [wsign, lam] = w_atom(letter);
            if (wsign == 0) continue;
            for (auto& [mu, qc] : q.coeffs) out.add(mu, lam, c * qc * wsign);
        }
        out.basis = letter == 'h' ? Basis::Homogeneous : Basis::Schur;
        return out;
    }

    SymSeries hilbert() {
        char letter = 0;
        SymSeries s = qsum(letter);
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        s.basis = letter == 'h' ? Basis::Homogeneous : Basis::Schur;
        return s;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::Parse, msg + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
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
        return std::stol(s_.substr(start, pos_ - start));
    }

    // n-arithmetic: + - * / parentheses, n, integers, binom(a,b)
    Rational nsum() {
        Rational v;
        if (accept('-')) v = -nprod();
        else v = nprod();
        for (;;) {
            if (accept('+')) v += nprod();
            else if (accept('-')) v -= nprod();
            else return v;
        }
    }
    Rational nprod() {
        Rational v = natom();
        for (;;) {
            if (accept('*')) v *= natom();
            else if (accept('/')) {
                Rational d = natom();
                if (is_zero(d)) fail("division by zero");
                v /= d;
            } else return v;
        }
    }
    Rational natom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Rational v = nsum();
            expect(')');
            return v;
        }
        if (c == 'n') {
            ++pos_;
            return n_;
        }
        if (s_.compare(pos_, 6, "binom(") == 0) {
            pos_ += 6;
            Rational a = nsum();
            expect(',');
            Rational b = nsum();
            expect(')');
            if (!is_integer(a) || !is_integer(b)) fail("binom needs integers");
            return Rational(binomial(a.get_num().get_si(), b.get_num().get_si()));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Rational(integer());
        fail("bad coefficient expression");
    }

    Rational coefficient() {
        char c = peek();
        if (c == '{') {
            ++pos_;
            Rational v = nsum();
            expect('}');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Rational(integer());
        return 1;
    }

    bool is_atom_start() {
        char c = peek();
        return (c == 's' || c == 'h') && pos_ + 1 < s_.size() && s_[pos_ + 1] == '[';
    }
    bool w_atom_ahead() {
        std::size_t p = pos_ + 2;
        while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
        return p < s_.size() && s_[p] == 'n';
    }
    void note_letter(char& letter, char c) {
        if (letter && letter != c) fail("mixed s and h letters");
        letter = c;
    }

    Partition q_atom(char& letter) {
        note_letter(letter, s_[pos_]);
        pos_ += 2;
        std::vector<int> parts;
        if (!accept(']')) {
            do parts.push_back(static_cast<int>(integer()));
            while (accept(','));
            expect(']');
        }
        if (!is_partition(parts)) fail("q-side shape must be a partition");
        return parts;
    }

    std::pair<int, Partition> w_atom(char& letter) {
        note_letter(letter, s_[pos_]);
        pos_ += 2;
        expect('n');
        long first = n_;
        if (accept('-')) first -= integer();
        std::vector<int> parts{static_cast<int>(first)};
        while (accept(',')) parts.push_back(static_cast<int>(integer()));
        expect(']');
        for (int p : parts)
            if (p < 0) return {0, {}};
        if (letter == 'h') {
            // h is commutative, so any order is fine
            std::vector<int> v;
            for (int p : parts)
                if (p > 0) v.push_back(p);
            return {1, make_partition(v)};
        }
        return straighten(parts);
    }

    SymSeries qsum(char& letter) {
        SymSeries s;
        bool first = true;
        for (;;) {
            skip();
            if (pos_ == s_.size() || peek() == ')') break;
            int sign = 1;
            if (accept('+')) sign = 1;
            else if (accept('-')) sign = -1;
            else if (!first) fail("expected '+' or '-'");
            first = false;
            bool had_coef = peek() == '{' || std::isdigit(static_cast<unsigned char>(peek()));
            Rational c = sign * coefficient();
            Partition mu;
            if (is_atom_start()) {
                if (w_atom_ahead()) fail("w-side shape inside a q-sum");
                mu = q_atom(letter);
            } else if (!had_coef) {
                fail("expected a term");
            }
            s.add(mu, c);
        }
        return s;
    }

    std::string s_;
    std::size_t pos_ = 0;
    int n_;
};

} // namespace detail

inline Rational eval_nexpr(const std::string& text, int n) { return detail::NotationParser(text, n).nexpr_all(); }

// The result is in the basis named by its letters; s and h may not mix.
inline FrobeniusSeries parse_frobenius_text(const std::string& text, int n, int ell) {
    return detail::NotationParser(text, n).frobenius(ell);
}

inline SymSeries parse_hilbert_text(const std::string& text, int n) { return detail::NotationParser(text, n).hilbert(); }

} // namespace polmod

#endif
