#include "majlab/ncpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace majlab {

namespace {

constexpr int kMaxWordLen = 32;
constexpr int kMaxDegree = 12;

char letter_char(int bit, Alphabet alphabet) {
    if (alphabet == Alphabet::AB) return bit == 0 ? 'A' : 'B';
    return bit == 0 ? 'H' : 'X';
}

} // namespace

Word::Word(std::uint32_t bits_, int len_) {
    if (len_ < 0 || len_ > kMaxWordLen)
        throw std::invalid_argument("word length out of range");
    len = static_cast<std::uint8_t>(len_);
    bits = len_ == kMaxWordLen ? bits_ : (bits_ & ((1u << len_) - 1u));
}

Word Word::reversed() const {
    Word r;
    r.len = len;
    for (int i = 0; i < len; ++i)
        r.bits |= static_cast<std::uint32_t>(letter(i)) << (len - 1 - i);
    return r;
}

Word Word::concat(const Word& rhs) const {
    if (len + rhs.len > kMaxWordLen)
        throw std::length_error("word too long");
    Word r;
    r.len = static_cast<std::uint8_t>(len + rhs.len);
    r.bits = bits | static_cast<std::uint32_t>(static_cast<std::uint64_t>(rhs.bits) << len);
    return r;
}

bool WordLess::operator()(const Word& a, const Word& b) const {
    if (a.len != b.len) return a.len < b.len;
    for (int i = 0; i < a.len; ++i) {
        if (a.letter(i) != b.letter(i)) return a.letter(i) < b.letter(i);
    }
    return false;
}

Word word_from_string(const std::string& s, Alphabet alphabet) {
    if (s.size() > static_cast<std::size_t>(kMaxWordLen))
        throw std::invalid_argument("word too long");
    Word w;
    w.len = static_cast<std::uint8_t>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == letter_char(1, alphabet))
            w.bits |= 1u << i;
        else if (s[i] != letter_char(0, alphabet))
            throw std::invalid_argument("unexpected letter in word");
    }
    return w;
}

std::string word_to_string(const Word& w, Alphabet alphabet) {
    std::string out;
    int i = 0;
    while (i < w.length()) {
        int j = i;
        while (j < w.length() && w.letter(j) == w.letter(i)) ++j;
        out += letter_char(w.letter(i), alphabet);
        if (j - i > 1) {
            out += '^';
            out += std::to_string(j - i);
        }
        i = j;
    }
    return out;
}

Rational NCPoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

void NCPoly::add_term(const Word& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

NCPoly& NCPoly::operator+=(const NCPoly& rhs) {
    if (alphabet_ != rhs.alphabet_)
        throw std::invalid_argument("alphabet mismatch");
    for (const auto& [w, c] : rhs.terms_) add_term(w, c);
    return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& rhs) {
    if (alphabet_ != rhs.alphabet_)
        throw std::invalid_argument("alphabet mismatch");
    for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
    return *this;
}

NCPoly NCPoly::letter(int which, Alphabet alphabet) {
    if (which != 0 && which != 1)
        throw std::invalid_argument("letter index must be 0 or 1");
    NCPoly p(alphabet);
    p.add_term(Word(static_cast<std::uint32_t>(which), 1), Rational(1));
    return p;
}

NCPoly NCPoly::one(Alphabet alphabet) {
    NCPoly p(alphabet);
    p.add_term(Word(), Rational(1));
    return p;
}

NCPoly operator+(NCPoly lhs, const NCPoly& rhs) {
    lhs += rhs;
    return lhs;
}

NCPoly operator-(NCPoly lhs, const NCPoly& rhs) {
    lhs -= rhs;
    return lhs;
}

NCPoly operator-(const NCPoly& p) {
    NCPoly r(p.alphabet());
    for (const auto& [w, c] : p.terms()) r.add_term(w, -c);
    return r;
}

NCPoly operator*(const Rational& s, const NCPoly& p) {
    NCPoly r(p.alphabet());
    if (s == 0) return r;
    for (const auto& [w, c] : p.terms()) r.add_term(w, s * c);
    return r;
}

NCPoly operator*(const NCPoly& lhs, const NCPoly& rhs) {
    if (lhs.alphabet() != rhs.alphabet())
        throw std::invalid_argument("alphabet mismatch");
    NCPoly r(lhs.alphabet());
    for (const auto& [wl, cl] : lhs.terms())
        for (const auto& [wr, cr] : rhs.terms())
            r.add_term(wl.concat(wr), cl * cr);
    return r;
}

NCPoly nc_adjoint(const NCPoly& p) {
    NCPoly r(p.alphabet());
    for (const auto& [w, c] : p.terms()) r.add_term(w.reversed(), c);
    return r;
}

NCPoly substitute_hx(const NCPoly& p) {
    if (p.alphabet() != Alphabet::AB)
        throw std::invalid_argument("substitute_hx expects an AB polynomial");
    const NCPoly h = NCPoly::letter(0, Alphabet::HX);
    const NCPoly x = NCPoly::letter(1, Alphabet::HX);
    const Rational half(1, 2);
    const NCPoly sub_a = half * (h + x);
    const NCPoly sub_b = half * (h - x);

    NCPoly out(Alphabet::HX);
    for (const auto& [w, c] : p.terms()) {
        NCPoly acc = NCPoly::one(Alphabet::HX);
        for (int i = 0; i < w.length(); ++i)
            acc = acc * (w.letter(i) == 0 ? sub_a : sub_b);
        out += c * acc;
    }
    return out;
}

NCPoly nc_comm(const NCPoly& x, const NCPoly& y) {
    return x * y - y * x;
}

NCPoly nc_anticomm(const NCPoly& x, const NCPoly& y) {
    return x * y + y * x;
}

NCPoly nc_ad_power(const NCPoly& x, const NCPoly& y, int m) {
    if (m < 0) throw std::invalid_argument("ad power must be nonnegative");
    NCPoly r = y;
    for (int i = 0; i < m; ++i) r = nc_comm(x, r);
    return r;
}

namespace {

void check_degree(int k) {
    if (k < 1 || k > kMaxDegree)
        throw std::invalid_argument("degree out of supported range");
}

Rational binom(int k, int p) {
    Rational r(1);
    for (int i = 0; i < p; ++i) r = r * Rational(k - i) / Rational(i + 1);
    return r;
}

} // namespace

NCPoly nc_Qk(int k) {
    check_degree(k);
    NCPoly q(Alphabet::AB);
    for (int p = 0; p <= k; ++p) {
        // A^p B^(k-p): positions 0..p-1 carry letter A, the rest letter B.
        std::uint32_t bits = ((1u << (k - p)) - 1u) << p;
        q.add_term(Word(bits, k), binom(k, p));
    }
    return q;
}

NCPoly nc_Hk(int k) {
    check_degree(k);
    const NCPoly s = NCPoly::letter(0, Alphabet::AB) + NCPoly::letter(1, Alphabet::AB);
    NCPoly r = NCPoly::one(Alphabet::AB);
    for (int i = 0; i < k; ++i) r = r * s;
    return r;
}

NCPoly nc_Rk(int k) {
    const NCPoly q = nc_Qk(k);
    return Rational(1, 2) * (q + nc_adjoint(q));
}

NCPoly nc_Dk(int k) {
    return nc_Rk(k) - nc_Hk(k);
}

IdentityCheck verify_identity_k3() {
    const NCPoly h = NCPoly::letter(0, Alphabet::HX);
    const NCPoly x = NCPoly::letter(1, Alphabet::HX);
    IdentityCheck c{false, substitute_hx(nc_Dk(3)),
                    Rational(1, 4) * nc_ad_power(x, h, 2), NCPoly(Alphabet::HX)};
    c.diff = c.lhs - c.rhs;
    c.ok = c.diff.is_zero();
    return c;
}

IdentityCheck verify_identity_k4() {
    const NCPoly h = NCPoly::letter(0, Alphabet::HX);
    const NCPoly x = NCPoly::letter(1, Alphabet::HX);
    const NCPoly xh = nc_comm(x, h);
    const NCPoly rhs = Rational(1, 2) * nc_ad_power(x, h * h, 2)
                     - Rational(1, 4) * (xh * xh);
    IdentityCheck c{false, substitute_hx(nc_Dk(4)), rhs, NCPoly(Alphabet::HX)};
    c.diff = c.lhs - c.rhs;
    c.ok = c.diff.is_zero();
    return c;
}

IdentityCheck verify_identity_k5() {
    const NCPoly h = NCPoly::letter(0, Alphabet::HX);
    const NCPoly x = NCPoly::letter(1, Alphabet::HX);
    const NCPoly h2 = h * h;
    const NCPoly ad2_h = nc_ad_power(x, h, 2);
    const NCPoly rhs = Rational(1, 16) * nc_ad_power(x, h, 4)
                     + Rational(7, 16) * nc_ad_power(x, h2 * h, 2)
                     + Rational(9, 32) * nc_anticomm(h, nc_ad_power(x, h2, 2))
                     - Rational(1, 32) * nc_anticomm(h2, ad2_h)
                     + Rational(1, 8) * (h * ad2_h * h);
    IdentityCheck c{false, substitute_hx(nc_Dk(5)), rhs, NCPoly(Alphabet::HX)};
    c.diff = c.lhs - c.rhs;
    c.ok = c.diff.is_zero();
    return c;
}

ComplexMatrix nc_eval(const NCPoly& p, const ComplexMatrix& m0, const ComplexMatrix& m1) {
    if (m0.dim() != m1.dim())
        throw std::invalid_argument("nc_eval: dimension mismatch");
    const int n = m0.dim();
    ComplexMatrix out(n);
    for (const auto& [w, c] : p.terms()) {
        ComplexMatrix prod = ComplexMatrix::identity(n);
        for (int i = 0; i < w.length(); ++i)
            prod = prod * (w.letter(i) == 0 ? m0 : m1);
        out += c.convert_to<double>() * prod;
    }
    return out;
}

namespace {

std::string coeff_to_string(const Rational& abs_c) {
    const auto num = boost::multiprecision::numerator(abs_c);
    const auto den = boost::multiprecision::denominator(abs_c);
    if (den == 1) return num.str();
    return "(" + num.str() + "/" + den.str() + ")";
}

} // namespace

std::string nc_to_string(const NCPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        const bool neg = c < 0;
        const Rational abs_c = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        const std::string word = word_to_string(w, p.alphabet());
        if (abs_c != 1 || word.empty()) out << coeff_to_string(abs_c);
        out << word;
    }
    return out.str();
}

} // namespace majlab
