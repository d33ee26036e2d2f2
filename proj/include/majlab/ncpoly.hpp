#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "majlab/linalg.hpp"

namespace majlab {

using Rational = boost::multiprecision::cpp_rational;

// Which pair of letters a polynomial is written in. Words themselves only
// store a bit per position; the alphabet decides whether bit 0 prints as
// "A" or "H".
enum class Alphabet { AB, HX };

// A word in two noncommuting letters, packed as bits (letter at position i
// is (bits >> i) & 1, position 0 leftmost). Length up to 32.
struct Word {
    std::uint32_t bits = 0;
    std::uint8_t len = 0;

    Word() = default;
    Word(std::uint32_t bits_, int len_);

    int letter(int i) const { return static_cast<int>((bits >> i) & 1u); }
    int length() const { return len; }

    Word reversed() const;
    Word concat(const Word& rhs) const;

    bool operator==(const Word& o) const { return bits == o.bits && len == o.len; }
};

// Graded order: shorter words first, then position-lexicographic.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const;
};

Word word_from_string(const std::string& s, Alphabet alphabet);
std::string word_to_string(const Word& w, Alphabet alphabet);

// Polynomial in two noncommuting letters with exact rational coefficients.
// Zero coefficients are never stored.
class NCPoly {
  public:
    explicit NCPoly(Alphabet alphabet = Alphabet::AB) : alphabet_(alphabet) {}

    Alphabet alphabet() const { return alphabet_; }
    const std::map<Word, Rational, WordLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coeff(const Word& w) const;
    void add_term(const Word& w, const Rational& c);

    NCPoly& operator+=(const NCPoly& rhs);
    NCPoly& operator-=(const NCPoly& rhs);

    static NCPoly letter(int which, Alphabet alphabet);
    static NCPoly one(Alphabet alphabet);

  private:
    Alphabet alphabet_;
    std::map<Word, Rational, WordLess> terms_;
};

NCPoly operator+(NCPoly lhs, const NCPoly& rhs);
NCPoly operator-(NCPoly lhs, const NCPoly& rhs);
NCPoly operator-(const NCPoly& p);
NCPoly operator*(const Rational& s, const NCPoly& p);
NCPoly operator*(const NCPoly& lhs, const NCPoly& rhs);

// Formal adjoint for self-adjoint letters: reverse each word, conjugate
// (here: keep) each coefficient.
NCPoly nc_adjoint(const NCPoly& p);

// Rewrite an AB polynomial over H = A + B, X = A - B via A = (H+X)/2,
// B = (H-X)/2. Result uses Alphabet::HX.
NCPoly substitute_hx(const NCPoly& p);

NCPoly nc_comm(const NCPoly& x, const NCPoly& y);
NCPoly nc_anticomm(const NCPoly& x, const NCPoly& y);
NCPoly nc_ad_power(const NCPoly& x, const NCPoly& y, int m);

// sum_p binom(k,p) A^p B^(k-p), its symmetrization R_k, the power (A+B)^k,
// and the defect D_k = R_k - (A+B)^k. All over Alphabet::AB, 1 <= k <= 12.
NCPoly nc_Qk(int k);
NCPoly nc_Hk(int k);
NCPoly nc_Rk(int k);
NCPoly nc_Dk(int k);

struct IdentityCheck {
    bool ok;
    NCPoly lhs;  // D_k rewritten over H, X
    NCPoly rhs;  // closed-form side
    NCPoly diff; // lhs - rhs
};

// D_3 = (1/4) [X,[X,H]]
IdentityCheck verify_identity_k3();
// D_4 = (1/2) [X,[X,H^2]] - (1/4) [X,H]^2
IdentityCheck verify_identity_k4();
// D_5 = (1/16) ad_X^4(H) + (7/16) ad_X^2(H^3)
//     + (9/32) {H, ad_X^2(H^2)} - (1/32) {H^2, ad_X^2(H)}
//     + (1/8) H ad_X^2(H) H
IdentityCheck verify_identity_k5();

// Evaluate at concrete matrices: m0 substitutes for the 0-letter (A or H),
// m1 for the 1-letter (B or X).
ComplexMatrix nc_eval(const NCPoly& p, const ComplexMatrix& m0, const ComplexMatrix& m1);

// Render like "(1/2)A^2B - ABA + (1/2)AB^2", with "0" for the zero
// polynomial and "1" for the empty word.
std::string nc_to_string(const NCPoly& p);

} // namespace majlab
