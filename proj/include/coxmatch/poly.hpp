#pragma once

// Dense univariate polynomials in q with exact 64-bit integer coefficients.
// Degrees and coefficients stay tiny at the scales this library targets.

#include <cstdint>
#include <string>
#include <vector>

namespace coxmatch {

class IntPoly {
public:
    IntPoly() = default;  // zero
    explicit IntPoly(long long constant);
    static IntPoly monomial(int power, long long coeff = 1);
    static IntPoly from_coeffs(std::vector<long long> coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    long long coeff(int i) const {
        return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : 0;
    }
    long long leading() const { return is_zero() ? 0 : coeffs_.back(); }
    long long constant_term() const { return coeff(0); }
    const std::vector<long long>& coeffs() const { return coeffs_; }

    IntPoly& operator+=(const IntPoly& rhs);
    IntPoly& operator-=(const IntPoly& rhs);
    IntPoly& operator*=(const IntPoly& rhs);

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    bool operator==(const IntPoly& other) const { return coeffs_ == other.coeffs_; }

    // "q^3 - 2q^2 + 2q - 1"; "0" for zero.
    std::string str() const;

private:
    void trim();
    std::vector<long long> coeffs_;  // lowest degree first, no trailing zeros
};

}  // namespace coxmatch
