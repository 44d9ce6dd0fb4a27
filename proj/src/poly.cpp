#include "coxmatch/poly.hpp"

#include <cstdlib>
#include <sstream>

namespace coxmatch {

IntPoly::IntPoly(long long constant) {
    if (constant != 0) coeffs_.push_back(constant);
}

IntPoly IntPoly::monomial(int power, long long coeff) {
    IntPoly p;
    if (coeff != 0) {
        p.coeffs_.assign(power + 1, 0);
        p.coeffs_[power] = coeff;
    }
    return p;
}

IntPoly IntPoly::from_coeffs(std::vector<long long> coeffs) {
    IntPoly p;
    p.coeffs_ = std::move(coeffs);
    p.trim();
    return p;
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly{};
    IntPoly out;
    out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    out.trim();
    return out;
}

IntPoly& IntPoly::operator*=(const IntPoly& rhs) { return *this = *this * rhs; }

std::string IntPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const long long c = coeffs_[i];
        if (c == 0) continue;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        const long long a = std::llabs(c);
        if (a != 1 || i == 0) os << a;
        if (i >= 1) {
            os << "q";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

}  // namespace coxmatch
