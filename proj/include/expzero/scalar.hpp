#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <string>

#include "expzero/rational.hpp"

namespace expzero {

// Canonical transcendental symbol names. E is Euler's number, C the constant
// of a line m1*X1 + m2*X2 = c, CHAT its exponential e^c. Further symbols may
// be declared freely; all are treated as algebraically independent over Q(i).
inline constexpr const char* kSymE = "E";
inline constexpr const char* kSymC = "C";
inline constexpr const char* kSymCHat = "CHAT";

// Laurent monomial in symbols: name -> nonzero integer exponent.
using SymPowers = std::map<std::string, int>;

inline void sym_mul_into(SymPowers& a, const SymPowers& b, int factor = 1) {
    for (const auto& [name, p] : b) {
        auto it = a.find(name);
        if (it == a.end()) {
            if (p * factor != 0) a.emplace(name, p * factor);
        } else {
            it->second += p * factor;
            if (it->second == 0) a.erase(it);
        }
    }
}

// An exact scalar: Gaussian rational times a Laurent monomial in tracked
// symbols. Sums of distinct symbol monomials are not representable here;
// they live at the polynomial level as separate terms.
struct ExactScalar {
    GaussRat coef;
    SymPowers syms;

    ExactScalar() = default;
    ExactScalar(GaussRat c, SymPowers s = {}) : coef(std::move(c)), syms(std::move(s)) {
        if (coef.is_zero()) syms.clear();
    }
    explicit ExactScalar(long n) : coef(n) {}

    static ExactScalar one() { return ExactScalar(1); }
    static ExactScalar symbol(const std::string& name, int power = 1) {
        ExactScalar s(1);
        if (power != 0) s.syms[name] = power;
        return s;
    }

    bool is_zero() const { return coef.is_zero(); }
    bool is_rational() const { return syms.empty(); }

    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
        ExactScalar r;
        r.coef = a.coef * b.coef;
        if (r.coef.is_zero()) return r;
        r.syms = a.syms;
        sym_mul_into(r.syms, b.syms);
        return r;
    }
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
        if (b.is_zero()) throw InputError("division by zero scalar");
        ExactScalar r;
        r.coef = a.coef / b.coef;
        if (r.coef.is_zero()) return r;
        r.syms = a.syms;
        sym_mul_into(r.syms, b.syms, -1);
        return r;
    }
    friend ExactScalar operator-(const ExactScalar& a) { return {-a.coef, a.syms}; }
    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.coef == b.coef && a.syms == b.syms;
    }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    ExactScalar pow(int e) const {
        if (e == 0) return one();
        if (is_zero()) {
            if (e < 0) throw InputError("zero scalar to negative power");
            return *this;
        }
        ExactScalar r = one();
        GaussRat base = coef;
        int n = e < 0 ? -e : e;
        if (e < 0) base = GaussRat(Rational(1), Rational(0)) / base;
        for (int i = 0; i < n; ++i) r.coef = r.coef * base;
        for (const auto& [name, p] : syms) r.syms[name] = p * e;
        return r;
    }

    // Addition requires identical symbol monomials.
    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.syms != b.syms)
            throw InputError("sum of scalars with distinct symbol monomials is not a scalar");
        return ExactScalar(a.coef + b.coef, a.syms);
    }
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }
};

// Assignment of complex double values to symbols.
struct NumericValuation {
    std::map<std::string, std::complex<double>> values;
    double consistency_tol = 1e-9;

    static NumericValuation standard() {
        NumericValuation v;
        v.values[kSymE] = std::exp(1.0);
        return v;
    }

    bool has(const std::string& name) const { return values.count(name) != 0; }

    std::complex<double> get(const std::string& name) const {
        auto it = values.find(name);
        if (it == values.end()) throw ValuationError("no numeric value for symbol " + name);
        return it->second;
    }

    // If both C and CHAT are assigned, they must satisfy CHAT = exp(C).
    bool consistent() const {
        auto c = values.find(kSymC);
        auto ch = values.find(kSymCHat);
        if (c == values.end() || ch == values.end()) return true;
        return std::abs(ch->second - std::exp(c->second)) <= consistency_tol;
    }

    void require_consistent() const {
        if (!consistent()) throw ValuationError("valuation violates CHAT = exp(C)");
    }

    std::complex<double> eval(const ExactScalar& s) const {
        std::complex<double> v = s.coef.to_complex();
        for (const auto& [name, p] : s.syms) v *= std::pow(get(name), p);
        return v;
    }
};

}  // namespace expzero
