#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expzero/scalar.hpp"

namespace expzero {

inline constexpr std::int64_t kMaxExponent = 2147483647;  // |exponent| <= 2^31-1

// Sparse multivariate (Laurent) polynomial over exact scalars. Variables
// flagged as units may carry negative exponents (they range over C*); all
// others are ordinary polynomial variables. A term's key combines its
// variable exponent vector with its symbol monomial, so sums of distinct
// symbol monomials at the same variable exponents are representable; the
// key order makes the stored form canonical.
class Poly {
public:
    struct TermKey {
        std::vector<std::int64_t> exps;
        SymPowers syms;

        friend bool operator<(const TermKey& a, const TermKey& b) {
            if (a.exps != b.exps)
                return std::lexicographical_compare(a.exps.begin(), a.exps.end(),
                                                    b.exps.begin(), b.exps.end());
            return a.syms < b.syms;
        }
        friend bool operator==(const TermKey& a, const TermKey& b) {
            return a.exps == b.exps && a.syms == b.syms;
        }
    };
    using TermMap = std::map<TermKey, GaussRat>;

    Poly() = default;
    Poly(std::vector<std::string> vars, std::vector<bool> unit)
        : vars_(std::move(vars)), unit_(std::move(unit)) {
        if (vars_.size() != unit_.size()) throw InputError("vars/unit size mismatch");
    }

    static Poly zero(std::vector<std::string> vars, std::vector<bool> unit) {
        return Poly(std::move(vars), std::move(unit));
    }
    static Poly constant(std::vector<std::string> vars, std::vector<bool> unit,
                         const ExactScalar& c) {
        Poly p(std::move(vars), std::move(unit));
        p.add_term(std::vector<std::int64_t>(p.vars_.size(), 0), c);
        return p;
    }
    static Poly variable(std::vector<std::string> vars, std::vector<bool> unit,
                         const std::string& name) {
        Poly p(std::move(vars), std::move(unit));
        std::vector<std::int64_t> e(p.vars_.size(), 0);
        e[p.var_index(name)] = 1;
        p.add_term(e, ExactScalar::one());
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<bool>& unit_flags() const { return unit_; }
    const TermMap& terms() const { return terms_; }

    std::size_t var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        throw VarMismatchError("unknown variable " + name);
    }
    bool is_unit_var(std::size_t i) const { return unit_[i]; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
            return std::all_of(t.first.exps.begin(), t.first.exps.end(),
                               [](std::int64_t e) { return e == 0; });
        });
    }
    bool involves(std::size_t var) const {
        return std::any_of(terms_.begin(), terms_.end(),
                           [&](const auto& t) { return t.first.exps[var] != 0; });
    }
    std::int64_t degree_in(std::size_t var) const {
        std::int64_t d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.exps[var]);
        return d;
    }
    std::int64_t min_exponent_in(std::size_t var) const {
        std::int64_t d = kMaxExponent;
        for (const auto& [k, c] : terms_) d = std::min(d, k.exps[var]);
        return terms_.empty() ? 0 : d;
    }
    std::int64_t total_degree() const {
        std::int64_t d = -1;
        for (const auto& [k, c] : terms_) {
            std::int64_t s = 0;
            for (auto e : k.exps) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    // If the polynomial is constant and a single symbol monomial, return it.
    std::optional<ExactScalar> as_scalar() const {
        if (terms_.empty()) return ExactScalar(GaussRat(), {});
        if (terms_.size() != 1 || !is_constant()) return std::nullopt;
        const auto& [k, c] = *terms_.begin();
        return ExactScalar(c, k.syms);
    }

    // Single term overall (any exponents)?
    bool is_monomial() const { return terms_.size() == 1; }

    void add_term(std::vector<std::int64_t> exps, const ExactScalar& s) {
        if (exps.size() != vars_.size()) throw InputError("exponent vector length mismatch");
        if (s.is_zero()) return;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 0 && !unit_[i])
                throw InputError("negative exponent on non-unit variable " + vars_[i]);
            if (exps[i] > kMaxExponent || exps[i] < -kMaxExponent)
                throw InputError("exponent magnitude exceeds 2^31-1");
        }
        TermKey key{std::move(exps), s.syms};
        auto [it, inserted] = terms_.emplace(std::move(key), s.coef);
        if (!inserted) {
            it->second = it->second + s.coef;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void check_same_space(const Poly& o) const {
        if (vars_ != o.vars_ || unit_ != o.unit_)
            throw VarMismatchError("polynomials live over different variable lists");
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check_same_space(b);
        Poly r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k.exps, ExactScalar(c, k.syms));
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        a.check_same_space(b);
        Poly r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k.exps, ExactScalar(-c, k.syms));
        return r;
    }
    friend Poly operator-(const Poly& a) {
        Poly r(a.vars_, a.unit_);
        for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same_space(b);
        Poly r(a.vars_, a.unit_);
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                std::vector<std::int64_t> e(ka.exps);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += kb.exps[i];
                ExactScalar s(ca * cb, ka.syms);
                sym_mul_into(s.syms, kb.syms);
                r.add_term(std::move(e), s);
            }
        }
        return r;
    }
    friend Poly operator*(const ExactScalar& s, const Poly& a) {
        Poly r(a.vars_, a.unit_);
        for (const auto& [k, c] : a.terms_) {
            ExactScalar t(c, k.syms);
            r.add_term(k.exps, s * t);
        }
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.vars_ == b.vars_ && a.unit_ == b.unit_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned e) const {
        Poly r = constant(vars_, unit_, ExactScalar::one());
        Poly base = *this;
        while (e) {
            if (e & 1u) r = r * base;
            base = base * base;
            e >>= 1u;
        }
        return r;
    }

    // Formal partial derivative; Laurent powers follow d/dx x^e = e x^(e-1).
    Poly diff(const std::string& var) const {
        std::size_t i = var_index(var);
        Poly r(vars_, unit_);
        for (const auto& [k, c] : terms_) {
            if (k.exps[i] == 0) continue;
            std::vector<std::int64_t> e(k.exps);
            GaussRat nc = c * GaussRat{Rational(e[i]), Rational(0)};
            e[i] -= 1;
            r.add_term(std::move(e), ExactScalar(nc, k.syms));
        }
        return r;
    }

    // Numeric evaluation. Summation error is bounded by a small multiple of
    // machine epsilon times the term count times the largest term magnitude.
    std::complex<double> eval(const std::vector<std::complex<double>>& point,
                              const NumericValuation& val) const {
        if (point.size() != vars_.size()) throw InputError("evaluation point length mismatch");
        for (std::size_t i = 0; i < point.size(); ++i)
            if (unit_[i] && point[i] == std::complex<double>(0.0, 0.0) && involves_negatively(i))
                throw InputError("zero value supplied for unit variable " + vars_[i]);
        std::complex<double> acc{0.0, 0.0};
        for (const auto& [k, c] : terms_) {
            std::complex<double> t = val.eval(ExactScalar(c, k.syms));
            for (std::size_t i = 0; i < point.size(); ++i) t *= cpow_int(point[i], k.exps[i]);
            acc += t;
        }
        return acc;
    }

    // Exact composition: one image per variable, all over a common target
    // space. Images substituted for variables that occur with negative
    // exponents must be units (a scalar times a monomial in unit variables).
    Poly substitute(const std::vector<Poly>& images) const {
        if (images.size() != vars_.size()) throw InputError("one image required per variable");
        for (std::size_t i = 1; i < images.size(); ++i) images[0].check_same_space(images[i]);
        const Poly model = images.empty() ? Poly() : Poly(images[0].vars_, images[0].unit_);

        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (!unit_[i]) continue;
            if (!images[i].is_unit_monomial())
                throw InputError("image of unit variable " + vars_[i] + " is not a unit");
        }

        Poly acc = Poly::zero(model.vars_, model.unit_);
        for (const auto& [k, c] : terms_) {
            Poly term = Poly::constant(model.vars_, model.unit_, ExactScalar(c, k.syms));
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                std::int64_t e = k.exps[i];
                if (e == 0) continue;
                if (e > 0) {
                    term = term * images[i].pow(static_cast<unsigned>(e));
                } else {
                    term = term * images[i].unit_inverse().pow(static_cast<unsigned>(-e));
                }
            }
            acc = acc + term;
        }
        return acc;
    }

    // True iff the polynomial is a single term c * prod(unit vars ^ e).
    bool is_unit_monomial() const {
        if (terms_.size() != 1) return false;
        const auto& k = terms_.begin()->first;
        for (std::size_t i = 0; i < k.exps.size(); ++i)
            if (k.exps[i] != 0 && !unit_[i]) return false;
        return true;
    }

    Poly unit_inverse() const {
        if (!is_unit_monomial()) throw InputError("inverse of a non-unit polynomial");
        const auto& [k, c] = *terms_.begin();
        Poly r(vars_, unit_);
        std::vector<std::int64_t> e(k.exps);
        for (auto& x : e) x = -x;
        r.add_term(std::move(e), ExactScalar::one() / ExactScalar(c, k.syms));
        return r;
    }

    // Divide out the rational content and common symbol powers, then scale by
    // a unit in {1,-1,i,-i} so the lexicographically-leading coefficient has
    // positive real part (or zero real part and positive imaginary part).
    // Returns the scalar that was removed, so content * result == *this.
    ExactScalar make_primitive() {
        if (terms_.empty()) return ExactScalar::one();
        Rational content{0};
        for (const auto& [k, c] : terms_) {
            if (c.re != 0) content = content == 0 ? abs(c.re) : rational_gcd(content, c.re);
            if (c.im != 0) content = content == 0 ? abs(c.im) : rational_gcd(content, c.im);
        }
        std::map<std::string, int> symmin;  // min exponent over all terms, per symbol
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (first) {
                symmin.insert(k.syms.begin(), k.syms.end());
                first = false;
                continue;
            }
            for (auto it = symmin.begin(); it != symmin.end();) {
                auto jt = k.syms.find(it->first);
                int q = jt == k.syms.end() ? 0 : jt->second;
                it->second = std::min(it->second, q);
                ++it;
            }
            for (const auto& [name, p] : k.syms)
                if (!symmin.count(name)) symmin[name] = std::min(p, 0);
        }
        SymPowers symcontent;
        for (const auto& [name, p] : symmin)
            if (p != 0) symcontent[name] = p;
        ExactScalar removed(GaussRat{content, Rational(0)}, symcontent);
        ExactScalar inv = ExactScalar::one() / removed;
        TermMap scaled;
        for (const auto& [k, c] : terms_) {
            ExactScalar s = inv * ExactScalar(c, k.syms);
            scaled.emplace(TermKey{k.exps, s.syms}, s.coef);
        }
        terms_ = std::move(scaled);

        const GaussRat& lead = terms_.rbegin()->second;
        if (lead.re < 0 || (lead.re == 0 && lead.im < 0)) {
            TermMap flipped;
            for (const auto& [k, c] : terms_) flipped.emplace(k, -c);
            terms_ = std::move(flipped);
            removed = -removed;
        }
        return removed;
    }

    // Multiply by var^k (k may be negative for unit variables).
    Poly shifted(std::size_t var, std::int64_t k) const {
        Poly r(vars_, unit_);
        for (const auto& [key, c] : terms_) {
            std::vector<std::int64_t> e(key.exps);
            e[var] += k;
            r.add_term(std::move(e), ExactScalar(c, key.syms));
        }
        return r;
    }

    static std::complex<double> cpow_int(std::complex<double> b, std::int64_t e) {
        if (e == 0) return {1.0, 0.0};
        bool neg = e < 0;
        std::uint64_t n = neg ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
        std::complex<double> r{1.0, 0.0};
        while (n) {
            if (n & 1u) r *= b;
            b *= b;
            n >>= 1u;
        }
        return neg ? 1.0 / r : r;
    }

private:
    bool involves_negatively(std::size_t var) const {
        return std::any_of(terms_.begin(), terms_.end(),
                           [&](const auto& t) { return t.first.exps[var] < 0; });
    }

    std::vector<std::string> vars_;
    std::vector<bool> unit_;
    TermMap terms_;
};

}  // namespace expzero
