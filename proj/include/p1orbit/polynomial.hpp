#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "p1orbit/field.hpp"

namespace p1orbit {

/// Sparse multivariate polynomial over an exact field. Terms are keyed by
/// exponent vectors of fixed length; zero coefficients are never stored.
template <ExactField K>
class Polynomial {
public:
    using Exponents = std::vector<unsigned>;

    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, K c) {
        Polynomial p(nvars);
        p.add_term(Exponents(nvars, 0), std::move(c));
        return p;
    }
    static Polynomial variable(std::size_t nvars, std::size_t i, const K& one_exemplar) {
        Polynomial p(nvars);
        Exponents e(nvars, 0);
        e.at(i) = 1;
        p.add_term(e, FieldTraits<K>::one(one_exemplar));
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, K>& terms() const { return terms_; }

    void add_term(const Exponents& e, K c) {
        if (e.size() != nvars_) throw internal_error("exponent vector length mismatch");
        if (FieldTraits<K>::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, std::move(c));
        } else {
            it->second = it->second + c;
            if (FieldTraits<K>::is_zero(it->second)) terms_.erase(it);
        }
    }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial out = *this;
        for (const auto& [e, c] : o.terms_) out.add_term(e, c);
        return out;
    }
    Polynomial operator-(const Polynomial& o) const {
        Polynomial out = *this;
        for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
        return out;
    }
    Polynomial operator*(const Polynomial& o) const {
        Polynomial out(nvars_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Exponents e = e1;
                for (std::size_t i = 0; i < nvars_; ++i) e[i] += e2[i];
                out.add_term(e, c1 * c2);
            }
        return out;
    }
    Polynomial operator*(const K& c) const {
        Polynomial out(nvars_);
        for (const auto& [e, t] : terms_) out.add_term(e, t * c);
        return out;
    }
    Polynomial operator-() const {
        Polynomial out(nvars_);
        for (const auto& [e, t] : terms_) out.add_term(e, -t);
        return out;
    }

    bool operator==(const Polynomial& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    K evaluate(std::span<const K> at) const {
        if (at.size() != nvars_) throw precondition_error("evaluation point has wrong arity");
        K acc = at.empty() ? K() : FieldTraits<K>::zero(at[0]);
        for (const auto& [e, c] : terms_) {
            K term = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (unsigned k = 0; k < e[i]; ++k) term = term * at[i];
            acc = acc + term;
        }
        return acc;
    }

    /// Coefficient-wise image under fn, possibly into another field.
    template <ExactField K2, class Fn>
    Polynomial<K2> map_coefficients(Fn&& fn) const {
        Polynomial<K2> out(nvars_);
        for (const auto& [e, c] : terms_) out.add_term(e, fn(c));
        return out;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) {
            unsigned s = 0;
            for (unsigned x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

private:
    std::map<Exponents, K> terms_;
    std::size_t nvars_;
};

/// Quotient of two polynomials; only ever formed with a nonzero denominator.
template <ExactField K>
struct RationalFunction {
    Polynomial<K> num;
    Polynomial<K> den;

    RationalFunction(Polynomial<K> n, Polynomial<K> d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw internal_error("rational function with zero denominator");
    }
    static RationalFunction from_polynomial(Polynomial<K> p, const K& one_exemplar) {
        auto one = Polynomial<K>::constant(p.nvars(), FieldTraits<K>::one(one_exemplar));
        return RationalFunction(std::move(p), std::move(one));
    }

    bool is_zero() const { return num.is_zero(); }

    RationalFunction operator+(const RationalFunction& o) const {
        return RationalFunction(num * o.den + o.num * den, den * o.den);
    }
    RationalFunction operator*(const RationalFunction& o) const {
        return RationalFunction(num * o.num, den * o.den);
    }
    RationalFunction operator*(const K& c) const { return RationalFunction(num * c, den); }
};

/// Substitutes values[i] for variable i; exact, no simplification attempted.
template <ExactField K>
RationalFunction<K> substitute(const Polynomial<K>& poly,
                               const std::vector<RationalFunction<K>>& values,
                               const K& one_exemplar) {
    if (values.size() != poly.nvars())
        throw precondition_error("substitution values have wrong arity");
    std::size_t out_vars = values.empty() ? 0 : values[0].num.nvars();
    auto one = Polynomial<K>::constant(out_vars, FieldTraits<K>::one(one_exemplar));
    RationalFunction<K> acc(Polynomial<K>(out_vars), one);
    for (const auto& [e, c] : poly.terms()) {
        RationalFunction<K> term(one, one);
        for (std::size_t i = 0; i < poly.nvars(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) term = term * values[i];
        acc = acc + term * c;
    }
    return acc;
}

/// Renders a polynomial as "2*x2*x4 - x3*x4" style text, terms in descending
/// lexicographic order of exponent vectors. Names must cover all variables.
template <ExactField K>
std::string polynomial_to_text(const Polynomial<K>& p, const std::vector<std::string>& names) {
    if (names.size() != p.nvars()) throw internal_error("variable name list has wrong arity");
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    const auto& terms = p.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        std::string coeff = FieldTraits<K>::to_string(it->second);
        bool negative = !coeff.empty() && coeff[0] == '-';
        if (negative) coeff.erase(0, 1);
        std::string mono;
        for (std::size_t i = 0; i < p.nvars(); ++i)
            for (unsigned k = 0; k < it->first[i]; ++k) {
                if (!mono.empty()) mono += "*";
                mono += names[i];
            }
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        if (mono.empty()) {
            out += coeff;
        } else {
            if (coeff != "1") out += coeff + "*";
            out += mono;
        }
    }
    return out;
}

} // namespace p1orbit
