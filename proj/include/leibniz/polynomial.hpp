#pragma once

#include "leibniz/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace leibniz {

/// Exponent tuple aligned with a shared variable list. Monomials compare
/// lexicographically with the first declared variable most significant,
/// which is the lex order used throughout (declaration order).
using Monomial = std::vector<unsigned>;

inline unsigned monomial_degree(const Monomial& m)
{
    unsigned d = 0;
    for (unsigned e : m)
        d += e;
    return d;
}

struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return a > b; }
};

/// Multivariate polynomial over exact rationals. Terms are kept sorted
/// leading-first; zero coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Scalar, MonomialGreater>;

    Polynomial() = default;
    explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Polynomial constant(std::vector<std::string> vars, const Scalar& c)
    {
        Polynomial p(std::move(vars));
        if (!is_zero(c))
            p.terms_[Monomial(p.vars_.size(), 0)] = c;
        return p;
    }

    static Polynomial variable(std::vector<std::string> vars, const std::string& name)
    {
        Polynomial p(std::move(vars));
        Monomial m(p.vars_.size(), 0);
        m[p.var_index(name)] = 1;
        p.terms_[std::move(m)] = 1;
        return p;
    }

    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || monomial_degree(leading_monomial()) == 0; }

    std::size_t var_index(const std::string& name) const
    {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end())
            throw std::invalid_argument("unknown variable '" + name + "'");
        return static_cast<std::size_t>(it - vars_.begin());
    }

    const Monomial& leading_monomial() const
    {
        if (terms_.empty())
            throw std::domain_error("leading term of zero polynomial");
        return terms_.begin()->first;
    }

    const Scalar& leading_coefficient() const
    {
        if (terms_.empty())
            throw std::domain_error("leading term of zero polynomial");
        return terms_.begin()->second;
    }

    Scalar coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    unsigned total_degree() const
    {
        unsigned d = 0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, monomial_degree(m));
        return d;
    }

    unsigned degree_in(std::size_t var) const
    {
        unsigned d = 0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, m[var]);
        return d;
    }

    void add_term(const Monomial& m, const Scalar& c)
    {
        if (leibniz::is_zero(c))
            return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (leibniz::is_zero(it->second))
                terms_.erase(it);
        }
    }

    Polynomial operator-() const
    {
        Polynomial r(vars_);
        for (const auto& [m, c] : terms_)
            r.terms_[m] = -c;
        return r;
    }

    Polynomial operator+(const Polynomial& o) const
    {
        check_vars(o);
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_)
            r.add_term(m, c);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const
    {
        check_vars(o);
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_)
            r.add_term(m, -Scalar(c));
        return r;
    }

    Polynomial operator*(const Polynomial& o) const
    {
        check_vars(o);
        Polynomial r(vars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                Monomial m(ma.size());
                for (std::size_t i = 0; i < m.size(); ++i)
                    m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }

    Polynomial operator*(const Scalar& c) const
    {
        Polynomial r(vars_);
        if (leibniz::is_zero(c))
            return r;
        for (const auto& [m, coeff] : terms_)
            r.terms_[m] = coeff * c;
        return r;
    }

    bool operator==(const Polynomial& o) const
    {
        return vars_ == o.vars_ && terms_ == o.terms_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(unsigned e) const
    {
        Polynomial r = constant(vars_, 1);
        for (unsigned i = 0; i < e; ++i)
            r = r * *this;
        return r;
    }

    /// Substitutes variables by polynomials over the same variable list
    /// and fully expands. Unassigned variables stay in place.
    Polynomial substitute(const std::map<std::string, Polynomial>& assignment) const
    {
        std::vector<std::optional<Polynomial>> repl(vars_.size());
        for (const auto& [name, value] : assignment) {
            if (value.vars_ != vars_)
                throw std::invalid_argument("substitute: variable list mismatch");
            repl[var_index(name)] = value;
        }
        Polynomial result(vars_);
        for (const auto& [m, c] : terms_) {
            Monomial untouched(m.size(), 0);
            Polynomial factor = constant(vars_, c);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0)
                    continue;
                if (repl[i])
                    factor = factor * repl[i]->pow(m[i]);
                else
                    untouched[i] = m[i];
            }
            Polynomial mono(vars_);
            mono.terms_[untouched] = 1;
            result = result + factor * mono;
        }
        return result;
    }

    /// Evaluation at a full rational point, aligned with the variable list.
    Scalar evaluate(const std::vector<Scalar>& point) const
    {
        if (point.size() != vars_.size())
            throw std::invalid_argument("evaluate: point size mismatch");
        Scalar acc(0);
        for (const auto& [m, c] : terms_) {
            Scalar t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (unsigned e = 0; e < m[i]; ++e)
                    t *= point[i];
            acc += t;
        }
        return acc;
    }

    /// Views the polynomial as univariate in `var`: exponent -> coefficient
    /// polynomial in the remaining variables (same variable list).
    std::map<unsigned, Polynomial> collect(std::size_t var) const
    {
        std::map<unsigned, Polynomial> out;
        for (const auto& [m, c] : terms_) {
            Monomial rest = m;
            const unsigned e = rest[var];
            rest[var] = 0;
            auto [it, inserted] = out.emplace(e, Polynomial(vars_));
            it->second.add_term(rest, c);
        }
        return out;
    }

    /// Primitive normal form: integer coprime coefficients with positive
    /// leading coefficient. Canonical representative up to nonzero scalars.
    Polynomial primitive() const
    {
        if (terms_.empty())
            return *this;
        mpz_class num_gcd(0), den_lcm(1);
        for (const auto& [m, c] : terms_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Scalar scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (sgn(leading_coefficient()) < 0)
            scale = -scale;
        return *this * scale;
    }

    /// Monic normal form (leading coefficient 1).
    Polynomial monic() const
    {
        if (terms_.empty())
            return *this;
        return *this * Scalar(Scalar(1) / leading_coefficient());
    }

    /// Canonical rendering: terms leading-first, "^" powers, "*" products,
    /// e.g. "phi11^2 + phi11 + phi12*phi21".
    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            const bool negative = sgn(c) < 0;
            Scalar mag = negative ? Scalar(-c) : c;
            if (first)
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += vars_[i];
                if (m[i] > 1)
                    mono += "^" + std::to_string(m[i]);
            }
            if (mono.empty()) {
                out += scalar_to_string(mag);
            } else {
                if (mag != 1)
                    out += scalar_to_string(mag) + "*";
                out += mono;
            }
        }
        return out;
    }

private:
    void check_vars(const Polynomial& o) const
    {
        if (vars_ != o.vars_)
            throw std::invalid_argument("polynomial variable lists differ");
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

/// A list of polynomials over one shared variable list.
struct PolySystem {
    std::vector<std::string> variables;
    std::vector<Polynomial> polynomials;

    PolySystem() = default;
    explicit PolySystem(std::vector<std::string> vars) : variables(std::move(vars)) {}

    void push(const Polynomial& p)
    {
        if (p.variables() != variables)
            throw std::invalid_argument("PolySystem: variable list mismatch");
        polynomials.push_back(p);
    }

    /// Primitive-normalizes, drops zeros, removes duplicates and sorts by
    /// canonical string: a deterministic set representative.
    PolySystem normalized() const
    {
        PolySystem out(variables);
        std::vector<std::pair<std::string, Polynomial>> keyed;
        for (const auto& p : polynomials) {
            Polynomial q = p.primitive();
            if (q.is_zero())
                continue;
            keyed.emplace_back(q.to_string(), std::move(q));
        }
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        keyed.erase(std::unique(keyed.begin(), keyed.end(),
                                [](const auto& a, const auto& b) { return a.first == b.first; }),
                    keyed.end());
        for (auto& [k, p] : keyed)
            out.polynomials.push_back(std::move(p));
        return out;
    }

    std::vector<std::string> to_strings() const
    {
        std::vector<std::string> out;
        out.reserve(polynomials.size());
        for (const auto& p : polynomials)
            out.push_back(p.to_string());
        return out;
    }
};

/// Exact single-divisor division; returns the quotient iff p == q * h for
/// some polynomial h (sufficient for divisibility by a fixed factor).
inline std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& q)
{
    if (q.is_zero())
        throw std::invalid_argument("exact_divide: zero divisor");
    Polynomial rem = p;
    Polynomial quot(p.variables());
    const Monomial& lq = q.leading_monomial();
    while (!rem.is_zero()) {
        const Monomial& lr = rem.leading_monomial();
        Monomial ratio(lr.size());
        for (std::size_t i = 0; i < lr.size(); ++i) {
            if (lr[i] < lq[i])
                return std::nullopt;
            ratio[i] = lr[i] - lq[i];
        }
        Polynomial t(p.variables());
        t.add_term(ratio, Scalar(rem.leading_coefficient() / q.leading_coefficient()));
        quot = quot + t;
        rem = rem - t * q;
    }
    return quot;
}

} // namespace leibniz
