#pragma once

#include "leibniz/polynomial.hpp"

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace leibniz {

namespace detail {

inline void check_solver_limits(const PolySystem& s)
{
    if (s.variables.size() > 8)
        throw std::invalid_argument("polynomial solver limit: more than 8 variables");
    for (const auto& p : s.polynomials)
        if (p.total_degree() > 3)
            throw std::invalid_argument("polynomial solver limit: total degree above 3");
}

/// Square root of a nonnegative rational, when it exists.
inline std::optional<Scalar> rational_sqrt(const Scalar& s)
{
    if (sgn(s) < 0)
        return std::nullopt;
    if (sgn(s) == 0)
        return Scalar(0);
    const mpz_class num = s.get_num(), den = s.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Scalar r(rn, rd);
    r.canonicalize();
    return r;
}

/// Square root of a polynomial of total degree <= 2 as a linear form,
/// when it exists: delta == result^2.
inline std::optional<Polynomial> linear_sqrt(const Polynomial& delta)
{
    const auto& vars = delta.variables();
    if (delta.is_zero())
        return Polynomial(vars);
    if (delta.total_degree() > 2)
        return std::nullopt;
    const std::size_t nv = vars.size();
    Polynomial cand(vars);
    // locate the first variable with a nonzero square coefficient
    std::size_t lead = nv;
    for (std::size_t i = 0; i < nv && lead == nv; ++i) {
        Monomial sq(nv, 0);
        sq[i] = 2;
        if (!is_zero(delta.coefficient(sq)))
            lead = i;
    }
    if (lead == nv) {
        // no square term: delta must be a constant perfect square
        if (delta.total_degree() > 0)
            return std::nullopt;
        Monomial one(nv, 0);
        auto r = rational_sqrt(delta.coefficient(one));
        if (!r)
            return std::nullopt;
        return Polynomial::constant(vars, *r);
    }
    Monomial sq(nv, 0);
    sq[lead] = 2;
    const auto d_lead = rational_sqrt(delta.coefficient(sq));
    if (!d_lead)
        return std::nullopt;
    Monomial m_lead(nv, 0);
    m_lead[lead] = 1;
    cand.add_term(m_lead, *d_lead);
    // remaining coefficients follow from the cross terms with the lead
    for (std::size_t i = 0; i < nv; ++i) {
        if (i == lead)
            continue;
        Monomial cross(nv, 0);
        cross[lead] = 1;
        cross[i] = 1;
        const Scalar ci = delta.coefficient(cross);
        if (is_zero(ci))
            continue;
        Monomial mi(nv, 0);
        mi[i] = 1;
        cand.add_term(mi, Scalar(ci / (2 * *d_lead)));
    }
    Monomial m_lin(nv, 0);
    m_lin[lead] = 1;
    const Scalar c0 = delta.coefficient(m_lin);
    if (!is_zero(c0))
        cand.add_term(Monomial(nv, 0), Scalar(c0 / (2 * *d_lead)));
    if (cand * cand == delta)
        return cand;
    return std::nullopt;
}

} // namespace detail

/// Factors a polynomial into linear factors over Q, if possible. Factors
/// are returned in primitive form; the overall scalar is dropped (only
/// the vanishing sets matter to the callers). Complete for total degree
/// <= 2; degree 3 is handled when a variable occurs linearly or the
/// polynomial is univariate.
inline std::optional<std::vector<Polynomial>> factor_into_linears(const Polynomial& input)
{
    const auto& vars = input.variables();
    const std::size_t nv = vars.size();
    if (input.is_zero() || input.is_constant())
        return std::nullopt;

    std::vector<Polynomial> factors;
    Polynomial p = input;

    // monomial content: each variable dividing every term
    Monomial mins = p.leading_monomial();
    for (const auto& [m, c] : p.terms())
        for (std::size_t i = 0; i < nv; ++i)
            mins[i] = std::min(mins[i], m[i]);
    if (monomial_degree(mins) > 0) {
        Polynomial divisor(vars);
        divisor.add_term(mins, 1);
        p = *exact_divide(p, divisor);
        for (std::size_t i = 0; i < nv; ++i)
            for (unsigned e = 0; e < mins[i]; ++e)
                factors.push_back(Polynomial::variable(vars, vars[i]).primitive());
    }

    const auto finish = [&](std::vector<Polynomial> tail) {
        for (auto& f : tail)
            factors.push_back(f.primitive());
        return factors;
    };

    if (p.is_constant())
        return factors.empty() ? std::nullopt : std::optional(factors);
    if (p.total_degree() == 1)
        return finish({p});

    if (p.total_degree() == 2) {
        // quadratic in one variable: split via a linear-form square root
        for (std::size_t x = 0; x < nv; ++x) {
            if (p.degree_in(x) != 2)
                continue;
            auto parts = p.collect(x);
            const Scalar a = parts[2].coefficient(Monomial(nv, 0));
            Polynomial b = parts.count(1) ? parts[1] : Polynomial(vars);
            Polynomial c = parts.count(0) ? parts[0] : Polynomial(vars);
            Polynomial delta = b * b - c * (4 * a);
            auto d = detail::linear_sqrt(delta);
            if (!d)
                return std::nullopt;
            const Polynomial xv = Polynomial::variable(vars, vars[x]);
            const Scalar inv2a = Scalar(1) / (2 * a);
            Polynomial f1 = xv + (b - *d) * inv2a;
            Polynomial f2 = xv + (b + *d) * inv2a;
            return finish({f1, f2});
        }
        // multilinear: p = B*x + C factors only if B divides C
        for (std::size_t x = 0; x < nv; ++x) {
            if (p.degree_in(x) != 1)
                continue;
            auto parts = p.collect(x);
            Polynomial b = parts[1];
            Polynomial c = parts.count(0) ? parts[0] : Polynomial(vars);
            if (b.is_constant())
                return std::nullopt; // would force a non-linear cofactor
            auto q = exact_divide(c, b);
            if (!q)
                return std::nullopt;
            const Polynomial xv = Polynomial::variable(vars, vars[x]);
            return finish({b, xv + *q});
        }
        return std::nullopt;
    }

    // degree 3: peel a variable occurring linearly, or rational roots in
    // the univariate case
    for (std::size_t x = 0; x < nv; ++x) {
        if (p.degree_in(x) != 1)
            continue;
        auto parts = p.collect(x);
        Polynomial b = parts[1];
        Polynomial c = parts.count(0) ? parts[0] : Polynomial(vars);
        auto q = exact_divide(c, b);
        if (!q || q->total_degree() > 1)
            continue;
        auto rest = factor_into_linears(b);
        if (!rest)
            return std::nullopt;
        for (auto& f : *rest)
            factors.push_back(f);
        const Polynomial xv = Polynomial::variable(vars, vars[x]);
        factors.push_back((xv + *q).primitive());
        return factors;
    }
    {
        std::size_t x = nv, used = 0;
        for (std::size_t i = 0; i < nv; ++i)
            if (p.degree_in(i) > 0) {
                ++used;
                x = i;
            }
        if (used != 1)
            return std::nullopt;
        // univariate cubic: try rational roots of the primitive form
        Polynomial q = p.primitive();
        auto parts = q.collect(x);
        const mpz_class lead = parts.rbegin()->second.coefficient(Monomial(nv, 0)).get_num();
        const Scalar trail = parts.count(0) ? parts[0].coefficient(Monomial(nv, 0)) : Scalar(0);
        const Polynomial xv = Polynomial::variable(vars, vars[x]);
        if (is_zero(trail)) {
            auto rest = factor_into_linears(*exact_divide(q, xv));
            if (!rest)
                return std::nullopt;
            factors.push_back(xv.primitive());
            for (auto& f : *rest)
                factors.push_back(f);
            return factors;
        }
        const mpz_class t_num = abs(trail.get_num());
        for (mpz_class r(1); r <= t_num; ++r) {
            if (!mpz_divisible_p(t_num.get_mpz_t(), r.get_mpz_t()))
                continue;
            for (mpz_class s(1); s <= abs(lead); ++s) {
                if (!mpz_divisible_p(lead.get_mpz_t(), s.get_mpz_t()))
                    continue;
                for (int sign : {1, -1}) {
                    Scalar root(sign * r, s);
                    root.canonicalize();
                    std::vector<Scalar> point(nv, Scalar(0));
                    point[x] = root;
                    if (!is_zero(q.evaluate(point)))
                        continue;
                    Polynomial lin = xv - Polynomial::constant(vars, root);
                    auto rest = factor_into_linears(*exact_divide(q, lin));
                    if (!rest)
                        return std::nullopt;
                    factors.push_back(lin.primitive());
                    for (auto& f : *rest)
                        factors.push_back(f);
                    return factors;
                }
            }
        }
        return std::nullopt;
    }
}

/// One branch of a case split: triangular fixings (variable -> constant or
/// linear expression in the remaining free variables), the residual
/// polynomials that resisted further splitting, and the free variables.
struct SolutionBranch {
    std::map<std::string, Polynomial> fixed;
    PolySystem residual;
    std::vector<std::string> free_variables;

    /// Completes an assignment of the free variables to a full point,
    /// aligned with the system's variable list.
    std::vector<Scalar> complete_point(const std::vector<std::string>& vars,
                                       const std::map<std::string, Scalar>& free_values) const
    {
        std::vector<Scalar> point(vars.size(), Scalar(0));
        for (std::size_t i = 0; i < vars.size(); ++i) {
            auto fx = fixed.find(vars[i]);
            if (fx != fixed.end())
                continue;
            auto fv = free_values.find(vars[i]);
            if (fv == free_values.end())
                throw std::invalid_argument("complete_point: missing value for " + vars[i]);
            point[i] = fv->second;
        }
        for (std::size_t i = 0; i < vars.size(); ++i) {
            auto fx = fixed.find(vars[i]);
            if (fx != fixed.end())
                point[i] = fx->second.evaluate(point);
        }
        return point;
    }

    /// True when the assignment satisfies every fixing and residual.
    bool contains_point(const std::vector<std::string>& vars,
                        const std::vector<Scalar>& point) const
    {
        for (std::size_t i = 0; i < vars.size(); ++i) {
            auto fx = fixed.find(vars[i]);
            if (fx != fixed.end() && fx->second.evaluate(point) != point[i])
                return false;
        }
        for (const auto& p : residual.polynomials)
            if (!is_zero(p.evaluate(point)))
                return false;
        return true;
    }

    std::string key() const
    {
        std::string k;
        for (const auto& [v, e] : fixed)
            k += v + "=" + e.to_string() + ";";
        k += "|";
        for (const auto& s : residual.normalized().to_strings())
            k += s + ";";
        return k;
    }
};

namespace detail {

inline void case_split_rec(const PolySystem& system,
                           std::map<std::string, Polynomial> fixed,
                           std::vector<SolutionBranch>& out)
{
    const auto& vars = system.variables;
    PolySystem current = system.normalized();

    // a nonzero constant makes the branch contradictory: drop it
    for (const auto& p : current.polynomials)
        if (p.is_constant() && !p.is_zero())
            return;

    for (const auto& p : current.polynomials) {
        auto factors = factor_into_linears(p);
        if (!factors)
            continue;
        // deduplicate factors (e.g. squares) by canonical string
        std::set<std::string> seen;
        for (const auto& f : *factors) {
            if (!seen.insert(f.to_string()).second)
                continue;
            // solve the factor for its last declared variable
            std::size_t solve_var = vars.size();
            for (std::size_t i = 0; i < vars.size(); ++i) {
                Monomial mi(vars.size(), 0);
                mi[i] = 1;
                if (!is_zero(f.coefficient(mi)))
                    solve_var = i;
            }
            if (solve_var == vars.size())
                continue; // constant factor cannot vanish
            Monomial mv(vars.size(), 0);
            mv[solve_var] = 1;
            const Scalar a = f.coefficient(mv);
            Polynomial expr = (Polynomial::variable(vars, vars[solve_var]) * a - f) * Scalar(Scalar(1) / a);

            std::map<std::string, Polynomial> sub{{vars[solve_var], expr}};
            std::map<std::string, Polynomial> new_fixed;
            for (const auto& [v, e] : fixed)
                new_fixed.emplace(v, e.substitute(sub));
            new_fixed.emplace(vars[solve_var], expr);

            PolySystem reduced(vars);
            for (const auto& q : current.polynomials) {
                Polynomial r = q.substitute(sub);
                if (!r.is_zero())
                    reduced.push(r);
            }
            case_split_rec(reduced, std::move(new_fixed), out);
        }
        return; // branched on this polynomial; children cover everything
    }

    // nothing factors: emit the branch as-is (residual kept intact)
    SolutionBranch b;
    b.fixed = std::move(fixed);
    b.residual = current;
    for (const auto& v : vars)
        if (!b.fixed.count(v))
            b.free_variables.push_back(v);
    out.push_back(std::move(b));
}

} // namespace detail

/// Case-splitting solver: repeatedly picks a polynomial that factors into
/// rational linear pieces, branches on each factor, substitutes and
/// recurses. The union of the returned branches equals the solution set;
/// branches whose residual resists splitting are returned intact.
inline std::vector<SolutionBranch> case_split_solve(const PolySystem& system)
{
    detail::check_solver_limits(system);
    std::vector<SolutionBranch> raw;
    detail::case_split_rec(system, {}, raw);
    std::vector<SolutionBranch> out;
    std::set<std::string> seen;
    for (auto& b : raw)
        if (seen.insert(b.key()).second)
            out.push_back(std::move(b));
    return out;
}

namespace detail {

/// Remainder of multivariate division by a list of divisors.
inline Polynomial reduce_by(const Polynomial& input, const std::vector<Polynomial>& basis)
{
    Polynomial rem(input.variables());
    Polynomial p = input;
    while (!p.is_zero()) {
        const Monomial& lp = p.leading_monomial();
        bool divided = false;
        for (const auto& g : basis) {
            const Monomial& lg = g.leading_monomial();
            bool div = true;
            Monomial ratio(lp.size());
            for (std::size_t i = 0; i < lp.size(); ++i) {
                if (lp[i] < lg[i]) {
                    div = false;
                    break;
                }
                ratio[i] = lp[i] - lg[i];
            }
            if (!div)
                continue;
            Polynomial t(input.variables());
            t.add_term(ratio, Scalar(p.leading_coefficient() / g.leading_coefficient()));
            p = p - t * g;
            divided = true;
            break;
        }
        if (!divided) {
            Polynomial t(input.variables());
            t.add_term(lp, p.leading_coefficient());
            rem = rem + t;
            p = p - t;
        }
    }
    return rem;
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g)
{
    const Monomial& lf = f.leading_monomial();
    const Monomial& lg = g.leading_monomial();
    Monomial lcm(lf.size());
    for (std::size_t i = 0; i < lf.size(); ++i)
        lcm[i] = std::max(lf[i], lg[i]);
    Polynomial tf(f.variables()), tg(f.variables());
    Monomial mf(lf.size()), mg(lf.size());
    for (std::size_t i = 0; i < lf.size(); ++i) {
        mf[i] = lcm[i] - lf[i];
        mg[i] = lcm[i] - lg[i];
    }
    tf.add_term(mf, Scalar(Scalar(1) / f.leading_coefficient()));
    tg.add_term(mg, Scalar(Scalar(1) / g.leading_coefficient()));
    return tf * f - tg * g;
}

} // namespace detail

/// Reduced Groebner basis under lex order (declaration order of the
/// variables, first variable most significant). Buchberger's algorithm;
/// the systems here are tiny. Returns {1} exactly when the system has no
/// solution over the algebraic closure.
inline PolySystem groebner(const PolySystem& system)
{
    detail::check_solver_limits(system);
    std::vector<Polynomial> basis;
    for (const auto& p : system.polynomials)
        if (!p.is_zero())
            basis.push_back(p.monic());

    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        const Monomial& li = basis[i].leading_monomial();
        const Monomial& lj = basis[j].leading_monomial();
        bool coprime = true;
        for (std::size_t k = 0; k < li.size(); ++k)
            if (li[k] > 0 && lj[k] > 0) {
                coprime = false;
                break;
            }
        if (coprime)
            continue; // Buchberger's first criterion
        Polynomial s = detail::reduce_by(detail::s_polynomial(basis[i], basis[j]), basis);
        if (s.is_zero())
            continue;
        basis.push_back(s.monic());
        for (std::size_t k = 0; k + 1 < basis.size(); ++k)
            pairs.emplace_back(k, basis.size() - 1);
    }

    // minimalize: drop elements whose leading term is divisible by another's
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Monomial& li = basis[i].leading_monomial();
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j)
                continue;
            const Monomial& lj = basis[j].leading_monomial();
            bool divides = true;
            for (std::size_t k = 0; k < li.size(); ++k)
                if (lj[k] > li[k]) {
                    divides = false;
                    break;
                }
            if (divides && (lj != li || j < i))
                redundant = true;
        }
        if (!redundant)
            minimal.push_back(basis[i]);
    }
    // full tail reduction
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i)
                others.push_back(minimal[j]);
        Polynomial r = others.empty() ? minimal[i] : detail::reduce_by(minimal[i], others);
        if (!r.is_zero())
            reduced.push_back(r.monic());
    }
    std::sort(reduced.begin(), reduced.end(), [](const Polynomial& a, const Polynomial& b) {
        return a.to_string() < b.to_string();
    });
    PolySystem out(system.variables);
    out.polynomials = std::move(reduced);
    return out;
}

/// Ideal membership oracle: the remainder of p on division by the reduced
/// basis is zero exactly when p lies in the ideal.
inline bool in_ideal(const Polynomial& p, const PolySystem& groebner_basis)
{
    if (groebner_basis.polynomials.empty())
        return p.is_zero();
    return detail::reduce_by(p, groebner_basis.polynomials).is_zero();
}

} // namespace leibniz
