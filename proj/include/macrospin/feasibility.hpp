#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace macrospin {

using Rational = boost::multiprecision::cpp_rational;

// Marginal tables that disagree on a shared observable beyond tolerance:
// bad input data, not contextuality.
struct MarginalInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Observable {
    std::string id;
    std::vector<std::string> outcomes;
};

// Observables, jointly measurable contexts, and one probability table per
// context over its joint outcomes. Missing table entries mean probability 0.
struct ContextScenario {
    std::vector<Observable> observables;
    std::vector<std::vector<std::size_t>> contexts; // observable indices
    // per context: outcome-index tuple (aligned with the context) -> probability
    std::vector<std::map<std::vector<std::size_t>, Rational>> marginals;

    static constexpr std::size_t kDefaultAssignmentLimit = 1000000;

    void validate(double tol) const;
};

// One constrained marginal cell: context plus a joint outcome of it.
struct MarginalCell {
    std::size_t context;
    std::vector<std::size_t> outcome; // per context observable
    Rational probability;
};

struct FeasibilityResult {
    bool feasible = false;
    double tolerance = 0.0;
    // feasible: a joint distribution over complete assignments
    // (outcome index per observable, in observable order)
    std::vector<std::pair<std::vector<std::size_t>, Rational>> joint;
    // infeasible: a separating functional, one coefficient per cell
    std::vector<MarginalCell> cells;
    std::vector<Rational> functional;
};

namespace detail {

// "3/4", "0.25", "1e-3", or plain integers, converted exactly.
inline Rational parse_probability(const std::string& s)
{
    auto fail = [&] { throw std::invalid_argument("cannot parse probability \"" + s + "\""); };
    // cpp_int's string constructor treats a leading 0 as an octal prefix
    auto parse_int = [&](std::string digits) {
        if (digits.empty() || digits == "-" || digits == "+") fail();
        bool negative = digits[0] == '-';
        if (digits[0] == '-' || digits[0] == '+') digits.erase(0, 1);
        std::size_t first = digits.find_first_not_of('0');
        digits = (first == std::string::npos) ? "0" : digits.substr(first);
        if (digits.find_first_not_of("0123456789") != std::string::npos) fail();
        boost::multiprecision::cpp_int v(digits);
        return negative ? boost::multiprecision::cpp_int(-v) : v;
    };
    if (s.empty()) fail();
    std::size_t slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            boost::multiprecision::cpp_int num = parse_int(s.substr(0, slash));
            boost::multiprecision::cpp_int den = parse_int(s.substr(slash + 1));
            if (den == 0) fail();
            return Rational(num, den);
        }
        std::string mantissa = s;
        long long exp10 = 0;
        std::size_t epos = s.find_first_of("eE");
        if (epos != std::string::npos) {
            exp10 = std::stoll(s.substr(epos + 1));
            mantissa = s.substr(0, epos);
        }
        std::size_t dot = mantissa.find('.');
        std::string digits = mantissa;
        long long frac_len = 0;
        if (dot != std::string::npos) {
            digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
            frac_len = static_cast<long long>(mantissa.size() - dot - 1);
        }
        Rational r(parse_int(digits), 1);
        long long shift = exp10 - frac_len;
        for (long long i = 0; i < std::abs(shift); ++i) {
            if (shift > 0)
                r *= 10;
            else
                r /= 10;
        }
        return r;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        fail();
    }
    return Rational(0);
}

// Phase-1 simplex over exact rationals with Bland's rule. Decides whether
// {x >= 0 : A x (<=|=) b} is nonempty; on failure returns the Farkas dual.
class RationalLP {
public:
    // rows are equality constraints A x = b over x >= 0
    RationalLP(std::size_t num_vars) : num_vars_(num_vars) {}

    void add_row(std::vector<Rational> coeffs, Rational rhs)
    {
        if (coeffs.size() != num_vars_) throw std::logic_error("RationalLP: row size");
        rows_.push_back(std::move(coeffs));
        rhs_.push_back(std::move(rhs));
    }

    struct Outcome {
        bool feasible;
        std::vector<Rational> x;    // primal point when feasible
        std::vector<Rational> dual; // Farkas y when infeasible: y^T A <= 0, y^T b > 0
    };

    Outcome solve() const
    {
        const std::size_t m = rows_.size();
        const std::size_t n = num_vars_;
        const std::size_t total = n + m; // structural + artificial
        // tableau with b >= 0; remember row orientation to map the dual back
        std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(total + 1));
        std::vector<int> orient(m, 1);
        for (std::size_t i = 0; i < m; ++i) {
            int sign = rhs_[i] < 0 ? -1 : 1;
            orient[i] = sign;
            for (std::size_t j = 0; j < n; ++j) tab[i][j] = sign * rows_[i][j];
            tab[i][n + i] = 1;
            tab[i][total] = sign * rhs_[i];
        }
        std::vector<std::size_t> basis(m);
        for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

        // reduced costs for min sum(artificials): r_j = c_j - sum_i tab[i][j]
        std::vector<Rational> reduced(total + 1);
        for (std::size_t j = 0; j <= total; ++j) {
            Rational sum = 0;
            for (std::size_t i = 0; i < m; ++i) sum += tab[i][j];
            Rational cost = (j >= n && j < total) ? 1 : 0;
            reduced[j] = cost - sum;
        }

        while (true) {
            // Bland: smallest-index entering column with negative reduced cost
            std::size_t enter = total;
            for (std::size_t j = 0; j < total; ++j) {
                if (reduced[j] < 0) { enter = j; break; }
            }
            if (enter == total) break;
            // ratio test, ties by smallest basis index
            std::size_t leave = m;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (tab[i][enter] <= 0) continue;
                Rational ratio = tab[i][total] / tab[i][enter];
                if (leave == m || ratio < best
                    || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m)
                throw std::logic_error("RationalLP: unbounded phase-1 objective");
            pivot(tab, reduced, basis, leave, enter, total);
        }

        Rational objective = 0; // sum of artificial values in the basis
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] >= n) objective += tab[i][total];

        Outcome out;
        out.feasible = objective == 0;
        if (out.feasible) {
            out.x.assign(n, Rational(0));
            for (std::size_t i = 0; i < m; ++i)
                if (basis[i] < n) out.x[basis[i]] = tab[i][total];
        } else {
            // simplex multipliers from the artificial columns: y_i = 1 - r_{a_i}
            out.dual.assign(m, Rational(0));
            for (std::size_t i = 0; i < m; ++i)
                out.dual[i] = orient[i] * (Rational(1) - reduced[n + i]);
        }
        return out;
    }

private:
    static void pivot(std::vector<std::vector<Rational>>& tab, std::vector<Rational>& reduced,
                      std::vector<std::size_t>& basis, std::size_t row, std::size_t col,
                      std::size_t total)
    {
        Rational piv = tab[row][col];
        for (std::size_t j = 0; j <= total; ++j) tab[row][j] /= piv;
        for (std::size_t i = 0; i < tab.size(); ++i) {
            if (i == row || tab[i][col] == 0) continue;
            Rational f = tab[i][col];
            for (std::size_t j = 0; j <= total; ++j) tab[i][j] -= f * tab[row][j];
        }
        Rational rf = reduced[col];
        if (rf != 0)
            for (std::size_t j = 0; j <= total; ++j) reduced[j] -= rf * tab[row][j];
        basis[row] = col;
    }

    std::size_t num_vars_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> rhs_;
};

inline std::size_t assignment_count(const ContextScenario& sc)
{
    std::size_t count = 1;
    for (const auto& obs : sc.observables) {
        if (obs.outcomes.empty())
            throw std::invalid_argument("observable " + obs.id + " has no outcomes");
        if (count > ContextScenario::kDefaultAssignmentLimit / obs.outcomes.size() + 1)
            return ContextScenario::kDefaultAssignmentLimit + 1;
        count *= obs.outcomes.size();
    }
    return count;
}

// Complete deterministic assignments, lexicographic in observable order.
inline std::vector<std::vector<std::size_t>> enumerate_assignments(const ContextScenario& sc)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(sc.observables.size(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t pos = sc.observables.size();
        while (pos > 0) {
            --pos;
            if (++cur[pos] < sc.observables[pos].outcomes.size()) break;
            cur[pos] = 0;
            if (pos == 0) return out;
        }
        if (sc.observables.empty()) return out;
    }
}

// All constrained cells: every joint outcome of every context, with its
// marginal probability (0 when absent from the table).
inline std::vector<MarginalCell> enumerate_cells(const ContextScenario& sc)
{
    std::vector<MarginalCell> cells;
    for (std::size_t c = 0; c < sc.contexts.size(); ++c) {
        const auto& ctx = sc.contexts[c];
        std::vector<std::size_t> cur(ctx.size(), 0);
        while (true) {
            Rational p = 0;
            auto it = sc.marginals[c].find(cur);
            if (it != sc.marginals[c].end()) p = it->second;
            cells.push_back({c, cur, p});
            std::size_t pos = ctx.size();
            bool done = true;
            while (pos > 0) {
                --pos;
                if (++cur[pos] < sc.observables[ctx[pos]].outcomes.size()) { done = false; break; }
                cur[pos] = 0;
            }
            if (done) break;
        }
    }
    return cells;
}

inline bool cell_matches(const ContextScenario& sc, const MarginalCell& cell,
                         const std::vector<std::size_t>& assignment)
{
    const auto& ctx = sc.contexts[cell.context];
    for (std::size_t i = 0; i < ctx.size(); ++i)
        if (assignment[ctx[i]] != cell.outcome[i]) return false;
    return true;
}

} // namespace detail

inline void ContextScenario::validate(double tol) const
{
    Rational rtol(tol);
    for (const auto& ctx : contexts) {
        if (ctx.empty()) throw std::invalid_argument("empty context");
        for (std::size_t idx : ctx)
            if (idx >= observables.size())
                throw std::invalid_argument("context references unknown observable");
    }
    if (marginals.size() != contexts.size())
        throw std::invalid_argument("marginal table count does not match context count");
    std::vector<bool> covered(observables.size(), false);
    for (const auto& ctx : contexts)
        for (std::size_t idx : ctx) covered[idx] = true;
    for (std::size_t i = 0; i < observables.size(); ++i)
        if (!covered[i])
            throw std::invalid_argument("observable " + observables[i].id
                                        + " appears in no context");

    for (std::size_t c = 0; c < contexts.size(); ++c) {
        Rational sum = 0;
        for (const auto& [outcome, p] : marginals[c]) {
            if (outcome.size() != contexts[c].size())
                throw std::invalid_argument("marginal assignment arity mismatch");
            for (std::size_t i = 0; i < outcome.size(); ++i)
                if (outcome[i] >= observables[contexts[c][i]].outcomes.size())
                    throw std::invalid_argument("marginal references unknown outcome");
            if (p < 0) throw std::invalid_argument("negative marginal probability");
            sum += p;
        }
        if (boost::multiprecision::abs(sum - 1) > rtol)
            throw std::invalid_argument("marginal table for context "
                                        + std::to_string(c) + " does not sum to 1");
    }

    // no-disturbance: overlapping contexts must imply the same
    // single-observable marginals
    auto cells = detail::enumerate_cells(*this);
    for (std::size_t obs = 0; obs < observables.size(); ++obs) {
        std::optional<std::vector<Rational>> reference;
        std::size_t ref_ctx = 0;
        for (std::size_t c = 0; c < contexts.size(); ++c) {
            auto pos = std::find(contexts[c].begin(), contexts[c].end(), obs);
            if (pos == contexts[c].end()) continue;
            std::size_t slot = static_cast<std::size_t>(pos - contexts[c].begin());
            std::vector<Rational> marg(observables[obs].outcomes.size(), Rational(0));
            for (const auto& cell : cells)
                if (cell.context == c) marg[cell.outcome[slot]] += cell.probability;
            if (!reference) {
                reference = marg;
                ref_ctx = c;
            } else {
                for (std::size_t k = 0; k < marg.size(); ++k)
                    if (boost::multiprecision::abs(marg[k] - (*reference)[k]) > rtol)
                        throw MarginalInconsistency(
                            "contexts " + std::to_string(ref_ctx) + " and "
                            + std::to_string(c) + " disagree on the marginal of "
                            + observables[obs].id);
            }
        }
    }
}

// Fine-criterion feasibility: does a joint probability distribution over
// complete deterministic assignments reproduce every context marginal
// within tol? Decided by an exact-rational phase-1 simplex over assignment
// variables; the answer carries a checkable certificate either way.
inline FeasibilityResult joint_feasibility(const ContextScenario& scenario, double tol)
{
    scenario.validate(tol);
    std::size_t count = detail::assignment_count(scenario);
    if (count > ContextScenario::kDefaultAssignmentLimit)
        throw std::domain_error("joint_feasibility: assignment limit exceeded");

    auto assignments = detail::enumerate_assignments(scenario);
    auto cells = detail::enumerate_cells(scenario);
    Rational rtol(tol);

    detail::RationalLP lp(assignments.size());
    // per cell: p - tol <= sum of consistent assignment weights <= p + tol,
    // encoded as two rows with slack baked into the rhs and a sign flip
    std::vector<Rational> indicator(assignments.size());
    std::vector<std::vector<Rational>> cell_rows;
    for (const auto& cell : cells) {
        for (std::size_t a = 0; a < assignments.size(); ++a)
            indicator[a] = detail::cell_matches(scenario, cell, assignments[a]) ? 1 : 0;
        cell_rows.push_back(indicator);
    }
    // inequality rows become equalities through explicit slack variables;
    // RationalLP works on A x = b, so widen the variable space
    std::size_t n_struct = assignments.size();
    std::size_t n_slack = 2 * cells.size();
    detail::RationalLP wide(n_struct + n_slack);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::vector<Rational> upper(n_struct + n_slack, Rational(0));
        std::vector<Rational> lower(n_struct + n_slack, Rational(0));
        for (std::size_t a = 0; a < n_struct; ++a) upper[a] = lower[a] = cell_rows[i][a];
        upper[n_struct + 2 * i] = 1;  // g + s = p + tol
        lower[n_struct + 2 * i + 1] = -1; // g - t = p - tol
        wide.add_row(std::move(upper), cells[i].probability + rtol);
        wide.add_row(std::move(lower), cells[i].probability - rtol);
    }
    std::vector<Rational> norm_row(n_struct + n_slack, Rational(0));
    for (std::size_t a = 0; a < n_struct; ++a) norm_row[a] = 1;
    wide.add_row(std::move(norm_row), Rational(1));

    auto outcome = wide.solve();

    FeasibilityResult result;
    result.tolerance = tol;
    result.cells = cells;
    result.feasible = outcome.feasible;
    if (outcome.feasible) {
        for (std::size_t a = 0; a < n_struct; ++a)
            if (outcome.x[a] != 0) result.joint.emplace_back(assignments[a], outcome.x[a]);
    } else {
        // Farkas dual: rows come in (upper, lower) pairs plus normalization;
        // lambda_i = y_upper_i + y_lower_i gives the separating functional,
        // normalized so the verification margin exceeds tol
        Rational scale = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            // y_upper <= 0 and y_lower >= 0 at a Farkas point
            scale += boost::multiprecision::abs(outcome.dual[2 * i])
                   + boost::multiprecision::abs(outcome.dual[2 * i + 1]);
        }
        if (scale == 0) scale = 1;
        result.functional.reserve(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i)
            result.functional.push_back((outcome.dual[2 * i] + outcome.dual[2 * i + 1])
                                        / scale);
    }
    return result;
}

// Checks a feasible certificate: reconstructed marginals within 2*tol.
inline bool verify_feasible_certificate(const ContextScenario& sc,
                                        const FeasibilityResult& res)
{
    if (!res.feasible) return false;
    Rational bound = Rational(res.tolerance) * 2;
    Rational total = 0;
    for (const auto& [a, p] : res.joint) {
        if (p < 0) return false;
        total += p;
    }
    if (boost::multiprecision::abs(total - 1) > bound) return false;
    for (const auto& cell : res.cells) {
        Rational mass = 0;
        for (const auto& [a, p] : res.joint)
            if (detail::cell_matches(sc, cell, a)) mass += p;
        if (boost::multiprecision::abs(mass - cell.probability) > bound) return false;
    }
    return true;
}

// Checks an infeasible certificate: the functional's value on the data
// exceeds its maximum over all deterministic assignments by more than tol.
inline bool verify_infeasible_certificate(const ContextScenario& sc,
                                          const FeasibilityResult& res)
{
    if (res.feasible || res.functional.size() != res.cells.size()) return false;
    Rational data_value = 0;
    for (std::size_t i = 0; i < res.cells.size(); ++i)
        data_value += res.functional[i] * res.cells[i].probability;
    auto assignments = detail::enumerate_assignments(sc);
    bool first = true;
    Rational max_f = 0;
    for (const auto& a : assignments) {
        Rational f = 0;
        for (std::size_t i = 0; i < res.cells.size(); ++i)
            if (detail::cell_matches(sc, res.cells[i], a)) f += res.functional[i];
        if (first || f > max_f) { max_f = f; first = false; }
    }
    return data_value - max_f > Rational(res.tolerance);
}

} // namespace macrospin
