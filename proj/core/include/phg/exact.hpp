#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "phg/rational.hpp"

namespace phg {

// Edge probability in symbolic form: p = base^(1/root) * n^(-n_exp).
// Covers plain rationals (root 1, n_exp 0), power laws c * n^(-a/b), and
// radical coefficients such as (theta/2b)^(1/j) * n^(-1/d).
struct ProbForm {
    Rational base{1};
    int root = 1;
    Rational n_exp{0};

    static ProbForm plain(Rational p) { return {p, 1, Rational(0)}; }
    static ProbForm power(Rational c, Rational n_exp) { return {c, 1, n_exp}; }
    static ProbForm root_power(Rational base, int root, Rational n_exp) {
        return {base, root, n_exp};
    }

    // log p at a concrete n, natural base; -inf for p = 0.
    double log_at(int n) const;

    double value_at(int n) const;
};

enum class Cmp { less, equal, greater };

// One term n^{v} p^{e} of the minimum defining the expected-copies scale.
struct PhiTerm {
    int v = 0;
    std::int64_t e = 0;
};

// Exact sign of log(prod base_i^{exp_i}); bases must be positive rationals.
Cmp compare_power_product(const std::vector<std::pair<Rational, Rational>>& factors);

// n^{v1} p^{e1} versus n^{v2} p^{e2}, exactly.
Cmp compare_phi_terms(int n, const ProbForm& p, PhiTerm a, PhiTerm b);

// n^{v} p^{e} versus c * n^{n_power}, exactly.
Cmp compare_phi_term_to(int n, const ProbForm& p, PhiTerm t, const Rational& c, int n_power);

// log of n^{v} p^{e} in doubles, for prefilters and reporting.
double phi_term_log(int n, const ProbForm& p, PhiTerm t);

}  // namespace phg
