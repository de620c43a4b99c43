#include "phg/exact.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace phg {

namespace {

using boost::multiprecision::cpp_int;

cpp_int ipow(cpp_int base, std::int64_t e) {
    cpp_int acc = 1;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

}  // namespace

double ProbForm::log_at(int n) const {
    if (base.num == 0) return -HUGE_VAL;
    double lp = std::log(base.to_double()) / root;
    if (n_exp.num != 0) lp -= n_exp.to_double() * std::log(static_cast<double>(n));
    return lp;
}

double ProbForm::value_at(int n) const { return std::exp(log_at(n)); }

Cmp compare_power_product(const std::vector<std::pair<Rational, Rational>>& factors) {
    std::int64_t lcm = 1;
    for (const auto& [base, exp] : factors) {
        if (base.num <= 0) throw std::domain_error("compare_power_product: nonpositive base");
        lcm = std::lcm(lcm, exp.den);
    }
    cpp_int lhs = 1, rhs = 1;
    for (const auto& [base, exp] : factors) {
        std::int64_t x = exp.num * (lcm / exp.den);
        if (x == 0 || base.num == base.den) continue;
        cpp_int u = base.num, w = base.den;
        if (x > 0) {
            lhs *= ipow(u, x);
            rhs *= ipow(w, x);
        } else {
            lhs *= ipow(w, -x);
            rhs *= ipow(u, -x);
        }
    }
    if (lhs == rhs) return Cmp::equal;
    return lhs < rhs ? Cmp::less : Cmp::greater;
}

Cmp compare_phi_terms(int n, const ProbForm& p, PhiTerm a, PhiTerm b) {
    if (n < 1) throw std::domain_error("compare_phi_terms: n must be positive");
    if (p.base.num < 0 || p.root < 1) throw std::domain_error("compare_phi_terms: bad ProbForm");
    if (p.base.num == 0) {
        // p = 0: a term is zero iff its edge exponent is positive.
        bool az = a.e > 0, bz = b.e > 0;
        if (az || bz) return az == bz ? Cmp::equal : (az ? Cmp::less : Cmp::greater);
        if (a.v == b.v || n == 1) return Cmp::equal;
        return a.v < b.v ? Cmp::less : Cmp::greater;
    }
    // ratio = base^{(ea-eb)/root} * n^{(va-vb) - (ea-eb) n_exp}
    Rational de(a.e - b.e);
    Rational dn = Rational(a.v - b.v) - de * p.n_exp;
    return compare_power_product({{p.base, de / Rational(p.root)}, {Rational(n), dn}});
}

Cmp compare_phi_term_to(int n, const ProbForm& p, PhiTerm t, const Rational& c, int n_power) {
    if (n < 1) throw std::domain_error("compare_phi_term_to: n must be positive");
    if (c.num <= 0) throw std::domain_error("compare_phi_term_to: c must be positive");
    if (p.base.num == 0) {
        if (t.e > 0) return Cmp::less;  // zero versus positive
        // n^{v} versus c * n^{power}
        return compare_power_product({{Rational(n), Rational(t.v - n_power)}, {c, Rational(-1)}});
    }
    Rational pe = Rational(t.e) / Rational(p.root);
    Rational ne = Rational(t.v) - Rational(t.e) * p.n_exp - Rational(n_power);
    return compare_power_product({{p.base, pe}, {Rational(n), ne}, {c, Rational(-1)}});
}

double phi_term_log(int n, const ProbForm& p, PhiTerm t) {
    return t.v * std::log(static_cast<double>(n)) + static_cast<double>(t.e) * p.log_at(n);
}

}  // namespace phg
