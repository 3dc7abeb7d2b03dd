#pragma once

// Exact Weil-Petersson volume polynomials V_{g,n}(x_1,...,x_n) computed
// by topological recursion over the kernel moments
//   F_{2k+1}(t) = (2k+1)! sum_i zeta(2i) (2^{2i+1}-4) t^{2k+2-2i}/(2k+2-2i)!,
// with coefficients kept as exact rationals times powers of pi^2.
// The (1,1) base polynomial is (x^2 + 4 pi^2)/48; with this normalization
// the recursion output is symmetric under boundary exchange and satisfies
// the evaluation identities at x = 2 pi i used by the test oracles.

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace sklab::wp {

using Rational = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::cpp_dec_float_100;

Real pi_value();

// rat * pi^(2*pi2)
struct Coef {
    Rational rat;
    int pi2 = 0;

    Real to_real() const;
    bool operator==(const Coef&) const = default;
};

// exponents of x_i^2 per variable
using MultiDegree = std::vector<int>;

struct VolumePolynomial {
    int g = 0, n = 0;
    std::map<MultiDegree, Coef> terms;

    int degree() const { return 3 * g + n - 3; }

    Real evaluate(const std::vector<Real>& x) const;
    double evaluate_d(const std::vector<double>& x) const;
    Coef at_zero() const;

    bool operator==(const VolumePolynomial&) const = default;
};

// zeta(2i) = zeta_even_rational(i) * pi^{2i}, exact via Bernoulli numbers.
Rational zeta_even_rational(int i);

class BudgetExceeded : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Memoized recursion table. Cells with 3g+n-3 beyond the budget throw
// BudgetExceeded; unstable (g,n) throw std::invalid_argument. V_{g,0}
// is recovered from the derivative of V_{g,1} at x = 2 pi i.
class VolumeTable {
public:
    explicit VolumeTable(int budget = 12) : budget_(budget) {}

    const VolumePolynomial& get(int g, int n);
    int budget() const { return budget_; }

    // V_{k/2,2} for even k, V_{(k+1)/2,1} for odd k.
    Coef tilde_w(int k);
    bool tilde_w_available(int k);

private:
    VolumePolynomial compute(int g, int n);
    int budget_;
    std::map<std::pair<int, int>, VolumePolynomial> cells_;
};

// --- exact polynomial transforms used by the table and the oracles ---

// Substitute x_var = 2 pi i (i.e. x_var^2 = -4 pi^2); result in the
// remaining variables.
VolumePolynomial substitute_two_pi_i(const VolumePolynomial& p, int var);

// (1/(2 pi i)) * dV/dx_var evaluated at x_var = 2 pi i; exact, real.
VolumePolynomial derivative_at_two_pi_i(const VolumePolynomial& p, int var);

// integral_0^{x_var} y p(..., y, ...) dy as a polynomial (adds 1 to the
// x_var^2 degree).
VolumePolynomial integrate_moment(const VolumePolynomial& p, int var);

VolumePolynomial sum(const VolumePolynomial& a, const VolumePolynomial& b);

// --- inequality and trend verification -------------------------------------------------

struct VolumeRelationReport {
    bool coefficients_positive = true;     // implies V(x) >= V(0) termwise
    bool sandwich_upper_ok = true;         // V(x) <= e^{sum x/2} V(0)
    bool volume_step_ok = true;            // V_{g,n+4} <= V_{g+1,n+2}
    bool sinh_upper_ok = true;             // V(x)/V(0) <= prod sinh(x/2)/(x/2)
    bool ratio_4pi2_trend_ok = true;       // |V_{g,n+1}/(2g V_{g,n})/4pi^2 - 1| decreasing in g
    bool ratio_one_trend_ok = true;        // |V_{g,n}/V_{g-1,n+2} - 1| decreasing in g
    std::map<int, double> fitted_c;        // per n: least c with the sinh lower bound
    std::vector<std::string> lines;        // human-readable detail
    bool all_ok() const {
        return coefficients_positive && sandwich_upper_ok && volume_step_ok && sinh_upper_ok &&
               ratio_4pi2_trend_ok && ratio_one_trend_ok;
    }
};

// Grid is the tensor power of `axis` restricted to each cell's arity.
VolumeRelationReport check_volume_relations(VolumeTable& table, int n_cap = 4,
                                const std::vector<double>& axis = {0.0, 2.5, 5.0, 7.5, 10.0});

struct SumAsymptotics {
    Real lhs;        // sum over g1+g2 = g+1-k, r+1 <= g1 <= g2 of e^{C g1} g1^b V_{g1,k} V_{g2,k}
    Real rhs_scale;  // V_g / g^{2r+k}
    Real ratio;
    int term_count = 0;
};

SumAsymptotics sum_asymptotics(VolumeTable& table, int b, int k, Real C, int g, int r = 0);

// --- table text format ---------------------------------------------------

void write_table(std::ostream& out, const std::vector<VolumePolynomial>& polys);
std::vector<VolumePolynomial> read_table(std::istream& in);

} // namespace sklab::wp
