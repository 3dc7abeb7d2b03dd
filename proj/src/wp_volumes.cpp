#include "sklab/wp_volumes.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace sklab::wp {

using boost::multiprecision::cpp_int;

Real pi_value() {
    static const Real pi = Real(4) * atan(Real(1));
    return pi;
}

Real Coef::to_real() const {
    Real r(rat);
    if (pi2 > 0) r *= pow(pi_value(), 2 * pi2);
    return r;
}

namespace {

cpp_int factorial(int n) {
    static std::vector<cpp_int> cache{1};
    while ((int)cache.size() <= n) cache.push_back(cache.back() * (int)cache.size());
    return cache[n];
}

cpp_int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

// Bernoulli numbers, B1 = -1/2 convention.
Rational bernoulli(int m) {
    static std::vector<Rational> cache;
    if (cache.empty()) {
        cache.push_back(1);
        cache.push_back(Rational(-1, 2));
    }
    while ((int)cache.size() <= m) {
        const int k = (int)cache.size();
        Rational acc = 0;
        for (int j = 0; j < k; ++j) acc += Rational(binomial(k + 1, j)) * cache[j];
        cache.push_back(-acc / (k + 1));
    }
    return cache[m];
}

} // namespace

Rational zeta_even_rational(int i) {
    // zeta(2i) = (-1)^{i+1} B_{2i} (2 pi)^{2i} / (2 (2i)!)
    Rational r = bernoulli(2 * i) * Rational(cpp_int(1) << (2 * i), 2 * factorial(2 * i));
    if (i % 2 == 0) r = -r;
    return r;
}

namespace {

struct FTerm {
    int power; // degree in t^2
    Rational rat;
    int pi2;
};

// F_{2k+1}(t) = (2k+1)! sum_{i=0}^{k+1} zeta(2i)(2^{2i+1}-4) t^{2k+2-2i}/(2k+2-2i)!
const std::vector<FTerm>& f_moment(int k) {
    static std::map<int, std::vector<FTerm>> cache;
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    std::vector<FTerm> terms;
    for (int i = 0; i <= k + 1; ++i) {
        Rational c = Rational(factorial(2 * k + 1)) * zeta_even_rational(i) *
                     Rational((cpp_int(1) << (2 * i + 1)) - 4) / Rational(factorial(2 * k + 2 - 2 * i));
        terms.push_back({k + 1 - i, std::move(c), i});
    }
    return cache.emplace(k, std::move(terms)).first->second;
}

bool stable(int g, int n) { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }

void add_term(std::map<MultiDegree, Coef>& terms, MultiDegree d, Rational rat, int pi2) {
    if (rat == 0) return;
    auto [it, fresh] = terms.try_emplace(std::move(d), Coef{rat, pi2});
    if (!fresh) {
        if (it->second.pi2 != pi2) throw std::logic_error("pi grading mismatch");
        it->second.rat += rat;
        if (it->second.rat == 0) terms.erase(it);
    }
}

MultiDegree apply_perm(const MultiDegree& d, const std::vector<int>& perm) {
    MultiDegree r(d.size());
    for (size_t i = 0; i < d.size(); ++i) r[perm[i]] = d[i];
    return r;
}

} // namespace

Real VolumePolynomial::evaluate(const std::vector<Real>& x) const {
    if ((int)x.size() != n) throw std::invalid_argument("evaluate: arity mismatch");
    const Real pi2v = pi_value() * pi_value();
    Real acc = 0;
    for (const auto& [d, c] : terms) {
        Real t(c.rat);
        t *= pow(pi2v, c.pi2);
        for (int i = 0; i < n; ++i)
            if (d[i]) t *= pow(x[i] * x[i], d[i]);
        acc += t;
    }
    return acc;
}

double VolumePolynomial::evaluate_d(const std::vector<double>& x) const {
    std::vector<Real> xr(x.begin(), x.end());
    return static_cast<double>(evaluate(xr));
}

Coef VolumePolynomial::at_zero() const {
    const auto it = terms.find(MultiDegree(n, 0));
    if (it == terms.end()) throw std::logic_error("missing constant term");
    return it->second;
}

const VolumePolynomial& VolumeTable::get(int g, int n) {
    if (auto it = cells_.find({g, n}); it != cells_.end()) return it->second;
    if (n == 0) {
        // V_{g,0} from the derivative of V_{g,1} at x = 2 pi i:
        // (1/(2 pi i)) V_{g,1}'(2 pi i) = (2g - 2) V_{g,0}
        if (g < 2) throw std::invalid_argument("V_{g,0} needs g >= 2");
        if (3 * g - 3 > budget_) throw BudgetExceeded("volume budget exceeded");
        VolumePolynomial v = derivative_at_two_pi_i(get(g, 1), 0);
        for (auto& [d, c] : v.terms) c.rat /= (2 * g - 2);
        v.g = g;
        v.n = 0;
        if (v.terms.empty() || v.terms.begin()->second.pi2 != 3 * g - 3 ||
            v.terms.begin()->second.rat <= 0)
            throw std::logic_error("closed volume grading mismatch");
        return cells_.emplace(std::make_pair(g, 0), std::move(v)).first->second;
    }
    if (!stable(g, n)) throw std::invalid_argument("unstable (g,n)");
    if (3 * g + n - 3 > budget_) throw BudgetExceeded("volume budget exceeded");

    VolumePolynomial v = compute(g, n);

    // distinguished-boundary agreement: exchanging the distinguished
    // boundary with any other reproduces the same polynomial
    for (int j = 1; j < n; ++j) {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::swap(perm[0], perm[j]);
        for (const auto& [d, c] : v.terms) {
            const auto it = v.terms.find(apply_perm(d, perm));
            if (it == v.terms.end() || !(it->second == c))
                throw std::logic_error("volume polynomial not boundary-symmetric");
        }
    }
    // grading: every term has |d| + pi2 = 3g+n-3; top and constant present
    const int deg = 3 * g + n - 3;
    bool has_top = false;
    for (const auto& [d, c] : v.terms) {
        int total = 0;
        for (int e : d) total += e;
        if (total + c.pi2 != deg) throw std::logic_error("volume polynomial grading violated");
        if (total == deg) has_top = true;
    }
    if (!has_top || v.terms.find(MultiDegree(n, 0)) == v.terms.end())
        throw std::logic_error("volume polynomial missing top or constant term");

    return cells_.emplace(std::make_pair(g, n), std::move(v)).first->second;
}

VolumePolynomial VolumeTable::compute(int g, int n) {
    VolumePolynomial v;
    v.g = g;
    v.n = n;
    if (g == 0 && n == 3) {
        add_term(v.terms, {0, 0, 0}, 1, 0);
        return v;
    }
    if (g == 1 && n == 1) {
        add_term(v.terms, {1}, Rational(1, 48), 0);
        add_term(v.terms, {0}, Rational(1, 12), 1);
        return v;
    }

    // Q = d/dx1 (x1 V), assembled term by term
    std::map<MultiDegree, Coef> q;

    // pants excision joining two cuffs of one connected piece
    if (g >= 1 && stable(g - 1, n + 1)) {
        const VolumePolynomial& w = get(g - 1, n + 1); // vars (x, y, tail)
        for (const auto& [d, c] : w.terms) {
            const int a = d[0], b = d[1];
            const Rational t =
                Rational(factorial(2 * a + 1) * factorial(2 * b + 1), factorial(2 * a + 2 * b + 3));
            for (const auto& f : f_moment(a + b + 1)) {
                MultiDegree key(n, 0);
                key[0] = f.power;
                for (int i = 2; i < n + 1; ++i) key[i - 1] = d[i];
                add_term(q, std::move(key), Rational(1, 2) * c.rat * t * f.rat, c.pi2 + f.pi2);
            }
        }
    }

    // pants excision separating the surface into two stable pieces
    for (int g1 = 0; g1 <= g; ++g1) {
        const int g2 = g - g1;
        for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
            std::vector<int> i1, i2; // parent tail var indices 1..n-1
            for (int t = 0; t < n - 1; ++t) (mask >> t & 1u ? i1 : i2).push_back(t + 1);
            if (!stable(g1, (int)i1.size() + 1) || !stable(g2, (int)i2.size() + 1)) continue;
            const VolumePolynomial& p1 = get(g1, (int)i1.size() + 1);
            const VolumePolynomial& p2 = get(g2, (int)i2.size() + 1);
            for (const auto& [d1, c1] : p1.terms)
                for (const auto& [d2, c2] : p2.terms) {
                    const int a = d1[0], b = d2[0];
                    const Rational t =
                        Rational(factorial(2 * a + 1) * factorial(2 * b + 1), factorial(2 * a + 2 * b + 3));
                    MultiDegree tail(n, 0);
                    for (size_t s = 0; s < i1.size(); ++s) tail[i1[s]] = d1[s + 1];
                    for (size_t s = 0; s < i2.size(); ++s) tail[i2[s]] = d2[s + 1];
                    const Rational base = Rational(1, 2) * c1.rat * c2.rat * t;
                    for (const auto& f : f_moment(a + b + 1)) {
                        MultiDegree key = tail;
                        key[0] = f.power;
                        add_term(q, std::move(key), base * f.rat, c1.pi2 + c2.pi2 + f.pi2);
                    }
                }
        }
    }

    // pants carrying the distinguished boundary and one other
    if (n >= 2 && stable(g, n - 1)) {
        const VolumePolynomial& w = get(g, n - 1); // vars (x, tail minus j)
        for (int j = 1; j < n; ++j) {
            for (const auto& [d, c] : w.terms) {
                const int a = d[0];
                MultiDegree tail(n, 0);
                int src = 1;
                for (int i = 1; i < n; ++i) {
                    if (i == j) continue;
                    tail[i] = d[src++];
                }
                for (const auto& f : f_moment(a)) {
                    const int m = f.power;
                    for (int r2 = 0; r2 <= m; ++r2) { // L_j^2 exponent
                        MultiDegree key = tail;
                        key[0] = m - r2;
                        key[j] += r2;
                        add_term(q, std::move(key), c.rat * f.rat * Rational(binomial(2 * m, 2 * r2)),
                                 c.pi2 + f.pi2);
                    }
                }
            }
        }
    }

    // integrate in x1 and divide by x1
    for (auto& [d, c] : q) add_term(v.terms, d, c.rat / (2 * d[0] + 1), c.pi2);
    return v;
}

Coef VolumeTable::tilde_w(int k) {
    if (k <= 0) throw std::invalid_argument("tilde_w: k must be positive");
    return k % 2 == 0 ? get(k / 2, 2).at_zero() : get((k + 1) / 2, 1).at_zero();
}

bool VolumeTable::tilde_w_available(int k) {
    if (k <= 0) return false;
    const int g = k % 2 == 0 ? k / 2 : (k + 1) / 2;
    const int n = k % 2 == 0 ? 2 : 1;
    return stable(g, n) && 3 * g + n - 3 <= budget_;
}

VolumePolynomial substitute_two_pi_i(const VolumePolynomial& p, int var) {
    VolumePolynomial r;
    r.g = p.g;
    r.n = p.n - 1;
    for (const auto& [d, c] : p.terms) {
        const int m = d[var];
        MultiDegree key;
        key.reserve(d.size() - 1);
        for (int i = 0; i < (int)d.size(); ++i)
            if (i != var) key.push_back(d[i]);
        Rational rat = c.rat;
        for (int t = 0; t < m; ++t) rat *= -4;
        add_term(r.terms, std::move(key), std::move(rat), c.pi2 + m);
    }
    return r;
}

VolumePolynomial derivative_at_two_pi_i(const VolumePolynomial& p, int var) {
    VolumePolynomial r;
    r.g = p.g;
    r.n = p.n - 1;
    for (const auto& [d, c] : p.terms) {
        const int m = d[var];
        if (m == 0) continue;
        MultiDegree key;
        key.reserve(d.size() - 1);
        for (int i = 0; i < (int)d.size(); ++i)
            if (i != var) key.push_back(d[i]);
        Rational rat = c.rat * (2 * m);
        for (int t = 0; t < m - 1; ++t) rat *= -4;
        add_term(r.terms, std::move(key), std::move(rat), c.pi2 + m - 1);
    }
    return r;
}

VolumePolynomial integrate_moment(const VolumePolynomial& p, int var) {
    VolumePolynomial r;
    r.g = p.g;
    r.n = p.n;
    for (const auto& [d, c] : p.terms) {
        MultiDegree key = d;
        key[var] += 1;
        add_term(r.terms, std::move(key), c.rat / (2 * d[var] + 2), c.pi2);
    }
    return r;
}

VolumePolynomial sum(const VolumePolynomial& a, const VolumePolynomial& b) {
    if (a.n != b.n) throw std::invalid_argument("sum: arity mismatch");
    VolumePolynomial r = a;
    for (const auto& [d, c] : b.terms) add_term(r.terms, d, c.rat, c.pi2);
    return r;
}

VolumeRelationReport check_volume_relations(VolumeTable& table, int n_cap, const std::vector<double>& axis) {
    VolumeRelationReport rep;
    const int budget = table.budget();
    const Real four_pi2 = 4 * pi_value() * pi_value();

    std::vector<std::pair<int, int>> cells;
    for (int g = 0; g <= (budget + 3) / 3; ++g)
        for (int n = (g >= 1 ? 1 : 3); n <= n_cap; ++n)
            if (2 * g - 2 + n > 0 && 3 * g + n - 3 <= budget) cells.push_back({g, n});

    // coefficient positivity (hence V(x) >= V(0) termwise for x >= 0)
    for (auto [g, n] : cells) {
        const auto& p = table.get(g, n);
        for (const auto& [d, c] : p.terms)
            if (c.rat <= 0) rep.coefficients_positive = false;
    }

    auto sinh_ratio = [](const Real& t) { return t == 0 ? Real(1) : Real(sinh(t / 2) / (t / 2)); };
    for (auto [g, n] : cells) {
        const auto& p = table.get(g, n);
        const Real v0 = p.at_zero().to_real();
        std::vector<size_t> idx(n, 0);
        while (true) {
            std::vector<Real> x(n);
            Real sum_x = 0, sum_x2 = 0, prod = 1;
            for (int i = 0; i < n; ++i) {
                x[i] = axis[idx[i]];
                sum_x += x[i];
                sum_x2 += x[i] * x[i];
                prod *= sinh_ratio(x[i]);
            }
            const Real vx = p.evaluate(x);
            if (vx > exp(sum_x / 2) * v0 * (1 + Real("1e-60"))) rep.sandwich_upper_ok = false;
            const Real ratio = vx / v0;
            if (ratio > prod * (1 + Real("1e-60"))) rep.sinh_upper_ok = false;
            if (sum_x2 > 0 && g >= 1) {
                // least c with prod * (1 - c * sum x^2 / g) <= ratio
                const Real c = (1 - ratio / prod) * g / sum_x2;
                double& slot = rep.fitted_c[n];
                slot = std::max(slot, static_cast<double>(c));
            }
            int pos = 0;
            while (pos < n && ++idx[pos] == axis.size()) idx[pos++] = 0;
            if (pos == n) break;
        }
    }

    // V_{g,n+4} <= V_{g+1,n+2} wherever both sides are tabled
    for (int g = 0; g <= (budget + 3) / 3; ++g)
        for (int n = 0; n + 4 <= n_cap; ++n) {
            if (!(2 * g - 2 + n + 4 > 0)) continue;
            if (3 * g + n + 1 > budget || 3 * (g + 1) + n - 1 > budget) continue;
            const Real lhs = table.get(g, n + 4).at_zero().to_real();
            const Real rhs = table.get(g + 1, n + 2).at_zero().to_real();
            std::ostringstream line;
            line << "V(" << g << "," << n + 4 << ") = " << static_cast<double>(lhs) << " <= V(" << g + 1
                 << "," << n + 2 << ") = " << static_cast<double>(rhs);
            rep.lines.push_back(line.str());
            if (!(lhs <= rhs)) rep.volume_step_ok = false;
        }

    // ratio trends in g
    auto closed_ok = [&](int g) { return g >= 2 && 3 * g - 2 <= budget; };
    for (int n = 0; n <= n_cap - 1; ++n) {
        std::vector<double> dev;
        for (int g = 1; 3 * g + n + 1 - 3 <= budget; ++g) {
            if (n == 0 && !closed_ok(g)) continue;
            if (n >= 1 && 2 * g - 2 + n <= 0) continue;
            const Real num = table.get(g, n + 1).at_zero().to_real();
            const Real den = table.get(g, n).at_zero().to_real();
            const Real ratio = num / (2 * g * den) / four_pi2;
            dev.push_back(std::abs(static_cast<double>(ratio) - 1.0));
            std::ostringstream line;
            line << "V(" << g << "," << n + 1 << ")/(2g V(" << g << "," << n
                 << ")) / 4pi^2 = " << static_cast<double>(ratio);
            rep.lines.push_back(line.str());
        }
        for (size_t i = 1; i < dev.size(); ++i)
            if (!(dev[i] < dev[i - 1])) rep.ratio_4pi2_trend_ok = false;
    }
    for (int n = 0; n <= n_cap - 2; ++n) {
        std::vector<double> dev;
        for (int g = 2; 3 * g + n - 3 <= budget && 3 * (g - 1) + n + 2 - 3 <= budget; ++g) {
            if (n == 0 && !closed_ok(g)) continue;
            const Real num = table.get(g, n).at_zero().to_real();
            const Real den = table.get(g - 1, n + 2).at_zero().to_real();
            const Real ratio = num / den;
            dev.push_back(std::abs(static_cast<double>(ratio) - 1.0));
            std::ostringstream line;
            line << "V(" << g << "," << n << ")/V(" << g - 1 << "," << n + 2
                 << ") = " << static_cast<double>(ratio);
            rep.lines.push_back(line.str());
        }
        for (size_t i = 1; i < dev.size(); ++i)
            if (!(dev[i] < dev[i - 1])) rep.ratio_one_trend_ok = false;
    }
    return rep;
}

SumAsymptotics sum_asymptotics(VolumeTable& table, int b, int k, Real C, int g, int r) {
    if (!(C < 2 * log(Real(2)))) throw std::invalid_argument("sum_asymptotics requires C < 2 ln 2");
    SumAsymptotics out{0, 0, 0, 0};
    for (int g1 = r + 1; 2 * g1 <= g + 1 - k; ++g1) {
        const int g2 = g + 1 - k - g1;
        const Real v1 = table.get(g1, k).at_zero().to_real();
        const Real v2 = table.get(g2, k).at_zero().to_real();
        Real term = exp(C * g1) * v1 * v2;
        for (int t = 0; t < b; ++t) term *= g1;
        out.lhs += term;
        ++out.term_count;
    }
    out.rhs_scale = table.get(g, 0).at_zero().to_real() / pow(Real(g), 2 * r + k);
    out.ratio = out.term_count ? out.lhs / out.rhs_scale : Real(0);
    return out;
}

void write_table(std::ostream& out, const std::vector<VolumePolynomial>& polys) {
    for (const auto& p : polys) {
        out << "poly " << p.g << " " << p.n << " " << p.terms.size() << "\n";
        for (const auto& [d, c] : p.terms) {
            for (int e : d) out << e << " ";
            out << boost::multiprecision::numerator(c.rat) << " "
                << boost::multiprecision::denominator(c.rat) << " " << c.pi2 << "\n";
        }
    }
}

std::vector<VolumePolynomial> read_table(std::istream& in) {
    std::vector<VolumePolynomial> polys;
    std::string tag;
    while (in >> tag) {
        if (tag != "poly") throw std::runtime_error("volume table: expected 'poly'");
        VolumePolynomial p;
        size_t nterms = 0;
        in >> p.g >> p.n >> nterms;
        for (size_t t = 0; t < nterms; ++t) {
            MultiDegree d(p.n);
            for (int i = 0; i < p.n; ++i) in >> d[i];
            cpp_int num, den;
            int pi2 = 0;
            in >> num >> den >> pi2;
            if (!in) throw std::runtime_error("volume table: truncated term");
            p.terms.emplace(std::move(d), Coef{Rational(num, den), pi2});
        }
        polys.push_back(std::move(p));
    }
    return polys;
}

} // namespace sklab::wp
