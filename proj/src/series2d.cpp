#include "arithsurf/series2d.hpp"

#include <algorithm>
#include <sstream>

#include "arithsurf/errors.hpp"

namespace arithsurf {

namespace {

constexpr int kMaxWindow = 400;

int add_sat(int a, int b) {
    long s = static_cast<long>(a) + b;
    if (s >= DoubleSeries::kInfinity) return DoubleSeries::kInfinity;
    return static_cast<int>(s);
}

}  // namespace

int ResidueLaurent::leading_exponent() const {
    if (coeff.empty()) throw value_error("leading exponent of zero");
    return coeff.begin()->first;
}

ResidueLaurent ResidueLaurent::operator*(const ResidueLaurent& o) const {
    ResidueLaurent r;
    r.k = k ? k : o.k;
    for (const auto& [i, a] : coeff)
        for (const auto& [j, b] : o.coeff) {
            FqElem prod = a * b;
            auto it = r.coeff.find(i + j);
            if (it == r.coeff.end()) {
                if (!prod.is_zero()) r.coeff[i + j] = prod;
            } else {
                FqElem s = it->second + prod;
                if (s.is_zero())
                    r.coeff.erase(it);
                else
                    it->second = s;
            }
        }
    return r;
}

bool ResidueLaurent::operator==(const ResidueLaurent& o) const {
    if (coeff.size() != o.coeff.size()) return false;
    for (const auto& [j, a] : coeff) {
        auto it = o.coeff.find(j);
        if (it == o.coeff.end() || !(it->second == a)) return false;
    }
    return true;
}

std::string ResidueLaurent::str() const {
    if (coeff.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, a] : coeff) {
        if (!first) os << " + ";
        os << "(" << a.str() << ")t^" << j;
        first = false;
    }
    return os.str();
}

DoubleSeries DoubleSeries::from_terms(const LocalRingPtr& R,
                                      const std::vector<std::pair<int, NFElem>>& terms,
                                      int tail_floor) {
    DoubleSeries s(R);
    s.tail_floor = tail_floor;
    for (const auto& [j, c] : terms) {
        if (c.is_zero()) continue;
        s.set_coeff(j, R->embed(c));
    }
    if (!s.coeffs.empty()) {
        s.jmin = s.coeffs.begin()->first;
        s.jmax = s.coeffs.rbegin()->first;
    }
    return s;
}

void DoubleSeries::set_coeff(int j, const LocalNum& v) {
    coeffs[j] = v;
    if (coeffs.size() == 1) {
        jmin = jmax = j;
    } else {
        jmin = std::min(jmin, j);
        jmax = std::max(jmax, j);
    }
    if (jmax - jmin > kMaxWindow) throw value_error("window overflow");
}

DoubleSeries DoubleSeries::operator+(const DoubleSeries& o) const {
    if (!R) return o;
    if (!o.R) return *this;
    if (!R->same_as(*o.R)) throw value_error("series over different completions");
    DoubleSeries r(R);
    r.tail_floor = std::min(tail_floor, o.tail_floor);
    r.error_floor = std::min(error_floor, o.error_floor);
    for (const auto& [j, a] : coeffs) {
        auto it = o.coeffs.find(j);
        if (it == o.coeffs.end()) {
            r.set_coeff(j, a);
            continue;
        }
        int base = std::min(a.v, it->second.v);
        LocalElem z = R->pi_pow(a.v - base) * a.u + R->pi_pow(it->second.v - base) * it->second.u;
        if (auto v = z.val_opt()) {
            LocalNum n = R->unit_split(z);
            n.v += base;
            r.set_coeff(j, n);
        } else {
            // cancelled below precision: the true coefficient still has
            // valuation at least base + (trusted digits)
            r.error_floor = std::min(r.error_floor, base + R->e * z.known);
        }
    }
    for (const auto& [j, b] : o.coeffs)
        if (!coeffs.count(j)) r.set_coeff(j, b);
    return r;
}

DoubleSeries DoubleSeries::operator*(const DoubleSeries& o) const {
    if (!R || !o.R) throw value_error("multiplying an unattached series");
    if (!R->same_as(*o.R)) throw value_error("series over different completions");
    DoubleSeries r(R);
    auto lower_bound_val = [](const DoubleSeries& s) {
        int m = std::min(s.tail_floor, s.error_floor);
        for (const auto& [j, a] : s.coeffs) m = std::min(m, a.v);
        return m;
    };
    int v1 = lower_bound_val(*this), v2 = lower_bound_val(o);
    r.tail_floor = std::min(add_sat(tail_floor, v2), add_sat(o.tail_floor, v1));
    r.error_floor = std::min({add_sat(error_floor, v2), add_sat(o.error_floor, v1),
                              add_sat(tail_floor, v2), add_sat(o.tail_floor, v1)});
    if (coeffs.empty() || o.coeffs.empty()) return r;
    // Cauchy product, accumulated at the uniform valuation shift v1+v2 so
    // every term is integral
    int base = v1 + v2;
    std::map<int, LocalElem> acc;
    for (const auto& [i, a] : coeffs) {
        for (const auto& [k, b] : o.coeffs) {
            LocalNum prod = a * b;
            LocalElem term = R->pi_pow(prod.v - base) * prod.u;
            auto it = acc.find(i + k);
            if (it == acc.end())
                acc.emplace(i + k, term);
            else
                it->second = it->second + term;
        }
    }
    for (const auto& [j, z] : acc) {
        if (auto v = z.val_opt()) {
            LocalNum n = R->unit_split(z);
            n.v += base;
            r.set_coeff(j, n);
        } else {
            r.error_floor = std::min(r.error_floor, base + R->e * z.known);
        }
    }
    return r;
}

int DoubleSeries::val() const {
    int m = kInfinity;
    for (const auto& [j, a] : coeffs) m = std::min(m, a.v);
    if (m >= std::min(tail_floor, error_floor))
        throw precision_error("indistinguishable from zero at precision");
    return m;
}

ResidueLaurent DoubleSeries::reduce() const {
    if (val() != 0) throw value_error("series_reduce needs valuation zero");
    ResidueLaurent out;
    out.k = R->kres;
    for (const auto& [j, a] : coeffs) {
        if (a.v == 0) {
            FqElem r = a.u.residue();
            if (!r.is_zero()) out.coeff[j] = r;
        }
    }
    return out;
}

int DoubleSeries::winding_number() const {
    int v = val();
    for (const auto& [j, a] : coeffs)
        if (a.v == v) return j;
    throw precision_error("winding number undetermined");
}

std::string DoubleSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, a] : coeffs) {
        if (!first) os << " + ";
        os << a.str() << "*t^" << j;
        first = false;
    }
    if (first) os << "0";
    if (tail_floor < kInfinity) os << " + O(v>=" << tail_floor << " beyond t^" << jmax << ")";
    return os.str();
}

}  // namespace arithsurf
