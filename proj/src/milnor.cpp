#include "arithsurf/milnor.hpp"

#include <algorithm>

#include "arithsurf/errors.hpp"

namespace arithsurf {

FqElem tame_symbol(const NFElem& a, const NFElem& b, const PrimeOfB& p, const FqCtxPtr& k) {
    if (a.is_zero() || b.is_zero()) throw value_error("tame symbol of zero");
    long va = valuation_at(a, p), vb = valuation_at(b, p);
    NFElem u = a.pow(vb) * b.pow(-va);
    FqElem r = residue_at(u, p, k);
    if ((va * vb) % 2 != 0) r = k->zero() - r;
    return r;
}

int ord_at(const FqRational& f, const Poly<FqElem>& m) {
    auto ord_poly = [&](Poly<FqElem> g) {
        if (g.is_zero()) throw value_error("order of zero");
        int v = 0;
        for (;;) {
            auto [q, r] = divmod(g, m);
            if (!r.is_zero()) break;
            g = q;
            ++v;
        }
        return v;
    };
    return ord_poly(f.num) - ord_poly(f.den);
}

FqElem poly_class_in_ext(const Poly<FqElem>& r, const Poly<FqElem>& m, const FqCtxPtr& kext) {
    if (m.deg() == 1) {
        // evaluation at the root of the linear modulus
        FqElem root = FqElem() - m[0] * coeff_inverse(m.lc());
        return r.eval(root);
    }
    Poly<FqElem> red = divmod(r, m).second;
    FqElem out = kext->zero();
    if (red.is_zero()) return out;
    FqElem gen = kext->gen();
    FqElem power = kext->one();
    for (int i = 0; i <= red.deg(); ++i) {
        if (!red[i].is_zero()) out = out + kext->embed_base(red[i]) * power;
        power = power * gen;
    }
    return out;
}

namespace {

// strip all m-powers from a polynomial, returning (cofactor, order)
std::pair<Poly<FqElem>, int> strip_m(Poly<FqElem> g, const Poly<FqElem>& m) {
    int v = 0;
    for (;;) {
        auto [q, r] = divmod(g, m);
        if (!r.is_zero()) break;
        g = q;
        ++v;
    }
    return {g, v};
}

}  // namespace

FqElem tame_symbol_fq(const FqRational& a, const FqRational& b, const Poly<FqElem>& m,
                      const FqCtxPtr& kext) {
    auto [an, van] = strip_m(a.num, m);
    auto [ad, vad] = strip_m(a.den, m);
    auto [bn, vbn] = strip_m(b.num, m);
    auto [bd, vbd] = strip_m(b.den, m);
    long va = van - vad, vb = vbn - vbd;
    // (a,b) = (-1)^{va vb} a0^{vb} b0^{-va} evaluated in kext
    FqElem va0 = poly_class_in_ext(an, m, kext) * poly_class_in_ext(ad, m, kext).inverse();
    FqElem vb0 = poly_class_in_ext(bn, m, kext) * poly_class_in_ext(bd, m, kext).inverse();
    FqElem out = va0.pow(vb) * vb0.pow(-va);
    if ((va * vb) % 2 != 0) out = kext->zero() - out;
    return out;
}

// ---------------------------------------------------------------------------
// factored elements and the Kato residue

FactoredLocalElement FactoredLocalElement::one(const LocalRingPtr& R) {
    FactoredLocalElement f;
    f.R = R;
    f.constant = LocalNum(0, R->one());
    return f;
}

FactoredLocalElement FactoredLocalElement::times_atom(const SymbolAtom& a, long e) const {
    FactoredLocalElement f = *this;
    if (e == 0) return f;
    for (auto& [atom, exp] : f.atoms) {
        if (atom.poly == a.poly) {
            exp += e;
            return f;
        }
    }
    f.atoms.push_back({a, e});
    return f;
}

FactoredLocalElement FactoredLocalElement::times_tail(const Poly<LocalElem>& t, long e) const {
    FactoredLocalElement f = *this;
    if (e == 0 || t.deg() == 0) {
        if (t.deg() == 0 && e != 0) f.constant = f.constant * R->unit_split(t[0]).pow(e);
        return f;
    }
    if (t.coeff(0).val_opt() != 0) throw value_error("tail without unit constant term");
    f.tails.push_back({t, e});
    return f;
}

FactoredLocalElement FactoredLocalElement::times_const(const LocalNum& c) const {
    FactoredLocalElement f = *this;
    f.constant = f.constant * c;
    return f;
}

FactoredLocalElement FactoredLocalElement::operator*(const FactoredLocalElement& o) const {
    FactoredLocalElement f = *this;
    f.constant = f.constant * o.constant;
    for (const auto& [a, e] : o.atoms) f = f.times_atom(a, e);
    for (const auto& [t, e] : o.tails) f = f.times_tail(t, e);
    return f;
}

namespace {

struct JointAtom {
    const SymbolAtom* atom;
    long ef = 0, eg = 0;
};

// Res(V, .) of everything in f except V's own power; multiplicative over
// the factored form.
LocalNum res_against(const Poly<LocalElem>& V, const FactoredLocalElement& f,
                     const SymbolAtom* skip) {
    const LocalRingPtr& R = f.R;
    int d = V.deg();
    LocalNum out = f.constant.pow(d);
    for (const auto& [a, e] : f.atoms) {
        if (skip && a.poly == skip->poly) continue;
        LocalElem r = resultant_monic(V, a.poly);
        out = out * R->unit_split(r).pow(e);
    }
    for (const auto& [t, e] : f.tails) {
        LocalElem r = resultant_monic(V, t);
        out = out * R->unit_split(r).pow(e);
    }
    return out;
}

}  // namespace

LocalNum kato_residue(const FactoredLocalElement& f, const FactoredLocalElement& g) {
    if (!f.R || !g.R || !f.R->same_as(*g.R)) throw value_error("factored elements over different rings");
    const LocalRingPtr& R = f.R;
    // joint atom list
    std::vector<JointAtom> joint;
    for (const auto& [a, e] : f.atoms) {
        JointAtom j;
        j.atom = &a;
        j.ef = e;
        joint.push_back(j);
    }
    for (const auto& [a, e] : g.atoms) {
        bool found = false;
        for (auto& j : joint)
            if (j.atom->poly == a.poly) {
                j.eg = e;
                found = true;
                break;
            }
        if (!found) {
            JointAtom j;
            j.atom = &a;
            j.eg = e;
            joint.push_back(j);
        }
    }
    LocalNum out(0, R->one());
    for (const auto& j : joint) {
        const Poly<LocalElem>& V = j.atom->poly;
        int d = V.deg();
        // (-1)^{ef * eg * d} * Res(V, f/V^ef)^eg * Res(V, g/V^eg)^{-ef}
        if ((j.ef * j.eg * d) % 2 != 0) out = out * LocalNum(0, R->zero() - R->one());
        if (j.eg != 0) out = out * res_against(V, f, j.atom).pow(j.eg);
        if (j.ef != 0) out = out * res_against(V, g, j.atom).pow(-j.ef);
    }
    return out;
}

LocalNum boundary_map(const FactoredLocalElement& f, const FactoredLocalElement& g) {
    return kato_residue(f, g).inverse();
}

}  // namespace arithsurf
