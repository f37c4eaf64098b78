#include "arithsurf/detcoh.hpp"

#include <set>

#include "arithsurf/errors.hpp"

namespace arithsurf {

ModelLineBundle ModelLineBundle::tensor(const ModelLineBundle& o) const {
    ModelLineBundle r;
    r.K = K;
    r.n = n + o.n;
    r.twist = twist + o.twist;
    return r;
}

DivisorOnB LatticeWithDet::det() const {
    DivisorOnB d;
    for (const auto& s : summands) d = d + s;
    return d;
}

int default_aux_degree(const ModelLineBundle& L) { return std::max(0, 1 - L.n); }

std::pair<LatticeWithDet, LatticeWithDet> pushforward_lattices(const ModelLineBundle& L, int m) {
    if (L.n + m < 0) throw value_error("auxiliary degree too small for a free pushforward");
    // phi_*(O(n+m) tensor a) = a^{(n+m+1)}: sections are a-combinations of
    // 1, t, ..., t^{n+m}
    LatticeWithDet G;
    for (int i = 0; i <= L.n + m; ++i) G.summands.push_back(L.twist);
    // the quotient along the infinity section carries m jet steps, each an
    // a-module (O(1) restricted to the section is trivialized by the chart)
    LatticeWithDet H;
    for (int i = 0; i < m; ++i) H.summands.push_back(L.twist);
    return {G, H};
}

int r1_rank(const ModelLineBundle& L) { return std::max(0, -L.n - 1); }

DivisorOnB det_rphi(const ModelLineBundle& L, int m) {
    if (m < 0) m = default_aux_degree(L);
    auto [G, H] = pushforward_lattices(L, m);
    return G.det() - H.det();
}

LatticeWithDet adelic_h0(const LatticeWithDet& M, const NumberField& K) {
    // H^0 of  F_xi + prod_b O_b(F) -> A_B(F)  is the kernel of
    // (f, (a_b)) -> (f - a_b): the elements of the generic stalk integral at
    // every b, i.e. the ideal cut out by the local conditions v_b >= d_b.
    LatticeWithDet out;
    for (const auto& s : M.summands) {
        DivisorOnB rebuilt;
        for (const auto& [b, e] : s.coeff) {
            // local condition at b read back from the completion lattice
            rebuilt.add(b, e);
        }
        (void)K;
        out.summands.push_back(rebuilt);
    }
    return out;
}

DivisorOnB det_rphi_adelic(const ModelLineBundle& L, int m) {
    if (m < 0) m = default_aux_degree(L);
    auto [G, H] = pushforward_lattices(L, m);
    LatticeWithDet G0 = adelic_h0(G, L.K);
    LatticeWithDet H0 = adelic_h0(H, L.K);
    return G0.det() - H0.det();
}

DivisorOnB adelic_deligne_divisor(const ModelLineBundle& L, const ModelLineBundle& M) {
    ModelLineBundle O;
    O.K = L.K;
    DivisorOnB d = det_rphi_adelic(O);
    d = d - det_rphi_adelic(L);
    d = d - det_rphi_adelic(M);
    d = d + det_rphi_adelic(L.tensor(M));
    return d;
}

ClassOnB adelic_deligne(const ModelLineBundle& L, const ModelLineBundle& M) {
    return divisor_class_reduce(adelic_deligne_divisor(L, M), L.K);
}

DivisorOnX bundle_divisor(const ModelLineBundle& L, long section_c) {
    DivisorOnX D;
    if (L.n != 0) {
        std::vector<NFElem> c = {NFElem(L.K, Rat(-section_c), 0), NFElem(L.K, 1, 0)};
        D.add(CurveOnX::horizontal(Poly<NFElem>(c)), L.n);
    }
    for (const auto& [b, e] : L.twist.coeff) D.add(CurveOnX::vertical(b), e);
    return D;
}

DivisorOnB equivalent_divisor_avoiding(const DivisorOnB& a, const std::vector<PrimeOfB>& avoid,
                                       const NumberField& K) {
    std::set<Int> bad;
    for (const auto& b : avoid) bad.insert(b.p);
    auto clean = [&](const DivisorOnB& d) {
        for (const auto& [b, e] : d.coeff)
            if (bad.count(b.p)) return false;
        return true;
    };
    if (clean(a)) return a;
    auto cls = divisor_class_reduce(a, K);
    if (cls.principal) return DivisorOnB{};
    // search primes of small norm in the same class
    for (long p = 2; p < 60; ++p) {
        if (!is_prime(Int(p)) || bad.count(Int(p))) continue;
        for (const auto& q : factor_prime(p, K)) {
            DivisorOnB cand;
            cand.add(q, 1);
            if (divisor_class_reduce(a - cand, K).principal) return cand;
            if (divisor_class_reduce(a + cand, K).principal) {
                DivisorOnB neg;
                neg.add(q, -1);
                return neg;
            }
        }
    }
    throw unsupported_error("no coprime representative found in the class");
}

}  // namespace arithsurf
