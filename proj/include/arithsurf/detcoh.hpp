#pragma once

#include "arithsurf/surface.hpp"

namespace arithsurf {

// O(n) twisted by the pullback of a fractional ideal of O_K.
struct ModelLineBundle {
    NumberField K;
    int n = 0;
    DivisorOnB twist;  // exponent vector of the ideal

    ModelLineBundle tensor(const ModelLineBundle& o) const;
};

// Finite free O_K-lattice presented as a direct sum of fractional ideals,
// carrying its determinant.
struct LatticeWithDet {
    std::vector<DivisorOnB> summands;

    int rank() const { return static_cast<int>(summands.size()); }
    DivisorOnB det() const;
};

// auxiliary divisor degree m used to make both pushforwards locally free
int default_aux_degree(const ModelLineBundle& L);

// (phi_* L(m * infinity), phi_*(L(m * infinity)/L))
std::pair<LatticeWithDet, LatticeWithDet> pushforward_lattices(const ModelLineBundle& L, int m);

// rank of R^1 phi_* L on the model family
int r1_rank(const ModelLineBundle& L);

// det R phi_*(L) as a fractional ideal (divisor on B); independent of the
// auxiliary degree
DivisorOnB det_rphi(const ModelLineBundle& L, int m = -1);

// H^0 of the one-dimensional adelic complex of the sheaf attached to M:
// the intersection of the generic stalk with the product of the local
// lattices, reassembled prime by prime from the local conditions.
LatticeWithDet adelic_h0(const LatticeWithDet& M, const NumberField& K);

// adelic determinant of cohomology (through adelic_h0 lattices)
DivisorOnB det_rphi_adelic(const ModelLineBundle& L, int m = -1);

// adelic Deligne pairing
DivisorOnB adelic_deligne_divisor(const ModelLineBundle& L, const ModelLineBundle& M);
ClassOnB adelic_deligne(const ModelLineBundle& L, const ModelLineBundle& M);

// a divisor representative of the bundle: n * (t = c) + twist fibers
DivisorOnX bundle_divisor(const ModelLineBundle& L, long section_c);

// an equivalent divisor on B whose support avoids the given primes
DivisorOnB equivalent_divisor_avoiding(const DivisorOnB& a, const std::vector<PrimeOfB>& avoid,
                                       const NumberField& K);

}  // namespace arithsurf
