#include "arithsurf/localring.hpp"

#include <algorithm>
#include <sstream>

#include "arithsurf/errors.hpp"

namespace arithsurf {

namespace {

// base-field element as a coordinate pair (x + y*omega), y unused when
// base_dim == 1
struct Chunk {
    Int x, y;
};

Chunk chunk_add(const LocalRing& R, const Chunk& a, const Chunk& b) {
    return {(a.x + b.x) % R.pM, (a.y + b.y) % R.pM};
}

Chunk chunk_sub(const LocalRing& R, const Chunk& a, const Chunk& b) {
    return {((a.x - b.x) % R.pM + R.pM) % R.pM, ((a.y - b.y) % R.pM + R.pM) % R.pM};
}

Chunk chunk_mul(const LocalRing& R, const Chunk& a, const Chunk& b) {
    if (R.base_dim == 1) return {a.x * b.x % R.pM, 0};
    // (x1 + y1 w)(x2 + y2 w), w^2 = -lin*w - con
    Int cross = a.y * b.y % R.pM;
    Int x = (a.x * b.x - cross * R.min_con) % R.pM;
    Int y = (a.x * b.y + a.y * b.x - cross * R.min_lin) % R.pM;
    return {(x + R.pM) % R.pM, (y + R.pM) % R.pM};
}

std::vector<Chunk> to_chunks(const LocalRing& R, const std::vector<Int>& c) {
    std::vector<Chunk> out(R.ext_deg);
    for (int j = 0; j < R.ext_deg; ++j) {
        out[j].x = c[R.base_dim * j];
        out[j].y = R.base_dim == 2 ? c[R.base_dim * j + 1] : Int(0);
    }
    return out;
}

std::vector<Int> from_chunks(const LocalRing& R, const std::vector<Chunk>& v) {
    std::vector<Int> out(R.dim, 0);
    for (int j = 0; j < R.ext_deg && j < static_cast<int>(v.size()); ++j) {
        out[R.base_dim * j] = ((v[j].x % R.pM) + R.pM) % R.pM;
        if (R.base_dim == 2) out[R.base_dim * j + 1] = ((v[j].y % R.pM) + R.pM) % R.pM;
    }
    return out;
}

// multiply chunk polynomials and reduce modulo the (monic) extension
// minimal polynomial
std::vector<Chunk> chunk_poly_mulmod(const LocalRing& R, const std::vector<Chunk>& a,
                                     const std::vector<Chunk>& b) {
    int n = R.ext_deg;
    std::vector<Chunk> prod(2 * n - 1, Chunk{0, 0});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            prod[i + j] = chunk_add(R, prod[i + j], chunk_mul(R, a[i], b[j]));
    // reduce from the top: T^n = -(ext_min[0] + ... + ext_min[n-1] T^{n-1})
    for (int k = 2 * n - 2; k >= n; --k) {
        Chunk top = prod[k];
        prod[k] = {0, 0};
        for (int i = 0; i < n; ++i) {
            Chunk m{R.ext_min[i][0], R.base_dim == 2 ? R.ext_min[i][1] : Int(0)};
            prod[k - n + i] = chunk_sub(R, prod[k - n + i], chunk_mul(R, top, m));
        }
    }
    prod.resize(n);
    return prod;
}

}  // namespace

LocalElem::LocalElem(LocalRingPtr ring, std::vector<Int> coords, int known_digits)
    : R(std::move(ring)), c(std::move(coords)), known(known_digits) {
    if (static_cast<int>(c.size()) != R->dim) throw value_error("local coordinate size mismatch");
    for (auto& x : c) x = ((x % R->pM) + R->pM) % R->pM;
    if (known > R->M) known = R->M;
    if (known <= 0) throw precision_error("local element with no trusted digits");
}

LocalElem coeff_one(const LocalElem& x) {
    if (!x.R) throw value_error("coeff_one of unattached zero");
    return x.R->one();
}

bool LocalElem::stored_zero() const {
    if (!R) return true;
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

namespace {

const LocalRing& common_ring(const LocalElem& a, const LocalElem& b) {
    if (!a.R && !b.R) throw value_error("operation on unattached local zeros");
    if (a.R && b.R && !a.R->same_as(*b.R)) throw value_error("mixed local rings");
    return a.R ? *a.R : *b.R;
}

LocalRingPtr ring_of(const LocalElem& a, const LocalElem& b) { return a.R ? a.R : b.R; }

}  // namespace

LocalElem LocalElem::operator+(const LocalElem& o) const {
    if (!R && !o.R) return LocalElem();
    const LocalRing& Rg = common_ring(*this, o);
    if (!R) return o;
    if (!o.R) return *this;
    std::vector<Int> r(Rg.dim);
    for (int i = 0; i < Rg.dim; ++i) r[i] = (c[i] + o.c[i]) % Rg.pM;
    return LocalElem(ring_of(*this, o), std::move(r), std::min(known, o.known));
}

LocalElem LocalElem::operator-(const LocalElem& o) const {
    if (!R && !o.R) return LocalElem();
    const LocalRing& Rg = common_ring(*this, o);
    if (!o.R) return *this;
    std::vector<Int> r(Rg.dim);
    for (int i = 0; i < Rg.dim; ++i) r[i] = ((R ? c[i] : Int(0)) - o.c[i]) % Rg.pM;
    return LocalElem(ring_of(*this, o), std::move(r), R ? std::min(known, o.known) : o.known);
}

LocalElem LocalElem::operator*(const LocalElem& o) const {
    if (!R && !o.R) return LocalElem();
    const LocalRing& Rg = common_ring(*this, o);
    if (!R || !o.R) return Rg.zero();
    int kn = std::min(known, o.known);
    if (Rg.ext_deg == 1) {
        Chunk r = chunk_mul(Rg, to_chunks(Rg, c)[0], to_chunks(Rg, o.c)[0]);
        return LocalElem(R, from_chunks(Rg, {r}), kn);
    }
    auto r = chunk_poly_mulmod(Rg, to_chunks(Rg, c), to_chunks(Rg, o.c));
    return LocalElem(R, from_chunks(Rg, r), kn);
}

std::optional<int> LocalElem::val_opt() const {
    if (!R) return std::nullopt;
    int a = R->M + 1;
    for (const auto& x : c)
        if (x != 0) a = std::min(a, padic_val(x, R->p));
    if (a >= known) return std::nullopt;  // indistinguishable from zero
    if (R->e == 1) return a;
    // ramified quadratic: strip p^a and test the residue
    LocalElem w = div_p(a);
    return w.residue().is_zero() ? 2 * a + 1 : 2 * a;
}

int LocalElem::val() const {
    auto v = val_opt();
    if (!v) throw precision_error("indistinguishable from zero at precision");
    return *v;
}

LocalElem LocalElem::div_p(int k) const {
    if (k == 0) return *this;
    if (!R) throw value_error("div_p of unattached zero");
    if (k < 0) throw value_error("div_p: negative power");
    Int pk = pow_int(R->p, k);
    std::vector<Int> r(R->dim);
    for (int i = 0; i < R->dim; ++i) {
        Int lo = c[i] % pk;
        if (lo != 0) {
            if (k >= known) throw precision_error("division by p beyond known digits");
            throw value_error("inexact division by p");
        }
        r[i] = c[i] / pk;
    }
    if (known - k <= 0) throw precision_error("precision exhausted in div_p");
    return LocalElem(R, std::move(r), known - k);
}

bool LocalElem::negligible(int margin) const {
    if (!R || stored_zero()) return true;
    auto v = val_opt();
    if (!v) return true;
    return *v >= R->e * (R->M - margin);
}

FqElem LocalElem::residue() const {
    if (!R) throw value_error("residue of unattached zero");
    FqElem out = R->kres->zero();
    for (int i = 0; i < R->dim; ++i) {
        Int ci = c[i] % R->p;
        if (ci == 0) continue;
        out = out + R->basis_residues()[i] * R->kres->from_int(ci);
    }
    return out;
}

LocalElem LocalElem::inverse() const {
    if (!R) throw value_error("inverse of zero");
    const LocalRing& Rg = *R;
    if (val() != 0) throw value_error("inverse of non-unit local element");
    int n = Rg.dim;
    // columns of multiplication-by-this in the flat basis
    std::vector<std::vector<Int>> A(n, std::vector<Int>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<Int> bas(n, 0);
        bas[j] = 1;
        LocalElem bj(R, std::move(bas), Rg.M);
        LocalElem col = *this * bj;
        for (int i = 0; i < n; ++i) A[i][j] = col.c[i];
    }
    std::vector<Int> rhs(n, 0);
    rhs[0] = 1;
    // Gaussian elimination mod p^M; pivots are units for a unit element
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int row = col; row < n; ++row)
            if (A[row][col] % Rg.p != 0) {
                piv = row;
                break;
            }
        if (piv < 0) throw value_error("singular multiplication matrix for a unit (internal)");
        std::swap(A[piv], A[col]);
        std::swap(rhs[piv], rhs[col]);
        Int inv = inv_mod(A[col][col], Rg.pM);
        for (int j = col; j < n; ++j) A[col][j] = A[col][j] * inv % Rg.pM;
        rhs[col] = rhs[col] * inv % Rg.pM;
        for (int row = 0; row < n; ++row) {
            if (row == col || A[row][col] == 0) continue;
            Int fac = A[row][col];
            for (int j = col; j < n; ++j)
                A[row][j] = ((A[row][j] - fac * A[col][j]) % Rg.pM + Rg.pM) % Rg.pM;
            rhs[row] = ((rhs[row] - fac * rhs[col]) % Rg.pM + Rg.pM) % Rg.pM;
        }
    }
    return LocalElem(R, std::move(rhs), known);
}

LocalElem LocalElem::pow(long e) const {
    if (!R) throw value_error("pow of unattached zero");
    LocalElem base_val = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? -e : e;
    LocalElem r = R->one();
    while (n) {
        if (n & 1) r = r * base_val;
        base_val = base_val * base_val;
        n >>= 1;
    }
    return r;
}

std::string LocalElem::str() const {
    if (!R) return "0";
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < R->dim; ++i) {
        if (i) os << ",";
        os << c[i].get_str();
    }
    os << "]~" << known;
    return os.str();
}

LocalNum LocalNum::pow(long e) const {
    return {static_cast<int>(v * e), u.pow(e)};
}

LocalNum LocalNum::operator+(const LocalNum& o) const {
    const LocalRing& Rg = *u.R;
    int vm = std::min(v, o.v);
    LocalElem z = Rg.pi_pow(v - vm) * u + Rg.pi_pow(o.v - vm) * o.u;
    LocalNum s = Rg.unit_split(z);
    s.v += vm;
    return s;
}

bool LocalNum::is_one_to_precision() const {
    if (v != 0) return false;
    LocalElem d = u - u.R->one();
    return d.stored_zero() || !d.val_opt();
}

std::string LocalNum::str() const {
    std::ostringstream os;
    os << "pi^" << v << "*" << u.str();
    return os.str();
}

// ---------------------------------------------------------------------------
// ring construction

const std::vector<FqElem>& LocalRing::basis_residues() const {
    return basis_res_;
}

LocalRingPtr LocalRing::completion(const PrimeOfB& b, int M) {
    auto R = std::make_shared<LocalRing>();
    R->b = b;
    R->p = b.p;
    R->M = M;
    R->pM = pow_int(b.p, M);
    R->e = b.e;
    R->base_dim = (b.split == PrimeOfB::Split::inert || b.split == PrimeOfB::Split::ramified) ? 2 : 1;
    R->ext_deg = 1;
    R->dim = R->base_dim;
    b.field.omega_minpoly(R->min_lin, R->min_con);
    if (b.field.is_rational()) {
        R->min_lin = 0;
        R->min_con = 0;
    }
    R->omega_root = 0;
    if (b.split == PrimeOfB::Split::split) {
        // Hensel-lift the root of the omega minimal polynomial
        Int r = b.root;
        int t = 1;
        while (t < M) {
            t = std::min(2 * t, M);
            Int pt = pow_int(b.p, t);
            Int fr = (r * r + R->min_lin * r + R->min_con) % pt;
            Int dfr = (2 * r + R->min_lin) % pt;
            r = ((r - fr * inv_mod(((dfr % pt) + pt) % pt, pt)) % pt + pt) % pt;
        }
        R->omega_root = r;
    } else if (b.split == PrimeOfB::Split::ramified) {
        R->omega_root = b.root;  // residue double root, used by the residue map
    }
    R->kb = residue_field(b);
    R->kres = R->kb;
    // residues of the basis
    if (R->base_dim == 1) {
        R->basis_res_ = {R->kres->one()};
    } else if (b.split == PrimeOfB::Split::inert) {
        R->basis_res_ = {R->kres->one(), R->kres->gen()};
    } else {
        R->basis_res_ = {R->kres->one(), R->kres->from_int(R->omega_root)};
    }
    return R;
}

LocalRingPtr LocalRing::unramified_extension(const LocalRingPtr& base, const Poly<FqElem>& rpoly) {
    if (base->ext_deg != 1) throw value_error("extension must sit on a completion");
    if (rpoly.deg() == 1) return base;
    auto R = std::make_shared<LocalRing>(*base);
    R->base = base;
    R->ext_deg = rpoly.deg();
    R->dim = R->base_dim * R->ext_deg;
    R->ext_residue_minpoly = rpoly;
    R->kres = FqCtx::extension(base->kb, rpoly);
    // lift the residue minimal polynomial coefficientwise
    R->ext_min.assign(R->ext_deg, std::vector<Int>(R->base_dim, 0));
    for (int i = 0; i < R->ext_deg; ++i) {
        LocalElem lifted = base->lift_residue(rpoly.coeff(i));
        for (int k = 0; k < R->base_dim; ++k) R->ext_min[i][k] = lifted.c[k];
    }
    // basis residues: omega^i * psi^j
    R->basis_res_.clear();
    FqElem psibar = R->kres->gen();
    std::vector<FqElem> base_res;
    for (const FqElem& br : base->basis_residues()) base_res.push_back(R->kres->embed_base(br));
    FqElem pj = R->kres->one();
    for (int j = 0; j < R->ext_deg; ++j) {
        for (int i = 0; i < R->base_dim; ++i) R->basis_res_.push_back(base_res[i] * pj);
        pj = pj * psibar;
    }
    return R;
}

LocalElem LocalRing::zero() const {
    return LocalElem(shared_from_this(), std::vector<Int>(dim, 0), M);
}

LocalElem LocalRing::one() const { return from_int(1); }

LocalElem LocalRing::from_int(const Int& n) const {
    std::vector<Int> v(dim, 0);
    v[0] = ((n % pM) + pM) % pM;
    return LocalElem(shared_from_this(), std::move(v), M);
}

LocalElem LocalRing::omega() const {
    std::vector<Int> v(dim, 0);
    if (base_dim == 2)
        v[1] = 1;
    else
        v[0] = omega_root;
    return LocalElem(shared_from_this(), std::move(v), M);
}

LocalElem LocalRing::psi() const {
    if (ext_deg == 1) throw value_error("no extension generator");
    std::vector<Int> v(dim, 0);
    v[base_dim] = 1;
    return LocalElem(shared_from_this(), std::move(v), M);
}

LocalElem LocalRing::uniformizer() const {
    if (e == 1) return from_int(p);
    return embed_integral(b.second_gen);
}

LocalElem LocalRing::pi_pow(int k) const {
    if (k < 0) throw value_error("pi_pow: negative exponent");
    return uniformizer().pow(k);
}

LocalElem LocalRing::embed_integral(const NFElem& x) const {
    if (x.is_zero()) return zero();
    Int D = lcm(Int(x.a.get_den()), Int(x.b.get_den()));
    int alpha = padic_val(D, p);
    Int Dp = D / pow_int(p, alpha);
    Int wa = Int(x.a * D), wb = Int(x.b * D);
    std::vector<Int> v(dim, 0);
    if (base_dim == 1) {
        v[0] = ((wa + wb * omega_root) % pM + pM) % pM;
    } else {
        v[0] = ((wa % pM) + pM) % pM;
        v[1] = ((wb % pM) + pM) % pM;
    }
    LocalElem img(shared_from_this(), std::move(v), M);
    if (alpha > 0) img = img.div_p(alpha);
    if (Dp != 1) img = img * from_int(Dp).inverse();
    return img;
}

LocalNum LocalRing::embed(const NFElem& x) const {
    if (x.is_zero()) throw value_error("embedding zero as a unit-power");
    int v = valuation_at(x, b);
    NFElem uglob = x * b.uniformizer().pow(-v);
    LocalElem u = embed_integral(uglob);
    if (v != 0) {
        // second_gen embeds as pi * w0 for a unit w0
        LocalNum pn = unit_split(embed_integral(b.second_gen));
        if (pn.v != 1) throw value_error("uniformizer embedding has wrong valuation (internal)");
        u = u * pn.u.pow(v);
    }
    return LocalNum(v, std::move(u));
}

LocalNum LocalRing::unit_split(const LocalElem& z) const {
    int v = z.val();
    if (e == 1) return LocalNum(v, z.div_p(v));
    int a = v / 2, r = v % 2;
    LocalElem pi = uniformizer();
    LocalElem u0 = (pi * pi).div_p(1);  // pi^2 = p * u0
    if (r == 0) return LocalNum(v, z.div_p(a) * u0.inverse().pow(a));
    LocalElem u = (z * pi).div_p(a + 1) * u0.inverse().pow(a + 1);
    return LocalNum(v, std::move(u));
}

LocalElem LocalRing::lift_residue(const FqElem& a) const {
    std::vector<Int> v(dim, 0);
    if (!a.is_zero()) {
        if (!a.ctx->same_as(*kres)) throw value_error("lift_residue: wrong residue field");
        int kbd = kb->abs_deg;
        for (int j = 0; j < ext_deg; ++j)
            for (int i = 0; i < kbd; ++i) v[base_dim * j + i] = a.coords[kbd * j + i];
    }
    return LocalElem(shared_from_this(), std::move(v), M);
}

namespace {

// Laplace determinant over any exact-ish element type.
template <class E>
E det_laplace(const std::vector<std::vector<E>>& m, const E& zero) {
    size_t n = m.size();
    if (n == 0) throw value_error("empty determinant");
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    E acc = zero;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<E>> sub(n - 1, std::vector<E>(n - 1, zero));
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c2 = 0; c2 < n; ++c2) {
                if (c2 == j) continue;
                sub[r - 1][cc++] = m[r][c2];
            }
        }
        E term = m[0][j] * det_laplace(sub, zero);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

LocalElem LocalRing::norm_to_base(const LocalElem& z) const {
    if (ext_deg == 1) return z;
    const LocalRingPtr& B = base;
    // multiplication-by-z matrix in the psi-power basis, entries in the base
    std::vector<std::vector<LocalElem>> m(ext_deg, std::vector<LocalElem>(ext_deg, B->zero()));
    for (int j = 0; j < ext_deg; ++j) {
        std::vector<Int> bas(dim, 0);
        bas[base_dim * j] = 1;
        LocalElem col = z * LocalElem(shared_from_this(), std::move(bas), M);
        for (int i = 0; i < ext_deg; ++i) {
            std::vector<Int> chunk(B->dim);
            for (int k = 0; k < base_dim; ++k) chunk[k] = col.c[base_dim * i + k];
            m[i][j] = LocalElem(B, std::move(chunk), col.known);
        }
    }
    return det_laplace(m, B->zero());
}

LocalNum LocalRing::norm_to_base(const LocalNum& z) const {
    if (ext_deg == 1) return z;
    // N(pi^v u) = pi^{v*ext_deg} N(u): pi lies in the base and the extension
    // is unramified
    LocalElem nu = norm_to_base(z.u);
    LocalNum s = base->unit_split(nu);
    if (s.v != 0) throw value_error("norm of unit is not a unit (internal)");
    return LocalNum(z.v * ext_deg, s.u);
}

bool LocalRing::same_as(const LocalRing& o) const {
    if (this == &o) return true;
    if (!(b == o.b) || M != o.M || ext_deg != o.ext_deg) return false;
    if (ext_deg > 1) {
        for (int i = 0; i < ext_deg; ++i)
            if (ext_min[i] != o.ext_min[i]) return false;
    }
    return true;
}

Poly<FqElem> reduce_poly(const Poly<LocalElem>& f) {
    std::vector<FqElem> r;
    for (const auto& ci : f.c) r.push_back(ci.R ? ci.residue() : FqElem());
    return Poly<FqElem>(std::move(r));
}

Poly<LocalElem> lift_poly(const LocalRingPtr& R, const Poly<FqElem>& f) {
    std::vector<LocalElem> r;
    for (const auto& ci : f.c) r.push_back(ci.ctx ? R->lift_residue(ci) : R->zero());
    return Poly<LocalElem>(std::move(r));
}

Poly<LocalElem> embed_poly(const LocalRingPtr& R, const Poly<NFElem>& f) {
    std::vector<LocalElem> r;
    for (const auto& ci : f.c) r.push_back(R->embed_integral(ci));
    return Poly<LocalElem>(std::move(r));
}

LocalElem resultant_monic(const Poly<LocalElem>& A, const Poly<LocalElem>& B) {
    int n = A.deg();
    if (n < 1) throw value_error("resultant_monic: constant modulus");
    const LocalRingPtr R = A.lc().R;
    Poly<LocalElem> Bred = divmod_monic(B, A).second;
    if (Bred.is_zero()) return R->zero();
    std::vector<std::vector<LocalElem>> m(n, std::vector<LocalElem>(n, R->zero()));
    Poly<LocalElem> cur = Bred;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= cur.deg(); ++i) m[i][j] = cur[i];
        if (j + 1 < n) {
            cur = divmod_monic(Poly<LocalElem>::monomial(R->one(), 1) * cur, A).second;
        }
    }
    return det_laplace(m, R->zero());
}

}  // namespace arithsurf
