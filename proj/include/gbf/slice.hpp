#pragma once

#include "gbf/group.hpp"

#include <string>
#include <vector>

// The rational slice Burnside algebra QXi(G): coefficients over conjugacy
// classes of slices <T,S>_G (pairs S <= T up to simultaneous conjugation).
namespace gbf::slice {

struct Elt {
    GroupPtr group;
    std::vector<Rat> coeffs;  // one per slice class of group

    bool is_zero() const;
    bool operator==(const Elt&) const = default;
};

const std::vector<std::string>& basis(const GroupPtr& g);
Elt zero(const GroupPtr& g);
Elt basis_elt(const GroupPtr& g, uint32_t cls);
Elt unit(const GroupPtr& g);  // <G,G>

Elt add(Elt a, const Elt& b);
Elt sub(Elt a, const Elt& b);
Elt scale(Elt a, const Rat& c);

// <T,S>.<V,U> = sum over g in [S\G/U] of <T n gVg^-1, S n gUg^-1>.
Elt mult(const Elt& a, const Elt& b);

// Slice table-of-marks coordinates; the mark matrix is block-triangular with
// positive diagonal under the class order, so this is a linear isomorphism.
std::vector<Rat> marks(const Elt& a);
Elt from_marks(const GroupPtr& g, const std::vector<Rat>& v);

// xi^G_{T,S} = (1/|N_G(T,S)|) sum_{U<=S<=V<=T} |U| mu(U,S) mu(V,T) <V,U>_G.
Elt xi_idempotent(const GroupPtr& g, uint32_t cls);

// m_{G,S,N} with N normal in G:
// ([N_G(SN):SN]/|N_G(S)|) sum_{U<=S<=V, VN=G, UN=SN} |U| mu(U,S) mu(V,G).
Rat m_slice(const GroupPtr& g, const Subgroup& s, const Subgroup& n);

bool is_T_slice(const GroupPtr& g, const Subgroup& s);
std::vector<uint32_t> t_slices(const GroupPtr& g);  // slice classes (G,S) that are T-slices

Elt res(const Elt& a, const Subgroup& h);
Elt ind(const GroupPtr& g, const Subgroup& h, const Elt& a_at_h);
Elt inf(const GroupPtr& g, const Subgroup& n, const Elt& a_at_quotient);
Elt def(const GroupPtr& g, const Subgroup& n, const Elt& a);
Elt iso(const GroupHom& phi, const Elt& a);

// External product: <T,S>_G x <V,U>_H = <TxV, SxU>_{GxH}.
Elt external(const Elt& a, const Elt& b);

std::string render(const Elt& a);

}  // namespace gbf::slice
