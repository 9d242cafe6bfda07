#pragma once

#include "gbf/group.hpp"

#include <string>
#include <vector>

// The rational Burnside algebra QB(G): coefficients over conjugacy classes of
// subgroups [G/K], exact arithmetic throughout.
namespace gbf::burnside {

struct Elt {
    GroupPtr group;
    std::vector<Rat> coeffs;  // one per subgroup class of group

    bool is_zero() const;
    bool operator==(const Elt&) const = default;
};

struct MarkVector {
    GroupPtr group;
    std::vector<Rat> values;
};

const std::vector<std::string>& basis(const GroupPtr& g);
Elt zero(const GroupPtr& g);
Elt basis_elt(const GroupPtr& g, uint32_t cls);
Elt unit(const GroupPtr& g);  // [G/G]

Elt add(Elt a, const Elt& b);
Elt sub(Elt a, const Elt& b);
Elt scale(Elt a, const Rat& c);
Elt mult(const Elt& a, const Elt& b);

MarkVector marks(const Elt& a);
Elt from_marks(const MarkVector& v);

// e^G_H for the class of H: (1/|N_G(H)|) sum_{K<=H} |K| mu(K,H) [G/K].
Elt idempotent(const GroupPtr& g, uint32_t cls);

// m_{G,N} = (1/|G|) sum_{XN=G} |X| mu(X,G); N must be normal.
Rat m_constant(const GroupPtr& g, const Subgroup& n);

struct BGroupResult {
    bool is_b_group;
    std::vector<std::pair<Subgroup, Rat>> witnesses;  // nontrivial normal N with m != 0
};
BGroupResult is_B_group(const GroupPtr& g);

// Elementary operations in closed form. Nominal target/source groups follow
// the shared conventions: restriction lands in subgroup_group(H), deflation in
// quotient_group(N), and vice versa for induction/inflation.
Elt res(const Elt& a, const Subgroup& h);
Elt ind(const GroupPtr& g, const Subgroup& h, const Elt& a_at_h);
Elt inf(const GroupPtr& g, const Subgroup& n, const Elt& a_at_quotient);
Elt def(const GroupPtr& g, const Subgroup& n, const Elt& a);
Elt iso(const GroupHom& phi, const Elt& a);

// External product QB(G) x QB(H) -> QB(GxH): [G/K] x [H/L] = [GxH/(KxL)].
Elt external(const Elt& a, const Elt& b);

std::string render(const Elt& a);  // e.g. "[C2/C2] - 1/2 [C2/1]"

}  // namespace gbf::burnside
