#pragma once

#include "gbf/green.hpp"
#include "gbf/group.hpp"

#include <optional>
#include <vector>

// The shifted Burnside functor QB_K: evaluations QB(G x K), groups over K,
// B_K-group detection, beta_K, and the Goursat-style MC criterion.
namespace gbf::shifted {

struct GroupOverK {
    GroupPtr group;  // L
    GroupHom phi;    // L -> K
};

struct GoursatData {
    GroupPtr ambient;  // the product G x K
    Subgroup x;        // X <= G x K
    Subgroup p1, k1;   // projection to and kernel part in G: k1 = X n (G x 1)
    Subgroup p2, k2;   // same on the K side
};

// Evaluation at G is QB(G x K); elementary operations act through U x K
// bisets; the external product restricts along the diagonal of K x K.
const green::Instance& shifted_instance(const GroupPtr& k);

GoursatData subgroup_to_pair(const GroupPtr& g, const GroupPtr& k, const Subgroup& x);
Subgroup pair_to_subgroup(const GroupOverK& lphi, const GroupPtr& k);  // L_phi <= L x K

struct BKResult {
    bool is_bk;
    std::vector<std::pair<Subgroup, Rat>> witnesses;  // N <= Ker phi with m_{L,N} != 0
};
BKResult is_BK_group(const GroupOverK& lphi);

// (L/Q, phi/Q) for Q normal in L, contained in Ker phi, maximal with
// m_{L,Q} != 0; ties broken by the canonical subgroup order and all maximal
// choices checked isomorphic over K.
GroupOverK beta_K(const GroupOverK& lphi);

std::vector<GroupHom> inner_automorphisms(const GroupPtr& k);

// (L,phi) -> (L',phi'): a surjection f with i . phi = phi' . f for an inner i.
bool quotient_over_K(const GroupOverK& from, const GroupOverK& to);
bool isomorphic_over_K(const GroupOverK& a, const GroupOverK& b);

// All homomorphisms L -> K as groups over K, optionally up to isomorphism in
// the category of groups over K.
std::vector<GroupOverK> groups_over_K(const GroupPtr& l, const GroupPtr& k);
std::vector<GroupOverK> groups_over_K_up_to_iso(const GroupPtr& l, const GroupPtr& k);

struct ShiftedMC {
    bool is_mc;
    std::optional<Subgroup> witness;  // X <= L x K satisfying the criterion
};
// L is an MC-group of QB_K iff some X <= L x K has p1(X) = L, k1(X) meeting
// every nontrivial normal subgroup of L, and (X, p2) a B_K-group.
ShiftedMC is_MC_group_shifted(const GroupPtr& k, const GroupPtr& l, const Caps& caps = {});

}  // namespace gbf::shifted
