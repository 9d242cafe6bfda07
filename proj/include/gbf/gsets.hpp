#pragma once

#include "gbf/burnside.hpp"
#include "gbf/group.hpp"
#include "gbf/slice.hpp"

#include <vector>

// Explicit G-set / biset / G-map engine. Everything here is the brute-force
// oracle the closed forms in burnside and slice are checked against.
namespace gbf::gsets {

struct GSet {
    GroupPtr group;
    unsigned size = 0;
    std::vector<uint32_t> action;  // [g * size + x] -> g.x

    uint32_t act(uint16_t g, uint32_t x) const { return action[static_cast<size_t>(g) * size + x]; }
    void validate() const;  // identity fixes all points; compatible with the table
};

struct Biset {
    GroupPtr left_group, right_group;
    unsigned size = 0;
    std::vector<uint32_t> left_action;   // [g * size + x] -> g.x
    std::vector<uint32_t> right_action;  // [g * size + x] -> x.g

    uint32_t lact(uint16_t g, uint32_t x) const {
        return left_action[static_cast<size_t>(g) * size + x];
    }
    uint32_t ract(uint16_t g, uint32_t x) const {
        return right_action[static_cast<size_t>(g) * size + x];
    }
    void validate() const;  // both are actions and they commute
};

struct GMap {
    GSet source, target;  // over the same group
    std::vector<uint32_t> image_of;

    void validate() const;  // equivariance
};

// G/K with left translation, cosets ordered by least representative.
struct CosetSet {
    GSet set;
    std::vector<uint16_t> reps;      // least element per coset
    std::vector<uint32_t> coset_of;  // element -> point
};
CosetSet coset_gset_full(const GroupPtr& g, const Subgroup& k);
GSet coset_gset(const GroupPtr& g, const Subgroup& k);

// Multiset of point-stabilizer classes, as a nonnegative-integer element.
burnside::Elt orbit_decompose(const GSet& x);

enum class BisetKind { Res, Ind, Inf, Def };

// The standard biset realizing one elementary operation: Res/Ind on the set
// G, Inf/Def on the set G/N.
Biset elementary_biset(BisetKind kind, const GroupPtr& g, const Subgroup& data);
Biset iso_biset(const GroupHom& phi);

// U x_G X: quotient of U x X by (u.g, x) ~ (u, g.x), least-pair representatives.
struct TensorResult {
    GSet set;
    std::vector<uint32_t> class_of_pair;  // [u * |X| + x] -> point
};
TensorResult tensor_full(const Biset& u, const GSet& x);
GSet tensor(const Biset& u, const GSet& x);

// pi(f) = sum over source orbits x of <G_{f(x)}, G_x>.
slice::Elt decompose_morphism(const GMap& f);

GMap identity_map(const GSet& x);
GMap coset_projection(const GroupPtr& g, const Subgroup& t, const Subgroup& s);  // G/S -> G/T

GSet disjoint_union(const GSet& a, const GSet& b);
GMap disjoint_union(const GMap& f, const GMap& g);  // same target group, union of targets

// Product of a G-set and an H-set as a (GxH)-set, and the diagonal product of
// two G-sets as a G-set (the internal Burnside multiplication oracle).
GSet external_product(const GSet& x, const GSet& y);
GSet diagonal_product(const GSet& x, const GSet& y);

GMap gmor_product(const GMap& f, const GMap& g);           // over GxH
GMap gmor_diagonal_product(const GMap& f, const GMap& g);  // same G (slice mult oracle)
GMap gmor_tensor(const Biset& u, const GMap& f);

}  // namespace gbf::gsets
