#pragma once

#include "gbf/common.hpp"
#include "gbf/mask.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace gbf {

class Group;
using GroupPtr = std::shared_ptr<const Group>;

struct Subgroup {
    const Group* parent = nullptr;
    std::vector<uint16_t> elements;  // sorted ascending, contains the identity
};

struct GroupHom {
    GroupPtr source;
    GroupPtr target;
    std::vector<uint16_t> image_of;  // one entry per source element

    uint16_t operator()(uint16_t x) const { return image_of[x]; }
    bool is_bijective() const;
    GroupHom inverse() const;  // requires bijective
    static GroupHom compose(const GroupHom& outer, const GroupHom& inner);
    void validate() const;  // throws validation_error if not a homomorphism
};

struct Slice {
    const Group* parent = nullptr;
    Subgroup big;    // T
    Subgroup small;  // S <= T
};

// Everything derived from the subgroup lattice, built once per group.
struct SubgroupData {
    unsigned n_subgroups = 0;
    std::vector<Mask> mask;                        // sorted by (size, lex element list)
    std::vector<std::vector<uint16_t>> elems;
    std::vector<unsigned> size;
    std::unordered_map<Mask, uint32_t, MaskHash> index_of;
    std::vector<uint32_t> normalizer;              // subgroup index of N_G(H)
    std::vector<uint32_t> class_of;                // subgroup -> conjugacy class id
    std::vector<uint32_t> class_rep;               // class -> subgroup index (lex-least member)
    std::vector<std::vector<uint32_t>> class_members;
    std::vector<std::vector<uint32_t>> below;      // per subgroup: indices K with K <= H, ascending
    std::vector<std::vector<int64_t>> moebius;     // aligned with below: mu(K, H)
    std::vector<uint32_t> normals;                 // subgroup indices with N_G(H) = G, ascending
    std::vector<uint32_t> minimal_normals;         // nontrivial normals minimal under inclusion
    std::vector<uint32_t> maximal_subgroups;       // proper subgroups maximal under inclusion
    std::vector<uint32_t> conj_action;             // [s*order + g] -> index of g H_s g^-1
    uint32_t trivial_index = 0;
    uint32_t full_index = 0;

    unsigned n_classes() const { return static_cast<unsigned>(class_rep.size()); }
    bool contains(uint32_t k, uint32_t h) const { return mask[k].subset_of(mask[h]); }
    int64_t mu(uint32_t k, uint32_t h) const;      // mu(K,H); throws if K is not <= H
};

// Conjugacy classes of slices (T,S), S <= T, under simultaneous conjugation.
struct SliceData {
    struct Class {
        uint32_t big;            // subgroup index of T (representative pair)
        uint32_t small;          // subgroup index of S
        unsigned stabilizer;     // |N_G(T) ∩ N_G(S)|
    };
    std::vector<Class> classes;  // sorted by (|T|, |S|, lex T, lex S)
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> class_of_pair;  // any (T,S) -> class id
    std::vector<int32_t> marks;  // class x class slice table of marks

    uint32_t class_of(uint32_t t, uint32_t s) const;
};

class Group {
public:
    // Builds the closure of the given permutations on {0..degree-1}; element
    // order is breadth-first over generator words, generators in input order.
    static GroupPtr from_permutations(std::string name, unsigned degree,
                                      const std::vector<std::vector<unsigned>>& generators,
                                      const Caps& caps = {});

    // Table-based constructor for internal group plumbing (validates identity
    // and inverses; associativity is the caller's contract).
    static GroupPtr from_table(std::string name, unsigned order, std::vector<uint16_t> table);

    unsigned order() const { return order_; }
    uint16_t identity() const { return identity_; }
    const std::string& name() const { return name_; }
    uint16_t mul(uint16_t a, uint16_t b) const { return table_[a * order_ + b]; }
    uint16_t inv(uint16_t a) const { return inverse_[a]; }
    uint16_t conj(uint16_t g, uint16_t x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
    const std::vector<unsigned>& element_orders() const { return element_orders_; }
    bool abelian() const { return abelian_; }
    unsigned center_size() const { return center_size_; }

    bool check_associative() const;  // exhaustive; used by validation tests

    const SubgroupData& subgroups() const;  // lazily built, thread-safe
    const SliceData& slices() const;
    const std::vector<int32_t>& mark_table() const;  // n_classes^2; m_H([G/K]) at [h*nc+k]

    Subgroup subgroup(uint32_t index) const;
    uint32_t subgroup_index(const Subgroup& h) const;  // validation_error if not a subgroup of this
    Mask mask_of(const std::vector<uint16_t>& elements) const;
    uint32_t conj_subgroup(uint32_t index, uint16_t g) const;  // index of g H g^-1

    // Derived groups, cached per (group, index): element order of the subgroup
    // group is the sorted element order; quotient cosets are ordered by least
    // representative.
    struct DerivedGroup {
        GroupPtr group;
        GroupHom hom;  // embedding (subgroup case) or projection (quotient case)
    };
    const DerivedGroup& subgroup_group(uint32_t index) const;
    const DerivedGroup& quotient_group(uint32_t normal_index) const;

private:
    Group() = default;
    void finish_construction();

    unsigned order_ = 1;
    uint16_t identity_ = 0;
    std::string name_;
    std::vector<uint16_t> table_;
    std::vector<uint16_t> inverse_;
    std::vector<unsigned> element_orders_;
    bool abelian_ = true;
    unsigned center_size_ = 1;

    mutable std::once_flag sub_once_;
    mutable std::unique_ptr<SubgroupData> sub_;
    mutable std::once_flag slice_once_;
    mutable std::unique_ptr<SliceData> slice_;
    mutable std::once_flag marks_once_;
    mutable std::vector<int32_t> marks_;
    mutable std::mutex derived_mutex_;
    mutable std::map<uint32_t, DerivedGroup> subgroup_groups_;
    mutable std::map<uint32_t, DerivedGroup> quotient_groups_;
    mutable std::weak_ptr<const Group> self_;
};

struct ProductInfo {
    GroupPtr group;   // element (a,b) indexed as a*|B| + b
    GroupHom p1, p2;  // projections
    GroupHom i1, i2;  // injections
};

// Cached; a trivial factor returns the other group itself (the indexing
// convention makes the tables coincide).
const ProductInfo& direct_product(const GroupPtr& a, const GroupPtr& b, const Caps& caps = {});

struct SubgroupClass {
    Subgroup representative;
    std::vector<Subgroup> members;
};

struct SliceClassInfo {
    Slice representative;
    Subgroup stabilizer;  // N_G(T) ∩ N_G(S)
    std::vector<Slice> members;
};

std::vector<Subgroup> all_subgroups(const GroupPtr& g);
std::vector<SubgroupClass> conjugacy_classes_of_subgroups(const GroupPtr& g);
Subgroup normalizer(const GroupPtr& g, const Subgroup& h);
bool is_normal(const GroupPtr& g, const Subgroup& h);
std::vector<Subgroup> normal_subgroups(const GroupPtr& g);
std::pair<GroupPtr, GroupHom> quotient(const GroupPtr& g, const Subgroup& n);
std::vector<uint16_t> double_cosets(const GroupPtr& g, const Subgroup& h, const Subgroup& k);
std::vector<SliceClassInfo> slice_classes(const GroupPtr& g);

class MoebiusTable {
public:
    explicit MoebiusTable(GroupPtr g) : group_(std::move(g)) {}
    int64_t value(const Subgroup& k, const Subgroup& h) const;
    const GroupPtr& group() const { return group_; }

private:
    GroupPtr group_;
};
MoebiusTable moebius_table(const GroupPtr& g);

std::optional<GroupHom> are_isomorphic(const GroupPtr& g, const GroupPtr& h);

// Isomorphism search with a pointwise side condition: require
// constraint_target(f(x)) = constraint_source(x) for all x.
std::optional<GroupHom> find_isomorphism(const GroupPtr& g, const GroupPtr& h,
                                         const GroupHom* constraint_source = nullptr,
                                         const GroupHom* constraint_target = nullptr);

// All homomorphisms source -> target, deterministic order.
std::vector<GroupHom> all_homomorphisms(const GroupPtr& source, const GroupPtr& target);

GroupHom identity_hom(const GroupPtr& g);
GroupHom trivial_hom(const GroupPtr& source, const GroupPtr& target);

}  // namespace gbf
