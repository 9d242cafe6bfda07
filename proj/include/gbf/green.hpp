#pragma once

#include "gbf/group.hpp"

#include <optional>
#include <string>
#include <vector>

// Generic layer over split semisimple commutative Green functor instances:
// idempotent transport and its shape classification, MC-group detection, the
// reduction lemmas, composition in the morphism category, principal ideals,
// and the domination relation.
namespace gbf::green {

// The computed transport of an idempotent contradicts the expected shape for
// the operation kind; the message names group, kind and coefficients.
struct theorem_violation : std::logic_error {
    using std::logic_error::logic_error;
};

// Element of one instance evaluation. `group` is the nominal evaluation group
// (for a shifted instance the coefficients live over classes of G x K).
struct Elt {
    GroupPtr group;
    std::vector<Rat> coeffs;

    bool is_zero() const;
    bool operator==(const Elt&) const = default;
};

struct IdempotentRef {
    GroupPtr group;
    uint32_t index = 0;
};

class Instance {
public:
    virtual ~Instance() = default;
    const std::string& name() const { return name_; }

    virtual unsigned dim(const GroupPtr& g) const = 0;
    virtual const std::vector<std::string>& labels(const GroupPtr& g) const = 0;
    virtual Elt zero(const GroupPtr& g) const = 0;
    virtual Elt unit(const GroupPtr& g) const = 0;
    virtual Elt idempotent(const GroupPtr& g, uint32_t idx) const = 0;
    virtual Elt mult(const Elt& a, const Elt& b) const = 0;
    // Coordinates in the primitive idempotent basis E_G and back.
    virtual std::vector<Rat> to_idem(const Elt& a) const = 0;
    virtual Elt from_idem(const GroupPtr& g, const std::vector<Rat>& coords) const = 0;

    virtual Elt res(const Elt& a, const Subgroup& h) const = 0;
    virtual Elt ind(const GroupPtr& g, const Subgroup& h, const Elt& a_at_h) const = 0;
    virtual Elt inf(const GroupPtr& g, const Subgroup& n, const Elt& a_at_q) const = 0;
    virtual Elt def(const GroupPtr& g, const Subgroup& n, const Elt& a) const = 0;
    virtual Elt iso(const GroupHom& phi, const Elt& a) const = 0;
    virtual Elt external(const Elt& a, const Elt& b) const = 0;

protected:
    explicit Instance(std::string name) : name_(std::move(name)) {}

private:
    std::string name_;
};

const Instance& burnside_instance();
const Instance& slice_instance();

enum class OpKind { Res, Ind, Inf, Def, Iso };

struct OpDesc {
    OpKind kind;
    GroupPtr g;                    // ambient group for Res/Ind/Inf/Def
    Subgroup data;                 // the subgroup (Res/Ind) or normal subgroup (Inf/Def)
    std::optional<GroupHom> phi;   // Iso
};

Elt apply(const Instance& inst, const OpDesc& op, const Elt& a);

enum class TransportShape { Zero, ZeroOneSum, ScalarTimesSingle, Single };

struct Transport {
    std::vector<Rat> coords;  // in the target idempotent basis
    TransportShape shape;
};

// Applies the operation to an idempotent and classifies the result, raising
// theorem_violation when the shape is off (Res/Inf: 0/1 sums; Ind/Def: scalar
// times a single idempotent; Iso: a single idempotent).
Transport transport(const Instance& inst, const OpDesc& op, const IdempotentRef& e);

// E with underline: killed by every proper restriction (tested on maximal
// subgroups, one per conjugacy class). E with double underline: killed by
// every proper deflation (tested on minimal nontrivial normal subgroups).
std::vector<uint32_t> underline_E(const Instance& inst, const GroupPtr& g);
std::vector<uint32_t> double_underline_E(const Instance& inst, const GroupPtr& g);
// Same sets computed from the full quantifier, for regression tests.
std::vector<uint32_t> underline_E_full(const Instance& inst, const GroupPtr& g);
std::vector<uint32_t> double_underline_E_full(const Instance& inst, const GroupPtr& g);

struct MCResult {
    bool is_mc;
    std::vector<uint32_t> witnesses;  // E-indices in both sets
};
MCResult is_MC_group(const Instance& inst, const GroupPtr& g);

struct ResIndReduction {
    Subgroup h;          // minimal subgroup with nonzero restriction
    GroupPtr h_group;
    uint32_t e_h;
    Rat alpha;           // e_G = alpha * Ind(e_H)
};
ResIndReduction reduce_res_ind(const Instance& inst, const IdempotentRef& e);

struct DefInfReduction {
    Subgroup n;          // maximal normal subgroup with nonzero deflation
    GroupPtr quotient;
    uint32_t e_q;
    Rat alpha;           // e_{G/N} = alpha * Def(e_G)
};
DefInfReduction reduce_def_inf(const Instance& inst, const IdempotentRef& e);

struct MCReduction {
    GroupPtr group;      // an MC-group
    uint32_t e;          // element of both underline sets
};
MCReduction reduce_to_MC(const Instance& inst, const IdempotentRef& e);

// Composition A(HxK) x A(KxG) -> A(HxG) through Def o (Inf . Inf).
Elt compose(const Instance& inst, const Elt& alpha, const GroupPtr& h, const GroupPtr& k,
            const GroupPtr& g, const Elt& beta);

// Identity morphism 1_G in A(GxG).
Elt identity_morphism(const Instance& inst, const GroupPtr& g);

// Evaluation at G of the ideal generated by an idempotent: the span of
// {b o e : b basis of A(G x K)} reduced to row echelon form in the idempotent
// basis of A(G). For these instances the span is a coordinate subspace; the
// sorted E-indices are returned (asserted).
std::vector<uint32_t> principal_ideal_eval(const Instance& inst, const IdempotentRef& gen,
                                           const GroupPtr& g);

// (H,e_H) >> (K,e_K): some e in E_{HxK} has e_H . Def(e . Inf(e_K)) != 0.
bool dominates(const Instance& inst, const IdempotentRef& eh, const IdempotentRef& ek);
// The same relation decided through principal-ideal membership.
bool dominates_via_ideal(const Instance& inst, const IdempotentRef& eh, const IdempotentRef& ek);

// Catalog groups of minimal order where the ideal generated by `gens` is
// nonzero; each returned group is asserted to be an MC-group.
std::vector<GroupPtr> minimal_groups_of_ideal(const Instance& inst,
                                              const std::vector<IdempotentRef>& gens,
                                              unsigned max_order);

// Row echelon form over Q (in place); returns the rank.
size_t rref(std::vector<std::vector<Rat>>& rows);

}  // namespace gbf::green
