#include "gbf/green.hpp"

#include "gbf/burnside.hpp"
#include "gbf/catalog.hpp"
#include "gbf/slice.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace gbf::green {

bool Elt::is_zero() const {
    return std::ranges::all_of(coeffs, [](const Rat& c) { return c == 0; });
}

// ---------------------------------------------------------------------------
// Concrete instances over the burnside and slice modules

namespace {

class BurnsideInstance final : public Instance {
public:
    BurnsideInstance() : Instance("burnside") {}

    unsigned dim(const GroupPtr& g) const override { return g->subgroups().n_classes(); }
    const std::vector<std::string>& labels(const GroupPtr& g) const override {
        return burnside::basis(g);
    }
    Elt zero(const GroupPtr& g) const override { return Elt{g, std::vector<Rat>(dim(g))}; }
    Elt unit(const GroupPtr& g) const override { return out(burnside::unit(g)); }
    Elt idempotent(const GroupPtr& g, uint32_t idx) const override {
        return out(burnside::idempotent(g, idx));
    }
    Elt mult(const Elt& a, const Elt& b) const override {
        return out(burnside::mult(in(a), in(b)));
    }
    std::vector<Rat> to_idem(const Elt& a) const override {
        return burnside::marks(in(a)).values;
    }
    Elt from_idem(const GroupPtr& g, const std::vector<Rat>& coords) const override {
        return out(burnside::from_marks(burnside::MarkVector{g, coords}));
    }
    Elt res(const Elt& a, const Subgroup& h) const override { return out(burnside::res(in(a), h)); }
    Elt ind(const GroupPtr& g, const Subgroup& h, const Elt& a) const override {
        return out(burnside::ind(g, h, in(a)));
    }
    Elt inf(const GroupPtr& g, const Subgroup& n, const Elt& a) const override {
        return out(burnside::inf(g, n, in(a)));
    }
    Elt def(const GroupPtr& g, const Subgroup& n, const Elt& a) const override {
        return out(burnside::def(g, n, in(a)));
    }
    Elt iso(const GroupHom& phi, const Elt& a) const override {
        return out(burnside::iso(phi, in(a)));
    }
    Elt external(const Elt& a, const Elt& b) const override {
        return out(burnside::external(in(a), in(b)));
    }

private:
    static burnside::Elt in(const Elt& a) { return burnside::Elt{a.group, a.coeffs}; }
    static Elt out(const burnside::Elt& a) { return Elt{a.group, a.coeffs}; }
};

class SliceInstance final : public Instance {
public:
    SliceInstance() : Instance("slice") {}

    unsigned dim(const GroupPtr& g) const override {
        return static_cast<unsigned>(g->slices().classes.size());
    }
    const std::vector<std::string>& labels(const GroupPtr& g) const override {
        return slice::basis(g);
    }
    Elt zero(const GroupPtr& g) const override { return Elt{g, std::vector<Rat>(dim(g))}; }
    Elt unit(const GroupPtr& g) const override { return out(slice::unit(g)); }
    Elt idempotent(const GroupPtr& g, uint32_t idx) const override {
        return out(slice::xi_idempotent(g, idx));
    }
    Elt mult(const Elt& a, const Elt& b) const override { return out(slice::mult(in(a), in(b))); }
    std::vector<Rat> to_idem(const Elt& a) const override { return slice::marks(in(a)); }
    Elt from_idem(const GroupPtr& g, const std::vector<Rat>& coords) const override {
        return out(slice::from_marks(g, coords));
    }
    Elt res(const Elt& a, const Subgroup& h) const override { return out(slice::res(in(a), h)); }
    Elt ind(const GroupPtr& g, const Subgroup& h, const Elt& a) const override {
        return out(slice::ind(g, h, in(a)));
    }
    Elt inf(const GroupPtr& g, const Subgroup& n, const Elt& a) const override {
        return out(slice::inf(g, n, in(a)));
    }
    Elt def(const GroupPtr& g, const Subgroup& n, const Elt& a) const override {
        return out(slice::def(g, n, in(a)));
    }
    Elt iso(const GroupHom& phi, const Elt& a) const override {
        return out(slice::iso(phi, in(a)));
    }
    Elt external(const Elt& a, const Elt& b) const override {
        return out(slice::external(in(a), in(b)));
    }

private:
    static slice::Elt in(const Elt& a) { return slice::Elt{a.group, a.coeffs}; }
    static Elt out(const slice::Elt& a) { return Elt{a.group, a.coeffs}; }
};

}  // namespace

const Instance& burnside_instance() {
    static BurnsideInstance inst;
    return inst;
}

const Instance& slice_instance() {
    static SliceInstance inst;
    return inst;
}

// ---------------------------------------------------------------------------
// Product plumbing: factor subgroups and the canonical quotient isos

namespace {

Subgroup image_subgroup(const GroupPtr& target, const GroupHom& hom) {
    std::vector<uint16_t> els(hom.image_of.begin(), hom.image_of.end());
    std::sort(els.begin(), els.end());
    els.erase(std::unique(els.begin(), els.end()), els.end());
    return Subgroup{target.get(), std::move(els)};
}

// Least representative per coset of the quotient projection.
std::vector<uint16_t> coset_reps(const GroupHom& proj) {
    std::vector<uint16_t> reps(proj.target->order(), UINT16_MAX);
    for (uint16_t x = 0; x < proj.source->order(); ++x)
        if (reps[proj.image_of[x]] == UINT16_MAX) reps[proj.image_of[x]] = x;
    return reps;
}

struct FactorQuotient {
    Subgroup kernel;     // one factor, as a subgroup of the product
    GroupPtr quotient;   // product / kernel
    GroupHom identify;   // iso with the kept factor (direction depends on use)
};

// Quotient of P = A x B by A x 1, identified with B: iso B -> P/(Ax1).
FactorQuotient quotient_onto_right(const ProductInfo& pi) {
    Subgroup ker = image_subgroup(pi.group, pi.i1);
    uint32_t ni = pi.group->subgroup_index(ker);
    const auto& q = pi.group->quotient_group(ni);
    GroupHom psi = GroupHom::compose(q.hom, pi.i2);  // B -> P -> P/(Ax1)
    return {std::move(ker), q.group, std::move(psi)};
}

// Quotient of P = A x B by 1 x B, identified with A: iso P/(1xB) -> A.
FactorQuotient quotient_onto_left(const ProductInfo& pi) {
    Subgroup ker = image_subgroup(pi.group, pi.i2);
    uint32_t ni = pi.group->subgroup_index(ker);
    const auto& q = pi.group->quotient_group(ni);
    auto reps = coset_reps(q.hom);
    GroupHom chi;
    chi.source = q.group;
    chi.target = pi.p1.target;
    chi.image_of.reserve(q.group->order());
    for (uint16_t c = 0; c < q.group->order(); ++c) chi.image_of.push_back(pi.p1.image_of[reps[c]]);
    return {std::move(ker), q.group, std::move(chi)};
}

// Inflation of an element of A(B) along P = A x B -> B.
Elt inflate_from_right(const Instance& inst, const ProductInfo& pi, const Elt& b_elt) {
    auto fq = quotient_onto_right(pi);
    return inst.inf(pi.group, fq.kernel, inst.iso(fq.identify, b_elt));
}

Elt basis_vector(const Instance& inst, const GroupPtr& g, uint32_t idx) {
    Elt e = inst.zero(g);
    e.coeffs.at(idx) = 1;
    return e;
}

std::string coeff_list(const std::vector<Rat>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += rat_str(v[i]);
    }
    return s + "]";
}

const char* kind_name(OpKind k) {
    switch (k) {
        case OpKind::Res: return "Res";
        case OpKind::Ind: return "Ind";
        case OpKind::Inf: return "Inf";
        case OpKind::Def: return "Def";
        case OpKind::Iso: return "Iso";
    }
    return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// Transport and the underline sets

Elt apply(const Instance& inst, const OpDesc& op, const Elt& a) {
    switch (op.kind) {
        case OpKind::Res: return inst.res(a, op.data);
        case OpKind::Ind: return inst.ind(op.g, op.data, a);
        case OpKind::Inf: return inst.inf(op.g, op.data, a);
        case OpKind::Def: return inst.def(op.g, op.data, a);
        case OpKind::Iso: return inst.iso(*op.phi, a);
    }
    throw validation_error("unknown op kind");
}

Transport transport(const Instance& inst, const OpDesc& op, const IdempotentRef& e) {
    Elt moved = apply(inst, op, inst.idempotent(e.group, e.index));
    std::vector<Rat> coords = inst.to_idem(moved);

    unsigned nonzero = 0, ones = 0;
    for (const Rat& c : coords) {
        if (c != 0) ++nonzero;
        if (c == 1) ++ones;
    }
    auto fail = [&](const char* expect) -> Transport {
        throw theorem_violation(std::string("transport shape violation: instance ") +
                                inst.name() + ", group " + e.group->name() + ", op " +
                                kind_name(op.kind) + ", idempotent " +
                                std::to_string(e.index) + ": expected " + expect + ", got " +
                                coeff_list(coords));
    };

    Transport t{std::move(coords), TransportShape::Zero};
    switch (op.kind) {
        case OpKind::Res:
        case OpKind::Inf:
            if (ones != nonzero) return fail("a 0/1 vector");
            t.shape = nonzero == 0 ? TransportShape::Zero : TransportShape::ZeroOneSum;
            break;
        case OpKind::Ind:
        case OpKind::Def:
            if (nonzero > 1) return fail("a scalar times a single idempotent");
            t.shape = nonzero == 0 ? TransportShape::Zero : TransportShape::ScalarTimesSingle;
            break;
        case OpKind::Iso:
            if (nonzero != 1 || ones != 1) return fail("a single idempotent");
            t.shape = TransportShape::Single;
            break;
    }
    return t;
}

namespace {

std::vector<uint32_t> killed_by_res(const Instance& inst, const GroupPtr& g,
                                    const std::vector<uint32_t>& subgroup_indices) {
    unsigned nd = inst.dim(g);
    std::vector<uint32_t> out;
    for (uint32_t e = 0; e < nd; ++e) {
        bool killed = true;
        for (uint32_t si : subgroup_indices) {
            auto r = inst.res(inst.idempotent(g, e), g->subgroup(si));
            if (!r.is_zero()) {
                killed = false;
                break;
            }
        }
        if (killed) out.push_back(e);
    }
    return out;
}

std::vector<uint32_t> killed_by_def(const Instance& inst, const GroupPtr& g,
                                    const std::vector<uint32_t>& normal_indices) {
    unsigned nd = inst.dim(g);
    std::vector<uint32_t> out;
    for (uint32_t e = 0; e < nd; ++e) {
        bool killed = true;
        for (uint32_t ni : normal_indices) {
            auto r = inst.def(g, g->subgroup(ni), inst.idempotent(g, e));
            if (!r.is_zero()) {
                killed = false;
                break;
            }
        }
        if (killed) out.push_back(e);
    }
    return out;
}

}  // namespace

std::vector<uint32_t> underline_E(const Instance& inst, const GroupPtr& g) {
    // Res is transitive, so vanishing on maximal subgroups (one per class)
    // forces vanishing on all proper subgroups.
    const auto& d = g->subgroups();
    std::set<uint32_t> classes;
    for (uint32_t m : d.maximal_subgroups) classes.insert(d.class_of[m]);
    std::vector<uint32_t> reps;
    for (uint32_t c : classes) reps.push_back(d.class_rep[c]);
    return killed_by_res(inst, g, reps);
}

std::vector<uint32_t> underline_E_full(const Instance& inst, const GroupPtr& g) {
    const auto& d = g->subgroups();
    std::vector<uint32_t> reps;
    for (uint32_t c = 0; c + 1 < d.n_classes(); ++c) reps.push_back(d.class_rep[c]);
    return killed_by_res(inst, g, reps);
}

std::vector<uint32_t> double_underline_E(const Instance& inst, const GroupPtr& g) {
    // Def^G_{G/N} factors through Def^G_{G/N0} for N0 <= N, so minimal
    // nontrivial normal subgroups suffice.
    return killed_by_def(inst, g, g->subgroups().minimal_normals);
}

std::vector<uint32_t> double_underline_E_full(const Instance& inst, const GroupPtr& g) {
    const auto& d = g->subgroups();
    std::vector<uint32_t> normals;
    for (uint32_t n : d.normals)
        if (n != d.trivial_index) normals.push_back(n);
    return killed_by_def(inst, g, normals);
}

MCResult is_MC_group(const Instance& inst, const GroupPtr& g) {
    auto a = underline_E(inst, g);
    auto b = double_underline_E(inst, g);
    MCResult r{false, {}};
    std::ranges::set_intersection(a, b, std::back_inserter(r.witnesses));
    r.is_mc = !r.witnesses.empty();
    return r;
}

// ---------------------------------------------------------------------------
// Reduction lemmas

ResIndReduction reduce_res_ind(const Instance& inst, const IdempotentRef& e) {
    const GroupPtr& g = e.group;
    const auto& d = g->subgroups();
    Elt eg = inst.idempotent(g, e.index);
    for (uint32_t c = 0; c < d.n_classes(); ++c) {
        Subgroup h = g->subgroup(d.class_rep[c]);
        Elt r = inst.res(eg, h);
        if (r.is_zero()) continue;
        auto coords = inst.to_idem(r);
        uint32_t eh = 0;
        while (coords[eh] == 0) ++eh;
        const auto& hg = g->subgroup_group(d.class_rep[c]);
        auto lifted = inst.to_idem(inst.ind(g, h, inst.idempotent(hg.group, eh)));
        Rat lambda = lifted[e.index];
        if (lambda == 0) throw theorem_violation("reduce_res_ind: induction misses e_G");
        for (uint32_t i = 0; i < lifted.size(); ++i)
            if (i != e.index && lifted[i] != 0)
                throw theorem_violation("reduce_res_ind: induction is not a single idempotent");
        auto under = underline_E(inst, hg.group);
        if (!std::ranges::binary_search(under, eh))
            throw theorem_violation("reduce_res_ind: e_H escapes the underline set");
        return ResIndReduction{std::move(h), hg.group, eh, Rat(1) / lambda};
    }
    throw theorem_violation("reduce_res_ind: restriction to G itself vanished");
}

DefInfReduction reduce_def_inf(const Instance& inst, const IdempotentRef& e) {
    const GroupPtr& g = e.group;
    const auto& d = g->subgroups();
    Elt eg = inst.idempotent(g, e.index);
    // normals ascend in (order, lex); walk them backwards for a maximal N
    for (auto it = d.normals.rbegin(); it != d.normals.rend(); ++it) {
        Subgroup n = g->subgroup(*it);
        Elt moved = inst.def(g, n, eg);
        if (moved.is_zero()) continue;
        auto coords = inst.to_idem(moved);
        uint32_t eq = 0;
        Rat lambda = 0;
        for (uint32_t i = 0; i < coords.size(); ++i)
            if (coords[i] != 0) {
                eq = i;
                lambda = coords[i];
            }
        const auto& qg = g->quotient_group(*it);
        Elt back = inst.mult(eg, inst.inf(g, n, inst.idempotent(qg.group, eq)));
        if (!(back == eg))
            throw theorem_violation("reduce_def_inf: e_G is not under the inflated idempotent");
        auto dunder = double_underline_E(inst, qg.group);
        if (!std::ranges::binary_search(dunder, eq))
            throw theorem_violation("reduce_def_inf: e_{G/N} escapes the double underline set");
        return DefInfReduction{std::move(n), qg.group, eq, Rat(1) / lambda};
    }
    throw theorem_violation("reduce_def_inf: deflation by the trivial subgroup vanished");
}

MCReduction reduce_to_MC(const Instance& inst, const IdempotentRef& e) {
    auto r1 = reduce_res_ind(inst, e);
    auto r2 = reduce_def_inf(inst, IdempotentRef{r1.h_group, r1.e_h});
    auto under = underline_E(inst, r2.quotient);
    auto dunder = double_underline_E(inst, r2.quotient);
    if (!std::ranges::binary_search(under, r2.e_q) ||
        !std::ranges::binary_search(dunder, r2.e_q))
        throw theorem_violation("reduce_to_MC: result is not an MC witness");
    return MCReduction{r2.quotient, r2.e_q};
}

// ---------------------------------------------------------------------------
// Composition, principal ideals, domination

Elt compose(const Instance& inst, const Elt& alpha, const GroupPtr& h, const GroupPtr& k,
            const GroupPtr& g, const Elt& beta) {
    const auto& pi_hk = direct_product(h, k);
    const auto& pi_kg = direct_product(k, g);
    const auto& pi_hg = direct_product(h, g);
    if (alpha.group.get() != pi_hk.group.get() || beta.group.get() != pi_kg.group.get())
        throw validation_error("compose: operands over the wrong products");
    const auto& pi_t = direct_product(pi_hk.group, g);
    const GroupPtr& t = pi_t.group;

    // alpha inflated along (HxK)xG -> HxK
    Elt a3 = [&] {
        Subgroup ker = image_subgroup(t, pi_t.i2);  // 1x1xG
        uint32_t ni = t->subgroup_index(ker);
        const auto& q = t->quotient_group(ni);
        GroupHom psi = GroupHom::compose(q.hom, pi_t.i1);  // HxK -> T/(1x1xG)
        return inst.inf(t, ker, inst.iso(psi, alpha));
    }();

    // beta inflated along (HxK)xG -> KxG via the embedding (k,x) -> (1,k,x)
    Elt b3 = [&] {
        GroupHom embed_h = GroupHom::compose(pi_t.i1, pi_hk.i1);  // H -> T
        Subgroup ker = image_subgroup(t, embed_h);                // Hx1x1
        uint32_t ni = t->subgroup_index(ker);
        const auto& q = t->quotient_group(ni);
        GroupHom m;  // KxG -> T
        m.source = pi_kg.group;
        m.target = t;
        m.image_of.reserve(pi_kg.group->order());
        for (uint16_t y = 0; y < pi_kg.group->order(); ++y) {
            uint16_t u = pi_t.i1.image_of[pi_hk.i2.image_of[pi_kg.p1.image_of[y]]];
            uint16_t x = pi_t.i2.image_of[pi_kg.p2.image_of[y]];
            m.image_of.push_back(t->mul(u, x));
        }
        GroupHom psi = GroupHom::compose(q.hom, m);  // KxG -> T/(Hx1x1)
        return inst.inf(t, ker, inst.iso(psi, beta));
    }();

    Elt prod = inst.mult(a3, b3);

    // deflate along (HxK)xG -> HxG, collapsing 1xKx1
    GroupHom embed_k = GroupHom::compose(pi_t.i1, pi_hk.i2);  // K -> T
    Subgroup ker = image_subgroup(t, embed_k);
    uint32_t ni = t->subgroup_index(ker);
    const auto& q = t->quotient_group(ni);
    auto reps = coset_reps(q.hom);
    GroupHom chi;  // T/(1xKx1) -> HxG
    chi.source = q.group;
    chi.target = pi_hg.group;
    chi.image_of.reserve(q.group->order());
    for (uint16_t c = 0; c < q.group->order(); ++c) {
        uint16_t r = reps[c];
        uint16_t hpart = pi_hk.p1.image_of[pi_t.p1.image_of[r]];
        uint16_t xpart = pi_t.p2.image_of[r];
        chi.image_of.push_back(
            pi_hg.group->mul(pi_hg.i1.image_of[hpart], pi_hg.i2.image_of[xpart]));
    }
    return inst.iso(chi, inst.def(t, ker, prod));
}

Elt identity_morphism(const Instance& inst, const GroupPtr& g) {
    const auto& pi = direct_product(g, g);
    std::vector<uint16_t> diag;
    for (uint16_t x = 0; x < g->order(); ++x)
        diag.push_back(pi.group->mul(pi.i1.image_of[x], pi.i2.image_of[x]));
    std::sort(diag.begin(), diag.end());
    Subgroup delta{pi.group.get(), std::move(diag)};
    uint32_t di = pi.group->subgroup_index(delta);
    const auto& dg = pi.group->subgroup_group(di);
    return inst.ind(pi.group, delta, inst.unit(dg.group));
}

size_t rref(std::vector<std::vector<Rat>>& rows) {
    size_t rank = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
        size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        Rat inv = Rat(1) / rows[rank][col];
        for (auto& x : rows[rank]) x *= inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rat f = rows[r][col];
            for (size_t c2 = col; c2 < cols; ++c2) rows[r][c2] -= f * rows[rank][c2];
        }
        ++rank;
    }
    rows.resize(rank);
    return rank;
}

std::vector<uint32_t> principal_ideal_eval(const Instance& inst, const IdempotentRef& gen,
                                           const GroupPtr& g) {
    const GroupPtr& k = gen.group;
    const auto& pi = direct_product(g, k);
    GroupPtr triv = make_group("1");
    Elt e_gen = inst.idempotent(k, gen.index);

    std::vector<std::vector<Rat>> rows;
    unsigned nb = inst.dim(pi.group);
    for (uint32_t b = 0; b < nb; ++b) {
        Elt c = compose(inst, basis_vector(inst, pi.group, b), g, k, triv, e_gen);
        auto coords = inst.to_idem(c);
        if (std::ranges::any_of(coords, [](const Rat& x) { return x != 0; }))
            rows.push_back(std::move(coords));
    }
    rref(rows);
    std::vector<uint32_t> idx;
    for (const auto& row : rows) {
        uint32_t nonzero = 0, where = 0;
        for (uint32_t i = 0; i < row.size(); ++i)
            if (row[i] != 0) {
                ++nonzero;
                where = i;
            }
        if (nonzero != 1)
            throw theorem_violation("principal ideal evaluation is not spanned by idempotents");
        idx.push_back(where);
    }
    std::sort(idx.begin(), idx.end());
    return idx;
}

bool dominates(const Instance& inst, const IdempotentRef& eh, const IdempotentRef& ek) {
    const auto& pi = direct_product(eh.group, ek.group);
    Elt u = inflate_from_right(inst, pi, inst.idempotent(ek.group, ek.index));
    auto uc = inst.to_idem(u);
    auto fq = quotient_onto_left(pi);
    for (uint32_t z = 0; z < uc.size(); ++z) {
        if (uc[z] == 0) continue;
        Elt v = inst.iso(fq.identify, inst.def(pi.group, fq.kernel, inst.idempotent(pi.group, z)));
        if (inst.to_idem(v)[eh.index] != 0) return true;
    }
    return false;
}

bool dominates_via_ideal(const Instance& inst, const IdempotentRef& eh, const IdempotentRef& ek) {
    auto span = principal_ideal_eval(inst, ek, eh.group);
    return std::ranges::binary_search(span, eh.index);
}

std::vector<GroupPtr> minimal_groups_of_ideal(const Instance& inst,
                                              const std::vector<IdempotentRef>& gens,
                                              unsigned max_order) {
    auto catalog = catalog_groups(max_order);
    std::vector<GroupPtr> found;
    unsigned found_order = 0;
    for (const auto& g : catalog) {
        if (!found.empty() && g->order() > found_order) break;
        bool nonzero = false;
        for (const auto& gen : gens)
            if (!principal_ideal_eval(inst, gen, g).empty()) {
                nonzero = true;
                break;
            }
        if (nonzero) {
            if (found.empty()) found_order = g->order();
            found.push_back(g);
        }
    }
    for (const auto& g : found)
        if (!is_MC_group(inst, g).is_mc)
            throw theorem_violation("minimal group of an ideal is not an MC-group: " + g->name());
    return found;
}

}  // namespace gbf::green
