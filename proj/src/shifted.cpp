#include "gbf/shifted.hpp"

#include "gbf/burnside.hpp"
#include "gbf/catalog.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace gbf::shifted {

namespace {

using green::Elt;

Subgroup image_subgroup(const GroupPtr& target, const GroupHom& hom) {
    std::vector<uint16_t> els(hom.image_of.begin(), hom.image_of.end());
    std::sort(els.begin(), els.end());
    els.erase(std::unique(els.begin(), els.end()), els.end());
    return Subgroup{target.get(), std::move(els)};
}

std::vector<uint16_t> coset_reps(const GroupHom& proj) {
    std::vector<uint16_t> reps(proj.target->order(), UINT16_MAX);
    for (uint16_t x = 0; x < proj.source->order(); ++x)
        if (reps[proj.image_of[x]] == UINT16_MAX) reps[proj.image_of[x]] = x;
    return reps;
}

// QB(G x K) with every nominal operation rewritten through the U x K biset.
class ShiftedInstance final : public green::Instance {
public:
    explicit ShiftedInstance(GroupPtr k)
        : Instance("shifted:" + k->name()), k_(std::move(k)) {}

    GroupPtr under(const GroupPtr& g) const { return direct_product(g, k_).group; }

    unsigned dim(const GroupPtr& g) const override { return under(g)->subgroups().n_classes(); }
    const std::vector<std::string>& labels(const GroupPtr& g) const override {
        return burnside::basis(under(g));
    }
    Elt zero(const GroupPtr& g) const override { return Elt{g, std::vector<Rat>(dim(g))}; }
    Elt unit(const GroupPtr& g) const override {
        return Elt{g, burnside::unit(under(g)).coeffs};
    }
    Elt idempotent(const GroupPtr& g, uint32_t idx) const override {
        return Elt{g, burnside::idempotent(under(g), idx).coeffs};
    }
    Elt mult(const Elt& a, const Elt& b) const override {
        if (a.group.get() != b.group.get())
            throw validation_error("shifted: elements over different groups");
        return Elt{a.group, burnside::mult(in(a), in(b)).coeffs};
    }
    std::vector<Rat> to_idem(const Elt& a) const override {
        return burnside::marks(in(a)).values;
    }
    Elt from_idem(const GroupPtr& g, const std::vector<Rat>& coords) const override {
        return Elt{g, burnside::from_marks(burnside::MarkVector{under(g), coords}).coeffs};
    }

    Elt res(const Elt& a, const Subgroup& h) const override {
        const GroupPtr& g = a.group;
        uint32_t hi = g->subgroup_index(h);
        const auto& hg = g->subgroup_group(hi);
        const auto& pg = direct_product(g, k_);
        // H x K as a subgroup of G x K
        std::vector<uint16_t> els;
        for (uint16_t x : h.elements)
            for (uint16_t y = 0; y < k_->order(); ++y)
                els.push_back(pg.group->mul(pg.i1.image_of[x], pg.i2.image_of[y]));
        std::sort(els.begin(), els.end());
        Subgroup hk{pg.group.get(), std::move(els)};
        uint32_t hki = pg.group->subgroup_index(hk);
        auto moved = burnside::res(in(a), hk);
        // identify (H x K <= G x K) with the product (H as group) x K
        const auto& sg = pg.group->subgroup_group(hki);
        const auto& ph = direct_product(hg.group, k_);
        std::vector<uint16_t> hpos(g->order(), UINT16_MAX);
        for (uint16_t i = 0; i < hg.group->order(); ++i) hpos[hg.hom.image_of[i]] = i;
        GroupHom ident;  // subgroup-as-group -> H' x K
        ident.source = sg.group;
        ident.target = ph.group;
        ident.image_of.reserve(sg.group->order());
        for (uint16_t e = 0; e < sg.group->order(); ++e) {
            uint16_t big = sg.hom.image_of[e];
            uint16_t gx = pg.p1.image_of[big], ky = pg.p2.image_of[big];
            ident.image_of.push_back(
                ph.group->mul(ph.i1.image_of[hpos[gx]], ph.i2.image_of[ky]));
        }
        return Elt{hg.group, burnside::iso(ident, moved).coeffs};
    }

    Elt ind(const GroupPtr& g, const Subgroup& h, const Elt& a_at_h) const override {
        uint32_t hi = g->subgroup_index(h);
        const auto& hg = g->subgroup_group(hi);
        if (a_at_h.group.get() != hg.group.get())
            throw validation_error("shifted ind: element group mismatch");
        const auto& pg = direct_product(g, k_);
        std::vector<uint16_t> els;
        for (uint16_t x : h.elements)
            for (uint16_t y = 0; y < k_->order(); ++y)
                els.push_back(pg.group->mul(pg.i1.image_of[x], pg.i2.image_of[y]));
        std::sort(els.begin(), els.end());
        Subgroup hk{pg.group.get(), std::move(els)};
        uint32_t hki = pg.group->subgroup_index(hk);
        const auto& sg = pg.group->subgroup_group(hki);
        const auto& ph = direct_product(hg.group, k_);
        // H' x K -> subgroup-as-group of H x K
        std::vector<uint16_t> pos(pg.group->order(), UINT16_MAX);
        for (uint16_t i = 0; i < sg.group->order(); ++i) pos[sg.hom.image_of[i]] = i;
        GroupHom ident;
        ident.source = ph.group;
        ident.target = sg.group;
        ident.image_of.reserve(ph.group->order());
        for (uint16_t e = 0; e < ph.group->order(); ++e) {
            uint16_t hpart = ph.p1.image_of[e], kpart = ph.p2.image_of[e];
            uint16_t big = pg.group->mul(pg.i1.image_of[hg.hom.image_of[hpart]],
                                         pg.i2.image_of[kpart]);
            ident.image_of.push_back(pos[big]);
        }
        auto inside = burnside::iso(ident, burnside::Elt{ph.group, a_at_h.coeffs});
        return Elt{g, burnside::ind(pg.group, hk, inside).coeffs};
    }

    Elt inf(const GroupPtr& g, const Subgroup& n, const Elt& a_at_q) const override {
        auto [nk, eta, qq] = quotient_identification(g, n);
        if (a_at_q.group.get() != qq.get())
            throw validation_error("shifted inf: element group mismatch");
        const auto& pq = direct_product(qq, k_);
        auto lifted = burnside::iso(eta, burnside::Elt{pq.group, a_at_q.coeffs});
        return Elt{g, burnside::inf(under(g), nk, lifted).coeffs};
    }

    Elt def(const GroupPtr& g, const Subgroup& n, const Elt& a) const override {
        auto [nk, eta, qq] = quotient_identification(g, n);
        auto moved = burnside::def(under(g), nk, in(a));
        return Elt{qq, burnside::iso(eta.inverse(), moved).coeffs};
    }

    Elt iso(const GroupHom& phi, const Elt& a) const override {
        const auto& ps = direct_product(phi.source, k_);
        const auto& pt = direct_product(phi.target, k_);
        GroupHom lifted;  // phi x id_K
        lifted.source = ps.group;
        lifted.target = pt.group;
        lifted.image_of.reserve(ps.group->order());
        for (uint16_t e = 0; e < ps.group->order(); ++e)
            lifted.image_of.push_back(
                pt.group->mul(pt.i1.image_of[phi.image_of[ps.p1.image_of[e]]],
                              pt.i2.image_of[ps.p2.image_of[e]]));
        return Elt{phi.target, burnside::iso(lifted, in(a)).coeffs};
    }

    // alpha x_{A_K} beta: external product in QB, restricted to the diagonal
    // {(g,k,h,k)} and transported to (G x H) x K.
    Elt external(const Elt& a, const Elt& b) const override {
        const GroupPtr& g = a.group;
        const GroupPtr& h = b.group;
        const auto& pg = direct_product(g, k_);
        const auto& ph = direct_product(h, k_);
        const auto& full = direct_product(pg.group, ph.group);
        auto ext = burnside::external(in(a), in(b));

        const auto& pgh = direct_product(g, h);
        const auto& target = direct_product(pgh.group, k_);
        std::vector<uint16_t> diag;
        std::vector<uint16_t> to_target(full.group->order(), UINT16_MAX);
        for (uint16_t gx = 0; gx < g->order(); ++gx)
            for (uint16_t hx = 0; hx < h->order(); ++hx)
                for (uint16_t kx = 0; kx < k_->order(); ++kx) {
                    uint16_t left = pg.group->mul(pg.i1.image_of[gx], pg.i2.image_of[kx]);
                    uint16_t right = ph.group->mul(ph.i1.image_of[hx], ph.i2.image_of[kx]);
                    uint16_t e = full.group->mul(full.i1.image_of[left], full.i2.image_of[right]);
                    diag.push_back(e);
                    to_target[e] = target.group->mul(
                        target.i1.image_of[pgh.group->mul(pgh.i1.image_of[gx],
                                                          pgh.i2.image_of[hx])],
                        target.i2.image_of[kx]);
                }
        std::sort(diag.begin(), diag.end());
        Subgroup delta{full.group.get(), diag};
        uint32_t di = full.group->subgroup_index(delta);
        const auto& dg = full.group->subgroup_group(di);
        auto restricted = burnside::res(ext, delta);
        GroupHom deltaiso;  // diagonal-as-group -> (G x H) x K
        deltaiso.source = dg.group;
        deltaiso.target = target.group;
        deltaiso.image_of.reserve(dg.group->order());
        for (uint16_t e = 0; e < dg.group->order(); ++e)
            deltaiso.image_of.push_back(to_target[dg.hom.image_of[e]]);
        return Elt{pgh.group, burnside::iso(deltaiso, restricted).coeffs};
    }

private:
    burnside::Elt in(const Elt& a) const {
        return burnside::Elt{under(a.group), a.coeffs};
    }

    // N x 1 <= G x K together with the iso (G/N)' x K -> (G x K)/(N x 1).
    std::tuple<Subgroup, GroupHom, GroupPtr> quotient_identification(const GroupPtr& g,
                                                                     const Subgroup& n) const {
        uint32_t ni = g->subgroup_index(n);
        if (g->subgroups().normalizer[ni] != g->subgroups().full_index)
            throw validation_error("shifted: N is not normal in " + g->name());
        const auto& qg = g->quotient_group(ni);
        const auto& pg = direct_product(g, k_);
        std::vector<uint16_t> els;
        for (uint16_t x : n.elements) els.push_back(pg.i1.image_of[x]);
        std::sort(els.begin(), els.end());
        Subgroup nk{pg.group.get(), std::move(els)};
        uint32_t nki = pg.group->subgroup_index(nk);
        const auto& quot = pg.group->quotient_group(nki);
        auto reps = coset_reps(qg.hom);
        const auto& pq = direct_product(qg.group, k_);
        GroupHom eta;  // (G/N)' x K -> (G x K)/(N x 1)
        eta.source = pq.group;
        eta.target = quot.group;
        eta.image_of.reserve(pq.group->order());
        for (uint16_t e = 0; e < pq.group->order(); ++e) {
            uint16_t qpart = pq.p1.image_of[e], kpart = pq.p2.image_of[e];
            uint16_t big = pg.group->mul(pg.i1.image_of[reps[qpart]], pg.i2.image_of[kpart]);
            eta.image_of.push_back(quot.hom.image_of[big]);
        }
        return {std::move(nk), std::move(eta), qg.group};
    }

    GroupPtr k_;
};

}  // namespace

const green::Instance& shifted_instance(const GroupPtr& k) {
    static std::mutex mtx;
    static std::map<const Group*, std::unique_ptr<ShiftedInstance>> cache;
    std::scoped_lock lock(mtx);
    auto it = cache.find(k.get());
    if (it == cache.end())
        it = cache.emplace(k.get(), std::make_unique<ShiftedInstance>(k)).first;
    return *it->second;
}

GoursatData subgroup_to_pair(const GroupPtr& g, const GroupPtr& k, const Subgroup& x) {
    const auto& pg = direct_product(g, k);
    if (x.parent != pg.group.get())
        throw validation_error("subgroup_to_pair: X does not live in G x K");
    pg.group->subgroup_index(x);
    GoursatData d;
    d.ambient = pg.group;
    d.x = x;
    std::vector<uint16_t> p1, p2, k1, k2;
    for (uint16_t e : x.elements) {
        uint16_t a = pg.p1.image_of[e], b = pg.p2.image_of[e];
        p1.push_back(a);
        p2.push_back(b);
        if (b == k->identity()) k1.push_back(a);
        if (a == g->identity()) k2.push_back(b);
    }
    auto dedupe = [](std::vector<uint16_t>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(p1);
    dedupe(p2);
    dedupe(k1);
    dedupe(k2);
    d.p1 = Subgroup{g.get(), std::move(p1)};
    d.k1 = Subgroup{g.get(), std::move(k1)};
    d.p2 = Subgroup{k.get(), std::move(p2)};
    d.k2 = Subgroup{k.get(), std::move(k2)};
    return d;
}

Subgroup pair_to_subgroup(const GroupOverK& lphi, const GroupPtr& k) {
    if (lphi.phi.target.get() != k.get())
        throw validation_error("pair_to_subgroup: phi does not land in K");
    const auto& pg = direct_product(lphi.group, k);
    std::vector<uint16_t> els;
    for (uint16_t l = 0; l < lphi.group->order(); ++l)
        els.push_back(pg.group->mul(pg.i1.image_of[l], pg.i2.image_of[lphi.phi.image_of[l]]));
    std::sort(els.begin(), els.end());
    return Subgroup{pg.group.get(), std::move(els)};
}

BKResult is_BK_group(const GroupOverK& lphi) {
    const GroupPtr& l = lphi.group;
    const auto& d = l->subgroups();
    Mask ker(l->order());
    for (uint16_t x = 0; x < l->order(); ++x)
        if (lphi.phi.image_of[x] == lphi.phi.target->identity()) ker.set(x);
    BKResult r{true, {}};
    for (uint32_t ni : d.normals) {
        if (ni == d.trivial_index) continue;
        if (!d.mask[ni].subset_of(ker)) continue;
        Rat m = burnside::m_constant(l, l->subgroup(ni));
        if (m != 0) {
            r.is_bk = false;
            r.witnesses.push_back({l->subgroup(ni), m});
        }
    }
    return r;
}

std::vector<GroupHom> inner_automorphisms(const GroupPtr& k) {
    std::vector<GroupHom> out;
    std::vector<std::vector<uint16_t>> seen;
    for (uint16_t x = 0; x < k->order(); ++x) {
        std::vector<uint16_t> img(k->order());
        for (uint16_t y = 0; y < k->order(); ++y) img[y] = k->conj(x, y);
        if (std::ranges::find(seen, img) != seen.end()) continue;
        seen.push_back(img);
        out.push_back(GroupHom{k, k, std::move(img)});
    }
    return out;
}

namespace {

GroupOverK quotient_pair(const GroupOverK& lphi, uint32_t q_index) {
    const GroupPtr& l = lphi.group;
    const auto& qg = l->quotient_group(q_index);
    auto reps = coset_reps(qg.hom);
    GroupHom phi_q;
    phi_q.source = qg.group;
    phi_q.target = lphi.phi.target;
    phi_q.image_of.reserve(qg.group->order());
    for (uint16_t c = 0; c < qg.group->order(); ++c)
        phi_q.image_of.push_back(lphi.phi.image_of[reps[c]]);
    return GroupOverK{qg.group, std::move(phi_q)};
}

}  // namespace

GroupOverK beta_K(const GroupOverK& lphi) {
    const GroupPtr& l = lphi.group;
    const auto& d = l->subgroups();
    Mask ker(l->order());
    for (uint16_t x = 0; x < l->order(); ++x)
        if (lphi.phi.image_of[x] == lphi.phi.target->identity()) ker.set(x);

    std::vector<uint32_t> qualifying;  // normal, inside Ker phi, m != 0
    for (uint32_t ni : d.normals) {
        if (ni != d.trivial_index && !d.mask[ni].subset_of(ker)) continue;
        if (burnside::m_constant(l, l->subgroup(ni)) != 0) qualifying.push_back(ni);
    }
    std::vector<uint32_t> maximal;
    for (uint32_t q : qualifying) {
        bool is_max = true;
        for (uint32_t other : qualifying)
            if (other != q && d.size[other] > d.size[q] && d.mask[q].subset_of(d.mask[other])) {
                is_max = false;
                break;
            }
        if (is_max) maximal.push_back(q);
    }
    GroupOverK result = quotient_pair(lphi, maximal.front());
    for (size_t i = 1; i < maximal.size(); ++i)
        if (!isomorphic_over_K(result, quotient_pair(lphi, maximal[i])))
            throw green::theorem_violation(
                "beta_K: maximal choices disagree up to isomorphism over K for " + l->name());
    if (!is_BK_group(result).is_bk)
        throw green::theorem_violation("beta_K result is not a B_K-group for " + l->name());
    return result;
}

bool quotient_over_K(const GroupOverK& from, const GroupOverK& to) {
    if (from.phi.target.get() != to.phi.target.get())
        throw validation_error("quotient_over_K: different shift groups");
    const GroupPtr& l = from.group;
    if (to.group->order() > l->order() || l->order() % to.group->order() != 0) return false;
    const auto& d = l->subgroups();
    Mask ker(l->order());
    for (uint16_t x = 0; x < l->order(); ++x)
        if (from.phi.image_of[x] == from.phi.target->identity()) ker.set(x);
    auto inners = inner_automorphisms(from.phi.target);
    for (uint32_t ni : d.normals) {
        if (d.size[ni] * to.group->order() != l->order()) continue;
        if (ni != d.trivial_index && !d.mask[ni].subset_of(ker)) continue;
        auto q = quotient_pair(from, ni);
        for (const auto& inner : inners) {
            GroupHom twisted = GroupHom::compose(inner, q.phi);
            if (find_isomorphism(q.group, to.group, &twisted, &to.phi)) return true;
        }
    }
    return false;
}

bool isomorphic_over_K(const GroupOverK& a, const GroupOverK& b) {
    if (a.group->order() != b.group->order()) return false;
    for (const auto& inner : inner_automorphisms(a.phi.target)) {
        GroupHom twisted = GroupHom::compose(inner, a.phi);
        if (find_isomorphism(a.group, b.group, &twisted, &b.phi)) return true;
    }
    return false;
}

std::vector<GroupOverK> groups_over_K(const GroupPtr& l, const GroupPtr& k) {
    std::vector<GroupOverK> out;
    for (auto& h : all_homomorphisms(l, k)) out.push_back(GroupOverK{l, std::move(h)});
    return out;
}

std::vector<GroupOverK> groups_over_K_up_to_iso(const GroupPtr& l, const GroupPtr& k) {
    std::vector<GroupOverK> out;
    for (auto& cand : groups_over_K(l, k)) {
        bool dup = false;
        for (const auto& kept : out)
            if (isomorphic_over_K(kept, cand)) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(cand));
    }
    return out;
}

ShiftedMC is_MC_group_shifted(const GroupPtr& k, const GroupPtr& l, const Caps& caps) {
    const auto& pg = direct_product(l, k, caps);
    const auto& d = pg.group->subgroups();
    const auto& ld = l->subgroups();
    for (uint32_t c = 0; c < d.n_classes(); ++c) {
        Subgroup x = pg.group->subgroup(d.class_rep[c]);
        auto gd = subgroup_to_pair(l, k, x);
        if (gd.p1.elements.size() != l->order()) continue;
        bool meets_all = true;
        Mask k1m = l->mask_of(gd.k1.elements);
        for (uint32_t ni : ld.minimal_normals)
            if ((k1m & ld.mask[ni]).count() == 1) {  // intersection is trivial
                meets_all = false;
                break;
            }
        if (!meets_all) continue;
        // (X, p2|X) as a group over K
        uint32_t xi = pg.group->subgroup_index(x);
        const auto& xg = pg.group->subgroup_group(xi);
        GroupHom p2x = GroupHom::compose(pg.p2, xg.hom);
        if (is_BK_group(GroupOverK{xg.group, std::move(p2x)}).is_bk)
            return ShiftedMC{true, std::move(x)};
    }
    return ShiftedMC{false, std::nullopt};
}

}  // namespace gbf::shifted
