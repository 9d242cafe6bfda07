#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gbf/catalog.hpp"
#include "gbf/gsets.hpp"
#include "gbf/slice.hpp"

#include <algorithm>

using namespace gbf;
namespace sl = gbf::slice;

namespace {

Subgroup sub(const GroupPtr& g, std::vector<uint16_t> els) { return Subgroup{g.get(), std::move(els)}; }

Subgroup full_sub(const GroupPtr& g) {
    std::vector<uint16_t> els(g->order());
    for (uint16_t i = 0; i < g->order(); ++i) els[i] = i;
    return Subgroup{g.get(), std::move(els)};
}

uint32_t cls_of(const GroupPtr& g, const Subgroup& t, const Subgroup& s) {
    return g->slices().class_of(g->subgroup_index(t), g->subgroup_index(s));
}

}  // namespace

TEST_CASE("slice basis") {
    CHECK(sl::basis(make_group("1")).size() == 1);
    CHECK(sl::basis(make_group("C2")).size() == 3);
    CHECK(sl::basis(make_group("S3")).size() == 9);
}

TEST_CASE("slice multiplication") {
    auto c2 = make_group("C2");
    auto one = sl::unit(c2);
    for (uint32_t c = 0; c < 3; ++c)
        CHECK(sl::mult(one, sl::basis_elt(c2, c)) == sl::basis_elt(c2, c));

    uint32_t fold = cls_of(c2, full_sub(c2), sub(c2, {0}));
    auto b = sl::basis_elt(c2, fold);
    CHECK(sl::mult(b, b) == sl::scale(b, 2));

    auto s3 = make_group("S3");
    auto subs = all_subgroups(s3);
    auto c3 = *std::ranges::find_if(subs, [](const auto& h) { return h.elements.size() == 3; });
    uint32_t c3c3 = cls_of(s3, c3, c3);
    auto x = sl::basis_elt(s3, c3c3);
    CHECK(sl::mult(x, x) == sl::scale(x, 2));

    // oracle: product of morphisms with the diagonal action
    for (const char* name : {"C4", "S3", "D8"}) {
        auto g = make_group(name);
        const auto& sd = g->slices();
        for (uint32_t a = 0; a < sd.classes.size(); ++a)
            for (uint32_t bidx = a; bidx < sd.classes.size(); ++bidx) {
                auto fa = gsets::coset_projection(g, g->subgroup(sd.classes[a].big),
                                                  g->subgroup(sd.classes[a].small));
                auto fb = gsets::coset_projection(g, g->subgroup(sd.classes[bidx].big),
                                                  g->subgroup(sd.classes[bidx].small));
                auto closed = sl::mult(sl::basis_elt(g, a), sl::basis_elt(g, bidx));
                auto oracle = gsets::decompose_morphism(gsets::gmor_diagonal_product(fa, fb));
                CHECK(closed == oracle);
            }
    }

    // external product against the gmor product oracle
    auto c2b = make_group("C2");
    const auto& sd2 = c2b->slices();
    for (uint32_t a = 0; a < sd2.classes.size(); ++a)
        for (uint32_t bidx = 0; bidx < 9; ++bidx) {
            const auto& sd3 = s3->slices();
            auto fa = gsets::coset_projection(c2b, c2b->subgroup(sd2.classes[a].big),
                                              c2b->subgroup(sd2.classes[a].small));
            auto fb = gsets::coset_projection(s3, s3->subgroup(sd3.classes[bidx].big),
                                              s3->subgroup(sd3.classes[bidx].small));
            auto closed = sl::external(sl::basis_elt(c2b, a), sl::basis_elt(s3, bidx));
            auto oracle = gsets::decompose_morphism(gsets::gmor_product(fa, fb));
            CHECK(closed == oracle);
        }
}

TEST_CASE("xi idempotents") {
    // xi^G_{1,1} = (1/|G|) <1,1>
    for (const char* name : {"C2", "S3", "D8"}) {
        auto g = make_group(name);
        auto e = sl::xi_idempotent(g, 0);
        CHECK(e.coeffs[0] == Rat(1, g->order()));
        for (size_t c = 1; c < e.coeffs.size(); ++c) CHECK(e.coeffs[c] == 0);
    }

    auto c2 = make_group("C2");
    uint32_t top = cls_of(c2, full_sub(c2), full_sub(c2));
    auto xi_top = sl::xi_idempotent(c2, top);
    uint32_t fold = cls_of(c2, full_sub(c2), sub(c2, {0}));
    CHECK(xi_top.coeffs[top] == 1);
    CHECK(xi_top.coeffs[fold] == Rat(-1, 2));
    CHECK(xi_top.coeffs[0] == 0);

    // orthogonal, idempotent, complete, counted by slice classes
    for (const auto& g : catalog_groups(8)) {
        const auto& sd = g->slices();
        sl::Elt sum = sl::zero(g);
        for (uint32_t i = 0; i < sd.classes.size(); ++i) {
            auto ei = sl::xi_idempotent(g, i);
            sum = sl::add(std::move(sum), ei);
            // marks are indicator vectors
            auto mv = sl::marks(ei);
            for (uint32_t h = 0; h < mv.size(); ++h) CHECK(mv[h] == (h == i ? 1 : 0));
            for (uint32_t j = 0; j <= i; ++j) {
                auto prod = sl::mult(ei, sl::xi_idempotent(g, j));
                if (i == j)
                    CHECK(prod == ei);
                else
                    CHECK(prod.is_zero());
            }
        }
        CHECK(sum == sl::unit(g));
    }
}

TEST_CASE("slice marks triangular") {
    for (const char* name : {"S3", "D8", "C12"}) {
        auto g = make_group(name);
        const auto& sd = g->slices();
        unsigned nc = static_cast<unsigned>(sd.classes.size());
        for (uint32_t h = 0; h < nc; ++h) CHECK(sd.marks[static_cast<size_t>(h) * nc + h] > 0);

        sl::Elt a = sl::zero(g);
        for (uint32_t c = 0; c < nc; ++c) a.coeffs[c] = Rat(c + 1, 3);
        CHECK(sl::from_marks(g, sl::marks(a)) == a);

        // ring map on basis pairs
        for (uint32_t i = 0; i < nc; ++i)
            for (uint32_t j = 0; j < nc; ++j) {
                auto mi = sl::marks(sl::basis_elt(g, i));
                auto mj = sl::marks(sl::basis_elt(g, j));
                auto mp = sl::marks(sl::mult(sl::basis_elt(g, i), sl::basis_elt(g, j)));
                for (uint32_t h = 0; h < nc; ++h) CHECK(mp[h] == mi[h] * mj[h]);
            }
    }
}

TEST_CASE("deflation constants m_{G,S,N}") {
    auto c2 = make_group("C2");
    CHECK(sl::m_slice(c2, full_sub(c2), full_sub(c2)) == Rat(1, 2));
    CHECK(sl::m_slice(c2, sub(c2, {0}), full_sub(c2)) == 0);

    for (const char* name : {"C2", "C4", "S3", "D8"}) {
        auto g = make_group(name);
        for (const auto& s : all_subgroups(g)) CHECK(sl::m_slice(g, s, sub(g, {0})) == 1);
    }

    auto s3 = make_group("S3");
    auto s3subs = all_subgroups(s3);
    auto c2sub = *std::ranges::find_if(s3subs,
                                       [](const auto& h) { return h.elements.size() == 2; });
    CHECK_THROWS_AS(sl::m_slice(s3, full_sub(s3), c2sub), validation_error);

    // Def xi^G_{G,S} = m_{G,S,N} xi^{G/N}_{G/N, SN/N}, exact
    for (const auto& g : catalog_groups(8)) {
        const auto& d = g->subgroups();
        for (uint32_t si = 0; si < d.n_subgroups; ++si) {
            auto s = g->subgroup(si);
            uint32_t cls = g->slices().class_of(d.full_index, si);
            auto xi = sl::xi_idempotent(g, cls);
            for (uint32_t ni : d.normals) {
                if (ni == d.trivial_index) continue;
                auto n = g->subgroup(ni);
                const auto& qg = g->quotient_group(ni);
                auto lhs = sl::def(g, n, xi);
                // SN/N inside the quotient
                Mask img(qg.group->order());
                for (uint16_t e : d.elems[si]) img.set(qg.hom.image_of[e]);
                uint32_t sn_q = qg.group->subgroups().index_of.at(img);
                uint32_t qcls =
                    qg.group->slices().class_of(qg.group->subgroups().full_index, sn_q);
                auto rhs = sl::scale(sl::xi_idempotent(qg.group, qcls), sl::m_slice(g, s, n));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("T-slices") {
    auto triv = make_group("1");
    CHECK(sl::is_T_slice(triv, sub(triv, {0})));
    CHECK(sl::t_slices(triv).size() == 1);

    auto c2 = make_group("C2");
    CHECK(!sl::is_T_slice(c2, full_sub(c2)));
    CHECK(sl::is_T_slice(c2, sub(c2, {0})));
    auto ts = sl::t_slices(c2);
    REQUIRE(ts.size() == 1);
    CHECK(c2->slices().classes[ts[0]].small == c2->subgroups().trivial_index);
}

TEST_CASE("slice elementary operations") {
    // Ind^G_H <T,S>_H = <T,S>_G
    auto s3 = make_group("S3");
    const auto& d = s3->subgroups();
    for (uint32_t hi = 0; hi < d.n_subgroups; ++hi) {
        auto h = s3->subgroup(hi);
        const auto& hg = s3->subgroup_group(hi);
        const auto& hsd = hg.group->slices();
        for (uint32_t c = 0; c < hsd.classes.size(); ++c) {
            auto up = sl::ind(s3, h, sl::basis_elt(hg.group, c));
            // the image slice: map subgroups through the embedding
            std::vector<uint16_t> tm, sm;
            for (uint16_t e : hg.group->subgroups().elems[hsd.classes[c].big])
                tm.push_back(hg.hom.image_of[e]);
            for (uint16_t e : hg.group->subgroups().elems[hsd.classes[c].small])
                sm.push_back(hg.hom.image_of[e]);
            std::sort(tm.begin(), tm.end());
            std::sort(sm.begin(), sm.end());
            CHECK(up == sl::basis_elt(s3, cls_of(s3, sub(s3, tm), sub(s3, sm))));
        }
    }

    // Def^{C2}_1: <C2,1> -> <1,1>
    auto c2 = make_group("C2");
    auto moved = sl::def(c2, full_sub(c2), sl::basis_elt(c2, cls_of(c2, full_sub(c2), sub(c2, {0}))));
    CHECK(moved.coeffs == std::vector<Rat>{1});

    // Iso(id) is the identity
    auto idh = identity_hom(s3);
    for (uint32_t c = 0; c < 9; ++c)
        CHECK(sl::iso(idh, sl::basis_elt(s3, c)) == sl::basis_elt(s3, c));

    // oracle equivalence via gmor_tensor for Res/Ind/Inf/Def on small groups
    for (const char* name : {"C4", "S3", "D8"}) {
        auto g = make_group(name);
        const auto& dg = g->subgroups();
        const auto& sd = g->slices();
        auto proj_of = [&](const GroupPtr& gg, uint32_t cls) {
            const auto& ssd = gg->slices();
            return gsets::coset_projection(gg, gg->subgroup(ssd.classes[cls].big),
                                           gg->subgroup(ssd.classes[cls].small));
        };
        for (uint32_t hi = 0; hi < dg.n_subgroups; ++hi) {
            auto h = g->subgroup(hi);
            auto rb = gsets::elementary_biset(gsets::BisetKind::Res, g, h);
            for (uint32_t c = 0; c < sd.classes.size(); ++c) {
                auto closed = sl::res(sl::basis_elt(g, c), h);
                auto oracle = gsets::decompose_morphism(gsets::gmor_tensor(rb, proj_of(g, c)));
                CHECK(closed == oracle);
            }
            auto ib = gsets::elementary_biset(gsets::BisetKind::Ind, g, h);
            const auto& hg = g->subgroup_group(hi);
            for (uint32_t c = 0; c < hg.group->slices().classes.size(); ++c) {
                auto closed = sl::ind(g, h, sl::basis_elt(hg.group, c));
                auto oracle =
                    gsets::decompose_morphism(gsets::gmor_tensor(ib, proj_of(hg.group, c)));
                CHECK(closed == oracle);
            }
        }
        for (uint32_t ni : dg.normals) {
            auto n = g->subgroup(ni);
            auto db = gsets::elementary_biset(gsets::BisetKind::Def, g, n);
            for (uint32_t c = 0; c < sd.classes.size(); ++c) {
                auto closed = sl::def(g, n, sl::basis_elt(g, c));
                auto oracle = gsets::decompose_morphism(gsets::gmor_tensor(db, proj_of(g, c)));
                CHECK(closed == oracle);
            }
            auto ifb = gsets::elementary_biset(gsets::BisetKind::Inf, g, n);
            const auto& qg = g->quotient_group(ni);
            for (uint32_t c = 0; c < qg.group->slices().classes.size(); ++c) {
                auto closed = sl::inf(g, n, sl::basis_elt(qg.group, c));
                auto oracle =
                    gsets::decompose_morphism(gsets::gmor_tensor(ifb, proj_of(qg.group, c)));
                CHECK(closed == oracle);
            }
        }
    }
}
