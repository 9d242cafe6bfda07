#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gbf/burnside.hpp"
#include "gbf/catalog.hpp"
#include "gbf/gsets.hpp"

#include <algorithm>

using namespace gbf;
namespace bs = gbf::burnside;

namespace {

Subgroup sub(const GroupPtr& g, std::vector<uint16_t> els) { return Subgroup{g.get(), std::move(els)}; }

Subgroup full_sub(const GroupPtr& g) {
    std::vector<uint16_t> els(g->order());
    for (uint16_t i = 0; i < g->order(); ++i) els[i] = i;
    return Subgroup{g.get(), std::move(els)};
}

Subgroup find_sub(const GroupPtr& g, size_t size) {
    auto subs = all_subgroups(g);
    return *std::ranges::find_if(subs, [&](const auto& h) { return h.elements.size() == size; });
}

}  // namespace

TEST_CASE("basis labels") {
    CHECK(bs::basis(make_group("1")).size() == 1);
    CHECK(bs::basis(make_group("C2")).size() == 2);
    CHECK(bs::basis(make_group("S3")).size() == 4);
    CHECK(bs::basis(make_group("C2")) == std::vector<std::string>{"1", "C2"});
}

TEST_CASE("multiplication") {
    auto s3 = make_group("S3");
    auto one = bs::unit(s3);
    for (uint32_t c = 0; c < 4; ++c)
        CHECK(bs::mult(one, bs::basis_elt(s3, c)) == bs::basis_elt(s3, c));

    auto c2 = make_group("C2");
    auto free2 = bs::basis_elt(c2, 0);
    CHECK(bs::mult(free2, free2) == bs::scale(free2, 2));

    // [S3/C2].[S3/C2] = [S3/C2] + [S3/1]: classes sorted by size are
    // 0 = 1, 1 = C2, 2 = C3, 3 = S3.
    auto x = bs::basis_elt(s3, 1);
    auto prod = bs::mult(x, x);
    CHECK(prod.coeffs == std::vector<Rat>{1, 1, 0, 0});

    // commutativity against the diagonal G-set product oracle
    for (const char* name : {"S3", "D8", "C6", "A4"}) {
        auto g = make_group(name);
        auto subs = all_subgroups(g);
        for (const auto& h : subs)
            for (const auto& k : subs) {
                auto closed = bs::mult(
                    bs::basis_elt(g, g->subgroups().class_of[g->subgroup_index(h)]),
                    bs::basis_elt(g, g->subgroups().class_of[g->subgroup_index(k)]));
                auto oracle = gsets::orbit_decompose(
                    gsets::diagonal_product(gsets::coset_gset(g, h), gsets::coset_gset(g, k)));
                CHECK(closed == oracle);
            }
    }
}

TEST_CASE("marks and from_marks") {
    auto c2 = make_group("C2");
    auto m = bs::marks(bs::basis_elt(c2, 0));
    CHECK(m.values == std::vector<Rat>{2, 0});
    CHECK(bs::marks(bs::unit(c2)).values == std::vector<Rat>{1, 1});

    auto s3 = make_group("S3");
    CHECK(bs::marks(bs::unit(s3)).values == std::vector<Rat>{1, 1, 1, 1});

    // round trip on a haphazard element
    bs::Elt a = bs::zero(s3);
    a.coeffs = {Rat(3, 2), Rat(-1), Rat(7, 5), Rat(0)};
    CHECK(bs::from_marks(bs::marks(a)) == a);

    // ghost map is a ring map: marks(a.b) = marks(a) .* marks(b)
    for (const char* name : {"S3", "D8", "C12"}) {
        auto g = make_group(name);
        unsigned nc = g->subgroups().n_classes();
        for (uint32_t i = 0; i < nc; ++i)
            for (uint32_t j = 0; j < nc; ++j) {
                auto mi = bs::marks(bs::basis_elt(g, i)).values;
                auto mj = bs::marks(bs::basis_elt(g, j)).values;
                auto mp = bs::marks(bs::mult(bs::basis_elt(g, i), bs::basis_elt(g, j))).values;
                for (uint32_t h = 0; h < nc; ++h) CHECK(mp[h] == mi[h] * mj[h]);
            }
    }
}

TEST_CASE("idempotents") {
    // e^G_1 = (1/|G|)[G/1]
    for (const char* name : {"C2", "S3", "D8"}) {
        auto g = make_group(name);
        auto e = bs::idempotent(g, 0);
        CHECK(e.coeffs[0] == Rat(1, g->order()));
        for (size_t c = 1; c < e.coeffs.size(); ++c) CHECK(e.coeffs[c] == 0);
    }

    auto c2 = make_group("C2");
    auto top = bs::idempotent(c2, 1);
    CHECK(top.coeffs == std::vector<Rat>{Rat(-1, 2), Rat(1)});
    CHECK(bs::render(top) == "[C2/C2] - 1/2 [C2/1]");

    // marks(e^G_H) is the indicator of the class of H
    auto s3 = make_group("S3");
    auto e3 = bs::idempotent(s3, 2);  // class of C3
    CHECK(bs::marks(e3).values == std::vector<Rat>{0, 0, 1, 0});

    // orthogonal, idempotent, complete on a catalog slice
    for (const auto& g : catalog_groups(12)) {
        unsigned nc = g->subgroups().n_classes();
        bs::Elt sum = bs::zero(g);
        for (uint32_t i = 0; i < nc; ++i) {
            auto ei = bs::idempotent(g, i);
            sum = bs::add(std::move(sum), ei);
            for (uint32_t j = 0; j <= i; ++j) {
                auto prod = bs::mult(ei, bs::idempotent(g, j));
                if (i == j)
                    CHECK(prod == ei);
                else
                    CHECK(prod.is_zero());
            }
        }
        CHECK(sum == bs::unit(g));
    }
}

TEST_CASE("elementary operations") {
    auto c2 = make_group("C2");
    Subgroup triv = sub(c2, {0});
    const auto& tg = c2->subgroup_group(0);

    auto r = bs::res(bs::unit(c2), triv);
    CHECK(r.group.get() == tg.group.get());
    CHECK(r.coeffs == std::vector<Rat>{1});

    auto i = bs::ind(c2, triv, bs::unit(tg.group));
    CHECK(i == bs::basis_elt(c2, 0));  // [C2/1]

    auto dfl = bs::def(c2, full_sub(c2), bs::basis_elt(c2, 0));
    CHECK(dfl.coeffs == std::vector<Rat>{1});  // [1/1]

    // oracle equivalence on basis elements for a few groups
    for (const char* name : {"S3", "C4", "V4", "D8"}) {
        auto g = make_group(name);
        const auto& d = g->subgroups();
        for (uint32_t hi = 0; hi < d.n_subgroups; ++hi) {
            auto h = g->subgroup(hi);
            for (uint32_t kc = 0; kc < d.n_classes(); ++kc) {
                auto x = gsets::coset_gset(g, g->subgroup(d.class_rep[kc]));
                // Res
                auto closed = bs::res(bs::basis_elt(g, kc), h);
                auto viaset = gsets::orbit_decompose(
                    gsets::tensor(gsets::elementary_biset(gsets::BisetKind::Res, g, h), x));
                CHECK(closed == viaset);
                // Ind from H
                const auto& hg = g->subgroup_group(hi);
                for (uint32_t hc = 0; hc < hg.group->subgroups().n_classes(); ++hc) {
                    auto inside = gsets::coset_gset(
                        hg.group, hg.group->subgroup(hg.group->subgroups().class_rep[hc]));
                    auto up = bs::ind(g, h, bs::basis_elt(hg.group, hc));
                    auto up_oracle = gsets::orbit_decompose(gsets::tensor(
                        gsets::elementary_biset(gsets::BisetKind::Ind, g, h), inside));
                    CHECK(up == up_oracle);
                }
            }
        }
        for (uint32_t ni : d.normals) {
            auto n = g->subgroup(ni);
            const auto& qg = g->quotient_group(ni);
            for (uint32_t kc = 0; kc < d.n_classes(); ++kc) {
                auto x = gsets::coset_gset(g, g->subgroup(d.class_rep[kc]));
                auto down = bs::def(g, n, bs::basis_elt(g, kc));
                auto down_oracle = gsets::orbit_decompose(
                    gsets::tensor(gsets::elementary_biset(gsets::BisetKind::Def, g, n), x));
                CHECK(down == down_oracle);
            }
            for (uint32_t qc = 0; qc < qg.group->subgroups().n_classes(); ++qc) {
                auto y = gsets::coset_gset(qg.group,
                                           qg.group->subgroup(qg.group->subgroups().class_rep[qc]));
                auto up = bs::inf(g, n, bs::basis_elt(qg.group, qc));
                auto up_oracle = gsets::orbit_decompose(
                    gsets::tensor(gsets::elementary_biset(gsets::BisetKind::Inf, g, n), y));
                CHECK(up == up_oracle);
            }
        }
    }

    // Res and Inf are ring maps
    auto s3 = make_group("S3");
    auto h2 = find_sub(s3, 2);
    for (uint32_t i = 0; i < 4; ++i)
        for (uint32_t j = 0; j < 4; ++j) {
            auto a = bs::basis_elt(s3, i), b = bs::basis_elt(s3, j);
            CHECK(bs::res(bs::mult(a, b), h2) == bs::mult(bs::res(a, h2), bs::res(b, h2)));
        }
}

TEST_CASE("m constants and B-groups") {
    auto c2 = make_group("C2");
    CHECK(bs::m_constant(c2, full_sub(c2)) == Rat(1, 2));

    auto v4 = make_group("V4");
    CHECK(bs::m_constant(v4, find_sub(v4, 2)) == 0);
    CHECK(bs::m_constant(v4, full_sub(v4)) == 0);

    for (const char* name : {"C2", "S3", "D8", "A4", "C12"}) {
        auto g = make_group(name);
        CHECK(bs::m_constant(g, sub(g, {0})) == 1);  // m_{G,1} = 1
    }

    auto s3 = make_group("S3");
    CHECK_THROWS_AS(bs::m_constant(s3, find_sub(s3, 2)), validation_error);

    CHECK(bs::is_B_group(make_group("1")).is_b_group);
    auto c2r = bs::is_B_group(c2);
    CHECK(!c2r.is_b_group);
    REQUIRE(c2r.witnesses.size() == 1);
    CHECK(c2r.witnesses[0].second == Rat(1, 2));
    CHECK(bs::is_B_group(v4).is_b_group);

    // Def^G_{G/N}(e^G_G) = m_{G,N} e^{G/N}_{G/N}
    for (const auto& g : catalog_groups(8)) {
        const auto& d = g->subgroups();
        auto etop = bs::idempotent(g, d.n_classes() - 1);
        for (uint32_t ni : d.normals) {
            if (ni == d.trivial_index) continue;
            auto n = g->subgroup(ni);
            const auto& qg = g->quotient_group(ni);
            auto lhs = bs::def(g, n, etop);
            auto rhs = bs::scale(
                bs::idempotent(qg.group, qg.group->subgroups().n_classes() - 1),
                bs::m_constant(g, n));
            CHECK(lhs == rhs);
        }
    }

    // Res^G_K(e^G_K) = e^K_K
    for (const auto& g : catalog_groups(8)) {
        const auto& d = g->subgroups();
        for (uint32_t c = 0; c < d.n_classes(); ++c) {
            auto k = g->subgroup(d.class_rep[c]);
            const auto& kg = g->subgroup_group(d.class_rep[c]);
            auto lhs = bs::res(bs::idempotent(g, c), k);
            auto rhs = bs::idempotent(kg.group, kg.group->subgroups().n_classes() - 1);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("external product") {
    auto c2 = make_group("C2");
    auto c3 = make_group("C3");
    auto x = bs::external(bs::basis_elt(c2, 0), bs::unit(c3));
    const auto& prod = direct_product(c2, c3);
    // [C2/1] x [C3/C3] = [C6/C3]
    auto oracle = gsets::orbit_decompose(gsets::external_product(
        gsets::coset_gset(c2, sub(c2, {0})), gsets::coset_gset(c3, full_sub(c3))));
    CHECK(x.group.get() == prod.group.get());
    CHECK(x == oracle);
}
