#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gbf/catalog.hpp"
#include "gbf/group.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace gbf;

namespace {

// Independent subgroup oracle: tests every subset of G for closure. Only
// viable for tiny groups, which is the point.
std::vector<std::vector<uint16_t>> oracle_subgroups(const GroupPtr& g) {
    unsigned n = g->order();
    REQUIRE(n <= 16);
    std::vector<std::vector<uint16_t>> out;
    for (uint32_t bits = 1; bits < (1u << n); ++bits) {
        if (!(bits & 1)) continue;  // must contain the identity (index 0)
        std::vector<uint16_t> els;
        for (unsigned i = 0; i < n; ++i)
            if (bits & (1u << i)) els.push_back(static_cast<uint16_t>(i));
        bool closed = true;
        for (uint16_t a : els) {
            for (uint16_t b : els) {
                uint16_t p = g->mul(a, b);
                if (!(bits & (1u << p))) {
                    closed = false;
                    break;
                }
            }
            if (!closed) break;
        }
        if (closed) out.push_back(els);
    }
    return out;
}

// Independent Moebius oracle, recursing from below: mu(K,K) = 1 and
// mu(K,H) = -sum_{K <= L < H} mu(K,L). The production code recurses from
// above, so agreement exercises the duality.
int64_t oracle_mu(const GroupPtr& g, const std::vector<uint16_t>& k,
                  const std::vector<uint16_t>& h) {
    auto subs = oracle_subgroups(g);
    auto contains = [](const std::vector<uint16_t>& inner, const std::vector<uint16_t>& outer) {
        return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
    };
    std::function<int64_t(const std::vector<uint16_t>&)> mu_from_k =
        [&](const std::vector<uint16_t>& top) -> int64_t {
        if (top == k) return 1;
        int64_t acc = 0;
        for (const auto& l : subs)
            if (l != top && contains(k, l) && contains(l, top)) acc += mu_from_k(l);
        return -acc;
    };
    REQUIRE(contains(k, h));
    return mu_from_k(h);
}

Subgroup sub_of(const GroupPtr& g, std::vector<uint16_t> els) {
    return Subgroup{g.get(), std::move(els)};
}

}  // namespace

TEST_CASE("from_permutations basics") {
    auto c2 = Group::from_permutations("C2", 2, {{1, 0}});
    CHECK(c2->order() == 2);
    auto s3 = Group::from_permutations("S3", 3, {{1, 2, 0}, {1, 0, 2}});
    CHECK(s3->order() == 6);
    CHECK(s3->check_associative());
    auto triv = Group::from_permutations("1", 1, {});
    CHECK(triv->order() == 1);

    CHECK_THROWS_AS(Group::from_permutations("bad", 2, {{0, 0}}), validation_error);
    Caps tight;
    tight.base_order = 4;
    CHECK_THROWS_AS(Group::from_permutations("S3", 3, {{1, 2, 0}, {1, 0, 2}}, tight),
                    resource_error);
}

TEST_CASE("element orders and inverses") {
    auto q8 = make_group("Q8");
    CHECK(q8->order() == 8);
    std::map<unsigned, int> hist;
    for (unsigned o : q8->element_orders()) ++hist[o];
    CHECK(hist[1] == 1);
    CHECK(hist[2] == 1);  // Q8 has a unique involution
    CHECK(hist[4] == 6);
    for (uint16_t x = 0; x < q8->order(); ++x)
        CHECK(q8->mul(x, q8->inv(x)) == q8->identity());
}

TEST_CASE("direct products") {
    auto c2 = make_group("C2");
    auto c3 = make_group("C3");
    const auto& v4 = direct_product(c2, c2);
    CHECK(v4.group->order() == 4);
    int twos = 0;
    for (unsigned o : v4.group->element_orders())
        if (o == 2) ++twos;
    CHECK(twos == 3);
    v4.p1.validate();
    v4.i2.validate();

    const auto& c6 = direct_product(c2, c3);
    CHECK(std::ranges::count(c6.group->element_orders(), 6u) > 0);

    auto triv = make_group("1");
    const auto& same = direct_product(c3, triv);
    CHECK(same.group.get() == c3.get());

    Caps tight;
    tight.product_order = 4;
    CHECK_THROWS_AS(direct_product(c2, c3, tight), resource_error);
}

TEST_CASE("subgroup enumeration vs all-subsets oracle") {
    for (const char* name : {"S3", "C4", "V4", "D8", "Q8", "C12", "A4"}) {
        auto g = make_group(name);
        auto got = all_subgroups(g);
        auto want = oracle_subgroups(g);
        REQUIRE(got.size() == want.size());
        std::set<std::vector<uint16_t>> want_set(want.begin(), want.end());
        for (const auto& h : got) CHECK(want_set.count(h.elements) == 1);
        // sorted by (size, lex)
        for (size_t i = 1; i < got.size(); ++i) {
            auto key = [](const Subgroup& s) { return std::pair(s.elements.size(), s.elements); };
            CHECK(key(got[i - 1]) < key(got[i]));
        }
    }
    CHECK(all_subgroups(make_group("S3")).size() == 6);
    CHECK(all_subgroups(make_group("C4")).size() == 3);
    CHECK(all_subgroups(make_group("1")).size() == 1);
}

TEST_CASE("conjugacy classes of subgroups") {
    CHECK(conjugacy_classes_of_subgroups(make_group("S3")).size() == 4);
    CHECK(conjugacy_classes_of_subgroups(make_group("V4")).size() == 5);
    CHECK(conjugacy_classes_of_subgroups(make_group("C5")).size() == 2);

    // partition identity: sum over class reps of [G:N_G(H)] = #subgroups
    for (const char* name : {"S3", "D8", "A4", "S4", "Dic3"}) {
        auto g = make_group(name);
        const auto& d = g->subgroups();
        size_t total = 0;
        for (uint32_t c = 0; c < d.n_classes(); ++c)
            total += g->order() / d.size[d.normalizer[d.class_rep[c]]];
        CHECK(total == d.n_subgroups);
        for (uint32_t c = 0; c < d.n_classes(); ++c)
            CHECK(d.class_members[c].size() == g->order() / d.size[d.normalizer[d.class_rep[c]]]);
    }
}

TEST_CASE("normalizers and normal subgroups") {
    auto s3 = make_group("S3");
    auto subs = all_subgroups(s3);
    auto c3 = *std::ranges::find_if(subs, [](const auto& h) { return h.elements.size() == 3; });
    auto n = normalizer(s3, c3);
    CHECK(n.elements.size() == 6);

    Subgroup full{s3.get(), {0, 1, 2, 3, 4, 5}};
    CHECK(normalizer(s3, full).elements.size() == 6);

    auto normals = normal_subgroups(s3);
    std::vector<size_t> sizes;
    for (const auto& h : normals) sizes.push_back(h.elements.size());
    CHECK(sizes == std::vector<size_t>{1, 3, 6});

    CHECK_THROWS_AS(normalizer(s3, sub_of(s3, {0, 1, 2})), validation_error);
}

TEST_CASE("quotients") {
    auto s3 = make_group("S3");
    auto subs = all_subgroups(s3);
    auto c3 = *std::ranges::find_if(subs, [](const auto& h) { return h.elements.size() == 3; });
    auto [q, proj] = quotient(s3, c3);
    CHECK(q->order() == 2);
    proj.validate();
    // kernel is exactly C3
    std::vector<uint16_t> ker;
    for (uint16_t x = 0; x < s3->order(); ++x)
        if (proj(x) == q->identity()) ker.push_back(x);
    CHECK(ker == c3.elements);

    auto [q1, p1] = quotient(s3, sub_of(s3, {0}));
    CHECK(q1->order() == 6);
    CHECK(are_isomorphic(q1, s3).has_value());
    auto [qg, pg] = quotient(s3, Subgroup{s3.get(), {0, 1, 2, 3, 4, 5}});
    CHECK(qg->order() == 1);

    auto c2 = *std::ranges::find_if(subs, [](const auto& h) { return h.elements.size() == 2; });
    CHECK_THROWS_AS(quotient(s3, c2), validation_error);
}

TEST_CASE("double cosets") {
    auto c2 = make_group("C2");
    Subgroup triv{c2.get(), {0}};
    CHECK(double_cosets(c2, triv, triv).size() == 2);

    auto s3 = make_group("S3");
    auto subs = all_subgroups(s3);
    auto h = *std::ranges::find_if(subs, [](const auto& s) { return s.elements.size() == 2; });
    auto reps = double_cosets(s3, h, h);
    CHECK(reps.size() == 2);

    Subgroup full{s3.get(), {0, 1, 2, 3, 4, 5}};
    CHECK(double_cosets(s3, full, h).size() == 1);

    // partition: the double cosets cover G without overlap
    for (const char* name : {"S3", "D8", "A4"}) {
        auto g = make_group(name);
        auto all = all_subgroups(g);
        for (const auto& a : all)
            for (const auto& b : all) {
                auto rs = double_cosets(g, a, b);
                std::set<uint16_t> seen;
                size_t total = 0;
                for (uint16_t r : rs) {
                    std::set<uint16_t> coset;
                    for (uint16_t x : a.elements)
                        for (uint16_t y : b.elements) coset.insert(g->mul(g->mul(x, r), y));
                    total += coset.size();
                    for (uint16_t e : coset) CHECK(seen.insert(e).second);
                }
                CHECK(total == g->order());
            }
    }
}

TEST_CASE("moebius function") {
    auto v4 = make_group("V4");
    auto mt = moebius_table(v4);
    Subgroup triv{v4.get(), {0}};
    Subgroup full{v4.get(), {0, 1, 2, 3}};
    CHECK(mt.value(full, full) == 1);
    CHECK(mt.value(triv, full) == 2);
    CHECK(mt.value(triv, full) == oracle_mu(v4, {0}, {0, 1, 2, 3}));

    auto c5 = make_group("C5");
    CHECK(moebius_table(c5).value(Subgroup{c5.get(), {0}}, Subgroup{c5.get(), {0, 1, 2, 3, 4}}) ==
          -1);

    auto d8 = make_group("D8");
    auto got = moebius_table(d8);
    auto subs = all_subgroups(d8);
    for (const auto& k : subs)
        for (const auto& h : subs) {
            auto mk = d8->mask_of(k.elements);
            if (!mk.subset_of(d8->mask_of(h.elements))) continue;
            CHECK(got.value(k, h) == oracle_mu(d8, k.elements, h.elements));
        }

    // incomparable pair
    auto s3 = make_group("S3");
    auto ss = all_subgroups(s3);
    auto a = ss[1], b = ss[2];  // two distinct order-2 subgroups
    REQUIRE(a.elements.size() == 2);
    REQUIRE(b.elements.size() == 2);
    CHECK_THROWS_AS(moebius_table(s3).value(a, b), validation_error);

    // duality: both recursions vanish on proper intervals
    for (const char* name : {"S3", "D8", "C12", "A4", "Q8"}) {
        auto g = make_group(name);
        const auto& d = g->subgroups();
        for (uint32_t h = 0; h < d.n_subgroups; ++h)
            for (uint32_t k : d.below[h]) {
                if (k == h) continue;
                int64_t up = 0, down = 0;
                for (uint32_t l : d.below[h])
                    if (d.contains(k, l)) {
                        up += d.mu(l, h);
                        down += d.mu(k, l);
                    }
                CHECK(up == 0);
                CHECK(down == 0);
            }
    }
}

TEST_CASE("isomorphism testing") {
    CHECK(!are_isomorphic(make_group("C2xC2"), make_group("C4")).has_value());
    CHECK(!are_isomorphic(make_group("D8"), make_group("Q8")).has_value());
    CHECK(!are_isomorphic(make_group("D8"), make_group("C2xC4")).has_value());

    auto s3 = make_group("S3");
    auto self = are_isomorphic(s3, s3);
    REQUIRE(self.has_value());
    for (uint16_t x = 0; x < s3->order(); ++x) CHECK(self->image_of[x] == x);

    // S3 vs quotient of S3xC2 by 1xC2
    auto p = direct_product(s3, make_group("C2")).group;
    auto [q, proj] = quotient(p, sub_of(p, {0, 1}));
    auto iso = are_isomorphic(s3, q);
    REQUIRE(iso.has_value());
    iso->validate();
    CHECK(iso->is_bijective());

    CHECK(are_isomorphic(make_group("D6"), s3).has_value());
    CHECK(are_isomorphic(make_group("Dic2"), make_group("Q8")).has_value());

    // equivalence relation spot-check on a small catalog slice
    auto groups = catalog_groups(8);
    for (const auto& a : groups) {
        CHECK(are_isomorphic(a, a).has_value());
        for (const auto& b : groups) {
            bool ab = are_isomorphic(a, b).has_value();
            CHECK(ab == are_isomorphic(b, a).has_value());
            for (const auto& c : groups)
                if (ab && are_isomorphic(b, c).has_value())
                    CHECK(are_isomorphic(a, c).has_value());
        }
    }
}

TEST_CASE("slice classes") {
    CHECK(slice_classes(make_group("1")).size() == 1);

    auto c2 = make_group("C2");
    auto sc = slice_classes(c2);
    REQUIRE(sc.size() == 3);
    CHECK(sc[0].representative.big.elements.size() == 1);
    CHECK(sc[1].representative.big.elements.size() == 2);
    CHECK(sc[1].representative.small.elements.size() == 1);
    CHECK(sc[2].representative.small.elements.size() == 2);

    auto s3 = make_group("S3");
    auto s3c = slice_classes(s3);
    CHECK(s3c.size() == 9);
    // stabilizer of (C3, C3) is all of S3; of (C2, C2) is N(C2) = C2
    for (const auto& cls : s3c) {
        size_t t = cls.representative.big.elements.size();
        size_t s = cls.representative.small.elements.size();
        if (t == 3 && s == 3) CHECK(cls.stabilizer.elements.size() == 6);
        if (t == 2 && s == 2) CHECK(cls.stabilizer.elements.size() == 2);
    }
    // class member counts sum to total slice count
    size_t members = 0, pairs = 0;
    for (const auto& cls : s3c) members += cls.members.size();
    const auto& d = s3->subgroups();
    for (uint32_t t = 0; t < d.n_subgroups; ++t) pairs += d.below[t].size();
    CHECK(members == pairs);
}

TEST_CASE("derived groups") {
    auto s3 = make_group("S3");
    const auto& d = s3->subgroups();
    for (uint32_t i = 0; i < d.n_subgroups; ++i) {
        const auto& sg = s3->subgroup_group(i);
        CHECK(sg.group->order() == d.size[i]);
        sg.hom.validate();
    }
    for (uint32_t n : d.normals) {
        const auto& q = s3->quotient_group(n);
        CHECK(q.group->order() == s3->order() / d.size[n]);
        q.hom.validate();
    }
}

TEST_CASE("catalog") {
    auto names = default_catalog(8);
    CHECK(std::ranges::find(names, "Q8") != names.end());
    CHECK(names.size() == 14);  // all groups of order <= 8 up to isomorphism
    for (const auto& n : names) CHECK(make_group(n)->order() <= 8);
    CHECK_THROWS_AS(make_group("E8"), validation_error);
    CHECK(make_group("C1")->order() == 1);

    CHECK(make_group("Dic3")->order() == 12);
    CHECK(!are_isomorphic(make_group("Dic3"), make_group("D12")).has_value());
    CHECK(!are_isomorphic(make_group("Dic3"), make_group("A4")).has_value());
    CHECK(!are_isomorphic(make_group("Dic3"), make_group("C12")).has_value());

    auto reg = register_group("tiny", 2, {{1, 0}});
    CHECK(make_group("tiny").get() == reg.get());

    CHECK(recognize_type(make_group("D16")) == "D16");
    CHECK(subgroup_class_labels(make_group("C2")) == std::vector<std::string>{"1", "C2"});
}
