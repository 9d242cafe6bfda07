#include "gbf/gsets.hpp"

#include <algorithm>
#include <numeric>

namespace gbf::gsets {

namespace {

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);  // keep the least index as root
        parent[b] = a;
    }
};

Mask stabilizer_mask(const GSet& x, uint32_t pt) {
    Mask m(x.group->order());
    for (uint16_t g = 0; g < x.group->order(); ++g)
        if (x.act(g, pt) == pt) m.set(g);
    return m;
}

}  // namespace

void GSet::validate() const {
    unsigned n = group->order();
    for (uint32_t x = 0; x < size; ++x)
        if (act(group->identity(), x) != x)
            throw validation_error("gset: identity moves a point");
    for (uint16_t g = 0; g < n; ++g)
        for (uint16_t h = 0; h < n; ++h)
            for (uint32_t x = 0; x < size; ++x)
                if (act(g, act(h, x)) != act(group->mul(g, h), x))
                    throw validation_error("gset: action incompatible with the group table");
}

void Biset::validate() const {
    GSet left{left_group, size, left_action};
    left.validate();
    // the right action as a left action of the opposite group
    unsigned n = right_group->order();
    for (uint32_t x = 0; x < size; ++x)
        if (ract(right_group->identity(), x) != x)
            throw validation_error("biset: identity moves a point");
    for (uint16_t g = 0; g < n; ++g)
        for (uint16_t h = 0; h < n; ++h)
            for (uint32_t x = 0; x < size; ++x)
                if (ract(right_group->mul(g, h), x) != ract(h, ract(g, x)))
                    throw validation_error("biset: right action incompatible with the table");
    for (uint16_t g = 0; g < left_group->order(); ++g)
        for (uint16_t h = 0; h < n; ++h)
            for (uint32_t x = 0; x < size; ++x)
                if (ract(h, lact(g, x)) != lact(g, ract(h, x)))
                    throw validation_error("biset: actions do not commute");
}

void GMap::validate() const {
    if (source.group.get() != target.group.get())
        throw validation_error("gmap: source and target over different groups");
    if (image_of.size() != source.size) throw validation_error("gmap: wrong image size");
    for (uint16_t g = 0; g < source.group->order(); ++g)
        for (uint32_t x = 0; x < source.size; ++x)
            if (image_of[source.act(g, x)] != target.act(g, image_of[x]))
                throw validation_error("gmap: not equivariant");
}

CosetSet coset_gset_full(const GroupPtr& g, const Subgroup& k) {
    g->subgroup_index(k);
    unsigned n = g->order();
    CosetSet cs;
    cs.coset_of.assign(n, UINT32_MAX);
    for (uint16_t x = 0; x < n; ++x) {
        if (cs.coset_of[x] != UINT32_MAX) continue;
        uint32_t id = static_cast<uint32_t>(cs.reps.size());
        cs.reps.push_back(x);
        for (uint16_t e : k.elements) cs.coset_of[g->mul(x, e)] = id;
    }
    unsigned size = static_cast<unsigned>(cs.reps.size());
    cs.set.group = g;
    cs.set.size = size;
    cs.set.action.resize(static_cast<size_t>(n) * size);
    for (uint16_t h = 0; h < n; ++h)
        for (uint32_t c = 0; c < size; ++c)
            cs.set.action[static_cast<size_t>(h) * size + c] = cs.coset_of[g->mul(h, cs.reps[c])];
    return cs;
}

GSet coset_gset(const GroupPtr& g, const Subgroup& k) { return coset_gset_full(g, k).set; }

burnside::Elt orbit_decompose(const GSet& x) {
    const auto& d = x.group->subgroups();
    burnside::Elt out = burnside::zero(x.group);
    std::vector<char> seen(x.size, 0);
    for (uint32_t p = 0; p < x.size; ++p) {
        if (seen[p]) continue;
        for (uint16_t g = 0; g < x.group->order(); ++g) seen[x.act(g, p)] = 1;
        out.coeffs[d.class_of[d.index_of.at(stabilizer_mask(x, p))]] += 1;
    }
    return out;
}

Biset elementary_biset(BisetKind kind, const GroupPtr& g, const Subgroup& data) {
    uint32_t idx = g->subgroup_index(data);
    unsigned n = g->order();
    Biset b;
    switch (kind) {
        case BisetKind::Res: {
            // (H, G)-biset G
            const auto& hg = g->subgroup_group(idx);
            b.left_group = hg.group;
            b.right_group = g;
            b.size = n;
            b.left_action.resize(static_cast<size_t>(hg.group->order()) * n);
            for (uint16_t h = 0; h < hg.group->order(); ++h)
                for (uint32_t x = 0; x < n; ++x)
                    b.left_action[static_cast<size_t>(h) * n + x] =
                        g->mul(hg.hom.image_of[h], static_cast<uint16_t>(x));
            b.right_action.resize(static_cast<size_t>(n) * n);
            for (uint16_t h = 0; h < n; ++h)
                for (uint32_t x = 0; x < n; ++x)
                    b.right_action[static_cast<size_t>(h) * n + x] =
                        g->mul(static_cast<uint16_t>(x), h);
            return b;
        }
        case BisetKind::Ind: {
            // (G, H)-biset G
            const auto& hg = g->subgroup_group(idx);
            b.left_group = g;
            b.right_group = hg.group;
            b.size = n;
            b.left_action.resize(static_cast<size_t>(n) * n);
            for (uint16_t h = 0; h < n; ++h)
                for (uint32_t x = 0; x < n; ++x)
                    b.left_action[static_cast<size_t>(h) * n + x] =
                        g->mul(h, static_cast<uint16_t>(x));
            b.right_action.resize(static_cast<size_t>(hg.group->order()) * n);
            for (uint16_t h = 0; h < hg.group->order(); ++h)
                for (uint32_t x = 0; x < n; ++x)
                    b.right_action[static_cast<size_t>(h) * n + x] =
                        g->mul(static_cast<uint16_t>(x), hg.hom.image_of[h]);
            return b;
        }
        case BisetKind::Inf: {
            // (G, G/N)-biset G/N
            const auto& qg = g->quotient_group(idx);
            unsigned q = qg.group->order();
            b.left_group = g;
            b.right_group = qg.group;
            b.size = q;
            b.left_action.resize(static_cast<size_t>(n) * q);
            for (uint16_t h = 0; h < n; ++h)
                for (uint32_t x = 0; x < q; ++x)
                    b.left_action[static_cast<size_t>(h) * q + x] =
                        qg.group->mul(qg.hom.image_of[h], static_cast<uint16_t>(x));
            b.right_action.resize(static_cast<size_t>(q) * q);
            for (uint16_t h = 0; h < q; ++h)
                for (uint32_t x = 0; x < q; ++x)
                    b.right_action[static_cast<size_t>(h) * q + x] =
                        qg.group->mul(static_cast<uint16_t>(x), h);
            return b;
        }
        case BisetKind::Def: {
            // (G/N, G)-biset N\G = G/N (N is normal)
            const auto& qg = g->quotient_group(idx);
            unsigned q = qg.group->order();
            b.left_group = qg.group;
            b.right_group = g;
            b.size = q;
            b.left_action.resize(static_cast<size_t>(q) * q);
            for (uint16_t h = 0; h < q; ++h)
                for (uint32_t x = 0; x < q; ++x)
                    b.left_action[static_cast<size_t>(h) * q + x] =
                        qg.group->mul(h, static_cast<uint16_t>(x));
            b.right_action.resize(static_cast<size_t>(n) * q);
            for (uint16_t h = 0; h < n; ++h)
                for (uint32_t x = 0; x < q; ++x)
                    b.right_action[static_cast<size_t>(h) * q + x] =
                        qg.group->mul(static_cast<uint16_t>(x), qg.hom.image_of[h]);
            return b;
        }
    }
    throw validation_error("unknown biset kind");
}

Biset iso_biset(const GroupHom& phi) {
    if (!phi.is_bijective()) throw validation_error("iso biset needs a bijective hom");
    unsigned n = phi.target->order();
    Biset b;
    b.left_group = phi.target;
    b.right_group = phi.source;
    b.size = n;
    b.left_action.resize(static_cast<size_t>(n) * n);
    b.right_action.resize(static_cast<size_t>(phi.source->order()) * n);
    for (uint16_t h = 0; h < n; ++h)
        for (uint32_t x = 0; x < n; ++x)
            b.left_action[static_cast<size_t>(h) * n + x] =
                phi.target->mul(h, static_cast<uint16_t>(x));
    for (uint16_t h = 0; h < phi.source->order(); ++h)
        for (uint32_t x = 0; x < n; ++x)
            b.right_action[static_cast<size_t>(h) * n + x] =
                phi.target->mul(static_cast<uint16_t>(x), phi.image_of[h]);
    return b;
}

TensorResult tensor_full(const Biset& u, const GSet& x) {
    if (u.right_group.get() != x.group.get())
        throw validation_error("tensor: biset right group differs from the G-set group");
    size_t total = static_cast<size_t>(u.size) * x.size;
    UnionFind uf(total);
    for (uint16_t g = 0; g < x.group->order(); ++g)
        for (uint32_t a = 0; a < u.size; ++a)
            for (uint32_t b = 0; b < x.size; ++b)
                uf.unite(static_cast<uint32_t>(u.ract(g, a) * x.size + b),
                         static_cast<uint32_t>(a * x.size + x.act(g, b)));

    TensorResult tr;
    tr.class_of_pair.assign(total, UINT32_MAX);
    std::vector<uint32_t> roots;
    for (uint32_t p = 0; p < total; ++p)
        if (uf.find(p) == p) roots.push_back(p);
    for (uint32_t p = 0; p < total; ++p) {
        uint32_t r = uf.find(p);
        uint32_t id = static_cast<uint32_t>(std::lower_bound(roots.begin(), roots.end(), r) -
                                            roots.begin());
        tr.class_of_pair[p] = id;
    }
    tr.set.group = u.left_group;
    tr.set.size = static_cast<unsigned>(roots.size());
    tr.set.action.resize(static_cast<size_t>(u.left_group->order()) * roots.size());
    for (uint16_t g = 0; g < u.left_group->order(); ++g)
        for (uint32_t c = 0; c < roots.size(); ++c) {
            uint32_t a = roots[c] / x.size, b = roots[c] % x.size;
            tr.set.action[static_cast<size_t>(g) * roots.size() + c] =
                tr.class_of_pair[u.lact(g, a) * x.size + b];
        }
    return tr;
}

GSet tensor(const Biset& u, const GSet& x) { return tensor_full(u, x).set; }

slice::Elt decompose_morphism(const GMap& f) {
    f.validate();
    const GroupPtr& g = f.source.group;
    const auto& d = g->subgroups();
    const auto& sd = g->slices();
    slice::Elt out = slice::zero(g);
    std::vector<char> seen(f.source.size, 0);
    for (uint32_t p = 0; p < f.source.size; ++p) {
        if (seen[p]) continue;
        for (uint16_t h = 0; h < g->order(); ++h) seen[f.source.act(h, p)] = 1;
        uint32_t big = d.index_of.at(stabilizer_mask(f.target, f.image_of[p]));
        uint32_t small = d.index_of.at(stabilizer_mask(f.source, p));
        out.coeffs[sd.class_of(big, small)] += 1;
    }
    return out;
}

GMap identity_map(const GSet& x) {
    GMap f{x, x, std::vector<uint32_t>(x.size)};
    std::iota(f.image_of.begin(), f.image_of.end(), 0);
    return f;
}

GMap coset_projection(const GroupPtr& g, const Subgroup& t, const Subgroup& s) {
    Mask sm = g->mask_of(s.elements);
    if (!sm.subset_of(g->mask_of(t.elements)))
        throw validation_error("coset_projection: S is not contained in T");
    auto src = coset_gset_full(g, s);
    auto tgt = coset_gset_full(g, t);
    GMap f{src.set, tgt.set, {}};
    f.image_of.reserve(src.reps.size());
    for (uint16_t rep : src.reps) f.image_of.push_back(tgt.coset_of[rep]);
    return f;
}

GSet disjoint_union(const GSet& a, const GSet& b) {
    if (a.group.get() != b.group.get()) throw validation_error("disjoint_union: group mismatch");
    GSet out{a.group, a.size + b.size, {}};
    out.action.resize(static_cast<size_t>(a.group->order()) * out.size);
    for (uint16_t g = 0; g < a.group->order(); ++g) {
        for (uint32_t x = 0; x < a.size; ++x)
            out.action[static_cast<size_t>(g) * out.size + x] = a.act(g, x);
        for (uint32_t x = 0; x < b.size; ++x)
            out.action[static_cast<size_t>(g) * out.size + a.size + x] = a.size + b.act(g, x);
    }
    return out;
}

GMap disjoint_union(const GMap& f, const GMap& g) {
    GSet src = disjoint_union(f.source, g.source);
    GSet tgt = disjoint_union(f.target, g.target);
    GMap out{std::move(src), std::move(tgt), {}};
    out.image_of = f.image_of;
    for (uint32_t y : g.image_of) out.image_of.push_back(f.target.size + y);
    return out;
}

GSet external_product(const GSet& x, const GSet& y) {
    const auto& prod = direct_product(x.group, y.group);
    GSet out{prod.group, x.size * y.size, {}};
    out.action.resize(static_cast<size_t>(prod.group->order()) * out.size);
    for (uint16_t g = 0; g < prod.group->order(); ++g) {
        uint16_t gx = prod.p1.image_of[g], gy = prod.p2.image_of[g];
        for (uint32_t a = 0; a < x.size; ++a)
            for (uint32_t b = 0; b < y.size; ++b)
                out.action[static_cast<size_t>(g) * out.size + a * y.size + b] =
                    x.act(gx, a) * y.size + y.act(gy, b);
    }
    return out;
}

GSet diagonal_product(const GSet& x, const GSet& y) {
    if (x.group.get() != y.group.get()) throw validation_error("diagonal_product: group mismatch");
    GSet out{x.group, x.size * y.size, {}};
    out.action.resize(static_cast<size_t>(x.group->order()) * out.size);
    for (uint16_t g = 0; g < x.group->order(); ++g)
        for (uint32_t a = 0; a < x.size; ++a)
            for (uint32_t b = 0; b < y.size; ++b)
                out.action[static_cast<size_t>(g) * out.size + a * y.size + b] =
                    x.act(g, a) * y.size + y.act(g, b);
    return out;
}

GMap gmor_product(const GMap& f, const GMap& g) {
    GMap out{external_product(f.source, g.source), external_product(f.target, g.target), {}};
    out.image_of.resize(out.source.size);
    for (uint32_t a = 0; a < f.source.size; ++a)
        for (uint32_t b = 0; b < g.source.size; ++b)
            out.image_of[a * g.source.size + b] =
                f.image_of[a] * g.target.size + g.image_of[b];
    return out;
}

GMap gmor_diagonal_product(const GMap& f, const GMap& g) {
    GMap out{diagonal_product(f.source, g.source), diagonal_product(f.target, g.target), {}};
    out.image_of.resize(out.source.size);
    for (uint32_t a = 0; a < f.source.size; ++a)
        for (uint32_t b = 0; b < g.source.size; ++b)
            out.image_of[a * g.source.size + b] =
                f.image_of[a] * g.target.size + g.image_of[b];
    return out;
}

GMap gmor_tensor(const Biset& u, const GMap& f) {
    auto tx = tensor_full(u, f.source);
    auto ty = tensor_full(u, f.target);
    GMap out{std::move(tx.set), std::move(ty.set), {}};
    out.image_of.assign(out.source.size, UINT32_MAX);
    for (uint32_t a = 0; a < u.size; ++a)
        for (uint32_t b = 0; b < f.source.size; ++b)
            out.image_of[tx.class_of_pair[a * f.source.size + b]] =
                ty.class_of_pair[a * f.target.size + f.image_of[b]];
    return out;
}

}  // namespace gbf::gsets
