#include "gbf/burnside.hpp"

#include "gbf/catalog.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <unordered_map>

namespace gbf::burnside {

namespace {

void check_same_group(const Elt& a, const Elt& b) {
    if (a.group.get() != b.group.get())
        throw validation_error("burnside: elements live over different groups");
}

// [G/H].[G/K] = sum over g in [H\G/K] of [G/(H n gKg^-1)], as class counts.
using SparseRow = std::vector<std::pair<uint32_t, int32_t>>;

const SparseRow& pair_product(const GroupPtr& g, uint32_t hc, uint32_t kc) {
    static std::mutex mtx;
    static std::unordered_map<const Group*,
                              std::unordered_map<uint64_t, SparseRow>> cache;
    uint64_t key = (static_cast<uint64_t>(std::min(hc, kc)) << 32) | std::max(hc, kc);
    {
        std::scoped_lock lock(mtx);
        auto& per = cache[g.get()];
        auto it = per.find(key);
        if (it != per.end()) return it->second;
    }

    const auto& d = g->subgroups();
    uint32_t h = d.class_rep[std::min(hc, kc)];
    uint32_t k = d.class_rep[std::max(hc, kc)];
    std::vector<int32_t> acc(d.n_classes(), 0);
    unsigned n = g->order();
    std::vector<char> visited(n, 0);
    for (uint16_t x = 0; x < n; ++x) {
        if (visited[x]) continue;
        for (uint16_t a : d.elems[h])
            for (uint16_t b : d.elems[k]) visited[g->mul(g->mul(a, x), b)] = 1;
        uint32_t conj_k = g->conj_subgroup(k, x);
        Mask inter = d.mask[h] & d.mask[conj_k];
        acc[d.class_of[d.index_of.at(inter)]] += 1;
    }
    SparseRow row;
    for (uint32_t c = 0; c < d.n_classes(); ++c)
        if (acc[c]) row.push_back({c, acc[c]});

    std::scoped_lock lock(mtx);
    return cache[g.get()].emplace(key, std::move(row)).first->second;
}

}  // namespace

bool Elt::is_zero() const {
    return std::ranges::all_of(coeffs, [](const Rat& c) { return c == 0; });
}

const std::vector<std::string>& basis(const GroupPtr& g) { return subgroup_class_labels(g); }

Elt zero(const GroupPtr& g) {
    return Elt{g, std::vector<Rat>(g->subgroups().n_classes())};
}

Elt basis_elt(const GroupPtr& g, uint32_t cls) {
    Elt e = zero(g);
    e.coeffs.at(cls) = 1;
    return e;
}

Elt unit(const GroupPtr& g) { return basis_elt(g, g->subgroups().n_classes() - 1); }

Elt add(Elt a, const Elt& b) {
    check_same_group(a, b);
    for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
    return a;
}

Elt sub(Elt a, const Elt& b) {
    check_same_group(a, b);
    for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs[i];
    return a;
}

Elt scale(Elt a, const Rat& c) {
    for (auto& x : a.coeffs) x *= c;
    return a;
}

Elt mult(const Elt& a, const Elt& b) {
    check_same_group(a, b);
    Elt out = zero(a.group);
    for (uint32_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (uint32_t j = 0; j < b.coeffs.size(); ++j) {
            if (b.coeffs[j] == 0) continue;
            Rat c = a.coeffs[i] * b.coeffs[j];
            for (const auto& [cls, count] : pair_product(a.group, i, j))
                out.coeffs[cls] += c * count;
        }
    }
    return out;
}

MarkVector marks(const Elt& a) {
    const auto& d = a.group->subgroups();
    const auto& table = a.group->mark_table();
    unsigned nc = d.n_classes();
    MarkVector v{a.group, std::vector<Rat>(nc)};
    for (uint32_t k = 0; k < nc; ++k) {
        if (a.coeffs[k] == 0) continue;
        for (uint32_t h = 0; h < nc; ++h) {
            int32_t m = table[static_cast<size_t>(h) * nc + k];
            if (m) v.values[h] += a.coeffs[k] * m;
        }
    }
    return v;
}

Elt from_marks(const MarkVector& v) {
    const auto& d = v.group->subgroups();
    const auto& table = v.group->mark_table();
    unsigned nc = d.n_classes();
    if (v.values.size() != nc) throw validation_error("mark vector has wrong length");
    // The table is triangular for the (size, lex) class order: m_H([G/K]) = 0
    // unless |H| <= |K|, and within equal sizes only on the diagonal.
    Elt out = zero(v.group);
    for (uint32_t h = nc; h-- > 0;) {
        Rat acc = v.values[h];
        for (uint32_t k = h + 1; k < nc; ++k) {
            int32_t m = table[static_cast<size_t>(h) * nc + k];
            if (m) acc -= out.coeffs[k] * m;
        }
        out.coeffs[h] = acc / table[static_cast<size_t>(h) * nc + h];
    }
    return out;
}

Elt idempotent(const GroupPtr& g, uint32_t cls) {
    const auto& d = g->subgroups();
    uint32_t h = d.class_rep.at(cls);
    Elt out = zero(g);
    const auto& bel = d.below[h];
    const auto& mu = d.moebius[h];
    for (size_t pos = 0; pos < bel.size(); ++pos) {
        if (mu[pos] == 0) continue;
        uint32_t k = bel[pos];
        out.coeffs[d.class_of[k]] += Rat(static_cast<int64_t>(d.size[k]) * mu[pos]);
    }
    return scale(std::move(out), Rat(1, d.size[d.normalizer[h]]));
}

Rat m_constant(const GroupPtr& g, const Subgroup& n) {
    uint32_t ni = g->subgroup_index(n);
    const auto& d = g->subgroups();
    if (d.normalizer[ni] != d.full_index)
        throw validation_error("m_constant: N is not normal in " + g->name());
    uint32_t full = d.full_index;
    const auto& bel = d.below[full];
    const auto& mu = d.moebius[full];
    Rat acc = 0;
    for (size_t pos = 0; pos < bel.size(); ++pos) {
        uint32_t x = bel[pos];
        // XN = G iff |X||N| / |X n N| = |G|
        unsigned inter = (d.mask[x] & d.mask[ni]).count();
        if (static_cast<size_t>(d.size[x]) * d.size[ni] != static_cast<size_t>(g->order()) * inter)
            continue;
        acc += Rat(static_cast<int64_t>(d.size[x]) * mu[pos]);
    }
    return acc / g->order();
}

BGroupResult is_B_group(const GroupPtr& g) {
    const auto& d = g->subgroups();
    BGroupResult r{true, {}};
    for (uint32_t ni : d.normals) {
        if (ni == d.trivial_index) continue;
        Rat m = m_constant(g, g->subgroup(ni));
        if (m != 0) {
            r.is_b_group = false;
            r.witnesses.push_back({g->subgroup(ni), m});
        }
    }
    return r;
}

Elt res(const Elt& a, const Subgroup& h) {
    const GroupPtr& g = a.group;
    uint32_t hi = g->subgroup_index(h);
    const auto& d = g->subgroups();
    const auto& hg = g->subgroup_group(hi);
    const auto& hd = hg.group->subgroups();
    // positions of parent elements inside the subgroup group
    std::vector<uint16_t> pos(g->order(), UINT16_MAX);
    for (uint16_t i = 0; i < hg.group->order(); ++i) pos[hg.hom.image_of[i]] = i;

    Elt out = zero(hg.group);
    unsigned n = g->order();
    for (uint32_t kc = 0; kc < a.coeffs.size(); ++kc) {
        if (a.coeffs[kc] == 0) continue;
        uint32_t k = d.class_rep[kc];
        std::vector<char> visited(n, 0);
        for (uint16_t x = 0; x < n; ++x) {
            if (visited[x]) continue;
            for (uint16_t u : d.elems[hi])
                for (uint16_t v : d.elems[k]) visited[g->mul(g->mul(u, x), v)] = 1;
            Mask inter = d.mask[hi] & d.mask[g->conj_subgroup(k, x)];
            Mask sub(hg.group->order());
            for (uint16_t e : inter.elements()) sub.set(pos[e]);
            out.coeffs[hd.class_of[hd.index_of.at(sub)]] += a.coeffs[kc];
        }
    }
    return out;
}

Elt ind(const GroupPtr& g, const Subgroup& h, const Elt& a_at_h) {
    uint32_t hi = g->subgroup_index(h);
    const auto& hg = g->subgroup_group(hi);
    if (a_at_h.group.get() != hg.group.get())
        throw validation_error("ind: element does not live over the subgroup group");
    const auto& hd = hg.group->subgroups();
    const auto& d = g->subgroups();
    Elt out = zero(g);
    for (uint32_t kc = 0; kc < a_at_h.coeffs.size(); ++kc) {
        if (a_at_h.coeffs[kc] == 0) continue;
        std::vector<uint16_t> mapped;
        for (uint16_t e : hd.elems[hd.class_rep[kc]]) mapped.push_back(hg.hom.image_of[e]);
        std::sort(mapped.begin(), mapped.end());
        out.coeffs[d.class_of[d.index_of.at(g->mask_of(mapped))]] += a_at_h.coeffs[kc];
    }
    return out;
}

Elt inf(const GroupPtr& g, const Subgroup& n, const Elt& a_at_quotient) {
    uint32_t ni = g->subgroup_index(n);
    const auto& qg = g->quotient_group(ni);
    if (a_at_quotient.group.get() != qg.group.get())
        throw validation_error("inf: element does not live over the quotient group");
    const auto& qd = qg.group->subgroups();
    const auto& d = g->subgroups();
    Elt out = zero(g);
    for (uint32_t yc = 0; yc < a_at_quotient.coeffs.size(); ++yc) {
        if (a_at_quotient.coeffs[yc] == 0) continue;
        const Mask& ymask = qd.mask[qd.class_rep[yc]];
        Mask pre(g->order());
        for (uint16_t x = 0; x < g->order(); ++x)
            if (ymask.test(qg.hom.image_of[x])) pre.set(x);
        out.coeffs[d.class_of[d.index_of.at(pre)]] += a_at_quotient.coeffs[yc];
    }
    return out;
}

Elt def(const GroupPtr& g, const Subgroup& n, const Elt& a) {
    if (a.group.get() != g.get()) throw validation_error("def: element group mismatch");
    uint32_t ni = g->subgroup_index(n);
    const auto& qg = g->quotient_group(ni);
    const auto& qd = qg.group->subgroups();
    const auto& d = g->subgroups();
    Elt out = zero(qg.group);
    for (uint32_t kc = 0; kc < a.coeffs.size(); ++kc) {
        if (a.coeffs[kc] == 0) continue;
        Mask img(qg.group->order());
        for (uint16_t e : d.elems[d.class_rep[kc]]) img.set(qg.hom.image_of[e]);
        out.coeffs[qd.class_of[qd.index_of.at(img)]] += a.coeffs[kc];
    }
    return out;
}

Elt iso(const GroupHom& phi, const Elt& a) {
    if (a.group.get() != phi.source.get()) throw validation_error("iso: element group mismatch");
    if (!phi.is_bijective()) throw validation_error("iso: hom is not bijective");
    const auto& d = phi.source->subgroups();
    const auto& td = phi.target->subgroups();
    Elt out = zero(phi.target);
    for (uint32_t kc = 0; kc < a.coeffs.size(); ++kc) {
        if (a.coeffs[kc] == 0) continue;
        Mask img(phi.target->order());
        for (uint16_t e : d.elems[d.class_rep[kc]]) img.set(phi.image_of[e]);
        out.coeffs[td.class_of[td.index_of.at(img)]] += a.coeffs[kc];
    }
    return out;
}

Elt external(const Elt& a, const Elt& b) {
    const auto& prod = direct_product(a.group, b.group);
    const auto& d1 = a.group->subgroups();
    const auto& d2 = b.group->subgroups();
    const auto& dp = prod.group->subgroups();
    unsigned nb = b.group->order();
    Elt out = zero(prod.group);
    for (uint32_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (uint32_t j = 0; j < b.coeffs.size(); ++j) {
            if (b.coeffs[j] == 0) continue;
            Mask m(prod.group->order());
            for (uint16_t x : d1.elems[d1.class_rep[i]])
                for (uint16_t y : d2.elems[d2.class_rep[j]]) m.set(x * nb + y);
            out.coeffs[dp.class_of[dp.index_of.at(m)]] += a.coeffs[i] * b.coeffs[j];
        }
    }
    return out;
}

std::string render(const Elt& a) {
    const auto& labels = basis(a.group);
    std::string out;
    for (uint32_t c = a.coeffs.size(); c-- > 0;) {
        const Rat& x = a.coeffs[c];
        if (x == 0) continue;
        Rat mag = x < 0 ? Rat(-x) : x;
        if (out.empty())
            out += x < 0 ? "-" : "";
        else
            out += x < 0 ? " - " : " + ";
        if (mag != 1)
            out += (denominator(mag) == 1 ? numerator(mag).str() : rat_str(mag)) + " ";
        out += "[" + a.group->name() + "/" + labels[c] + "]";
    }
    return out.empty() ? "0" : out;
}

}  // namespace gbf::burnside
